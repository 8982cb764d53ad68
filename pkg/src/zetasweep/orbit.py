"""Translation orbits: sweeps, discrete orbits, error profiles, densities.

Continuous sweeps sample the error functional

    E(tau) = max over the patch grid of |subject(s + i tau) - target(s)|

at tau = j * step; discrete orbits sample at tau = n * h.  Because both
compute tau by a single multiplication and evaluate through the same code
path, a discrete orbit with h = k * step reproduces the matching continuous
samples bit for bit.

Samples that fail inside a kernel (pole proximity, branch loss, precision)
are recorded in the profile as error-status rows and never abort a sweep.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .errors import KernelError, NoValidSampleError
from .kernels import EvalPrecision
from .space import CompactPatch
from .targets import TargetFunction, shift_points

_COUNT_EPS = 1e-9  # guards floor(t_max/step) against division noise

RIEMANN = "riemann"
HURWITZ = "hurwitz"
LOG_RIEMANN = "log_riemann"


@dataclass(frozen=True)
class Subject:
    """What gets shifted: zeta, a Hurwitz zeta, or tracked log zeta."""

    kind: str
    alpha: float | None = None

    @classmethod
    def riemann(cls) -> "Subject":
        return cls(RIEMANN)

    @classmethod
    def hurwitz(cls, alpha: float) -> "Subject":
        kernels.HurwitzParams(alpha)
        return cls(HURWITZ, float(alpha))

    @classmethod
    def log_riemann(cls) -> "Subject":
        return cls(LOG_RIEMANN)

    def evaluate(self, points: np.ndarray, prec: EvalPrecision) -> np.ndarray:
        if self.kind == RIEMANN:
            return kernels.riemann_zeta_grid(points, prec)
        if self.kind == HURWITZ:
            return kernels.hurwitz_zeta_grid(points, self.alpha, prec)
        if self.kind == LOG_RIEMANN:
            return np.asarray(
                [kernels.log_zeta_tracked(complex(s), prec) for s in points],
                dtype=complex)
        raise ValueError(f"unknown subject kind {self.kind!r}")

    def self_target(self) -> TargetFunction:
        """The subject itself, frozen at shift zero (for self-approximation)."""
        if self.kind == RIEMANN:
            return TargetFunction.zeta_shift(0.0)
        if self.kind == HURWITZ:
            return TargetFunction.hurwitz_shift(self.alpha, 0.0)
        return TargetFunction.log_zeta_shift(0.0)

    def describe(self) -> dict:
        out = {"kind": self.kind}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        return out


@dataclass(frozen=True)
class ContinuousShift:
    """Sweep window [t_start, t_start + t_max] sampled every `step`."""

    t_max: float
    step: float
    t_start: float = 0.0

    def __post_init__(self) -> None:
        if not self.t_max > 0:
            raise ValueError("t_max must be positive")
        if not 0 < self.step <= self.t_max:
            raise ValueError("step must satisfy 0 < step <= t_max")
        if self.t_start < 0:
            raise ValueError("t_start must be nonnegative")

    @property
    def mode(self) -> str:
        return "continuous"

    def sample_count(self) -> int:
        return int(math.floor(self.t_max / self.step + _COUNT_EPS)) + 1

    def taus(self) -> list[float]:
        return [self.t_start + j * self.step for j in range(self.sample_count())]


@dataclass(frozen=True)
class DiscreteShift:
    """Arithmetic progression tau = h n, n = 0..n_max."""

    h: float
    n_max: int

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise ValueError("h must be positive")
        if self.n_max < 0:
            raise ValueError("n_max must be nonnegative")

    @property
    def mode(self) -> str:
        return "discrete"

    def sample_count(self) -> int:
        return self.n_max + 1

    def taus(self) -> list[float]:
        return [n * self.h for n in range(self.n_max + 1)]


ShiftSpec = ContinuousShift | DiscreteShift


@dataclass(frozen=True)
class ProfileSample:
    tau: float
    error: float | None
    status: str  # "ok" | "error"
    note: str | None = None

    def row(self) -> list:
        return [self.tau, self.error, self.status]


@dataclass(frozen=True)
class ErrorProfile:
    spec: ShiftSpec
    subject: Subject | None
    target: TargetFunction | None
    patch: CompactPatch | None
    samples: tuple[ProfileSample, ...]
    label: str = "sweep"

    def __post_init__(self) -> None:
        taus = [s.tau for s in self.samples]
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise ValueError("profile taus must be strictly increasing")

    def ok_samples(self) -> list[ProfileSample]:
        return [s for s in self.samples if s.status == "ok"]


@dataclass(frozen=True)
class DensityEstimate:
    """Finite-horizon proxy for the lower-density functionals.

    Continuous mode counts hits among the samples representing [0, t_max)
    (all but the final sample) and weights each by the step; discrete mode
    counts hits among n = 1..n_max.  Either way the fraction lives in [0, 1]
    and error-status samples are misses, reported separately.
    """

    epsilon: float
    horizon: float | int
    hit_fraction: float
    hit_count: int
    mode: str
    ok_count: int
    error_count: int


class ShiftedEvaluable:
    """f(. + i tau) with the shift kept as a single real parameter.

    Composing two translations adds the shift parameters once; evaluation
    performs one complex addition per point, so the semigroup law
    T_a T_b = T_{a+b} holds exactly in floating point.
    """

    __slots__ = ("base", "shift")

    def __init__(self, base: Callable, shift: float) -> None:
        self.base = base
        self.shift = shift

    def __call__(self, s):
        return self.base(s + complex(0.0, self.shift))


def translate(f: Callable, tau: float) -> ShiftedEvaluable:
    """The translation operator applied to an evaluable: T_tau f = f(. + i tau)."""
    if tau < 0:
        raise ValueError("translation parameter must be nonnegative")
    if isinstance(f, ShiftedEvaluable):
        return ShiftedEvaluable(f.base, f.shift + tau)
    return ShiftedEvaluable(f, tau)


def _max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


def error_at(subject: Subject, target: TargetFunction, patch: CompactPatch,
             tau: float, prec: EvalPrecision = kernels.DEFAULT_PRECISION) -> float:
    """E(tau): grid maximum of |subject(s + i tau) - target(s)| over the patch."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    grid = patch.grid_array()
    target_values = target.evaluate(grid, prec)
    subject_values = subject.evaluate(shift_points(grid, tau), prec)
    return _max_abs_diff(subject_values, target_values)


def _profile_samples(evaluate_one: Callable[[float], float],
                     taus: list[float], threads: int) -> tuple[ProfileSample, ...]:
    def sample(tau: float) -> ProfileSample:
        try:
            return ProfileSample(tau, evaluate_one(tau), "ok")
        except (KernelError, OverflowError) as exc:
            return ProfileSample(tau, None, "error",
                                 f"{type(exc).__name__}: {exc}")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return tuple(pool.map(sample, taus))
    return tuple(sample(tau) for tau in taus)


def _run_sweep(subject: Subject, target: TargetFunction, patch: CompactPatch,
               spec: ShiftSpec, prec: EvalPrecision, threads: int,
               label: str) -> ErrorProfile:
    grid = patch.grid_array()
    target_values = target.evaluate(grid, prec)

    def evaluate_one(tau: float) -> float:
        subject_values = subject.evaluate(shift_points(grid, tau), prec)
        return _max_abs_diff(subject_values, target_values)

    samples = _profile_samples(evaluate_one, spec.taus(), threads)
    return ErrorProfile(spec, subject, target, patch, samples, label)


def continuous_sweep(subject: Subject, target: TargetFunction,
                     patch: CompactPatch, spec: ContinuousShift,
                     prec: EvalPrecision = kernels.DEFAULT_PRECISION,
                     threads: int = 1) -> ErrorProfile:
    """Sample E(tau) on the arithmetic grid tau = t_start + j step."""
    if not isinstance(spec, ContinuousShift):
        raise ValueError("continuous_sweep requires a continuous shift spec")
    return _run_sweep(subject, target, patch, spec, prec, threads, "sweep")


def discrete_orbit(subject: Subject, target: TargetFunction,
                   patch: CompactPatch, spec: DiscreteShift,
                   prec: EvalPrecision = kernels.DEFAULT_PRECISION,
                   threads: int = 1) -> ErrorProfile:
    """Sample E along the orbit tau = h n; identical machinery to the sweep."""
    if not isinstance(spec, DiscreteShift):
        raise ValueError("discrete_orbit requires a discrete shift spec")
    return _run_sweep(subject, target, patch, spec, prec, threads, "orbit")


def hit_density(profile: ErrorProfile, epsilon: float) -> DensityEstimate:
    """Count samples with E < epsilon (strict) into a density estimate.

    Continuous profiles count the samples covering [t_start, t_start + t_max)
    with weight `step` each, i.e. all samples but the last; discrete orbits
    count n = 1..n_max, matching the counting in the universality limits.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    spec = profile.spec
    if isinstance(spec, ContinuousShift):
        counted = profile.samples[: max(len(profile.samples) - 1, 0)]
        mode, horizon = "continuous", spec.t_max
    else:
        counted = profile.samples[1:]
        mode, horizon = "discrete", spec.n_max
    ok = [s for s in counted if s.status == "ok"]
    hits = sum(1 for s in ok if s.error < epsilon)
    if mode == "continuous":
        fraction = spec.step * hits / spec.t_max
    else:
        fraction = hits / spec.n_max if spec.n_max > 0 else 0.0
    return DensityEstimate(epsilon, horizon, fraction, hits, mode,
                           len(ok), len(counted) - len(ok))


@dataclass(frozen=True)
class BestShift:
    tau_coarse: float
    error_coarse: float
    tau_refined: float
    error_refined: float


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_REFINE_MAX_ITERS = 40
_REFINE_WIDTH = 1e-7


def search_best_shift(profile: ErrorProfile,
                      error_fn: Callable[[float], float] | None = None
                      ) -> BestShift:
    """The ok sample with minimal E; ties broken toward the smallest tau.

    When error_fn is given (the scalar map tau -> E(tau)), a golden-section
    refinement runs inside +-step of the coarse minimizer; the refined result
    never loses to the coarse one because the coarse sample stays in the
    candidate set.
    """
    ok = profile.ok_samples()
    if not ok:
        raise NoValidSampleError("profile has no ok samples")
    best = min(ok, key=lambda s: (s.error, s.tau))
    coarse = (best.tau, best.error)
    if error_fn is None:
        return BestShift(*coarse, *coarse)

    spec = profile.spec
    delta = spec.step if isinstance(spec, ContinuousShift) else spec.h
    a = max(0.0, best.tau - delta)
    b = best.tau + delta
    candidates = [coarse]
    x1 = b - (b - a) * _GOLDEN
    x2 = a + (b - a) * _GOLDEN
    f1, f2 = error_fn(x1), error_fn(x2)
    candidates += [(x1, f1), (x2, f2)]
    for _ in range(_REFINE_MAX_ITERS):
        if b - a < _REFINE_WIDTH:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - (b - a) * _GOLDEN
            f1 = error_fn(x1)
            candidates.append((x1, f1))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + (b - a) * _GOLDEN
            f2 = error_fn(x2)
            candidates.append((x2, f2))
    refined = min(candidates, key=lambda c: (c[1], c[0]))
    return BestShift(*coarse, *refined)
