"""Experiment drivers built on the orbit engine.

Everything here reports finite-scale data: hit fractions at explicit
horizons, first hits up to an explicit n_max, best shifts found so far.
None of it claims a limit; the asymptotic statements these experiments shadow
are not decidable from finite sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .enumeration import BaseIndex, enumerate_base
from .errors import KernelError
from .kernels import EvalPrecision, RationalPolynomial
from .orbit import (ContinuousShift, DensityEstimate, DiscreteShift,
                    ErrorProfile, Subject, continuous_sweep, discrete_orbit,
                    error_at, hit_density, _max_abs_diff)
from .space import CompactPatch, Exhaustion, StripDomain
from .targets import TargetFunction, shift_points

_DIV_EPS = 1e-9


def _integer_ratio(h: float, step: float) -> int | None:
    """k when h = k * step up to division noise, else None."""
    ratio = h / step
    k = round(ratio)
    if k >= 1 and abs(ratio - k) < _DIV_EPS:
        return k
    return None


def _discrete_profile(subject, target, patch, h: float, n_max: int,
                      continuous: ErrorProfile, prec, threads: int
                      ) -> tuple[ErrorProfile, bool]:
    """The h-orbit profile, subsampled from the sweep when h is on its grid."""
    spec = DiscreteShift(h, n_max)
    k = _integer_ratio(h, continuous.spec.step)
    if k is not None and k * n_max < len(continuous.samples) \
            and continuous.spec.t_start == 0.0:
        samples = tuple(continuous.samples[k * n] for n in range(n_max + 1))
        profile = ErrorProfile(spec, subject, target, patch, samples, "orbit")
        return profile, True
    return discrete_orbit(subject, target, patch, spec, prec, threads), False


@dataclass(frozen=True)
class RecurrenceReport:
    """Self-approximation data: how often the subject returns near itself."""

    patch: CompactPatch
    epsilon: float
    horizon: float
    continuous_density: DensityEstimate
    discrete_densities: tuple[tuple[float, DensityEstimate], ...]
    best_self_shifts: tuple[tuple[float, float], ...]
    profile: ErrorProfile
    subsampled: tuple[bool, ...]


def self_recurrence(subject: Subject, patch: CompactPatch, epsilon: float,
                    t_max: float, delta: float, h_list,
                    prec: EvalPrecision = kernels.DEFAULT_PRECISION,
                    threads: int = 1) -> RecurrenceReport:
    """Sweep E_self(tau) = max |subject(s + i tau) - subject(s)| and count hits.

    Reports the continuous density at epsilon, one discrete density per h,
    and the ten best self-approximating shifts with tau >= 1.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    target = subject.self_target()
    spec = ContinuousShift(t_max, delta)
    profile = continuous_sweep(subject, target, patch, spec, prec, threads)
    continuous_density = hit_density(profile, epsilon)
    discrete, flags = [], []
    for h in h_list:
        n_max = int(math.floor(t_max / h + _DIV_EPS))
        orbit_profile, sub = _discrete_profile(
            subject, target, patch, h, n_max, profile, prec, threads)
        discrete.append((h, hit_density(orbit_profile, epsilon)))
        flags.append(sub)
    eligible = [s for s in profile.ok_samples() if s.tau >= 1.0]
    eligible.sort(key=lambda s: (s.error, s.tau))
    best = tuple((s.tau, s.error) for s in eligible[:10])
    return RecurrenceReport(patch, epsilon, t_max, continuous_density,
                            tuple(discrete), best, profile, tuple(flags))


@dataclass(frozen=True)
class DensityPair:
    h: float
    n_max: int
    continuous: DensityEstimate
    discrete: DensityEstimate
    subsampled: bool


@dataclass(frozen=True)
class DensityComparisonReport:
    """Continuous vs h-discrete hit densities of one orbit, same horizons."""

    epsilon: float
    t_max: float
    delta: float
    pairs: tuple[DensityPair, ...]
    profile: ErrorProfile
    curve: tuple[tuple[float, float], ...]


def _density_curve(profile: ErrorProfile, epsilon: float,
                   max_points: int = 400) -> tuple[tuple[float, float], ...]:
    """Cumulative hit fraction as a function of the growing horizon."""
    spec = profile.spec
    hits = 0
    points = []
    total = len(profile.samples) - 1
    stride = max(1, total // max_points)
    for j, sample in enumerate(profile.samples[:-1]):
        if sample.status == "ok" and sample.error < epsilon:
            hits += 1
        horizon = (j + 1) * spec.step
        if (j + 1) % stride == 0 or j + 1 == total:
            points.append((horizon, spec.step * hits / horizon))
    return tuple(points)


def density_comparison(subject: Subject, target: TargetFunction,
                       patch: CompactPatch, epsilon: float, t_max: float,
                       delta: float, h_list,
                       prec: EvalPrecision = kernels.DEFAULT_PRECISION,
                       threads: int = 1) -> DensityComparisonReport:
    """The finite-scale shadow of "continuous implies h-discrete" statements.

    For each h the continuous fraction is recomputed at the matching horizon
    h * n_max, so both members of a pair count the same stretch of orbit.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    spec = ContinuousShift(t_max, delta)
    profile = continuous_sweep(subject, target, patch, spec, prec, threads)
    pairs = []
    for h in h_list:
        n_max = int(math.floor(t_max / h + _DIV_EPS))
        if n_max < 1:
            raise ValueError(f"horizon t_max = {t_max} admits no step of h = {h}")
        orbit_profile, sub = _discrete_profile(
            subject, target, patch, h, n_max, profile, prec, threads)
        matched_horizon = h * n_max
        j_matched = int(math.floor(matched_horizon / delta + _DIV_EPS))
        truncated = ErrorProfile(
            ContinuousShift(matched_horizon, delta), subject, target, patch,
            profile.samples[: j_matched + 1], "sweep")
        pairs.append(DensityPair(h, n_max, hit_density(truncated, epsilon),
                                 hit_density(orbit_profile, epsilon), sub))
    curve = _density_curve(profile, epsilon)
    return DensityComparisonReport(epsilon, t_max, delta, tuple(pairs),
                                   profile, curve)


@dataclass(frozen=True)
class GdeltaEntry:
    m: int
    patch_index: int
    polynomial: RationalPolynomial
    first_hit_n: int | None
    best_error: float
    best_n: int | None
    verified_error: float | None
    error_note: str | None
    scanned: int


@dataclass(frozen=True)
class GdeltaScanResult:
    t0: float
    n_max: int
    grid_step: float
    entries: tuple[GdeltaEntry, ...]


def _scan_entry(m: int, patch_index: int, poly: RationalPolynomial,
                patch: CompactPatch, t0: float, n_max: int,
                prec: EvalPrecision) -> GdeltaEntry:
    grid = patch.grid_array()
    threshold = 1.0 / patch_index
    try:
        target_values = kernels.exp_poly_eval_grid(poly, grid)
    except (OverflowError, KernelError) as exc:
        return GdeltaEntry(m, patch_index, poly, None, math.inf, None, None,
                           f"{type(exc).__name__}: {exc}", 0)
    best_error, best_n = math.inf, None
    first_hit = None
    scanned = 0
    note = None
    for n in range(1, n_max + 1):
        tau = n * t0
        try:
            values = kernels.riemann_zeta_grid(shift_points(grid, tau), prec)
        except KernelError as exc:
            note = f"n={n} {type(exc).__name__}: {exc}"
            continue
        scanned += 1
        err = _max_abs_diff(values, target_values)
        if err < best_error:
            best_error, best_n = err, n
        if err < threshold:
            first_hit = n
            break
    verified = None
    if first_hit is not None:
        verified = error_at(Subject.riemann(),
                            TargetFunction.exp_polynomial(poly),
                            patch, first_hit * t0, prec)
    return GdeltaEntry(m, patch_index, poly, first_hit, best_error, best_n,
                       verified, note, scanned)


def gdelta_scan(t0: float, m_max: int, n_max: int,
                prec: EvalPrecision = kernels.DEFAULT_PRECISION,
                exhaustion: Exhaustion | None = None) -> GdeltaScanResult:
    """Finite-scale membership evidence for t0 in the first m_max base sets.

    For each m the pair (N, P) = enumerate_base(m) names the open set of
    functions within 1/N of e^P on the N-th exhaustion patch; the scan walks
    n = 1..n_max looking for max |zeta(s + i n t0) - e^{P(s)}| < 1/N and
    records the first hit (re-verified independently) or the best error seen.
    Membership in the full intersection is not decidable; this is per-set
    evidence only.
    """
    if not t0 > 0:
        raise ValueError("t0 must be positive")
    if m_max < 1 or n_max < 1:
        raise ValueError("m_max and n_max must be at least 1")
    exh = exhaustion if exhaustion is not None else Exhaustion()
    entries = []
    for m in range(1, m_max + 1):
        base: BaseIndex = enumerate_base(m)
        patch = exh.patch(base.patch_index)
        entries.append(_scan_entry(m, base.patch_index, base.polynomial,
                                   patch, t0, n_max, prec))
    return GdeltaScanResult(t0, n_max, exh.grid_step, tuple(entries))


@dataclass(frozen=True)
class JointComponent:
    subject: Subject
    strip: StripDomain
    patch: CompactPatch
    target: TargetFunction


@dataclass(frozen=True)
class JointSpec:
    components: tuple[JointComponent, ...]
    shift_vector: tuple[float, ...]
    epsilon: float

    def __post_init__(self) -> None:
        if not self.components:
            raise ValueError("joint spec needs at least one component")
        if len(self.shift_vector) != len(self.components):
            raise ValueError("shift vector length must match components")
        if any(h <= 0 for h in self.shift_vector):
            raise ValueError("all shift multipliers must be positive")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


def joint_sweep(spec: JointSpec, t_max: float, delta: float,
                prec: EvalPrecision = kernels.DEFAULT_PRECISION,
                threads: int = 1) -> ErrorProfile:
    """Profile of E_joint(tau) = max_n max_K |zeta_n(s + i h_n tau) - f_n(s)|.

    With a single component and h = 1 this degenerates to continuous_sweep
    sample for sample.
    """
    shift = ContinuousShift(t_max, delta)
    grids = [c.patch.grid_array() for c in spec.components]
    target_values = [c.target.evaluate(g, prec)
                     for c, g in zip(spec.components, grids)]

    def evaluate_one(tau: float) -> float:
        worst = 0.0
        for idx, (component, grid, tv) in enumerate(
                zip(spec.components, grids, target_values)):
            tau_eff = spec.shift_vector[idx] * tau
            try:
                sv = component.subject.evaluate(shift_points(grid, tau_eff),
                                                prec)
            except (KernelError, OverflowError) as exc:
                raise type(exc)(f"component {idx}: {exc}") from exc
            worst = max(worst, _max_abs_diff(sv, tv))
        return worst

    from .orbit import _profile_samples
    samples = _profile_samples(evaluate_one, shift.taus(), threads)
    return ErrorProfile(shift, None, None, None, samples, "joint")
