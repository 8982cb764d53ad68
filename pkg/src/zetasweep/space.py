"""Strip geometry, compact patches, the Frechet metric and polynomial fits.

Compact sets are represented by finite grids; every "max over K" in the
package is a max over the grid points of a patch, with the grid step recorded
as the declared resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import ConditioningError, GeometryError

# Slack for counting lattice points along an axis; grids must not lose the
# last column to floating-point division noise.
_GRID_EPS = 1e-9


@dataclass(frozen=True)
class StripDomain:
    """Open vertical strip sigma_lo < Re(s) < sigma_hi."""

    sigma_lo: float = 0.5
    sigma_hi: float = 1.0

    def __post_init__(self) -> None:
        if not self.sigma_lo < self.sigma_hi:
            raise GeometryError("strip requires sigma_lo < sigma_hi")


CLASSICAL_STRIP = StripDomain(0.5, 1.0)


@dataclass(frozen=True)
class Rectangle:
    sigma1: float
    sigma2: float
    t1: float
    t2: float

    def __post_init__(self) -> None:
        if self.sigma1 > self.sigma2 or self.t1 > self.t2:
            raise GeometryError("rectangle bounds out of order")


@dataclass(frozen=True)
class Disc:
    center: complex
    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise GeometryError("disc radius must be positive")


Shape = Rectangle | Disc


def _axis_count(span: float, step: float) -> int:
    return int(math.floor(span / step + _GRID_EPS)) + 1


def _rectangle_grid(shape: Rectangle, step: float) -> list[complex]:
    n_sigma = _axis_count(shape.sigma2 - shape.sigma1, step)
    n_t = _axis_count(shape.t2 - shape.t1, step)
    return [complex(shape.sigma1 + i * step, shape.t1 + j * step)
            for i in range(n_sigma) for j in range(n_t)]


def _disc_grid(shape: Disc, step: float) -> list[complex]:
    n = _axis_count(2.0 * shape.radius, step)
    x0 = shape.center.real - shape.radius
    y0 = shape.center.imag - shape.radius
    pts = []
    for i in range(n):
        for j in range(n):
            p = complex(x0 + i * step, y0 + j * step)
            if abs(p - shape.center) <= shape.radius + 1e-12:
                pts.append(p)
    return pts


@dataclass(frozen=True)
class CompactPatch:
    """A rectangle or disc strictly inside its strip, with its grid."""

    shape: Shape
    grid_step: float
    strip: StripDomain
    grid_points: tuple[complex, ...]

    def grid_array(self) -> np.ndarray:
        return np.asarray(self.grid_points, dtype=complex)

    def sigma_bounds(self) -> tuple[float, float]:
        if isinstance(self.shape, Rectangle):
            return self.shape.sigma1, self.shape.sigma2
        return (self.shape.center.real - self.shape.radius,
                self.shape.center.real + self.shape.radius)


def build_patch(shape: Shape, grid_step: float,
                strip: StripDomain = CLASSICAL_STRIP) -> CompactPatch:
    """Build the deterministic grid of a shape strictly inside the strip.

    Rectangle grids are axis-aligned lattices anchored at (sigma1, t1); disc
    grids keep the lattice points of the bounding square that fall inside the
    closed disc.
    """
    if not grid_step > 0:
        raise ValueError("grid_step must be positive")
    if isinstance(shape, Rectangle):
        lo, hi = shape.sigma1, shape.sigma2
    else:
        lo = shape.center.real - shape.radius
        hi = shape.center.real + shape.radius
    if not (strip.sigma_lo < lo and hi < strip.sigma_hi):
        raise GeometryError(
            f"shape [{lo}, {hi}] is not strictly inside the strip "
            f"({strip.sigma_lo}, {strip.sigma_hi})")
    points = (_rectangle_grid(shape, grid_step) if isinstance(shape, Rectangle)
              else _disc_grid(shape, grid_step))
    if not points:
        raise GeometryError("patch grid is empty")
    return CompactPatch(shape, grid_step, strip, tuple(points))


DEFAULT_EXHAUSTION_STEP = 0.05


@dataclass(frozen=True)
class Exhaustion:
    """Compact exhaustion of a strip by rectangles.

    Patch n is [sigma_lo + 1/(2n+2), sigma_hi - 1/(2n+2)] x [-n, n]; the
    margins shrink to zero and the heights grow, so every compact subset of
    the open strip lies in some patch.  For the classical strip patch 1 is a
    degenerate vertical segment, which is a perfectly good compact set.
    """

    domain: StripDomain = CLASSICAL_STRIP
    grid_step: float = DEFAULT_EXHAUSTION_STEP
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def patch(self, n: int) -> CompactPatch:
        if n < 1:
            raise ValueError("exhaustion index starts at 1")
        if n not in self._cache:
            margin = 1.0 / (2 * n + 2)
            s1 = self.domain.sigma_lo + margin
            s2 = self.domain.sigma_hi - margin
            if s1 > s2:
                raise GeometryError(
                    f"strip too narrow for exhaustion patch {n}")
            rect = Rectangle(s1, s2, -float(n), float(n))
            self._cache[n] = build_patch(rect, self.grid_step, self.domain)
        return self._cache[n]


Evaluable = Callable[[np.ndarray], np.ndarray]


def _values_on(f: Evaluable, pts: np.ndarray) -> np.ndarray:
    """Evaluate a callable on a point array, tolerating scalar-only callables."""
    try:
        vals = np.asarray(f(pts), dtype=complex)
        if vals.shape == pts.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.asarray([f(complex(p)) for p in pts], dtype=complex)


def sup_distance(f: Evaluable, g: Evaluable, patch: CompactPatch) -> float:
    """max over the patch grid of |f - g| (the grid proxy for the sup-norm)."""
    pts = patch.grid_array()
    return float(np.max(np.abs(_values_on(f, pts) - _values_on(g, pts))))


class FrechetDistance(NamedTuple):
    value: float
    tail_bound: float


def frechet_distance(f: Evaluable, g: Evaluable, depth: int,
                     exhaustion: Exhaustion | None = None) -> FrechetDistance:
    """Truncation of d(f,g) = sum_n 2^-n min(1, p_n(f-g)) at n = depth.

    The returned tail_bound 2^-depth encloses everything the truncation
    dropped; the value itself lies in [0, 1 - 2^-depth].
    """
    if depth < 1:
        raise ValueError("depth must be a positive integer")
    exh = exhaustion if exhaustion is not None else Exhaustion()
    total = 0.0
    for n in range(1, depth + 1):
        p_n = sup_distance(f, g, exh.patch(n))
        total += min(1.0, p_n) * 2.0 ** (-n)
    return FrechetDistance(total, 2.0 ** (-depth))


@dataclass(frozen=True)
class FittedPolynomial:
    """Least-squares polynomial in the centered, scaled basis ((s-c)/r)^k."""

    center: complex
    scale: float
    coefficients: tuple[complex, ...]
    residual: float
    condition: float

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, s):
        z = (np.asarray(s, dtype=complex) - self.center) / self.scale
        acc = np.zeros_like(z)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        if np.ndim(s) == 0:
            return complex(acc)
        return acc

    def monomial_coefficients(self) -> tuple[complex, ...]:
        """Expand into plain powers of s (constant term first)."""
        out = np.zeros(self.degree + 1, dtype=complex)
        basis = np.asarray([1.0 + 0j])  # ((s-c)/r)^k, lowest power first
        shift = np.asarray([-self.center / self.scale, 1.0 / self.scale])
        for k, a in enumerate(self.coefficients):
            out[: len(basis)] += a * basis
            if k < self.degree:
                basis = np.convolve(basis, shift)
        return tuple(out)


_CONDITION_LIMIT = 1e12


def mergelyan_fit(samples: Sequence[tuple[complex, complex]],
                  degree: int) -> FittedPolynomial:
    """Least-squares polynomial through sampled values of an analytic function.

    Stands in for the constructive content of polynomial-approximation
    theorems: the caller picks the degree, the residual (max |P(s_j) - v_j|
    over the samples) certifies the fit.  The normal system is solved in a
    centered and scaled basis; a condition estimate above 1e12 raises
    ConditioningError.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if len(samples) < degree + 1:
        raise ValueError("need at least degree+1 samples")
    pts = np.asarray([s for s, _ in samples], dtype=complex)
    vals = np.asarray([v for _, v in samples], dtype=complex)
    center = complex(pts.mean())
    scale = float(np.max(np.abs(pts - center)))
    if scale == 0.0:
        scale = 1.0
    z = (pts - center) / scale
    vander = np.vander(z, degree + 1, increasing=True)
    coeffs, _, rank, sing = np.linalg.lstsq(vander, vals, rcond=None)
    if rank < degree + 1:
        raise ConditioningError("sample set does not determine the degree")
    condition = float((sing[0] / sing[-1]) ** 2) if sing[-1] > 0 else math.inf
    if condition > _CONDITION_LIMIT:
        raise ConditioningError(
            f"normal system condition estimate {condition:.3e} exceeds 1e12")
    fitted = vander @ coeffs
    residual = float(np.max(np.abs(fitted - vals)))
    return FittedPolynomial(center, scale, tuple(coeffs), residual, condition)
