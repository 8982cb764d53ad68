"""Target functions f of the admissible tuples (K, f, eps).

A target is one of: a plain complex polynomial, an exponential of a rational
polynomial (never zero), or a frozen vertical shift of one of the zeta
kernels (used for planted-instance experiments and self-approximation).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .kernels import EvalPrecision, RationalPolynomial
from .space import CompactPatch


def shift_points(points: np.ndarray, tau: float) -> np.ndarray:
    """The vertical-shift map s -> s + i tau, one addition per point."""
    return points + complex(0.0, tau)


POLYNOMIAL = "polynomial"
EXP_POLYNOMIAL = "exp_polynomial"
ZETA_SHIFT = "zeta_shift"
HURWITZ_SHIFT = "hurwitz_shift"
LOG_ZETA_SHIFT = "log_zeta_shift"


@dataclass(frozen=True)
class TargetFunction:
    """Tagged target variant; construct through the classmethods."""

    kind: str
    coefficients: tuple[complex, ...] | None = None
    rational: RationalPolynomial | None = None
    alpha: float | None = None
    tau0: float | None = None

    @classmethod
    def polynomial(cls, coefficients) -> "TargetFunction":
        coeffs = tuple(complex(c) for c in coefficients) or (0.0 + 0.0j,)
        return cls(POLYNOMIAL, coefficients=coeffs)

    @classmethod
    def exp_polynomial(cls, poly: RationalPolynomial) -> "TargetFunction":
        return cls(EXP_POLYNOMIAL, rational=poly)

    @classmethod
    def zeta_shift(cls, tau0: float) -> "TargetFunction":
        return cls(ZETA_SHIFT, tau0=float(tau0))

    @classmethod
    def hurwitz_shift(cls, alpha: float, tau0: float) -> "TargetFunction":
        kernels.HurwitzParams(alpha)
        return cls(HURWITZ_SHIFT, alpha=float(alpha), tau0=float(tau0))

    @classmethod
    def log_zeta_shift(cls, tau0: float) -> "TargetFunction":
        return cls(LOG_ZETA_SHIFT, tau0=float(tau0))

    def evaluate(self, points: np.ndarray,
                 prec: EvalPrecision = kernels.DEFAULT_PRECISION) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        if self.kind == POLYNOMIAL:
            acc = np.zeros_like(pts)
            for c in reversed(self.coefficients):
                acc = acc * pts + c
            return acc
        if self.kind == EXP_POLYNOMIAL:
            return kernels.exp_poly_eval_grid(self.rational, pts)
        shifted = shift_points(pts, self.tau0)
        if self.kind == ZETA_SHIFT:
            return kernels.riemann_zeta_grid(shifted, prec)
        if self.kind == HURWITZ_SHIFT:
            return kernels.hurwitz_zeta_grid(shifted, self.alpha, prec)
        if self.kind == LOG_ZETA_SHIFT:
            return np.asarray(
                [kernels.log_zeta_tracked(complex(s), prec) for s in shifted],
                dtype=complex)
        raise ValueError(f"unknown target kind {self.kind!r}")

    def as_callable(self, prec: EvalPrecision = kernels.DEFAULT_PRECISION):
        return lambda s: self.evaluate(np.atleast_1d(np.asarray(s, dtype=complex)),
                                       prec).reshape(np.shape(s))

    def nonvanishing_on(self, patch: CompactPatch,
                        prec: EvalPrecision = kernels.DEFAULT_PRECISION) -> bool:
        """True when the target has no zero on the patch grid.

        exp_polynomial targets are nonvanishing unconditionally; for the other
        variants this is the computable grid surrogate of the starred
        admissibility requirement.
        """
        if self.kind == EXP_POLYNOMIAL:
            return True
        values = self.evaluate(patch.grid_array(), prec)
        return bool(np.min(np.abs(values)) > 0.0)

    def describe(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.coefficients is not None:
            out["coefficients"] = [[c.real, c.imag] for c in self.coefficients]
        if self.rational is not None:
            out["polynomial"] = str(self.rational)
        if self.alpha is not None:
            out["alpha"] = self.alpha
        if self.tau0 is not None:
            out["tau0"] = self.tau0
        return out
