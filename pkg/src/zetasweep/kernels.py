"""Numerical kernels for the Riemann and Hurwitz zeta-functions.

Two independent evaluation routes are provided for zeta on and around the
critical strip:

* ``riemann_zeta`` / ``hurwitz_zeta`` use Euler-Maclaurin continuation of the
  Dirichlet series

      zeta(s, a) = sum_{n=0}^{M-1} (n+a)^{-s} + (M+a)^{1-s}/(s-1)
                   + (M+a)^{-s}/2
                   + sum_{k=1}^{K} B_{2k}/(2k)! (s)_{2k-1} (M+a)^{-s-2k+1}

  with M shift terms, K Bernoulli corrections and (s)_j the rising factorial.
  The magnitude of the last correction term is used as the internal error
  proxy.

* ``riemann_zeta_alternating`` evaluates the eta function by Boole summation
  (the alternating analogue of Euler-Maclaurin, built on Euler-polynomial
  values E_k(0) instead of Bernoulli numbers) and divides by 1 - 2^(1-s).
  The two routes share no expansion coefficients, so their agreement is a
  genuine cross-check.

``log_zeta_tracked`` returns a branch of log zeta fixed by continuation along
the horizontal segment from 2 + i Im(s) to s, seeded with the principal value
of the absolutely convergent log Euler product on the sigma = 2 line.

All functions are pure; the Bernoulli/Euler coefficient tables are built once
at import time and never mutated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PoleError, PrecisionError, ZeroProximityError

TWO_PI = 2.0 * math.pi
LN2 = math.log(2.0)

# Hard range limits: the kernels are validated for |t| <= 1e4 and refuse
# |t| > 1e6 outright (no Riemann-Siegel machinery here).
_T_HARD_LIMIT = 1.0e6
_POLE_RADIUS = 1.0e-12
_ZERO_PROXIMITY = 1.0e-6

_MAX_BERNOULLI_ORDER = 30  # K <= 30, i.e. Bernoulli numbers up to B_60


def _bernoulli_table(n: int) -> list[Fraction]:
    """B_0 .. B_n as exact rationals via the defining recurrence."""
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * table[j]
        table.append(-acc / (m + 1))
    return table


_BERNOULLI = _bernoulli_table(2 * _MAX_BERNOULLI_ORDER + 2)

# B_{2k}/(2k)! as floats, indexed by k.
_B2K_OVER_FACT = [
    float(_BERNOULLI[2 * k] / math.factorial(2 * k))
    for k in range(_MAX_BERNOULLI_ORDER + 1)
]

# E_k(0)/k! for Boole summation; E_0(0)=1, E_k(0) = -2(2^{k+1}-1)B_{k+1}/(k+1).
_BOOLE_ORDER = 16
_EK0_OVER_FACT = [1.0] + [
    float(Fraction(-2) * (2 ** (k + 1) - 1) * _BERNOULLI[k + 1] / (k + 1)
          / math.factorial(k))
    for k in range(1, _BOOLE_ORDER)
]


def _sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if flags[p]:
            flags[p * p:: p] = False
    return np.nonzero(flags)[0].astype(float)

_EULER_PRIME_CUT = 1000
_PRIMES = _sieve(_EULER_PRIME_CUT)


@dataclass(frozen=True)
class EvalPrecision:
    """Truncation parameters of the Euler-Maclaurin continuation.

    ``shift_terms=None`` selects M automatically as max(32, ceil(1.3(|t|+10)))
    from the largest |Im s| in the batch being evaluated.
    """

    shift_terms: int | None = None
    bernoulli_order: int = 12
    target_tol: float = 1.0e-10

    def __post_init__(self) -> None:
        if self.shift_terms is not None and self.shift_terms < 1:
            raise ValueError("shift_terms must be a positive integer")
        if not 1 <= self.bernoulli_order <= _MAX_BERNOULLI_ORDER:
            raise ValueError(
                f"bernoulli_order must be in [1, {_MAX_BERNOULLI_ORDER}]")
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")

    def resolve_shift_terms(self, t_ref: float) -> int:
        if self.shift_terms is not None:
            return self.shift_terms
        return max(32, math.ceil(1.3 * (abs(t_ref) + 10.0)))


DEFAULT_PRECISION = EvalPrecision()


@dataclass(frozen=True)
class HurwitzParams:
    """Parameter alpha of the Hurwitz zeta-function, restricted to (0, 1]."""

    alpha: float

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 1.0) or not math.isfinite(self.alpha):
            raise ValueError("alpha must lie in (0, 1]")


def _as_alpha(params: HurwitzParams | float) -> float:
    if isinstance(params, HurwitzParams):
        return params.alpha
    return HurwitzParams(float(params)).alpha


def _coerce_rational_complex(c) -> tuple[Fraction, Fraction]:
    if isinstance(c, tuple):
        re, im = c
        return Fraction(re), Fraction(im)
    if isinstance(c, complex):
        return Fraction(c.real), Fraction(c.imag)
    return Fraction(c), Fraction(0)


class RationalPolynomial:
    """Polynomial with coefficients in Q + iQ, constant term first.

    Immutable; the leading coefficient is nonzero unless the degree is 0.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients) -> None:
        coeffs = tuple(_coerce_rational_complex(c) for c in coefficients)
        if not coeffs:
            coeffs = ((Fraction(0), Fraction(0)),)
        if len(coeffs) > 1 and coeffs[-1] == (Fraction(0), Fraction(0)):
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.coefficients == ((Fraction(0), Fraction(0)),)

    def complex_coefficients(self) -> tuple[complex, ...]:
        return tuple(complex(re, im) for re, im in self.coefficients)

    def __call__(self, s):
        """Horner evaluation; accepts a scalar or a numpy array."""
        cs = self.complex_coefficients()
        acc = np.zeros_like(s, dtype=complex) if isinstance(s, np.ndarray) \
            else 0.0 + 0.0j
        for c in reversed(cs):
            acc = acc * s + c
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalPolynomial)
                and self.coefficients == other.coefficients)

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    def __repr__(self) -> str:
        return f"RationalPolynomial({self!s})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for j, (re, im) in enumerate(self.coefficients):
            if re == 0 and im == 0:
                continue
            mono = "" if j == 0 else ("X" if j == 1 else f"X^{j}")
            if im == 0:
                coef = str(re)
            elif re == 0:
                coef = f"{im}i"
            else:
                sign = "+" if im > 0 else "-"
                coef = f"({re}{sign}{abs(im)}i)"
            parts.append(coef + mono if mono else coef)
        return " + ".join(parts)

ZERO_POLYNOMIAL = RationalPolynomial([(Fraction(0), Fraction(0))])


def _as_batch(s) -> np.ndarray:
    arr = np.asarray(s, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if not np.all(np.isfinite(arr)):
        raise PrecisionError("non-finite evaluation point")
    return arr.ravel()


def _check_range(s: np.ndarray) -> float:
    t_ref = float(np.max(np.abs(s.imag))) if s.size else 0.0
    if t_ref > _T_HARD_LIMIT:
        raise PrecisionError(
            f"|Im s| = {t_ref:g} exceeds the supported range {_T_HARD_LIMIT:g}")
    return t_ref


def _check_pole(s: np.ndarray) -> None:
    if s.size == 0:
        return
    d = np.abs(s - 1.0)
    j = int(np.argmin(d))
    if d[j] < _POLE_RADIUS:
        raise PoleError(f"evaluation point {s[j]} is on the pole s = 1")


def _finite_or_raise(values: np.ndarray, s: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        j = int(np.argmax(bad))
        raise PrecisionError(f"non-finite kernel value at s = {s[j]}")


def _euler_maclaurin_batch(s: np.ndarray, a: float, m_terms: int,
                           k_order: int) -> tuple[np.ndarray, np.ndarray]:
    """Euler-Maclaurin zeta(s, a) on a flat batch; returns (values, error proxy)."""
    base = np.arange(m_terms, dtype=float) + a
    partial = np.exp(np.multiply.outer(-s, np.log(base))).sum(axis=1)

    q = float(m_terms) + a
    lq = math.log(q)
    q_pow_ms = np.exp(-s * lq)                      # q^{-s}
    values = partial + q_pow_ms * q / (s - 1.0) + 0.5 * q_pow_ms

    poch = s.copy()                                 # (s)_1
    last = np.zeros_like(s)
    for k in range(1, k_order + 1):
        if k > 1:
            j = 2 * k - 3
            poch = poch * (s + j) * (s + j + 1)
        last = _B2K_OVER_FACT[k] * poch * np.exp(-(s + (2 * k - 1)) * lq)
        values = values + last
    return values, np.abs(last)


def hurwitz_zeta_core(s, a: float,
                      prec: EvalPrecision = DEFAULT_PRECISION) -> np.ndarray:
    """Euler-Maclaurin continuation of zeta(s, a) for any real a > 0.

    This is the shared core behind ``hurwitz_zeta`` and ``riemann_zeta``;
    unlike the public entry points it does not restrict a to (0, 1], which is
    what the recurrence identity zeta(s,a) - zeta(s,a+1) = a^{-s} needs.
    """
    if not a > 0:
        raise ValueError("a must be positive")
    batch = _as_batch(s)
    t_ref = _check_range(batch)
    _check_pole(batch)
    m_terms = prec.resolve_shift_terms(t_ref)
    values, err = _euler_maclaurin_batch(batch, a, m_terms,
                                         prec.bernoulli_order)
    worst = int(np.argmax(err))
    if err[worst] > prec.target_tol:
        raise PrecisionError(
            f"error estimate {err[worst]:.3e} exceeds target_tol "
            f"{prec.target_tol:.3e} at s = {batch[worst]}")
    _finite_or_raise(values, batch)
    return values


def hurwitz_zeta_grid(s, params: HurwitzParams | float,
                      prec: EvalPrecision = DEFAULT_PRECISION) -> np.ndarray:
    """Vectorised zeta(s; alpha) over a flat array of points."""
    return hurwitz_zeta_core(s, _as_alpha(params), prec)


def hurwitz_zeta(s: complex, params: HurwitzParams | float,
                 prec: EvalPrecision = DEFAULT_PRECISION) -> complex:
    """Hurwitz zeta-function zeta(s; alpha), alpha in (0, 1], s != 1.

    For alpha = 1 this is bit-identical to ``riemann_zeta``: both run the
    same continuation with a = 1.
    """
    return complex(hurwitz_zeta_grid(np.asarray([s]), params, prec)[0])


def riemann_zeta_grid(s, prec: EvalPrecision = DEFAULT_PRECISION) -> np.ndarray:
    """Vectorised zeta(s) over a flat array of points (Euler-Maclaurin)."""
    return hurwitz_zeta_core(s, 1.0, prec)


def riemann_zeta(s: complex,
                 prec: EvalPrecision = DEFAULT_PRECISION) -> complex:
    """Riemann zeta-function by Euler-Maclaurin continuation, s != 1."""
    return complex(riemann_zeta_grid(np.asarray([s]), prec)[0])


def _boole_eta_batch(s: np.ndarray, n_terms: int) -> tuple[np.ndarray, np.ndarray]:
    """eta(s) by Boole summation; returns (values, tail error proxy)."""
    n = np.arange(1, n_terms, dtype=float)
    signs = np.where(n.astype(int) % 2 == 0, 1.0, -1.0)
    head = (signs * np.exp(np.multiply.outer(-s, np.log(n)))).sum(axis=1)

    ln = math.log(float(n_terms))
    sign_n = 1.0 if n_terms % 2 == 0 else -1.0
    poch = np.ones_like(s)
    tail = np.zeros_like(s)
    last = np.zeros_like(s)
    for k in range(_BOOLE_ORDER):
        if k > 0:
            poch = poch * (s + (k - 1))
        last = ((-1.0) ** k) * _EK0_OVER_FACT[k] * poch * np.exp(-(s + k) * ln)
        tail = tail + last
    tail = 0.5 * sign_n * tail
    return -(head + tail), 0.5 * np.abs(last)


def riemann_zeta_alternating(s, prec: EvalPrecision = DEFAULT_PRECISION):
    """zeta(s) through the eta function, independent of the EM route.

    eta is summed by Boole's formula with Euler-polynomial corrections and
    divided by 1 - 2^(1-s); this denominator degenerates near sigma = 1 with
    t a multiple of 2 pi / ln 2, where a PrecisionError is raised.

    Returns a scalar for scalar input, an array for array input.
    """
    batch = _as_batch(s)
    t_ref = _check_range(batch)
    _check_pole(batch)
    n_terms = max(32, math.ceil(2.0 * (t_ref + 10.0)))
    eta, err = _boole_eta_batch(batch, n_terms)
    denom = 1.0 - np.exp((1.0 - batch) * LN2)
    small = int(np.argmin(np.abs(denom)))
    if abs(denom[small]) < 1.0e-3:
        raise PrecisionError(
            f"eta route degenerate at s = {batch[small]}: |1 - 2^(1-s)| < 1e-3")
    values = eta / denom
    err = err / np.abs(denom)
    worst = int(np.argmax(err))
    if err[worst] > prec.target_tol:
        raise PrecisionError(
            f"alternating-series error estimate {err[worst]:.3e} exceeds "
            f"target_tol at s = {batch[worst]}")
    _finite_or_raise(values, batch)
    if np.isscalar(s) or getattr(s, "ndim", 1) == 0:
        return complex(values[0])
    return values


def _log_zeta_on_sigma2(t: float, prec: EvalPrecision) -> complex:
    """The standard branch of log zeta(2 + it) via the log Euler product.

    Primes up to the cutoff contribute their principal -Log(1 - p^{-s});
    the remaining rough-integer factor R = zeta(s) prod(1 - p^{-s}) satisfies
    |R - 1| << 1, so its principal logarithm completes the exact branch.
    """
    s0 = 2.0 + 1j * t
    z = np.exp(-s0 * np.log(_PRIMES))
    head = complex(-np.log(1.0 - z).sum())
    residual = riemann_zeta(s0, prec) * complex(np.prod(1.0 - z))
    if abs(residual - 1.0) > 0.5:
        raise PrecisionError("Euler-product residual drifted; cannot seed branch")
    return head + cmath.log(residual)

_TRACK_STEP = 0.05
_TRACK_JUMP = 0.8
_TRACK_MIN_STEP = 1.0e-9
_TRACK_MAX_EVALS = 10_000


def log_zeta_tracked(s: complex,
                     prec: EvalPrecision = DEFAULT_PRECISION) -> complex:
    """Branch-tracked log zeta(s) for Re(s) > 1/2.

    The branch is seeded at 2 + i Im(s) from the log Euler product and
    continued horizontally to s in sigma steps of 0.05, choosing at each step
    the logarithm branch nearest to the previous value (with bisection of the
    step whenever the increment is too large to disambiguate winding).

    Raises ZeroProximityError if |zeta| < 1e-6 anywhere on the path, and
    PrecisionError if the step budget is exhausted (e.g. crossing the pole on
    the real axis).  On success exp(result) reproduces zeta(s) to within
    floating-point accuracy of the kernel itself.
    """
    s = complex(s)
    sigma, t = s.real, s.imag
    if not sigma > 0.5:
        raise ValueError("log_zeta_tracked requires Re(s) > 1/2")
    if abs(t) > _T_HARD_LIMIT:
        raise PrecisionError("Im(s) exceeds the supported range")

    current = _log_zeta_on_sigma2(t, prec)
    cur_sigma = 2.0
    evals = 0
    while cur_sigma != sigma:
        remaining = sigma - cur_sigma
        if abs(remaining) <= _TRACK_STEP:
            step = remaining
        else:
            step = math.copysign(_TRACK_STEP, remaining)
        while True:
            # Taking the full remaining step must land bit-exactly on sigma.
            next_sigma = sigma if step == remaining else cur_sigma + step
            value = riemann_zeta(complex(next_sigma, t), prec)
            evals += 1
            if evals > _TRACK_MAX_EVALS:
                raise PrecisionError("branch tracking exceeded its step budget")
            if abs(value) < _ZERO_PROXIMITY:
                raise ZeroProximityError(
                    f"|zeta| < {_ZERO_PROXIMITY:g} at {complex(next_sigma, t)}; "
                    "branch undefined")
            raw = cmath.log(value)
            winding = round((current.imag - raw.imag) / TWO_PI)
            candidate = raw + 2j * math.pi * winding
            if abs(candidate - current) <= _TRACK_JUMP:
                break
            step *= 0.5
            if abs(step) < _TRACK_MIN_STEP:
                raise PrecisionError(
                    "branch tracking could not resolve the continuation step")
        cur_sigma = next_sigma
        current = candidate
    return current


def exp_poly_eval(poly: RationalPolynomial, s: complex) -> complex:
    """e^{P(s)} by Horner evaluation of P followed by the complex exponential.

    Raises OverflowError when Re(P(s)) leaves [-700, 700]; inside that range
    the result is finite and never zero.
    """
    value = poly(complex(s))
    if abs(value.real) > 700.0:
        raise OverflowError(
            f"Re(P(s)) = {value.real:g} outside the representable range")
    return cmath.exp(value)


def exp_poly_eval_grid(poly: RationalPolynomial, s) -> np.ndarray:
    """Vectorised e^{P(s)} with the same overflow contract as exp_poly_eval."""
    batch = _as_batch(s)
    values = poly(batch)
    worst = int(np.argmax(np.abs(values.real)))
    if abs(values[worst].real) > 700.0:
        raise OverflowError(
            f"Re(P(s)) = {values[worst].real:g} outside the representable "
            f"range at s = {batch[worst]}")
    return np.exp(values)
