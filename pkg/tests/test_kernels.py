"""Kernel tests against independent oracles.

The oracles here are deliberately primitive: partial sums with integral tail
brackets, the scalar exponential, and cross-checks between the two unrelated
zeta routes.  Frozen expected literals were computed with these same oracles
and are re-derived on every run.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetasweep import kernels as K
from zetasweep.errors import PoleError, PrecisionError, ZeroProximityError


def zeta_real_bracket(sigma: float, n_terms: int = 1_000_000):
    """Enclose zeta(sigma) for real sigma > 1 by partial sum + integral tail.

    The tail sum_{n>N} n^{-sigma} lies between the integrals from N+1 and N,
    which gives the bracket [partial + (N+1)^{1-sigma}/(sigma-1),
    partial + N^{1-sigma}/(sigma-1)].
    """
    n = np.arange(1, n_terms + 1, dtype=float)
    partial = float(np.sum(n ** (-sigma)))
    # Allowance for rounding in the pairwise summation of n_terms doubles.
    fp_slack = math.log2(n_terms) * np.finfo(float).eps * partial
    lo = partial + (n_terms + 1.0) ** (1.0 - sigma) / (sigma - 1.0) - fp_slack
    hi = partial + float(n_terms) ** (1.0 - sigma) / (sigma - 1.0) + fp_slack
    return lo, hi


ZETA_2 = 1.6449340668482264
ZETA_3 = 1.2020569031595943


def test_partial_sum_oracle_pins_zeta2():
    lo, hi = zeta_real_bracket(2.0)
    assert hi - lo < 2e-12
    assert lo <= ZETA_2 <= hi


def test_partial_sum_oracle_pins_zeta3():
    lo, hi = zeta_real_bracket(3.0)
    assert hi - lo < 2e-12
    assert lo <= ZETA_3 <= hi


def test_riemann_zeta_at_2_and_3():
    assert abs(K.riemann_zeta(2 + 0j) - ZETA_2) <= 1e-10
    assert abs(K.riemann_zeta(3 + 0j) - ZETA_3) <= 1e-10


def test_riemann_zeta_dual_method_at_three_quarters():
    em = K.riemann_zeta(0.75 + 0j)
    alt = K.riemann_zeta_alternating(0.75 + 0j)
    assert abs(em - alt) <= 1e-9


DUAL_GRID = [complex(sigma, t)
             for sigma in (0.55, 0.65, 0.75, 0.85, 0.95)
             for t in (0.0, 10.0, 100.0, 1000.0)]


@pytest.mark.parametrize("s", DUAL_GRID)
def test_dual_method_agreement_on_grid(s):
    assert abs(K.riemann_zeta(s) - K.riemann_zeta_alternating(s)) <= 1e-9


def test_hurwitz_alpha_one_is_riemann_bitwise():
    for s in (2 + 0j, 0.75 + 10j, 0.6 + 100j):
        assert K.hurwitz_zeta(s, 1.0) == K.riemann_zeta(s)


def test_hurwitz_at_2_alpha_one():
    assert abs(K.hurwitz_zeta(2 + 0j, 1.0) - ZETA_2) <= 1e-10


def test_even_odd_split_identity_spot():
    # zeta(s; 1/2) = (2^s - 1) zeta(s)
    s = 0.75 + 10j
    left = K.hurwitz_zeta(s, 0.5)
    right = (2.0 ** s - 1.0) * K.riemann_zeta(s)
    assert abs(left - right) / abs(right) <= 1e-9


@pytest.mark.parametrize("s", [complex(sig, t)
                               for sig in (0.55, 0.65, 0.75, 0.85, 0.95)
                               for t in (0.0, 25.0, 50.0, 75.0, 100.0)])
def test_even_odd_split_identity_grid(s):
    left = K.hurwitz_zeta(s, 0.5)
    right = (2.0 ** s - 1.0) * K.riemann_zeta(s)
    assert abs(left - right) <= 1e-9 * abs(right)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
@pytest.mark.parametrize("s", [0.55 + 0j, 0.75 + 10j, 0.95 + 100j])
def test_hurwitz_recurrence(s, alpha):
    # zeta(s, alpha) - zeta(s, alpha + 1) = alpha^{-s}
    lhs = K.hurwitz_zeta(s, alpha) - complex(
        K.hurwitz_zeta_core(np.asarray([s]), alpha + 1.0)[0])
    assert abs(lhs - alpha ** (-s)) <= 1e-10


@pytest.mark.parametrize("s", DUAL_GRID)
def test_conjugate_symmetry(s):
    for f in (K.riemann_zeta, K.riemann_zeta_alternating):
        assert abs(f(s.conjugate()) - f(s).conjugate()) <= 1e-12
    assert abs(K.hurwitz_zeta(s.conjugate(), 0.3)
               - K.hurwitz_zeta(s, 0.3).conjugate()) <= 1e-12


@given(st.floats(0.55, 0.95), st.floats(0.0, 500.0))
def test_conjugate_symmetry_random(sigma, t):
    s = complex(sigma, t)
    assert abs(K.riemann_zeta(s.conjugate())
               - K.riemann_zeta(s).conjugate()) <= 1e-12


def test_pole_error():
    with pytest.raises(PoleError):
        K.riemann_zeta(1.0 + 0j)
    with pytest.raises(PoleError):
        K.hurwitz_zeta(1.0 + 1e-13j, 0.5)


def test_range_limit():
    with pytest.raises(PrecisionError):
        K.riemann_zeta(0.75 + 2e6j)


def test_precision_error_when_truncation_too_short():
    starved = K.EvalPrecision(shift_terms=4, bernoulli_order=12,
                              target_tol=1e-10)
    with pytest.raises(PrecisionError):
        K.riemann_zeta(0.6 + 100j, starved)


def test_dual_method_at_edge_of_validated_range():
    s = 0.4 + 10000j
    em = K.riemann_zeta(s)
    alt = K.riemann_zeta_alternating(s)
    assert abs(em - alt) <= 2 * K.DEFAULT_PRECISION.target_tol


def test_alternating_guard_near_eta_degeneracy():
    # 1 - 2^{1-s} vanishes at sigma = 1, t = 2 pi / ln 2
    t = 2 * math.pi / math.log(2.0)
    with pytest.raises(PrecisionError):
        K.riemann_zeta_alternating(complex(1.0, t))


def test_eval_precision_validation():
    with pytest.raises(ValueError):
        K.EvalPrecision(shift_terms=0)
    with pytest.raises(ValueError):
        K.EvalPrecision(bernoulli_order=0)
    with pytest.raises(ValueError):
        K.EvalPrecision(target_tol=-1.0)
    with pytest.raises(ValueError):
        K.HurwitzParams(0.0)
    with pytest.raises(ValueError):
        K.HurwitzParams(1.5)


# ---------------------------------------------------------------- log zeta


def test_log_zeta_at_2_matches_partial_sum_oracle():
    lo, hi = zeta_real_bracket(2.0)
    L = K.log_zeta_tracked(2 + 0j)
    assert L.imag == 0.0
    assert math.log(lo) - 1e-10 <= L.real <= math.log(hi) + 1e-10


def test_log_zeta_round_trip():
    s = 0.8 + 5j
    L = K.log_zeta_tracked(s)
    z = K.riemann_zeta(s)
    assert abs(cmath.exp(L) - z) <= 1e-9 * abs(z)


def test_log_zeta_near_zero_behaviour():
    # Coarse scan for a low |zeta| point near the first nontrivial zero.
    best, best_s = math.inf, None
    for sigma in np.arange(0.505, 0.62, 0.005):
        for t in np.arange(14.10, 14.17, 0.002):
            v = abs(K.riemann_zeta(complex(sigma, t)))
            if v < best:
                best, best_s = v, complex(sigma, t)
    assert best < 0.05  # the scan did land close to the zero
    try:
        L = K.log_zeta_tracked(best_s)
    except ZeroProximityError:
        return
    z = K.riemann_zeta(best_s)
    assert abs(cmath.exp(L) - z) <= 1e-9 * abs(z)


def test_log_zeta_requires_right_half_strip():
    with pytest.raises(ValueError):
        K.log_zeta_tracked(0.4 + 3j)


# ---------------------------------------------------------------- exp(P)


def test_exp_poly_zero_polynomial():
    assert K.exp_poly_eval(K.ZERO_POLYNOMIAL, 0.3 + 9j) == 1.0 + 0.0j


def test_exp_poly_euler_identity():
    p = K.RationalPolynomial([0, 1])  # P(X) = X
    assert abs(K.exp_poly_eval(p, complex(0, math.pi)) - (-1.0)) <= 1e-12


def test_exp_poly_against_scalar_exponential():
    from fractions import Fraction
    p = K.RationalPolynomial([1, Fraction(1, 2)])  # 1 + X/2
    want = math.exp(1.375)
    assert abs(K.exp_poly_eval(p, 0.75 + 0j) - want) <= 1e-12 * want


def test_exp_poly_overflow():
    p = K.RationalPolynomial([800])
    with pytest.raises(OverflowError):
        K.exp_poly_eval(p, 0.75 + 0j)
    with pytest.raises(OverflowError):
        K.exp_poly_eval_grid(p, np.asarray([0.75 + 0j]))


def test_exp_poly_never_underflows_to_zero():
    p = K.RationalPolynomial([-800])
    with pytest.raises(OverflowError):
        K.exp_poly_eval(p, 0.75 + 0j)


def test_exp_poly_grid_matches_scalar():
    p = K.RationalPolynomial([1, 2, 3])
    pts = np.asarray([0.6 + 1j, 0.9 - 2j])
    grid = K.exp_poly_eval_grid(p, pts)
    for j, s in enumerate(pts):
        assert grid[j] == K.exp_poly_eval(p, complex(s))


def test_rational_polynomial_invariants():
    with pytest.raises(ValueError):
        K.RationalPolynomial([1, 0])  # zero leading coefficient
    p = K.RationalPolynomial([])
    assert p.is_zero() and p.degree == 0
