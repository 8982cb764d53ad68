import numpy as np
import pytest
from hypothesis import given, strategies as st

from zetasweep import kernels
from zetasweep.errors import NoValidSampleError
from zetasweep.orbit import (ContinuousShift, DiscreteShift, ErrorProfile,
                             ProfileSample, Subject, continuous_sweep,
                             discrete_orbit, error_at, hit_density,
                             search_best_shift, translate)
from zetasweep.space import Disc, Rectangle, StripDomain, build_patch
from zetasweep.targets import TargetFunction

DISC = build_patch(Disc(0.75 + 0j, 0.05), 0.05)
PREC = kernels.DEFAULT_PRECISION


# ------------------------------------------------------------- translate


def test_translate_zero_is_identity_pointwise():
    f = lambda s: s * s + 1
    shifted = translate(f, 0.0)
    for s in (0.75 + 0j, 0.6 + 3j):
        assert shifted(s) == f(s)


def test_translate_semigroup_law_is_exact():
    f = lambda s: s
    a, b = 0.1, 0.7  # neither exactly representable sums
    left = translate(translate(f, a), b)
    right = translate(f, a + b)
    s = 0.75 + 0.25j
    assert left(s) == right(s)
    assert left.shift == right.shift


def test_translate_identity_function_shift():
    f = lambda s: s
    assert translate(f, 2.0)(0.75 + 0j) == 0.75 + 2j


def test_translate_rejects_negative():
    with pytest.raises(ValueError):
        translate(lambda s: s, -1.0)


# -------------------------------------------------------------- error_at


def test_error_at_self_comparison_is_zero():
    subject = Subject.riemann()
    target = TargetFunction.zeta_shift(7.25)
    assert error_at(subject, target, DISC, 7.25, PREC) == 0.0


def test_error_at_zero_polynomial_is_kernel_magnitude():
    point = build_patch(Rectangle(0.8, 0.8, 0.0, 0.0), 0.1)
    target = TargetFunction.polynomial([0])
    tau = 3.0
    want = abs(kernels.riemann_zeta(0.8 + 3j))
    assert error_at(Subject.riemann(), target, point, tau, PREC) == want


def test_error_at_invariant_under_grid_reordering():
    from dataclasses import replace
    shuffled = replace(DISC, grid_points=tuple(reversed(DISC.grid_points)))
    target = TargetFunction.polynomial([1.0, 0.5])
    a = error_at(Subject.riemann(), target, DISC, 3.0, PREC)
    b = error_at(Subject.riemann(), target, shuffled, 3.0, PREC)
    assert a == b


def test_continuous_sweep_with_start_offset():
    profile = continuous_sweep(Subject.riemann(),
                               TargetFunction.polynomial([0]), DISC,
                               ContinuousShift(1.0, 0.5, t_start=10.0), PREC)
    assert [s.tau for s in profile.samples] == [10.0, 10.5, 11.0]
    # density still normalizes by the window length
    d = hit_density(profile, 1e6)
    assert d.hit_fraction == 1.0


def test_error_at_hurwitz_half_identity_with_fit():
    # zeta(s + i tau; 1/2) = (2^{s+i tau} - 1) zeta(s + i tau): fit the right
    # side on the grid and check E is within the fit residual plus kernel tol.
    from zetasweep.space import mergelyan_fit
    tau = 2.0
    patch = build_patch(Disc(0.75 + 0j, 0.05), 0.01)
    pts = patch.grid_array()
    values = (2.0 ** (pts + 1j * tau) - 1.0) * kernels.riemann_zeta_grid(
        pts + 1j * tau, PREC)
    fit = mergelyan_fit(list(zip(map(complex, pts), map(complex, values))), 8)
    target = TargetFunction.polynomial(fit.monomial_coefficients())
    err = error_at(Subject.hurwitz(0.5), target, patch, tau, PREC)
    assert err <= fit.residual + 1e-9


# ---------------------------------------------------------------- sweeps


def test_continuous_sweep_sample_grid():
    profile = continuous_sweep(Subject.riemann(),
                               TargetFunction.polynomial([0]), DISC,
                               ContinuousShift(1.0, 0.5), PREC)
    assert [s.tau for s in profile.samples] == [0.0, 0.5, 1.0]
    assert all(s.status == "ok" for s in profile.samples)


def test_discrete_orbit_matches_continuous_bitwise():
    target = TargetFunction.zeta_shift(0.75)
    cont = continuous_sweep(Subject.riemann(), target, DISC,
                            ContinuousShift(1.0, 0.5), PREC)
    disc = discrete_orbit(Subject.riemann(), target, DISC,
                          DiscreteShift(0.5, 2), PREC)
    assert [s.tau for s in disc.samples] == [s.tau for s in cont.samples]
    assert [s.error for s in disc.samples] == [s.error for s in cont.samples]


def test_discrete_orbit_planted_shift_on_orbit():
    profile = discrete_orbit(Subject.riemann(),
                             TargetFunction.zeta_shift(50.0), DISC,
                             DiscreteShift(50.0, 1), PREC)
    assert profile.samples[1].tau == 50.0
    assert profile.samples[1].error <= 1e-6


def test_target_nonvanishing_flag():
    from zetasweep.kernels import RationalPolynomial
    exp_target = TargetFunction.exp_polynomial(RationalPolynomial([0, 1]))
    assert exp_target.nonvanishing_on(DISC, PREC) is True
    zero_target = TargetFunction.polynomial([0])
    assert zero_target.nonvanishing_on(DISC, PREC) is False
    assert TargetFunction.zeta_shift(2.0).nonvanishing_on(DISC, PREC) is True


def test_discrete_orbit_single_sample():
    profile = discrete_orbit(Subject.riemann(),
                             TargetFunction.polynomial([0]), DISC,
                             DiscreteShift(0.5, 0), PREC)
    assert len(profile.samples) == 1 and profile.samples[0].tau == 0.0


def test_sweep_records_pole_as_single_error_sample():
    # Generalized strip puts a grid point exactly on sigma = 1, so tau = 0
    # evaluates on the pole; every later shift clears it.
    strip = StripDomain(0.9, 1.1)
    patch = build_patch(Rectangle(0.95, 1.05, 0.0, 1.0), 0.05, strip)
    profile = continuous_sweep(Subject.riemann(),
                               TargetFunction.polynomial([0]), patch,
                               ContinuousShift(0.5, 0.1), PREC)
    statuses = [s.status for s in profile.samples]
    assert statuses[0] == "error"
    assert statuses.count("error") == 1
    assert "PoleError" in profile.samples[0].note


def test_sweep_threads_match_sequential():
    target = TargetFunction.zeta_shift(0.3)
    seq = continuous_sweep(Subject.riemann(), target, DISC,
                           ContinuousShift(2.0, 0.25), PREC, threads=1)
    par = continuous_sweep(Subject.riemann(), target, DISC,
                           ContinuousShift(2.0, 0.25), PREC, threads=4)
    assert [s.error for s in seq.samples] == [s.error for s in par.samples]


def test_planted_shift_recovery_small():
    tau0 = 5.0
    target = TargetFunction.zeta_shift(tau0)
    profile = continuous_sweep(Subject.riemann(), target, DISC,
                               ContinuousShift(10.0, 0.25), PREC)
    subject = Subject.riemann()
    best = search_best_shift(
        profile, lambda tau: error_at(subject, target, DISC, tau, PREC))
    assert best.tau_coarse == tau0
    assert best.error_coarse <= 1e-9
    assert abs(best.tau_refined - tau0) <= 1e-4
    assert best.error_refined <= best.error_coarse


# ----------------------------------------------------------- hit density


def _profile_from_errors(errors, step, t_max):
    samples = tuple(ProfileSample(j * step, e, "ok" if e is not None
                                  else "error",
                                  None if e is not None else "x")
                    for j, e in enumerate(errors))
    return ErrorProfile(ContinuousShift(t_max, step), None, None, None,
                        samples)


def test_hit_density_hand_count():
    profile = _profile_from_errors([0.1, 0.3, 0.5], 1.0, 2.0)
    d = hit_density(profile, 0.4)
    assert d.hit_count == 2
    assert d.hit_fraction == 1.0


def test_hit_density_all_hits_is_one():
    profile = _profile_from_errors([0.1, 0.3, 0.5], 1.0, 2.0)
    d = hit_density(profile, 10.0)
    assert d.hit_fraction == 1.0
    assert d.error_count == 0


def test_hit_density_strict_inequality():
    profile = _profile_from_errors([0.5, 0.5, 0.5], 1.0, 2.0)
    assert hit_density(profile, 0.5).hit_count == 0
    assert hit_density(profile, 0.5 + 1e-9).hit_count == 2


def test_hit_density_error_samples_are_misses():
    profile = _profile_from_errors([0.1, None, 0.2], 1.0, 2.0)
    d = hit_density(profile, 1.0)
    assert d.hit_count == 1  # tau=2 sample is outside [0, t_max)
    assert d.error_count == 1
    assert d.ok_count == 1


def test_hit_density_discrete_counts_from_one():
    samples = tuple(ProfileSample(0.5 * n, 0.01, "ok") for n in range(5))
    profile = ErrorProfile(DiscreteShift(0.5, 4), None, None, None, samples)
    d = hit_density(profile, 1.0)
    assert d.hit_count == 4  # n = 1..4; n = 0 excluded
    assert d.hit_fraction == 1.0
    assert d.mode == "discrete"


@given(st.lists(st.floats(0.0, 2.0), min_size=2, max_size=40),
       st.floats(0.01, 1.0), st.floats(0.0, 1.0))
def test_hit_density_monotone_in_epsilon(errors, eps1, gap):
    profile = _profile_from_errors(errors, 0.5, 0.5 * (len(errors) - 1))
    eps2 = eps1 + gap + 1e-12
    d1, d2 = hit_density(profile, eps1), hit_density(profile, eps2)
    assert d1.hit_count <= d2.hit_count
    assert d1.hit_fraction <= d2.hit_fraction
    assert 0.0 <= d1.hit_fraction <= 1.0
    assert 0.0 <= d2.hit_fraction <= 1.0
    # the defining expression is reproducible exactly
    assert d1.hit_fraction == profile.spec.step * d1.hit_count / profile.spec.t_max


def test_hit_density_rejects_nonpositive_epsilon():
    profile = _profile_from_errors([0.1, 0.2], 1.0, 1.0)
    with pytest.raises(ValueError):
        hit_density(profile, 0.0)


# ------------------------------------------------------ search_best_shift


def test_search_best_shift_tie_breaks_to_smallest_tau():
    profile = _profile_from_errors([0.5, 0.5, 0.5], 1.0, 2.0)
    best = search_best_shift(profile)
    assert best.tau_coarse == 0.0


def test_search_best_shift_single_sample():
    profile = _profile_from_errors([0.7], 1.0, 1.0)
    with pytest.raises(Exception):
        # a single-sample continuous profile is not constructible with
        # t_max >= step; use a discrete orbit instead
        ContinuousShift(0.5, 1.0)
    samples = (ProfileSample(0.0, 0.7, "ok"),)
    discrete = ErrorProfile(DiscreteShift(1.0, 0), None, None, None, samples)
    best = search_best_shift(discrete)
    assert best.tau_coarse == 0.0 and best.error_coarse == 0.7


def test_search_best_shift_no_valid_samples():
    samples = (ProfileSample(0.0, None, "error", "x"),)
    profile = ErrorProfile(DiscreteShift(1.0, 0), None, None, None, samples)
    with pytest.raises(NoValidSampleError):
        search_best_shift(profile)


# ---------------------------------------------------------- shift specs


def test_shift_spec_validation():
    with pytest.raises(ValueError):
        ContinuousShift(-1.0, 0.1)
    with pytest.raises(ValueError):
        ContinuousShift(1.0, 2.0)
    with pytest.raises(ValueError):
        DiscreteShift(0.0, 3)
    with pytest.raises(ValueError):
        DiscreteShift(1.0, -1)
    with pytest.raises(ValueError):
        Subject.hurwitz(2.0)


def test_profile_requires_increasing_taus():
    samples = (ProfileSample(0.5, 0.1, "ok"), ProfileSample(0.25, 0.1, "ok"))
    with pytest.raises(ValueError):
        ErrorProfile(DiscreteShift(0.25, 1), None, None, None, samples)
