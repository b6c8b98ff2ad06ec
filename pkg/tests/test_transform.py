import math

import numpy as np
import pytest

from schromax import space, transform
from schromax.errors import AccuracyError, DomainError

import oracles


def test_gaussian_profile_values():
    g = transform.gaussian_profile()
    lam = np.array([0.3, 1.0, 2.5])
    assert np.max(np.abs(g.eval(lam) - np.exp(-lam ** 2))) <= 1e-15
    assert g.decay_class == transform.SCHWARTZ


def test_band_profile_support_and_validation():
    b = transform.band_profile(4.0, 8.0)
    vals = b.eval(np.array([2.0, 6.0, 10.0]))
    assert vals[0] == 0.0 and vals[2] == 0.0
    assert vals[1] == pytest.approx(1.0)
    assert b.band == (4.0, 8.0)
    with pytest.raises(DomainError):
        transform.band_profile(2.0, 1.0)


def test_forward_h3_matches_sine_transform(h3):
    # independent route: on the hyperbolic space the kernel reduces to
    # sin(lam s)/(lam sinh s), so fhat(lam) = int f sin(lam s) sinh(s)/lam ds;
    # dense trapezoid, no phase panels
    s = np.linspace(0.0, 12.0, 240001)
    f_fn = lambda x: np.exp(-x ** 2)
    prof = transform.RadialProfile(np.linspace(0.0, 12.0, 601),
                                   f_fn(np.linspace(0.0, 12.0, 601)), fn=f_fn)
    lam = np.array([0.3, 1.0, 2.2, 5.0])
    got = transform.forward_sft(h3, prof, lam).values
    for j, lv in enumerate(lam):
        want = np.trapezoid(f_fn(s) * np.sin(lv * s) * np.sinh(s) / lv, s)
        assert got[j].real == pytest.approx(want, rel=1e-9)
        assert abs(got[j].imag) <= 1e-13


def test_forward_linearity(dr21):
    s_grid = np.linspace(0.0, 10.0, 301)
    fa = lambda x: np.exp(-x ** 2)
    fb = lambda x: x ** 2 * np.exp(-0.7 * x ** 2)
    lam = np.linspace(0.1, 8.0, 40)
    a = transform.forward_sft(
        dr21, transform.RadialProfile(s_grid, fa(s_grid), fn=fa), lam)
    b = transform.forward_sft(
        dr21, transform.RadialProfile(s_grid, fb(s_grid), fn=fb), lam)
    comb_fn = lambda x: 2.0 * fa(x) - 0.5 * fb(x)
    comb = transform.forward_sft(
        dr21, transform.RadialProfile(s_grid, comb_fn(s_grid), fn=comb_fn), lam)
    defect = np.max(np.abs(comb.values - 2.0 * a.values + 0.5 * b.values))
    assert defect <= 1e-10 * np.max(np.abs(comb.values))


def test_decay_guard_rejects_undecayed_profile(dr21):
    s_grid = np.linspace(0.0, 6.0, 200)
    flat = transform.RadialProfile(s_grid, np.ones_like(s_grid))
    with pytest.raises(AccuracyError):
        transform.forward_sft(dr21, flat)


def test_h3_gaussian_inverse_closed_form(h3):
    g = transform.gaussian_profile()
    s_grid = np.array([0.0, 0.7, 2.0])
    f = transform.inverse_sft(h3, g, s_grid)
    for sval, want in oracles.H3_GAUSSIAN_INVERSE.items():
        got = float(np.real(f.values[list(s_grid).index(sval)]))
        assert got == pytest.approx(want, rel=1e-8)


def test_inversion_constants_land_on_closed_values(geometries):
    # calibrated against one reference profile, these match the analytic
    # normalizations 2/pi, 1/pi, 4/pi of the three geometries
    want = {(0, 2): 2.0 / math.pi, (2, 1): 1.0 / math.pi,
            (4, 3): 4.0 / math.pi}
    for p in geometries:
        C, defect = transform.calibrate_plancherel(p)
        assert C == pytest.approx(want[(p.m_v, p.m_z)], rel=1e-7)
        assert defect <= 1e-8
        assert transform.plancherel_constant(p) == C


def test_roundtrip_spectral_direction(dr21):
    g = transform.gaussian_profile()
    s_grid = np.linspace(0.0, 10.0, 201)
    f = transform.inverse_sft(dr21, g, s_grid)
    lam = np.linspace(0.05, 10.0, 120)
    back = transform.forward_sft(dr21, f, lam)
    assert np.max(np.abs(back.values - np.exp(-lam ** 2))) <= 1e-7


def test_sobolev_norm_frozen_values(h3):
    g = transform.gaussian_profile()
    got = transform.sobolev_norm(h3, g, transform.SobolevIndex(0.25))
    assert got == pytest.approx(oracles.SOBOLEV_H3_GAUSSIAN_QUARTER, rel=1e-8)
    got = transform.sobolev_norm(h3, g, transform.SobolevIndex(0.0))
    assert got == pytest.approx(oracles.L2_H3_GAUSSIAN, rel=1e-8)


def test_sobolev_weight_forms(dr43):
    lam = np.array([0.5, 2.0, 9.0])
    plain = transform.sobolev_weight(dr43, lam, transform.SobolevIndex(0.3))
    assert np.allclose(plain, (lam ** 2 + 0.25 * dr43.Q ** 2) ** 0.3,
                       rtol=1e-14)
    shifted = transform.sobolev_weight(dr43, lam,
                                       transform.SobolevIndex(0.3, shifted=True))
    assert np.allclose(shifted, (1.0 + lam ** 2) ** 0.3, rtol=1e-14)
    assert not np.allclose(plain, shifted)


def test_sobolev_norm_monotone_in_alpha(dr21):
    g = transform.gaussian_profile()
    norms = [transform.sobolev_norm(dr21, g, transform.SobolevIndex(a))
             for a in (0.0, 0.25, 0.5, 1.0)]
    assert all(a < b for a, b in zip(norms, norms[1:]))


def test_multiplier_is_unitary(geometries):
    g = transform.gaussian_profile()
    spec = transform.PropagatorSpec()
    for p in geometries:
        t = 0.4 * p.time_window
        moved = transform.apply_multiplier(p, g, t, spec)
        assert np.max(np.abs(np.abs(moved.values) - g.values.real)) <= 1e-14


def test_propagator_at_zero_time_is_identity(dr21):
    g = transform.gaussian_profile()
    s_grid = np.linspace(0.0, 6.0, 61)
    base = transform.inverse_sft(dr21, g, s_grid)
    spec = transform.PropagatorSpec()
    snap = transform.propagate(dr21, g, 0.0, spec, s_grid)
    assert np.max(np.abs(snap.values - base.values)) <= 1e-12
    batch = transform.propagate_batch(dr21, g, np.array([0.0, 0.1]), spec,
                                      s_grid)
    assert batch.shape == (s_grid.size, 2)
    assert np.max(np.abs(batch[:, 0] - base.values)) <= 1e-12


def test_effective_lambda_max_rules(dr21):
    band = transform.band_profile(4.0, 8.0)
    assert transform.effective_lambda_max(dr21, band) == 8.0
    g = transform.gaussian_profile()
    assert transform.effective_lambda_max(dr21, g) >= 4.0
    # raw tabulated data with a synthetic noise floor cannot certify a tail
    lam = np.linspace(0.1, 20.0, 200)
    noisy = np.exp(-lam ** 2) + 1e-13
    raw = transform.SpectralProfile(lam, noisy, transform.RAW)
    with pytest.raises(AccuracyError):
        transform.effective_lambda_max(dr21, raw)
    # the same data under a declared decay class truncates at the grid end
    declared = transform.SpectralProfile(lam, noisy, transform.SCHWARTZ)
    assert transform.effective_lambda_max(dr21, declared) == 20.0
