import numpy as np
import pytest

from schromax import space
from schromax.errors import DomainError, PoleError

import oracles


def test_from_config_and_kinds():
    p = space.SpaceParams.from_config({"kind": "h3"})
    assert (p.m_v, p.m_z, p.n, p.Q) == (0, 2, 3, 2.0)
    p = space.SpaceParams.from_config(
        {"kind": "damek_ricci", "m_v": 4, "m_z": 3})
    assert (p.n, p.Q) == (8, 5.0)
    assert p.time_window == pytest.approx(4.0 / 25.0)


def test_invalid_dimensions_rejected():
    with pytest.raises(DomainError):
        space.damek_ricci(3, 1)  # odd m_v
    with pytest.raises(DomainError):
        space.damek_ricci(0, 1)
    with pytest.raises(DomainError):
        space.damek_ricci(2, 0)
    with pytest.raises(DomainError):
        space.SpaceParams.from_config({"kind": "flat"})


def test_density_frozen_values(geometries):
    by_dims = {(p.m_v, p.m_z): p for p in geometries}
    for (mv, mz, s), want in oracles.DENSITY.items():
        got = float(space.density(by_dims[(mv, mz)], s))
        assert got == pytest.approx(want, rel=1e-14)


def test_density_h3_is_sinh_squared(h3):
    s = np.linspace(0.01, 12.0, 97)
    assert np.max(np.abs(space.density(h3, s) - np.sinh(s) ** 2)) <= 1e-10


def test_log_density_derivative_matches_finite_differences(geometries):
    s = np.linspace(0.2, 8.0, 40)
    h = 1e-6
    for p in geometries:
        want = (np.log(space.density(p, s + h))
                - np.log(space.density(p, s - h))) / (2.0 * h)
        got = space.log_density_derivative(p, s)
        assert np.max(np.abs(got - want)) <= 1e-7


def test_c_function_frozen_values(geometries):
    by_dims = {(p.m_v, p.m_z): p for p in geometries}
    for (mv, mz, lam), want in oracles.C_FUNCTION.items():
        got = complex(space.c_function(by_dims[(mv, mz)], np.array([lam]))[0])
        assert abs(got - want) <= 1e-12 * abs(want)
    for (mv, mz, lam), want in oracles.INV_C_SQUARED.items():
        got = float(space.plancherel_density(
            by_dims[(mv, mz)], np.array([lam]))[0])
        assert got == pytest.approx(want, rel=1e-12)


def test_plancherel_density_h3_is_lambda_squared(h3):
    lam = np.geomspace(0.05, 80.0, 60)
    got = space.plancherel_density(h3, lam)
    assert np.max(np.abs(got / lam ** 2 - 1.0)) <= 1e-11


def test_plancherel_density_growth_shape(geometries):
    # 1/|c|^2 is comparable to lam^2 (1+lam)^{n-3} on the whole half-line:
    # the quotient stays within a geometry-dependent constant band
    lam = np.geomspace(0.02, 300.0, 120)
    for p in geometries:
        ratio = space.plancherel_density(p, lam) / (
            lam ** 2 * (1.0 + lam) ** (p.n - 3))
        assert ratio.min() > 0.0
        assert ratio.max() / ratio.min() <= 100.0


def test_c_function_pole_at_zero(dr21):
    with pytest.raises(PoleError):
        space.c_function(dr21, np.array([0.0]))


def test_c_function_conjugate_symmetry(dr43):
    lam = np.array([0.3, 1.0, 7.0, 30.0])
    a = space.c_function(dr43, lam)
    b = space.c_function(dr43, -lam)
    assert np.max(np.abs(b - np.conj(a))) <= 1e-12 * np.max(np.abs(a))


def test_low_frequency_constant(geometries):
    for p in geometries:
        b = space.bn_constant(p, 1.5)
        assert b == max(1.5, 5.0)  # fitted onset of the cosine envelope
        with pytest.raises(DomainError):
            space.bn_constant(p, 9.0)
