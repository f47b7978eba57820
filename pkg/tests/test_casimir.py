import mpmath
import numpy as np
import pytest

from zetabox import casimir, thermo
from zetabox.casimir import PressureQuery
from zetabox.errors import DomainError
from zetabox.geomzeta import Geometry, GeometryKind

BOX, TORUS = GeometryKind.BOX, GeometryKind.TORUS


def test_one_dimensional_constants():
    H1, K1 = casimir.boundary_constants(1)
    assert H1 == pytest.approx(1 / 12, abs=1e-13)
    assert K1 == pytest.approx(1 / 24, abs=1e-13)


@pytest.mark.parametrize("D", [2, 3])
def test_constants_by_two_routes(D):
    H, K = casimir.boundary_constants(D)
    H2, K2 = casimir.constants_by_reflection(D)
    assert H == pytest.approx(H2, abs=1e-13)
    assert K == pytest.approx(K2, abs=1e-13)


def test_frozen_constants():
    assert casimir.boundary_constants(3)[1] == pytest.approx(0.0050077092, abs=1e-10)
    assert casimir.boundary_constants(2)[1] == pytest.approx(-0.0130636, abs=1e-7)
    assert casimir.boundary_constants(3)[0] == pytest.approx(0.1332981, abs=1e-7)


def test_occupation_sum_one_dimension():
    for x in (0.3, 2.0):
        with mpmath.workdps(30):
            ref = float(mpmath.nsum(lambda k: k / mpmath.expm1(k / x), [1, mpmath.inf]))
        assert casimir.occupation_sum(x, 1, BOX) == pytest.approx(ref, rel=1e-14)
        assert casimir.occupation_sum(x, 1, TORUS) == pytest.approx(2 * ref, rel=1e-14)


@pytest.mark.parametrize("kind", [BOX, TORUS])
@pytest.mark.parametrize("D", [1, 2, 3])
def test_pressure_is_volume_derivative(kind, D):
    T, V = 0.7, 1.9

    def TlogZ(v):
        side = v ** (1 / D) if kind is BOX else v ** (1 / D) / 2
        return T * thermo.log_partition(T, 0.0, Geometry(kind, D, side))

    h = 1e-4
    fd = (TlogZ(V + h) - TlogZ(V - h)) / (2 * h)
    assert casimir.pressure(PressureQuery(T, V, D, kind)) == pytest.approx(fd, abs=1e-7)


def test_box_three_critical_point():
    rep = casimir.critical_volume(1.0, 3, BOX)
    assert rep.has_root
    assert rep.x_star == pytest.approx(0.279475019, abs=1e-8)
    assert 0.19684 < rep.x_star < 0.29613
    assert rep.bracket_lo < rep.x_star < rep.bracket_hi
    assert casimir.occupation_sum(rep.x_star, 3, BOX) == pytest.approx(rep.constant, abs=1e-9)
    # pressure changes sign at V0
    V0 = rep.V0
    assert casimir.pressure(PressureQuery(1.0, 0.9 * V0, 3)) < 0 < casimir.pressure(PressureQuery(1.0, 1.1 * V0, 3))
    # T V0^{1/D} is fixed
    assert 2.0 * rep.volume(2.0) ** (1 / 3) == pytest.approx(V0 ** (1 / 3), rel=1e-14)


def test_box_two_has_no_sign_change():
    rep = casimir.critical_volume(1.0, 2, BOX)
    assert not rep.has_root
    assert rep.constant < 0
    assert rep.x_star is None and rep.V0 is None


@pytest.mark.parametrize("D,x", [(1, 0.304008), (2, 0.257551), (3, 0.231232)])
def test_torus_roots(D, x):
    rep = casimir.critical_volume(1.0, D, TORUS)
    assert rep.has_root
    assert rep.x_star == pytest.approx(x, abs=1e-6)


@pytest.mark.parametrize("kind", [BOX, TORUS])
def test_envelopes_enclose_occupation_sum(kind):
    x0 = casimir.X0_DEFAULT
    thr = x0 / 2 if kind is BOX else x0
    for D in (1, 2, 3):
        for x in (0.1, 0.4, 0.9 * thr):
            b = casimir.envelope_bounds(x, x0, D, kind)
            assert b.lower <= b.value <= b.upper
    with pytest.raises(DomainError):
        casimir.envelope_bounds(thr, x0, 3, kind)


def test_envelope_constants_frozen():
    assert casimir.envelope_constant(1.5923, 3, BOX) == pytest.approx(17.134, abs=1e-3)
    assert casimir.envelope_constant(1.5923, 3, TORUS) == pytest.approx(3403.7, abs=0.1)


def test_young_bound():
    assert casimir.young_bound(3.0, 2.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        casimir.young_bound(0.5, 2.0, 1.0, 1.0)


def test_young_inequality_property():
    # n^a + k^b > (nk)^{ab/(a+b)} by weighted AM-GM
    rng = np.random.default_rng(21)
    n, k = rng.integers(1, 1001, size=(2, 500)).astype(float)
    a, b = 5.0 * (1.0 - rng.random(size=(2, 500)))
    lhs = np.log(n ** a + k ** b)
    rhs = a * b / (a + b) * np.log(n * k)
    assert np.all(lhs > rhs)
