import math

import mpmath
import numpy as np
import pytest

from zetabox import geomzeta, lattice
from zetabox.errors import DomainError, PoleError
from zetabox.geomzeta import Geometry, GeometryKind, ModelParams
from zetabox.lattice import LatticeDomain, QuadraticForm

BOX, TORUS = GeometryKind.BOX, GeometryKind.TORUS


def test_geometry_validation():
    with pytest.raises(DomainError):
        Geometry(TORUS, 0)
    with pytest.raises(DomainError):
        Geometry(BOX, 2, -1.0)
    assert Geometry(TORUS, 3, 0.5).volume == pytest.approx(1.0)
    assert Geometry(BOX, 3, 0.5).volume == pytest.approx(0.125)


def test_kernel_rank():
    assert geomzeta.kernel_rank(Geometry(TORUS, 2), 0.0) == 1
    assert geomzeta.kernel_rank(Geometry(TORUS, 2), 0.5) == 0
    assert geomzeta.kernel_rank(Geometry(BOX, 2), 0.0) == 0
    assert geomzeta.kernel_rank(Geometry(BOX, 0), 0.0) == 1


def test_geometric_zeta_direct_sum_one_dimension():
    l, q, s = 1.3, 0.4, 1.7 + 0.6j
    # binomial expansion in q/a against Riemann zeta values, valid for q < a
    with mpmath.workdps(40):
        ss = mpmath.mpc(s.real, s.imag)
        a = (mpmath.pi / l) ** 2
        box = complex(a ** (-ss) * mpmath.nsum(
            lambda j: mpmath.binomial(-ss, j) * (q / a) ** j * mpmath.zeta(2 * ss + 2 * j), [0, mpmath.inf]))
        tor = complex(2 * a ** (-ss) * mpmath.zeta(2 * ss))
    assert abs(geomzeta.geometric_zeta(s, Geometry(BOX, 1, l), q).value - box) <= 1e-13
    assert abs(geomzeta.geometric_zeta(s, Geometry(TORUS, 1, l), 0.0).value - tor) <= 1e-13


@pytest.mark.parametrize("kind", [BOX, TORUS])
def test_spectral_zeta_matches_oracle(kind):
    rng = np.random.default_rng(5)
    for D in (1, 2):
        y, l, q = rng.uniform(0.5, 3), rng.uniform(0.7, 1.6), rng.uniform(0.1, 2)
        s = complex(D / 2 + 2, rng.uniform(-2, 2))
        fast = geomzeta.spectral_zeta(s, ModelParams(T=y / (2 * math.pi), q=q), Geometry(kind, D, l))
        form = QuadraticForm(np.diag([y * y] + [(math.pi / l) ** 2] * D), shift=q)
        dom = ((LatticeDomain.FULL,) + (LatticeDomain.ORTHANT,) * D if kind is BOX
               else LatticeDomain.FULL)
        ref = lattice.oracle_sum(form, dom, s, {2: 300, 3: 40}[D + 1])
        assert abs(fast.value - ref.value) <= fast.abs_error + ref.abs_error


def test_harmonic_oscillator_log_det():
    # point geometry: sum_n (y^2 n^2 + q)^{-s}, derivative -2 log(2 sinh(pi sqrt(q)/y))
    for y, q in ((0.7, 0.5), (2.0, 3.0)):
        z0, z1 = geomzeta.zeta_invariants(ModelParams(T=y / (2 * math.pi), q=q), Geometry(BOX, 0))
        assert z0 == pytest.approx(0.0, abs=1e-14)
        assert z1 == pytest.approx(-2 * math.log(2 * math.sinh(math.pi * math.sqrt(q) / y)), abs=1e-12)


def test_invariants_against_finite_differences():
    g = Geometry(BOX, 3, 0.8)
    p = ModelParams(T=0.3, q=1.0)
    z0, z1 = geomzeta.zeta_invariants(p, g)
    h = 1e-5
    fd = (geomzeta.spectral_zeta(h, p, g).value - geomzeta.spectral_zeta(-h, p, g).value) / (2 * h)
    assert z0 == pytest.approx(geomzeta.spectral_zeta(0.0, p, g).value, abs=1e-9)
    assert z1 == pytest.approx(fd, abs=1e-6)


def test_homogeneous_zeta_at_zero():
    for D in (1, 2, 3):
        z0, _ = geomzeta.zeta_invariants(ModelParams(T=0.4), Geometry(TORUS, D, 1.0))
        assert z0 == pytest.approx(-1.0, abs=1e-12)
        z0, _ = geomzeta.zeta_invariants(ModelParams(T=0.4), Geometry(BOX, D, 1.0))
        assert z0 == pytest.approx(0.0, abs=1e-12)


def test_leading_pole_residue_two_torus():
    # sum over Z^2 \ 0 of (y^2 n^2 + (pi/l)^2 k^2)^{-s} has residue pi / sqrt(det) = l / y at s = 1
    y, l = 1.7, 1.2
    p = ModelParams(T=y / (2 * math.pi))
    g = Geometry(TORUS, 1, l)
    data = geomzeta.spectral_residues(g, p, 0)
    assert data.s0 == pytest.approx(1.0)
    assert complex(data.residue).real == pytest.approx(l / y, rel=1e-13)
    with pytest.raises(PoleError):
        geomzeta.spectral_zeta(1.0, p, g)


def test_geometric_constant_finite_difference_in_temperature():
    # zeta'(0) ~ (2 pi / y) A + ... at large 1/y; compare slopes in 1/y at low temperature
    g = Geometry(BOX, 2, 1.0)
    A = geomzeta.geometric_constant(g, 0.0)
    ys = (0.2, 0.1)
    vals = [geomzeta.zeta_invariants(ModelParams(T=y / (2 * math.pi)), g)[1] for y in ys]
    slope = (vals[1] - vals[0]) / (2 * math.pi / ys[1] - 2 * math.pi / ys[0])
    assert slope == pytest.approx(A, abs=1e-12)
