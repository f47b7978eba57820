import math

import numpy as np
import pytest

from zetabox import specfun, thermo
from zetabox.errors import ConvergenceError, StepTooLargeError
from zetabox.geomzeta import Geometry, GeometryKind

BOX, TORUS = GeometryKind.BOX, GeometryKind.TORUS
POINT = Geometry(BOX, 0)


def _oscillator(T, w):
    x = w / T
    logZ = -math.log(2 * math.sinh(x / 2))
    S = x / 2 / math.tanh(x / 2) + logZ
    c = (x / 2) ** 2 / math.sinh(x / 2) ** 2
    return logZ, S, c


@pytest.mark.parametrize("T,w", [(0.3, 1.0), (1.0, 0.5), (2.5, 2.0)])
def test_point_geometry_is_a_harmonic_oscillator(T, w):
    p = thermo.thermo_point(T, w * w, POINT)
    logZ, S, c = _oscillator(T, w)
    assert p.logZ == pytest.approx(logZ, abs=1e-13)
    assert p.S == pytest.approx(S, abs=1e-9)
    assert p.c == pytest.approx(c, abs=1e-9)
    assert p.F == pytest.approx(-T * logZ, abs=1e-13)


def test_rho_enters_through_zeta_at_zero():
    g = Geometry(TORUS, 2, 1.0)
    base = thermo.log_partition(0.4, 0.0, g)
    # zeta(0) = -1 on the massless torus, so log Z shifts by log(rho)/2
    assert thermo.log_partition(0.4, 0.0, g, rho=3.0) == pytest.approx(base + 0.5 * math.log(3.0), abs=1e-13)


def test_step_guard():
    with pytest.raises(StepTooLargeError):
        thermo.thermo_point(1.0, 0.0, Geometry(BOX, 1), h=0.2)


def test_low_temperature_expansion():
    for kind in (BOX, TORUS):
        g = Geometry(kind, 2, 1.0)
        T = 0.02
        assert thermo.log_partition(T, 0.0, g) == pytest.approx(thermo.low_T_expansion(T, 0.0, g),
                                                                 abs=1e-12)


def test_torus_low_temperature_entropy():
    p = thermo.thermo_point(0.02, 0.0, Geometry(TORUS, 3, 1.0))
    assert p.S - (math.log(0.02) + 1) == pytest.approx(0.0, abs=1e-10)
    assert p.c == pytest.approx(1.0, abs=1e-10)


def test_high_temperature_torus():
    g = Geometry(TORUS, 3, 1.0)
    assert thermo.log_partition(20.0, 0.0, g) / thermo.high_T_expansion(20.0, 0.0, g) == \
        pytest.approx(1.0, abs=1e-4)
    # D = 3 coefficient is vol pi^2 / 90
    assert thermo.high_T_coefficient(Geometry(BOX, 3, 1.0)) == pytest.approx(math.pi ** 2 / 90, rel=1e-14)


def test_eta_q_small_q_limit():
    q = 1e-6
    for y in (0.5, 1.0):
        ratio = thermo.eta_q(y, q) / (-2 * math.pi * y * q)
        assert ratio == pytest.approx(specfun.dedekind_eta(y) ** 2, abs=1e-4)
    assert thermo.eta_q(1.0, 0.0) == 0.0


@pytest.mark.parametrize("y,q", [(1.5, 0.1), (0.8, 0.3), (2.0, 0.05)])
def test_eta_q_defect_relation(y, q):
    lhs, rhs = thermo.eta_q_modular_defect(y, q, J=12)
    assert abs(lhs - rhs) < 1e-8
    lhs2, rhs2 = thermo.eta_q_modular_defect(y, q, J=12, flip_last_sign=True)
    assert abs(lhs2 - rhs2) > 1e-6


def test_eta_q_defect_reduces_to_dedekind():
    lhs, rhs = thermo.eta_q_modular_defect(0.7, 0.0)
    assert lhs == pytest.approx(rhs, abs=1e-13)


def test_eta_q_defect_divergence_guard():
    with pytest.raises(ConvergenceError):
        thermo.eta_q_modular_defect(2.0, 0.6)


def test_small_y_form():
    # q and y kept small enough for the q-series truncation and the e^{-2 pi/y} remainder
    rng = np.random.default_rng(9)
    for _ in range(5):
        y, q = rng.uniform(0.05, 0.2), rng.uniform(0.05, 0.5)
        assert thermo.log_eta_q_small_y(y, q, J=30) == pytest.approx(thermo.log_eta_q(y, q), abs=1e-10)
