import math

import mpmath
import numpy as np
import pytest

from zetabox import lattice
from zetabox.errors import DomainError, PoleError
from zetabox.lattice import LatticeDomain, QuadraticForm

# values obtained from independent high-precision routes and frozen here
XI2_MINUS_HALF = 0.026127255739
XI3_MINUS_HALF = -0.010015418448
HAT2_MINUS_HALF = -0.2288243
HAT3_MINUS_HALF = -0.2665963


def _spd(rng, D):
    Q, _ = np.linalg.qr(rng.normal(size=(D, D)))
    A = Q @ np.diag(rng.uniform(0.6, 2.5, size=D)) @ Q.T
    return 0.5 * (A + A.T)


def test_xi_one_dimension_matches_mpmath():
    assert abs(lattice.xi(1.3 + 0.4j, 1).value - complex(mpmath.zeta(2 * mpmath.mpc(1.3, 0.4)))) <= 1e-13
    with mpmath.workdps(30):
        s, c = mpmath.mpc(2.2, -1), mpmath.mpf("0.7")
        ref = complex(mpmath.nsum(lambda k: (k * k + c) ** (-s), [1, mpmath.inf]))
    assert abs(lattice.xi(2.2 - 1j, 1, 0.7).value - ref) <= 1e-13


def test_xi_continuation_to_riemann_values():
    assert lattice.xi(-0.5, 1).value == pytest.approx(-1 / 12, abs=1e-12)
    assert lattice.xi(-1.5, 1).value == pytest.approx(float(mpmath.zeta(-3)), abs=1e-12)


def test_constants_at_minus_half():
    assert lattice.xi(-0.5, 2).value == pytest.approx(XI2_MINUS_HALF, abs=1e-11)
    assert lattice.xi(-0.5, 3).value == pytest.approx(XI3_MINUS_HALF, abs=1e-11)
    assert lattice.epstein_homogeneous(-0.5, np.eye(1)).value == pytest.approx(-1 / 6, abs=1e-12)
    assert lattice.epstein_homogeneous(-0.5, np.eye(2)).value == pytest.approx(HAT2_MINUS_HALF, abs=1e-7)
    assert lattice.epstein_homogeneous(-0.5, np.eye(3)).value == pytest.approx(HAT3_MINUS_HALF, abs=1e-7)


def _theta_epstein(s, D):
    # Mellin transform of theta^D - 1 split at t = 1
    with mpmath.workdps(30):
        s = mpmath.mpf(s)
        half = mpmath.mpf(D) / 2

        def th(t):
            return mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi * t)) ** D - 1

        I = mpmath.quad(lambda t: (t ** (s - 1) + t ** (half - s - 1)) * th(t), [1, mpmath.inf])
        return float((I - 1 / s - 1 / (half - s)) * mpmath.pi ** s / mpmath.gamma(s))


def test_hat_zeta_against_theta_integral():
    for D in (2, 3):
        ref = _theta_epstein(-0.5, D)
        assert lattice.epstein_homogeneous(-0.5, np.eye(D)).value == pytest.approx(ref, abs=1e-12)


def test_xi_residue_quarter_circle():
    assert lattice.xi_residue(2, 0.0, 1.0) == pytest.approx(math.pi / 4, rel=1e-14)
    with pytest.raises(PoleError):
        lattice.xi(1.0, 2)


def test_massive_agrees_with_oracle_and_error_bound():
    rng = np.random.default_rng(11)
    for D in (1, 2, 3):
        A = _spd(rng, D)
        x = rng.uniform(0, 0.9, size=D)
        s = complex(D / 2 + 1.5, rng.uniform(-2, 2))
        fast = lattice.epstein_massive(s, A, x=x, shift=0.8)
        ref = lattice.oracle_sum(QuadraticForm(A, x=x, shift=0.8), LatticeDomain.FULL, s,
                                 {1: 20000, 2: 200, 3: 30}[D])
        assert abs(fast.value - ref.value) <= fast.abs_error + ref.abs_error


def test_massive_at_negative_integers():
    rng = np.random.default_rng(12)
    for D in (1, 2, 3):
        A = _spd(rng, D)
        for n in (1, 2):
            v = lattice.epstein_massive(-n, A, shift=0.6).value
            assert v == pytest.approx(lattice.epstein_negative_integers(n, A, 0.6), abs=1e-9)


def test_log_det_derivative_one_dimension():
    for q in (0.3, 1.0, 2.0):
        got = lattice.epstein_log_det_derivative(np.eye(1), q * q)
        assert got == pytest.approx(-2 * math.log(2 * math.sinh(math.pi * q)), abs=1e-12)


def test_log_det_derivative_matches_finite_difference():
    A = np.diag([1.0, 2.0, 0.7])
    h = 1e-5
    fd = (lattice.epstein_massive(h, A, shift=0.9).value
          - lattice.epstein_massive(-h, A, shift=0.9).value) / (2 * h)
    assert lattice.epstein_log_det_derivative(A, 0.9) == pytest.approx(fd, abs=1e-8)


def test_reflection_residual_small():
    for A in (np.eye(2), np.diag([1.0, 2.0, 3.0])):
        assert lattice.reflection_residual(0.8 + 0.5j, A) < 1e-9


def test_offset_keeps_origin():
    # with an offset the n = 0 term is finite and belongs to the sum
    A = np.eye(1)
    s = 2.0
    ref = float(mpmath.nsum(lambda n: ((n + 0.25) ** 2) ** (-s), [-mpmath.inf, mpmath.inf]))
    assert lattice.epstein_homogeneous(s, A, x=[0.25]).value == pytest.approx(ref, rel=1e-12)


def test_form_validation():
    with pytest.raises(DomainError):
        QuadraticForm([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(DomainError):
        QuadraticForm(np.eye(2), x=[1.0, 0.0])


def test_laurent_finite_part_of_riemann_like_sum():
    # xi_1(s) = zeta_R(2s): finite part at s = 1/2 is Euler's gamma
    data = lattice.xi_laurent(1, 0.0, 0.5)
    assert data.residue == pytest.approx(0.5, rel=1e-14)
    assert complex(data.finite_part).real == pytest.approx(float(mpmath.euler), abs=1e-7)


def test_values_at_zero():
    for D in (1, 2, 3):
        assert complex(lattice.xi(0.0, D).value).real == pytest.approx((-1) ** D / 2 ** D, abs=1e-12)
    v = lattice.epstein_massive(0.0, np.eye(2), shift=0.25).value
    assert complex(v).real == pytest.approx(-math.pi * 0.25, abs=1e-12)
    assert complex(lattice.epstein_massive(0.0, np.eye(3), shift=1.0).value).real == pytest.approx(0.0, abs=1e-12)
