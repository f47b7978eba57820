r"""Radiation pressure in a box or torus and its sign change.

For the massless field, ``P = d(T log Z)/dV`` at fixed ``T`` takes the form

.. math::
    P_{\text{box}} = \frac{\pi}{D}V^{-\frac{D+1}{D}}\big(f_D(x)-K_D\big),\quad
    x=\frac{TV^{1/D}}{\pi},\qquad
    P_{\text{torus}} = \frac{2\pi}{D}V^{-\frac{D+1}{D}}\big(g_D(x)-H_D\big),\quad
    x=\frac{TV^{1/D}}{2\pi},

with occupation sums :math:`f_D(x)=\sum_{k\in\mathbb{N}^D}|k|/(e^{|k|/x}-1)`
(positive orthant) and :math:`g_D(x)=\sum_{k\ne0}|k|/(e^{|k|/x}-1)` (full
lattice), and constants :math:`K_D=-\xi_D(-1/2)/2`, :math:`H_D=-\hat\zeta_D(-1/2)/2`.
``V`` is the volume of the spatial section: ``l^D`` for the box and
``(2l)^D`` for the torus, whose circles have length ``2l``.

Where the constant is positive the pressure is negative (attractive) for
small volumes and positive for large ones; the crossing sits at a fixed
value ``x*`` of the scaled variable, so ``T V0^{1/D}`` is constant.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from . import lattice, specfun
from ._enum import INT, POS, square_counts
from .errors import DomainError
from .geomzeta import GeometryKind

__all__ = [
    "PressureQuery",
    "CriticalVolumeReport",
    "EnvelopeBounds",
    "pressure",
    "occupation_sum",
    "boundary_constants",
    "constants_by_reflection",
    "young_bound",
    "envelope_constant",
    "envelope_constant_closed_bound",
    "envelope_bounds",
    "critical_volume",
    "X0_DEFAULT",
]

X0_DEFAULT = 1.5923
# terms with |k|/x beyond this are below 1e-26 relative to the leading one
_OCCUPATION_CUTOFF = 60.0


def _kind(kind):
    return GeometryKind(kind)


@dataclass(frozen=True)
class PressureQuery:
    T: float
    V: float
    D: int
    kind: GeometryKind = GeometryKind.BOX

    def __post_init__(self):
        object.__setattr__(self, "kind", _kind(self.kind))
        if not self.T > 0:
            raise DomainError("T must be positive")
        if not self.V > 0:
            raise DomainError("V must be positive")
        if int(self.D) != self.D or self.D < 1:
            raise DomainError("D must be a positive integer")


@dataclass(frozen=True)
class EnvelopeBounds:
    lower: float
    value: float
    upper: float


@dataclass(frozen=True)
class CriticalVolumeReport:
    """Outcome of the sign-change search in the scaled variable.

    ``has_root`` is False when the constant is not positive; the remaining
    root fields are then None.
    """

    D: int
    kind: GeometryKind
    T: float
    constant: float
    has_root: bool
    x_star: Optional[float] = None
    bracket_lo: Optional[float] = None
    bracket_hi: Optional[float] = None
    iterations: int = 0

    @property
    def V0(self):
        """Critical volume at the report's temperature."""
        return self.volume(self.T)

    def volume(self, T):
        """Critical volume ``V0`` at temperature ``T``."""
        if not self.has_root:
            return None
        if not T > 0:
            raise DomainError("T must be positive")
        scale = math.pi if self.kind is GeometryKind.BOX else 2 * math.pi
        return (scale * self.x_star / T) ** self.D


def _scale(kind):
    return math.pi if kind is GeometryKind.BOX else 2 * math.pi


def occupation_sum(x, D, kind=GeometryKind.BOX):
    r"""``f_D(x)`` (box, positive orthant) or ``g_D(x)`` (torus, ``k != 0``).

    Terms are grouped by ``|k|^2`` and truncated once ``|k|/x`` exceeds 60.
    """
    kind = _kind(kind)
    if not x > 0:
        raise DomainError("x must be positive")
    N = int(math.floor((_OCCUPATION_CUTOFF * x) ** 2))
    if kind is GeometryKind.BOX:
        N = max(N, D)
        counts = square_counts(N, D, POS)
    else:
        N = max(N, 1)
        counts = square_counts(N, D, INT)
        counts[0] = 0
    m = np.nonzero(counts)[0]
    r = np.sqrt(m.astype(float))
    u = r / x
    return math.fsum((counts[m] * r * np.exp(-u) / -np.expm1(-u)).tolist())


def pressure(qry):
    """Pressure at temperature ``qry.T`` and volume ``qry.V`` (massless field)."""
    kind, D = qry.kind, qry.D
    H, K = boundary_constants(D)
    const = K if kind is GeometryKind.BOX else H
    x = qry.T * qry.V ** (1.0 / D) / _scale(kind)
    pref = _scale(kind) / D * qry.V ** (-(D + 1) / D)
    return pref * (occupation_sum(x, D, kind) - const)


_CONSTANTS = {}


def boundary_constants(D):
    """``(H_D, K_D) = (-hat_zeta_D(-1/2)/2, -xi_D(-1/2)/2)`` from the lattice continuations."""
    if int(D) != D or D < 1:
        raise DomainError("D must be a positive integer")
    D = int(D)
    if D not in _CONSTANTS:
        H = -0.5 * float(np.real(lattice.epstein_homogeneous(-0.5, np.eye(D)).value))
        K = -0.5 * float(np.real(lattice.xi(-0.5, D).value))
        _CONSTANTS[D] = (H, K)
    return _CONSTANTS[D]


def constants_by_reflection(D, radius=None):
    r"""``(H_D, K_D)`` from convergent sums only.

    ``hat_zeta_D(-1/2)`` follows from the reflection formula and the
    convergent value at ``(D+1)/2``; the orthant value from the
    decomposition of the punctured lattice by sign pattern,
    :math:`\hat\zeta_D = \sum_{j=1}^{D}\binom{D}{j}2^j\xi_j`, with
    :math:`\xi_1(-1/2) = \zeta_R(-1)`.
    """
    if int(D) != D or D < 1:
        raise DomainError("D must be a positive integer")
    D = int(D)
    hat = {}
    for j in range(1, D + 1):
        s = (j + 1) / 2
        z = lattice.epstein_homogeneous(s, np.eye(j)).value
        hat[j] = float(np.real(math.pi ** (-1 - j / 2) * specfun.gamma(s)
                               / specfun.gamma(-0.5) * z))
    xi = {1: specfun.riemann_zeta(-1.0)}
    for j in range(2, D + 1):
        rest = math.fsum(math.comb(j, i) * 2 ** i * xi[i] for i in range(1, j))
        xi[j] = (hat[j] - rest) / 2 ** j
    return -0.5 * hat[D], -0.5 * xi[D]


def young_bound(x, y, a, b):
    r"""Check :math:`e^{\frac{ab}{a+1}y}(e^{\frac{ab}{1+a}x}-1) < e^{xy}-1` in log space.

    Raises
    ------
    DomainError
        Unless ``x, y, a, b > 0``, ``x > ab`` and ``y >= b``.
    """
    if not (x > 0 and y > 0 and a > 0 and b > 0):
        raise DomainError("young_bound needs positive arguments")
    if not (x > a * b and y >= b):
        raise DomainError("young_bound needs x > ab and y >= b")
    c = a * b / (1 + a)
    lhs = c * y + math.log(math.expm1(c * x))
    xy = x * y
    rhs = xy + math.log(-math.expm1(-xy)) if xy > 1 else math.log(math.expm1(xy))
    return lhs < rhs


def _envelope_params(kind, x0):
    """(b, x threshold) for the envelope in the given geometry."""
    if kind is GeometryKind.BOX:
        return 2.0, x0 / 2
    return 1.0, x0


def envelope_constant(x0, D, kind=GeometryKind.BOX):
    r"""Constant of the upper envelope.

    Torus: :math:`C_D(x_0)=\sum_{k\ne0,\mathbb{1}}|k|e^{-|k|/(1+x_0)}` over
    :math:`\mathbb{Z}^D`.  Box: :math:`L_D(x_0)=\sum_{k\ne\mathbb{1}}|k|e^{-2|k|/(1+x_0)}`
    over :math:`\mathbb{N}^D`.  Here :math:`\mathbb{1}=(1,\dots,1)`.
    """
    kind = _kind(kind)
    if not x0 > 0:
        raise DomainError("x0 must be positive")
    b, _ = _envelope_params(kind, x0)
    rate = b / (1 + x0)
    N = int(math.ceil((_OCCUPATION_CUTOFF / rate) ** 2)) + D
    counts = square_counts(N, D, POS if kind is GeometryKind.BOX else INT).astype(float)
    counts[0] = 0
    counts[D] -= 1
    m = np.nonzero(counts)[0]
    r = np.sqrt(m.astype(float))
    return math.fsum((counts[m] * r * np.exp(-rate * r)).tolist())


def envelope_constant_closed_bound(x0, D):
    r""":math:`2^{(D-1)/2}e^{-4D/(1+x_0)}(2-e^{-2/(1+x_0)})^D/(1-e^{-2/(1+x_0)})^{2D}`.

    Offered as a closed-form estimate of the box constant; it is not
    guaranteed to dominate :func:`envelope_constant`.
    """
    u = math.exp(-2 / (1 + x0))
    return 2 ** ((D - 1) / 2) * math.exp(-4 * D / (1 + x0)) * (2 - u) ** D / (1 - u) ** (2 * D)


def _bose(u):
    """1/(e^u - 1) without overflow."""
    return math.exp(-u) / -math.expm1(-u)


def _lower_envelope(x, D):
    r = math.sqrt(D)
    return r * _bose(r / x)


def _upper_envelope(x, D, kind, x0, const):
    b, _ = _envelope_params(kind, x0)
    return _lower_envelope(x, D) + const * _bose(b / ((1 + x0) * x))


def envelope_bounds(x, x0, D, kind=GeometryKind.BOX, const=None):
    """Lower envelope, occupation sum and upper envelope at ``x``.

    Parameters
    ----------
    const : float, optional
        Upper-envelope constant; defaults to :func:`envelope_constant`.

    Raises
    ------
    DomainError
        If ``x`` is not below ``x0`` (torus) or ``x0/2`` (box).
    """
    kind = _kind(kind)
    _, thr = _envelope_params(kind, x0)
    if not 0 < x < thr:
        raise DomainError(f"envelope valid only for 0 < x < {thr}")
    if const is None:
        const = envelope_constant(x0, D, kind)
    return EnvelopeBounds(_lower_envelope(x, D), occupation_sum(x, D, kind),
                          _upper_envelope(x, D, kind, x0, const))


def _envelope_root(fun, target, hi):
    """Root of an increasing ``fun(x) = target`` on (0, hi), or None."""
    lo = 1e-3
    if fun(lo) >= target or fun(hi) <= target:
        return None
    return optimize.brentq(lambda x: fun(x) - target, lo, hi, xtol=1e-14, rtol=1e-14)


def critical_volume(T, D, kind=GeometryKind.BOX, x0=X0_DEFAULT, xtol=1e-10):
    """Root ``x*`` of ``f_D(x) = K_D`` (box) or ``g_D(x) = H_D`` (torus).

    The bracket comes from the envelopes: the lower envelope equals the
    constant at the upper end, the upper envelope at the lower end.  If the
    upper envelope gives no root inside its validity range the bracket is
    widened geometrically towards zero.  Bisection then runs to
    ``|dx| < xtol``.  The root does not depend on ``T``; the temperature
    only fixes the reported critical volume ``V0``.

    Returns
    -------
    CriticalVolumeReport
        With ``has_root=False`` when the constant is not positive.
    """
    kind = _kind(kind)
    if not T > 0:
        raise DomainError("T must be positive")
    H, K = boundary_constants(D)
    const = K if kind is GeometryKind.BOX else H
    if const <= 0:
        return CriticalVolumeReport(D=D, kind=kind, T=T, constant=const, has_root=False)
    hi = math.sqrt(D) / math.log1p(math.sqrt(D) / const)
    _, thr = _envelope_params(kind, x0)
    c_env = envelope_constant(x0, D, kind)
    lo = _envelope_root(lambda x: _upper_envelope(x, D, kind, x0, c_env), const, min(thr, hi))
    if lo is None:
        lo = hi / 2
    while occupation_sum(lo, D, kind) >= const:
        lo /= 2

    def f(x):
        return occupation_sum(x, D, kind) - const
    if not (f(lo) < 0 < f(hi)):
        raise DomainError("envelope bracket does not enclose a sign change")
    a, b = lo, hi
    it = 0
    while b - a >= xtol:
        mid = 0.5 * (a + b)
        if f(mid) < 0:
            a = mid
        else:
            b = mid
        it += 1
    return CriticalVolumeReport(D=D, kind=kind, T=T, constant=const, has_root=True,
                                x_star=0.5 * (a + b), bracket_lo=lo, bracket_hi=hi,
                                iterations=it)
