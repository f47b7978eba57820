r"""Partition function and thermodynamic functions at finite temperature.

The zeta-regularized partition function is

.. math:: \log Z(T) = \tfrac12\zeta'(0;2\pi T,q) - \tfrac12\log\rho\;\zeta(0;2\pi T,q),

with the invariants from :func:`zetabox.geomzeta.zeta_invariants`.  Free
energy, entropy and specific heat follow from ``F = -T log Z``,
``S = -dF/dT`` and ``c = T dS/dT``; the derivatives are taken numerically.

The module also provides the mass-deformed eta function

.. math::
    \eta(iy,q) = -e^{-\pi y B_2(q)}\big(1-e^{-2\pi yq}\big)
                 \prod_{n\ge1}\big(1-e^{-2\pi y\sqrt{n^2+q^2}}\big)^2,
    \qquad B_2(q) = q^2 - q + \tfrac16,

and the relation replacing its modular transformation.
"""
import math
from dataclasses import dataclass

from . import specfun
from .errors import ConvergenceError, DomainError, StepTooLargeError
from .geomzeta import (
    ModelParams,
    _laurent_minus_half,
    geometric_constant,
    kernel_rank,
    zeta_invariants,
)

__all__ = [
    "ThermoPoint",
    "log_partition",
    "thermo_point",
    "low_T_expansion",
    "high_T_coefficient",
    "high_T_expansion",
    "bernoulli2",
    "eta_q",
    "log_eta_q",
    "eta_q_modular_defect",
    "log_eta_q_small_y",
]


@dataclass(frozen=True)
class ThermoPoint:
    """Thermodynamic state at temperature ``T``; ``err`` bounds the derivative error."""

    T: float
    logZ: float
    F: float
    S: float
    c: float
    err: float


def _check_T(T):
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")


def log_partition(T, q, g, rho=1.0):
    r"""``log Z = zeta'(0)/2 - log(rho) zeta(0)/2`` at ``y = 2 pi T``.

    Parameters
    ----------
    T : float
        Temperature (> 0).
    q : float
        Eigenvalue shift (>= 0).
    g : Geometry
    rho : float
        Renormalization scale.
    """
    _check_T(T)
    z0, z1 = zeta_invariants(ModelParams(T=T, q=q, rho=rho), g)
    return 0.5 * z1 - 0.5 * math.log(rho) * z0


def _ridders(f, x, h, order, levels=6, shrink=1.4):
    """Derivative of given order (1 or 2) by a central-difference Ridders tableau.

    Returns the estimate and the tableau's error estimate.
    """
    def central(hh):
        if order == 1:
            return (f(x + hh) - f(x - hh)) / (2 * hh)
        return (f(x + hh) - 2 * f(x) + f(x - hh)) / (hh * hh)

    c2 = shrink * shrink
    tab = [[central(h)]]
    best, err = tab[0][0], math.inf
    hh = h
    for i in range(1, levels):
        hh /= shrink
        row = [central(hh)]
        fac = c2
        for j in range(1, i + 1):
            row.append((row[j - 1] * fac - tab[i - 1][j - 1]) / (fac - 1))
            fac *= c2
            e = max(abs(row[j] - row[j - 1]), abs(row[j] - tab[i - 1][j - 1]))
            if e <= err:
                err, best = e, row[j]
        tab.append(row)
        if abs(row[i] - tab[i - 1][i - 1]) >= 2 * err:
            break
    return best, err


def thermo_point(T, q, g, rho=1.0, h=None):
    """Free energy, entropy and specific heat at ``T``.

    ``F = -T log Z`` is differentiated numerically: ``S = -F'`` and
    ``c = -T F''`` from central differences refined by Richardson
    extrapolation over a shrinking step sequence starting at ``h``
    (default ``T/11``).  Differencing ``F`` rather than ``log Z`` keeps the
    rounding noise proportional to ``T``, which matters at low temperature
    where ``log Z ~ 1/T``.

    Raises
    ------
    StepTooLargeError
        If ``h >= T/10``.
    """
    _check_T(T)
    if h is None:
        h = T / 11
    if not 0 < h < T / 10:
        raise StepTooLargeError(f"step {h} must satisfy 0 < h < T/10 = {T / 10}")
    cache = {}

    def F(t):
        if t not in cache:
            cache[t] = -t * log_partition(t, q, g, rho)
        return cache[t]

    f0 = F(T)
    d1, e1 = _ridders(F, T, h, 1, levels=8)
    d2, e2 = _ridders(F, T, h, 2, levels=8)
    return ThermoPoint(T=T, logZ=-f0 / T, F=f0, S=-d1, c=-T * d2, err=max(e1, T * e2))


def low_T_expansion(T, q, g, rho=1.0):
    r"""``log Z`` with the exponentially small log-product dropped.

    .. math::
        \frac{A}{2T} + \mathcal{K}_q\log T
        + \frac{\log\rho}{2}\Big(\frac{R_1}{T} + \mathcal{K}_q\Big)

    where ``A`` is :func:`zetabox.geomzeta.geometric_constant` and
    ``R_1`` the residue of the geometric zeta at ``-1/2``.  The
    neglected remainder is ``O(exp(-sqrt(a_min)/T))`` with ``a_min`` the
    smallest non-zero eigenvalue.
    """
    _check_T(T)
    r1, _ = _laurent_minus_half(g.kind, g.D, g.l, float(q))
    K = kernel_rank(g, q)
    A = geometric_constant(g, q)
    return A / (2 * T) + K * math.log(T) + 0.5 * math.log(rho) * (r1 / T + K)


def high_T_coefficient(g):
    r""":math:`\mathrm{vol}\,\pi^{-(D+1)/2}\Gamma(\frac{D+1}{2})\zeta_R(D+1)`, the ``T^D`` coefficient of ``log Z``."""
    D = g.D
    if D < 1:
        raise DomainError("high-temperature law needs D >= 1")
    return (g.volume / math.pi ** ((D + 1) / 2) * math.gamma((D + 1) / 2)
            * specfun.riemann_zeta(D + 1))


def high_T_expansion(T, q, g):
    """Leading high-temperature form of ``log Z``; the remainder is ``o(T^D)``."""
    _check_T(T)
    return high_T_coefficient(g) * T ** g.D


# ---------------------------------------------------------------------------
# mass-deformed eta function
# ---------------------------------------------------------------------------

def bernoulli2(q):
    """Second Bernoulli polynomial ``q^2 - q + 1/6``."""
    return q * q - q + 1.0 / 6.0


def log_eta_q(y, q):
    r"""``log(-eta(iy, q))``; real because ``eta(iy, q) < 0`` for ``q > 0``."""
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}")
    if not q > 0:
        raise DomainError("log eta(iy, q) needs q > 0")
    terms = [-math.pi * y * bernoulli2(q), math.log(-math.expm1(-2 * math.pi * y * q))]
    n = 1
    while True:
        e = math.exp(-2 * math.pi * y * math.sqrt(n * n + q * q))
        if e < 1e-18:
            break
        terms.append(2 * math.log1p(-e))
        n += 1
    return math.fsum(terms)


def eta_q(y, q):
    """Mass-deformed eta function at ``tau = iy``; zero at ``q = 0``."""
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}")
    if q < 0:
        raise DomainError("q must be >= 0")
    if q == 0:
        return 0.0
    return -math.exp(log_eta_q(y, q))


def _defect_series(q, J):
    """sum_{j=2}^{J} C(1/2, j) zeta_R(2j-1) q^{2j}."""
    return math.fsum(float(specfun.binom_half(j)) * specfun.riemann_zeta(2 * j - 1) * q ** (2 * j)
                     for j in range(2, J + 1))


def eta_q_modular_defect(y, q, J=12, flip_last_sign=False):
    r"""Both sides of the relation between ``eta(i/y, qy)`` and ``eta(iy, q)``.

    .. math::
        \log\eta(i/y,qy) = \log\eta(iy,q) - \pi q^2y\log y
        + 2\pi y\sum_{j\ge2}\binom{1/2}{j}\zeta_R(2j-1)q^{2j}
        - \frac{2\pi}{y}\sum_{j\ge2}\binom{1/2}{j}\zeta_R(2j-1)(qy)^{2j}

    (logs of ``-eta``).  The relation follows from the exchange symmetry of
    the two-torus spectral zeta function and the expansion of the exact
    constant ``1/6 - q + (log 2 - gamma) q^2 - 2 sum_j C(1/2,j) zeta(2j-1) q^{2j}``
    against ``B_2(q)``.  ``flip_last_sign=True`` flips the sign of the last
    series, giving a variant that does not hold.

    At ``q = 0`` the common ``log(2 pi q)`` is removed and the pair reduces
    to ``(2 log eta(i/y), 2 log eta(iy) + log y)``.

    Returns
    -------
    tuple of float
        ``(lhs, rhs)``.

    Raises
    ------
    ConvergenceError
        If ``q >= 1`` or ``qy >= 1`` (the series diverge).
    """
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}")
    if q < 0:
        raise DomainError("q must be >= 0")
    if J < 2:
        raise DomainError("J must be >= 2")
    if q >= 1 or q * y >= 1:
        raise ConvergenceError("defect series need q < 1 and q*y < 1")
    if q == 0:
        lhs = 2 * specfun.log_dedekind_eta(1 / y)
        rhs = 2 * specfun.log_dedekind_eta(y) + math.log(y)
        return lhs, rhs
    lhs = log_eta_q(1 / y, q * y)
    sign = 1.0 if flip_last_sign else -1.0
    rhs = math.fsum([
        log_eta_q(y, q),
        -math.pi * q * q * y * math.log(y),
        2 * math.pi * y * _defect_series(q, J),
        sign * 2 * math.pi / y * _defect_series(q * y, J),
    ])
    return lhs, rhs


def log_eta_q_small_y(y, q, J=12):
    r"""Small-``y`` form of ``log(-eta(iy, q))`` for ``0 < q < 1``.

    .. math::
        -\frac{\pi}{6y} + \pi q^2y\log y + \pi q + \log(1-e^{-2\pi q})
        - \Big[2\pi\sum_{j\ge2}\binom{1/2}{j}\zeta_R(2j-1)q^{2j} + \pi q^2\Big]y
        + \frac{2\pi}{y}\sum_{j\ge2}\binom{1/2}{j}\zeta_R(2j-1)(qy)^{2j}

    The last series starts with ``-(pi/4) zeta(3) q^4 y^3``.  The dropped
    remainder is ``O(exp(-2 pi / y))``.
    """
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}")
    if not 0 < q < 1 or q * y >= 1:
        raise ConvergenceError("small-y form needs 0 < q < 1 and q*y < 1")
    return math.fsum([
        -math.pi / (6 * y),
        math.pi * q * q * y * math.log(y),
        math.pi * q,
        math.log(-math.expm1(-2 * math.pi * q)),
        -(2 * math.pi * _defect_series(q, J) + math.pi * q * q) * y,
        2 * math.pi / y * _defect_series(q * y, J),
    ])
