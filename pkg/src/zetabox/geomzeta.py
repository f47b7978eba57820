r"""Spectral zeta functions of a scalar field on :math:`S^1_{1/T}\times M`.

``M`` is either a cubic box of edge ``l`` with Dirichlet conditions, with
eigenvalues :math:`(\pi/l)^2|k|^2+q`, :math:`k\in\mathbb{N}^D`, or a flat
torus with circles of length ``2l``, eigenvalues :math:`(\pi/l)^2|k|^2+q`,
:math:`k\in\mathbb{Z}^D`.  The thermal circle adds :math:`y^2n^2`,
:math:`n\in\mathbb{Z}`, with :math:`y=2\pi T`.

The spectral zeta function is evaluated as

.. math::
    \zeta(s;y,q) = \frac{\sqrt\pi}{y}\frac{\Gamma(s-\frac12)}{\Gamma(s)}G(s-\tfrac12)
    + 2\mathcal{K}_q\,y^{-2s}\zeta_R(2s)
    + \frac{4\pi^s}{\Gamma(s)}y^{-s-\frac12}\sum_{n\ge1}\sideset{}{'}\sum_k
      \Big(\frac{n}{\sqrt{a_k}}\Big)^{s-\frac12}K_{s-\frac12}\Big(\frac{2\pi n\sqrt{a_k}}{y}\Big)

where ``G`` is the geometric zeta function over the non-zero eigenvalues
:math:`a_k` and :math:`\mathcal{K}_q` is the number of zero modes (one for
the massless torus and the massless point, zero otherwise).
"""
import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from . import lattice, specfun
from ._enum import INT, POS, as_scalar, square_counts
from .errors import DomainError, NotAPoleError, PoleError
from .lattice import LaurentData, Representation, ZetaResult

__all__ = [
    "GeometryKind",
    "Geometry",
    "ModelParams",
    "geometric_zeta",
    "geometric_laurent",
    "spectral_zeta",
    "spectral_residues",
    "spectral_pole",
    "zeta_invariants",
    "geometric_constant",
    "log_product",
    "kernel_rank",
]

_LOG_PRODUCT_CUTOFF = -math.log(1e-18)
_BESSEL_MARGIN = 46.0


class GeometryKind(enum.Enum):
    BOX = "box"
    TORUS = "torus"


@dataclass(frozen=True)
class Geometry:
    """Spatial section ``M``.

    Parameters
    ----------
    kind : GeometryKind
    D : int
        Dimension; ``D = 0`` (a point) is allowed for the box only.
    l : float
        Edge length; the torus circles have length ``2l``.
    """

    kind: GeometryKind
    D: int
    l: float = 1.0

    def __post_init__(self):
        kind = GeometryKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if int(self.D) != self.D or self.D < 0:
            raise DomainError("D must be a non-negative integer")
        if kind is GeometryKind.TORUS and self.D < 1:
            raise DomainError("torus needs D >= 1")
        if not self.l > 0:
            raise DomainError("edge length must be positive")
        object.__setattr__(self, "D", int(self.D))
        object.__setattr__(self, "l", float(self.l))

    @property
    def volume(self):
        """Spatial volume: ``l^D`` for the box, ``(2l)^D`` for the torus."""
        side = self.l if self.kind is GeometryKind.BOX else 2 * self.l
        return side ** self.D

    @property
    def lattice_shift_scale(self):
        """Factor turning the eigenvalue shift ``q`` into the lattice shift."""
        return (self.l / math.pi) ** 2


@dataclass(frozen=True)
class ModelParams:
    """Temperature ``T``, eigenvalue shift ``q >= 0`` and renormalization scale ``rho``."""

    T: float
    q: float = 0.0
    rho: float = 1.0

    def __post_init__(self):
        if not self.T >= 0:
            raise DomainError("T must be >= 0")
        if not self.q >= 0:
            raise DomainError("q must be >= 0")
        if not self.rho > 0:
            raise DomainError("rho must be positive")

    @property
    def y(self):
        return 2 * math.pi * self.T


def kernel_rank(g, q):
    """Number of zero eigenvalues of ``M``."""
    if q > 0:
        return 0
    if g.kind is GeometryKind.TORUS or g.D == 0:
        return 1
    return 0


# ---------------------------------------------------------------------------
# geometric zeta
# ---------------------------------------------------------------------------

def _lattice_zeta(s, g, q):
    """Lattice-normalized zeta Z(s) with G(s) = (l/pi)^{2s} Z(s) (D >= 1)."""
    sigma = q * g.lattice_shift_scale
    if g.kind is GeometryKind.BOX:
        return lattice.xi(s, g.D, sigma)
    if q > 0:
        return lattice.epstein_massive(s, np.eye(g.D), shift=sigma)
    return lattice.epstein_homogeneous(s, np.eye(g.D))


def _lattice_residue(s0, g, q):
    sigma = q * g.lattice_shift_scale
    if g.kind is GeometryKind.BOX:
        return lattice.xi_residue(g.D, sigma, s0)
    p = lattice._half_integer_index(s0)
    if p is None or p > g.D or (g.D - p) % 2:
        return 0.0
    return lattice.epstein_residue(g.D, 1.0, sigma, (g.D - p) // 2)


def _lattice_at_nonpositive_integer(m, g, q):
    sigma = q * g.lattice_shift_scale
    if g.kind is GeometryKind.BOX:
        return lattice.xi_at_nonpositive_integer(g.D, sigma, m)
    return lattice.epstein_negative_integers(m, np.eye(g.D), sigma)


def _geometric_residue(s0, g, q):
    """Residue of G at s0."""
    if g.D == 0:
        return 0.0
    return (g.l / math.pi) ** (2 * s0) * _lattice_residue(s0, g, q)


def _geometric_at_nonpositive_integer(m, g, q):
    if g.D == 0:
        return q ** m if q > 0 else 0.0
    return (g.l / math.pi) ** (-2 * m) * _lattice_at_nonpositive_integer(m, g, q)


def geometric_zeta(s, g, q=0.0):
    r"""Zeta function of ``M`` over its non-zero eigenvalues.

    .. math:: G(s) = \sum_{a_k\ne0} a_k^{-s} = (l/\pi)^{2s}Z(s),

    with ``Z`` the orthant sum (box) or the full/punctured Epstein sum
    (torus) at lattice shift :math:`q l^2/\pi^2`.

    Returns
    -------
    ZetaResult

    Raises
    ------
    PoleError
    """
    if q < 0:
        raise DomainError("q must be >= 0")
    s = lattice._number(s)
    if g.D == 0:
        v = (complex(q) ** (-s)) if q > 0 else 0.0
        return ZetaResult(as_scalar(complex(v)), 0.0, 1, Representation.CLOSED_FORM)
    z = _lattice_zeta(s, g, q)
    scale = math.exp(2 * math.log(g.l / math.pi) * s.real) if not isinstance(s, complex) \
        else complex(np.exp(2 * math.log(g.l / math.pi) * s))
    return ZetaResult(as_scalar(complex(scale * z.value)), abs(scale) * z.abs_error,
                      z.terms_used, z.representation)


def geometric_laurent(g, q, s0=-0.5):
    """Laurent data of :func:`geometric_zeta` at ``s0``."""
    res = _geometric_residue(s0, g, q)
    if g.D == 0:
        return LaurentData(s0, 0.0, q ** (-s0) if q > 0 else 0.0,
                           -math.log(q) * q ** (-s0) if q > 0 else 0.0)
    return lattice.laurent_at(lambda t: geometric_zeta(t, g, q).value, s0, res)


@functools.lru_cache(maxsize=256)
def _laurent_minus_half(kind, D, l, q):
    d = geometric_laurent(Geometry(kind, D, l), q, -0.5)
    return float(np.real(d.residue)), float(np.real(d.finite_part))


def geometric_constant(g, q=0.0):
    r"""Coefficient of :math:`2\pi/y` in :math:`\zeta'(0;y,q)`.

    With :math:`R_1, R_0` the residue and finite part of the lattice zeta
    ``Z`` at :math:`s=-1/2`,

    .. math:: A = -\frac{\pi}{l}\Big[R_0 + (2 - 2\log 2\pi + 2\log l)R_1\Big].

    For ``D = 0`` this is :math:`-\sqrt q`.  For the box with ``q = 0`` it
    reduces to :math:`-(\pi/l)\xi_D(-1/2)`, for the massless torus to
    :math:`-(\pi/l)\hat\zeta_D(-1/2)`.
    """
    r1, r0 = _laurent_minus_half(g.kind, g.D, g.l, float(q))
    return -(r0 + 2 * (1 - math.log(2)) * r1)


# ---------------------------------------------------------------------------
# thermal sums over the spectrum
# ---------------------------------------------------------------------------

def _spectrum_levels(g, q, amax):
    """Distinct non-zero eigenvalues up to ``amax`` and their multiplicities."""
    if g.D == 0:
        if q > 0 and q <= amax:
            return np.array([float(q)]), np.array([1.0])
        return np.zeros(0), np.zeros(0)
    c = (math.pi / g.l) ** 2
    if amax < q:
        return np.zeros(0), np.zeros(0)
    N = int(math.floor((amax - q) / c))
    counts = square_counts(N, g.D, POS if g.kind is GeometryKind.BOX else INT)
    m = np.nonzero(counts)[0]
    a = c * m + q
    mult = counts[m].astype(float)
    keep = a > 0
    return a[keep], mult[keep]


def log_product(y, g, q=0.0):
    r""":math:`\sum_{a_k\ne0}\log(1-e^{-(2\pi/y)\sqrt{a_k}})`, truncated at :math:`e^{-x}<10^{-18}`."""
    if not y > 0:
        raise DomainError("y must be positive")
    amax = (_LOG_PRODUCT_CUTOFF * y / (2 * math.pi)) ** 2
    a, mult = _spectrum_levels(g, q, amax)
    if a.size == 0:
        return 0.0
    x = 2 * math.pi / y * np.sqrt(a)
    return math.fsum((mult * np.log1p(-np.exp(-x))).tolist())


def _bessel_double_sum(s, y, g, q):
    """sum_{n>=1} sum'_k (n/sqrt a_k)^{s-1/2} K_{s-1/2}(2 pi n sqrt(a_k)/y) and an error estimate."""
    nu = s - 0.5
    a_min = q if (g.D == 0 or q > 0 and g.kind is GeometryKind.TORUS) else \
        (math.pi / g.l) ** 2 * (g.D if g.kind is GeometryKind.BOX else 1) + q
    zmin = 2 * math.pi * math.sqrt(a_min) / y if a_min > 0 else 0.0
    Z = max(zmin, 2.0) + _BESSEL_MARGIN + 2.0 * abs(nu)
    amax = (Z * y / (2 * math.pi)) ** 2
    a, mult = _spectrum_levels(g, q, amax)
    if a.size == 0:
        return 0.0, 0.0, 0
    sa = np.sqrt(a)
    nmax = np.floor(Z * y / (2 * math.pi * sa)).astype(int)
    keep = nmax >= 1
    sa, mult, nmax = sa[keep], mult[keep], nmax[keep]
    if sa.size == 0:
        return 0.0, 0.0, 0
    rep = np.repeat(np.arange(sa.size), nmax)
    offsets = np.cumsum(nmax) - nmax
    n = (np.arange(rep.size) - offsets[rep] + 1).astype(float)
    z = 2 * math.pi * n * sa[rep] / y
    w = mult[rep] * np.exp(nu * np.log(n / sa[rep]))
    total, err = lattice._bessel_sum(nu, z, w)
    return total, err, int(z.size)


def _spectral_raw(s, y, g, q):
    """Three-term representation at a point where every piece is finite."""
    rg = specfun.rgamma(s)
    value = 0.0
    err = 0.0
    terms = 0
    gz = geometric_zeta(s - 0.5, g, q)
    f = math.sqrt(math.pi) / y * specfun.gamma(s - 0.5) * rg
    value += f * gz.value
    err += abs(f) * gz.abs_error
    if kernel_rank(g, q):
        kz = 2 * complex(y) ** (-2 * s) * specfun.riemann_zeta(2 * s)
        value += kz
        err += 1e-15 * abs(kz)
    if rg != 0:
        bs, be, terms = _bessel_double_sum(s, y, g, q)
        pref = 4 * complex(math.pi) ** s * rg * complex(y) ** (-s - 0.5)
        value += pref * bs
        err += abs(pref) * be
    return complex(value), err, terms


def spectral_pole(s0, y, g, q):
    """Residue of ``zeta(s;y,q)`` at ``s0`` (0 if ``s0`` is regular)."""
    p = lattice._half_integer_index(s0)
    if p is None or p > g.D + 1:
        return 0.0
    s0 = p / 2
    c = math.sqrt(math.pi) / y
    res = 0.0
    if p % 2 == 1 and p <= 1:
        # Gamma(s - 1/2) pole at s0 - 1/2 = -j
        j = (1 - p) // 2
        res += c * (-1) ** j / math.factorial(j) * _geometric_at_nonpositive_integer(j, g, q) \
            * specfun.rgamma(s0)
    else:
        rG = _geometric_residue(s0 - 0.5, g, q)
        if rG != 0:
            res += c * specfun.gamma(s0 - 0.5) * specfun.rgamma(s0) * rG
    if p == 1 and kernel_rank(g, q):
        res += 1.0 / y
    return res


def spectral_zeta(s, p, g):
    r"""Spectral zeta function :math:`\zeta(s;y,q)=\sum_{n\in\mathbb{Z}}\sum_k(y^2n^2+a_k)^{-s}`.

    Parameters
    ----------
    s : complex
    p : ModelParams
        Supplies ``y = 2 pi T`` (must be positive) and ``q``.
    g : Geometry

    Returns
    -------
    ZetaResult

    Raises
    ------
    PoleError
        At a pole; the residue is available from :func:`spectral_residues`.
    """
    y = p.y
    if not y > 0:
        raise DomainError("y = 2 pi T must be positive")
    s = lattice._number(s)
    idx = lattice._half_integer_index(s)
    singular = idx is not None and idx <= g.D + 1
    if singular:
        s0 = idx / 2
        if spectral_pole(s0, y, g, p.q) != 0:
            raise PoleError(f"spectral zeta has a pole at s={s0}", point=s0)

        def f(t):
            v, e, _ = _spectral_raw(t, y, g, p.q)
            return v, e
        value, err = lattice._symmetric_limit(f, s0)
        terms = 0
    else:
        value, err, terms = _spectral_raw(s, y, g, p.q)
    return ZetaResult(as_scalar(complex(value)), float(err), terms, Representation.BESSEL_SERIES)


def spectral_residues(g, p, pole_index):
    r"""Laurent data at ``s = (D+1)/2 - pole_index``.

    The residue is closed form; the finite part is extrapolated.

    Raises
    ------
    NotAPoleError
        When the residue vanishes there.
    """
    if pole_index < 0 or int(pole_index) != pole_index:
        raise DomainError("pole_index must be a non-negative integer")
    y = p.y
    if not y > 0:
        raise DomainError("y = 2 pi T must be positive")
    s0 = (g.D + 1) / 2 - pole_index
    res = spectral_pole(s0, y, g, p.q)
    if res == 0:
        raise NotAPoleError(f"s = {s0} is not a pole")

    def f(t):
        return _spectral_raw(t, y, g, p.q)[0]
    return lattice.laurent_at(f, s0, res)


def zeta_invariants(p, g):
    r"""Return :math:`(\zeta(0;y,q),\ \zeta'(0;y,q))`.

    .. math::
        \zeta(0) = -\frac{2\pi}{y}R_1^G - \mathcal{K}_q,\qquad
        \zeta'(0) = \frac{2\pi}{y}A + \mathcal{K}_q\,2\log\frac{y}{2\pi}
                    - 2\sum_{a_k\ne0}\log\big(1-e^{-(2\pi/y)\sqrt{a_k}}\big)

    with :math:`R_1^G` the residue of the geometric zeta at ``-1/2`` and
    ``A`` from :func:`geometric_constant`.
    """
    y = p.y
    if not y > 0:
        raise DomainError("y = 2 pi T must be positive")
    r1, _ = _laurent_minus_half(g.kind, g.D, g.l, float(p.q))
    K = kernel_rank(g, p.q)
    z0 = -2 * math.pi / y * r1 - K
    z1 = (2 * math.pi / y * geometric_constant(g, p.q)
          + K * 2 * math.log(y / (2 * math.pi))
          - 2 * log_product(y, g, p.q))
    return z0, z1
