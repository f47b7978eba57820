r"""Multidimensional quadratic zeta functions.

Three families of lattice sums are covered, all written with an *additive
shift* (the constant added to the quadratic form, i.e. the square of the
mass-like parameter):

* :func:`xi` -- positive-orthant sums
  :math:`\xi_D(s)=\sum_{n\in\mathbb{N}^D}(|n|^2+\text{shift})^{-s}`,
  continued by splitting off one coordinate and Poisson-summing it;
* :func:`epstein_massive` -- full-lattice Epstein sums with a positive
  shift, via the Chowla--Selberg series over the dual lattice;
* :func:`epstein_homogeneous` -- punctured-lattice sums with zero shift
  (optionally with a linear term or a lattice offset), via repeated
  dimensional reduction.

Every fast representation can be checked against :func:`oracle_sum`, a
truncated direct summation with an integral-comparison tail bound.
"""
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate

from . import specfun
from ._enum import INT, POS, as_scalar, box_points, box_size, fsum_complex, shell, square_counts
from .errors import (
    ConvergenceError,
    DomainError,
    NotAPoleError,
    PoleError,
    UnsupportedCaseError,
)

__all__ = [
    "QuadraticForm",
    "LatticeDomain",
    "Representation",
    "ZetaResult",
    "LaurentData",
    "oracle_sum",
    "xi",
    "xi_residue",
    "xi_at_nonpositive_integer",
    "epstein_massive",
    "epstein_homogeneous",
    "epstein_residue",
    "reflection_residual",
    "epstein_log_det_derivative",
    "epstein_negative_integers",
    "xi_laurent",
    "epstein_laurent",
    "laurent_at",
]

# exponent margin for truncating Bessel series: terms below e^{-Z} of the
# leading one are dropped
_BESSEL_MARGIN = 46.0
_SQRT_PI = math.sqrt(math.pi)
# rounding allowance per assembled term
_ROUND = 4e-16


class LatticeDomain(enum.Enum):
    ORTHANT = "orthant"      # n_i >= 1
    FULL = "full"            # Z^D
    PUNCTURED = "punctured"  # Z^D without the origin


class Representation(enum.Enum):
    ORACLE = "oracle"
    BESSEL_SERIES = "bessel_series"
    REFLECTION = "reflection"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class ZetaResult:
    value: complex
    abs_error: float
    terms_used: int
    representation: Representation

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True)
class LaurentData:
    """Laurent data ``residue/(s-s0) + finite_part + linear*(s-s0) + ...``."""

    s0: complex
    residue: complex
    finite_part: complex
    linear: Optional[complex] = None


class QuadraticForm:
    """Data of the sum ``sum_n [(n+x)^T A (n+x) + b^T n + shift]^{-s}``.

    Parameters
    ----------
    A : array_like, shape (D, D)
        Symmetric positive-definite matrix.
    b : array_like, shape (D,), optional
    x : array_like, shape (D,), optional
        Offsets with components in ``[0, 1)``.
    shift : float
        Non-negative additive constant.
    """

    def __init__(self, A, b=None, x=None, shift=0.0):
        A = np.atleast_2d(np.asarray(A, dtype=float))
        if A.shape[0] != A.shape[1]:
            raise DomainError("A must be square")
        if not np.allclose(A, A.T, rtol=0, atol=1e-12 * max(1.0, np.abs(A).max())):
            raise DomainError("A must be symmetric")
        eig = np.linalg.eigvalsh(A)
        if eig[0] <= 0:
            raise DomainError("A must be positive definite")
        D = A.shape[0]
        b = np.zeros(D) if b is None else np.asarray(b, dtype=float).reshape(D)
        x = np.zeros(D) if x is None else np.asarray(x, dtype=float).reshape(D)
        if np.any(x < 0) or np.any(x >= 1):
            raise DomainError("offset components must lie in [0, 1)")
        if shift < 0:
            raise DomainError("shift must be >= 0")
        self.A = 0.5 * (A + A.T)
        self.b = b
        self.x = x
        self.shift = float(shift)
        self.lambda_min = float(eig[0])

    @property
    def dim(self):
        return self.A.shape[0]

    def __call__(self, n):
        n = np.asarray(n, dtype=float)
        u = n + self.x
        return np.einsum("...i,ij,...j->...", u, self.A, u) + n @ self.b + self.shift

    def __repr__(self):
        return (f"QuadraticForm(A={self.A.tolist()}, b={self.b.tolist()}, "
                f"x={self.x.tolist()}, shift={self.shift})")


def _number(s):
    s = complex(s)
    return s.real if s.imag == 0.0 else s


def _half_integer_index(s, tol=1e-13):
    """Return p if s == p/2 for an integer p, else None."""
    s = complex(s)
    if abs(s.imag) > tol:
        return None
    p = round(2 * s.real)
    if abs(2 * s.real - p) <= 2 * tol:
        return int(p)
    return None


def _symmetric_limit(f, s0, eps=1e-3):
    """Richardson-extrapolated limit of (f(s0+e)+f(s0-e))/2 as e -> 0.

    ``f`` returns ``(value, err)``.  Simple-pole terms cancel in the
    symmetric mean, so this yields the value at a removable singularity or
    the finite part at a simple pole.
    """
    errs = []

    def g(e):
        a, ea = f(s0 + e)
        b, eb = f(s0 - e)
        errs.append(max(ea, eb))
        return 0.5 * (a + b)

    g1, g2, g3 = g(eps), g(eps / 2), g(eps / 4)
    r1 = (4 * g2 - g1) / 3
    r2 = (4 * g3 - g2) / 3
    r = (16 * r2 - r1) / 15
    err = abs(r2 - r1) / 15 + 2 * max(errs) / eps * 1e-3
    return r, err


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def _oracle_tail(form, domain, sigma, radius):
    D = form.dim
    lam = form.lambda_min
    delta = 1.0 if np.any(form.x != 0) else 0.0
    bnorm = float(np.linalg.norm(form.b)) * math.sqrt(D)

    def v(t):
        r = max(t - delta, 0.0)
        return lam * r * r - bnorm * t + form.shift

    R = float(radius)
    if v(R) <= 0 or 2 * lam * (R - delta) - bnorm <= 0:
        raise ConvergenceError(f"radius {radius} too small for a certified tail bound")
    if domain is LatticeDomain.ORTHANT:
        def count(t):
            return D * t ** (D - 1)
    else:
        def count(t):
            return 2 * D * (2 * t + 1) ** (D - 1)
    # sum_{m>R} c(m) v(m)^-sigma <= int_R^inf c(t+1) v(t)^-sigma dt
    val, qerr = integrate.quad(lambda t: count(t + 1) * v(t) ** (-sigma), R, np.inf,
                               epsabs=0.0, epsrel=1e-10, limit=200)
    return val + qerr


_ORACLE_BLOCK = 2_000_000


def _oracle_terms(form, pts, s):
    vals = form(pts)
    if np.any(vals <= 0):
        raise DomainError("quadratic form is not positive on the summation domain")
    return np.exp(-s * np.log(vals))


def oracle_sum(form, domain, s, radius, tol=None):
    """Truncated direct lattice sum with a rigorous tail bound.

    Sums every lattice point of max-norm at most ``radius`` as one
    correctly rounded sum (shell by shell, with correctly rounded shell
    totals, when the box exceeds two million points).  The tail is bounded by the
    integral comparison test using the smallest eigenvalue of ``A``.

    Parameters
    ----------
    form : QuadraticForm
    domain : LatticeDomain or sequence of LatticeDomain
        A sequence gives one domain (ORTHANT or FULL) per coordinate.
    s : complex
        Requires ``Re(s) > D/2 + 1/2``.
    radius : int
    tol : float, optional
        If given, raise :class:`ConvergenceError` when the tail bound exceeds it.

    Returns
    -------
    ZetaResult
    """
    s = _number(s)
    D = form.dim
    sigma = complex(s).real
    if sigma <= D / 2 + 0.5:
        raise DomainError(f"oracle needs Re(s) > D/2 + 1/2 = {D / 2 + 0.5}")
    if radius < 1:
        raise DomainError("radius must be >= 1")
    if domain is LatticeDomain.FULL and form.shift == 0 and not np.any(form.x) and not np.any(form.b):
        raise DomainError("the full lattice includes the zero of a homogeneous form; use PUNCTURED")
    if isinstance(domain, LatticeDomain):
        kinds = (POS if domain is LatticeDomain.ORTHANT else INT,) * D
    else:
        if len(domain) != D or any(d is LatticeDomain.PUNCTURED for d in domain):
            raise DomainError("per-coordinate domains must be ORTHANT or FULL, one per axis")
        kinds = tuple(POS if d is LatticeDomain.ORTHANT else INT for d in domain)
    if box_size(radius, kinds) <= _ORACLE_BLOCK:
        # one correctly rounded sum over the whole box
        pts = box_points(radius, kinds)
        if domain is LatticeDomain.PUNCTURED:
            pts = pts[np.any(pts != 0, axis=1)]
        value = fsum_complex(_oracle_terms(form, pts, s))
        n_terms = len(pts)
    else:
        totals = []
        n_terms = 0
        start = 1 if POS in kinds or domain is LatticeDomain.PUNCTURED else 0
        for m in range(start, radius + 1):
            pts = shell(m, kinds)
            totals.append(fsum_complex(_oracle_terms(form, pts, s)))
            n_terms += len(pts)
        value = fsum_complex(np.array(totals))
    tail = _oracle_tail(form, domain, sigma, radius)
    if tol is not None and tail > tol:
        raise ConvergenceError(f"oracle tail bound {tail:.3e} exceeds tol {tol:.3e} at radius {radius}")
    rounding = 1e-16 * abs(value) * math.log2(max(n_terms, 2))
    return ZetaResult(as_scalar(value), tail + rounding, n_terms, Representation.ORACLE)


# ---------------------------------------------------------------------------
# Bessel-series plumbing
# ---------------------------------------------------------------------------

def _bessel_sum(nu, z, weight):
    """Sum of weight * K_nu(z) with a truncation estimate from the last band."""
    if z.size == 0:
        return 0.0, 0.0
    terms = weight * specfun.bessel_k(nu, z)
    total = fsum_complex(terms)
    zmax = z.max()
    band = np.abs(terms[z > zmax - 6.0]).sum()
    mag = np.abs(terms).sum()
    # K_nu of complex order loses about 1e-13 relative accuracy to cancellation
    rel = 1e-13 if isinstance(nu, complex) else 1e-15
    err = band * math.exp(-6.0) / (1 - math.exp(-6.0)) + rel * mag
    return total, err


def _cutoff(nu, zmin):
    return max(zmin, 2.0) + _BESSEL_MARGIN + 2.0 * abs(nu)


# ---------------------------------------------------------------------------
# positive-orthant sums
# ---------------------------------------------------------------------------

def xi_residue(D, shift, s0):
    r"""Closed-form residue of :math:`\xi_D(s)` at ``s0`` (zero if regular).

    Poles sit at half-integers; the residue comes from the small-time
    expansion ``2^{-D}(sqrt(pi/t) - 1)^D e^{-shift t}`` of the orthant heat
    trace.
    """
    p = _half_integer_index(s0)
    if p is None:
        return 0.0
    s0 = p / 2
    total = 0.0
    for j in range(0, D + 1):
        if (j - p) % 2 or j < p:
            continue
        i = (j - p) // 2
        total += (math.comb(D, j) * (-1) ** (D - j) * math.pi ** (j / 2)
                  * (-shift) ** i / math.factorial(i))
    return specfun.rgamma(s0) * total / 2 ** D


def xi_at_nonpositive_integer(D, shift, m):
    r"""Exact :math:`\xi_D(-m)` for integer ``m >= 0``."""
    total = 0.0
    for j in range(0, D + 1, 2):
        i = m + j // 2
        total += (math.comb(D, j) * (-1) ** (D - j) * math.pi ** (j / 2)
                  * (-shift) ** i / math.factorial(i))
    return (-1) ** m * math.factorial(m) * total / 2 ** D


def _xi_raw(s, D, shift):
    if D == 0:
        if shift > 0:
            return complex(shift) ** (-s) if isinstance(s, complex) else shift ** (-s), 0.0
        return 0.0, 0.0
    if D == 1 and shift == 0:
        v = specfun.riemann_zeta(2 * s)
        return v, 1e-15 * abs(v)
    p = _half_integer_index(s)
    if p is not None and p <= D:
        if xi_residue(D, shift, p / 2) != 0:
            raise PoleError(f"xi_{D} has a pole at s={p / 2}", point=p / 2)
        return _symmetric_limit(lambda t: _xi_raw(t, D, shift), p / 2)

    v1, e1 = _xi_raw(s, D - 1, shift)
    v2, e2 = _xi_raw(s - 0.5, D - 1, shift)
    rg = specfun.rgamma(s)
    g = specfun.gamma(s - 0.5)
    value = -0.5 * v1 + 0.5 * _SQRT_PI * g * rg * v2
    err = 0.5 * e1 + 0.5 * _SQRT_PI * abs(g * rg) * e2
    err += _ROUND * (abs(v1) + _SQRT_PI * abs(g * rg * v2))

    if rg != 0:
        nu = s - 0.5
        zmin = 2 * math.pi * math.sqrt((D - 1) + shift)
        Z = _cutoff(nu, zmin)
        amax = (Z / (2 * math.pi)) ** 2
        mmax = int(math.floor(amax - shift)) if amax > shift else 0
        counts = square_counts(max(mmax, 0), D - 1, POS)
        ms = np.nonzero(counts)[0]
        zs, ws = [], []
        for m in ms:
            a = m + shift
            if a <= 0:
                continue
            sa = math.sqrt(a)
            nmax = int(Z / (2 * math.pi * sa))
            if nmax < 1:
                continue
            n = np.arange(1, nmax + 1, dtype=float)
            zs.append(2 * math.pi * n * sa)
            ws.append(counts[m] * np.exp(nu * np.log(n / sa)))
        if zs:
            z = np.concatenate(zs)
            w = np.concatenate(ws)
            bs, be = _bessel_sum(nu, z, w)
            pref = 2 * math.pi ** s * rg
            value += pref * bs
            err += abs(pref) * be + _ROUND * abs(pref * bs)
    return value, err


def xi(s, D, shift=0.0):
    r"""Positive-orthant zeta :math:`\xi_D(s)=\sum_{n\in\mathbb{N}^D}(|n|^2+\text{shift})^{-s}`.

    Continued to the whole plane by the one-coordinate Poisson split

    .. math::
        \xi_D(s) = -\tfrac12\xi_{D-1}(s)
        + \tfrac{\sqrt\pi}{2}\frac{\Gamma(s-\frac12)}{\Gamma(s)}\xi_{D-1}(s-\tfrac12)
        + \frac{2\pi^s}{\Gamma(s)}\sum_{n\ge1,\,k\in\mathbb{N}^{D-1}}
          \Big(\frac{n}{\sqrt{|k|^2+\text{shift}}}\Big)^{s-\frac12}
          K_{s-\frac12}\big(2\pi n\sqrt{|k|^2+\text{shift}}\big),

    with :math:`\xi_0 = \text{shift}^{-s}` (empty when the shift is zero)
    and :math:`\xi_1(s) = \zeta_R(2s)` in the homogeneous case.

    Raises
    ------
    PoleError
        At the half-integer poles (those with non-zero :func:`xi_residue`).
    """
    if D < 1:
        raise DomainError("xi needs D >= 1")
    if shift < 0:
        raise DomainError("shift must be >= 0")
    s = _number(s)
    value, err = _xi_raw(s, D, float(shift))
    return ZetaResult(as_scalar(complex(value)), float(err), 0, Representation.BESSEL_SERIES)


# ---------------------------------------------------------------------------
# Epstein sums
# ---------------------------------------------------------------------------

def epstein_residue(D, det, c_eff, j):
    r"""Residue at ``s = D/2 - j`` of a full-lattice Epstein sum whose form
    has constant term ``c_eff`` after completing the square."""
    return (math.pi ** (D / 2) / math.sqrt(det) * (-c_eff) ** j / math.factorial(j)
            * specfun.rgamma(D / 2 - j))


def _epstein_pole_check(s, D, det, c_eff):
    p = _half_integer_index(s)
    if p is None or p > D or (D - p) % 2:
        return
    j = (D - p) // 2
    if epstein_residue(D, det, c_eff, j) != 0:
        raise PoleError(f"pole at s={p / 2}", point=p / 2)


def _shell_limit(lam, Z, zfac):
    """Largest max-norm shell that can still hold a term with z <= Z."""
    # z >= zfac * sqrt(lam) * m for shell m
    return int(math.ceil(Z / (zfac * math.sqrt(lam)))) + 1


def epstein_massive(s, A, x=None, shift=1.0):
    r"""Full-lattice Epstein sum :math:`\sum_{n\in\mathbb{Z}^D}((n+x)^TA(n+x)+\text{shift})^{-s}`.

    Chowla--Selberg form, ``q = sqrt(shift) > 0``:

    .. math::
        \frac{\pi^{D/2}}{\sqrt{\det A}}\frac{\Gamma(s-\frac D2)}{\Gamma(s)}q^{D-2s}
        + \frac{2\pi^s}{\sqrt{\det A}\,\Gamma(s)}\sum_{n\ne0}\cos(2\pi n\cdot x)
          \Big(\frac{\sqrt{n^TA^{-1}n}}{q}\Big)^{s-\frac D2}
          K_{s-\frac D2}\big(2\pi q\sqrt{n^TA^{-1}n}\big).
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    D = A.shape[0]
    form = QuadraticForm(A, x=x, shift=shift)
    if not shift > 0:
        raise DomainError("epstein_massive needs shift > 0")
    s = _number(s)
    det = float(np.linalg.det(form.A))
    _epstein_pole_check(s, D, det, shift)
    Ainv = np.linalg.inv(form.A)
    q = math.sqrt(shift)
    pref0 = math.pi ** (D / 2) / math.sqrt(det)
    first = pref0 * specfun.gamma_ratio(s - D / 2, s) * shift ** (D / 2 - s)
    value = complex(first)
    err = 1e-15 * abs(first)
    n_terms = 1
    rg = specfun.rgamma(s)
    if rg != 0:
        nu = s - D / 2
        lam_inv = float(np.linalg.eigvalsh(Ainv)[0])
        zmin = 2 * math.pi * q * math.sqrt(lam_inv)
        Z = _cutoff(nu, zmin)
        M = _shell_limit(lam_inv, Z, 2 * math.pi * q)
        totals, errs = [], []
        for m in range(1, M + 1):
            pts = shell(m, (INT,) * D)
            mu = np.einsum("ni,ij,nj->n", pts, Ainv, pts)
            z = 2 * math.pi * q * np.sqrt(mu)
            keep = z <= Z
            if not np.any(keep):
                continue
            pts, mu, z = pts[keep], mu[keep], z[keep]
            w = np.exp(nu * np.log(np.sqrt(mu) / q))
            if np.any(form.x):
                w = w * np.cos(2 * math.pi * (pts @ form.x))
            t, e = _bessel_sum(nu, z, w)
            totals.append(t)
            errs.append(e)
            n_terms += len(z)
        pref = 2 * math.pi ** s * rg / math.sqrt(det)
        value += pref * fsum_complex(np.array(totals, dtype=complex))
        err += abs(pref) * math.fsum(errs) + _ROUND * abs(value)
    return ZetaResult(as_scalar(value), float(err), n_terms, Representation.BESSEL_SERIES)


def _row_direct(s, a, theta, beta, excluded):
    """sum over n in Z (n not in ``excluded``) of (a (n+theta)^2 + beta)^{-s}.

    Near terms are summed directly; the far ones by the binomial expansion
    in beta / (a (n+theta)^2) against Hurwitz zeta values.
    """
    U0 = max(1.0, 2.0 * math.sqrt(abs(beta) / a))
    if excluded:
        U0 = max(U0, max(abs(e + theta) for e in excluded) + 1.0)
    n_lo = math.floor(-U0 - theta) + 1
    n_hi = math.ceil(U0 - theta) - 1
    near = []
    for n in range(n_lo, n_hi + 1):
        if n in excluded:
            continue
        v = a * (n + theta) ** 2 + beta
        if v <= 0:
            raise DomainError("quadratic form not positive on a summation row")
        near.append(complex(v) ** (-s) if isinstance(s, complex) else v ** (-s))
    value = complex(math.fsum([complex(t).real for t in near]),
                    math.fsum([complex(t).imag for t in near]))
    h_pos = n_hi + 1 + theta
    h_neg = -(n_lo - 1) - theta
    ratio = beta / a
    far = 0.0
    err = 0.0
    scale = complex(a) ** (-s) if isinstance(s, complex) else a ** (-s)
    for j in range(0, 400):
        c = specfun.binom_general(-s, j) * ratio ** j
        if c == 0:
            break
        w = 2 * s + 2 * j
        term = c * (specfun.hurwitz_zeta(w, h_pos) + specfun.hurwitz_zeta(w, h_neg))
        far += term
        if abs(term) < 1e-18 * max(abs(far), 1e-300) and j > 2:
            err = abs(term)
            break
        if ratio == 0:
            break
    else:
        raise ConvergenceError("row expansion did not converge")
    value += scale * far
    return value, abs(scale) * err + 1e-15 * abs(value)


class _Form:
    """Internal form P(m) = m^T A m + b.m + c0 with m = n + x."""

    def __init__(self, A, b, x, c0):
        self.A = A
        self.b = b
        self.x = x
        self.c0 = c0
        self.D = A.shape[0]
        self.lam = float(np.linalg.eigvalsh(A)[0])

    def __call__(self, n):
        u = np.asarray(n, dtype=float) + self.x
        return np.einsum("...i,ij,...j->...", u, self.A, u) + u @ self.b + self.c0

    def lower_bound(self, m):
        """Lower bound of P over the max-norm shell m."""
        delta = 1.0 if np.any(self.x) else 0.0
        r = max(m - delta, 0.0)
        bn = float(np.linalg.norm(self.b)) * math.sqrt(self.D) * (m + 1)
        return self.lam * r * r - bn + self.c0


def _reduce(s, form, excluded):
    """sum over n in Z^D minus ``excluded`` of P(n)^{-s}, by dimensional reduction."""
    D = form.D
    a = float(form.A[0, 0])
    if D == 1:
        theta = form.x[0] + form.b[0] / (2 * a)
        beta = form.c0 - form.b[0] ** 2 / (4 * a)
        excl = {int(e[0]) for e in excluded}
        return _row_direct(s, a, theta, beta, excl)

    c = form.A[0, 1:]
    Bm = form.A[1:, 1:] - np.outer(c, c) / a
    b1 = form.b[0]
    sub = _Form(Bm, form.b[1:] - b1 * c / a, form.x[1:], form.c0 - b1 ** 2 / (4 * a))
    thr = a / math.pi ** 2
    excluded_rows = {}
    for e in excluded:
        excluded_rows.setdefault(tuple(e[1:]), set()).add(int(e[0]))

    nu = s - 0.5
    Z = _cutoff(nu, 2.0)
    bmax = a * (Z / (2 * math.pi)) ** 2
    direct_rows = []
    bessel_z, bessel_w = [], []
    m = 0
    while True:
        pts = shell(m, (INT,) * (D - 1))
        if len(pts):
            beta = sub(pts)
            u = pts + sub.x
            theta = form.x[0] + (u @ c + b1 / 2) / a
            for idx in range(len(pts)):
                key = tuple(int(v) for v in pts[idx])
                bt = float(beta[idx])
                if key in excluded_rows or bt <= thr:
                    direct_rows.append((key, float(theta[idx]), bt))
                elif bt <= bmax:
                    kmax = int(Z / (2 * math.pi * math.sqrt(bt / a)))
                    if kmax >= 1:
                        k = np.arange(1, kmax + 1, dtype=float)
                        bessel_z.append(2 * math.pi * k * math.sqrt(bt / a))
                        bessel_w.append(np.cos(2 * math.pi * k * theta[idx])
                                        * np.exp((0.25 - s / 2) * math.log(bt) + nu * np.log(k)))
        if m > 0 and sub.lower_bound(m + 1) > max(thr, bmax):
            break
        m += 1
        if m > 100000:
            raise ConvergenceError("row enumeration did not terminate")

    value = 0.0
    err = 0.0
    for key, theta, bt in direct_rows:
        v, e = _row_direct(s, a, theta, bt, excluded_rows.get(key, set()))
        value += v
        err += e
    rg = specfun.rgamma(s)
    g = specfun.gamma(s - 0.5)
    sub_excl = [np.array(key) for key, _, _ in direct_rows]
    v, e = _reduce(s - 0.5, sub, sub_excl)
    f1 = _SQRT_PI / math.sqrt(a) * g * rg
    value += f1 * v
    err += abs(f1) * e + _ROUND * (abs(f1 * v) + abs(value))
    if rg != 0 and bessel_z:
        bs, be = _bessel_sum(nu, np.concatenate(bessel_z), np.concatenate(bessel_w))
        pref = 4 * math.pi ** s * rg * a ** (-s / 2 - 0.25)
        value += pref * bs
        err += abs(pref) * be + _ROUND * abs(pref * bs)
    return value, err


def _reduce_entry(s, form, excluded, det, c_eff):
    D = form.D
    p = _half_integer_index(s)
    if p is not None and p <= D:
        if p % 2 == D % 2 and epstein_residue(D, det, c_eff, (D - p) // 2) != 0:
            raise PoleError(f"pole at s={p / 2}", point=p / 2)
        return _symmetric_limit(lambda t: _reduce(t, form, excluded), p / 2)
    return _reduce(s, form, excluded)


def epstein_homogeneous(s, A, b=None, x=None):
    r"""Zero-shift sum :math:`\hat\zeta_D(s;A,b,x)=\sum_{n}((n+x)^TA(n+x)+b^Tn)^{-s}`.

    The sum runs over the punctured lattice when ``x = 0`` and over the
    full lattice otherwise.  Either ``b`` or ``x`` must vanish.  The first coordinate is completed
    to a square and Poisson-summed row by row; rows whose remaining form is
    small (or that contain the excluded origin) are summed directly with a
    binomial/Hurwitz expansion, and the rest contribute a lower-dimensional
    sum of the same type plus a cosine-weighted Bessel series.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    D = A.shape[0]
    form = QuadraticForm(A, b=b, x=x)
    if np.any(form.b) and np.any(form.x):
        raise UnsupportedCaseError("epstein_homogeneous supports b = 0 or x = 0, not both")
    s = _number(s)
    det = float(np.linalg.det(form.A))
    c0 = -float(form.b @ form.x)
    c_eff = c0 - 0.25 * float(form.b @ np.linalg.solve(form.A, form.b))
    internal = _Form(form.A, form.b, form.x, c0)
    # the origin is dropped only when the form vanishes there
    excluded = [] if np.any(form.x) else [np.zeros(D, dtype=int)]
    value, err = _reduce_entry(s, internal, excluded, det, c_eff)
    return ZetaResult(as_scalar(complex(value)), float(err), 0, Representation.BESSEL_SERIES)


def reflection_residual(s, A):
    r"""``|pi^{-s} Gamma(s) Z(s;A) - pi^{s-D/2} det(A)^{-1/2} Gamma(D/2-s) Z(D/2-s;A^{-1})|``
    for the homogeneous punctured Epstein sum ``Z``."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    D = A.shape[0]
    s = _number(s)
    det = float(np.linalg.det(A))
    lhs = math.pi ** (-s) * specfun.gamma(s) * epstein_homogeneous(s, A).value
    rhs = (math.pi ** (s - D / 2) / math.sqrt(det) * specfun.gamma(D / 2 - s)
           * epstein_homogeneous(D / 2 - s, np.linalg.inv(A)).value)
    return float(abs(lhs - rhs))


def epstein_log_det_derivative(A, shift):
    r"""Derivative at ``s = 0`` of the full-lattice Epstein sum with positive shift.

    .. math::
        \frac{\pi^{D/2}}{\sqrt{\det A}}
        \begin{cases}\Gamma(-\frac D2)\,q^D & D\ \text{odd}\\
        \frac{(-1)^{D/2}}{(D/2)!}q^D\,(H_{D/2}-2\log q) & D\ \text{even}\end{cases}
        + \frac{2q^{D/2}}{\sqrt{\det A}}\sum_{n\ne0}(n^TA^{-1}n)^{-D/4}
          K_{D/2}\big(2\pi q\sqrt{n^TA^{-1}n}\big)

    where ``q = sqrt(shift)`` and ``H_m`` is the harmonic number.
    """
    if not shift > 0:
        raise DomainError("epstein_log_det_derivative needs shift > 0")
    A = np.atleast_2d(np.asarray(A, dtype=float))
    D = A.shape[0]
    det = float(np.linalg.det(A))
    q = math.sqrt(shift)
    pref0 = math.pi ** (D / 2) / math.sqrt(det)
    if D % 2:
        lead = pref0 * specfun.gamma(-D / 2) * q ** D
    else:
        m = D // 2
        harmonic = math.fsum(1.0 / k for k in range(1, m + 1))
        lead = pref0 * (-1) ** m / math.factorial(m) * q ** D * (harmonic - math.log(shift))
    Ainv = np.linalg.inv(A)
    lam_inv = float(np.linalg.eigvalsh(Ainv)[0])
    nu = D / 2
    Z = _cutoff(nu, 2 * math.pi * q * math.sqrt(lam_inv))
    M = _shell_limit(lam_inv, Z, 2 * math.pi * q)
    totals = []
    for m in range(1, M + 1):
        pts = shell(m, (INT,) * D)
        mu = np.einsum("ni,ij,nj->n", pts, Ainv, pts)
        z = 2 * math.pi * q * np.sqrt(mu)
        keep = z <= Z
        if np.any(keep):
            totals.append(fsum_complex(mu[keep] ** (-D / 4) * specfun.bessel_k(nu, z[keep])))
    return lead + 2 * q ** (D / 2) / math.sqrt(det) * math.fsum(totals)


def epstein_negative_integers(n, A, shift=0.0):
    r"""Epstein sums at ``s = -n``.

    With ``shift > 0`` returns the full-lattice value
    (0 for odd D, :math:`(-1)^{D/2}\frac{n!}{(n+D/2)!}\frac{\pi^{D/2}}{\sqrt{\det A}}q^{2n+D}`
    for even D); with ``shift == 0`` the punctured homogeneous value
    (-1 at n = 0, 0 for n >= 1).
    """
    if n < 0 or int(n) != n:
        raise DomainError("n must be a non-negative integer")
    n = int(n)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    D = A.shape[0]
    if shift == 0:
        return -1.0 if n == 0 else 0.0
    if D % 2:
        return 0.0
    m = D // 2
    det = float(np.linalg.det(A))
    return ((-1) ** m * math.factorial(n) / math.factorial(n + m)
            * math.pi ** m / math.sqrt(det) * shift ** (n + m))


# ---------------------------------------------------------------------------
# Laurent data
# ---------------------------------------------------------------------------

def laurent_at(f, s0, residue, eps=1e-3, tol=1e-7):
    """Finite part and linear coefficient of ``f`` at a simple pole (or regular point).

    ``f`` maps s to a complex value.  Symmetric evaluations at ``s0 +- e``
    cancel the pole; two Richardson extrapolants (steps e, e/2 and e/2,
    e/4) must agree within ``tol`` (relative to max(1, |value|)).
    """
    s0 = _number(s0)
    cache = {}

    def ev(t):
        if t not in cache:
            cache[t] = complex(f(s0 + t))
        return cache[t]

    def g(e):
        return 0.5 * (ev(e) + ev(-e))

    def d(e):
        return (ev(e) - ev(-e)) / (2 * e) - residue / e ** 2

    g1, g2, g3 = g(eps), g(eps / 2), g(eps / 4)
    r1 = (4 * g2 - g1) / 3
    r2 = (4 * g3 - g2) / 3
    if abs(r1 - r2) > tol * max(1.0, abs(r2)):
        raise ConvergenceError(f"finite-part extrapolants disagree: {r1} vs {r2}")
    finite = (16 * r2 - r1) / 15
    d1, d2, d3 = d(eps), d(eps / 2), d(eps / 4)
    l1 = (4 * d2 - d1) / 3
    l2 = (4 * d3 - d2) / 3
    linear = (16 * l2 - l1) / 15
    return LaurentData(s0, as_scalar(complex(residue)), as_scalar(finite), as_scalar(linear))


def xi_laurent(D, shift, s0):
    """Laurent data of :func:`xi` at ``s0``: closed-form residue, extrapolated finite part."""
    res = xi_residue(D, shift, s0)
    return laurent_at(lambda t: xi(t, D, shift).value, s0, res)


def epstein_laurent(D, A, shift, j):
    r"""Laurent data at ``s = D/2 - j`` of the full (shift > 0) or punctured
    homogeneous (shift = 0) Epstein sum.

    Raises
    ------
    NotAPoleError
        When the residue :math:`\frac{(-1)^j}{j!}\frac{\pi^{D/2}q^{2j}}{\sqrt{\det A}\,\Gamma(D/2-j)}`
        vanishes.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[0] != D:
        raise DomainError("matrix size does not match D")
    det = float(np.linalg.det(A))
    res = epstein_residue(D, det, shift, j)
    if res == 0:
        raise NotAPoleError(f"s = {D / 2 - j} is not a pole for D={D}, shift={shift}")
    if shift > 0:
        def f(t):
            return epstein_massive(t, A, shift=shift).value
    else:
        def f(t):
            return epstein_homogeneous(t, A).value
    return laurent_at(f, D / 2 - j, res)
