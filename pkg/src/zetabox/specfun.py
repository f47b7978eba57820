r"""Scalar special functions used by the lattice and thermodynamic code.

Everything here is a pure function of its arguments.  Real-argument Gamma
and Riemann zeta go through :mod:`scipy.special`; complex arguments of the
zeta functions go through :mod:`mpmath`.  The modified Bessel function
:math:`K_\nu(x)` has three routes:

* half-integer order: the exact terminating sum
  :math:`K_{n+1/2}(x)=\sqrt{\pi/2x}\,e^{-x}\sum_k \frac{(n+k)!}{k!(n-k)!}(2x)^{-k}`;
* other real order: :func:`scipy.special.kv`;
* complex order: trapezoidal rule on
  :math:`K_\nu(x)=\int_0^\infty e^{-x\cosh t}\cosh(\nu t)\,dt`, which
  converges geometrically because the integrand is analytic in a strip.
"""
import math
from fractions import Fraction

import mpmath
import numpy as np
from scipy import special

from .errors import DomainError, PoleError

__all__ = [
    "gamma",
    "rgamma",
    "gamma_ratio",
    "digamma",
    "riemann_zeta",
    "hurwitz_zeta",
    "bessel_k",
    "dedekind_eta",
    "log_dedekind_eta",
    "binom_half",
    "binom_general",
]

_INT_TOL = 1e-13


def _as_number(s):
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError(f"non-finite argument {s!r}")
    if s.imag == 0.0:
        return s.real
    return s


def nonpositive_integer(s, tol=_INT_TOL):
    """Return ``-m`` if ``s`` is (numerically) a non-positive integer, else None."""
    s = complex(s)
    if abs(s.imag) > tol:
        return None
    r = round(s.real)
    if r <= 0 and abs(s.real - r) <= tol:
        return int(r)
    return None


def gamma(s):
    """Euler Gamma function for real or complex ``s``.

    Raises
    ------
    PoleError
        If ``s`` is a non-positive integer.
    """
    s = _as_number(s)
    if nonpositive_integer(s) is not None:
        raise PoleError(f"Gamma has a pole at s={s}", point=s)
    return special.gamma(s)


def rgamma(s):
    """Reciprocal Gamma function; entire, zero at the non-positive integers."""
    s = _as_number(s)
    if nonpositive_integer(s) is not None:
        return 0.0
    return special.rgamma(s)


def digamma(s):
    s = _as_number(s)
    if nonpositive_integer(s) is not None:
        raise PoleError(f"digamma has a pole at s={s}", point=s)
    return special.digamma(s)


def gamma_ratio(a, b):
    r"""Return :math:`\Gamma(a)/\Gamma(b)` including the removable cases.

    When both arguments sit on poles, ``a = -m`` and ``b = -n``, the ratio
    of residues :math:`(-1)^{m-n} n!/m!` is returned.  A pole of the
    numerator alone raises :class:`PoleError`.
    """
    ma = nonpositive_integer(a)
    mb = nonpositive_integer(b)
    if ma is not None and mb is not None:
        m, n = -ma, -mb
        return (-1.0) ** (m - n) * math.factorial(n) / math.factorial(m)
    if mb is not None:
        return 0.0
    if ma is not None:
        raise PoleError(f"Gamma({a})/Gamma({b}) has a pole", point=a)
    a = _as_number(a)
    b = _as_number(b)
    if isinstance(a, float) and isinstance(b, float):
        sa, sb = special.gammasgn(a), special.gammasgn(b)
        return sa * sb * math.exp(special.gammaln(a) - special.gammaln(b))
    return complex(np.exp(special.loggamma(a) - special.loggamma(b)))


def riemann_zeta(s):
    r"""Riemann zeta function :math:`\zeta_R(s)`.

    Real arguments use scipy (which applies the functional equation for
    negative ``s``); complex arguments use mpmath.
    """
    s = _as_number(s)
    if s == 1.0:
        raise PoleError("Riemann zeta has a pole at s=1", point=1.0)
    if isinstance(s, float):
        if s == 0.0:
            return -0.5
        if s < 0 and s == round(s) and int(s) % 2 == 0:
            return 0.0
        return float(special.zeta(s))
    return complex(mpmath.zeta(s))


def hurwitz_zeta(s, a):
    r"""Hurwitz zeta :math:`\sum_{n\ge0}(n+a)^{-s}` for ``a > 0``."""
    s = _as_number(s)
    if a <= 0:
        raise DomainError(f"Hurwitz zeta needs a > 0, got {a}")
    if s == 1.0:
        raise PoleError("Hurwitz zeta has a pole at s=1", point=1.0)
    if isinstance(s, float) and s > 1.0:
        return float(special.zeta(s, a))
    v = mpmath.zeta(s, a)
    return complex(v) if isinstance(s, complex) else float(mpmath.re(v))


def _half_integer_order(nu):
    if isinstance(nu, complex):
        return None
    twice = 2.0 * abs(nu)
    n = round(twice)
    if n % 2 == 1 and abs(twice - n) < 1e-14:
        return (n - 1) // 2
    return None


def _kv_half_integer(n, x):
    # K_{n+1/2}(x) = sqrt(pi/2x) e^{-x} sum_k (n+k)!/(k!(n-k)!) (2x)^{-k}
    inv = 1.0 / (2.0 * x)
    poly = np.zeros_like(x)
    for k in range(n, -1, -1):
        c = math.factorial(n + k) / (math.factorial(k) * math.factorial(n - k))
        poly = poly * inv + c
    return np.sqrt(np.pi * inv) * np.exp(-x) * poly


def _kv_complex_order(nu, x, chunk=4096):
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape, dtype=complex)
    flat_x = x.ravel()
    flat_out = out.ravel()
    a = abs(nu.real)
    for start in range(0, flat_x.size, chunk):
        xs = flat_x[start:start + chunk]
        # integrand exp(-x cosh t + a t) peaks at sinh t = a/x
        tp = np.arcsinh(a / xs)
        fp = xs * np.cosh(tp) - a * tp
        # right end T with f(T) = f(tp) + 46, by Newton from the right (f convex)
        t = tp + np.log(4.0 * (np.abs(fp) + 47.0) / xs + 4.0) + np.log1p(a) + 2.0
        for _ in range(60):
            g = xs * np.cosh(t) - a * t - fp - 46.0
            dg = xs * np.sinh(t) - a
            step = g / dg
            t = t - step
            if np.all(np.abs(step) < 1e-10 * (1.0 + t)):
                break
        curv = xs * np.cosh(tp)
        # the trapezoid error decays like exp(-2 pi d / h) for strip width d;
        # an imaginary order costs exp(|Im nu| (d + pi/2)) through cancellation
        hmax = np.minimum(0.25, 0.7 / np.sqrt(curv)) / (1.0 + 0.35 * abs(nu.imag))
        n_nodes = int(np.ceil(np.max(t / hmax))) + 1
        h = t / (n_nodes - 1)
        j = np.arange(n_nodes)
        tt = h[:, None] * j[None, :]
        w = np.ones(n_nodes)
        w[0] = 0.5
        vals = np.exp(-xs[:, None] * np.cosh(tt)) * np.cosh(nu * tt)
        flat_out[start:start + chunk] = h * (vals @ w)
    return out


def bessel_k(nu, x):
    r"""Modified Bessel function of the second kind :math:`K_\nu(x)`.

    Parameters
    ----------
    nu : float or complex
        Order.  ``K_nu == K_{-nu}`` holds by construction.
    x : float or array_like
        Positive argument(s).

    Returns
    -------
    float, complex or ndarray
        Same shape as ``x``; complex only when ``nu`` is complex.
    """
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(xa > 0)):
        raise DomainError("bessel_k needs x > 0")
    nu = _as_number(nu)
    if isinstance(nu, complex):
        nu = complex(abs(nu.real), nu.imag if nu.real >= 0 else -nu.imag)
        res = _kv_complex_order(nu, xa)
    else:
        nu = abs(nu)
        n = _half_integer_order(nu)
        if n is not None:
            res = _kv_half_integer(n, xa)
        else:
            res = special.kv(nu, xa)
    return res[0] if scalar else res


def log_dedekind_eta(y):
    r"""Natural log of the Dedekind eta function at :math:`\tau = iy`."""
    if not y > 0:
        raise DomainError(f"dedekind_eta needs y > 0, got {y}")
    terms = [-math.pi * y / 12.0]
    n = 1
    while True:
        e = math.exp(-2.0 * math.pi * n * y)
        if e < 1e-17:
            break
        terms.append(math.log1p(-e))
        n += 1
    return math.fsum(terms)


def dedekind_eta(y):
    r"""Dedekind eta :math:`\eta(iy)=e^{-\pi y/12}\prod_{n\ge1}(1-e^{-2\pi ny})`."""
    return math.exp(log_dedekind_eta(y))


def binom_half(j):
    """Binomial coefficient C(1/2, j) as an exact fraction."""
    if j < 0:
        raise DomainError("j must be non-negative")
    c = Fraction(1)
    half = Fraction(1, 2)
    for i in range(j):
        c = c * (half - i) / (i + 1)
    return c


def binom_general(a, j):
    """Binomial coefficient C(a, j) for real or complex ``a`` by recurrence."""
    c = 1.0
    for i in range(j):
        c = c * (a - i) / (i + 1)
    return c
