"""Deterministic lattice enumeration helpers.

Points are produced by max-norm shells; inside a shell the order is fixed
(face decomposition, then lexicographic), so every reduction that sums
shell totals in shell order is reproducible bit for bit.
"""
import math

import numpy as np

INT = "int"
POS = "pos"


def _ranges(m, kind):
    if kind == POS:
        inner = np.arange(1, m)
        full = np.arange(1, m + 1)
        edge = np.array([m]) if m >= 1 else np.array([], dtype=int)
    else:
        inner = np.arange(-(m - 1), m) if m >= 1 else np.array([], dtype=int)
        full = np.arange(-m, m + 1)
        edge = np.array([-m, m]) if m >= 1 else np.array([0])
    return inner, edge, full


def shell(m, kinds):
    """Integer points with max-norm exactly ``m``.

    Parameters
    ----------
    m : int
        Shell index (``m >= 0``; for ``POS`` coordinates ``m >= 1``).
    kinds : sequence of {"int", "pos"}
        Per-coordinate domain: all integers or positive integers.

    Returns
    -------
    ndarray, shape (N, D), int64
    """
    D = len(kinds)
    if D == 0:
        return np.zeros((1 if m == 0 else 0, 0), dtype=np.int64)
    if m == 0:
        if all(k == INT for k in kinds):
            return np.zeros((1, D), dtype=np.int64)
        return np.zeros((0, D), dtype=np.int64)
    pieces = []
    for i in range(D):
        axes = []
        for j, kind in enumerate(kinds):
            inner, edge, full = _ranges(m, kind)
            axes.append(inner if j < i else edge if j == i else full)
        if any(a.size == 0 for a in axes):
            continue
        grids = np.meshgrid(*axes, indexing="ij")
        pieces.append(np.stack([g.ravel() for g in grids], axis=1))
    if not pieces:
        return np.zeros((0, D), dtype=np.int64)
    return np.concatenate(pieces).astype(np.int64)


def box_points(R, kinds):
    """All integer points with max-norm at most ``R`` (lexicographic order)."""
    axes = [np.arange(1, R + 1) if k == POS else np.arange(-R, R + 1) for k in kinds]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def box_size(R, kinds):
    return math.prod(R if k == POS else 2 * R + 1 for k in kinds)


def square_counts(N, D, kind):
    """Counts ``r[n] = #{k in domain^D : |k|^2 = n}`` for ``0 <= n <= N``.

    ``kind`` is ``"int"`` (k in Z^D) or ``"pos"`` (k in N^D, k_i >= 1).
    """
    N = int(N)
    r = np.zeros(N + 1, dtype=np.int64)
    r[0] = 1
    kmax = math.isqrt(N)
    for _ in range(D):
        new = np.zeros_like(r)
        if kind == INT:
            new += r
        for k in range(1, kmax + 1):
            k2 = k * k
            mult = 2 if kind == INT else 1
            new[k2:] += mult * r[: N + 1 - k2]
        r = new
    return r


def fsum_complex(values):
    """Correctly rounded sum of a complex (or real) array, order independent."""
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))
    return math.fsum(values.tolist())


def as_scalar(v):
    """Drop a vanishing imaginary part."""
    if isinstance(v, complex) and v.imag == 0.0:
        return v.real
    return v
