import itertools

import numpy as np

from zetabox._enum import INT, POS, shell, square_counts


def _brute(N, D, lo):
    counts = np.zeros(N + 1, dtype=int)
    r = int(N ** 0.5) + 1
    for k in itertools.product(range(lo if lo else -r, r + 1), repeat=D):
        m = sum(c * c for c in k)
        if m <= N:
            counts[m] += 1
    return counts


def test_square_counts_against_brute_force():
    for D in (1, 2, 3):
        assert np.array_equal(square_counts(40, D, INT), _brute(40, D, None))
        assert np.array_equal(square_counts(40, D, POS), _brute(40, D, 1))


def test_shell_covers_each_point_once():
    pts = np.concatenate([shell(m, (INT, INT)) for m in range(1, 4)])
    assert len({tuple(p) for p in pts}) == len(pts) == 7 * 7 - 1


def test_box_points_equals_union_of_shells():
    from zetabox._enum import box_points, box_size
    kinds = (INT, POS, INT)
    box = {tuple(p) for p in box_points(4, kinds)}
    shells = {tuple(p) for m in range(0, 5) for p in shell(m, kinds)}
    assert box == shells and len(box) == box_size(4, kinds)
