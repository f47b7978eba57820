"""Acceptance criteria, each at its stated tolerance and runtime budget.

Every test records one pass/fail line, printed in the terminal summary.
"""
import os
import subprocess
import sys
import time

import pytest

from zetabox import validate

from conftest import ACCEPTANCE_LINES

# runtime budgets in seconds; None where no budget is stated
BUDGET = {1: 10, 2: 30, 3: 120, 4: None, 5: None, 6: 60, 7: None}


def _record(cid, ok, detail):
    line = f"criterion {cid}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _describe(crit):
    bad = [ch for ch in crit.checks if not ch.passed]
    if not bad:
        return f"{len(crit.checks)} checks"
    return "; ".join(f"{ch.name}: measured {ch.measured!r} expected {ch.expected!r} tol {ch.tol!r}"
                     + (f" ({ch.note})" if ch.note else "") for ch in bad)


@pytest.mark.parametrize("cid", sorted(validate.CRITERIA))
def test_criterion(cid):
    t0 = time.perf_counter()
    crit = validate.CRITERIA[cid]()
    elapsed = time.perf_counter() - t0
    budget = BUDGET[cid]
    in_time = budget is None or elapsed < budget
    ok = crit.passed and in_time
    detail = f"[{crit.title}] {elapsed:.1f}s" + (f" (budget {budget}s)" if budget else "")
    _record(cid, ok, f"{detail}: {_describe(crit)}")
    assert in_time, f"criterion {cid} took {elapsed:.1f}s, budget {budget}s"
    assert crit.passed, _describe(crit)


def _validate_all(threads):
    env = dict(os.environ, ZETABOX_THREADS=str(threads))
    proc = subprocess.run([sys.executable, "-m", "zetabox", "validate", "all"], env=env,
                          capture_output=True, timeout=1800)
    return proc.returncode, proc.stdout


@pytest.mark.slow
def test_criterion_8_determinism():
    runs = [_validate_all(1), _validate_all(1), _validate_all(4)]
    codes = {c for c, _ in runs}
    same = runs[0][1] == runs[1][1] == runs[2][1]
    ok = same and len(codes) == 1 and len(runs[0][1]) > 0
    _record(8, ok, f"[validate all byte-identical over two runs and ZETABOX_THREADS 1 vs 4] "
                   f"{len(runs[0][1])} bytes, exit codes {sorted(codes)}")
    assert ok
