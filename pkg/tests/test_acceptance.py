"""Acceptance gate: each headline check at its stated tolerance and time budget.

Run under pytest (lines are echoed in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import sys
import time

import pytest

from cyclorep import verify

# (label, check, runtime budget in seconds or None)
CRITERIA = [
    ("area(4) = pi and area(3) = 2 pi / sqrt 3 to 1e-9", verify.closed_form_areas, 5.0),
    ("area(8), area(16) match the Gamma closed forms to 1e-8", verify.gamma_areas, 10.0),
    ("residues mod p | n, mod 9, mod 4 stay in the allowed sets", verify.residue_confinement, 30.0),
    ("prime-index congruence on [0, p^2)^2 for p <= 13", verify.prime_index_congruence, 60.0),
    ("A_d(N) equals the naive double loop", verify.counting_oracle, 60.0),
    ("A_d(N) <= 29 N^(2/d) (log N)^1.161", verify.counting_upper_bound, None),
    ("A_4(N) / (C_4 sqrt N) approaches 1", verify.asymptotic_ratio, 600.0),
    ("w_n equals the group weight for 3 <= n <= 500", verify.weight_identity, None),
    ("Phi_n and Phi_2n share values on |x|, |y| <= 15", verify.isomorphic_value_sets, None),
    ("confinement classes (20, 5, 17) exclude Phi_7 values", verify.confinement_end_to_end, None),
    ("height bound holds for n <= 50, heights 2..30", verify.flw_bound, 60.0),
    ("L(phi_n) <= n^(d(n)/2) for 2 <= n <= 2000", verify.bateman, 30.0),
    ("areas increase along 4, 8, ..., 256 and area(256) > 3.9", verify.area_limit, None),
]

LINES: list[str] = []


def _evaluate(label, check, budget):
    t0 = time.perf_counter()
    passed, detail = check()
    elapsed = time.perf_counter() - t0
    in_time = budget is None or elapsed < budget
    limit = f" (budget {budget:g}s)" if budget else ""
    line = f"[{'PASS' if passed and in_time else 'FAIL'}] {label}: {detail}; {elapsed:.2f}s{limit}"
    return passed, in_time, line


@pytest.mark.parametrize("label,check,budget", CRITERIA, ids=[f"c{i:02d}" for i in range(1, len(CRITERIA) + 1)])
def test_criterion(label, check, budget):
    passed, in_time, line = _evaluate(label, check, budget)
    LINES.append(line)
    print(line)
    assert passed, line
    assert in_time, line


if __name__ == "__main__":
    ok = True
    for label, check, budget in CRITERIA:
        passed, in_time, line = _evaluate(label, check, budget)
        print(line, flush=True)
        ok &= passed and in_time
    sys.exit(0 if ok else 1)
