from cyclorep import verify
from cyclorep.verify import CheckResult, _run


def test_crash_is_a_failure():
    def boom():
        raise RuntimeError("nope")

    r = _run("boom", boom)
    assert not r.passed and "RuntimeError" in r.detail


def test_time_budget():
    assert not CheckResult("x", True, "", 2.0, 1.0).ok
    assert CheckResult("x", True, "", 0.5, 1.0).ok


def test_invariant_checks_pass():
    for name, fn, _ in verify.invariant_checks(fast=True):
        passed, detail = fn()
        assert passed, f"{name}: {detail}"


def test_fast_and_full_lists():
    full = {n for n, _, _ in verify.invariant_checks(fast=False)}
    fast = {n for n, _, _ in verify.invariant_checks(fast=True)}
    assert fast < full
    assert len(verify.acceptance_checks()) == 13
