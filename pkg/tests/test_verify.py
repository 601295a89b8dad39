import time

import pytest

from lbern import cli, verify


def test_suites_in_declared_order():
    results = verify.run("all", verify.Config(max_n=4))
    seen = []
    for r in results:
        if r.suite not in seen:
            seen.append(r.suite)
    assert tuple(seen) == verify.SUITES


@pytest.mark.parametrize("suite", verify.SUITES)
def test_each_suite_passes(suite):
    results = verify.run(suite, verify.Config(max_n=8))
    bad = [r.line() for r in results if not r.passed]
    assert not bad, bad


def test_report_lines_carry_anchors():
    lines = [r.line() for r in verify.run("core")]
    assert any("Theorem 1 ✓" in ln for ln in lines)
    lines = [r.line() for r in verify.run("distribution")]
    assert any("Corollary 1 ✓" in ln for ln in lines)


def test_smoke_run_is_fast():
    t0 = time.perf_counter()
    code = cli.main(["verify", "--suite", "all", "--max-n", "5"], out=open("/dev/null", "w"))
    assert code == 0
    assert time.perf_counter() - t0 < 5


def test_crash_is_reported_as_failure(monkeypatch):
    def boom(cfg):
        raise RuntimeError("kaput")
    monkeypatch.setitem(verify.REGISTRY, "padic", [("boom", "Theorem 2", boom)])
    (r,) = verify.run("padic")
    assert not r.passed and "kaput" in r.detail


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify.run("nope")
