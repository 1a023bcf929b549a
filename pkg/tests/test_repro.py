import pytest

from riskscale.repro import TARGETS, run_target, summarize

FAST = sorted(set(TARGETS) - {"hyperexp3-j0-sweep"})


class TestTargets:
    @pytest.mark.parametrize("name", FAST)
    def test_target_passes(self, name):
        cells = run_target(name)
        assert cells
        failed = [c for c in cells if not c.passed]
        assert not failed, failed

    def test_eps_restriction(self):
        cells = run_target("eps-family-2", eps=1000)
        assert {c.label.split()[0] for c in cells} == {"eps=1000"}

    def test_summary_counts(self):
        cells = run_target("exp-eta-root", tol=0.0)
        s = summarize(cells)
        assert s["passed"] + s["failed"] + s["skipped"] == len(cells)
        assert s["failed"] > 0

    def test_unknown_target(self):
        with pytest.raises(ValueError):
            run_target("nope")
