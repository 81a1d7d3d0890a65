import json
from dataclasses import replace

import pytest

from defectflow import (
    Phase,
    PhaseKind,
    PhaseParams,
    ProjectProfile,
    Workflow,
    dump_workflow,
    validate_workflow,
    workflow_from_dict,
    workflow_to_dict,
)
from defectflow.model import WorkflowDocumentError

from .conftest import toy_workflow


def phase(name="Code", **kwargs) -> Phase:
    params = dict(
        effort_rate=100.0,
        injection_rate=1.0,
        yield_without_sa=0.5,
        yield_with_sa=0.5,
        fix_cost=0.1,
        automated=False,
    )
    sa = kwargs.pop("sa_attributed", False)
    params.update(kwargs)
    return Phase(name, PhaseKind.CREATION, PhaseParams(**params), sa_attributed=sa)


def codes(violations):
    return sorted(v.code for v in violations)


class TestValidateWorkflow:
    def test_empty_workflow(self):
        report = validate_workflow(Workflow("empty", ()))
        assert [v.message for v in report] == ["workflow has no phases"]

    def test_org_c_fixture_is_clean(self, org_c):
        assert validate_workflow(org_c) == []
        assert len(org_c.phases) == 20

    def test_org_b_fixture_is_clean(self, org_b):
        assert validate_workflow(org_b) == []
        assert len(org_b.phases) == 25

    def test_duplicate_names(self):
        wf = Workflow("dup", (phase("Code"), phase("Code")))
        report = [v for v in validate_workflow(wf) if v.code == "duplicate_name"]
        assert len(report) == 1
        assert "Code" in report[0].message

    def test_yield_out_of_range(self):
        wf = Workflow("w", (phase(yield_with_sa=1.5, sa_attributed=True),))
        assert "yield_range" in codes(validate_workflow(wf))

    def test_negative_rates(self):
        wf = Workflow("w", (phase(injection_rate=-1.0, fix_cost=-0.5),))
        report = codes(validate_workflow(wf))
        assert "negative_injection" in report
        assert "negative_fix_cost" in report

    def test_automated_with_rate(self):
        wf = Workflow("w", (phase(automated=True),))
        assert "automated_with_rate" in codes(validate_workflow(wf))

    def test_missing_or_nonpositive_rate(self):
        assert "missing_rate" in codes(validate_workflow(Workflow("w", (phase(effort_rate=None),))))
        assert "bad_rate" in codes(validate_workflow(Workflow("w", (phase(effort_rate=0.0),))))

    def test_yield_without_fix_cost(self):
        wf = Workflow("w", (phase(fix_cost=None),))
        assert "missing_fix_cost" in codes(validate_workflow(wf))

    def test_free_fixes_is_warning_only(self):
        wf = Workflow("w", (phase(fix_cost=0.0),))
        report = validate_workflow(wf)
        assert codes(report) == ["free_fixes"]
        assert all(not v.is_error() for v in report)

    def test_sa_mismatch(self):
        wf = Workflow("w", (phase(yield_with_sa=0.6),))
        assert "sa_yield_mismatch" in codes(validate_workflow(wf))
        # sa_attributed phases may carry differing yields
        ok = Workflow("w", (phase(yield_with_sa=0.6, sa_attributed=True),))
        assert validate_workflow(ok) == []

    def test_non_finite_values(self):
        wf = Workflow("w", (phase(effort_rate=float("inf")),))
        assert "non_finite" in codes(validate_workflow(wf))

    def test_pure_and_repeatable(self, org_b):
        first = validate_workflow(org_b)
        second = validate_workflow(org_b)
        assert first == second == []


class TestWorkflowDocument:
    def test_round_trip_fixture_bytes(self, fixtures_dir):
        for name in ("org_b", "org_c", "synth_org"):
            text = (fixtures_dir / f"{name}.workflow.json").read_text()
            wf = workflow_from_dict(json.loads(text))
            assert dump_workflow(wf) == text

    def test_round_trip_value_equality(self, toy):
        assert workflow_from_dict(workflow_to_dict(toy)) == toy

    def test_automated_requires_null_rate(self, org_c):
        doc = workflow_to_dict(org_c)
        doc["phases"][16]["effort_rate_loc_per_hr"] = 392.40
        assert doc["phases"][16]["automated"] is True
        with pytest.raises(WorkflowDocumentError, match="null effort rate"):
            workflow_from_dict(doc)

    def test_missing_and_unknown_fields(self, toy):
        doc = workflow_to_dict(toy)
        del doc["phases"][0]["kind"]
        with pytest.raises(WorkflowDocumentError, match="missing"):
            workflow_from_dict(doc)
        doc = workflow_to_dict(toy)
        doc["phases"][0]["extra"] = 1
        with pytest.raises(WorkflowDocumentError, match="unknown fields"):
            workflow_from_dict(doc)

    def test_unknown_kind(self, toy):
        doc = workflow_to_dict(toy)
        doc["phases"][0]["kind"] = "magic"
        with pytest.raises(WorkflowDocumentError, match="unknown kind"):
            workflow_from_dict(doc)


class TestTypes:
    def test_phase_lookup(self):
        wf = toy_workflow()
        assert wf.phase("CodeRev").params.yield_with_sa == 0.5
        assert wf.phase_index("Test") == 2
        with pytest.raises(KeyError):
            wf.phase("nope")

    def test_with_phase_params_copies(self):
        wf = toy_workflow()
        changed = wf.with_phase_params("Test", fix_cost=1.0)
        assert changed.phase("Test").params.fix_cost == 1.0
        assert wf.phase("Test").params.fix_cost == 0.5  # original untouched

    def test_project_profile_invariants(self):
        ok = ProjectProfile(org="B", size_loc=20318, team_size=16, total_hours=2626.3)
        assert ok.size_loc == 20318
        with pytest.raises(ValueError):
            ProjectProfile(org="B", size_loc=-1)
        with pytest.raises(ValueError):
            ProjectProfile(org="B", size_loc=1, team_size=0)

    def test_sa_attributed_fixture_phases(self, org_b, org_c):
        assert [p.name for p in org_b.phases if p.sa_attributed] == ["CodeRev", "Comp", "CodeInsp"]
        assert [p.name for p in org_c.phases if p.sa_attributed] == ["StaticAnalysis"]
        for wf in (org_b, org_c):
            for p in wf.phases:
                if not p.sa_attributed:
                    assert p.params.yield_without_sa == p.params.yield_with_sa
