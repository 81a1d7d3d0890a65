from collections import Counter

import pytest

from defectflow import (
    DefectRecord,
    EffortRecord,
    LogBundle,
    LogParseError,
    SizeRecord,
    apply_aliases,
    load_logs,
    load_workflow,
    validate_logs,
    write_logs,
)

from .conftest import FIXTURES, toy_workflow

MINIMAL_EFFORT = "project_id,phase,minutes\np1,Code,120\np1,Test,60\n"
MINIMAL_DEFECTS = "project_id,defect_id,inject_phase,remove_phase,fix_minutes\np1,d1,Code,Test,15\n"
MINIMAL_SIZE = "project_id,added_modified_loc\np1,1000\n"


def write_minimal(tmp_path, effort=MINIMAL_EFFORT, defects=MINIMAL_DEFECTS, size=MINIMAL_SIZE):
    e = tmp_path / "effort.csv"
    d = tmp_path / "defects.csv"
    s = tmp_path / "size.csv"
    e.write_text(effort)
    d.write_text(defects)
    s.write_text(size)
    return e, d, s


class TestLoadLogs:
    def test_minimal_well_formed(self, tmp_path):
        bundle = load_logs(*write_minimal(tmp_path))
        assert len(bundle.effort) == 2
        assert len(bundle.defects) == 1
        assert len(bundle.sizes) == 1
        assert bundle.effort[0] == EffortRecord("p1", "Code", 120.0)
        assert bundle.defects[0].fix_minutes == 15.0
        assert bundle.total_size() == 1000

    def test_row_numbers_preserved(self, tmp_path):
        bundle = load_logs(*write_minimal(tmp_path))
        assert [r.line for r in bundle.effort] == [2, 3]

    def test_negative_minutes_rejected(self, tmp_path):
        effort = "project_id,phase,minutes\np1,Code,-5\n"
        with pytest.raises(LogParseError, match="minutes must be positive") as err:
            load_logs(*write_minimal(tmp_path, effort=effort))
        assert err.value.line == 2
        assert err.value.column == "minutes"

    def test_non_numeric_minutes_rejected(self, tmp_path):
        effort = "project_id,phase,minutes\np1,Code,soon\n"
        with pytest.raises(LogParseError, match="not a number"):
            load_logs(*write_minimal(tmp_path, effort=effort))

    def test_missing_header(self, tmp_path):
        effort = "p1,Code,120\n"
        with pytest.raises(LogParseError, match="bad header"):
            load_logs(*write_minimal(tmp_path, effort=effort))

    def test_empty_effort_and_defects_are_valid(self, tmp_path):
        bundle = load_logs(
            *write_minimal(
                tmp_path,
                effort="project_id,phase,minutes\n",
                defects="project_id,defect_id,inject_phase,remove_phase,fix_minutes\n",
            )
        )
        assert bundle.effort == ()
        assert bundle.defects == ()

    def test_empty_size_file_is_an_error(self, tmp_path):
        with pytest.raises(LogParseError, match="no data rows"):
            load_logs(*write_minimal(tmp_path, size="project_id,added_modified_loc\n"))

    def test_duplicate_defect_id_rejected(self, tmp_path):
        defects = (
            "project_id,defect_id,inject_phase,remove_phase,fix_minutes\n"
            "p1,d1,Code,Test,15\np1,d1,Code,Test,5\n"
        )
        with pytest.raises(LogParseError, match="duplicated within project"):
            load_logs(*write_minimal(tmp_path, defects=defects))

    def test_duplicate_size_record_rejected(self, tmp_path):
        size = "project_id,added_modified_loc\np1,1000\np1,2000\n"
        with pytest.raises(LogParseError, match="more than one size record"):
            load_logs(*write_minimal(tmp_path, size=size))

    def test_never_removed_defect(self, tmp_path):
        defects = (
            "project_id,defect_id,inject_phase,remove_phase,fix_minutes\np1,d1,Code,,0\n"
        )
        bundle = load_logs(*write_minimal(tmp_path, defects=defects))
        assert bundle.defects[0].remove_phase is None

    def test_never_removed_with_fix_effort_rejected(self, tmp_path):
        defects = (
            "project_id,defect_id,inject_phase,remove_phase,fix_minutes\np1,d1,Code,,3\n"
        )
        with pytest.raises(LogParseError, match="never-removed"):
            load_logs(*write_minimal(tmp_path, defects=defects))

    def test_synth_org_fixture_counts_match_line_counts(self):
        d = FIXTURES / "synth_org"
        bundle = load_logs(d / "effort.csv", d / "defects.csv", d / "size.csv")
        assert len(bundle.sizes) == 3
        # independent check: data rows are exactly non-empty lines minus header
        for attr, name in (("effort", "effort.csv"), ("defects", "defects.csv"), ("sizes", "size.csv")):
            lines = [l for l in (d / name).read_text().splitlines() if l.strip()]
            assert len(getattr(bundle, attr)) == len(lines) - 1

    def test_round_trip_write_then_load(self, tmp_path, synth_org_bundle):
        paths = (tmp_path / "e.csv", tmp_path / "d.csv", tmp_path / "s.csv")
        write_logs(synth_org_bundle, *paths)
        again = load_logs(*paths, org=synth_org_bundle.org)
        assert again.effort == synth_org_bundle.effort
        assert again.defects == synth_org_bundle.defects
        assert again.sizes == synth_org_bundle.sizes


class TestValidateLogs:
    def test_synth_fixtures_are_clean(self, synth_org_bundle, synth_single_bundle, synth_workflow):
        assert validate_logs(synth_org_bundle, synth_workflow) == []
        assert validate_logs(synth_single_bundle, synth_workflow) == []

    def test_removal_before_injection(self, toy):
        bundle = LogBundle(
            effort=(EffortRecord("p1", "Code", 60.0),),
            defects=(DefectRecord("p1", "d1", "Test", "Code", 5.0),),
            sizes=(SizeRecord("p1", 100),),
        )
        report = validate_logs(bundle, toy)
        assert [v.code for v in report] == ["removal_before_injection"]

    def test_same_phase_inject_and_remove_is_legal(self, toy):
        bundle = LogBundle(
            effort=(EffortRecord("p1", "CodeRev", 60.0),),
            defects=(DefectRecord("p1", "d1", "CodeRev", "CodeRev", 5.0),),
            sizes=(SizeRecord("p1", 100),),
        )
        assert validate_logs(bundle, toy) == []

    def test_unknown_phase(self, toy):
        bundle = LogBundle(
            effort=(EffortRecord("p1", "Lint", 60.0),),
            defects=(),
            sizes=(SizeRecord("p1", 100),),
        )
        report = validate_logs(bundle, toy)
        assert [v.code for v in report] == ["unknown_phase"]
        assert "Lint" in report[0].message

    def test_missing_size_record(self, toy):
        bundle = LogBundle(
            effort=(EffortRecord("p2", "Code", 60.0),),
            defects=(),
            sizes=(SizeRecord("p1", 100),),
        )
        report = validate_logs(bundle, toy)
        assert [v.code for v in report] == ["missing_size"]

    def test_fix_time_outlier_is_warning(self, toy):
        defects = tuple(
            DefectRecord("p1", f"d{i}", "Code", "Test", 10.0) for i in range(5)
        ) + (DefectRecord("p1", "big", "Code", "Test", 2000.0),)
        bundle = LogBundle(
            effort=(EffortRecord("p1", "Code", 60.0),),
            defects=defects,
            sizes=(SizeRecord("p1", 100),),
        )
        report = validate_logs(bundle, toy)
        assert [v.code for v in report] == ["fix_time_outlier"]
        assert not report[0].is_error()
        # below the default multiple nothing is flagged
        assert validate_logs(bundle, toy, outlier_multiple=500.0) == []

    def test_order_insensitive(self, synth_org_bundle, synth_workflow):
        # poison the bundle with a few violations, then permute
        bad = LogBundle(
            effort=synth_org_bundle.effort + (EffortRecord("ghost", "Lint", 5.0),),
            defects=synth_org_bundle.defects
            + (DefectRecord("p1", "x1", "Test", "Design", 1.0),),
            sizes=synth_org_bundle.sizes,
        )
        forward = validate_logs(bad, synth_workflow)
        reversed_bundle = LogBundle(
            effort=tuple(reversed(bad.effort)),
            defects=tuple(reversed(bad.defects)),
            sizes=tuple(reversed(bad.sizes)),
        )
        backward = validate_logs(reversed_bundle, synth_workflow)
        assert Counter(forward) == Counter(backward)


class TestAliases:
    def test_rename_applies_to_all_phase_columns(self):
        bundle = LogBundle(
            effort=(EffortRecord("p1", "Lint", 60.0),),
            defects=(DefectRecord("p1", "d1", "Lint", "Lint", 5.0),),
            sizes=(SizeRecord("p1", 100),),
        )
        renamed = apply_aliases(bundle, {"Lint": "CodeRev"})
        assert renamed.effort[0].phase == "CodeRev"
        assert renamed.defects[0].inject_phase == "CodeRev"
        assert renamed.defects[0].remove_phase == "CodeRev"
        assert validate_logs(renamed, toy_workflow()) == []

    def test_empty_alias_table_is_identity(self, synth_org_bundle):
        assert apply_aliases(synth_org_bundle, {}) is synth_org_bundle
