from pathlib import Path

import pytest

from defectflow import Phase, PhaseKind, PhaseParams, Workflow, load_logs, load_workflow

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def org_b() -> Workflow:
    return load_workflow(FIXTURES / "org_b.workflow.json")


@pytest.fixture(scope="session")
def org_c() -> Workflow:
    return load_workflow(FIXTURES / "org_c.workflow.json")


@pytest.fixture(scope="session")
def synth_workflow() -> Workflow:
    return load_workflow(FIXTURES / "synth_org.workflow.json")


def _bundle(name: str):
    d = FIXTURES / name
    return load_logs(d / "effort.csv", d / "defects.csv", d / "size.csv", org=name)


@pytest.fixture(scope="session")
def synth_org_bundle():
    return _bundle("synth_org")


@pytest.fixture(scope="session")
def synth_single_bundle():
    return _bundle("synth_single")


def toy_workflow() -> Workflow:
    """Code -> CodeRev -> Test chain used across modules: size 1000 gives
    efforts [10, 6, 5] h, removals [0, 10, 6], 4 escapes."""
    k = PhaseKind
    return Workflow(
        name="toy",
        phases=(
            Phase("Code", k.CREATION, PhaseParams(100.0, 2.0, 0.0, 0.0, None)),
            Phase("CodeRev", k.APPRAISAL, PhaseParams(200.0, 0.0, 0.5, 0.5, 0.1)),
            Phase("Test", k.FAILURE, PhaseParams(500.0, 0.0, 0.6, 0.6, 0.5)),
        ),
    )


def toy_workflow_with_sa() -> Workflow:
    """The same chain with an automated tool phase between review and test;
    the tool removes half of what reaches it, for 0.1 h per find."""
    base = toy_workflow()
    sa = Phase(
        "SA",
        PhaseKind.APPRAISAL,
        PhaseParams(None, 0.0, 0.0, 0.5, 0.1, automated=True),
        sa_attributed=True,
    )
    phases = base.phases[:2] + (sa,) + base.phases[2:]
    return Workflow(name="toy_sa", phases=phases)


@pytest.fixture()
def toy() -> Workflow:
    return toy_workflow()


@pytest.fixture()
def toy_sa() -> Workflow:
    return toy_workflow_with_sa()
