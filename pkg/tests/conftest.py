from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
FIG1_PATH = REPO_ROOT / "scenes" / "fig1.setl"


@pytest.fixture(scope="session")
def fig1_source() -> str:
    return FIG1_PATH.read_text(encoding="utf-8")
