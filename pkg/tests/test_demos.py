"""Every demo script must run clean: the demos double as executable
documentation, and each ends in asserts on its advertised numbers."""

import io
import runpy
from contextlib import redirect_stdout
from pathlib import Path

import pytest

DEMO_DIR = Path(__file__).resolve().parent.parent / "demos"
DEMOS = sorted(p.name for p in DEMO_DIR.glob("*.py"))


def test_demo_directory_is_populated():
    assert len(DEMOS) >= 8


@pytest.mark.parametrize("name", DEMOS)
def test_demo_runs_clean(name):
    buf = io.StringIO()
    with redirect_stdout(buf):
        runpy.run_path(str(DEMO_DIR / name), run_name="__main__")
    out = buf.getvalue()
    assert out.strip(), name
