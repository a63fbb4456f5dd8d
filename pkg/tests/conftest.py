from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings

from hochquiv.algebra import compute_basis
from hochquiv.presentation import parse_presentation

# fixed example streams, so every run exercises the same algebras
settings.register_profile("repo", derandomize=True, deadline=None)
settings.load_profile("repo")

EXAMPLES = Path(__file__).resolve().parents[1] / "src" / "hochquiv" / "examples"
EXAMPLE_NAMES = sorted(p.stem for p in EXAMPLES.glob("*.quiver"))


def load(name: str):
    return compute_basis(parse_presentation((EXAMPLES / f"{name}.quiver").read_text()))


@pytest.fixture
def example():
    return load
