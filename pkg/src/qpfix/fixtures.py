"""Bundled example instances."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .certifier import Problem
from .io import load_problem, load_space
from .space import QPSpace


def data_path(name: str) -> Path:
    return Path(str(resources.files("qpfix") / "data" / name))


def p3() -> QPSpace:
    """Three-point asymmetric space that needs a relaxation coefficient above 1."""
    return load_space(data_path("P3.json"))


def t3() -> QPSpace:
    return load_space(data_path("T3.json"))


def t3_problem() -> Problem:
    return load_problem(data_path("T3-problem.json"))[0]
