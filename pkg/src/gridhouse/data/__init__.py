"""Bundled plan and knowledge files."""

from importlib import resources
from pathlib import Path


def data_dir() -> Path:
    return Path(resources.files(__package__))  # type: ignore[arg-type]


def plan_path(name: str = "house40") -> Path:
    return data_dir() / f"{name}.plan"


def knowledge_path(name: str = "house40") -> Path:
    return data_dir() / f"{name}.kb"


def read_plan(name: str = "house40") -> str:
    return plan_path(name).read_text()


def read_knowledge(name: str = "house40") -> str:
    return knowledge_path(name).read_text()
