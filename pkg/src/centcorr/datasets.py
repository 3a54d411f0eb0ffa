"""Small public networks shipped with the package."""

from importlib import resources
from pathlib import Path

MINI_CORPUS = ("karate", "dolphins", "football", "polbooks", "lesmis")


def data_dir() -> Path:
    return Path(str(resources.files(__package__) / "data"))


def available() -> list[str]:
    return sorted(p.stem for p in data_dir().glob("*.txt"))


def path(name: str) -> Path:
    p = data_dir() / f"{name}.txt"
    if not p.exists():
        raise FileNotFoundError(
            f"network {name!r} is not bundled; place its edge list at {p} (available: {', '.join(available())})"
        )
    return p
