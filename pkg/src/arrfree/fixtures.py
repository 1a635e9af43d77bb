"""Bundled example arrangements, both as builders and as shipped JSON files."""

from __future__ import annotations

from importlib import resources

from .arrangement import Multiarrangement, parse


def fixture_path(name: str) -> str:
    """Filesystem path of a shipped fixture JSON (e.g. 'braid.json')."""
    ref = resources.files("arrfree") / "fixtures" / name
    return str(ref)


def load(name: str) -> Multiarrangement:
    ref = resources.files("arrfree") / "fixtures" / name
    return parse(ref.read_text(encoding="utf-8"))


def boolean3(m=(1, 1, 1)) -> Multiarrangement:
    """Coordinate hyperplanes x, y, z with the given multiplicities."""
    return parse(
        {
            "dim": 3,
            "hyperplanes": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            "mult": list(m),
            "labels": ["x", "y", "z"],
        }
    )


def braid3() -> Multiarrangement:
    """The six rank-3 braid hyperplanes x, y, z, x-y, x-z, y-z."""
    return parse(
        {
            "dim": 3,
            "hyperplanes": [
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [1, -1, 0],
                [1, 0, -1],
                [0, 1, -1],
            ],
            "mult": [1] * 6,
            "labels": ["x", "y", "z", "x-y", "x-z", "y-z"],
        }
    )


def example_a3(a: int, m0: int) -> Multiarrangement:
    """x^a (x-y)^a (x-z)^a y^a (y-z)^a z^{m0} on the braid arrangement."""
    return parse(
        {
            "dim": 3,
            "hyperplanes": [
                [1, 0, 0],
                [1, -1, 0],
                [1, 0, -1],
                [0, 1, 0],
                [0, 1, -1],
                [0, 0, 1],
            ],
            "mult": [a, a, a, a, a, m0],
            "labels": ["x", "x-y", "x-z", "y", "y-z", "z"],
        }
    )


def example52() -> Multiarrangement:
    """x (x-y)^2 (x-z) y (y-z) z^2: irreducible rank 3 with two locally heavy
    hyperplanes."""
    return example_a3(1, 2).with_mult(1, 2)


def rank4_flag_example() -> Multiarrangement:
    """Ten hyperplanes in K^4 admitting the locally heavy flag through w."""
    return parse(
        {
            "dim": 4,
            "hyperplanes": [
                [1, 0, 0, 0],
                [1, 0, -1, 1],
                [1, 0, -1, -1],
                [0, 1, 0, -1],
                [0, 1, 0, 1],
                [0, 1, -1, 0],
                [0, 0, 1, 0],
                [0, 0, 1, 1],
                [0, 0, 1, -1],
                [0, 0, 0, 1],
            ],
            "mult": [1] * 10,
            "labels": [
                "x",
                "x-z+w",
                "x-z-w",
                "y-w",
                "y+w",
                "y-z",
                "z",
                "z+w",
                "z-w",
                "w",
            ],
        }
    )


def generic4() -> Multiarrangement:
    """Four planes in general position in K^3; every hyperplane is generic."""
    return parse(
        {
            "dim": 3,
            "hyperplanes": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
            "mult": [1] * 4,
            "labels": ["x", "y", "z", "x+y+z"],
        }
    )
