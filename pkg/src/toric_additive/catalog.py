"""Named example fans available to the CLI and the test suite."""

from __future__ import annotations

from .lattice import LatticeVec

BUILTIN: dict[str, tuple[LatticeVec, ...]] = {
    "p2": ((1, 0), (0, 1), (-1, -1)),
    "p1xp1": ((1, 0), (0, 1), (-1, 0), (0, -1)),
    "f1": ((1, 0), (0, 1), (-1, -1), (0, -1)),
    "p112": ((1, 0), (0, 1), (-1, -2)),
    "p113": ((1, 0), (0, 1), (-1, -3)),
    "wide": ((1, 0), (0, 1), (-1, -2), (-2, -1)),
}


def example_names() -> tuple[str, ...]:
    return tuple(sorted(BUILTIN)) + ("f:a",)


def example_fan(name: str) -> tuple[LatticeVec, ...]:
    """Rays of a named fan; f:a is the Hirzebruch family with parameter a."""
    if name in BUILTIN:
        return BUILTIN[name]
    if name.startswith("f:"):
        try:
            a = int(name[2:])
        except ValueError:
            raise ValueError(f"bad Hirzebruch parameter in {name!r}") from None
        if a < 0:
            raise ValueError("the Hirzebruch parameter must be nonnegative")
        return ((1, 0), (0, 1), (-1, -a), (0, -1))
    known = ", ".join(example_names())
    raise ValueError(f"unknown example {name!r}; available: {known}")
