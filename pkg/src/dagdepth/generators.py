"""Digraph families used as fixtures and by ``dagdepth gen``."""

from __future__ import annotations

from dagdepth.digraph import Digraph

FIG1_EDGES = [("A", "C"), ("B", "C"), ("C", "D"), ("D", "C"), ("E", "D"), ("F", "D")]

FIG2_EDGES = [
    ("A", "B"), ("B", "E"), ("C", "D"), ("D", "G"),
    ("E", "F"), ("F", "E"), ("G", "F"), ("F", "G"),
    ("G", "H"), ("H", "G"), ("I", "H"), ("H", "I"),
    ("I", "J"), ("J", "I"), ("E", "J"), ("J", "E"),
]  # fmt: skip


def fig1() -> Digraph:
    """Six vertices; two 2-cycles feeding into each other (C <-> D)."""
    return Digraph.from_edges(FIG1_EDGES)


def fig2() -> Digraph:
    return Digraph.from_edges(FIG2_EDGES)


def expo(n: int) -> Digraph:
    """Vertices a1..an, b1..bn with an edge x_i -> y_j for every i < j.

    Its fragment-by-fragment decomposition has ``2**(n+1) - 2`` copies.
    """
    if n < 1:
        raise ValueError("expo needs n >= 1")
    names = [f"{x}{i}" for x in "ab" for i in range(1, n + 1)]
    edges = [
        (f"{x}{i}", f"{y}{j}")
        for x in "ab"
        for y in "ab"
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]
    return Digraph.from_edges(edges, names)


def path(n: int) -> Digraph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    names = [f"v{i}" for i in range(1, n + 1)]
    return Digraph.from_edges(zip(names, names[1:]), names)


def bicomplete(n: int) -> Digraph:
    if n < 1:
        raise ValueError("bicomplete needs n >= 1")
    names = [f"v{i}" for i in range(1, n + 1)]
    return Digraph.from_edges(((a, b) for a in names for b in names if a != b), names)


FAMILIES = {
    "expo": expo,
    "fig1": fig1,
    "fig2": fig2,
    "path": path,
    "bicomplete": bicomplete,
}
PARAMETRIC = {"expo", "path", "bicomplete"}


def generate(family: str, n: int | None = None) -> Digraph:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(sorted(FAMILIES))}")
    if family in PARAMETRIC:
        if n is None:
            raise ValueError(f"family {family!r} needs a size parameter")
        return FAMILIES[family](n)
    if n is not None:
        raise ValueError(f"family {family!r} takes no parameter")
    return FAMILIES[family]()
