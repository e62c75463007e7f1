"""Directed graphs, the ``.dg`` text format, reachability and DAG queries.

Vertices are whitespace-free string tokens.  A :class:`Digraph` keeps its
vertices in lexicographic order and every query that returns an ordered
result follows that order, so outputs are deterministic.

Internally most algorithms work on ints used as bitsets over the vertex
order (bit ``i`` is ``vertices[i]``); see :attr:`Digraph.succ_masks`.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from dagdepth._bits import iter_bits, reach
from dagdepth.errors import NotADagError, ParseError, UnknownVertexError


@dataclass(frozen=True)
class Digraph:
    """A finite simple digraph without self-loops."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        verts = tuple(sorted(set(self.vertices)))
        edges = frozenset((str(a), str(b)) for a, b in self.edges)
        known = set(verts)
        for name in verts:
            _check_name(name)
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if a not in known or b not in known:
                raise UnknownVertexError(f"edge ({a}, {b}) has an undeclared endpoint")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[str, str]], vertices: Iterable[str] = ()
    ) -> Digraph:
        """Build a digraph; edge endpoints are declared implicitly."""
        edges = [(str(a), str(b)) for a, b in edges]
        verts = set(vertices)
        for a, b in edges:
            verts.add(a)
            verts.add(b)
        return cls(tuple(verts), frozenset(edges))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.index

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def succ_masks(self) -> tuple[int, ...]:
        """Out-neighbourhood of each vertex as a bitset."""
        masks = [0] * len(self.vertices)
        for a, b in self.edges:
            masks[self.index[a]] |= 1 << self.index[b]
        return tuple(masks)

    @cached_property
    def pred_masks(self) -> tuple[int, ...]:
        masks = [0] * len(self.vertices)
        for a, b in self.edges:
            masks[self.index[b]] |= 1 << self.index[a]
        return tuple(masks)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    def require(self, vertex: str) -> int:
        """Index of `vertex`, raising :class:`UnknownVertexError` if absent."""
        try:
            return self.index[vertex]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {vertex!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.require(name)
        return mask

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.vertices[i] for i in iter_bits(mask))

    def out_neighbors(self, vertex: str) -> tuple[str, ...]:
        return self.names_of(self.succ_masks[self.require(vertex)])

    def in_neighbors(self, vertex: str) -> tuple[str, ...]:
        return self.names_of(self.pred_masks[self.require(vertex)])

    def out_degree(self, vertex: str) -> int:
        return len(self.out_neighbors(vertex))

    def in_degree(self, vertex: str) -> int:
        return len(self.in_neighbors(vertex))

    def induced(self, names: Iterable[str]) -> Digraph:
        keep = set(names)
        for name in keep:
            self.require(name)
        return Digraph(
            tuple(keep),
            frozenset((a, b) for a, b in self.edges if a in keep and b in keep),
        )

    def induced_mask(self, mask: int) -> Digraph:
        return self.induced(self.names_of(mask))

    def remove(self, vertex: str) -> Digraph:
        self.require(vertex)
        return self.induced(v for v in self.vertices if v != vertex)

    def with_edges(self, extra: Iterable[tuple[str, str]]) -> Digraph:
        return Digraph(self.vertices, self.edges | frozenset(extra))

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not name:
        raise ValueError("vertex names must be nonempty strings")
    if "#" in name or any(ch.isspace() for ch in name):
        raise ValueError(f"invalid vertex name {name!r}")


def iter_records(text: str):
    """Yield (line number, tokens) for each non-blank, comment-stripped line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_digraph(text: str, source: str | None = None) -> Digraph:
    """Parse the ``.dg`` format.

    ``v <name>`` declares a vertex and ``e <from> <to>`` an edge; ``#``
    starts a comment.  Errors carry the offending line number.
    """
    vertices: set[str] = set()
    edges: set[tuple[str, str]] = set()
    for lineno, tokens in iter_records(text):
        kind = tokens[0]
        if kind == "v":
            if len(tokens) != 2:
                raise ParseError("expected 'v <name>'", lineno, source)
            vertices.add(tokens[1])
        elif kind == "e":
            if len(tokens) != 3:
                raise ParseError("expected 'e <from> <to>'", lineno, source)
            a, b = tokens[1], tokens[2]
            if a == b:
                raise ParseError(f"self-loop on {a!r} is not allowed", lineno, source)
            vertices.update((a, b))
            edges.add((a, b))
        else:
            raise ParseError(f"unknown record type {kind!r}", lineno, source)
    if not vertices:
        raise ParseError("digraph has no vertices", None, source)
    return Digraph(tuple(vertices), frozenset(edges))


def serialize_digraph(graph: Digraph) -> str:
    touched = {v for edge in graph.edges for v in edge}
    lines = [f"v {v}" for v in graph.vertices if v not in touched]
    lines += [f"e {a} {b}" for a, b in graph.sorted_edges()]
    return "\n".join(lines) + "\n"


def reachable_set(graph: Digraph, vertex: str) -> frozenset[str]:
    """All vertices with a directed path from `vertex`, including itself."""
    start = graph.require(vertex)
    return frozenset(graph.names_of(reach(graph.succ_masks, start, graph.full_mask)))


@dataclass(frozen=True)
class Fragment:
    """A maximal single-source reachability set."""

    source: str
    members: frozenset[str]


def fragment_masks(succ: tuple[int, ...], mask: int) -> list[tuple[int, int]]:
    """Reachable fragments of the subgraph induced by `mask`.

    Returns ``(source index, member mask)`` pairs ordered by source.  Equal
    member sets are reported once, under the smallest source.
    """
    reaches = [(i, reach(succ, i, mask)) for i in iter_bits(mask)]
    result = []
    seen: set[int] = set()
    for i, r in reaches:
        if r in seen:
            continue
        if any(r != other and r & other == r for _, other in reaches):
            continue
        seen.add(r)
        result.append((i, r))
    return result


def reachable_fragments(graph: Digraph) -> list[Fragment]:
    if not graph.vertices:
        raise ValueError("empty digraph has no fragments")
    return [
        Fragment(graph.vertices[src], frozenset(graph.names_of(members)))
        for src, members in fragment_masks(graph.succ_masks, graph.full_mask)
    ]


@dataclass(frozen=True)
class DagStructure:
    is_dag: bool
    roots: frozenset[str]
    leaves: frozenset[str]


def topological_order(graph: Digraph) -> list[int] | None:
    """Kahn's algorithm over vertex indices; None if there is a cycle."""
    indeg = [len(list(iter_bits(m))) for m in graph.pred_masks]
    ready = [i for i, d in enumerate(indeg) if d == 0]
    order = []
    while ready:
        i = ready.pop()
        order.append(i)
        for j in iter_bits(graph.succ_masks[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if len(order) != len(graph.vertices):
        return None
    return order


def dag_structure(graph: Digraph) -> DagStructure:
    roots = frozenset(v for v, m in zip(graph.vertices, graph.pred_masks) if not m)
    leaves = frozenset(v for v, m in zip(graph.vertices, graph.succ_masks) if not m)
    return DagStructure(topological_order(graph) is not None, roots, leaves)


@dataclass(frozen=True)
class DepthInfo:
    """Longest-path data of a DAG, counted in vertices."""

    depth: int
    level: dict[str, int]
    vdepth: dict[str, int]


def dag_depth_and_levels(graph: Digraph) -> DepthInfo:
    order = topological_order(graph)
    if order is None:
        raise NotADagError("graph has a directed cycle")
    n = len(graph.vertices)
    level = [1] * n
    for i in order:
        for j in iter_bits(graph.succ_masks[i]):
            level[j] = max(level[j], level[i] + 1)
    vdepth = [1] * n
    for i in reversed(order):
        for j in iter_bits(graph.succ_masks[i]):
            vdepth[i] = max(vdepth[i], vdepth[j] + 1)
    return DepthInfo(
        depth=max(vdepth, default=0),
        level=dict(zip(graph.vertices, level)),
        vdepth=dict(zip(graph.vertices, vdepth)),
    )
