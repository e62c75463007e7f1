"""DAG-depth decompositions: a DAG of copies plus a map to original vertices.

A decomposition ``(P, org)`` of a digraph ``D`` is *valid* when every copy
``c`` and every out-neighbour ``u`` of ``org(c)`` in ``D`` satisfy

1. some copy of ``u`` is a proper descendant of ``c``, or
2. every path from a root of ``P`` to ``c`` passes through a copy of ``u``.

Copy-ids are opaque tokens.  Numeric ids compare numerically and come
before non-numeric ones (see :func:`copy_key`); that order is what
"canonical" means for copies throughout the package.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import count
from types import MappingProxyType

from dagdepth._bits import iter_bits, lowest, reach_from
from dagdepth.digraph import Digraph, dag_depth_and_levels, iter_records, topological_order
from dagdepth.errors import MalformedDecompositionError, NotADagError, ParseError
from dagdepth.solver import DEFAULT_LIMIT, DdpSolver


def copy_key(copy_id: str) -> tuple[int, int, str]:
    if copy_id.isdigit():
        return (0, int(copy_id), copy_id)
    return (1, 0, copy_id)


@dataclass(frozen=True, eq=False)
class Decomposition:
    P: Digraph
    org: Mapping[str, str]

    def __post_init__(self) -> None:
        org = MappingProxyType({str(k): str(v) for k, v in self.org.items()})
        if set(org) != set(self.P.vertices):
            missing = sorted(set(self.P.vertices) - set(org), key=copy_key)
            extra = sorted(set(org) - set(self.P.vertices), key=copy_key)
            raise MalformedDecompositionError(
                f"org map does not match the copies (missing {missing}, extra {extra})"
            )
        if topological_order(self.P) is None:
            raise NotADagError("decomposition graph has a directed cycle")
        object.__setattr__(self, "org", org)

    @classmethod
    def from_edges(
        cls, org: Mapping[str, str], edges: Iterable[tuple[str, str]] = ()
    ) -> Decomposition:
        return cls(Digraph(tuple(org), frozenset(edges)), org)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.P == other.P and dict(self.org) == dict(other.org)

    def __len__(self) -> int:
        return len(self.copies)

    def __repr__(self) -> str:
        return f"<Decomposition copies={len(self)} depth={self.depth}>"

    # Copy-indexed structure.  Bit i of every mask below is self.copies[i].

    @cached_property
    def copies(self) -> tuple[str, ...]:
        return tuple(sorted(self.P.vertices, key=copy_key))

    @cached_property
    def cidx(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.copies)}

    @cached_property
    def children(self) -> tuple[int, ...]:
        masks = [0] * len(self.copies)
        for a, b in self.P.edges:
            masks[self.cidx[a]] |= 1 << self.cidx[b]
        return tuple(masks)

    @cached_property
    def parents(self) -> tuple[int, ...]:
        masks = [0] * len(self.copies)
        for a, b in self.P.edges:
            masks[self.cidx[b]] |= 1 << self.cidx[a]
        return tuple(masks)

    @cached_property
    def roots_mask(self) -> int:
        mask = 0
        for i, p in enumerate(self.parents):
            if not p:
                mask |= 1 << i
        return mask

    @cached_property
    def descendants(self) -> tuple[int, ...]:
        """Proper descendants of each copy."""
        order = self._topo()
        desc = [0] * len(self.copies)
        for i in reversed(order):
            for j in iter_bits(self.children[i]):
                desc[i] |= (1 << j) | desc[j]
        return tuple(desc)

    def _topo(self) -> list[int]:
        indeg = [bin(p).count("1") for p in self.parents]
        ready = [i for i, d in enumerate(indeg) if d == 0]
        order = []
        while ready:
            i = ready.pop()
            order.append(i)
            for j in iter_bits(self.children[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
        return order

    @cached_property
    def copies_of(self) -> dict[str, int]:
        masks: dict[str, int] = {}
        for i, c in enumerate(self.copies):
            masks[self.org[c]] = masks.get(self.org[c], 0) | (1 << i)
        return masks

    @cached_property
    def depth(self) -> int:
        return dag_depth_and_levels(self.P).depth

    @cached_property
    def levels(self) -> dict[str, int]:
        return dag_depth_and_levels(self.P).level

    @cached_property
    def _unblocked(self) -> dict[str, int]:
        return {}

    def reachable_avoiding(self, original: str) -> int:
        """Copies reachable from a root without passing a copy of `original`."""
        cached = self._unblocked.get(original)
        if cached is None:
            allowed = ((1 << len(self.copies)) - 1) & ~self.copies_of.get(original, 0)
            cached = reach_from(self.children, self.roots_mask, allowed)
            self._unblocked[original] = cached
        return cached

    def covers(self, copy: int, neighbor: str) -> bool:
        """Whether the copy with index `copy` satisfies the cover condition for `neighbor`."""
        if self.descendants[copy] & self.copies_of.get(neighbor, 0):
            return True
        return not (self.reachable_avoiding(neighbor) >> copy) & 1

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.copies[i] for i in iter_bits(mask))


def check_fits(graph: Digraph, dec: Decomposition) -> None:
    """Raise unless `org` maps onto exactly the vertices of `graph`."""
    image = set(dec.org.values())
    stray = sorted(image - set(graph.vertices))
    if stray:
        raise MalformedDecompositionError(f"org maps to vertices not in the digraph: {stray}")
    uncovered = sorted(set(graph.vertices) - image)
    if uncovered:
        raise MalformedDecompositionError(f"org is not surjective; no copy of {uncovered}")


def parse_decomposition(text: str, source: str | None = None) -> Decomposition:
    """Parse the ``.dec`` format (``n <copy> <org>`` and ``e <copy> <copy>``)."""
    org: dict[str, str] = {}
    edges: list[tuple[int, str, str]] = []
    for lineno, tokens in iter_records(text):
        kind = tokens[0]
        if kind == "n":
            if len(tokens) != 3:
                raise ParseError("expected 'n <copy-id> <org-name>'", lineno, source)
            cid, name = tokens[1], tokens[2]
            if cid in org and org[cid] != name:
                raise ParseError(f"copy {cid!r} declared twice", lineno, source)
            org[cid] = name
        elif kind == "e":
            if len(tokens) != 3:
                raise ParseError("expected 'e <copy-id> <copy-id>'", lineno, source)
            if tokens[1] == tokens[2]:
                raise ParseError(f"self-loop on copy {tokens[1]!r}", lineno, source)
            edges.append((lineno, tokens[1], tokens[2]))
        else:
            raise ParseError(f"unknown record type {kind!r}", lineno, source)
    for lineno, a, b in edges:
        for cid in (a, b):
            if cid not in org:
                raise ParseError(f"edge uses undeclared copy {cid!r}", lineno, source)
    if not org:
        raise ParseError("decomposition has no copies", None, source)
    try:
        return Decomposition.from_edges(org, ((a, b) for _, a, b in edges))
    except NotADagError as exc:
        raise ParseError(str(exc), None, source) from None


def serialize_decomposition(dec: Decomposition, header: bool = False) -> str:
    lines = []
    if header:
        lines.append(f"# copies {len(dec)} depth {dec.depth}")
    lines += [f"n {c} {dec.org[c]}" for c in dec.copies]
    lines += [
        f"e {a} {b}"
        for a, b in sorted(dec.P.edges, key=lambda e: (copy_key(e[0]), copy_key(e[1])))
    ]
    return "\n".join(lines) + "\n"


def build_decomposition(graph: Digraph, limit: int = DEFAULT_LIMIT) -> Decomposition:
    """Construct a valid decomposition whose depth equals the DAG-depth.

    Each fragment of the current subgraph gets as root its lexicographically
    smallest optimal vertex, and the decomposition of the fragment minus
    that vertex hangs below it.  Fragments that pick the same root share a
    single root copy, and the subgraph below it is the union of those
    fragments minus the root; fragments with different roots are built
    independently, so shared vertices are duplicated.  Copy-ids are
    ``0, 1, 2, ...`` in depth-first creation order.
    """
    solver = DdpSolver(graph, limit)
    ids = count()
    org: dict[str, str] = {}
    edges: list[tuple[str, str]] = []

    def build(mask: int) -> list[str]:
        groups: dict[int, int] = {}
        for frag in solver.fragments(mask):
            if frag & (frag - 1):
                root = solver.best_roots(frag)[0]
            else:
                root = lowest(frag)
            groups[root] = groups.get(root, 0) | frag
        roots = []
        for root in sorted(groups):
            cid = str(next(ids))
            org[cid] = graph.vertices[root]
            rest = groups[root] & ~(1 << root)
            if rest:
                edges.extend((cid, child) for child in build(rest))
            roots.append(cid)
        return roots

    build(graph.full_mask)
    return Decomposition.from_edges(org, edges)


@dataclass(frozen=True)
class Violation:
    """A copy and out-neighbour for which the cover condition fails.

    `witness_path` runs from a root of P to `copy` and contains no copy of
    `neighbor`.
    """

    copy: str
    original: str
    neighbor: str
    witness_path: tuple[str, ...]

    def __str__(self) -> str:
        return (
            f"VIOLATION copy={self.copy} org={self.original} "
            f"neighbor={self.neighbor} path={','.join(self.witness_path)}"
        )


def _witness(dec: Decomposition, target: int, blocked: int) -> tuple[str, ...]:
    """Shortest root-to-target path in P avoiding `blocked`, by BFS in copy order."""
    parent: dict[int, int | None] = {}
    frontier = [i for i in iter_bits(dec.roots_mask & ~blocked)]
    for i in frontier:
        parent[i] = None
    while target not in parent:
        nxt = []
        for i in frontier:
            for j in iter_bits(dec.children[i] & ~blocked):
                if j not in parent:
                    parent[j] = i
                    nxt.append(j)
        frontier = nxt
    path = []
    node: int | None = target
    while node is not None:
        path.append(dec.copies[node])
        node = parent[node]
    return tuple(reversed(path))


def check_valid(graph: Digraph, dec: Decomposition) -> Violation | None:
    """Return the first cover violation in canonical order, or None if valid."""
    check_fits(graph, dec)
    for i, cid in enumerate(dec.copies):
        original = dec.org[cid]
        for u in graph.out_neighbors(original):
            if not dec.covers(i, u):
                path = _witness(dec, i, dec.copies_of[u])
                return Violation(cid, original, u, path)
    return None


def is_valid(graph: Digraph, dec: Decomposition) -> bool:
    return check_valid(graph, dec) is None


def is_optimal(graph: Digraph, dec: Decomposition, limit: int = DEFAULT_LIMIT) -> bool:
    check_fits(graph, dec)
    return dec.depth == DdpSolver(graph, limit).ddp()
