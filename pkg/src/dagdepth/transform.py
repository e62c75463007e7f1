"""Merging duplicate copies and computing the closure of a decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from dagdepth.decomposition import (
    Decomposition,
    check_fits,
    check_valid,
    copy_key,
    is_valid,
)
from dagdepth.digraph import Digraph, dag_depth_and_levels, topological_order
from dagdepth.errors import DagDepthError, MalformedDecompositionError


def _merged_edges(dec: Decomposition, a: str, b: str) -> set[tuple[str, str]]:
    """Edges of P after replacing `b` by `a`; edges between the two are dropped."""
    edges = set()
    for x, y in dec.P.edges:
        if {x, y} == {a, b}:
            continue
        x = a if x == b else x
        y = a if y == b else y
        edges.add((x, y))
    return edges


def _require_pair(dec: Decomposition, a: str, b: str) -> None:
    for cid in (a, b):
        if cid not in dec.cidx:
            raise DagDepthError(f"unknown copy {cid!r}")
    if a == b:
        raise DagDepthError("cannot merge a copy with itself")


def merge_pair(dec: Decomposition, a: str, b: str) -> Decomposition:
    """Replace copies `a` and `b` by one copy (keeping id `a`).

    The merged copy inherits the union of both in- and out-edges.  No cover
    or depth condition is checked; see :func:`merge_verdict`.
    """
    _require_pair(dec, a, b)
    if dec.org[a] != dec.org[b]:
        raise DagDepthError(
            f"copies {a!r} and {b!r} have different originals "
            f"({dec.org[a]!r} vs {dec.org[b]!r})"
        )
    org = {c: v for c, v in dec.org.items() if c != b}
    return Decomposition.from_edges(org, _merged_edges(dec, a, b))


@dataclass(frozen=True)
class MergeVerdict:
    same_org: bool
    stays_dag: bool
    keeps_cover: bool
    keeps_depth: bool

    @property
    def mergeable(self) -> bool:
        return self.same_org and self.stays_dag and self.keeps_cover

    @property
    def optimally_mergeable(self) -> bool:
        return self.mergeable and self.keeps_depth

    def __str__(self) -> str:
        return (
            f"same_org={int(self.same_org)} stays_dag={int(self.stays_dag)} "
            f"keeps_cover={int(self.keeps_cover)} keeps_depth={int(self.keeps_depth)} "
            f"mergeable={int(self.mergeable)} optimal={int(self.optimally_mergeable)}"
        )


def merge_verdict(graph: Digraph, dec: Decomposition, a: str, b: str) -> MergeVerdict:
    """Evaluate all four merge conditions, each independently of the others.

    If the copies have different originals the merged copy takes `a`'s.
    A merge that would close a cycle can neither keep the cover condition
    nor the depth.
    """
    _require_pair(dec, a, b)
    ia, ib = dec.cidx[a], dec.cidx[b]
    same_org = dec.org[a] == dec.org[b]
    stays_dag = not (dec.descendants[ia] >> ib & 1 or dec.descendants[ib] >> ia & 1)
    edges = _merged_edges(dec, a, b)
    org = {c: v for c, v in dec.org.items() if c != b}
    merged_graph = Digraph(tuple(org), frozenset(edges))
    if not stays_dag or topological_order(merged_graph) is None:
        return MergeVerdict(same_org, stays_dag, False, False)
    merged = Decomposition(merged_graph, org)
    try:
        keeps_cover = is_valid(graph, merged)
    except MalformedDecompositionError:
        keeps_cover = False
    keeps_depth = dag_depth_and_levels(merged_graph).depth <= dec.depth
    return MergeVerdict(same_org, stays_dag, keeps_cover, keeps_depth)


def _scan_order(dec: Decomposition) -> list[str]:
    levels = dec.levels
    return sorted(dec.copies, key=lambda c: (dec.org[c], levels[c], copy_key(c)))


def reduce(graph: Digraph, dec: Decomposition) -> Decomposition:
    """Greedily merge optimally mergeable pairs until none is left.

    Pairs are scanned by (original, level, copy-id); the first qualifying
    pair is merged and the scan restarts.  The result is valid, has the
    same depth, and is deterministic for a given input.
    """
    violation = check_valid(graph, dec)
    if violation is not None:
        raise DagDepthError(f"decomposition is not valid: {violation}")
    while True:
        for a, b in combinations(_scan_order(dec), 2):
            if dec.org[a] != dec.org[b]:
                continue
            if merge_verdict(graph, dec, a, b).optimally_mergeable:
                dec = merge_pair(dec, a, b)
                break
        else:
            return dec


def closure_admits(dec: Decomposition, u: str, v: str) -> bool:
    """Whether every copy of `u` satisfies the cover condition for an edge to `v`."""
    copies_u = dec.copies_of.get(u, 0)
    return all(dec.covers(i, v) for i in range(len(dec.copies)) if copies_u >> i & 1)


def closure(graph: Digraph, dec: Decomposition) -> Digraph:
    """The largest digraph on V(D) for which `dec` is still valid.

    Whether an edge ``(u, v)`` is admissible depends only on P and org, so
    a single pass over ordered pairs gives the fixpoint.
    """
    violation = check_valid(graph, dec)
    if violation is not None:
        raise DagDepthError(f"decomposition is not valid: {violation}")
    edges = frozenset(
        (u, v)
        for u in graph.vertices
        for v in graph.vertices
        if u != v and closure_admits(dec, u, v)
    )
    return Digraph(graph.vertices, edges)


def is_partial_closure(graph: Digraph, dec: Decomposition, candidate: Digraph) -> bool:
    if candidate.vertices != graph.vertices:
        raise DagDepthError("partial closure must have the same vertex set")
    check_fits(graph, dec)
    return graph.edges <= candidate.edges and is_valid(candidate, dec)
