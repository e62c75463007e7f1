"""Slow, independent reference implementations used only by the tests.

Nothing here touches the bitmask machinery of the package: graphs are
plain dicts of sets and every quantity is computed the obvious way.
"""

from __future__ import annotations

import random
from functools import lru_cache

from dagdepth import Decomposition, Digraph


def adjacency(graph: Digraph) -> dict[str, set[str]]:
    adj = {v: set() for v in graph.vertices}
    for a, b in graph.edges:
        adj[a].add(b)
    return adj


def reach_naive(adj: dict[str, set[str]], start: str, allowed: frozenset[str]) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in allowed and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def ddp_naive(graph: Digraph) -> int:
    """Plain recursion on vertex sets, no memoisation."""
    adj = adjacency(graph)

    def rec(vs: frozenset[str]) -> int:
        if len(vs) == 1:
            return 1
        reaches = [frozenset(reach_naive(adj, v, vs)) for v in sorted(vs)]
        frags = {r for r in reaches if not any(r < other for other in reaches)}
        if len(frags) == 1:
            return 1 + min(rec(vs - {v}) for v in vs)
        return max(rec(f) for f in frags)

    return rec(frozenset(graph.vertices))


def copnumber_naive(graph: Digraph) -> int:
    """Smallest k such that k placements always catch the robber (iterative deepening)."""
    adj = adjacency(graph)
    verts = frozenset(graph.vertices)

    @lru_cache(maxsize=None)
    def cops_win(covered: frozenset[str], robber: str, budget: int) -> bool:
        if budget == 0:
            return False
        free = verts - covered
        for t in sorted(free):
            opts = reach_naive(adj, robber, free) - {t}
            if all(cops_win(covered | {t}, r, budget - 1) for r in opts):
                return True
        return False

    k = 1
    while not all(cops_win(frozenset(), s, k) for s in verts):
        k += 1
    return k


def root_paths(dec: Decomposition, target: str) -> list[list[str]]:
    """Every path in P from a root to `target`, by explicit enumeration."""
    parents = {c: [] for c in dec.P.vertices}
    for a, b in dec.P.edges:
        parents[b].append(a)
    out = []

    def back(node: str, suffix: list[str]) -> None:
        path = [node] + suffix
        if not parents[node]:
            out.append(path)
        for p in parents[node]:
            back(p, path)

    back(target, [])
    return out


def strict_descendants(dec: Decomposition, copy: str) -> set[str]:
    children = {c: set() for c in dec.P.vertices}
    for a, b in dec.P.edges:
        children[a].add(b)
    seen: set[str] = set()
    stack = list(children[copy])
    while stack:
        x = stack.pop()
        if x not in seen:
            seen.add(x)
            stack.extend(children[x])
    return seen


def cover_holds(dec: Decomposition, copy: str, neighbor: str) -> bool:
    if any(dec.org[d] == neighbor for d in strict_descendants(dec, copy)):
        return True
    return all(any(dec.org[c] == neighbor for c in p) for p in root_paths(dec, copy))


def valid_naive(graph: Digraph, dec: Decomposition) -> bool:
    adj = adjacency(graph)
    return all(cover_holds(dec, c, u) for c in dec.P.vertices for u in adj[dec.org[c]])


def longest_path_vertices(dec: Decomposition) -> int:
    return max(len(p) for c in dec.P.vertices for p in root_paths(dec, c))


def random_digraph(rng: random.Random, n: int, p: float, prefix: str = "v") -> Digraph:
    names = [f"{prefix}{i}" for i in range(n)]
    edges = [(a, b) for a in names for b in names if a != b and rng.random() < p]
    return Digraph.from_edges(edges, names)


def all_digraphs(n: int):
    names = [chr(ord("A") + i) for i in range(n)]
    arcs = [(a, b) for a in names for b in names if a != b]
    for bits in range(1 << len(arcs)):
        yield Digraph.from_edges([e for k, e in enumerate(arcs) if bits >> k & 1], names)
