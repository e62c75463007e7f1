"""Exact DAG-depth by memoised recursion over induced vertex subsets.

The recursion:

* one vertex: depth 1;
* a single reachable fragment: 1 + the best depth after deleting one vertex;
* several fragments: the largest depth among them.

Each induced subgraph is identified by a bitmask over the ambient vertex
order, so the memo table has at most ``2**n`` entries.
"""

from __future__ import annotations

from dagdepth._bits import iter_bits, popcount
from dagdepth.digraph import Digraph, fragment_masks
from dagdepth.errors import DagDepthError, SizeLimitError

DEFAULT_LIMIT = 20


class DdpSolver:
    """DAG-depth of the induced subgraphs of one ambient digraph."""

    def __init__(self, graph: Digraph, limit: int = DEFAULT_LIMIT):
        if not graph.vertices:
            raise DagDepthError("DAG-depth of an empty digraph is undefined")
        if len(graph.vertices) > limit:
            raise SizeLimitError(
                f"{len(graph.vertices)} vertices exceeds the exact solver limit of {limit}"
            )
        self.graph = graph
        self._succ = graph.succ_masks
        self._memo: dict[int, int] = {}
        self._fragments: dict[int, list[int]] = {}

    def fragments(self, mask: int) -> list[int]:
        """Member masks of the reachable fragments of ``graph[mask]``."""
        frags = self._fragments.get(mask)
        if frags is None:
            frags = [m for _, m in fragment_masks(self._succ, mask)]
            self._fragments[mask] = frags
        return frags

    def ddp(self, mask: int | None = None) -> int:
        if mask is None:
            mask = self.graph.full_mask
        value = self._memo.get(mask)
        if value is not None:
            return value
        if popcount(mask) == 1:
            value = 1
        else:
            frags = self.fragments(mask)
            if len(frags) == 1:
                value = 1 + min(self.ddp(mask & ~(1 << v)) for v in iter_bits(mask))
            else:
                value = max(self.ddp(f) for f in frags)
        self._memo[mask] = value
        return value

    def best_roots(self, mask: int | None = None) -> list[int]:
        """Indices ``v`` minimising ``ddp(mask - v)``, in vertex order."""
        if mask is None:
            mask = self.graph.full_mask
        if popcount(mask) < 2:
            raise DagDepthError("best roots need at least two vertices")
        if len(self.fragments(mask)) != 1:
            raise DagDepthError("best roots are defined only for a single reachable fragment")
        scores = {v: self.ddp(mask & ~(1 << v)) for v in iter_bits(mask)}
        best = min(scores.values())
        return [v for v, s in scores.items() if s == best]


def ddp(graph: Digraph, limit: int = DEFAULT_LIMIT) -> int:
    """DAG-depth of `graph` (at least one vertex, at most `limit`)."""
    return DdpSolver(graph, limit).ddp()


def best_roots(graph: Digraph, limit: int = DEFAULT_LIMIT) -> frozenset[str]:
    """Vertices whose removal leaves the smallest DAG-depth.

    Only defined when `graph` is one reachable fragment with more than one
    vertex.
    """
    solver = DdpSolver(graph, limit)
    return frozenset(graph.vertices[v] for v in solver.best_roots())
