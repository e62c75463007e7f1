"""Small helpers for vertex sets encoded as Python ints."""

from __future__ import annotations

from collections.abc import Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def reach(succ: Sequence[int], start: int, allowed: int) -> int:
    """Vertices reachable from `start` using only vertices in `allowed`.

    `start` itself is always included, even if it is not in `allowed`.
    """
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= succ[i]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def reach_from(succ: Sequence[int], starts: int, allowed: int) -> int:
    """Vertices reachable from any vertex in `starts` (starts outside `allowed` are dropped)."""
    seen = starts & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= succ[i]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen
