"""The lift-free cops-and-robber game on digraphs.

Placed cops never leave.  The robber is visible, infinitely fast, moves
along edges through uncovered vertices, and may run through the vertex a
cop is about to land on, but may not stop there.  The robber is caught when
a cop lands on him and he has nowhere else to go.

One round of a decomposition-guided play:

1. the cop player picks a copy ``w`` from :func:`legal_cop_choices` for the
   robber's current position and announces ``t = org(w)``;
2. the robber relocates to any vertex of :func:`robber_options`;
3. ``t`` is covered if it was still free (a cop is used), otherwise the
   round is a skip; the cursor moves to ``w``;
4. the robber is caught when step 2 left him no option.

Letting the robber move again before the cop's choice adds nothing: every
vertex he could reach then was already reachable in step 2.

Traces are serialised one event per line: ``R <vertex>`` (robber start or
move), ``C <copy> <vertex>`` (cop announced and placed), ``S <copy>``
(skip, vertex already covered), ``X`` (capture), ``! stuck`` (no legal
choice while the robber is free).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

from dagdepth._bits import iter_bits, reach
from dagdepth.decomposition import Decomposition, check_fits, copy_key
from dagdepth.digraph import Digraph
from dagdepth.errors import DagDepthError, IllegalMoveError, ParseError, SizeLimitError

VERIFY_LIMIT = 12
COPNUMBER_LIMIT = 8

ROBBER = "robber-move"
PLACE = "cop-place"
SKIP = "cop-skip"
CAPTURE = "capture"
STUCK = "stuck"


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.kind == ROBBER:
            return f"R {self.args[0]}"
        if self.kind == PLACE:
            return f"C {self.args[0]} {self.args[1]}"
        if self.kind == SKIP:
            return f"S {self.args[0]}"
        if self.kind == CAPTURE:
            return "X"
        return "! stuck"


def format_trace(events: Iterable[TraceEvent]) -> str:
    return "".join(f"{e}\n" for e in events)


def parse_trace(text: str) -> list[TraceEvent]:
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        match tokens:
            case ["R", v]:
                events.append(TraceEvent(ROBBER, (v,)))
            case ["C", c, v]:
                events.append(TraceEvent(PLACE, (c, v)))
            case ["S", c]:
                events.append(TraceEvent(SKIP, (c,)))
            case ["X"]:
                events.append(TraceEvent(CAPTURE))
            case ["!", "stuck"]:
                events.append(TraceEvent(STUCK))
            case _:
                raise ParseError(f"bad trace line {raw!r}", lineno)
    return events


def _options_mask(graph: Digraph, covered: int, pos: int, target: int | None) -> int:
    opts = reach(graph.succ_masks, pos, graph.full_mask & ~covered)
    if target is not None:
        opts &= ~(1 << target)
    return opts


def robber_options(
    graph: Digraph, covered: Iterable[str], pos: str, target: str | None = None
) -> frozenset[str]:
    """Where the robber at `pos` can end up while a cop heads for `target`.

    An empty result means the placement catches him.
    """
    covered_mask = graph.mask_of(covered)
    p = graph.require(pos)
    if covered_mask >> p & 1:
        raise DagDepthError(f"robber position {pos!r} is covered")
    t = None if target is None else graph.require(target)
    return frozenset(graph.names_of(_options_mask(graph, covered_mask, p, t)))


class _Play:
    """Copy-index view of (D, P, org) shared by the verifier and the trace runner."""

    def __init__(self, graph: Digraph, dec: Decomposition):
        check_fits(graph, dec)
        self.graph = graph
        self.dec = dec
        self.org_idx = [graph.index[dec.org[c]] for c in dec.copies]
        reach_self = [d | (1 << i) for i, d in enumerate(dec.descendants)]
        # reaches_copy_of[v]: copies with a path (length >= 0) to some copy of vertex v
        self.reaches_copy_of = []
        for v in graph.vertices:
            targets = dec.copies_of[v]
            mask = 0
            for i, below in enumerate(reach_self):
                if below & targets:
                    mask |= 1 << i
            self.reaches_copy_of.append(mask)

    def choices(self, cursor: int | None, robber: int) -> int:
        candidates = self.dec.roots_mask if cursor is None else self.dec.children[cursor]
        return candidates & self.reaches_copy_of[robber]


def legal_cop_choices(dec: Decomposition, cursor: str | None, robber: str) -> frozenset[str]:
    """Copies the next cop may be placed because of.

    Roots of P before the first cop, children of `cursor` afterwards; in
    both cases only those with a path in P to some copy of the robber's
    vertex.
    """
    if cursor is not None and cursor not in dec.cidx:
        raise DagDepthError(f"cursor {cursor!r} is not a copy of the decomposition")
    if robber not in dec.copies_of:
        raise DagDepthError(f"robber vertex {robber!r} has no copy")
    candidates = dec.roots_mask if cursor is None else dec.children[dec.cidx[cursor]]
    targets = dec.copies_of[robber]
    return frozenset(
        dec.copies[i]
        for i in iter_bits(candidates)
        if ((dec.descendants[i] | (1 << i)) & targets)
    )


@dataclass(frozen=True)
class VerifyReport:
    result: str
    max_cops: int | None = None
    counterexample: tuple[TraceEvent, ...] | None = None

    @property
    def won(self) -> bool:
        return self.result == "win"

    def __str__(self) -> str:
        if self.won:
            return f"WIN cops={self.max_cops}"
        return "LOSE\n" + format_trace(self.counterexample or ())


def verify_strategy(
    graph: Digraph, dec: Decomposition, limit: int = VERIFY_LIMIT
) -> VerifyReport:
    """Play every decomposition-guided strategy against every robber.

    Both the cop player's choices among legal copies and the robber's
    responses are quantified universally.  On a win, reports the most cops
    any play used; otherwise the shortest losing play (ties go to the first
    found in vertex/copy order).
    """
    if len(graph.vertices) > limit:
        raise SizeLimitError(
            f"{len(graph.vertices)} vertices exceeds the verifier limit of {limit}"
        )
    play = _Play(graph, dec)
    names = graph.vertices
    copies = dec.copies
    memo: dict[tuple[int, int, int], tuple[int | None, tuple[TraceEvent, ...] | None]] = {}

    def explore(covered: int, robber: int, cursor: int | None):
        # Returns (cops used in the worst play, None) or (None, shortest losing continuation).
        key = (covered, robber, -1 if cursor is None else cursor)
        hit = memo.get(key)
        if hit is not None:
            return hit
        choices = play.choices(cursor, robber)
        worst = 0
        loss: tuple[TraceEvent, ...] | None = None
        if not choices:
            loss = (TraceEvent(STUCK),)
        for w in iter_bits(choices):
            t = play.org_idx[w]
            if covered >> t & 1:
                head = TraceEvent(SKIP, (copies[w],))
                used = 0
            else:
                head = TraceEvent(PLACE, (copies[w], names[t]))
                used = 1
            options = _options_mask(graph, covered, robber, t)
            if not options:
                worst = max(worst, used)
                continue
            for r in iter_bits(options):
                cops, tail = explore(covered | (1 << t), r, w)
                if tail is None:
                    worst = max(worst, used + cops)
                    continue
                moved = (TraceEvent(ROBBER, (names[r],)),) if r != robber else ()
                cand = (head,) + moved + tail
                if loss is None or len(cand) < len(loss):
                    loss = cand
        result = (None, loss) if loss is not None else (worst, None)
        memo[key] = result
        return result

    best_cops = 0
    best_loss: tuple[TraceEvent, ...] | None = None
    for s in range(len(names)):
        cops, tail = explore(0, s, None)
        if tail is None:
            best_cops = max(best_cops, cops)
        else:
            cand = (TraceEvent(ROBBER, (names[s],)),) + tail
            if best_loss is None or len(cand) < len(best_loss):
                best_loss = cand
    if best_loss is not None:
        return VerifyReport("lose", counterexample=best_loss)
    return VerifyReport("win", max_cops=best_cops)


def copnumber_bruteforce(graph: Digraph, limit: int = COPNUMBER_LIMIT) -> int:
    """Fewest cops that catch every robber in unrestricted lift-free play.

    The cop player may aim at any uncovered vertex; this is a plain minimax
    over (covered set, robber position) and does not look at any
    decomposition.
    """
    n = len(graph.vertices)
    if n == 0:
        raise DagDepthError("cop number of an empty digraph is undefined")
    if n > limit:
        raise SizeLimitError(f"{n} vertices exceeds the cop-number oracle limit of {limit}")
    memo: dict[tuple[int, int], int] = {}

    def value(covered: int, robber: int) -> int:
        key = (covered, robber)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = n + 1
        for t in range(n):
            if covered >> t & 1:
                continue
            options = _options_mask(graph, covered, robber, t)
            worst = 0
            for r in iter_bits(options):
                worst = max(worst, value(covered | (1 << t), r))
                if 1 + worst >= best:
                    break
            best = min(best, 1 + worst)
        memo[key] = best
        return best

    return max(value(0, s) for s in range(n))


CopPolicy = Callable[[Sequence[str]], str]


def smallest_copy(choices: Sequence[str]) -> str:
    return min(choices, key=copy_key)


def run_trace(
    graph: Digraph,
    dec: Decomposition,
    robber_script: Sequence[str],
    cop_policy: CopPolicy = smallest_copy,
) -> list[TraceEvent]:
    """Play one game and return its events.

    ``robber_script[0]`` is the start vertex and entry ``i`` the robber's
    position after the ``i``-th cop decision.  Once the script runs out the
    robber stays put when allowed and otherwise takes the smallest option.
    `cop_policy` receives the legal copies in canonical order.
    """
    if not robber_script:
        raise IllegalMoveError("robber script is empty", 0)
    play = _Play(graph, dec)
    names = graph.vertices
    if robber_script[0] not in graph.index:
        raise IllegalMoveError(f"unknown start vertex {robber_script[0]!r}", 0)
    robber = graph.index[robber_script[0]]
    covered = 0
    cursor: int | None = None
    events = [TraceEvent(ROBBER, (names[robber],))]
    turn = 0
    while True:
        choices = play.choices(cursor, robber)
        if not choices:
            events.append(TraceEvent(STUCK))
            return events
        turn += 1
        legal = [dec.copies[i] for i in iter_bits(choices)]
        picked = cop_policy(legal)
        if picked not in legal:
            raise IllegalMoveError(f"cop policy picked {picked!r}, not among {legal}", turn)
        w = dec.cidx[picked]
        t = play.org_idx[w]
        if covered >> t & 1:
            events.append(TraceEvent(SKIP, (picked,)))
        else:
            events.append(TraceEvent(PLACE, (picked, names[t])))
        options = _options_mask(graph, covered, robber, t)
        if not options:
            events.append(TraceEvent(CAPTURE))
            return events
        if turn < len(robber_script):
            want = robber_script[turn]
            if want not in graph.index or not options >> graph.index[want] & 1:
                raise IllegalMoveError(
                    f"robber cannot reach {want!r}; options are {list(graph.names_of(options))}",
                    turn,
                )
            nxt = graph.index[want]
        elif options >> robber & 1:
            nxt = robber
        else:
            nxt = next(iter_bits(options))
        if nxt != robber:
            events.append(TraceEvent(ROBBER, (names[nxt],)))
        robber = nxt
        covered |= 1 << t
        cursor = w


def replay(graph: Digraph, dec: Decomposition, events: Sequence[TraceEvent]) -> list[TraceEvent]:
    """Re-run a recorded trace through :func:`run_trace`.

    Cop choices and robber moves are read back from `events`; the result
    equals `events` exactly when the trace is a legal play.
    """
    if not events or events[0].kind != ROBBER:
        raise IllegalMoveError("trace must start with the robber's position", 0)
    script = [events[0].args[0]]
    picks = []
    pos = script[0]
    for i, ev in enumerate(events[1:], start=1):
        if ev.kind in (PLACE, SKIP):
            picks.append(ev.args[0])
            nxt = events[i + 1] if i + 1 < len(events) else None
            if nxt is not None and nxt.kind == ROBBER:
                pos = nxt.args[0]
            script.append(pos)
    queue = iter(picks)

    def scripted(legal: Sequence[str]) -> str:
        return next(queue, legal[0])

    return run_trace(graph, dec, script, scripted)
