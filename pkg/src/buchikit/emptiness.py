"""Emptiness of simple generalized Rabin automata.

`run_emptiness` walks the automaton once, depth-first, maintaining a stack
of merged transition sets (partial SCCs of the color-0-free part).  Color-0
transitions are never entered directly: their targets are deferred to a
top-level worklist, because an accepting run takes color 0 only finitely
often.  When a new transition closes a cycle, the stack merges down to the
earliest set containing the revisited state, and the merged color union is
tested against the Inf colors; hitting them all proves non-emptiness, and
the search stops without looking at the rest of the automaton.  The walk
works against any implicit automaton that can enumerate initial states and
outgoing transitions, which is what the lazy inclusion product exploits.

`is_empty_oracle` answers the same question by whole-graph SCC analysis on
an explicit automaton, with scipy doing the graph work; it shares nothing
with the search above.
"""
from __future__ import annotations

from typing import Hashable, Iterable, NamedTuple, Protocol, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .automata import Sgra


class Edge(NamedTuple):
    """One transition of an implicit automaton; colors packed as a bitmask."""

    src: Hashable
    letter: int
    dst: Hashable
    mask: int


class ImplicitAutomaton(Protocol):
    num_colors: int

    def initial_states(self) -> Sequence[Hashable]: ...

    def outgoing(self, state) -> Sequence[Edge]: ...


class ExplicitGraph:
    """Implicit-automaton view of an explicit Sgra."""

    def __init__(self, a: Sgra):
        self.num_colors = a.num_colors
        self._initial = sorted(a.initial)
        out: list[tuple[Edge, ...]] = []
        for q in range(a.num_states):
            edges = []
            for t in a.out(q):
                mask = 0
                for c in t.colors:
                    mask |= 1 << c
                edges.append(Edge(t.src, t.letter, t.dst, mask))
            out.append(tuple(edges))
        self._out = out

    def initial_states(self):
        return self._initial

    def outgoing(self, state):
        return self._out[state]


class EmptinessResult(NamedTuple):
    empty: bool
    explored_transitions: int
    peak_stack_depth: int


class _Frame:
    """A set of transitions forming one partial SCC of the 0-free part."""

    __slots__ = ("mask", "srcs", "tgts", "has_cycle")

    def __init__(self, edge: Edge):
        self.mask = edge.mask
        self.srcs = {edge.src}
        self.tgts = {edge.dst}
        self.has_cycle = False  # set by the merge step, self-loops included

    def absorb(self, other: "_Frame"):
        self.mask |= other.mask
        self.srcs |= other.srcs
        self.tgts |= other.tgts


_ENTER, _LOOP = 0, 1


def run_emptiness(aut) -> EmptinessResult:
    """Decide emptiness with early termination; see the module docstring.

    Accepts an Sgra or any implicit automaton.  `outgoing` must be
    deterministic: same state, same list, every call.
    """
    if isinstance(aut, Sgra):
        aut = ExplicitGraph(aut)
    inf_mask = ((1 << aut.num_colors) - 1) & ~1

    explored: set[Edge] = set()
    entries: list[Edge] = []
    entry_seen: set[Edge] = set()

    def schedule(edges: Iterable[Edge]):
        for e in edges:
            if e not in entry_seen:
                entry_seen.add(e)
                entries.append(e)

    for s in aut.initial_states():
        schedule(aut.outgoing(s))

    stack: list[_Frame] = []
    peak = 0
    found = False
    ptr = 0
    while ptr < len(entries) and not found:
        t0 = entries[ptr]
        if t0 in explored:
            ptr += 1
            continue
        # Explore(t0), iteratively.  Call shape: [edge, stage, owned frame].
        calls: list[list] = [[t0, _ENTER, None]]
        while calls and not found:
            call = calls[-1]
            if call[1] == _ENTER:
                t: Edge = call[0]
                call[1] = _LOOP
                if t in explored:
                    calls.pop()
                    continue
                explored.add(t)
                if t.mask & 1:
                    # Fin transition: usable finitely often, so continue the
                    # search from its target in a fresh top-level round.
                    schedule(aut.outgoing(t.dst))
                    calls.pop()
                    continue
                frame = _Frame(t)
                stack.append(frame)
                # every non-bottom set continues from a target seen below it
                assert len(stack) == 1 or any(
                    t.src in fr.tgts for fr in stack[:-1]
                )
                if len(stack) > peak:
                    peak = len(stack)
                # merge down to the earliest set where the target re-occurs
                low = None
                for i, fr in enumerate(stack):
                    if t.dst in fr.srcs or (fr.has_cycle and t.dst in fr.tgts):
                        low = i
                        break
                if low is not None:
                    merged = stack[low]
                    for fr in stack[low + 1 :]:
                        merged.absorb(fr)
                    del stack[low + 1 :]
                    merged.has_cycle = True
                    if merged.mask & inf_mask == inf_mask:
                        found = True
                        break
                    if merged is frame:
                        call[2] = frame
                else:
                    call[2] = frame
                # fall through to the loop stage next iteration
                continue

            # _LOOP: continue depth-first from every target of the top set
            top = stack[-1]
            nxt = None
            for s in sorted(top.tgts):
                for e in aut.outgoing(s):
                    if e not in explored:
                        nxt = e
                        break
                if nxt is not None:
                    break
            if nxt is not None:
                calls.append([nxt, _ENTER, None])
                continue
            if call[2] is not None and stack and stack[-1] is call[2]:
                stack.pop()
            calls.pop()

    return EmptinessResult(not found, len(explored), peak)


def is_empty(aut) -> bool:
    return run_emptiness(aut).empty


def is_empty_oracle(a: Sgra) -> bool:
    """Reference emptiness by explicit SCC analysis.

    Non-empty iff some SCC of the automaton minus color-0 transitions is
    reachable from an initial state in the full graph, has at least one
    internal transition, and its internal transitions cover every Inf
    color.
    """
    n = a.num_states
    if n == 0 or not a.initial or not a.transitions:
        return True

    rows = np.fromiter((t.src for t in a.transitions), dtype=np.int32)
    cols = np.fromiter((t.dst for t in a.transitions), dtype=np.int32)
    masks = np.zeros(len(a.transitions), dtype=np.int64)
    for i, t in enumerate(a.transitions):
        m = 0
        for c in t.colors:
            m |= 1 << c
        masks[i] = m
    zf = (masks & 1) == 0

    data = np.ones(len(rows), dtype=np.int8)
    full = csr_matrix((data, (rows, cols)), shape=(n, n))
    seen = np.zeros(n, dtype=bool)
    for q in a.initial:
        if not seen[q]:
            order = breadth_first_order(full, i_start=q, directed=True, return_predecessors=False)
            seen[order] = True

    if not zf.any():
        return True
    sub = csr_matrix((data[zf], (rows[zf], cols[zf])), shape=(n, n))
    n_comp, labels = connected_components(sub, directed=True, connection="strong")

    r0, c0, m0 = rows[zf], cols[zf], masks[zf]
    internal = labels[r0] == labels[c0]
    if not internal.any():
        return True
    inf_mask = ((1 << a.num_colors) - 1) & ~1
    comp_mask = np.zeros(n_comp, dtype=np.int64)
    np.bitwise_or.at(comp_mask, labels[r0[internal]], m0[internal])
    comp_edge = np.zeros(n_comp, dtype=bool)
    comp_edge[labels[r0[internal]]] = True
    comp_reach = np.zeros(n_comp, dtype=bool)
    comp_reach[labels[seen]] = True
    ok = comp_edge & comp_reach & ((comp_mask & inf_mask) == inf_mask)
    return not bool(ok.any())
