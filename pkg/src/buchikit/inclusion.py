"""Language inclusion between Buchi automata.

L(A) is included in L(B) iff the product of A with the complement
construction of B has empty language.  The product here is implicit:
states are (A-state, complement-macrostate) pairs interned on first
contact, and successors are computed only when the emptiness search asks
for them.  A counterexample found early leaves most of the product
untouched, which is the entire point; `product_states` therefore counts
the states whose successors were actually computed, not the states that
were merely named.

`included_oracle` is the reference: it materializes the full complement
of B (no trimming), builds the reachable product explicitly, and hands it
to the SCC-based emptiness oracle.
"""
from __future__ import annotations

from typing import NamedTuple

from .automata import Sgra, Transition, normalize_colors
from .complement import (
    DEFAULT_MAX_STATES,
    ComplementConstruction,
    complement,
    complement_mono_nac,
)
from .emptiness import Edge, is_empty_oracle, run_emptiness
from .errors import CapacityError


_MSUCC_CACHE_LIMIT = 4096


class InclusionResult(NamedTuple):
    included: bool
    product_states: int
    explored_transitions: int


def _reachable_only(a: Sgra) -> Sgra:
    """Drop states unreachable from the initial set, renumbering densely.

    Both the lazy pipeline and the oracle pipeline preprocess with this,
    so their product state counts stay comparable.
    """
    seen = set(a.initial)
    queue = sorted(seen)
    while queue:
        q = queue.pop()
        for t in a.out(q):
            if t.dst not in seen:
                seen.add(t.dst)
                queue.append(t.dst)
    if len(seen) == a.num_states:
        return a
    keep = sorted(seen)
    new_id = {q: i for i, q in enumerate(keep)}
    return Sgra(
        len(keep),
        a.alphabet,
        frozenset(new_id[q] for q in a.initial),
        [
            Transition(new_id[t.src], t.letter, new_id[t.dst], t.colors)
            for t in a.transitions
            if t.src in seen
        ],
        a.num_colors,
        a.fin_used,
    )


def _check_pair(a1: Sgra, a2: Sgra):
    if not a1.is_ba() or not a2.is_ba():
        raise ValueError("inclusion is defined for Buchi automata (k=2, no Fin)")
    if a1.alphabet.labels != a2.alphabet.labels:
        raise ValueError("inclusion requires automata over the same alphabet")
    if (
        a1.alphabet.ap_names is not None
        and a2.alphabet.ap_names is not None
        and a1.alphabet.ap_names != a2.alphabet.ap_names
    ):
        raise ValueError("inclusion requires automata over the same alphabet")


class LazyProduct:
    """Implicit product of an automaton with a complement construction.

    Colors 0..k-1 are the complement's; one extra Inf color k marks
    product transitions whose left component is accepting.  A run of the
    product is accepting iff it is accepting on both sides, so emptiness
    of this object decides inclusion.
    """

    def __init__(
        self,
        a1: Sgra,
        con: ComplementConstruction,
        max_states: int,
        max_edges: int | None = None,
    ):
        self._a1 = a1
        self._con = con
        self._max = max_states
        self._max_edges = max_edges
        self._edge_count = 0
        self.a1_color = con.plan.num_colors
        self.num_colors = con.plan.num_colors + 1
        self._ids: dict[tuple, int] = {}
        self._pairs: list[tuple] = []
        self._out: dict[int, tuple[Edge, ...]] = {}
        self._msucc: dict[tuple, list] = {}
        self._initial = [
            self._intern(q1, m)
            for q1 in sorted(a1.initial)
            for m in con.init_macrostates()
        ]

    def _intern(self, q1: int, macro) -> int:
        key = (q1, self._con.macro_key(macro))
        sid = self._ids.get(key)
        if sid is None:
            if len(self._pairs) >= self._max:
                raise CapacityError(
                    "inclusion product exceeded %d states" % self._max
                )
            sid = len(self._pairs)
            self._ids[key] = sid
            self._pairs.append((q1, macro))
        return sid

    def _macro_successors(self, macro, letter: int):
        """Pairs (successor macro, packed color mask), memoized when short.

        Oversized successor sets are streamed without memoizing; capacity
        failures then abandon the stream early instead of materializing a
        list that can dwarf the whole product."""
        key = (self._con.macro_key(macro), letter)
        cached = self._msucc.get(key)
        if cached is not None:
            return cached
        return self._stream_macro(key, macro, letter)

    def _stream_macro(self, key, macro, letter: int):
        acc = []
        for m2, cols in self._con.succ_stream(macro, letter):
            pair = (m2, sum(1 << c for c in cols))
            if acc is not None:
                acc.append(pair)
                if len(acc) > _MSUCC_CACHE_LIMIT:
                    acc = None
            yield pair
        if acc is not None:
            self._msucc[key] = acc

    def initial_states(self):
        return list(self._initial)

    def outgoing(self, sid: int):
        cached = self._out.get(sid)
        if cached is not None:
            return cached
        q1, macro = self._pairs[sid]
        edges = []
        for t in self._a1.out(q1):
            a1_bit = (1 << self.a1_color) if 1 in t.colors else 0
            for m2, mask in self._macro_successors(macro, t.letter):
                dst = self._intern(t.dst, m2)
                if self._max_edges is not None and self._edge_count >= self._max_edges:
                    raise CapacityError(
                        "inclusion product exceeded %d transitions" % self._max_edges
                    )
                self._edge_count += 1
                edges.append(Edge(sid, t.letter, dst, mask | a1_bit))
        out = tuple(edges)
        self._out[sid] = out
        return out

    @property
    def expanded_states(self) -> int:
        return len(self._out)


def check_inclusion(
    a1: Sgra,
    a2: Sgra,
    *,
    mono_nac: bool = False,
    max_states: int = DEFAULT_MAX_STATES,
    max_edges: int | None = None,
) -> InclusionResult:
    """Decide L(a1) <= L(a2) and report how much product was explored."""
    _check_pair(a1, a2)
    a1 = _reachable_only(normalize_colors(a1))
    con = ComplementConstruction(_reachable_only(a2), mono_nac=mono_nac)
    prod = LazyProduct(a1, con, max_states, max_edges)
    res = run_emptiness(prod)
    return InclusionResult(res.empty, prod.expanded_states, res.explored_transitions)


def included(a1: Sgra, a2: Sgra, *, mono_nac: bool = False) -> bool:
    return check_inclusion(a1, a2, mono_nac=mono_nac).included


def product_automaton(
    a1: Sgra, a2c: Sgra, *, max_transitions: int | None = None
) -> Sgra:
    """Explicit reachable product of a1 (a BA) with a complement automaton.

    Used by the oracle and by tests that need the whole product to count
    states against the lazy search.
    """
    k = a2c.num_colors
    ids: dict[tuple[int, int], int] = {}
    pairs: list[tuple[int, int]] = []

    def intern(q1: int, q2: int) -> int:
        key = (q1, q2)
        sid = ids.get(key)
        if sid is None:
            sid = len(pairs)
            ids[key] = sid
            pairs.append(key)
        return sid

    initial = [
        intern(q1, q2) for q1 in sorted(a1.initial) for q2 in sorted(a2c.initial)
    ]
    transitions = []
    ptr = 0
    while ptr < len(pairs):
        q1, q2 = pairs[ptr]
        for t1 in a1.out(q1):
            extra = frozenset([k]) if 1 in t1.colors else frozenset()
            for t2 in a2c.out(q2):
                if t2.letter != t1.letter:
                    continue
                dst = intern(t1.dst, t2.dst)
                if max_transitions is not None and len(transitions) >= max_transitions:
                    raise CapacityError(
                        "explicit product exceeded %d transitions" % max_transitions
                    )
                transitions.append(
                    Transition(ptr, t1.letter, dst, t2.colors | extra)
                )
        ptr += 1
    return Sgra(
        max(len(pairs), 1),
        a1.alphabet,
        frozenset(initial),
        transitions,
        num_colors=k + 1,
        fin_used=a2c.fin_used,
    )


def included_oracle(a1: Sgra, a2: Sgra, *, mono_nac: bool = False) -> bool:
    """Reference inclusion: full complement, full product, SCC emptiness."""
    _check_pair(a1, a2)
    a1 = _reachable_only(normalize_colors(a1))
    build = complement_mono_nac if mono_nac else complement
    a2c = build(_reachable_only(a2), postprocess=False)
    return is_empty_oracle(product_automaton(a1, a2c))
