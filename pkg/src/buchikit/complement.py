"""Top-level complementation: decompose, run block algorithms, glue.

A macrostate pairs the plain reached-state subset with one tracking part
per partition block.  Block successor sets combine as a Cartesian product;
the union of the emitted block colors labels the product transition.  The
result is one simple generalized Rabin automaton whose acceptance needs the
block over initial-almost-deterministic components to emit finitely often
(Fin color 0) and every other block to emit infinitely often (one Inf
color each, allocated in block order).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .automata import Sgra, Transition, normalize_colors
from .errors import CapacityError
from .partial_algs import GeneralBlock, make_block_alg
from .scc import Block, SccKind, build_partitioning, classify

DEFAULT_MAX_STATES = 10**6

# Absorbing macrostate taken when every successor combination of some block
# is blocked (a wrong check/safe guess).  It emits no colors, and a blocked
# combination can only come from a deterministic-component block, which owns
# an Inf color, so runs trapped here are rejecting and the language is
# unchanged; the successor relation stays total.
REJECT_MACRO = ("reject", ())


@dataclass(frozen=True)
class ColorPlan:
    """Color allocation for one partitioning.

    Colors exist only for instantiated blocks: Fin color 0 participates iff
    an IADAC block is present, Inf colors 1, 2, ... go to the remaining
    blocks in block order.  Color 0 stays reserved even when unused, so
    num_colors is always at least 1.
    """

    fin_used: bool
    num_colors: int
    block_colors: tuple[int, ...]


def make_color_plan(blocks: tuple[Block, ...]) -> ColorPlan:
    assigned = []
    nxt = 1
    fin_used = False
    for b in blocks:
        if b.kind is SccKind.IADAC:
            assigned.append(0)
            fin_used = True
        else:
            assigned.append(nxt)
            nxt += 1
    return ColorPlan(fin_used, nxt, tuple(assigned))


class ComplementConstruction:
    """Shared macrostate engine behind complement() and the lazy product.

    Normalizes and classifies the input once, then exposes the initial
    macrostates and the per-letter successor relation.
    """

    def __init__(self, ba: Sgra, *, mono_nac: bool = False):
        if not ba.is_ba():
            raise ValueError("complementation input must be a BA (k=2, no Fin)")
        self.ba = normalize_colors(ba)
        self.info = classify(self.ba)
        if mono_nac:
            accepting = [
                (min(ms), frozenset(ms))
                for ms, acc in zip(self.info.members, self.info.accepting)
                if acc
            ]
            self.blocks = tuple(
                Block(SccKind.NAC, states) for _, states in sorted(accepting)
            )
        else:
            self.blocks = build_partitioning(self.info)
        self.plan = make_color_plan(self.blocks)
        self.algs = tuple(
            make_block_alg(self.ba, b.kind, b.states) for b in self.blocks
        )

    def init_macrostates(self) -> tuple[tuple, ...]:
        top = frozenset(self.ba.initial)
        macro = (top, tuple(alg.init_part(top) for alg in self.algs))
        return (macro,)

    def succ_macrostate(self, macro, letter: int) -> list[tuple[tuple, frozenset[int]]]:
        """All successors of a macrostate on one letter, canonically ordered,
        as (macrostate, transition colors) pairs.  A dead block routes to the
        rejecting sink, so the list is never empty."""
        return list(self.succ_stream(macro, letter))

    def succ_stream(self, macro, letter: int) -> Iterable[tuple[tuple, frozenset[int]]]:
        """Streaming form of succ_macrostate, same pairs in the same order.

        Rank-tracking blocks can contribute huge per-block choice sets, so
        their combinations are generated lazily; a consumer that hits its
        capacity limit abandons the stream without paying for the rest."""
        if macro == REJECT_MACRO:
            yield (REJECT_MACRO, frozenset())
            return
        top, parts = macro
        top2 = self.ba.succ_set(top, letter)
        per_block = []
        for alg, part in zip(self.algs, parts):
            if isinstance(alg, GeneralBlock):
                per_block.append(None)
                continue
            succs = alg.succ(top, part, letter)
            if not succs:
                yield (REJECT_MACRO, frozenset())
                return
            succs.sort(key=lambda pe: alg.part_key(pe[0]))
            per_block.append(succs)
        n = len(per_block)
        parts2 = [None] * n
        emits = [False] * n

        def rec(i: int):
            if i == n:
                colors = frozenset(
                    self.plan.block_colors[j] for j in range(n) if emits[j]
                )
                yield ((top2, tuple(parts2)), colors)
                return
            succs = per_block[i]
            if succs is None:
                succs = self.algs[i].succ_stream(top, parts[i], letter)
            for p2, emit in succs:
                parts2[i] = p2
                emits[i] = emit
                yield from rec(i + 1)

        yield from rec(0)

    def macro_key(self, macro):
        if macro == REJECT_MACRO:
            return REJECT_MACRO
        top, parts = macro
        return (
            tuple(sorted(top)),
            tuple(alg.part_key(p) for alg, p in zip(self.algs, parts)),
        )

    def block_counts(self) -> dict[str, int]:
        counts = {"iadac": 0, "iwac": 0, "dac": 0, "nac": 0}
        for b in self.blocks:
            counts[b.kind.value] += 1
        return counts


def _materialize(
    con: ComplementConstruction,
    max_states: int,
    max_transitions: int | None = None,
) -> tuple[Sgra, int]:
    number: dict = {}
    order: list = []
    for m in con.init_macrostates():
        number[m] = len(order)
        order.append(m)
    transitions = []
    n_letters = len(con.ba.alphabet)
    head = 0
    while head < len(order):
        macro = order[head]
        src = head
        head += 1
        for letter in range(n_letters):
            for m2, colors in con.succ_stream(macro, letter):
                dst = number.get(m2)
                if dst is None:
                    dst = len(order)
                    if dst >= max_states:
                        raise CapacityError(
                            f"complement construction exceeded {max_states} macrostates"
                        )
                    number[m2] = dst
                    order.append(m2)
                if max_transitions is not None and len(transitions) >= max_transitions:
                    raise CapacityError(
                        f"complement construction exceeded {max_transitions} transitions"
                    )
                transitions.append(Transition(src, letter, dst, colors))
    result = Sgra(
        len(order),
        con.ba.alphabet,
        frozenset(range(len(con.init_macrostates()))),
        transitions,
        con.plan.num_colors,
        con.plan.fin_used,
    )
    return result, len(order)


def complement(
    ba: Sgra,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    max_transitions: int | None = None,
    postprocess: bool = True,
) -> Sgra:
    """Complement a BA through the decomposition framework.

    Macrostates are explored breadth-first and numbered in discovery order;
    the caps abort oversized constructions with CapacityError (rank blocks
    can emit enormous edge fans well before the state cap bites, hence the
    separate optional transition cap).  The result is trimmed unless
    postprocess is disabled.
    """
    result, _ = _materialize(ComplementConstruction(ba), max_states, max_transitions)
    if postprocess:
        from .postprocess import trim

        result = trim(result)
    return result


def complement_mono_nac(
    ba: Sgra,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    max_transitions: int | None = None,
    postprocess: bool = True,
) -> Sgra:
    """Complement with every accepting SCC forced into its own rank-based
    block, bypassing the class-specific algorithms.  Differential twin of
    complement() for testing."""
    result, _ = _materialize(
        ComplementConstruction(ba, mono_nac=True), max_states, max_transitions
    )
    if postprocess:
        from .postprocess import trim

        result = trim(result)
    return result


def init_macrostates(ba: Sgra) -> tuple[tuple, ...]:
    """Initial macrostates of the default construction (a one-element tuple;
    kept as a tuple for interface symmetry)."""
    return ComplementConstruction(ba).init_macrostates()
