"""SCC decomposition and per-component classification of Buchi automata.

Accepting components are sorted into four kinds, each matched later with a
dedicated partial complementation routine:

  IADAC  "initial almost deterministic accepting": restrict acceptance to
         the component, drop states from which nothing is accepted, and in
         what remains any same-state same-letter branching jumps out of the
         branching state's component.  Runs entering such a component fan
         out only finitely, so plain subset tracking complements it.
  IWAC   inherently weak accepting (and not IADAC): every cycle of the
         component hits an accepting transition.
  DAC    deterministic accepting (per letter, inside the component), not
         covered above.
  NAC    everything else (general nondeterministic accepting).

Kind priority is IADAC > IWAC > DAC > NAC.  Non-accepting components get
NONACC.  An automaton without NACs is called an elevator automaton.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .automata import Sgra
from .graphs import reaches, tarjan_sccs


class SccKind(Enum):
    NONACC = "nonacc"
    IADAC = "iadac"
    IWAC = "iwac"
    DAC = "dac"
    NAC = "nac"


@dataclass(frozen=True)
class SccDecomposition:
    """Raw SCC structure: ids are topologically ordered, sources first."""

    count: int
    scc_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    trivial: tuple[bool, ...]  # singleton without a self-loop


@dataclass(frozen=True)
class SccInfo:
    """Decomposition plus per-component classification flags."""

    decomposition: SccDecomposition
    accepting: tuple[bool, ...]
    inherently_weak: tuple[bool, ...]
    deterministic: tuple[bool, ...]
    init_deterministic: tuple[bool, ...]
    init_almost_deterministic: tuple[bool, ...]
    kinds: tuple[SccKind, ...]

    @property
    def count(self) -> int:
        return self.decomposition.count

    @property
    def scc_of(self) -> tuple[int, ...]:
        return self.decomposition.scc_of

    @property
    def members(self) -> tuple[tuple[int, ...], ...]:
        return self.decomposition.members


@dataclass(frozen=True)
class Block:
    """One partition block: the union of the states of like-kinded SCCs
    (IADAC/IWAC/DAC) or a single NAC component."""

    kind: SccKind
    states: frozenset[int]


def sccs(a: Sgra) -> SccDecomposition:
    adj: list[list[int]] = [[] for _ in range(a.num_states)]
    self_loop = [False] * a.num_states
    for t in a.transitions:
        adj[t.src].append(t.dst)
        if t.src == t.dst:
            self_loop[t.src] = True
    count, comp = tarjan_sccs(a.num_states, adj)
    members: list[list[int]] = [[] for _ in range(count)]
    for q in range(a.num_states):
        members[comp[q]].append(q)
    trivial = tuple(
        len(ms) == 1 and not self_loop[ms[0]] for ms in members
    )
    return SccDecomposition(
        count,
        tuple(comp),
        tuple(tuple(ms) for ms in members),
        trivial,
    )


def _weak(a: Sgra, member_set: frozenset[int], has_acc: bool) -> bool:
    """Inherently weak: no accepting transition at all, or the intra-SCC
    subgraph of non-accepting transitions is acyclic."""
    if not has_acc:
        return True
    nodes = sorted(member_set)
    remap = {q: i for i, q in enumerate(nodes)}
    adj: list[list[int]] = [[] for _ in nodes]
    self_loop = [False] * len(nodes)
    for q in nodes:
        for t in a.out(q):
            if t.dst in member_set and 1 not in t.colors:
                i, j = remap[q], remap[t.dst]
                adj[i].append(j)
                if i == j:
                    self_loop[i] = True
    count, comp = tarjan_sccs(len(nodes), adj)
    sizes = [0] * count
    for c in comp:
        sizes[c] += 1
    return not any(
        sizes[comp[i]] > 1 or self_loop[i] for i in range(len(nodes))
    )


def _trimmed_flags(a: Sgra, member_set: frozenset[int], has_acc: bool) -> tuple[bool, bool]:
    """(init_deterministic, init_almost_deterministic) for one component.

    Both are judged on the automaton with acceptance restricted to the
    component and useless states removed.  A state is useful iff some word
    is accepted from it; with acceptance confined to one accepting SCC that
    is exactly "can reach the component".
    """
    if not has_acc:
        # Acceptance restricted to a non-accepting component is empty: every
        # state is useless.  No initial state survives, so not deterministic;
        # the branching condition holds vacuously.
        return False, True

    pred: list[list[int]] = [[] for _ in range(a.num_states)]
    for t in a.transitions:
        pred[t.dst].append(t.src)
    useful = reaches(a.num_states, pred, member_set)
    useful_states = [q for q in range(a.num_states) if useful[q]]

    remap = {q: i for i, q in enumerate(useful_states)}
    adj: list[list[int]] = [[] for _ in useful_states]
    # per (state, letter) distinct trimmed successors
    succs: list[dict[int, set[int]]] = [dict() for _ in useful_states]
    for q in useful_states:
        i = remap[q]
        for t in a.out(q):
            if not useful[t.dst]:
                continue
            adj[i].append(remap[t.dst])
            succs[i].setdefault(t.letter, set()).add(t.dst)

    deterministic = len(a.initial & frozenset(useful_states)) == 1
    for per_letter in succs:
        if any(len(ds) > 1 for ds in per_letter.values()):
            deterministic = False
            break

    _, comp = tarjan_sccs(len(useful_states), adj)
    almost = True
    for q in useful_states:
        i = remap[q]
        for ds in succs[i].values():
            if len(ds) > 1 and any(comp[remap[p]] == comp[i] for p in ds):
                almost = False
                break
        if not almost:
            break
    return deterministic, almost


def classify(a: Sgra) -> SccInfo:
    """Classify every SCC of a BA.

    Requires a color-normalized BA: colors only on intra-SCC transitions.
    """
    if not a.is_ba():
        raise ValueError("classification is defined for Buchi automata (k=2, no Fin)")
    dec = sccs(a)
    for t in a.transitions:
        if t.colors and dec.scc_of[t.src] != dec.scc_of[t.dst]:
            raise ValueError("expected a color-normalized automaton (see normalize_colors)")

    accepting = []
    weak = []
    det = []
    init_det = []
    init_almost = []
    kinds = []
    for cid in range(dec.count):
        member_set = frozenset(dec.members[cid])
        has_acc = any(
            1 in t.colors and t.dst in member_set
            for q in dec.members[cid]
            for t in a.out(q)
        )
        accepting.append(has_acc)
        weak.append(_weak(a, member_set, has_acc))
        is_det = True
        for q in dec.members[cid]:
            per_letter: dict[int, set[int]] = {}
            for t in a.out(q):
                if t.dst in member_set:
                    per_letter.setdefault(t.letter, set()).add(t.dst)
            if any(len(ds) > 1 for ds in per_letter.values()):
                is_det = False
                break
        det.append(is_det)
        i_det, i_almost = _trimmed_flags(a, member_set, has_acc)
        init_det.append(i_det)
        init_almost.append(i_almost)

        if not has_acc:
            kinds.append(SccKind.NONACC)
        elif i_almost:
            kinds.append(SccKind.IADAC)
        elif weak[-1]:
            kinds.append(SccKind.IWAC)
        elif is_det:
            kinds.append(SccKind.DAC)
        else:
            kinds.append(SccKind.NAC)

    return SccInfo(
        dec,
        tuple(accepting),
        tuple(weak),
        tuple(det),
        tuple(init_det),
        tuple(init_almost),
        tuple(kinds),
    )


def is_elevator(info: SccInfo) -> bool:
    """No NAC anywhere: every accepting SCC has a cheap partial algorithm."""
    return SccKind.NAC not in info.kinds


def build_partitioning(info: SccInfo) -> tuple[Block, ...]:
    """Group SCCs into complementation blocks.

    All IADACs form one block, all IWACs one, all DACs one; every NAC gets
    its own block.  Block order is IADAC, IWAC, DAC, then NACs by ascending
    smallest state id.  Non-accepting SCCs are not tracked by any block.
    """
    union: dict[SccKind, set[int]] = {
        SccKind.IADAC: set(),
        SccKind.IWAC: set(),
        SccKind.DAC: set(),
    }
    nacs: list[tuple[int, frozenset[int]]] = []
    for cid in range(info.count):
        kind = info.kinds[cid]
        states = info.members[cid]
        if kind in union:
            union[kind].update(states)
        elif kind is SccKind.NAC:
            nacs.append((min(states), frozenset(states)))
    blocks: list[Block] = []
    for kind in (SccKind.IADAC, SccKind.IWAC, SccKind.DAC):
        if union[kind]:
            blocks.append(Block(kind, frozenset(union[kind])))
    for _, states in sorted(nacs):
        blocks.append(Block(SccKind.NAC, states))
    return tuple(blocks)
