"""Per-block partial complementation algorithms.

Every algorithm tracks the runs of the input BA that currently sit inside
its block P and certifies, through one emitted color, that none of them
stays in P forever while taking accepting transitions infinitely often.
The shared contract:

  init_part(top)            initial tracking data, top = initial state set
  succ(top, part, letter)   all successor parts, each with an emit flag;
                            an empty list kills the whole branch

`top` is always the plain subset-construction component of the enclosing
macrostate; parts are hashable values ordered by `part_key`.

Emitted flags are turned into actual colors by the top-level construction:
the block over initial-almost-deterministic components emits a Fin color
(seen finitely often on accepting branches), all others emit Inf colors
(seen infinitely often).
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterable

from .automata import Sgra


class InitDetBlock:
    """Subset tracking for initial almost deterministic accepting components.

    Runs inside such components fan out only finitely often, so the word is
    rejected by every one of them iff the tracked subset sees accepting
    transitions finitely often.  The emit flag marks steps where some
    tracked state takes an accepting transition; the plan maps it to the
    Fin color.
    """

    def __init__(self, ba: Sgra, states: frozenset[int]):
        self.ba = ba
        self.states = states

    def init_part(self, top: frozenset[int]) -> frozenset[int]:
        return top & self.states

    def succ(self, top, part, letter):
        nxt = self.ba.succ_set(top, letter) & self.states
        emit = any(self.ba.acc_dests(q, letter) for q in part)
        return [(nxt, emit)]

    @staticmethod
    def part_key(part):
        return tuple(sorted(part))


class WeakBlock:
    """Breakpoint construction over the union of inherently weak accepting
    components (Miyano-Hayashi style).

    Any run trapped in the union eventually cycles inside one component,
    and every such cycle accepts.  The breakpoint set holds runs that still
    have to leave; it empties infinitely often iff no run is trapped.
    """

    def __init__(self, ba: Sgra, states: frozenset[int]):
        self.ba = ba
        self.states = states

    def init_part(self, top: frozenset[int]) -> frozenset[int]:
        return top & self.states

    def succ(self, top, part, letter):
        if not part:
            return [(self.ba.succ_set(top, letter) & self.states, True)]
        return [(self.ba.succ_set(part, letter) & self.states, False)]

    @staticmethod
    def part_key(part):
        return tuple(sorted(part))


class DetBlock:
    """Check/safe/breakpoint triple over the union of deterministic
    accepting components (an NCSB-flavoured split).

    part = (C, X, B): C holds checked runs that may still accept, X holds
    runs guessed to never see an accepting transition again, B <= C is the
    breakpoint.  States freshly entering the block always start in C; a
    state may move to X only if every transition it took from C this step
    was non-accepting, and X is absorbing.  A step from X through an
    accepting transition kills the branch (the guess was wrong).
    """

    def __init__(self, ba: Sgra, states: frozenset[int]):
        self.ba = ba
        self.states = states

    def init_part(self, top: frozenset[int]):
        c = top & self.states
        return (c, frozenset(), c)

    def succ(self, top, part, letter):
        ba, block = self.ba, self.states
        c, x, b = part
        for q in x:
            if ba.acc_dests(q, letter):
                return []
        x_base = ba.succ_set(x, letter) & block
        succ_c = ba.succ_set(c, letter) & block
        entering = (ba.succ_set(top, letter) & block) - ba.succ_set(c | x, letter)
        cand = succ_c | entering

        colored_from_c: set[int] = set()
        for q in c:
            colored_from_c.update(ba.acc_dests(q, letter))
        may_move = succ_c - colored_from_c  # entering states stay in C
        forced = cand & x_base  # X is absorbing, and C' and X' must stay disjoint
        if not forced <= may_move:
            return []
        free = sorted(may_move - forced)

        b_succ = ba.succ_set(b, letter)
        out = []
        for r in range(len(free) + 1):
            for extra in combinations(free, r):
                move = forced | frozenset(extra)
                c2 = cand - move
                x2 = x_base | move
                if b:
                    out.append(((c2, x2, b_succ & c2), False))
                else:
                    out.append(((c2, x2, c2), True))
        return out

    @staticmethod
    def part_key(part):
        c, x, b = part
        return (tuple(sorted(c)), tuple(sorted(x)), tuple(sorted(b)))


class GeneralBlock:
    """Rank-based construction with a breakpoint for one general accepting
    component (Kupferman-Vardi style, phrased over accepting transitions).

    part = (ranking, O) where the ranking maps each tracked state of the
    component P to a rank in {0..2|P|}.  Ranks never increase along runs;
    an accepting transition leaving an odd rank must strictly decrease, so
    a run parked at a stable odd rank accepts no more.  O collects the
    even-ranked runs that still have to drop to odd or die; the emit flag
    marks the steps where O restarts.
    """

    def __init__(self, ba: Sgra, states: frozenset[int]):
        self.ba = ba
        self.states = states
        self.max_rank = 2 * len(states)

    def init_part(self, top: frozenset[int]):
        ranking = tuple(sorted((p, self.max_rank) for p in top & self.states))
        return (ranking, frozenset())

    def succ(self, top, part, letter):
        return list(self.succ_stream(top, part, letter))

    def succ_stream(self, top, part, letter):
        """Successors in part_key order, produced lazily.

        The pointwise rank choices multiply quickly, so consumers that give
        up early (a capped construction, a satisfied search) must not pay
        for the whole enumeration."""
        ba, block = self.ba, self.states
        ranking, obligations = part
        f = dict(ranking)
        domain2 = sorted(ba.succ_set(top, letter) & block)
        if not domain2:
            yield (((), frozenset()), not obligations)
            return

        entered = ba.succ_set(frozenset(top) - block, letter) & block
        f_max = {p: (self.max_rank if p in entered else None) for p in domain2}
        for q, fq in f.items():
            even_cap = fq if fq % 2 == 0 else fq - 1
            for p in ba.dests(q, letter):
                if p not in f_max:
                    continue
                cur = f_max[p]
                f_max[p] = fq if cur is None or fq < cur else cur
            for p in ba.acc_dests(q, letter):
                if p not in f_max:
                    continue
                cur = f_max[p]
                f_max[p] = even_cap if cur is None or even_cap < cur else cur
        for p in domain2:
            if f_max[p] is None:  # defensive; cannot happen when domain(f) = top & P
                f_max[p] = self.max_rank

        o_succ = (ba.succ_set(obligations, letter) & block) if obligations else frozenset()
        reset = not obligations
        for combo in product(*(range(f_max[p] + 1) for p in domain2)):
            ranking2 = tuple(zip(domain2, combo))
            evens = frozenset(p for p, r in ranking2 if r % 2 == 0)
            o2 = evens if reset else evens & o_succ
            yield ((ranking2, o2), reset)

    @staticmethod
    def part_key(part):
        ranking, obligations = part
        return (ranking, tuple(sorted(obligations)))


def make_block_alg(ba: Sgra, kind, states: frozenset[int]):
    from .scc import SccKind

    return {
        SccKind.IADAC: InitDetBlock,
        SccKind.IWAC: WeakBlock,
        SccKind.DAC: DetBlock,
        SccKind.NAC: GeneralBlock,
    }[kind](ba, states)
