"""Reference machinery for differential testing.

`member` decides whether an ultimately periodic word u v^w is accepted,
by structural analysis of a period graph: nothing here shares code with the
complementation or emptiness implementations (the graph work is done by
scipy.sparse.csgraph rather than this package's own Tarjan), so the two
routes stay independent.

`random_ba` is the seeded corpus generator used throughout the test suite.
"""
from __future__ import annotations

import math
import random
from itertools import product
from typing import Iterable, Iterator, NamedTuple
from weakref import WeakKeyDictionary

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .automata import Alphabet, Sgra, Transition, named_alphabet, normalize_colors


class LassoWord(NamedTuple):
    """The word prefix . period^w, letters given as alphabet indices."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]


class _LetterEdges(NamedTuple):
    """Per-letter transition columns of one automaton, as numpy arrays."""

    srcs: tuple
    dsts: tuple
    masks: tuple
    zfree: tuple


_letter_cache: WeakKeyDictionary = WeakKeyDictionary()
_period_cache: WeakKeyDictionary = WeakKeyDictionary()


def _letter_edges(a: Sgra) -> _LetterEdges:
    hit = _letter_cache.get(a)
    if hit is not None:
        return hit
    n_letters = len(a.alphabet)
    srcs: list[list[int]] = [[] for _ in range(n_letters)]
    dsts: list[list[int]] = [[] for _ in range(n_letters)]
    masks: list[list[int]] = [[] for _ in range(n_letters)]
    zfree: list[list[bool]] = [[] for _ in range(n_letters)]
    for t in a.transitions:
        srcs[t.letter].append(t.src)
        dsts[t.letter].append(t.dst)
        m = 0
        for c in t.colors:
            m |= 1 << c
        masks[t.letter].append(m)
        zfree[t.letter].append(0 not in t.colors)
    built = _LetterEdges(
        tuple(np.asarray(x, dtype=np.int64) for x in srcs),
        tuple(np.asarray(x, dtype=np.int64) for x in dsts),
        tuple(np.asarray(x, dtype=np.int64) for x in masks),
        tuple(np.asarray(x, dtype=bool) for x in zfree),
    )
    _letter_cache[a] = built
    return built


def _reach_good_phase0(a: Sgra, period: tuple[int, ...]) -> np.ndarray:
    """Phase-zero vertices of the period graph that can reach an accepting
    component.

    The period graph lives on (state, period position) pairs.  A component
    is accepting when it avoids color 0, has at least one internal edge,
    and covers all Inf colors internally.  The result is memoized per
    (automaton, period): membership queries share one analysis across all
    prefixes of the same period.
    """
    per_aut = _period_cache.get(a)
    if per_aut is None:
        per_aut = {}
        _period_cache[a] = per_aut
    hit = per_aut.get(period)
    if hit is not None:
        return hit

    n, p = a.num_states, len(period)
    edges = _letter_edges(a)
    rows = np.concatenate(
        [edges.srcs[letter] + i * n for i, letter in enumerate(period)]
    )
    cols = np.concatenate(
        [edges.dsts[letter] + ((i + 1) % p) * n for i, letter in enumerate(period)]
    )
    masks = np.concatenate([edges.masks[letter] for letter in period])
    zf = np.concatenate([edges.zfree[letter] for letter in period])
    inf_mask = (1 << a.num_colors) - 2

    size = n * p
    result = np.zeros(n, dtype=bool)
    r0, c0, m0 = rows[zf], cols[zf], masks[zf]
    if r0.size:
        sub = csr_matrix(
            (np.ones(r0.size, dtype=np.int8), (r0, c0)), shape=(size, size)
        )
        n_comp, labels = connected_components(sub, directed=True, connection="strong")
        internal = labels[r0] == labels[c0]
        if internal.any():
            comp_mask = np.zeros(n_comp, dtype=np.int64)
            np.bitwise_or.at(comp_mask, labels[r0[internal]], m0[internal])
            comp_edge = np.zeros(n_comp, dtype=bool)
            comp_edge[labels[r0[internal]]] = True
            good = comp_edge & ((comp_mask & inf_mask) == inf_mask)
            if good.any():
                # reverse reachability from all accepting components at once,
                # over the full period graph, via one synthetic source
                good_vertices = np.nonzero(good[labels])[0]
                sr = np.concatenate(
                    [cols, np.full(good_vertices.size, size, dtype=np.int64)]
                )
                sc = np.concatenate([rows, good_vertices])
                rev = csr_matrix(
                    (np.ones(sr.size, dtype=np.int8), (sr, sc)),
                    shape=(size + 1, size + 1),
                )
                order = breadth_first_order(
                    rev, i_start=size, directed=True, return_predecessors=False
                )
                seen = np.zeros(size + 1, dtype=bool)
                seen[order] = True
                result = seen[:n].copy()
    per_aut[period] = result
    return result


def member(a: Sgra, word: LassoWord) -> bool:
    """Does the automaton accept prefix . period^w ?

    After reading the prefix from the initial states, acceptance reduces to
    reaching, in the graph on (state, period position) pairs, a strongly
    connected piece that avoids color 0, contains at least one edge, and
    covers all Inf colors internally (see _reach_good_phase0).
    """
    prefix, period = word
    if not period:
        raise ValueError("period must be non-empty")
    n_letters = len(a.alphabet)
    for letter in (*prefix, *period):
        if not 0 <= letter < n_letters:
            raise ValueError(f"letter {letter} not in the alphabet")

    reached = frozenset(a.initial)
    for letter in prefix:
        reached = a.succ_set(reached, letter)
        if not reached:
            return False
    if not reached:
        return False
    good0 = _reach_good_phase0(a, tuple(period))
    return bool(good0[sorted(reached)].any())


def enumerate_lassos(alphabet: Alphabet, max_prefix: int, max_period: int) -> Iterator[LassoWord]:
    """All lasso words with |prefix| <= max_prefix and 1 <= |period| <= max_period,
    in lexicographic order by (|prefix|, prefix, |period|, period)."""
    letters = range(len(alphabet))
    for lp in range(max_prefix + 1):
        for prefix in product(letters, repeat=lp):
            for lv in range(1, max_period + 1):
                for period in product(letters, repeat=lv):
                    yield LassoWord(prefix, period)


def format_lasso(alphabet: Alphabet, word: LassoWord) -> str:
    pre = "".join(alphabet.labels[letter] for letter in word.prefix)
    per = "".join(alphabet.labels[letter] for letter in word.period)
    return f"{pre}({per})^w"


def random_ba(
    seed: int,
    n_states: int,
    n_letters: int = 2,
    density: float = 1.2,
    acc_prob: float = 0.3,
) -> Sgra:
    """Seeded random Buchi automaton.

    ceil(density * n_states) transitions are drawn per letter with uniform
    endpoints (duplicates collapse), each colored {1} with probability
    acc_prob.  State 0 is initial.  Colors are normalized before returning,
    so the result satisfies the classification precondition.
    """
    if n_states < 1 or n_letters < 1:
        raise ValueError("need at least one state and one letter")
    if density <= 0:
        raise ValueError("density must be positive")
    rng = random.Random(seed)
    labels = tuple(_letter_name(i) for i in range(n_letters))
    per_letter = math.ceil(density * n_states)
    transitions = []
    for letter in range(n_letters):
        for _ in range(per_letter):
            src = rng.randrange(n_states)
            dst = rng.randrange(n_states)
            colors = frozenset({1}) if rng.random() < acc_prob else frozenset()
            transitions.append(Transition(src, letter, dst, colors))
    a = Sgra(n_states, named_alphabet(labels), {0}, transitions)
    return normalize_colors(a)


def _letter_name(i: int) -> str:
    name = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        name = chr(ord("a") + r) + name
    return name
