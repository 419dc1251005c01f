import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from buchikit.automata import Sgra, Transition
from buchikit.oracle import (
    LassoWord,
    enumerate_lassos,
    format_lasso,
    member,
    random_ba,
)
from buchikit.scc import classify

import autlib


def dumb_member(a, word):
    """Second opinion for small automata.

    Walks the period graph explicitly and searches, per phase-zero anchor,
    for a zero-free closed walk that collects every Inf color.  Collected
    color sets are part of the search state, so no component analysis is
    involved; this shares nothing with the breadth-first/SCC route in
    oracle.member.
    """
    prefix, period = word
    p = len(period)
    inf = frozenset(range(1, a.num_colors))

    def edges(q, ph):
        letter = period[ph]
        return [
            ((t.dst, (ph + 1) % p), t.colors)
            for t in a.out(q)
            if t.letter == letter
        ]

    start = frozenset(a.initial)
    for letter in prefix:
        start = a.succ_set(start, letter)

    seen = {(q, 0) for q in start}
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w, _ in edges(*v):
            if w not in seen:
                seen.add(w)
                stack.append(w)

    for anchor in (v for v in seen if v[1] == 0):
        visited = set()
        frontier = [(anchor, frozenset())]
        while frontier:
            v, m = frontier.pop()
            for w, colors in edges(*v):
                if 0 in colors:
                    continue
                m2 = m | (colors & inf)
                if (w, m2) in visited:
                    continue
                visited.add((w, m2))
                if w == anchor and m2 == inf:
                    return True
                frontier.append((w, m2))
    return False


class TestMemberFixtures:
    def test_inf_a(self, inf_a):
        assert member(inf_a, LassoWord((), (0,)))
        assert member(inf_a, LassoWord((1, 1), (0,)))
        assert member(inf_a, LassoWord((), (0, 1)))
        assert not member(inf_a, LassoWord((0,), (1,)))

    def test_one_loop(self, one_loop):
        assert member(one_loop, LassoWord((), (0,)))
        assert member(one_loop, LassoWord((0, 0), (0, 0, 0)))

    def test_weak_tail(self, weak_tail):
        assert member(weak_tail, LassoWord((), (0,)))

    def test_nac_pair(self, nac_pair):
        # acceptance needs the 0 -> 1 -> 0 round trip forever
        assert member(nac_pair, LassoWord((), (0, 0)))
        assert member(nac_pair, LassoWord((0,), (0, 0)))

    def test_rabin_fixtures(self, rabin_pass_loop, rabin_fin_loop, rabin_escape_chain):
        w = LassoWord((), (0,))
        assert member(rabin_pass_loop, w)
        assert not member(rabin_fin_loop, w)
        assert member(rabin_escape_chain, w)
        # staying on the fin loop of the escape chain never satisfies Inf
        assert not member(
            Sgra(1, autlib.A_ONLY, {0}, [Transition(0, 0, 0, {0})], 2, True), w
        )

    def test_prefix_can_die(self, inf_a):
        only_a = Sgra(1, autlib.AB, {0}, [Transition(0, 0, 0, {1})])
        assert not member(only_a, LassoWord((1,), (0,)))

    def test_no_transitions(self):
        a = Sgra(1, autlib.A_ONLY, {0}, [])
        assert not member(a, LassoWord((), (0,)))


class TestMemberValidation:
    def test_empty_period(self, inf_a):
        with pytest.raises(ValueError, match="period"):
            member(inf_a, LassoWord((0,), ()))

    def test_letter_out_of_range(self, inf_a):
        with pytest.raises(ValueError, match="alphabet"):
            member(inf_a, LassoWord((), (7,)))


class TestEnumerateLassos:
    def test_single_letter_order(self):
        got = list(enumerate_lassos(autlib.A_ONLY, 1, 1))
        assert got == [LassoWord((), (0,)), LassoWord((0,), (0,))]

    def test_counts(self):
        assert len(list(enumerate_lassos(autlib.AB, 1, 1))) == 6
        assert len(list(enumerate_lassos(autlib.AB, 3, 4))) == 450

    def test_no_duplicates(self):
        got = list(enumerate_lassos(autlib.AB, 2, 3))
        assert len(got) == len(set(got))


def test_format_lasso():
    assert format_lasso(autlib.AB, LassoWord((0,), (1,))) == "a(b)^w"
    assert format_lasso(autlib.AB, LassoWord((), (0, 1))) == "(ab)^w"


class TestRandomBa:
    def test_deterministic(self):
        assert random_ba(11, 5) == random_ba(11, 5)

    def test_seeds_differ(self):
        assert random_ba(0, 6, density=2.0) != random_ba(1, 6, density=2.0)

    def test_shape(self):
        a = random_ba(3, 4, n_letters=3, density=1.2)
        assert a.initial == {0}
        assert a.num_states == 4
        assert len(a.alphabet) == 3
        assert a.is_ba()
        # already normalized: classification must not complain
        classify(a)

    def test_validation(self):
        with pytest.raises(ValueError):
            random_ba(0, 0)
        with pytest.raises(ValueError):
            random_ba(0, 3, density=0.0)


@pytest.mark.parametrize("seed", range(30))
def test_member_against_dumb_search(seed):
    a = random_ba(seed, 3, density=1.4, acc_prob=0.4)
    for word in enumerate_lassos(autlib.AB, 2, 3):
        assert member(a, word) == dumb_member(a, word), format_lasso(
            autlib.AB, word
        )


def lasso_strategy(n_letters, max_len=4):
    letters = st.integers(min_value=0, max_value=n_letters - 1)
    return st.tuples(
        st.lists(letters, max_size=max_len).map(tuple),
        st.lists(letters, min_size=1, max_size=max_len).map(tuple),
    ).map(lambda uv: LassoWord(*uv))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), word=lasso_strategy(2))
def test_prefix_absorbs_period(seed, word):
    a = random_ba(seed, 4, density=1.5, acc_prob=0.4)
    absorbed = LassoWord(word.prefix + word.period, word.period)
    assert member(a, word) == member(a, absorbed)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), word=lasso_strategy(2))
def test_period_doubling(seed, word):
    a = random_ba(seed, 4, density=1.5, acc_prob=0.4)
    doubled = LassoWord(word.prefix, word.period + word.period)
    assert member(a, word) == member(a, doubled)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), word=lasso_strategy(2))
def test_period_rotation(seed, word):
    a = random_ba(seed, 4, density=1.5, acc_prob=0.4)
    head, tail = word.period[0], word.period[1:]
    rotated = LassoWord(word.prefix + (head,), tail + (head,))
    assert member(a, word) == member(a, rotated)
