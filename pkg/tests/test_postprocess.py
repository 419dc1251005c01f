import pytest

from buchikit.automata import Sgra, Transition
from buchikit.emptiness import is_empty, is_empty_oracle
from buchikit.oracle import enumerate_lassos, member
from buchikit.postprocess import trim

import autlib


def test_empty_language_trims_to_nothing(rabin_fin_loop):
    t = trim(rabin_fin_loop)
    assert t.num_states == 0
    assert not t.initial
    assert not t.transitions


def test_live_automaton_unchanged(rabin_pass_loop):
    assert trim(rabin_pass_loop) is rabin_pass_loop


def test_unreachable_accepting_loop_dropped(one_loop):
    a = Sgra(
        2,
        autlib.A_ONLY,
        {0},
        [Transition(0, 0, 0, {1}), Transition(1, 0, 1, {1})],
    )
    t = trim(a)
    assert t.num_states == 1
    assert t.initial == {0}


def test_dead_tail_dropped():
    # 1 is reachable but cannot reach the accepting loop
    a = Sgra(
        2,
        autlib.AB,
        {0},
        [Transition(0, 0, 0, {1}), Transition(0, 1, 1), Transition(1, 1, 1)],
    )
    t = trim(a)
    assert t.num_states == 1
    assert [(x.src, x.letter, x.dst) for x in t.transitions] == [(0, 0, 0)]


def test_generalized_component_must_cover_all_inf_colors():
    # the loop sees color 1 but never color 2, so nothing survives
    a = Sgra(1, autlib.A_ONLY, {0}, [Transition(0, 0, 0, {1})], 3, False)
    assert trim(a).num_states == 0


def test_fin_free_path_required():
    # the only loop carries color 0; an accepting run cannot settle anywhere
    a = Sgra(
        2,
        autlib.A_ONLY,
        {0},
        [Transition(0, 0, 1, {0, 1}), Transition(1, 0, 0)],
        2,
        True,
    )
    assert trim(a).num_states == 0


def test_renumbering_is_dense_and_ordered():
    # states 0, 2, 4 survive and become 0, 1, 2
    a = Sgra(
        5,
        autlib.AB,
        {0},
        [
            Transition(0, 0, 2),
            Transition(2, 0, 4),
            Transition(4, 0, 4, {1}),
            Transition(1, 1, 1),
            Transition(3, 1, 1),
        ],
    )
    t = trim(a)
    assert t.num_states == 3
    assert [(x.src, x.dst) for x in t.transitions] == [(0, 1), (1, 2), (2, 2)]


@pytest.mark.parametrize("seed", range(60))
def test_idempotent_and_language_preserving(seed):
    a = autlib.random_sgra(seed * 13 + 5, max_states=7, max_letters=2, max_colors=3)
    t = trim(a)
    assert trim(t) is t
    assert is_empty_oracle(t) == is_empty_oracle(a)
    assert is_empty(t) == is_empty(a)
    if len(a.alphabet) <= 2:
        for w in enumerate_lassos(a.alphabet, 2, 3):
            assert member(a, w) == member(t, w)
