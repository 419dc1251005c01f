import pytest

from buchikit.automata import Sgra, Transition
from buchikit.complement import (
    ComplementConstruction,
    complement,
    complement_mono_nac,
    init_macrostates,
)
from buchikit.emptiness import is_empty
from buchikit.errors import CapacityError
from buchikit.oracle import enumerate_lassos, member, random_ba

import autlib


def accepted(a, lassos):
    return {w for w in lassos if member(a, w)}


class TestFixtureLanguages:
    def test_one_loop_complement_is_empty(self, one_loop):
        c = complement(one_loop)
        assert is_empty(c)
        lassos = list(enumerate_lassos(autlib.A_ONLY, 2, 3))
        assert not accepted(c, lassos)

    def test_universal_complement_is_empty(self, universal_ab):
        c = complement(universal_ab)
        assert is_empty(c)

    def test_empty_language_complement_is_universal(self):
        a = Sgra(
            1,
            autlib.AB,
            {0},
            [Transition(0, 0, 0), Transition(0, 1, 0)],
        )
        c = complement(a)
        assert c.num_colors == 1
        assert not c.fin_used
        lassos = list(enumerate_lassos(autlib.AB, 2, 2))
        assert accepted(c, lassos) == set(lassos)

    def test_inf_a_complement_means_finitely_many_a(self, inf_a):
        c = complement(inf_a)
        assert c.fin_used
        lassos = list(enumerate_lassos(autlib.AB, 2, 3))
        got = accepted(c, lassos)
        expected = {w for w in lassos if 0 not in w.period}
        assert got == expected

    def test_nac_pair_complement(self, nac_pair):
        # the input accepts exactly a^w (the only word over one letter),
        # reached by alternating 0 -> 1 -> 0 forever
        c = complement(nac_pair)
        assert not member(c, next(iter(enumerate_lassos(autlib.A_ONLY, 0, 1))))
        assert is_empty(c)


@pytest.mark.parametrize("seed", range(20))
def test_lasso_differential_small(seed):
    a = random_ba(seed, 2 + seed % 2, density=1.5, acc_prob=0.35)
    c = complement(a)
    for w in enumerate_lassos(autlib.AB, 2, 3):
        assert member(a, w) != member(c, w)


@pytest.mark.parametrize("seed", range(10))
def test_mono_twin_agrees_on_lassos(seed):
    a = random_ba(seed, 2 + seed % 2, density=1.5, acc_prob=0.35)
    c1 = complement(a)
    c2 = complement_mono_nac(a)
    for w in enumerate_lassos(autlib.AB, 2, 3):
        assert member(c1, w) == member(c2, w)


def test_capacity_cap(nac_pair):
    with pytest.raises(CapacityError, match="exceeded 2 macrostates"):
        complement(nac_pair, max_states=2)


def test_postprocess_flag(inf_a):
    raw = complement(inf_a, postprocess=False)
    trimmed = complement(inf_a)
    assert trimmed.num_states <= raw.num_states
    for w in enumerate_lassos(autlib.AB, 2, 2):
        assert member(raw, w) == member(trimmed, w)


def test_rejects_non_ba(rabin_pass_loop):
    with pytest.raises(ValueError, match="BA"):
        complement(rabin_pass_loop)


def test_block_counts():
    a = Sgra(
        6,
        autlib.AB,
        {0},
        [
            Transition(0, 0, 0, {1}),
            Transition(0, 0, 1, {1}),
            Transition(1, 0, 0, {1}),
            Transition(0, 1, 2),
            Transition(0, 1, 4),
            Transition(2, 0, 2),
            Transition(2, 0, 3, {1}),
            Transition(3, 0, 2),
            Transition(4, 0, 4),
            Transition(4, 0, 5, {1}),
            Transition(5, 0, 4),
        ],
    )
    con = ComplementConstruction(a)
    assert con.block_counts() == {"iadac": 0, "iwac": 1, "dac": 0, "nac": 2}


class TestConstructionShape:
    def test_single_initial_macrostate(self, inf_a):
        (macro,) = init_macrostates(inf_a)
        top, parts = macro
        assert top == inf_a.initial
        assert len(parts) == 1

    def test_color_plan_reserves_zero_for_iadac(self, inf_a, weak_tail):
        con_a = ComplementConstruction(inf_a)
        assert con_a.plan.fin_used
        assert con_a.plan.block_colors == (0,)
        con_w = ComplementConstruction(weak_tail)
        assert not con_w.plan.fin_used
        assert con_w.plan.block_colors == (1,)

    def test_dead_branch_prunes_whole_macrostate(self):
        # block dies on letter b (no b transitions at all inside or outside)
        a = Sgra(1, autlib.AB, {0}, [Transition(0, 0, 0, {1})])
        con = ComplementConstruction(a)
        (macro,) = con.init_macrostates()
        assert con.succ_macrostate(macro, 1) != []
        # on b every tracked run dies; successors keep the empty carrier
        for m2, _ in con.succ_macrostate(macro, 1):
            assert m2[0] == frozenset()

    def test_successors_canonically_ordered(self, nac_pair):
        con = ComplementConstruction(nac_pair)
        (macro,) = con.init_macrostates()
        succs = con.succ_macrostate(macro, 0)
        keys = [con.macro_key(m) for m, _ in succs]
        assert keys == sorted(keys)
        assert len(keys) == len(set(keys))
