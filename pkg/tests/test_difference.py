import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from difsets.automorphisms import Automorphism, automorphism_group
from difsets.catalog import catalog_group
from difsets.difference import (Parameters, apply_automorphism, apply_automorphism_set,
                                complement_set, difference_profile, difference_set_parameters,
                                indicator, is_difference_set, is_difference_sum,
                                is_equivalent_difference_set, is_equivalent_difference_sum,
                                pushforward, translate, translate_set)
from difsets.errors import InvalidArgumentError
from difsets.groups import normal_subgroups, quotient, whole_group

from conftest import SMALL_IDS, aut_of


def naive_profile(G, coeffs):
    out = [0] * G.order
    for a in range(G.order):
        for b in range(G.order):
            out[G.mul(a, int(G.inverse[b]))] += coeffs[a] * coeffs[b]
    return out


def naive_orbit(G, A, D):
    """All sorted images g*phi(D), enumerated directly."""
    out = set()
    for phi in A.elements:
        for g in range(G.order):
            out.add(tuple(sorted(G.mul(g, phi(d - 1)) + 1 for d in D)))
    return out


def test_profile_examples(c7):
    assert list(difference_profile(c7, indicator(c7, [1, 2, 4]))) == [3, 1, 1, 1, 1, 1, 1]
    assert list(difference_profile(c7, [0] * 7)) == [0] * 7
    assert list(difference_profile(c7, [1] * 7)) == [7] * 7


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(6, 1), (8, 4), (12, 3), (16, 13)]), st.data())
def test_profile_against_pair_loop(cid, data):
    G = catalog_group(cid)
    coeffs = data.draw(st.lists(st.integers(0, 4), min_size=G.order, max_size=G.order))
    prof = difference_profile(G, coeffs)
    assert list(prof) == naive_profile(G, coeffs)
    assert prof.sum() == sum(coeffs) ** 2


def test_is_difference_set_examples(c7):
    assert difference_set_parameters(c7, [2, 3, 5]) == Parameters(7, 3, 1)
    assert difference_set_parameters(c7, [2]) == Parameters(7, 1, 0)
    assert not is_difference_set(c7, [1, 2, 3])
    with pytest.raises(InvalidArgumentError):
        is_difference_set(c7, [3, 2])


def test_is_difference_sum_examples(c15):
    Q = quotient(c15, normal_subgroups(c15)[1])
    assert is_difference_sum(Q, [3, 1, 1, 1, 1])
    assert not is_difference_sum(Q, [3, 1, 1, 1, 0])
    assert not is_difference_sum(Q, [4, 1, 1, 1, 0])  # entry above |N|
    top = quotient(c15, whole_group(c15))
    assert is_difference_sum(top, [7])
    assert not is_difference_sum(top, [6])


def test_translate_and_automorphism(c7):
    assert translate_set(c7, [1, 2, 4], 1) == (1, 2, 4)
    assert translate_set(c7, [1, 2, 4], 2) == (2, 3, 5)
    inversion = Automorphism(c7, tuple(int(x) for x in c7.inverse))
    assert apply_automorphism_set([1, 2, 4], inversion) == (1, 5, 7)
    v = indicator(c7, [1, 2, 4])
    assert list(np.flatnonzero(translate(c7, v, 2)) + 1) == [2, 3, 5]
    assert list(np.flatnonzero(apply_automorphism(v, inversion)) + 1) == [1, 5, 7]


def test_complement(c7):
    comp = complement_set(c7, [1, 2, 4])
    assert comp == (3, 5, 6, 7)
    assert difference_set_parameters(c7, comp) == Parameters(7, 4, 2)
    assert complement_set(c7, comp) == (1, 2, 4)
    single = complement_set(c7, [2])
    assert len(single) == 6 and difference_set_parameters(c7, single) == Parameters(7, 6, 5)
    with pytest.raises(InvalidArgumentError):
        complement_set(c7, [1, 2, 3])


def test_equivalence_examples(c7):
    A = automorphism_group(c7)
    assert is_equivalent_difference_set(c7, A, [2, 3, 5], [3, 4, 6])
    assert is_equivalent_difference_set(c7, A, [2, 3, 5], [2, 3, 5])
    assert not is_equivalent_difference_set(c7, A, [2, 3, 5], [1, 2, 3])
    assert len(naive_orbit(c7, A, [2, 3, 5])) == 14
    assert [1, 2, 3] not in [list(x) for x in naive_orbit(c7, A, [2, 3, 5])]


@pytest.mark.parametrize("cid", SMALL_IDS, ids=str)
def test_set_equivalence_matches_orbits(cid):
    G = catalog_group(cid)
    A = aut_of(cid)
    rng = random.Random(cid.order * 100 + cid.id)
    k = max(1, G.order // 3)
    for _ in range(6):
        D1 = sorted(rng.sample(range(1, G.order + 1), k))
        orbit = naive_orbit(G, A, D1)
        D2 = sorted(rng.sample(range(1, G.order + 1), k))
        member = list(rng.choice(sorted(orbit)))
        assert is_equivalent_difference_set(G, A, D1, member)
        assert is_equivalent_difference_set(G, A, member, D1)
        assert is_equivalent_difference_set(G, A, D1, D2) == (tuple(D2) in orbit)
        assert is_equivalent_difference_set(G, A, D2, D1) == (tuple(D2) in orbit)


def test_sum_equivalence_examples(c15):
    A = automorphism_group(c15)
    Q = quotient(c15, normal_subgroups(c15)[1])
    assert is_equivalent_difference_sum(Q, A, [3, 1, 1, 1, 1], [1, 3, 1, 1, 1])
    assert is_equivalent_difference_sum(Q, A, [3, 1, 1, 1, 1], [1, 1, 1, 1, 3])
    assert is_equivalent_difference_sum(Q, A, [3, 1, 1, 1, 1], [3, 1, 1, 1, 1])
    assert not is_equivalent_difference_sum(Q, A, [3, 1, 1, 1, 1], [2, 2, 1, 1, 1])


def test_sum_translates_are_equivalent():
    G = catalog_group((8, 2))  # C4 x C2
    A = automorphism_group(G)
    for N in normal_subgroups(G)[1:-1]:
        Q = quotient(G, N)
        H = Q.quotient
        vec = list(range(H.order))
        for g in range(H.order):
            moved = [0] * H.order
            for a in range(H.order):
                moved[H.mul(g, a)] = vec[a]
            assert is_equivalent_difference_sum(Q, A, moved, vec)


def test_pushforward(c15):
    Q = quotient(c15, normal_subgroups(c15)[1])
    assert sum(pushforward(Q, [1, 2, 3, 5, 6, 9, 11])) == 7
    assert pushforward(Q, list(range(1, 16))) == (3, 3, 3, 3, 3)
