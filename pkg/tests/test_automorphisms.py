import itertools

import numpy as np
import pytest

from difsets.automorphisms import (Automorphism, automorphism_group, induce_on_quotient,
                                   stabilizing_automorphisms)
from difsets.catalog import catalog_entry, catalog_group, catalog_ids
from difsets.errors import CapacityError, InvalidArgumentError
from difsets.groups import normal_subgroups, quotient, whole_group

from conftest import aut_of


def brute_automorphisms(G):
    n = G.order
    t = G.table
    out = []
    for rest in itertools.permutations(range(1, n)):
        f = np.array((0,) + rest)
        if np.array_equal(f[t], t[f[:, None], f[None, :]]):
            out.append(tuple(int(x) for x in f))
    return sorted(out)


@pytest.mark.parametrize("cid, size", [((7, 1), 6), ((4, 2), 6), ((6, 1), 6), ((5, 1), 4), ((6, 2), 2)])
def test_against_bijection_filter(cid, size):
    G = catalog_group(cid)
    A = automorphism_group(G)
    assert A.size == size
    assert [tuple(int(x) for x in r) for r in A.images] == brute_automorphisms(G)


@pytest.mark.parametrize("cid", [c for c in catalog_ids() if c.order <= 36 and c != (32, 51)], ids=str)
def test_size_matches_catalog_record(cid):
    # the catalog records |Aut| from an independent source
    assert aut_of(cid).size == catalog_entry(cid).aut_order


@pytest.mark.parametrize("cid", [c for c in catalog_ids() if c.order <= 16], ids=str)
def test_homomorphism_and_closure(cid):
    G = catalog_group(cid)
    A = aut_of(cid)
    imgs = A.images.astype(np.int64)
    t = G.table
    for f in imgs:
        assert f[0] == 0
        assert np.array_equal(np.sort(f), np.arange(G.order))
        assert np.array_equal(f[t], t[f[:, None], f[None, :]])
    if A.size <= 10**4:
        rows = {r.tobytes() for r in imgs}
        for f in imgs[:50]:
            inv = np.argsort(f)
            assert inv.tobytes() in rows
            for g in imgs:
                assert g[f].tobytes() in rows
    assert any((f == np.arange(G.order)).all() for f in imgs)


def test_capacity_error():
    G = catalog_group((16, 14))
    with pytest.raises(CapacityError):
        automorphism_group(G, cap=1000)


def test_stabilizers():
    G = catalog_group((15, 1))
    A = automorphism_group(G)
    assert len(stabilizing_automorphisms(A, whole_group(G))) == A.size
    N3 = normal_subgroups(G)[1]
    assert len(stabilizing_automorphisms(A, N3)) == 8
    V = catalog_group((4, 2))
    AV = automorphism_group(V)
    two = normal_subgroups(V)[1]
    assert len(stabilizing_automorphisms(AV, two)) == 2


def test_induced_inversion_c15(c15):
    A = automorphism_group(c15)
    N3 = normal_subgroups(c15)[1]
    Q = quotient(c15, N3)
    inversion = Automorphism(c15, tuple(int(x) for x in c15.inverse))
    assert inversion in A.elements
    psi = induce_on_quotient(inversion, Q)
    H = Q.quotient
    assert psi.images == tuple(int(x) for x in H.inverse)


def test_identity_induces_identity(c15):
    Q = quotient(c15, normal_subgroups(c15)[1])
    ident = Automorphism(c15, tuple(range(15)))
    assert induce_on_quotient(ident, Q).images == tuple(range(5))


@pytest.mark.parametrize("cid", [(8, 3), (12, 3), (16, 3), (16, 13), (18, 3)], ids=str)
def test_induced_maps_commute_with_projection(cid):
    G = catalog_group(cid)
    A = aut_of(cid)
    for N in normal_subgroups(G):
        Q = quotient(G, N)
        H = Q.quotient
        for phi in stabilizing_automorphisms(A, N):
            psi = np.array(induce_on_quotient(phi, Q).images)
            assert np.array_equal(psi[Q.coset_of], Q.coset_of[np.array(phi.images)])
            assert np.array_equal(psi[H.table], H.table[psi[:, None], psi[None, :]])


def test_induce_requires_stabilizer():
    G = catalog_group((4, 2))
    A = automorphism_group(G)
    N = normal_subgroups(G)[1]
    Q = quotient(G, N)
    moving = [phi for phi in A.elements if {phi(x) for x in N.members} != set(N.members)]
    assert moving
    with pytest.raises(InvalidArgumentError):
        induce_on_quotient(moving[0], Q)
