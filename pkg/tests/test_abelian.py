import itertools

import pytest
from hypothesis import given, settings, strategies as st

from simplecurrent.abelian import (
    FinAbGroup,
    Subgroup,
    all_subgroups,
    quotient,
    structure,
    subgroup_from_elements,
    subgroup_generated,
    subquotient,
)
from simplecurrent.errors import InvalidElement, NotASubgroup, TooLarge

GROUPS = [[], [1], [2], [4], [6], [12], [2, 2], [2, 4], [3, 3], [4, 4], [2, 6], [2, 2, 2], [2, 2, 4], [3, 9],
          [8], [2, 8], [4, 8], [6, 6]]
group_ids = [str(g) for g in GROUPS]


def brute_subgroups(G):
    """Every subset containing 0 and closed under subtraction (tiny groups only)."""
    elems = [x for x in G.elements if x != G.zero]
    out = []
    for r in range(len(elems) + 1):
        for subset in itertools.combinations(elems, r):
            s = set(subset) | {G.zero}
            if all(G.sub(a, b) in s for a in s for b in s):
                out.append(frozenset(s))
    return out


def test_element_order_is_mixed_radix():
    G = FinAbGroup([2, 3])
    assert G.elements[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert all(G.index(G.element(i)) == i for i in range(G.size))


def test_check_rejects_out_of_range():
    G = FinAbGroup([4])
    with pytest.raises(InvalidElement):
        G.check([4])
    with pytest.raises(InvalidElement):
        subgroup_generated(G, [[5]])
    with pytest.raises(InvalidElement):
        FinAbGroup([0])


def test_subgroup_generated_examples():
    assert subgroup_generated(FinAbGroup([4]), [[2]]).elements == {(0,), (2,)}
    V = FinAbGroup([2, 2])
    assert subgroup_generated(V, [(1, 0), (0, 1)]).order == 4
    Z6 = FinAbGroup([6])
    closure = {(0,)}
    while True:
        nxt = closure | {((x[0] + 4) % 6,) for x in closure}
        if nxt == closure:
            break
        closure = nxt
    assert subgroup_generated(Z6, [[4]]).elements == closure == {(0,), (2,), (4,)}


def test_all_subgroups_examples():
    Z4 = all_subgroups(FinAbGroup([4]))
    assert [sorted(H.elements) for H in Z4] == [[(0,)], [(0,), (2,)], [(0,), (1,), (2,), (3,)]]
    assert len(all_subgroups(FinAbGroup([2, 2]))) == 5
    assert len(all_subgroups(FinAbGroup([]))) == 1


@pytest.mark.parametrize("orders", [[4], [6], [2, 2], [2, 4], [3, 3], [2, 2, 2], [8], [2, 6]],
                         ids=lambda o: str(o))
def test_all_subgroups_matches_brute_force(orders):
    G = FinAbGroup(orders)
    subs = all_subgroups(G)
    assert {H.elements for H in subs} == set(brute_subgroups(G))
    assert len(subs) == len({H.elements for H in subs})
    assert subs == sorted(subs, key=Subgroup.sort_key)


def test_all_subgroups_bound():
    with pytest.raises(TooLarge):
        all_subgroups(FinAbGroup([4, 4]), max_order=8)


def test_subgroup_from_elements_checks_closure():
    G = FinAbGroup([4])
    assert subgroup_from_elements(G, [[0], [2]]).order == 2
    with pytest.raises(NotASubgroup):
        subgroup_from_elements(G, [[0], [1]])


def test_quotient_examples():
    Z4 = FinAbGroup([4])
    q = quotient(Z4, subgroup_generated(Z4, [[2]]))
    assert q.target.orders == (2,)
    assert q((0,)) == q((2,)) == (0,) and q((1,)) == q((3,)) == (1,)
    G = FinAbGroup([2, 4])
    triv = quotient(G, subgroup_generated(G, []))
    assert triv.target.size == G.size
    assert len(set(triv.mapping.values())) == G.size
    full = quotient(G, subgroup_generated(G, G.basis()))
    assert full.target.orders == ()


@pytest.mark.parametrize("orders", GROUPS, ids=group_ids)
def test_quotient_laws_for_every_subgroup(orders):
    G = FinAbGroup(orders)
    for H in all_subgroups(G):
        q = quotient(G, H)
        T = q.target
        assert G.size == H.order * T.size
        assert set(q.mapping.values()) == set(T.elements)
        assert {x for x in G.elements if q(x) == T.zero} == set(H.elements)
        for x in G.elements:
            for y in G.elements:
                assert q(G.add(x, y)) == T.add(q(x), q(y))


@pytest.mark.parametrize("orders", GROUPS, ids=group_ids)
def test_normalization_idempotent(orders):
    G = FinAbGroup(orders)
    N, iso = G.normalized()
    assert N.size == G.size
    assert all(b % a == 0 for a, b in zip(N.orders, N.orders[1:]))
    assert N.normalized()[0].orders == N.orders
    assert set(iso.values()) == set(N.elements)
    for x in G.elements:
        for y in G.elements:
            assert iso[G.add(x, y)] == N.add(iso[x], iso[y])


def test_structure_of_subgroup():
    G = FinAbGroup([4, 4])
    orders, iso = structure(G, [(2, 0), (0, 3)])
    assert orders == (2, 4)
    assert len(iso) == 8


def test_subquotient():
    G = FinAbGroup([4, 4])
    K = subgroup_generated(G, [(1, 0), (0, 2)])
    H = subgroup_generated(G, [(2, 0)])
    sq = subquotient(G, K, H)
    assert sq.target.size == K.order // H.order
    with pytest.raises(NotASubgroup):
        subquotient(G, H, K)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 6, 8]), min_size=1, max_size=3), st.data())
def test_random_generators_give_subgroup(orders, data):
    G = FinAbGroup(orders)
    gens = data.draw(st.lists(st.sampled_from(G.elements), max_size=3))
    H = subgroup_generated(G, gens)
    assert G.size % H.order == 0
    assert all(G.add(a, b) in H for a in H for b in H)
    assert subgroup_generated(G, H.generators) == H
    q = quotient(G, H)
    assert H.order * q.target.size == G.size
