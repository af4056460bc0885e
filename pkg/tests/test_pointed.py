import itertools

import numpy as np
import pytest
from conftest import CORPUS, corpus_params, forms
from hypothesis import given, settings

from simplecurrent.abelian import FinAbGroup, subgroup_generated
from simplecurrent.cyclo import root_of_unity
from simplecurrent.errors import InvalidElement, NotIsotropic
from simplecurrent.metric import MetricGroup, RibbonPointedData, cyclic_form, hyperbolic_form
from simplecurrent.pointed import (
    CondensationAlgebra,
    Psi,
    build_algebra,
    build_category,
    classify,
    nakayama_trace,
    solve_commutative_cocycle,
    verify_frobenius,
)

Z4_IOTA = MetricGroup([4], [0, 1, 0, 1], modulus=4)
PARITY2 = MetricGroup([2, 2], [0, 2, 2, 0], modulus=4)
PARITY3 = MetricGroup([2, 2, 2], [2 * (sum(g) % 2) for g in FinAbGroup([2, 2, 2])], modulus=4)


def brute_coherence(cat):
    """Pentagon and both hexagons straight from omega_exp and c_exp."""
    G, M = cat.group, cat.modulus
    E = G.elements
    w, c, add = cat.omega_exp, cat.c_exp, G.add
    for x, y, z in itertools.product(E, repeat=3):
        # hexagon 1: c(x, y+z) = c(x,y) c(x,z) w(y,x,z) / (w(x,y,z) w(y,z,x))
        lhs = c(x, add(y, z))
        rhs = c(x, y) + c(x, z) + w(y, x, z) - w(x, y, z) - w(y, z, x)
        if (lhs - rhs) % M:
            return "hexagon1"
        lhs = c(add(x, y), z)
        rhs = c(x, z) + c(y, z) - w(x, z, y) + w(x, y, z) + w(z, x, y)
        if (lhs - rhs) % M:
            return "hexagon2"
    if G.size <= 16:
        for x, y, z, u in itertools.product(E, repeat=4):
            lhs = w(add(x, y), z, u) + w(x, y, add(z, u))
            rhs = w(x, y, z) + w(x, add(y, z), u) + w(y, z, u)
            if (lhs - rhs) % M:
                return "pentagon"
    return None


def test_trivial_group():
    cat = build_category(MetricGroup([], [0]))
    assert cat.c_exp((), ()) == 0 and cat.omega_exp((), (), ()) == 0
    alg = build_algebra(cat, subgroup_generated(cat.group, []))
    assert verify_frobenius(alg)["all_passed"]
    assert nakayama_trace(alg) == 1


def test_semion_diagonal():
    cat = build_category(cyclic_form(2, 1))
    assert cat.c_exp((1,), (1,)) * 4 // cat.modulus == 1  # c(1,1) = iota


@corpus_params([(k, m) for k, m in CORPUS if m.order <= 32])
def test_coherence_brute_force(form):
    cat = build_category(form)
    report = cat.check(pentagon_limit=64, hexagon_limit=256)
    assert report["pentagon"] and report["hexagon"] and report["diagonal"]
    assert brute_coherence(cat) is None
    G = cat.group
    for g in G.elements:
        assert cat.c_exp(g, g) == form.q_exp(g)
    assert cat.balancing_holds()


def test_z4_hexagons_all_triples():
    cat = build_category(Z4_IOTA)
    assert cat.check()["hexagon"] is True
    assert brute_coherence(cat) is None


def test_corrupted_cocycle_is_caught():
    cat = build_category(hyperbolic_form(2))
    from simplecurrent import kernels

    omega = cat.omega_table.copy()
    omega[5] = (omega[5] + 1) % cat.modulus
    assert kernels.pentagon_defect(omega, cat.group.add_table, cat.modulus) is not None


def residual(cat, H, psi):
    """Independent check of d(psi) = omega and psi(a,b) - psi(b,a) = c(a,b)."""
    G = cat.group
    M = psi.modulus
    s = M // cat.modulus
    bad = 0
    for a, b, c in itertools.product(sorted(H.elements), repeat=3):
        d = psi(b, c) - psi(G.add(a, b), c) + psi(a, G.add(b, c)) - psi(a, b)
        if (d + s * cat.omega_exp(a, b, c)) % M:
            bad += 1
    for a, b in itertools.product(sorted(H.elements), repeat=2):
        if (psi(a, b) - psi(b, a) - s * cat.c_exp(a, b)) % M:
            bad += 1
    return bad


def test_psi_examples():
    cat = build_category(Z4_IOTA)
    H = subgroup_generated(cat.group, [[2]])
    psi = solve_commutative_cocycle(cat, H)
    assert residual(cat, H, psi) == 0
    triv = solve_commutative_cocycle(cat, subgroup_generated(cat.group, []))
    assert triv.values == {} or not any(triv.values.values())
    with pytest.raises(NotIsotropic):
        solve_commutative_cocycle(cat, subgroup_generated(cat.group, [[1]]))


@corpus_params()
def test_psi_solves_for_every_isotropic_subgroup(form):
    cat = build_category(form)
    for H in form.isotropic_subgroups():
        psi = solve_commutative_cocycle(cat, H)
        assert residual(cat, H, psi) == 0
        for h in H.elements:
            assert cat.c_exp(h, h) == 0
            for k in H.elements:
                assert (cat.c_exp(h, k) + cat.c_exp(k, h)) % cat.modulus == 0


def test_delta_expansion_z4():
    cat = build_category(Z4_IOTA)
    H = subgroup_generated(cat.group, [[2]])
    alg = build_algebra(cat, H)
    terms = [t for t in alg.delta_coefficients() if t[0] == (0,)]
    expected = sorted([((0,), (0,), (0,), -alg.psi((0,), (0,)) % alg.modulus),
                       ((0,), (2,), (2,), -alg.psi((2,), (2,)) % alg.modulus)])
    assert terms == expected
    report = verify_frobenius(alg)
    assert report["all_passed"]
    assert nakayama_trace(alg) == 2


def test_parity_examples():
    cat = build_category(PARITY2)
    alg = build_algebra(cat, subgroup_generated(cat.group, [(1, 1)]))
    assert verify_frobenius(alg)["all_passed"]
    cat3 = build_category(PARITY3)
    even = subgroup_generated(cat3.group, [(1, 1, 0), (0, 1, 1)])
    alg3 = build_algebra(cat3, even)
    assert verify_frobenius(alg3)["all_passed"]
    assert nakayama_trace(alg3) == 4


@corpus_params([(k, m) for k, m in CORPUS if m.order <= 64])
def test_frobenius_suite(form):
    cat = build_category(form)
    for H in form.isotropic_subgroups():
        alg = build_algebra(cat, H)
        report = verify_frobenius(alg)
        assert report["all_passed"], report
        assert nakayama_trace(alg) == H.order


def test_wrong_psi_breaks_axioms():
    cat = build_category(hyperbolic_form(4))
    H = subgroup_generated(cat.group, [(1, 0)])
    good = solve_commutative_cocycle(cat, H)
    a, b = (1, 0), (2, 0)
    bad = Psi(H, {**good.values, (a, b): (good(a, b) + 1) % good.modulus}, good.modulus)
    report = verify_frobenius(CondensationAlgebra(cat, H, bad))
    assert not report["commutativity"] and not report["all_passed"]


@settings(max_examples=25, deadline=None)
@given(forms())
def test_random_forms_frobenius(m):
    cat = build_category(m)
    for H in m.isotropic_subgroups():
        alg = build_algebra(cat, H)
        assert verify_frobenius(alg)["all_passed"]
        assert nakayama_trace(alg) == H.order


def test_classify_examples():
    z2 = MetricGroup([2], [0, 0], modulus=4)
    data = RibbonPointedData(z2, [0, 2], modulus=4)
    report = classify(build_category(z2), subgroup_generated(z2.group, [(1,)]), data)
    assert report["frobenius"] is True and report["symmetric"] is False
    parity_data = RibbonPointedData(PARITY2, [0, 2, 2, 0], modulus=4)
    H = subgroup_generated(PARITY2.group, [(1, 1)])
    report = classify(build_category(PARITY2), H, parity_data)
    assert report["symmetric"] is True and report["mtc"] is False
    semion = cyclic_form(2, 1)
    report = classify(build_category(semion), subgroup_generated(semion.group, []),
                      RibbonPointedData(semion, [0, 0]))
    assert all(report[k] for k in ("ftc", "frobenius", "special", "commutative", "symmetric"))
    assert report["mtc"] == semion.is_nondegenerate()


def test_classify_rejects():
    cat = build_category(cyclic_form(4, 1))
    with pytest.raises(NotIsotropic):
        classify(cat, subgroup_generated(cat.group, [[2]]))
    other = RibbonPointedData(cyclic_form(2, 1), [0, 0])
    with pytest.raises(InvalidElement):
        classify(cat, subgroup_generated(cat.group, []), other)


def test_omega_table_matches_scalar_access():
    cat = build_category(hyperbolic_form(3))
    G = cat.group
    n = G.size
    table = cat.omega_table.reshape(n, n, n)
    for x, y, z in itertools.product(range(n), repeat=3):
        assert table[x, y, z] == cat.omega_exp(G.element(x), G.element(y), G.element(z))
    assert np.array_equal(cat.c_table, np.array([[cat.c_exp(a, b) for b in G] for a in G]))


def test_root_of_unity_embedding_of_delta():
    cat = build_category(Z4_IOTA)
    alg = build_algebra(cat, subgroup_generated(cat.group, [[2]]))
    for h, u, v, e in alg.delta_coefficients():
        assert root_of_unity(alg.modulus, e) * root_of_unity(alg.modulus, alg.psi(u, v)) == 1
