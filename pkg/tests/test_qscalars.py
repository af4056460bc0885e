import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from simplecurrent.abelian import subgroup_generated
from simplecurrent.cyclo import Cyclotomic, root_of_unity
from simplecurrent.errors import ClosedFormMismatch, InvalidElement
from simplecurrent.metric import condense, validate_form
from simplecurrent.qscalars import (
    PolyModule,
    deligne_admissible_subgroup,
    deligne_invertible_data,
    even_braiding_scalar,
    even_invertible_data,
    even_twist_scalar,
    gaussian_factorials,
    odd_inner_sum,
    odd_theta_action,
    odd_theta_action_normalized,
    psi_character,
    quantum_factorials,
    taft_braiding_scalar,
    taft_invertible_data,
)

EVEN_P = list(range(2, 13))
ODD_N = [3, 5, 7, 9, 11, 13, 15]


def to_complex(A):
    return np.array([[complex(a) for a in row] for row in A])


def iota_power(p):
    return root_of_unity(4, p % 4)


@pytest.mark.parametrize("p", EVEN_P)
def test_even_braiding(p):
    assert even_braiding_scalar(p) == iota_power(p)


@pytest.mark.parametrize("p", EVEN_P)
def test_even_twist(p):
    t = even_twist_scalar(p)
    assert t == -iota_power(p)
    # float oracle for the same Gauss-type sum
    S = sum(cmath.exp(2j * cmath.pi * (j + p + 1) ** 2 / (4 * p)) * (-1) ** j for j in range(2 * p))
    assert abs((1 - 1j) * S / (2 * p ** 0.5) - complex(t)) < 1e-9
    assert t * t == (-1) ** p


def test_even_examples():
    assert even_braiding_scalar(2) == -1
    assert even_braiding_scalar(4) == 1
    assert even_braiding_scalar(3) == -root_of_unity(4)
    assert even_twist_scalar(2) == 1
    assert even_twist_scalar(4) == -1
    assert even_twist_scalar(3) == root_of_unity(4)


def test_psi_character_respects_relations():
    for p in EVEN_P:
        chi = psi_character(p)
        assert chi["K"] ** (2 * p) == 1
        assert chi["E"] == 0 and chi["F"] == 0


@pytest.mark.parametrize("p", [4, 8])
def test_even_invertible_classification(p):
    from simplecurrent.pointed import build_category, classify

    data = even_invertible_data(p)
    G = data.base.group
    report = classify(build_category(data.base), subgroup_generated(G, [(1,)]), data)
    assert report["frobenius"] is True and report["symmetric"] is False


def test_factorials():
    q = root_of_unity(12, 1)
    qf = quantum_factorials(q, 5)
    assert qf[1] == 1 and qf[2] == q + q.inverse()
    gf = gaussian_factorials(q, 4)
    assert gf[3] == (1 + q) * (1 + q + q * q)


@pytest.mark.parametrize("N", ODD_N)
def test_poly_module_relations(N):
    mod = PolyModule(N)
    rep = mod.check()
    assert all(rep.values())
    # numeric oracle built from the defining action
    q = cmath.exp(2j * cmath.pi / N)
    K = np.diag([q ** (-2 * i) for i in range(N)])
    E = np.zeros((N, N), complex)
    F = np.zeros((N, N), complex)
    for i in range(1, N):
        E[i - 1, i] = sum(q ** (-2 * t) for t in range(i))
    for i in range(N - 1):
        F[i + 1, i] = -q * sum(q ** (2 * t) for t in range(i))
    assert np.allclose(to_complex(mod.K), K) and np.allclose(to_complex(mod.E), E)
    assert np.allclose(to_complex(mod.F), F)
    Ki = np.linalg.inv(K)
    assert np.allclose(E @ F - F @ E, (K - Ki) / (q - 1 / q))
    assert np.allclose(K @ E, q ** 2 * E @ K)


def test_poly_module_with_literal_f_breaks_commutator():
    mod = PolyModule(5, f_scale=Cyclotomic.one(20))
    rep = mod.relation_report()
    assert not rep["[E,F]"]
    assert rep["KE=q^2EK"] and rep["KF=q^-2FK"] and rep["module_algebra"]


def test_poly_module_rejects_even():
    with pytest.raises(InvalidElement):
        PolyModule(4)


@pytest.mark.parametrize("N", ODD_N)
def test_odd_inner_sum(N):
    value, closed = odd_inner_sum(N)
    assert value == closed
    num = sum(cmath.exp(1j * cmath.pi * (j - 1) ** 2 / N) for j in range(N))
    assert abs(num - complex(closed)) < 1e-9


@pytest.mark.parametrize("N", ODD_N)
def test_odd_theta_normalized_is_identity(N):
    assert all(v == 1 for v in odd_theta_action_normalized(N))


@pytest.mark.parametrize("N", [3, 5, 7])
def test_odd_theta_principal_branch_is_constant_only_at_x(N):
    values = odd_theta_action(N, check=False)
    assert values[1] == 1
    with pytest.raises(ClosedFormMismatch):
        odd_theta_action(N)


@pytest.mark.parametrize("n", range(2, 13))
def test_taft_braiding(n):
    for s in range(n):
        assert taft_braiding_scalar(n, s) == root_of_unity(n, -s * s)


def test_taft_examples():
    assert taft_braiding_scalar(5, 0) == 1
    assert taft_braiding_scalar(3, 1) == root_of_unity(3, -1)
    assert taft_braiding_scalar(9, 3) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 16), st.data())
def test_taft_scalars_obey_scaling_law(n, data):
    s = data.draw(st.integers(0, n - 1))
    k = data.draw(st.integers(0, 2 * n))
    assert taft_braiding_scalar(n, k * s % n) == taft_braiding_scalar(n, s) ** (k * k)


@pytest.mark.parametrize("n", [3, 4, 5, 9])
def test_taft_invertible_data(n):
    data = taft_invertible_data(n)
    m = data.base
    assert validate_form(m.group, m.q_table, m.modulus)
    for s in range(n):
        assert data.theta((s,)) == root_of_unity(n, s * s)
    iso = {H.elements for H in m.isotropic_subgroups()}
    if n == 4:
        assert frozenset({(0,), (2,)}) in iso
    if n == 3:
        assert iso == {frozenset({(0,)})}


@pytest.mark.parametrize("mm", [2, 3, 4, 5, 6])
def test_taft_square_condenses(mm):
    data = taft_invertible_data(mm * mm)
    H = subgroup_generated(data.base.group, [[mm]])
    assert data.base.is_isotropic(H)
    condense(data.base, H)


def test_deligne_examples():
    d = deligne_invertible_data([4])
    assert d.base.q((1,)) == 1 and d.theta((1,)) == -1
    d = deligne_invertible_data([2, 2])
    assert d.base.q((1, 1)) == 1 and d.theta((1, 1)) == 1
    assert deligne_invertible_data([]).base.order == 1


@pytest.mark.parametrize("p_list,expected", [
    ([2, 2], {(0, 0), (1, 1)}),
    ([4, 4], {(0, 0), (1, 1)}),
    ([3], {(0,)}),
])
def test_deligne_admissible(p_list, expected):
    adm = deligne_admissible_subgroup(p_list)
    assert set(adm.elements) == expected
    assert adm.is_subgroup


def test_deligne_admissible_four_factors():
    adm = deligne_admissible_subgroup([2, 2, 2, 2])
    assert adm.is_subgroup and len(adm.elements) == 8


def test_deligne_admissible_is_not_always_closed():
    adm = deligne_admissible_subgroup([3, 5, 3, 5])
    assert not adm.is_subgroup
    for H in adm.subgroups:
        assert all(adm.data.base.q(h) == 1 and adm.data.theta(h) == 1 for h in H.elements)
