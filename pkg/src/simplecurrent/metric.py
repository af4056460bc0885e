"""Quadratic forms on finite abelian groups and their condensations.

A form is stored as a table of exponents modulo M = 2 * lcm(orders): the
entry at index i stands for q(g_i) = exp(2 pi i e / M).
"""

from __future__ import annotations

import math
import os
from collections import Counter, deque
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import kernels
from .abelian import (
    FinAbGroup,
    Subgroup,
    subgroup_generated,
    subquotient,
)
from .cyclo import Cyclotomic, root_of_unity
from .errors import (
    ClosedFormMismatch,
    Degenerate,
    InvalidElement,
    InvalidForm,
    NotIsotropic,
    TooLarge,
    WellDefinednessViolation,
)

__all__ = [
    "MetricGroup",
    "RibbonPointedData",
    "CondensationResult",
    "FormReport",
    "validate_form",
    "condense",
    "condense_ribbon",
    "anisotropic_kernel",
    "are_isometric",
    "witt_equal",
    "witt_invariant",
    "cyclic_form",
    "hyperbolic_form",
    "three_fermion_form",
    "direct_sum",
    "from_function",
]

DEFAULT_ISO_BOUND = int(os.environ.get("SIMPLECURRENT_ISO_BOUND", "512"))
DEFAULT_MAX_ORDER = int(os.environ.get("SIMPLECURRENT_MAX_ORDER", "4096"))

# the full three-variable check is cubic; above this size only the middle
# variable is restricted to generators, which is equivalent
_FULL_CHECK_LIMIT = 128


def canonical_modulus(orders) -> int:
    return 2 * (math.lcm(*orders) if len(orders) else 1)


class FormReport:
    """Outcome of validate_form: ``valid`` plus the first violation found."""

    def __init__(self, valid, law=None, elements=None, detail=""):
        self.valid = valid
        self.law = law
        self.elements = elements
        self.detail = detail

    def __bool__(self):
        return self.valid

    def __repr__(self):
        if self.valid:
            return "FormReport(valid)"
        return f"FormReport(invalid: {self.law} at {self.elements})"

    def to_json(self):
        out = {"valid": self.valid}
        if not self.valid:
            out["violation"] = {"law": self.law, "elements": self.elements, "detail": self.detail}
        return out


def _multiples_index(G: FinAbGroup, k: int) -> np.ndarray:
    if G.rank == 0:
        return np.zeros(1, dtype=np.int64)
    c = (G.coords * k) % np.array(G.orders, dtype=np.int64)
    return c @ np.array(G.strides, dtype=np.int64)


def validate_form(group: FinAbGroup, q, modulus: int) -> FormReport:
    """Check every quadratic-form law for an exponent table mod ``modulus``.

    Never raises on bad data; the first failing law is reported.
    """
    G = group
    q = np.asarray(q, dtype=np.int64)
    if q.ndim != 1 or q.size != G.size:
        return FormReport(False, "length", None, f"expected {G.size} entries, got {q.size}")
    if modulus < 1:
        return FormReport(False, "modulus", None, "modulus must be positive")
    q = q % modulus
    if q[0] != 0:
        return FormReport(False, "identity", [list(G.zero)], "q(0) must be 1")
    neg = q[G.neg_table]
    bad = np.flatnonzero(neg != q)
    if bad.size:
        g = G.element(int(bad[0]))
        return FormReport(False, "symmetry", [list(g)], "q(g) != q(-g)")
    for k in range(2, G.exponent + 1):
        lhs = q[_multiples_index(G, k)]
        bad = np.flatnonzero((lhs - k * k * q) % modulus)
        if bad.size:
            g = G.element(int(bad[0]))
            return FormReport(False, "scaling", [list(g), k], f"q({k}g) != q(g)^{k * k}")
    ys = None if G.size <= _FULL_CHECK_LIMIT else [G.index(e) for e in G.basis()]
    hit = kernels.form_defect(q, G.add_table, modulus, ys)
    if hit is not None:
        return FormReport(
            False,
            "polarization",
            [list(G.element(i)) for i in hit],
            "polarisation is not a bicharacter",
        )
    return FormReport(True)


def _as_group(group):
    return group if isinstance(group, FinAbGroup) else FinAbGroup(group)


class MetricGroup:
    """A finite abelian group with a quadratic form.

    ``q`` is a sequence of exponents; when ``modulus`` is given they are read
    modulo it and then rescaled to the canonical modulus.
    """

    def __init__(self, group, q, modulus=None, check=True):
        self.group = _as_group(group)
        M = canonical_modulus(self.group.orders)
        given = M if modulus is None else int(modulus)
        table = np.asarray(list(q), dtype=np.int64)
        if check:
            report = validate_form(self.group, table, given)
            if not report:
                raise InvalidForm(report.detail, law=report.law, elements=report.elements)
        if given != M:
            scaled = table * M
            if np.any(scaled % given):
                raise InvalidForm("form values are not 2*exp(G)-th roots of unity", modulus=given)
            table = scaled // given
        self.modulus = M
        self.q_table = table % M
        self.q_table.setflags(write=False)

    # basic access ----------------------------------------------------------
    @property
    def order(self) -> int:
        return self.group.size

    def __repr__(self):
        return f"MetricGroup({list(self.group.orders)}, q={self.q_table.tolist()}, M={self.modulus})"

    def __eq__(self, other):
        return (
            isinstance(other, MetricGroup)
            and self.group == other.group
            and np.array_equal(self.q_table, other.q_table)
        )

    def __hash__(self):
        return hash((self.group.orders, self.q_table.tobytes()))

    def q_exp(self, g) -> int:
        return int(self.q_table[self.group.index(self.group.check(g))])

    def q(self, g) -> Cyclotomic:
        return root_of_unity(self.modulus, self.q_exp(g))

    def q_fraction(self, g) -> Fraction:
        """q(g) as a fraction of a full turn."""
        return Fraction(self.q_exp(g), self.modulus)

    @cached_property
    def b_table(self) -> np.ndarray:
        """Polarisation b(g, h) as exponents mod M, indexed by element index."""
        return kernels.bichar_table(self.q_table, self.group.add_table, self.modulus)

    def b_exp(self, g, h) -> int:
        G = self.group
        return int(self.b_table[G.index(G.check(g)), G.index(G.check(h))])

    def bilinear(self, g, h) -> Cyclotomic:
        return root_of_unity(self.modulus, self.b_exp(g, h))

    # structure --------------------------------------------------------------
    def validate(self) -> FormReport:
        return validate_form(self.group, self.q_table, self.modulus)

    def radical(self) -> Subgroup:
        rows = np.flatnonzero(~self.b_table.any(axis=1))
        return Subgroup(self.group, [self.group.element(int(i)) for i in rows])

    def is_nondegenerate(self) -> bool:
        return bool((self.b_table.any(axis=1)).sum() == self.group.size - 1)

    @cached_property
    def _gauss(self) -> Cyclotomic:
        counts = np.bincount(self.q_table, minlength=self.modulus)
        return Cyclotomic.from_exponents(self.modulus, counts.tolist())

    def gauss_sum(self) -> Cyclotomic:
        tau = self._gauss
        if self.is_nondegenerate() and tau * tau.conj() != self.order:
            raise ClosedFormMismatch("|tau|^2 != |G| for a nondegenerate form")
        return tau

    def is_isotropic(self, H: Subgroup) -> bool:
        G = self.group
        return all(self.q_table[G.index(h)] == 0 for h in H.elements)

    def perp(self, H: Subgroup) -> Subgroup:
        """Orthogonal complement {g : b(g, h) = 1 for all h in H}."""
        G = self.group
        cols = [G.index(h) for h in H.generators]
        if not cols:
            return Subgroup(G, G.elements)
        rows = np.flatnonzero(~self.b_table[:, cols].any(axis=1))
        return Subgroup(G, [G.element(int(i)) for i in rows])

    def isotropic_subgroups(self, max_order: int | None = None) -> list[Subgroup]:
        """All subgroups on which q is identically 1, sorted."""
        bound = DEFAULT_MAX_ORDER if max_order is None else max_order
        G = self.group
        if G.size > bound:
            raise TooLarge(f"group of order {G.size} exceeds bound {bound}", order=G.size, bound=bound)
        zero_q = {G.element(int(i)) for i in np.flatnonzero(self.q_table == 0)}
        cyclic = []
        seen = set()
        for g in sorted(zero_q):
            s = subgroup_generated(G, [g]).elements
            if s not in seen:
                seen.add(s)
                cyclic.append(s)
        found = set(cyclic)
        queue = deque(cyclic)
        while queue:
            s = queue.popleft()
            for c in cyclic:
                if c <= s:
                    continue
                j = frozenset(G.add(a, b) for a in s for b in c)
                if j in found or not j <= zero_q:
                    continue
                found.add(j)
                queue.append(j)
        subs = [Subgroup(G, s) for s in found]
        subs.sort(key=Subgroup.sort_key)
        return subs

    def lagrangian_subgroups(self) -> list[Subgroup]:
        if not self.is_nondegenerate():
            return []
        return [H for H in self.isotropic_subgroups() if H.order ** 2 == self.order]

    # serialisation ----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "orders": list(self.group.orders),
            "modulus": self.modulus,
            "q": self.q_table.tolist(),
        }

    @classmethod
    def from_json(cls, data) -> "MetricGroup":
        try:
            orders = data["orders"]
            q = data["q"]
        except (KeyError, TypeError) as exc:
            raise InvalidForm(f"missing field {exc}") from None
        return cls(orders, q, data.get("modulus"))


class RibbonPointedData:
    """A metric group with a twist theta = sign * q + chi (in exponents).

    ``chi`` is a character of order at most two.  ``twist_sign`` is +1 when
    theta balances against the braiding b and -1 when it balances against
    the inverse braiding.
    """

    def __init__(self, base: MetricGroup, chi, twist_sign: int = 1, modulus=None, check=True):
        if twist_sign not in (1, -1):
            raise InvalidForm("twist_sign must be +1 or -1")
        self.base = base
        self.twist_sign = twist_sign
        M = base.modulus
        chi = np.asarray(list(chi), dtype=np.int64)
        if chi.size != base.order:
            raise InvalidForm(f"chi needs {base.order} entries, got {chi.size}")
        if modulus is not None and int(modulus) != M:
            scaled = chi * M
            if np.any(scaled % int(modulus)):
                raise InvalidForm("chi values do not fit the canonical modulus")
            chi = scaled // int(modulus)
        self.chi_table = chi % M
        self.chi_table.setflags(write=False)
        if check:
            self._check()

    def _check(self):
        G = self.base.group
        M = self.base.modulus
        chi = self.chi_table
        bad = np.argwhere((chi[G.add_table] - chi[:, None] - chi[None, :]) % M)
        if bad.size:
            i, j = (int(v) for v in bad[0])
            raise InvalidForm("chi is not a character", law="character",
                              elements=[list(G.element(i)), list(G.element(j))])
        th = self.theta_table
        bad = np.argwhere((th[G.add_table] - th[:, None] - th[None, :]
                           - self.twist_sign * self.base.b_table) % M)
        if bad.size:
            i, j = (int(v) for v in bad[0])
            raise InvalidForm("twist violates the balancing law", law="balancing",
                              elements=[list(G.element(i)), list(G.element(j))])
        bad = np.flatnonzero(th[G.neg_table] != th)
        if bad.size:
            raise InvalidForm("theta(g) != theta(-g)", law="duality",
                              elements=[list(G.element(int(bad[0])))])

    @cached_property
    def theta_table(self) -> np.ndarray:
        return (self.twist_sign * self.base.q_table + self.chi_table) % self.base.modulus

    def theta(self, g) -> Cyclotomic:
        G = self.base.group
        return root_of_unity(self.base.modulus, int(self.theta_table[G.index(G.check(g))]))

    def chi(self, g) -> Cyclotomic:
        G = self.base.group
        return root_of_unity(self.base.modulus, int(self.chi_table[G.index(G.check(g))]))

    def __repr__(self):
        return f"RibbonPointedData({self.base!r}, chi={self.chi_table.tolist()}, sign={self.twist_sign})"

    def to_json(self) -> dict:
        out = self.base.to_json()
        out["chi"] = self.chi_table.tolist()
        if self.twist_sign != 1:
            out["twist_sign"] = self.twist_sign
        return out

    @classmethod
    def from_json(cls, data) -> "RibbonPointedData":
        base = MetricGroup.from_json(data)
        if "chi" not in data:
            raise InvalidForm("missing field 'chi'")
        return cls(base, data["chi"], int(data.get("twist_sign", 1)), modulus=data.get("modulus"))


class CondensationResult:
    """Output of condense: the form on H-perp / H with bookkeeping."""

    def __init__(self, source, subgroup, perp, condensed, coset_map, flags, ribbon=None):
        self.source = source
        self.subgroup = subgroup
        self.perp = perp
        self.condensed = condensed
        self.coset_map = coset_map
        self.flags = flags
        self.ribbon = ribbon

    @property
    def is_lagrangian(self):
        return self.flags["is_lagrangian"]

    def to_json(self):
        out = {
            "subgroup": self.subgroup.to_json(),
            "perp": self.perp.to_json(),
            "condensed": (self.ribbon or self.condensed).to_json(),
            "flags": dict(self.flags),
        }
        return out


def _check_subgroup(m: MetricGroup, H: Subgroup):
    if H.parent != m.group:
        raise InvalidElement("subgroup lives in a different group")


def condense(m: MetricGroup, H: Subgroup) -> CondensationResult:
    """Pass to H-perp / H with the induced form."""
    _check_subgroup(m, H)
    G = m.group
    for h in sorted(H.elements):
        if m.q_table[G.index(h)] != 0:
            raise NotIsotropic(f"q({list(h)}) != 1", element=list(h))
    nondeg = m.is_nondegenerate()
    flags = {
        "is_ftc": True,
        "is_ribbon": None,
        "is_mtc": None,
        "is_lagrangian": nondeg and H.order ** 2 == G.size,
    }
    if H.is_trivial():
        perp = Subgroup(G, G.elements)
        return CondensationResult(m, H, perp, m, {g: g for g in G.elements}, flags)
    K = m.perp(H)
    quo = subquotient(G, K, H)
    T = quo.target
    qbar = np.full(T.size, -1, dtype=np.int64)
    for x, y in quo.mapping.items():
        i = T.index(y)
        v = m.q_table[G.index(x)]
        if qbar[i] < 0:
            qbar[i] = v
        elif qbar[i] != v:
            raise WellDefinednessViolation("q is not constant on an H-coset", element=list(x))
    condensed = MetricGroup(T, qbar, modulus=m.modulus)
    if nondeg:
        if T.size * H.order ** 2 != G.size:
            raise ClosedFormMismatch("size law fails for a nondegenerate form")
        if not condensed.is_nondegenerate():
            raise ClosedFormMismatch("condensed form of a nondegenerate form is degenerate")
    return CondensationResult(m, H, K, condensed, dict(quo.mapping), flags)


def condense_ribbon(r: RibbonPointedData, H: Subgroup) -> CondensationResult:
    """condense plus the twist: symmetric iff theta is trivial on H."""
    res = condense(r.base, H)
    G = r.base.group
    ribbon = all(r.theta_table[G.index(h)] == 0 for h in H.elements)
    res.flags["is_ribbon"] = ribbon
    res.flags["is_mtc"] = ribbon and r.base.is_nondegenerate()
    if ribbon:
        if H.is_trivial():
            res.ribbon = r
        else:
            T = res.condensed.group
            chibar = np.full(T.size, -1, dtype=np.int64)
            for x, y in res.coset_map.items():
                i = T.index(y)
                v = r.chi_table[G.index(x)]
                if chibar[i] < 0:
                    chibar[i] = v
                elif chibar[i] != v:
                    raise WellDefinednessViolation("chi is not constant on an H-coset", element=list(x))
            res.ribbon = RibbonPointedData(res.condensed, chibar, r.twist_sign, modulus=r.base.modulus)
    return res


def anisotropic_kernel(m: MetricGroup) -> MetricGroup:
    """Condense by the smallest isotropic element until none is left."""
    if not m.is_nondegenerate():
        raise Degenerate("anisotropic kernel needs a nondegenerate form")
    cur = m
    while True:
        zeros = np.flatnonzero(cur.q_table == 0)
        if zeros.size <= 1:
            return cur
        g = cur.group.element(int(zeros[1]))
        cur = condense(cur, subgroup_generated(cur.group, [g])).condensed


def _q_profile(m: MetricGroup):
    G = m.group
    return Counter((G.order_of(g), Fraction(int(m.q_table[i]), m.modulus)) for i, g in enumerate(G.elements))


def are_isometric(a: MetricGroup, b: MetricGroup, bound: int | None = None):
    """Return an isometry a -> b as a dict on basis images, or None."""
    bound = DEFAULT_ISO_BOUND if bound is None else bound
    if a.order != b.order:
        return None
    if a.order > bound:
        raise TooLarge(f"isomorphism search on order {a.order} exceeds bound {bound}",
                       order=a.order, bound=bound)
    if _q_profile(a) != _q_profile(b):
        return None
    if a._gauss != b._gauss:
        return None
    A, B = a.group, b.group
    basis = A.basis()
    n = len(basis)
    fa = [Fraction(int(a.q_table[A.index(e)]), a.modulus) for e in basis]
    ba = [[Fraction(a.b_exp(e, f), a.modulus) for f in basis] for e in basis]
    qb = {g: Fraction(int(b.q_table[i]), b.modulus) for i, g in enumerate(B.elements)}
    cands = [
        [y for y in B.elements if B.order_of(y) == A.orders[i] and qb[y] == fa[i]]
        for i in range(n)
    ]
    images = []

    def search(i, span):
        if i == n:
            return len(span) == B.size
        for y in cands[i]:
            if any(Fraction(b.b_exp(y, images[j]), b.modulus) != ba[i][j] for j in range(i)):
                continue
            new = _span_with(B, span, y)
            if len(new) != len(span) * A.orders[i]:
                continue
            images.append(y)
            if search(i + 1, new):
                return True
            images.pop()
        return False

    if search(0, {B.zero}):
        return {tuple(e): y for e, y in zip(basis, images)}
    return None


def _span_with(G, span, y):
    out = set(span)
    cur = set(span)
    while True:
        cur = {G.add(s, y) for s in cur}
        if cur <= out:
            return out
        out |= cur


def witt_invariant(m: MetricGroup):
    """(|G|, tau) with |tau|^2 = |G| and (tau / conj tau)^8 = 1 checked."""
    if not m.is_nondegenerate():
        raise Degenerate("Witt invariant needs a nondegenerate form")
    tau = m.gauss_sum()
    if tau * tau.conj() != m.order:
        raise ClosedFormMismatch("|tau|^2 != |G|")
    if (tau / tau.conj()) ** 8 != 1:
        raise ClosedFormMismatch("Gauss sum phase is not an eighth root of unity")
    return m.order, tau


def witt_equal(a: MetricGroup, b: MetricGroup, bound: int | None = None) -> bool:
    """Equality of Witt classes via isometry of anisotropic kernels."""
    bound = DEFAULT_ISO_BOUND if bound is None else bound
    if not a.is_nondegenerate() or not b.is_nondegenerate():
        raise Degenerate("Witt equivalence needs nondegenerate forms")
    ta, tb = a.gauss_sum(), b.gauss_sum()
    if ta / ta.conj() != tb / tb.conj():
        return False
    ka, kb = anisotropic_kernel(a), anisotropic_kernel(b)
    for k in (ka, kb):
        if k.order > bound:
            raise TooLarge(f"anisotropic kernel of order {k.order} exceeds bound {bound}",
                           order=k.order, bound=bound)
    return are_isometric(ka, kb, bound) is not None


# constructors ---------------------------------------------------------------
def from_function(orders, f) -> MetricGroup:
    """Form whose value at g is exp(2 pi i f(g)) for a Fraction-valued f."""
    G = _as_group(orders)
    M = canonical_modulus(G.orders)
    table = []
    for g in G.elements:
        v = Fraction(f(g)) * M
        if v.denominator != 1:
            raise InvalidForm(f"value at {list(g)} is not a {M}-th root of unity")
        table.append(int(v) % M)
    return MetricGroup(G, table)


def cyclic_form(n: int, a: int = 1) -> MetricGroup:
    """Z_n with q(x) = exp(2 pi i a x^2 / 2n); needs a*n even."""
    return MetricGroup([n], [a * x * x % (2 * n) for x in range(n)], modulus=2 * n)


def hyperbolic_form(n: int) -> MetricGroup:
    """Z_n x Z_n with q(x, y) = exp(2 pi i x y / n)."""
    return MetricGroup([n, n], [2 * x * y % (2 * n) for x in range(n) for y in range(n)], modulus=2 * n)


def three_fermion_form() -> MetricGroup:
    """Z_2 x Z_2 with q = -1 off the identity."""
    return MetricGroup([2, 2], [0, 2, 2, 2], modulus=4)


def direct_sum(a: MetricGroup, b: MetricGroup) -> MetricGroup:
    orders = a.group.orders + b.group.orders
    M = canonical_modulus(orders)
    sa, sb = M // a.modulus, M // b.modulus
    table = (a.q_table[:, None] * sa + b.q_table[None, :] * sb) % M
    return MetricGroup(orders, table.ravel().tolist(), modulus=M)
