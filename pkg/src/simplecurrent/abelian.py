"""Finite abelian groups given as products of cyclic groups."""

from __future__ import annotations

import itertools
import math
import os
from collections import deque
from functools import cached_property

import numpy as np

from .errors import InvalidElement, NotASubgroup, TooLarge
from .linalg import smith_normal_form

__all__ = [
    "FinAbGroup",
    "Subgroup",
    "Quotient",
    "subgroup_generated",
    "all_subgroups",
    "quotient",
    "structure",
    "subquotient",
    "subgroup_from_elements",
]

DEFAULT_MAX_ORDER = int(os.environ.get("SIMPLECURRENT_MAX_ORDER", "4096"))


class FinAbGroup:
    """Z_{n_1} x ... x Z_{n_r} with elements stored as tuples.

    Elements are enumerated in mixed radix with the last coordinate varying
    fastest, so ``index`` and ``element`` are inverse bijections onto
    ``range(size)``.
    """

    def __init__(self, orders):
        orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in orders):
            raise InvalidElement("cyclic factor orders must be positive", orders=list(orders))
        self.orders = orders
        self.rank = len(orders)
        self.size = math.prod(orders)
        self.exponent = math.lcm(*orders) if orders else 1
        self.zero = (0,) * self.rank
        strides = []
        s = 1
        for n in reversed(orders):
            strides.append(s)
            s *= n
        self.strides = tuple(reversed(strides))

    def __repr__(self):
        return f"FinAbGroup({list(self.orders)})"

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    def check(self, x) -> tuple[int, ...]:
        """Validate coordinates and return x as a tuple."""
        x = tuple(int(c) for c in x)
        if len(x) != self.rank or any(not 0 <= c < n for c, n in zip(x, self.orders)):
            raise InvalidElement(f"{list(x)} is not an element of Z{list(self.orders)}")
        return x

    def reduce(self, x) -> tuple[int, ...]:
        return tuple(int(c) % n for c, n in zip(x, self.orders, strict=True))

    def index(self, x) -> int:
        return sum(c * s for c, s in zip(x, self.strides))

    def element(self, i: int) -> tuple[int, ...]:
        return self.elements[i]

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def sub(self, x, y):
        return tuple((a - b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x):
        return tuple(-a % n for a, n in zip(x, self.orders))

    def scale(self, k: int, x):
        return tuple(k * a % n for a, n in zip(x, self.orders))

    def order_of(self, x) -> int:
        return math.lcm(*(n // math.gcd(a, n) for a, n in zip(x, self.orders))) if self.rank else 1

    def basis(self):
        """The standard generators e_i."""
        return [self.reduce(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    @cached_property
    def coords(self) -> np.ndarray:
        """(size, rank) array of element coordinates."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(self.elements, dtype=np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        """add_table[i, j] = index(element(i) + element(j))."""
        if self.rank == 0:
            return np.zeros((1, 1), dtype=np.int64)
        c = self.coords
        s = (c[:, None, :] + c[None, :, :]) % np.array(self.orders, dtype=np.int64)
        return (s @ np.array(self.strides, dtype=np.int64)).astype(np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        if self.rank == 0:
            return np.zeros(1, dtype=np.int64)
        c = (-self.coords) % np.array(self.orders, dtype=np.int64)
        return (c @ np.array(self.strides, dtype=np.int64)).astype(np.int64)

    def normalized(self):
        """Invariant-factor form: returns (group, iso) with iso a dict."""
        orders, iso = structure(self, self.basis())
        return FinAbGroup(orders), iso


class Subgroup:
    """A subgroup of a FinAbGroup, stored with its full element set."""

    def __init__(self, parent: FinAbGroup, elements):
        self.parent = parent
        self.elements = frozenset(elements)
        self.generators = _canonical_generators(parent, self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return tuple(x) in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other):
        return self.elements <= other.elements

    def __repr__(self):
        return f"Subgroup({[list(g) for g in self.generators]} in {self.parent!r})"

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def sort_key(self):
        return (self.order, self.generators)

    def indices(self) -> np.ndarray:
        return np.array(sorted(self.parent.index(x) for x in self.elements), dtype=np.int64)

    def join(self, other: "Subgroup") -> "Subgroup":
        G = self.parent
        return Subgroup(G, {G.add(a, b) for a in self.elements for b in other.elements})

    def to_json(self):
        return {"generators": [list(g) for g in self.generators], "order": self.order}


def _extend(G, span, x):
    """span + <x> for a subgroup ``span`` (a set)."""
    out = set(span)
    frontier = set(span)
    while True:
        frontier = {G.add(s, x) for s in frontier} - out
        if not frontier:
            return out
        out |= frontier


def _canonical_generators(G, elements):
    gens = []
    span = {G.zero}
    for x in sorted(elements):
        if x not in span:
            gens.append(x)
            span = _extend(G, span, x)
            if len(span) == len(elements):
                break
    return tuple(gens)


def subgroup_generated(G: FinAbGroup, generators) -> Subgroup:
    span = {G.zero}
    for g in generators:
        span = _extend(G, span, G.check(g))
    return Subgroup(G, span)


def subgroup_from_elements(G: FinAbGroup, elements) -> Subgroup:
    """Wrap an element set, checking closure."""
    elems = {G.check(x) for x in elements}
    if G.zero not in elems or any(G.sub(a, b) not in elems for a in elems for b in elems):
        raise NotASubgroup("element set is not closed under subtraction")
    return Subgroup(G, elems)


def all_subgroups(G: FinAbGroup, max_order: int | None = None) -> list[Subgroup]:
    """Every subgroup of G, sorted by (order, canonical generators)."""
    bound = DEFAULT_MAX_ORDER if max_order is None else max_order
    if G.size > bound:
        raise TooLarge(f"group of order {G.size} exceeds bound {bound}", order=G.size, bound=bound)
    cyclic = {}
    for x in G.elements:
        s = frozenset(_extend(G, {G.zero}, x))
        cyclic.setdefault(s, None)
    cyclic_sets = list(cyclic)
    found = set(cyclic_sets)
    queue = deque(cyclic_sets)
    while queue:
        s = queue.popleft()
        for c in cyclic_sets:
            if c <= s:
                continue
            j = frozenset(G.add(a, b) for a in s for b in c)
            if j not in found:
                found.add(j)
                queue.append(j)
    subs = [Subgroup(G, s) for s in found]
    subs.sort(key=Subgroup.sort_key)
    return subs


def _left_kernel_rows(A):
    """Integer basis for {v : v A = 0} for a matrix with full column rank."""
    U, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i])
    return [U[i] for i in range(r, len(U))]


def structure(T: FinAbGroup, generators):
    """Abstract form of the subgroup S of T generated by ``generators``.

    Returns (orders, iso) where iso maps each element of S to its
    coordinates in Z_{d_1} x ... x Z_{d_k}, with 1 < d_1 | d_2 | ... .
    """
    gens = [T.check(g) for g in generators if any(g)]
    if not gens:
        return (), {T.zero: ()}
    k, t = len(gens), T.rank
    A = [list(g) for g in gens] + [[T.orders[i] if i == j else 0 for j in range(t)] for i in range(t)]
    relations = [row[:k] for row in _left_kernel_rows(A)]
    _, D, V = smith_normal_form(relations)
    d = [D[i][i] for i in range(k)]
    keep = [i for i in range(k) if d[i] != 1]
    orders = tuple(d[i] for i in keep)

    def coords(c):
        return tuple(sum(c[j] * V[j][i] for j in range(k)) % d[i] for i in keep)

    # breadth first search for a preimage vector of each element
    iso = {T.zero: tuple(0 for _ in keep)}
    pre = {T.zero: (0,) * k}
    queue = deque([T.zero])
    while queue:
        x = queue.popleft()
        for j, g in enumerate(gens):
            y = T.add(x, g)
            if y not in pre:
                c = list(pre[x])
                c[j] += 1
                pre[y] = tuple(c)
                iso[y] = coords(c)
                queue.append(y)
    return orders, iso


class Quotient:
    """The projection G -> G/H with an explicit cyclic decomposition."""

    def __init__(self, group, subgroup, target, mapping):
        self.group = group
        self.subgroup = subgroup
        self.target = target
        self.mapping = mapping

    def __call__(self, x):
        return self.mapping[tuple(x)]

    def representatives(self):
        """One preimage per coset, the smallest element in each."""
        reps = {}
        for x in sorted(self.mapping):
            reps.setdefault(self.mapping[x], x)
        return reps


def quotient(G: FinAbGroup, H: Subgroup) -> Quotient:
    """G/H via the Smith form of the preimage lattice of H."""
    r = G.rank
    rows = [list(g) for g in H.generators] + [[G.orders[i] if i == j else 0 for j in range(r)] for i in range(r)]
    if r == 0:
        return Quotient(G, H, FinAbGroup(()), {G.zero: ()})
    _, D, V = smith_normal_form(rows)
    d = [D[i][i] for i in range(r)]
    keep = [i for i in range(r) if d[i] != 1]
    target = FinAbGroup(tuple(d[i] for i in keep))
    mapping = {}
    for x in G.elements:
        mapping[x] = tuple(sum(x[j] * V[j][i] for j in range(r)) % d[i] for i in keep)
    return Quotient(G, H, target, mapping)


def subquotient(G: FinAbGroup, K: Subgroup, H: Subgroup) -> Quotient:
    """K/H for H <= K <= G, as a map defined on the elements of K."""
    if not H.elements <= K.elements:
        raise NotASubgroup("H is not contained in K")
    q = quotient(G, H)
    orders, iso = structure(q.target, [q(g) for g in K.generators])
    mapping = {x: iso[q(x)] for x in K.elements}
    return Quotient(G, H, FinAbGroup(orders), mapping)
