"""Shared fixtures: a seeded corpus of metric groups and hypothesis strategies."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from simplecurrent.metric import (
    MetricGroup,
    cyclic_form,
    direct_sum,
    from_function,
    hyperbolic_form,
    three_fermion_form,
)


def general_form(orders, diag, cross):
    """q(x) = sum a_i x_i^2 / 2n_i + sum_{i<j} b_ij x_i x_j / gcd(n_i, n_j).

    Odd n_i force a_i even so the value is well defined.
    """
    orders = list(orders)
    a = [d * (2 if n % 2 else 1) for d, n in zip(diag, orders)]

    def f(x):
        v = sum(Fraction(a[i] * x[i] * x[i], 2 * orders[i]) for i in range(len(orders)))
        k = 0
        for i in range(len(orders)):
            for j in range(i + 1, len(orders)):
                v += Fraction(cross[k] * x[i] * x[j], math.gcd(orders[i], orders[j]))
                k += 1
        return v

    return from_function(orders, f)


def _named():
    semion = cyclic_form(2, 1)
    return [
        ("semion", semion),
        ("antisemion", cyclic_form(2, 3)),
        ("Z3", cyclic_form(3, 2)),
        ("Z4_zeta8", cyclic_form(4, 1)),
        ("Z4_iota_degenerate", MetricGroup([4], [0, 1, 0, 1], modulus=4)),
        ("Z5", cyclic_form(5, 2)),
        ("Z8_3", cyclic_form(8, 3)),
        ("Z9", cyclic_form(9, 2)),
        ("hyp2", hyperbolic_form(2)),
        ("hyp3", hyperbolic_form(3)),
        ("hyp4", hyperbolic_form(4)),
        ("three_fermion", three_fermion_form()),
        ("parity_Z2xZ2", MetricGroup([2, 2], [0, 0, 0, 2], modulus=4)),
        ("hyp2+hyp2", direct_sum(hyperbolic_form(2), hyperbolic_form(2))),
        ("Z4(1)+Z4(3)", direct_sum(cyclic_form(4, 1), cyclic_form(4, 3))),
        ("hyp2+Z8(3)", direct_sum(hyperbolic_form(2), cyclic_form(8, 3))),
        ("3F+3F", direct_sum(three_fermion_form(), three_fermion_form())),
        ("semion+antisemion", direct_sum(semion, cyclic_form(2, 3))),
        ("hyp4+Z4", direct_sum(hyperbolic_form(4), cyclic_form(4, 1))),
    ]


def _random(seed, count):
    rng = random.Random(seed)
    shapes = [[2], [3], [4], [6], [8], [12], [16], [2, 2], [2, 4], [3, 3], [4, 4], [2, 6], [2, 8],
              [3, 6], [2, 2, 2], [2, 2, 4], [2, 2, 2, 2], [4, 8], [2, 4, 4], [5, 5]]
    out = []
    while len(out) < count:
        orders = rng.choice(shapes)
        r = len(orders)
        diag = [rng.randrange(2 * n) for n in orders]
        cross = [rng.randrange(12) for _ in range(r * (r - 1) // 2)]
        out.append((f"rand{len(out)}_{orders}", general_form(orders, diag, cross)))
    return out


def build_corpus():
    return _named() + _random(20240917, 16)


CORPUS = build_corpus()
NONDEGENERATE = [(k, m) for k, m in CORPUS if m.is_nondegenerate()]


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


def corpus_params(items=None):
    items = CORPUS if items is None else items
    return pytest.mark.parametrize("form", [m for _, m in items], ids=[k for k, _ in items])


SHAPES = [[2], [3], [4], [5], [6], [8], [9], [2, 2], [2, 4], [3, 3], [4, 4], [2, 2, 2], [2, 6], [2, 2, 4]]


@st.composite
def forms(draw, shapes=SHAPES):
    orders = draw(st.sampled_from(shapes))
    r = len(orders)
    diag = [draw(st.integers(0, 2 * n - 1)) for n in orders]
    cross = [draw(st.integers(0, 11)) for _ in range(r * (r - 1) // 2)]
    return general_form(orders, diag, cross)
