"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element of Q(zeta_n) is stored as integer coordinates over the power basis
1, zeta, ..., zeta^(phi(n)-1) together with a positive common denominator.
The coordinates are always reduced modulo the n-th cyclotomic polynomial, so
two elements of the same order are equal exactly when their stored data are.
Elements of different orders are compared and combined inside Q(zeta_lcm).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath

from .errors import DivisionByZero, ClosedFormMismatch

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "root_of_unity",
    "geometric_sum",
    "gauss_sqrt",
    "numeric_eval",
    "from_exponents",
]


def _poly_divmod_exact(num, den):
    """Divide integer polynomials (low degree first); ``den`` must be monic."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divmod_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _moebius(n):
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def _totient(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


class _Field:
    """Per-order tables: degree, x^k mod Phi_n, normalised trace weights."""

    __slots__ = ("order", "degree", "reduction", "trace_weights", "zero")

    def __init__(self, n):
        phi = cyclotomic_polynomial(n)
        d = len(phi) - 1
        self.order = n
        self.degree = d
        # x^k mod Phi_n for 0 <= k < max(n, 2d); enough for products and
        # for exponent vectors indexed mod n.
        top = max(n, 2 * d)
        table = []
        cur = [0] * d
        cur[0] = 1
        for k in range(top):
            if k < d:
                vec = [0] * d
                vec[k] = 1
                table.append(tuple(vec))
                if k == d - 1:
                    cur = vec
                continue
            # multiply previous power by x
            lead = cur[-1]
            nxt = [0] + cur[:-1]
            if lead:
                for j in range(d):
                    nxt[j] -= lead * phi[j]
            cur = nxt
            table.append(tuple(cur))
        self.reduction = table
        self.trace_weights = tuple(
            Fraction(_moebius(n // math.gcd(n, k)), _totient(n // math.gcd(n, k)))
            for k in range(d)
        )
        self.zero = (0,) * d

    def reduce(self, coeffs):
        """Reduce an integer coefficient list modulo Phi_n."""
        d = self.degree
        if len(coeffs) > len(self.reduction):
            # x^n = 1 modulo Phi_n
            folded = [0] * self.order
            for k, c in enumerate(coeffs):
                folded[k % self.order] += c
            coeffs = folded
        out = list(coeffs[:d])
        if len(out) < d:
            out.extend([0] * (d - len(out)))
        red = self.reduction
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                row = red[k]
                for j in range(d):
                    rj = row[j]
                    if rj:
                        out[j] += c * rj
        return out


@lru_cache(maxsize=None)
def _field(n) -> _Field:
    return _Field(n)


def _normalise(num, den):
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = math.gcd(den, *num)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class Cyclotomic:
    """Immutable element of Q(zeta_order) in canonical form."""

    __slots__ = ("order", "_num", "_den", "_hash")

    def __init__(self, order: int, num, den: int = 1, _canonical: bool = False):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        if _canonical:
            self._num, self._den = tuple(num), den
        else:
            F = _field(order)
            num = list(num)
            if len(num) > F.degree:
                num = F.reduce(num)
            elif len(num) < F.degree:
                num = num + [0] * (F.degree - len(num))
            self._num, self._den = _normalise(num, den)
        self._hash = None

    # construction -----------------------------------------------------------
    @classmethod
    def from_rational(cls, order: int, value) -> "Cyclotomic":
        value = Fraction(value)
        d = _field(order).degree
        num = [0] * d
        num[0] = value.numerator
        return cls(order, num, value.denominator, _canonical=True)

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclotomic":
        return cls.from_rational(order, 0)

    @classmethod
    def one(cls, order: int = 1) -> "Cyclotomic":
        return cls.from_rational(order, 1)

    @classmethod
    def from_exponents(cls, order: int, counts) -> "Cyclotomic":
        """Build sum_k counts[k] * zeta_order^k.

        ``counts`` is a mapping or sequence indexed by exponent; exponents are
        taken mod ``order`` and coefficients may be ints or Fractions.
        """
        F = _field(order)
        items = counts.items() if hasattr(counts, "items") else enumerate(counts)
        acc = {}
        den = 1
        for k, c in items:
            if not c:
                continue
            c = Fraction(c)
            k %= order
            acc[k] = acc.get(k, 0) + c
            den = den * c.denominator // math.gcd(den, c.denominator)
        vec = [0] * len(F.reduction)
        for k, c in acc.items():
            vec[k] += (c * den).numerator
        num = F.reduce(vec)
        return cls(order, *_normalise(num, den), _canonical=True)

    # basic data ------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self._num)

    def coefficients(self) -> dict[int, Fraction]:
        """Nonzero canonical coordinates as {exponent: Fraction}."""
        return {k: Fraction(c, self._den) for k, c in enumerate(self._num) if c}

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # embeddings ------------------------------------------------------------
    def embed(self, order: int) -> "Cyclotomic":
        """Image in Q(zeta_order); ``order`` must be a multiple of self.order."""
        if order == self.order:
            return self
        if self.order % order == 0:
            return self._restrict(order)
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) into Q(zeta_{order})")
        step = order // self.order
        F = _field(order)
        vec = [0] * len(F.reduction)
        for k, c in enumerate(self._num):
            if c:
                vec[k * step] += c
        return Cyclotomic(order, *_normalise(F.reduce(vec), self._den), _canonical=True)

    def _restrict(self, order: int) -> "Cyclotomic":
        """Preimage in the subfield Q(zeta_order); ValueError if there is none."""
        basis = [Cyclotomic(order, [int(j == k) for j in range(_field(order).degree)]).embed(self.order)
                 for k in range(_field(order).degree)]
        dim = len(self._num)
        # rows: one per coordinate of Q(zeta_n); columns: subfield basis, then target
        rows = [[Fraction(b._num[i], b._den) for b in basis] + [Fraction(self._num[i], self._den)]
                for i in range(dim)]
        ncols = len(basis)
        pivots = []
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, dim) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [v * inv for v in rows[r]]
            for i in range(dim):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        if any(row[-1] for row in rows[r:]):
            raise ValueError(f"{self} does not lie in Q(zeta_{order})")
        coeffs = [Fraction(0)] * ncols
        for i, c in enumerate(pivots):
            coeffs[c] = rows[i][-1]
        den = math.lcm(*(f.denominator for f in coeffs)) if coeffs else 1
        return Cyclotomic(order, [int(f * den) for f in coeffs], den)

    def galois(self, a: int) -> "Cyclotomic":
        """Apply zeta -> zeta^a (a coprime to the order)."""
        n = self.order
        if math.gcd(a, n) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        F = _field(n)
        vec = [0] * len(F.reduction)
        for k, c in enumerate(self._num):
            if c:
                vec[(a * k) % n] += c
        return Cyclotomic(n, *_normalise(F.reduce(vec), self._den), _canonical=True)

    def conj(self) -> "Cyclotomic":
        return self.galois(-1 % self.order) if self.order > 2 else self

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return self, other
            n = math.lcm(self.order, other.order)
            return self.embed(n), other.embed(n)
        if isinstance(other, (int, Rational)):
            return self, Cyclotomic.from_rational(self.order, other)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        num = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
        return Cyclotomic(a.order, *_normalise(num, a._den * b._den), _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self._num), self._den, _canonical=True)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            other = Fraction(other)
            num = [c * other.numerator for c in self._num]
            return Cyclotomic(self.order, *_normalise(num, self._den * other.denominator), _canonical=True)
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        d = a.degree
        an, bn = a._num, b._num
        conv = [0] * (2 * d - 1)
        for i in range(d):
            ai = an[i]
            if ai:
                for j in range(d):
                    bj = bn[j]
                    if bj:
                        conv[i + j] += ai * bj
        num = _field(a.order).reduce(conv)
        return Cyclotomic(a.order, *_normalise(num, a._den * b._den), _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via extended Euclid against Phi_n over Q."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.order
        # polynomials as Fraction lists, lowest degree first
        r0 = [Fraction(c) for c in cyclotomic_polynomial(n)]
        r1 = [Fraction(c, self._den) for c in self._num]
        _trim(r1)
        s0, s1 = [Fraction(0)], [Fraction(1)]  # coefficients of self
        while any(r1):
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r0 is a nonzero constant: self * s0 == r0 mod Phi_n
        c = r0[0]
        coeffs = [x / c for x in s0]
        den = 1
        for x in coeffs:
            den = den * x.denominator // math.gcd(den, x.denominator)
        vec = [(x * den).numerator for x in coeffs]
        F = _field(n)
        if len(vec) > F.degree:
            vec = F.reduce(vec)
        return Cyclotomic(n, vec, den)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = Cyclotomic.one(self.order)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        pair = self._coerce(other) if not isinstance(other, bool) else None
        if pair is None:
            return NotImplemented
        a, b = pair
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        # normalised trace is invariant under field embeddings
        if self._hash is None:
            w = _field(self.order).trace_weights
            t = sum((c * wk for c, wk in zip(self._num, w) if c), Fraction(0)) / self._den
            self._hash = hash(t)
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # numerics & display ----------------------------------------------------
    def numeric(self, digits: int = 30) -> mpmath.mpc:
        """Complex approximation with error below 10**-digits."""
        return numeric_eval(self, digits)

    def __complex__(self):
        return complex(numeric_eval(self, 20))

    def as_root_of_unity(self):
        """Return (k, m) with self == zeta_m^k, or None.

        m is the number of roots of unity in the field: order or 2*order.
        """
        m = self.order if self.order % 2 == 0 else 2 * self.order
        z = complex(self)
        if abs(abs(z) - 1) > 1e-9:
            return None
        k = round(math.atan2(z.imag, z.real) * m / (2 * math.pi)) % m
        if self == root_of_unity(m, k):
            return k, m
        return None

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self})"

    def __str__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for k, c in self.coefficients().items():
            if k == 0:
                terms.append(str(c))
                continue
            mono = f"z{self.order}" + (f"^{k}" if k != 1 else "")
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[k, c.numerator, c.denominator] for k, c in self.coefficients().items()],
        }

    @classmethod
    def from_json(cls, data) -> "Cyclotomic":
        order = int(data["order"])
        counts = {}
        last = -1
        for k, p, q in data["coeffs"]:
            if k <= last:
                raise ValueError("exponents must be strictly increasing")
            last = k
            counts[k] = Fraction(p, q)
        return cls.from_exponents(order, counts)


# polynomial helpers over Q (lowest degree first) ---------------------------
def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(x) for x in out])


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [Fraction(0)], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db] or [Fraction(0)])


# module-level operations ----------------------------------------------------
def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("root_of_unity requires n >= 1")
    F = _field(n)
    k %= n
    return Cyclotomic(n, F.reduction[k], 1, _canonical=True)


def from_exponents(order: int, counts) -> Cyclotomic:
    return Cyclotomic.from_exponents(order, counts)


def geometric_sum(n: int, r: int) -> Cyclotomic:
    """sum_{j<n} zeta_n^(r j); checked against n*[n | r]."""
    if n <= 1:
        raise ValueError("geometric_sum requires n > 1")
    counts = [0] * n
    for j in range(n):
        counts[(r * j) % n] += 1
    value = Cyclotomic.from_exponents(n, counts)
    expected = n if r % n == 0 else 0
    if value != expected:
        raise ClosedFormMismatch(f"geometric sum ({n},{r}) gave {value}")
    return value


def gauss_sqrt(p: int) -> Cyclotomic:
    """The positive square root of 4p inside Q(zeta_4p).

    Computed as (sum_{k<4p} zeta_4p^(k^2)) / (1 + i).
    """
    if p < 1:
        raise ValueError("gauss_sqrt requires p >= 1")
    n = 4 * p
    counts = [0] * n
    for k in range(n):
        counts[(k * k) % n] += 1
    s = Cyclotomic.from_exponents(n, counts)
    root = s / (1 + root_of_unity(n, p))
    if root.conj() != root or root * root != 4 * p:
        raise ClosedFormMismatch(f"Gauss sum for p={p} is not sqrt(4p)")
    if numeric_eval(root, 15).real < 0:
        root = -root
    return root


def numeric_eval(a: Cyclotomic, digits: int = 30) -> mpmath.mpc:
    with mpmath.workdps(digits + 10):
        n = a.order
        total = mpmath.mpc(0)
        for k, c in enumerate(a._num):
            if c:
                total += c * mpmath.expjpi(mpmath.mpf(2 * k) / n)
        return total / a._den
