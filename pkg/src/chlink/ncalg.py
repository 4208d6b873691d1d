"""Truncated non-commutative power series over the rationals.

An :class:`NcSeries` is an element of Q<X1,...,Xn> modulo all monomials of
degree greater than ``trunc``.  Monomials are tuples of 1-based generator
indices; the empty tuple is the unit.  Coefficients are
:class:`fractions.Fraction` and zero coefficients are never stored, so two
series are equal exactly when their term dictionaries are.
"""

from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Tuple

from .errors import (ConstantTermNotOne, IndexOutOfRange, MismatchedContext,
                     NonzeroConstantTerm)

Monomial = Tuple[int, ...]

UNIT: Monomial = ()


def monomial_key(m: Monomial):
    """Canonical order: degree first, then lexicographic."""
    return (len(m), m)


def monomial_text(m: Monomial) -> str:
    if not m:
        return "1"
    return ".".join(f"X{i}" for i in m)


def coefficient_text(c: Fraction) -> str:
    return str(c)


def monomials(n: int, max_degree: int, min_degree: int = 0):
    """All monomials on ``n`` letters with ``min_degree <= degree <= max_degree``,
    in canonical order."""
    level = [()]
    for d in range(max_degree + 1):
        if d >= min_degree:
            yield from level
        level = [m + (i,) for m in level for i in range(1, n + 1)]


class NcSeries:
    __slots__ = ("n", "trunc", "_terms", "_hash")

    def __init__(self, n: int, trunc: int, terms: Mapping[Monomial, object] = None):
        if n < 1:
            raise ValueError("generator count must be positive")
        if trunc < 0:
            raise ValueError("truncation degree must be non-negative")
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) > trunc:
                continue
            for i in m:
                if not 1 <= i <= n:
                    raise IndexOutOfRange(f"generator X{i} outside 1..{n}")
            c = Fraction(c)
            if c:
                clean[m] = c
        self.n = n
        self.trunc = trunc
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n, trunc, terms):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.n = n
        obj.trunc = trunc
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n, trunc):
        return cls._raw(n, trunc, {})

    @classmethod
    def one(cls, n, trunc):
        return cls._raw(n, trunc, {UNIT: Fraction(1)})

    @classmethod
    def gen(cls, i, n, trunc, coeff=1):
        """The series ``coeff * X_i``."""
        return cls(n, trunc, {(i,): coeff})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, m: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(UNIT, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def min_degree(self):
        """Lowest degree carrying a nonzero term, or ``None`` for zero."""
        return min((len(m) for m in self._terms), default=None)

    def homogeneous(self, d: int) -> "NcSeries":
        return NcSeries._raw(self.n, self.trunc,
                             {m: c for m, c in self._terms.items() if len(m) == d})

    def truncate(self, trunc: int) -> "NcSeries":
        """Reinterpret in the quotient with truncation ``trunc`` (drops higher terms)."""
        return NcSeries._raw(self.n, trunc,
                             {m: c for m, c in self._terms.items() if len(m) <= trunc})

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda mc: monomial_key(mc[0]))

    def _check(self, other):
        if not isinstance(other, NcSeries):
            return NotImplemented
        if self.n != other.n or self.trunc != other.trunc:
            raise MismatchedContext(
                f"series live in different algebras: (n={self.n}, trunc={self.trunc}) "
                f"vs (n={other.n}, trunc={other.trunc})")
        return None

    def __eq__(self, other):
        if not isinstance(other, NcSeries):
            return NotImplemented
        return (self.n == other.n and self.trunc == other.trunc
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.trunc, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return NcSeries._raw(self.n, self.trunc, out)

    def __neg__(self):
        return NcSeries._raw(self.n, self.trunc, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> "NcSeries":
        k = Fraction(k)
        if not k:
            return NcSeries.zero(self.n, self.trunc)
        return NcSeries._raw(self.n, self.trunc, {m: k * c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        trunc = self.trunc
        by_degree = defaultdict(list)
        for m, c in other._terms.items():
            by_degree[len(m)].append((m, c))
        acc = defaultdict(Fraction)
        for ma, ca in self._terms.items():
            room = trunc - len(ma)
            for d, bucket in by_degree.items():
                if d > room:
                    continue
                for mb, cb in bucket:
                    acc[ma + mb] += ca * cb
        return NcSeries._raw(self.n, trunc, {m: c for m, c in acc.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __repr__(self):
        return f"NcSeries(n={self.n}, trunc={self.trunc}, {self.to_text()!r})"

    def to_text(self) -> str:
        """Canonical text form, e.g. ``1 * 1 + -1/2 * X1.X2``; ``0`` for zero."""
        if not self._terms:
            return "0"
        return " + ".join(f"{coefficient_text(c)} * {monomial_text(m)}"
                          for m, c in self.sorted_terms())

    __str__ = to_text


def parse_series(text: str, n: int, trunc: int) -> NcSeries:
    """Inverse of :meth:`NcSeries.to_text`."""
    text = text.strip()
    if text == "0":
        return NcSeries.zero(n, trunc)
    terms: Dict[Monomial, Fraction] = {}
    for chunk in text.split(" + "):
        coeff, _, mono = chunk.partition(" * ")
        if not mono:
            raise ValueError(f"malformed term {chunk!r}")
        if mono == "1":
            m = UNIT
        else:
            m = tuple(int(tok[1:]) for tok in mono.split("."))
        terms[m] = terms.get(m, 0) + Fraction(coeff)
    return NcSeries(n, trunc, terms)


def nc_add(a: NcSeries, b: NcSeries) -> NcSeries:
    return a + b


def nc_mul(a: NcSeries, b: NcSeries) -> NcSeries:
    return a * b


def nc_exp(a: NcSeries) -> NcSeries:
    """exp(a) = sum a^k / k!, for ``a`` without constant term."""
    if a.constant_term:
        raise NonzeroConstantTerm("exp needs a series with zero constant term")
    result = NcSeries.one(a.n, a.trunc)
    power = result
    k = 0
    while True:
        k += 1
        power = (power * a).scale(Fraction(1, k))
        if not power:
            return result
        result = result + power


def nc_log(a: NcSeries) -> NcSeries:
    """log(a) = sum_{k>=1} (-1)^(k+1) (a-1)^k / k, for ``a`` with constant term 1."""
    if a.constant_term != 1:
        raise ConstantTermNotOne("log needs a series with constant term 1")
    x = a - NcSeries.one(a.n, a.trunc)
    result = NcSeries.zero(a.n, a.trunc)
    power = NcSeries.one(a.n, a.trunc)
    k = 0
    while True:
        k += 1
        power = power * x
        if not power:
            return result
        result = result + power.scale(Fraction((-1) ** (k + 1), k))


def nc_inverse(a: NcSeries) -> NcSeries:
    """Multiplicative inverse of a series with constant term 1 (geometric series)."""
    if a.constant_term != 1:
        raise ConstantTermNotOne("inverse needs a series with constant term 1")
    x = NcSeries.one(a.n, a.trunc) - a
    result = NcSeries.one(a.n, a.trunc)
    power = result
    while True:
        power = power * x
        if not power:
            return result
        result = result + power
