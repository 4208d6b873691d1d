"""Truncated free Lie algebra on x1..xn in the Lyndon basis.

Each Lyndon word ``w`` stands for its standard bracketing ``P(w)``.  The
associative expansion of ``P(w)`` is ``w`` plus lexicographically larger
words of the same length, which makes conversion from the associative
algebra a triangular back-substitution.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import MismatchedContext, NonzeroConstantTerm, NotALieElement
from .ncalg import Monomial, NcSeries, coefficient_text, monomial_key, nc_exp, nc_log


def is_lyndon(w) -> bool:
    """Strictly smaller than each of its proper rotations."""
    w = tuple(w)
    if not w:
        return False
    return all(w < w[k:] + w[:k] for k in range(1, len(w)))


def lyndon_words(n: int, d: int):
    """Duval's algorithm: Lyndon words over 1..n of length <= d in lex order."""
    if n < 1 or d < 1:
        return
    w = [1]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < d:
            w.append(w[len(w) - m])
        while w and w[-1] == n:
            w.pop()
        if w:
            w[-1] += 1


@lru_cache(maxsize=None)
def standard_factorization(w: Tuple[int, ...]) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Split a Lyndon word as ``u + v`` with ``v`` its longest proper Lyndon suffix."""
    if len(w) < 2:
        return None
    for k in range(1, len(w)):
        if is_lyndon(w[k:]):
            return w[:k], w[k:]
    raise AssertionError("unreachable: single letters are Lyndon")


@dataclass(frozen=True)
class LyndonWord:
    letters: Tuple[int, ...]

    def __post_init__(self):
        if not is_lyndon(self.letters):
            raise ValueError(f"{self.letters} is not a Lyndon word")

    @property
    def degree(self):
        return len(self.letters)

    @property
    def factorization(self) -> Optional[Tuple["LyndonWord", "LyndonWord"]]:
        f = standard_factorization(self.letters)
        if f is None:
            return None
        return LyndonWord(f[0]), LyndonWord(f[1])

    def __str__(self):
        return bracket_text(self.letters)


def bracket_text(w: Tuple[int, ...]) -> str:
    """Render the standard bracketing, e.g. ``(1,1,2) -> [x1,[x1,x2]]``."""
    f = standard_factorization(w)
    if f is None:
        return f"x{w[0]}"
    return f"[{bracket_text(f[0])},{bracket_text(f[1])}]"


@lru_cache(maxsize=None)
def lyndon_basis(n: int, d: int) -> Tuple[LyndonWord, ...]:
    """Lyndon words on ``n`` letters of degree <= ``d``, sorted degree-then-lex."""
    words = sorted(lyndon_words(n, d), key=monomial_key)
    return tuple(LyndonWord(w) for w in words)


def witt_dimension(n: int, d: int) -> int:
    """Necklace count (1/d) sum_{e|d} mu(e) n^(d/e)."""
    def mobius(k):
        result, p = 1, 2
        while p * p <= k:
            if k % p == 0:
                k //= p
                if k % p == 0:
                    return 0
                result = -result
            p += 1
        return -result if k > 1 else result
    total = sum(mobius(e) * n ** (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d


@lru_cache(maxsize=None)
def _bracket_expansion(w: Tuple[int, ...]) -> Dict[Monomial, int]:
    """Associative expansion of the standard bracketing of a Lyndon word."""
    f = standard_factorization(w)
    if f is None:
        return {w: 1}
    left, right = _bracket_expansion(f[0]), _bracket_expansion(f[1])
    out: Dict[Monomial, int] = {}
    for ma, ca in left.items():
        for mb, cb in right.items():
            out[ma + mb] = out.get(ma + mb, 0) + ca * cb
            out[mb + ma] = out.get(mb + ma, 0) - ca * cb
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def _left_normed(w: Tuple[int, ...]) -> Dict[Monomial, int]:
    """Expansion of [[...[X_{w1},X_{w2}],...],X_{wk}]."""
    acc = {w[:1]: 1}
    for letter in w[1:]:
        nxt: Dict[Monomial, int] = {}
        for m, c in acc.items():
            nxt[m + (letter,)] = nxt.get(m + (letter,), 0) + c
            nxt[(letter,) + m] = nxt.get((letter,) + m, 0) - c
        acc = {m: c for m, c in nxt.items() if c}
    return acc


class LieSeries:
    """Element of the free Lie algebra modulo degree > ``trunc``.

    ``terms`` maps Lyndon words (as letter tuples) to nonzero rationals.
    """

    __slots__ = ("n", "trunc", "_terms")

    def __init__(self, n: int, trunc: int, terms: Mapping = None):
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w.letters if isinstance(w, LyndonWord) else w)
            if len(w) > trunc:
                continue
            if not is_lyndon(w):
                raise ValueError(f"{w} is not a Lyndon word")
            c = Fraction(c)
            if c:
                clean[w] = clean.get(w, 0) + c
        self.n = n
        self.trunc = trunc
        self._terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def _raw(cls, n, trunc, terms):
        obj = cls.__new__(cls)
        obj.n, obj.trunc, obj._terms = n, trunc, terms
        return obj

    @classmethod
    def zero(cls, n, trunc):
        return cls._raw(n, trunc, {})

    @classmethod
    def gen(cls, i, n, trunc, coeff=1):
        return cls(n, trunc, {(i,): coeff})

    @property
    def terms(self) -> Mapping[Tuple[int, ...], Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, w) -> Fraction:
        w = tuple(w.letters if isinstance(w, LyndonWord) else w)
        return self._terms.get(w, Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def min_degree(self):
        return min((len(w) for w in self._terms), default=None)

    def homogeneous(self, d):
        return LieSeries._raw(self.n, self.trunc,
                              {w: c for w, c in self._terms.items() if len(w) == d})

    def truncate(self, trunc):
        return LieSeries._raw(self.n, trunc,
                              {w: c for w, c in self._terms.items() if len(w) <= trunc})

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda wc: monomial_key(wc[0]))

    def _check(self, other):
        if self.n != other.n or self.trunc != other.trunc:
            raise MismatchedContext(
                f"Lie series live in different algebras: (n={self.n}, trunc={self.trunc}) "
                f"vs (n={other.n}, trunc={other.trunc})")

    def __eq__(self, other):
        if not isinstance(other, LieSeries):
            return NotImplemented
        return self.n == other.n and self.trunc == other.trunc and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.trunc, frozenset(self._terms.items())))

    def __add__(self, other):
        if not isinstance(other, LieSeries):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return LieSeries._raw(self.n, self.trunc, out)

    def __neg__(self):
        return LieSeries._raw(self.n, self.trunc, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = Fraction(k)
        if not k:
            return LieSeries.zero(self.n, self.trunc)
        return LieSeries._raw(self.n, self.trunc, {w: k * c for w, c in self._terms.items()})

    def __rmul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    def to_text(self) -> str:
        """Text form ``c * [x1,[x1,x2]] + ...``; ``0`` for zero."""
        if not self._terms:
            return "0"
        return " + ".join(f"{coefficient_text(c)} * {bracket_text(w)}"
                          for w, c in self.sorted_terms())

    __str__ = to_text

    def __repr__(self):
        return f"LieSeries(n={self.n}, trunc={self.trunc}, {self.to_text()!r})"


def lie_add(a: LieSeries, b: LieSeries) -> LieSeries:
    return a + b


def lie_scale(k, a: LieSeries) -> LieSeries:
    return a.scale(k)


def lie_to_assoc(l: LieSeries) -> NcSeries:
    acc: Dict[Monomial, Fraction] = {}
    for w, c in l._terms.items():
        for m, k in _bracket_expansion(w).items():
            acc[m] = acc.get(m, 0) + c * k
    return NcSeries._raw(l.n, l.trunc, {m: c for m, c in acc.items() if c})


def dynkin(p: NcSeries) -> NcSeries:
    """Replace each monomial by its left-normed bracket, expanded."""
    if p.constant_term:
        raise NonzeroConstantTerm("Dynkin map needs zero constant term")
    acc: Dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        for mm, k in _left_normed(m).items():
            acc[mm] = acc.get(mm, 0) + c * k
    return NcSeries._raw(p.n, p.trunc, {m: c for m, c in acc.items() if c})


def is_primitive(p: NcSeries) -> bool:
    """Dynkin-Specht-Wever test, degree by degree."""
    if p.constant_term:
        return False
    for d in {len(m) for m in p.terms}:
        part = p.homogeneous(d)
        if dynkin(part) != part.scale(d):
            return False
    return True


def assoc_to_lie(p: NcSeries, check: bool = True) -> LieSeries:
    """Express a Lie element of the associative algebra in the Lyndon basis.

    With ``check`` the Dynkin criterion runs first; the back-substitution
    rejects non-Lie input on its own as well.
    """
    if p.constant_term:
        raise NonzeroConstantTerm("a Lie element has no constant term")
    if check and not is_primitive(p):
        raise NotALieElement(f"not a Lie element: {p.to_text()}")
    rest = dict(p.terms)
    out: Dict[Tuple[int, ...], Fraction] = {}
    while rest:
        w = min(rest, key=monomial_key)
        c = rest[w]
        if not is_lyndon(w):
            raise NotALieElement(f"not a Lie element (leading word {w} is not Lyndon)")
        out[w] = c
        for m, k in _bracket_expansion(w).items():
            v = rest.get(m, 0) - c * k
            if v:
                rest[m] = v
            else:
                rest.pop(m, None)
    return LieSeries._raw(p.n, p.trunc, out)


def bracket(a: LieSeries, b: LieSeries) -> LieSeries:
    a._check(b)
    A, B = lie_to_assoc(a), lie_to_assoc(b)
    return assoc_to_lie(A * B - B * A, check=False)


def bch(a: LieSeries, b: LieSeries) -> LieSeries:
    """Campbell-Hausdorff product log(exp(a) exp(b))."""
    a._check(b)
    prod = nc_exp(lie_to_assoc(a)) * nc_exp(lie_to_assoc(b))
    return assoc_to_lie(nc_log(prod), check=False)
