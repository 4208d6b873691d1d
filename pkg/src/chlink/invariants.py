"""Milnor and Campbell-Hausdorff invariants of string links and their closures.

The Campbell-Hausdorff derivation of a longitude system is the tuple
``[rho(l_i), X_i]`` of Lie elements, truncated at degree ``s``.  Its lowest
nonvanishing degree is free of indeterminacy and can be compared directly;
nothing beyond that order is attempted.

The finite-type checks sum an invariant over all resolutions of the double
points of a singular word with signs ``(-1)^(#negative resolutions)``.
Per-resolution work is pure, so it may be farmed out to worker processes
(``jobs``) or visited in a shuffled order (``seed``); exact rational sums
make the result independent of both.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NoDoublePoints, WrongDoubleCount
from .freegroup import ch_exponential, ch_expand, magnus_expand
from .freelie import LieSeries, bracket
from .ncalg import Monomial, NcSeries, monomial_key, monomial_text, monomials, nc_exp, nc_log
from .stringlink import (LongitudeSystem, StringLinkWord, longitudes,
                         resolutions, reverse_system, _require_nonsingular)

DISTINCT = "DISTINCT"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Derivation:
    """Values of the derivation on y_1..y_n, each a Lie series in degrees 2..trunc."""

    n: int
    trunc: int
    parts: Tuple[LieSeries, ...]

    def __post_init__(self):
        for p in self.parts:
            d = p.min_degree()
            if d is not None and d < 2:
                raise AssertionError(f"derivation part {p} has a term below degree 2")

    @classmethod
    def zero(cls, n, trunc):
        return cls(n, trunc, tuple(LieSeries.zero(n, trunc) for _ in range(n)))

    def is_zero(self):
        return not any(self.parts)

    def __add__(self, other):
        return Derivation(self.n, self.trunc, tuple(a + b for a, b in zip(self.parts, other.parts)))

    def scale(self, k):
        return Derivation(self.n, self.trunc, tuple(p.scale(k) for p in self.parts))

    def homogeneous(self, d):
        return tuple(p.homogeneous(d) for p in self.parts)

    def to_dict(self):
        return {"trunc": self.trunc, "parts": [p.to_text() for p in self.parts]}


@dataclass(frozen=True)
class FirstOrderInvariant:
    """Lowest nonvanishing degree of the derivation; ``degree is None`` means zero."""

    degree: Optional[int]
    parts: Tuple[LieSeries, ...] = ()

    def is_zero(self):
        return self.degree is None

    def scale(self, k):
        if self.degree is None:
            return self
        return FirstOrderInvariant(self.degree, tuple(p.scale(k) for p in self.parts))

    def to_dict(self):
        return {"degree": self.degree, "parts": [p.to_text() for p in self.parts]}


@dataclass(frozen=True)
class MuValue:
    index: Tuple[int, ...]
    value: int

    def to_dict(self):
        return {"index": list(self.index), "value": self.value}


@dataclass(frozen=True)
class InvertibilityVerdict:
    verdict: str
    degree: Optional[int]
    original: FirstOrderInvariant
    reversed: FirstOrderInvariant

    def to_dict(self):
        return {"verdict": self.verdict, "degree": self.degree,
                "original": self.original.to_dict(), "reversed": self.reversed.to_dict()}


@dataclass(frozen=True)
class VanishingReport:
    check: str
    s: int
    k: int
    passed: bool
    counterexample: Optional[dict] = None

    def to_dict(self):
        out = {"check": self.check, "s": self.s, "k": self.k, "pass": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@lru_cache(maxsize=65536)
def derivation(ls: LongitudeSystem, s: int) -> Derivation:
    """parts[i] = [rho(l_i), X_i] modulo degree > s.

    For ``s = 1`` every part is zero (nothing survives in degrees 2..1).
    """
    if s < 1:
        raise ValueError("derivation degree must be at least 1")
    parts = []
    for i, l in enumerate(ls.longs, 1):
        parts.append(bracket(ch_expand(l, s), LieSeries.gen(i, ls.n, s)))
    return Derivation(ls.n, s, tuple(parts))


def ch_first_nonvanishing(ls: LongitudeSystem, s_max: int) -> FirstOrderInvariant:
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    der = derivation(ls, s_max)
    for d in range(2, s_max + 1):
        parts = der.homogeneous(d)
        if any(parts):
            return FirstOrderInvariant(d, parts)
    return FirstOrderInvariant(None)


def mu_first_nonvanishing(ls: LongitudeSystem, s_max: int) -> List[MuValue]:
    """Magnus coefficients of the longitudes at the lowest nonvanishing degree.

    mu(i_1 ... i_d j) is the coefficient of X_{i_1}...X_{i_d} in the Magnus
    expansion of l_j.  Only nonzero values are listed, ordered by j and then
    by monomial.
    """
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    expansions = [magnus_expand(l, s_max) for l in ls.longs]
    degrees = [min((len(m) for m in e.terms if m), default=None) for e in expansions]
    degrees = [d for d in degrees if d is not None]
    if not degrees:
        return []
    d = min(degrees)
    out = []
    for j, e in enumerate(expansions, 1):
        for m, c in e.homogeneous(d).sorted_terms():
            if c.denominator != 1:
                raise AssertionError(f"non-integral mu coefficient {c} for {m + (j,)}")
            out.append(MuValue(m + (j,), int(c)))
    return out


def detect_noninvertible(w: StringLinkWord, s_max: int) -> InvertibilityVerdict:
    """Compare first-order CH invariants of the closure and its reverse.

    DISTINCT certifies that the closure is not isotopic to its reverse;
    INCONCLUSIVE makes no claim either way.
    """
    _require_nonsingular(w)
    ls = longitudes(w)
    f = ch_first_nonvanishing(ls, s_max)
    g = ch_first_nonvanishing(reverse_system(ls), s_max)
    if (f.degree, f.parts) != (g.degree, g.parts):
        return InvertibilityVerdict(DISTINCT, f.degree if f.degree is not None else g.degree, f, g)
    return InvertibilityVerdict(INCONCLUSIVE, f.degree, f, g)


@dataclass(frozen=True)
class PhiEndomorphism:
    """Ring endomorphism of the truncated series ring, given on generators."""

    n: int
    trunc: int
    images: Tuple[NcSeries, ...]

    def apply(self, m: Monomial) -> NcSeries:
        out = NcSeries.one(self.n, self.trunc)
        for i in m:
            out = out * self.images[i - 1]
        return out

    def __call__(self, p: NcSeries) -> NcSeries:
        out = NcSeries.zero(self.n, self.trunc)
        for m, c in p.terms.items():
            out = out + self.apply(m).scale(c)
        return out


@lru_cache(maxsize=65536)
def _phi_from_longitudes(ls: LongitudeSystem, s: int) -> PhiEndomorphism:
    images = []
    for i, l in enumerate(ls.longs, 1):
        conj = (ch_exponential(l, s) * nc_exp(NcSeries.gen(i, ls.n, s))
                * ch_exponential(l.inverse(), s))
        images.append(nc_log(conj))
    return PhiEndomorphism(ls.n, s, tuple(images))


def phi_endomorphism(w: StringLinkWord, s: int) -> PhiEndomorphism:
    """Phi(X_i) = log(E_CH(l_i) exp(X_i) E_CH(l_i^-1)) modulo degree > s."""
    if s < 1:
        raise ValueError("degree must be at least 1")
    _require_nonsingular(w)
    return _phi_from_longitudes(longitudes(w), s)


def _all_monomial_values(phi: PhiEndomorphism) -> Dict[Monomial, NcSeries]:
    values = {(): NcSeries.one(phi.n, phi.trunc)}
    for m in monomials(phi.n, phi.trunc, 1):
        values[m] = values[m[:-1]] * phi.images[m[-1] - 1]
    return values


def _phi_values(args):
    word, s = args
    return _all_monomial_values(phi_endomorphism(word, s))


def _derivation_of(args):
    word, s = args
    return derivation(longitudes(word), s)


def _evaluate(fn, words, s, jobs, seed):
    order = list(range(len(words)))
    if seed is not None:
        random.Random(seed).shuffle(order)
    tasks = [(words[i], s) for i in order]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [fn(t) for t in tasks]
    out = [None] * len(words)
    for i, r in zip(order, results):
        out[i] = r
    return out


def _singular_resolutions(w):
    if w.k == 0:
        raise NoDoublePoints(f"word {w} has no double points")
    return resolutions(w)


def vanishing_check_phi(w: StringLinkWord, s: int, jobs: int = 1, seed=None) -> VanishingReport:
    """Check sum_j eps_j Phi_j(mu) = 0 for every monomial mu of degree <= s."""
    if s < 1:
        raise ValueError("degree must be at least 1")
    res = _singular_resolutions(w)
    values = _evaluate(_phi_values, [word for _, word in res], s, jobs, seed)
    n = w.m
    for m in monomials(n, s):
        total = NcSeries.zero(n, s)
        for (r, _), vals in zip(res, values):
            total = total + (vals[m] if r.epsilon > 0 else -vals[m])
        if total:
            return VanishingReport("phi", s, w.k, False,
                                   {"monomial": monomial_text(m), "series": total.to_text()})
    return VanishingReport("phi", s, w.k, True)


def alternating_derivation(w: StringLinkWord, s: int, jobs: int = 1, seed=None) -> Derivation:
    """sum_j eps_j * derivation(longitudes(sigma_j), s) over all resolutions."""
    res = _singular_resolutions(w)
    ders = _evaluate(_derivation_of, [word for _, word in res], s, jobs, seed)
    total = Derivation.zero(w.m, s)
    for (r, _), der in zip(res, ders):
        total = total + (der if r.epsilon > 0 else der.scale(-1))
    return total


def vanishing_check_bracket(w: StringLinkWord, s: int, jobs: int = 1, seed=None) -> VanishingReport:
    total = alternating_derivation(w, s, jobs, seed)
    for i, p in enumerate(total.parts, 1):
        if p:
            return VanishingReport("bracket", s, w.k, False,
                                   {"component": i, "series": p.to_text()})
    return VanishingReport("bracket", s, w.k, True)


def chord_weight(w: StringLinkWord, s: int, jobs: int = 1, seed=None) -> Tuple[LieSeries, ...]:
    """Degree-s part of the alternating derivation of a word with s-1 double points."""
    if s < 2:
        raise ValueError("chord weights start at degree 2")
    if w.k != s - 1:
        raise WrongDoubleCount(f"degree {s} needs exactly {s - 1} double point(s), "
                               f"word {w} has {w.k}")
    total = alternating_derivation(w, s, jobs, seed)
    for d in range(2, s):
        if any(total.homogeneous(d)):
            raise AssertionError(f"alternating derivation of {w} is nonzero in degree {d} < {s}")
    return total.homogeneous(s)
