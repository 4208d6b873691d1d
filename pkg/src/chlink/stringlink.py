"""Singular string links given as braid-like words.

A word on ``m`` strands is a sequence of tokens at positions ``1..m-1``:
``sj`` is a positive crossing (position j passes over j+1), ``sj'`` a
negative one and ``tj`` a double point.  Every token, double points
included, swaps the strands at positions j and j+1; a word is *pure* when
the composite permutation is the identity, so strand i of the closure is
component i.

Artin action: ``sj`` sends x_j -> x_j x_{j+1} x_j^-1 and x_{j+1} -> x_j.
Tokens act left to right, i.e. the word ``a b`` induces ``phi_b o phi_a``.
"""

import enum
import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .errors import (HasDoublePoints, NotPure, PositionOutOfRange,
                     WordSyntaxError)
from .freegroup import GroupWord


class Kind(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    DOUBLE = "double"


Token = Tuple[int, Kind]

_TOKEN = re.compile(r"([st])(\d+)('?)$")
_HEADER = re.compile(r"strands\s+(\S+)$")


def token_text(tok: Token) -> str:
    j, kind = tok
    if kind is Kind.POSITIVE:
        return f"s{j}"
    if kind is Kind.NEGATIVE:
        return f"s{j}'"
    return f"t{j}"


def permutation(m: int, tokens: Sequence[Token]) -> Tuple[int, ...]:
    """``perm[p]`` is the (0-based) starting strand found at position p at the top."""
    perm = list(range(m))
    for j, _ in tokens:
        perm[j - 1], perm[j] = perm[j], perm[j - 1]
    return tuple(perm)


@dataclass(frozen=True)
class StringLinkWord:
    m: int
    tokens: Tuple[Token, ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("a string link needs at least one strand")
        object.__setattr__(self, "tokens", tuple((int(j), Kind(k)) for j, k in self.tokens))
        for j, _ in self.tokens:
            if not 1 <= j <= self.m - 1:
                raise PositionOutOfRange(
                    f"crossing position {j} outside 1..{self.m - 1}", token=str(j))
        if permutation(self.m, self.tokens) != tuple(range(self.m)):
            raise NotPure(f"word {self.token_line() or '(empty)'} on {self.m} strands "
                          "does not return every strand to its start")

    @property
    def k(self) -> int:
        """Number of double points."""
        return sum(1 for _, kind in self.tokens if kind is Kind.DOUBLE)

    def token_line(self) -> str:
        return " ".join(token_text(t) for t in self.tokens)

    def to_text(self) -> str:
        """Canonical file form; ``parse_word(w.to_text()) == w``."""
        return f"strands {self.m}\n{self.token_line()}\n"

    def __str__(self):
        return self.token_line() or "(identity)"

    def __add__(self, other: "StringLinkWord") -> "StringLinkWord":
        if self.m != other.m:
            raise ValueError("cannot concatenate words on different strand counts")
        return StringLinkWord(self.m, self.tokens + other.tokens)

    def inverse(self) -> "StringLinkWord":
        """Mirror-in-time word (only meaningful without double points)."""
        flip = {Kind.POSITIVE: Kind.NEGATIVE, Kind.NEGATIVE: Kind.POSITIVE,
                Kind.DOUBLE: Kind.DOUBLE}
        return StringLinkWord(self.m, tuple((j, flip[k]) for j, k in reversed(self.tokens)))


def _parse_tokens(line: str, lineno: Optional[int]) -> List[Token]:
    tokens = []
    for tok in line.split():
        mt = _TOKEN.match(tok)
        if not mt:
            raise WordSyntaxError(f"bad token {tok!r}", token=tok, line=lineno)
        letter, digits, prime = mt.groups()
        if letter == "t" and prime:
            raise WordSyntaxError(f"double point {tok!r} cannot carry a sign",
                                  token=tok, line=lineno)
        kind = Kind.DOUBLE if letter == "t" else (Kind.NEGATIVE if prime else Kind.POSITIVE)
        tokens.append((int(digits), kind))
    return tokens


def parse_word(text: str, m: int = None) -> StringLinkWord:
    """Parse a string-link word.

    ``text`` is either a file body (``strands <m>`` header line, then the
    token line; ``#`` starts a comment) or a bare token line, in which case
    ``m`` must be given.  Errors name the offending token and line.
    """
    header = None
    tokens: List[Token] = []
    token_lines = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        mh = _HEADER.match(line)
        if line.startswith("strands"):
            if not mh or not mh.group(1).isdigit() or int(mh.group(1)) < 1:
                raise WordSyntaxError(f"bad header {line!r}", token=line, line=lineno)
            if header is not None or token_lines:
                raise WordSyntaxError("header must come once, before the tokens",
                                      token=line, line=lineno)
            header = int(mh.group(1))
            continue
        tokens.extend(_parse_tokens(line, lineno))
        token_lines += 1
    if header is not None and m is not None and header != m:
        raise WordSyntaxError(f"header says {header} strands but {m} were requested")
    m = header if header is not None else m
    if m is None:
        raise WordSyntaxError("missing 'strands <m>' header")
    for j, kind in tokens:
        if not 1 <= j <= m - 1:
            raise PositionOutOfRange(
                f"token {token_text((j, kind))!r} acts on position {j}, "
                f"outside 1..{m - 1} for {m} strands", token=token_text((j, kind)))
    return StringLinkWord(m, tuple(tokens))


@dataclass(frozen=True)
class Resolution:
    signs: Tuple[int, ...]

    @property
    def epsilon(self) -> int:
        return -1 if sum(1 for s in self.signs if s < 0) % 2 else 1


def resolutions(w: StringLinkWord):
    """All 2^k ways of turning double points into crossings.

    Yields ``(Resolution, word)``; the t-th double point becomes ``s`` or
    ``s'`` according to ``signs[t]``.  Order is the binary order with +1
    before -1 in each slot.
    """
    slots = [idx for idx, (_, kind) in enumerate(w.tokens) if kind is Kind.DOUBLE]
    out = []
    for signs in itertools.product((1, -1), repeat=len(slots)):
        tokens = list(w.tokens)
        for idx, s in zip(slots, signs):
            tokens[idx] = (tokens[idx][0], Kind.POSITIVE if s > 0 else Kind.NEGATIVE)
        out.append((Resolution(signs), StringLinkWord(w.m, tuple(tokens))))
    return out


def _require_nonsingular(w):
    if w.k:
        raise HasDoublePoints(f"word {w} has {w.k} double point(s); resolve them first")


@lru_cache(maxsize=None)
def _generator_action(m: int, j: int, positive: bool) -> Tuple[GroupWord, ...]:
    gens = [GroupWord.gen(i, m) for i in range(1, m + 1)]
    a, b = gens[j - 1], gens[j]
    if positive:
        gens[j - 1], gens[j] = a * b * a.inverse(), a
    else:
        gens[j - 1], gens[j] = b, b.inverse() * a * b
    return tuple(gens)


@lru_cache(maxsize=65536)
def artin_automorphism(w: StringLinkWord) -> Tuple[GroupWord, ...]:
    """Images phi(x_1), ..., phi(x_m) of the free generators."""
    _require_nonsingular(w)
    images = tuple(GroupWord.gen(i, w.m) for i in range(1, w.m + 1))
    for j, kind in w.tokens:
        step = _generator_action(w.m, j, kind is Kind.POSITIVE)
        # phi_new = phi_token o phi_old
        images = tuple(img.substitute(step) for img in images)
    return images


def conjugator(image: GroupWord, i: int) -> GroupWord:
    """The reduced ``u`` with ``image == u x_i u^-1``."""
    letters = image.letters
    h = len(letters) // 2
    u = GroupWord(image.n, letters[:h])
    if len(letters) % 2 != 1 or letters[h] != (i, 1) or GroupWord(image.n, letters[h + 1:]) != u.inverse():
        raise AssertionError(f"{image} is not a conjugate of x{i}")
    return u


@dataclass(frozen=True)
class LongitudeSystem:
    n: int
    longs: Tuple[GroupWord, ...]
    linking: Tuple[Tuple[int, ...], ...]

    def to_dict(self):
        return {"longitudes": [str(l) for l in self.longs],
                "linking": [list(row) for row in self.linking]}


def linking_matrix(w: StringLinkWord) -> Tuple[Tuple[int, ...], ...]:
    """Half the signed crossing count between each pair of distinct strands."""
    _require_nonsingular(w)
    m = w.m
    counts = [[0] * m for _ in range(m)]
    at = list(range(m))  # at[p] = strand currently at position p
    for j, kind in w.tokens:
        a, b = at[j - 1], at[j]
        sign = 1 if kind is Kind.POSITIVE else -1
        counts[a][b] += sign
        counts[b][a] += sign
        at[j - 1], at[j] = b, a
    for row in counts:
        for c in row:
            assert c % 2 == 0, "pure words cross each pair an even number of times"
    return tuple(tuple(c // 2 for c in row) for row in counts)


@lru_cache(maxsize=65536)
def longitudes(w: StringLinkWord) -> LongitudeSystem:
    """Zero-framed longitudes l_i = u_i x_i^(-e_i).

    ``u_i`` is the reduced Artin conjugator of x_i and ``e_i`` its x_i-exponent.
    Conjugators are only defined up to right multiplication by powers of x_i,
    so this is the unique conjugator with vanishing x_i-exponent.
    """
    images = artin_automorphism(w)
    longs = []
    for i, img in enumerate(images, 1):
        u = conjugator(img, i)
        longs.append(u * GroupWord.gen(i, w.m) ** (-u.exponent_sum(i)))
    lk = linking_matrix(w)
    for i, l in enumerate(longs):
        for j in range(w.m):
            expected = 0 if i == j else lk[i][j]
            if l.exponent_sum(j + 1) != expected:
                raise AssertionError(
                    f"longitude {l} of strand {i + 1} disagrees with crossing count "
                    f"for strand {j + 1}: {l.exponent_sum(j + 1)} != {expected}")
    return LongitudeSystem(w.m, tuple(longs), lk)


def reverse_system(ls: LongitudeSystem) -> LongitudeSystem:
    """Longitudes of the orientation-reversed link: every word read backwards."""
    return LongitudeSystem(ls.n, tuple(l.reverse() for l in ls.longs), ls.linking)


def enumerate_words(m: int, max_length: int, min_doubles: int = 0, max_doubles: int = None):
    """Every pure word on ``m`` strands with at most ``max_length`` tokens,
    filtered by double-point count, shortest first."""
    alphabet = [(j, kind) for j in range(1, m) for kind in Kind]
    for length in range(max_length + 1):
        for tokens in itertools.product(alphabet, repeat=length):
            k = sum(1 for _, kind in tokens if kind is Kind.DOUBLE)
            if k < min_doubles or (max_doubles is not None and k > max_doubles):
                continue
            if permutation(m, tokens) == tuple(range(m)):
                yield StringLinkWord(m, tokens)
