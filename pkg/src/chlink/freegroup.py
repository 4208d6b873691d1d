"""Reduced words in the free group F(x1,...,xn) and its two expansions.

Letters are ``(index, sign)`` pairs with ``sign`` in ``{+1, -1}``.  Text form
uses whitespace-separated tokens ``xK`` and ``xK'`` (prime = inverse).
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Tuple

from .errors import IndexOutOfRange, MismatchedContext, WordSyntaxError
from .freelie import LieSeries, assoc_to_lie
from .ncalg import NcSeries, nc_exp, nc_inverse, nc_log

Letter = Tuple[int, int]

_TOKEN = re.compile(r"x(\d+)('?)$")


def _reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack = []
    for i, e in letters:
        if stack and stack[-1] == (i, -e):
            stack.pop()
        else:
            stack.append((i, e))
    return tuple(stack)


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word; the constructor normalizes its input."""

    n: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i <= self.n:
                raise IndexOutOfRange(f"generator x{i} outside 1..{self.n}")
            if e not in (1, -1):
                raise ValueError(f"letter exponent must be +1 or -1, got {e}")
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def identity(cls, n):
        return cls(n)

    @classmethod
    def gen(cls, i, n, sign=1):
        return cls(n, ((i, sign),))

    def __len__(self):
        return len(self.letters)

    def is_identity(self):
        return not self.letters

    def _check(self, other):
        if self.n != other.n:
            raise MismatchedContext(f"words on {self.n} and {other.n} generators")

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        self._check(other)
        return GroupWord(self.n, self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        return GroupWord(self.n, base.letters * abs(k))

    def reverse(self) -> "GroupWord":
        """Read the word backwards, each letter keeping its exponent."""
        return GroupWord(self.n, tuple(reversed(self.letters)))

    def exponent_sum(self, i: int) -> int:
        return sum(e for j, e in self.letters if j == i)

    def substitute(self, images) -> "GroupWord":
        """Apply the endomorphism sending x_i to ``images[i-1]``."""
        out = []
        inverses = {}
        for i, e in self.letters:
            img = images[i - 1]
            if e > 0:
                out.extend(img.letters)
            else:
                if i not in inverses:
                    inverses[i] = img.inverse()
                out.extend(inverses[i].letters)
        return GroupWord(images[0].n if images else self.n, tuple(out))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"x{i}" + ("'" if e < 0 else "") for i, e in self.letters)


def word_reduce(raw: Iterable[Letter], n: int) -> GroupWord:
    return GroupWord(n, tuple(raw))


def word_invert(w: GroupWord) -> GroupWord:
    return w.inverse()


def word_concat(u: GroupWord, v: GroupWord) -> GroupWord:
    return u * v


def word_commutator(u: GroupWord, v: GroupWord) -> GroupWord:
    """(u, v) = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


def word_reverse(w: GroupWord) -> GroupWord:
    return w.reverse()


def parse_group_word(text: str, n: int = None) -> GroupWord:
    """Parse ``x1 x2' x1'``; ``1`` or an empty string is the identity.

    Without ``n`` the generator count is the largest index seen (at least 1).
    """
    letters = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m or int(m.group(1)) < 1:
            raise WordSyntaxError(f"bad group-word token {tok!r}", token=tok)
        letters.append((int(m.group(1)), -1 if m.group(2) else 1))
    if n is None:
        n = max((i for i, _ in letters), default=1)
    for i, _ in letters:
        if i > n:
            raise IndexOutOfRange(f"generator x{i} outside 1..{n}")
    return GroupWord(n, tuple(letters))


@lru_cache(maxsize=None)
def _magnus_letter(i, e, n, trunc):
    one_plus = NcSeries(n, trunc, {(): 1, (i,): 1})
    return one_plus if e > 0 else nc_inverse(one_plus)


@lru_cache(maxsize=None)
def _exp_letter(i, e, n, trunc):
    return nc_exp(NcSeries.gen(i, n, trunc, e))


def _expand(w, trunc, letter_image):
    out = NcSeries.one(w.n, trunc)
    for i, e in w.letters:
        out = out * letter_image(i, e, w.n, trunc)
    return out


@lru_cache(maxsize=65536)
def magnus_expand(w: GroupWord, trunc: int) -> NcSeries:
    """Magnus expansion x_i -> 1 + X_i, truncated at degree ``trunc``."""
    return _expand(w, trunc, _magnus_letter)


@lru_cache(maxsize=65536)
def ch_exponential(w: GroupWord, trunc: int) -> NcSeries:
    """E_CH(w): the product of exp(+-X_i) over the letters of ``w``."""
    return _expand(w, trunc, _exp_letter)


@lru_cache(maxsize=65536)
def ch_expand(w: GroupWord, trunc: int) -> LieSeries:
    """Campbell-Hausdorff representation rho(w) = log E_CH(w), in the Lyndon basis."""
    return assoc_to_lie(nc_log(ch_exponential(w, trunc)), check=False)
