import random

import pytest

from chlink.freegroup import GroupWord
from chlink.stringlink import Kind, StringLinkWord, permutation

DEFAULT_SEED = 20261019


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for the randomized property tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


def purify(m, tokens, rng):
    """Append crossings that bubble-sort the strands back to their start."""
    tokens = list(tokens)
    perm = list(permutation(m, tokens))
    changed = True
    while changed:
        changed = False
        for p in range(m - 1):
            if perm[p] > perm[p + 1]:
                tokens.append((p + 1, rng.choice([Kind.POSITIVE, Kind.NEGATIVE])))
                perm[p], perm[p + 1] = perm[p + 1], perm[p]
                changed = True
    return tokens


def random_pure_word(rng, m, length, doubles=False):
    kinds = list(Kind) if doubles else [Kind.POSITIVE, Kind.NEGATIVE]
    tokens = [(rng.randint(1, m - 1), rng.choice(kinds)) for _ in range(length)]
    return StringLinkWord(m, tuple(purify(m, tokens, rng)))


def wirtinger_longitudes(w):
    """Longitudes read off the diagram, independently of the Artin action.

    The free generators sit at the far end of the word, so the tokens are
    visited last to first.  Each strand collects the meridians of the strands
    it passes under, latest on the left; no framing correction is applied,
    since a strand never passes under itself.
    """
    m = w.m
    merid = [GroupWord.gen(i, m) for i in range(1, m + 1)]  # by position
    at = list(range(m))                                      # strand at position
    under = [GroupWord.identity(m) for _ in range(m)]        # by strand
    for j, kind in reversed(w.tokens):
        a, b = at[j - 1], at[j]
        ma, mb = merid[j - 1], merid[j]
        if kind is Kind.POSITIVE:
            # a over b; b moves to position j
            under[b] = ma * under[b]
            merid[j - 1], merid[j] = ma * mb * ma.inverse(), ma
        else:
            # b over a; a moves to position j+1
            under[a] = mb.inverse() * under[a]
            merid[j - 1], merid[j] = mb, mb.inverse() * ma * mb
        at[j - 1], at[j] = b, a
    return tuple(under)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
