"""Acceptance criteria.

Each test prints one ``PASS``/``FAIL`` line with its runtime; the lines are
also collected into the ``acceptance criteria`` section of the pytest
summary.  Sub-checks are all evaluated before the verdict, so a failing line
names every sub-check that did not hold.  Memo caches are cleared before
each criterion so runtimes are measured cold.
"""

import itertools
import time
from contextlib import contextmanager
from fractions import Fraction

from conftest import ACCEPTANCE_LINES, purify, random_pure_word
from chlink import freegroup, freelie, invariants, stringlink
from chlink.errors import ChlinkError
from chlink.freegroup import GroupWord, ch_exponential, ch_expand, magnus_expand
from chlink.freelie import (LieSeries, assoc_to_lie, bch, is_primitive, lie_to_assoc,
                            lyndon_basis)
from chlink.invariants import (DISTINCT, ch_first_nonvanishing, chord_weight,
                               detect_noninvertible, mu_first_nonvanishing,
                               vanishing_check_bracket, vanishing_check_phi)
from chlink.stringlink import (Kind, StringLinkWord, artin_automorphism,
                               enumerate_words, longitudes, parse_word, reverse_system)

BORROMEAN = "strands 3\ns1 s2' s1 s2' s1 s2'"
HOPF = "strands 2\ns1 s1"


def clear_caches():
    for module in (freegroup, freelie, invariants, stringlink):
        for obj in vars(module).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


class Checks:
    def __init__(self):
        self.failed = []
        self.notes = []

    def check(self, name, ok, detail=""):
        if not ok:
            self.failed.append(f"{name}{' (' + detail + ')' if detail else ''}")

    def note(self, text):
        self.notes.append(text)


@contextmanager
def criterion(number, title, limit):
    clear_caches()
    checks = Checks()
    start = time.perf_counter()
    try:
        yield checks
    except (AssertionError, ChlinkError) as err:
        checks.failed.append(f"raised {type(err).__name__}: {err}")
    elapsed = time.perf_counter() - start
    checks.check(f"runtime < {limit} s", elapsed < limit, f"{elapsed:.2f} s")
    verdict = "FAIL" if checks.failed else "PASS"
    line = f"{verdict} criterion {number}: {title} [{elapsed:.2f} s / {limit} s]"
    if checks.notes:
        line += "; " + "; ".join(checks.notes)
    if checks.failed:
        line += "; failed: " + "; ".join(checks.failed)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert not checks.failed, line


def sweep_corpus():
    """Pure singular words, m in {2, 3}, length <= 5, 1..3 double points."""
    for m in (2, 3):
        yield from enumerate_words(m, 5, min_doubles=1, max_doubles=3)


def test_criterion_1_borromean_noninvertible():
    with criterion(1, "Borromean rings are not invertible", 10) as c:
        ls = longitudes(parse_word(BORROMEAN))
        f = ch_first_nonvanishing(ls, 3)
        g = ch_first_nonvanishing(reverse_system(ls), 3)
        c.check("degree 3", f.degree == 3, f"got {f.degree}")
        c.check("nonzero parts", all(f.parts))
        c.check("reversed == -original", g == f.scale(-1))
        c.check("DISTINCT", detect_noninvertible(parse_word(BORROMEAN), 3).verdict == DISTINCT)


def test_criterion_2_borromean_mu_pattern():
    with criterion(2, "Borromean mu pattern", 10) as c:
        mu = {v.index: v.value for v in mu_first_nonvanishing(longitudes(parse_word(BORROMEAN)), 3)}
        even = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
        odd = [(2, 1, 3), (1, 3, 2), (3, 2, 1)]
        c.check("six length-3 indices", sorted(mu) == sorted(even + odd), str(sorted(mu)))
        c.check("values are +-1", all(abs(v) == 1 for v in mu.values()))
        c.check("cyclic orderings agree", len({mu.get(i) for i in even}) == 1
                and len({mu.get(i) for i in odd}) == 1)
        c.check("the two parities are opposite", mu.get(even[0]) == -mu.get(odd[0], 0))
        c.note(f"global sign mu(123) = {mu.get((1, 2, 3)):+d}")


def test_criterion_3_hopf_linking():
    with criterion(3, "Hopf link longitudes, linking and mu", 1) as c:
        ls = longitudes(parse_word(HOPF))
        x1, x2 = GroupWord.gen(1, 2), GroupWord.gen(2, 2)
        l1, l2 = ls.longs
        c.check("l1 == x2", l1 == x2, f"got {l1}")
        c.check("l1 is an x1-conjugate of x2", any(l1 == x1 ** k * x2 * x1 ** -k for k in range(-2, 3)))
        c.check("l2 == x1", l2 == x1, f"got {l2}")
        c.check("linking [[0,1],[1,0]]", ls.linking == ((0, 1), (1, 0)))
        mu = {v.index: v.value for v in mu_first_nonvanishing(ls, 2)}
        c.check("mu(12) == mu(21) == 1", mu == {(1, 2): 1, (2, 1): 1}, str(mu))


def test_criterion_4_phi_vanishing_sweep():
    with criterion(4, "Phi vanishing sweep", 300) as c:
        words = checks = 0
        for w in sweep_corpus():
            words += 1
            for s in range(1, w.k + 1):
                checks += 1
                report = vanishing_check_phi(w, s)
                c.check(f"{w} at s={s}", report.passed, str(report.counterexample))
        c.note(f"{words} words, {checks} checks")


def test_criterion_5_bracket_vanishing_sweep():
    with criterion(5, "Bracket vanishing sweep", 300) as c:
        words = checks = 0
        for w in sweep_corpus():
            words += 1
            for s in range(1, w.k + 1):
                checks += 1
                report = vanishing_check_bracket(w, s)
                c.check(f"{w} at s={s}", report.passed, str(report.counterexample))
        c.note(f"{words} words, {checks} checks")


def random_lie(rng, n, s):
    basis = [w.letters for w in lyndon_basis(n, s)]
    picks = rng.sample(basis, rng.randint(1, min(4, len(basis))))
    return LieSeries(n, s, {w: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for w in picks})


def test_criterion_6_bch(rng):
    with criterion(6, "BCH series and associativity", 30) as c:
        x1, x2 = LieSeries.gen(1, 2, 3), LieSeries.gen(2, 2, 3)
        z = bch(x1, x2)
        c.check("degree <= 2", z.truncate(2).to_text() == "1 * x1 + 1 * x2 + 1/2 * [x1,x2]",
                z.truncate(2).to_text())
        c.check("degree 3", z.homogeneous(3).to_text() == "1/12 * [x1,[x1,x2]] + 1/12 * [[x1,x2],x2]",
                z.homogeneous(3).to_text())
        for _ in range(100):
            n = rng.choice([2, 3])
            a, b, d = (random_lie(rng, n, 4) for _ in range(3))
            c.check(f"associativity {a} {b} {d}", bch(bch(a, b), d) == bch(a, bch(b, d)))
        c.note("100 random triples at trunc 4")


def random_group_word(rng, n, length):
    return GroupWord(n, tuple((rng.randint(1, n), rng.choice([1, -1])) for _ in range(length)))


def test_criterion_7_property_suite(rng):
    with criterion(7, "Algebraic property suite", 120) as c:
        for _ in range(100):
            a = random_lie(rng, rng.choice([2, 3]), 4)
            p = lie_to_assoc(a)
            c.check(f"DSW round trip {a}", is_primitive(p) and assoc_to_lie(p) == a)
        for _ in range(100):
            u, v = random_group_word(rng, 3, rng.randint(0, 6)), random_group_word(rng, 3, rng.randint(0, 6))
            c.check(f"multiplicative {u} | {v}",
                    magnus_expand(u * v, 3) == magnus_expand(u, 3) * magnus_expand(v, 3)
                    and ch_exponential(u * v, 3) == ch_exponential(u, 3) * ch_exponential(v, 3)
                    and ch_expand(u * v, 3) == bch(ch_expand(u, 3), ch_expand(v, 3)))
        relations = [
            ([(1, Kind.POSITIVE), (2, Kind.POSITIVE), (1, Kind.POSITIVE)],
             [(2, Kind.POSITIVE), (1, Kind.POSITIVE), (2, Kind.POSITIVE)]),
            ([(2, Kind.NEGATIVE), (3, Kind.NEGATIVE), (2, Kind.NEGATIVE)],
             [(3, Kind.NEGATIVE), (2, Kind.NEGATIVE), (3, Kind.NEGATIVE)]),
            ([(1, Kind.POSITIVE), (3, Kind.NEGATIVE)], [(3, Kind.NEGATIVE), (1, Kind.POSITIVE)]),
        ]
        for _ in range(100):
            left, right = rng.choice(relations)
            head = [(rng.randint(1, 3), rng.choice([Kind.POSITIVE, Kind.NEGATIVE]))
                    for _ in range(rng.randint(0, 5))]
            tail = purify(4, head + left, rng)[len(head) + len(left):]
            a = StringLinkWord(4, tuple(head + left + tail))
            b = StringLinkWord(4, tuple(head + right + tail))
            c.check(f"braid relation {a} ~ {b}", artin_automorphism(a) == artin_automorphism(b))
        for _ in range(100):
            w = random_pure_word(rng, rng.choice([2, 3, 4]), rng.randint(0, 8))
            prod = GroupWord.identity(w.m)
            for img in artin_automorphism(w):
                prod = prod * img
            c.check(f"product fixed by {w}",
                    prod == GroupWord(w.m, tuple((i, 1) for i in range(1, w.m + 1))))
        for _ in range(100):
            m = rng.choice([2, 3])
            w, v = random_pure_word(rng, m, rng.randint(0, 8)), random_pure_word(rng, m, rng.randint(0, 6))
            c.check(f"conjugation invariance {w} by {v}",
                    ch_first_nonvanishing(longitudes(v + w + v.inverse()), 4)
                    == ch_first_nonvanishing(longitudes(w), 4))
        c.note("5 properties x 100 seeded cases")


def test_criterion_8_chord_weight():
    with criterion(8, "Chord weight well-defined", 60) as c:
        literal = []
        for text in ("t1", "s1 s1' t1"):
            try:
                literal.append(chord_weight(parse_word(f"strands 2\n{text}"), 2))
            except ChlinkError as err:
                c.check(f"literal word '{text}'", False, f"{type(err).__name__}: {err}")
        if len(literal) == 2:
            c.check("literal words agree", literal[0] == literal[1])
        pure = [chord_weight(parse_word(f"strands 2\n{t}"), 2) for t in ("s1 t1", "s1 s1' s1 t1")]
        c.check("pure analogues 's1 t1' and 's1 s1' s1 t1' agree", pure[0] == pure[1])
        fired = 0
        count = 0
        for w in sweep_corpus():
            count += 1
            try:
                chord_weight(w, w.k + 1)
            except AssertionError:
                fired += 1
        c.check("pre-degree assertion never fires", fired == 0, f"{fired} of {count}")
        c.note(f"{count} corpus words weighed")
