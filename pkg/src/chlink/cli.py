"""Command-line front end.

Usage::

    chlink COMMAND INPUT [--degree S] [--format text|json] [--echo] ...

``INPUT`` is a file path, ``-`` for stdin, or inline text.  String-link
commands read the file grammar::

    # comment
    strands 3
    s1 s2' s1 s2' s1 s2'

Inline string-link text may separate lines with `` / `` (for example
``"strands 2 / t1 t1"``) or give the strand count with ``--strands``.
``expand`` and ``bch`` read free-group words such as ``x1 x2' x1'``.

Output grammar.  Series print as terms joined by `` + ``; each term is
``c * m`` with ``c`` an exact fraction (``p`` or ``p/q``, sign included) and
``m`` a monomial ``X1.X2`` (``1`` for the unit) or a bracketed Lyndon word
``[x1,[x1,x2]]``.  The zero series prints as ``0``.  JSON output has sorted
keys; text output prints the same fields one per line, except that
``--echo`` in text format prints the canonical input form itself.

Exit status: 0 on success (including PASS and any invert-check verdict),
1 when a vanishing check FAILs, 2 on bad input.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import ChlinkError, WordSyntaxError
from .freegroup import ch_expand, magnus_expand, parse_group_word
from .freelie import bch
from .invariants import (ch_first_nonvanishing, chord_weight, detect_noninvertible,
                         mu_first_nonvanishing, vanishing_check_bracket,
                         vanishing_check_phi)
from .stringlink import longitudes, parse_word

COMMANDS = ("expand", "bch", "longitudes", "mu", "ch", "invert-check", "vanish-check", "weight")
WORD_COMMANDS = ("expand", "bch")
DEFAULT_CEILING = 6


@dataclass
class RunConfig:
    command: str
    degree: int = 3
    format: str = "text"
    echo: bool = False
    strands: Optional[int] = None
    seed: Optional[int] = None
    jobs: int = 1
    check: str = "both"
    ceiling: int = DEFAULT_CEILING

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")


def emit_json(result: dict) -> str:
    return json.dumps(result, sort_keys=True) + "\n"


def _text_lines(prefix, value):
    if isinstance(value, dict):
        for key in sorted(value):
            yield from _text_lines(f"{prefix}.{key}" if prefix else key, value[key])
    elif isinstance(value, list):
        if not value:
            yield f"{prefix}: []"
        for i, item in enumerate(value):
            yield from _text_lines(f"{prefix}[{i}]", item)
    else:
        if value is None:
            shown = "none"
        elif isinstance(value, bool):
            shown = "true" if value else "false"
        else:
            shown = str(value)
        yield f"{prefix}: {shown}"


def emit_text(result: dict) -> str:
    return "".join(line + "\n" for line in _text_lines("", result))


def _string_link(cfg, text):
    return parse_word(text, cfg.strands)


def _compute(cfg: RunConfig, texts) -> Tuple[int, dict, Optional[str]]:
    """Returns (status, result, raw); ``raw`` overrides text rendering (echo)."""
    s = cfg.degree
    if cfg.command in WORD_COMMANDS:
        words = [parse_group_word(t) for t in texts]
        n = max(w.n for w in words)
        words = [parse_group_word(t, n) for t in texts]
        if cfg.echo:
            return 0, {"words": [str(w) for w in words]}, "".join(f"{w}\n" for w in words)
        if cfg.command == "expand":
            (w,) = words
            return 0, {"word": str(w), "degree": s,
                       "magnus": magnus_expand(w, s).to_text(),
                       "ch": ch_expand(w, s).to_text()}, None
        a, b = words
        return 0, {"degree": s, "bch": bch(ch_expand(a, s), ch_expand(b, s)).to_text()}, None

    (text,) = texts
    w = _string_link(cfg, text)
    if cfg.echo:
        return 0, {"strands": w.m, "tokens": w.token_line()}, w.to_text()
    if cfg.command == "longitudes":
        return 0, longitudes(w).to_dict(), None
    if cfg.command == "mu":
        return 0, {"mu": [v.to_dict() for v in mu_first_nonvanishing(longitudes(w), s)]}, None
    if cfg.command == "ch":
        if s < 2:
            raise ChlinkError("ch needs --degree of at least 2")
        return 0, ch_first_nonvanishing(longitudes(w), s).to_dict(), None
    if cfg.command == "invert-check":
        if s < 2:
            raise ChlinkError("invert-check needs --degree of at least 2")
        return 0, detect_noninvertible(w, s).to_dict(), None
    if cfg.command == "vanish-check":
        reports = []
        if cfg.check in ("phi", "both"):
            reports.append(vanishing_check_phi(w, s, cfg.jobs, cfg.seed))
        if cfg.check in ("bracket", "both"):
            reports.append(vanishing_check_bracket(w, s, cfg.jobs, cfg.seed))
        status = 0 if all(r.passed for r in reports) else 1
        return status, {"reports": [r.to_dict() for r in reports]}, None
    if cfg.command == "weight":
        parts = chord_weight(w, s, cfg.jobs, cfg.seed)
        return 0, {"degree": s, "weight": [p.to_text() for p in parts]}, None
    raise AssertionError(cfg.command)


def _describe(err: Exception) -> str:
    msg = str(err)
    if isinstance(err, WordSyntaxError):
        where = []
        if err.line is not None:
            where.append(f"line {err.line}")
        if err.token is not None and repr(err.token) not in msg:
            where.append(f"token {err.token!r}")
        if where:
            msg = f"{msg} ({', '.join(where)})"
    return f"{type(err).__name__}: {msg}"


def run(cfg: RunConfig, texts) -> Tuple[int, str, str]:
    """Run one command on already-read input texts.

    Returns ``(exit status, stdout text, stderr text)``; never raises for
    bad input.
    """
    expected = 2 if cfg.command == "bch" else 1
    if len(texts) != expected:
        return 2, "", f"error: {cfg.command} takes {expected} input(s), got {len(texts)}\n"
    if cfg.degree < 1:
        return 2, "", "error: --degree must be at least 1\n"
    if cfg.degree > cfg.ceiling:
        return 2, "", (f"error: --degree {cfg.degree} exceeds the ceiling {cfg.ceiling}; "
                       "raise it with --max-degree\n")
    try:
        status, result, raw = _compute(cfg, texts)
    except ChlinkError as err:
        return 2, "", f"error: {_describe(err)}\n"
    if cfg.format == "json":
        return status, emit_json(result), ""
    return status, raw if raw is not None else emit_text(result), ""


def _read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg.replace(" / ", "\n")


def build_parser():
    p = argparse.ArgumentParser(prog="chlink",
                                description="Campbell-Hausdorff and Milnor invariants of string links")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="+", metavar="INPUT",
                   help="file path, '-' for stdin, or inline text (bch takes two words)")
    p.add_argument("--degree", "-s", type=int, default=3, help="truncation degree s (default 3)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--echo", action="store_true",
                   help="print the parsed input in canonical form and stop")
    p.add_argument("--strands", type=int, help="strand count for inline words without a header")
    p.add_argument("--seed", type=int, help="shuffle the order resolutions are evaluated in")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for resolutions")
    p.add_argument("--check", choices=("phi", "bracket", "both"), default="both",
                   help="which vanishing check vanish-check runs")
    p.add_argument("--max-degree", type=int, default=DEFAULT_CEILING,
                   help=f"degree ceiling (default {DEFAULT_CEILING})")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_degree > DEFAULT_CEILING:
        print(f"warning: degree ceiling raised to {args.max_degree}; "
              "Lyndon bases grow quickly", file=sys.stderr)
    cfg = RunConfig(command=args.command, degree=args.degree, format=args.format,
                    echo=args.echo, strands=args.strands, seed=args.seed, jobs=args.jobs,
                    check=args.check, ceiling=args.max_degree)
    try:
        texts = [_read_input(a) for a in args.inputs]
    except OSError as err:
        print(f"error: cannot read input: {err}", file=sys.stderr)
        return 2
    status, out, err = run(cfg, texts)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
