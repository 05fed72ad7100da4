"""Text formats and the ``drckit`` command line.

Every document starts with a header line ``drckit <kind> v1``. Integers are
decimal and whitespace separated; blank lines and ``#`` comments are ignored.

algebra::

    drckit algebra v1
    n
    <n rows of times>
    <n rows of star>

semigroup::

    drckit semigroup v1
    n
    <n rows of mul>
    <plus row>
    <star row>

category::

    drckit category v1
    arrows m
    comp k          followed by k lines "a b c" meaning a o b = c
    d <m ints>
    r <m ints>
    leq k           followed by k lines "a b" meaning a <= b
    objects <ids>
    times           followed by one row per object
    star            followed by one row per object
    eval k          followed by k lines "arrow p1 p2 ..."

word::

    drckit word v1
    <letters>
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .chain_semigroup import Budget, build_fundamental, normalize_word, paths_equivalent
from .cpo_category import (FiniteOrderedCategory, check_axioms, classify_cpoc,
                           round_trip_category, round_trip_semigroup)
from .drc_semigroup import (AMPLE_AXIOMS, DRC_AXIOMS, BiUnarySemigroup, _assoc_lhs_rhs,
                            ample_failures, classify_special, drc_failures,
                            enumerate_drc_restriction_semigroups, is_associative, is_drc,
                            is_drc_restriction)
from .errors import DrcError, MalformedInputError
from .munn_fundamental import build_E_of_SMP
from .projection_algebra import (AXIOM_ORDER, ProjectionAlgebra, classify,
                                 enumerate_strong_algebras)

KINDS = ("algebra", "semigroup", "category", "word")
VERSION = "v1"


@dataclass(frozen=True)
class Document:
    kind: str
    payload: object


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Lines:
    """Meaningful lines as ``(line_number, tokens)`` with a cursor."""

    def __init__(self, text: str, first_line: int = 1):
        self.items = []
        for k, raw in enumerate(text.splitlines(), start=first_line):
            body = raw.split("#", 1)[0].split()
            if body:
                self.items.append((k, body))
        self.pos = 0
        self.last = first_line + len(text.splitlines())

    def next(self, what: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.items):
            raise MalformedInputError(f"missing {what}", line=self.last)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def done(self) -> bool:
        return self.pos >= len(self.items)

    def ints(self, what: str, count: Optional[int] = None) -> list[int]:
        line, toks = self.next(what)
        try:
            vals = [int(t) for t in toks]
        except ValueError:
            raise MalformedInputError(f"{what}: expected integers, got {' '.join(toks)}",
                                      line=line) from None
        if count is not None and len(vals) != count:
            raise MalformedInputError(f"{what}: expected {count} integers, got {len(vals)}",
                                      line=line)
        return vals

    def keyword(self, word: str, what: str) -> list[str]:
        line, toks = self.next(what)
        if toks[0] != word:
            raise MalformedInputError(f"expected '{word}', got '{toks[0]}'", line=line)
        self.current_line = line
        return toks[1:]

    def keyword_ints(self, word: str, count: Optional[int] = None) -> list[int]:
        rest = self.keyword(word, f"'{word}' line")
        try:
            vals = [int(t) for t in rest]
        except ValueError:
            raise MalformedInputError(f"'{word}' expects integers", line=self.current_line) from None
        if count is not None and len(vals) != count:
            raise MalformedInputError(f"'{word}' expects {count} integers, got {len(vals)}",
                                      line=self.current_line)
        return vals


def _header(lines: _Lines) -> str:
    line, toks = lines.next("header")
    if len(toks) != 3 or toks[0] != "drckit" or toks[2] != VERSION or toks[1] not in KINDS:
        raise MalformedInputError(f"unrecognized header '{' '.join(toks)}'", line=line)
    return toks[1]


def _size(lines: _Lines) -> int:
    (n,) = lines.ints("element count", 1)
    if n < 1:
        raise MalformedInputError("element count must be positive", line=lines.items[lines.pos - 1][0])
    return n


def _table(lines: _Lines, name: str, n: int) -> list[list[int]]:
    return [lines.ints(f"{name} row {i}", n) for i in range(n)]


def _wrap(build, lines: _Lines):
    try:
        return build()
    except MalformedInputError as exc:
        if exc.line is None:
            raise MalformedInputError(str(exc), line=lines.items[lines.pos - 1][0]) from None
        raise


def _parse_algebra(lines: _Lines) -> ProjectionAlgebra:
    n = _size(lines)
    times = _table(lines, "times", n)
    star = _table(lines, "star", n)
    return _wrap(lambda: ProjectionAlgebra(times, star), lines)


def _parse_semigroup(lines: _Lines) -> BiUnarySemigroup:
    n = _size(lines)
    mul = _table(lines, "mul", n)
    plus = lines.ints("plus row", n)
    star = lines.ints("star row", n)
    return _wrap(lambda: BiUnarySemigroup(mul, plus, star), lines)


def _parse_category(lines: _Lines) -> FiniteOrderedCategory:
    (m,) = lines.keyword_ints("arrows", 1)
    (k,) = lines.keyword_ints("comp", 1)
    comp = [tuple(lines.ints(f"comp entry {i}", 3)) for i in range(k)]
    d = lines.keyword_ints("d", m)
    r = lines.keyword_ints("r", m)
    (k,) = lines.keyword_ints("leq", 1)
    leq = [tuple(lines.ints(f"leq entry {i}", 2)) for i in range(k)]
    objects = lines.keyword_ints("objects")
    lines.keyword_ints("times", 0)
    times = _table(lines, "times", len(objects))
    lines.keyword_ints("star", 0)
    star = _table(lines, "star", len(objects))
    (k,) = lines.keyword_ints("eval", 1)
    ev = []
    for i in range(k):
        vals = lines.ints(f"eval entry {i}")
        if len(vals) < 2:
            raise MalformedInputError(f"eval entry {i} needs an arrow and a path",
                                      line=lines.items[lines.pos - 1][0])
        ev.append((tuple(vals[1:]), vals[0]))
    return _wrap(lambda: FiniteOrderedCategory(m, comp, d, r, leq, objects, times, star, ev),
                 lines)


def _parse_word(lines: _Lines) -> tuple[int, ...]:
    vals = lines.ints("letters")
    if any(v < 0 for v in vals):
        raise MalformedInputError("letters are nonnegative", line=lines.items[lines.pos - 1][0])
    return tuple(vals)


_PARSERS = {"algebra": _parse_algebra, "semigroup": _parse_semigroup,
            "category": _parse_category, "word": _parse_word}


def _parse_one(lines: _Lines) -> Document:
    kind = _header(lines)
    return Document(kind, _PARSERS[kind](lines))


def parse(text: str) -> Document:
    lines = _Lines(text)
    doc = _parse_one(lines)
    if not lines.done():
        line, _ = lines.items[lines.pos]
        raise MalformedInputError("unexpected content after the document", line=line)
    return doc


def parse_stream(text: str) -> list[Document]:
    """Several documents back to back, as written by ``enumerate``."""
    lines = _Lines(text)
    out = []
    while not lines.done():
        out.append(_parse_one(lines))
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _row(vals) -> str:
    return " ".join(str(v) for v in vals)


def serialize(doc: Document) -> str:
    p = doc.payload
    out = [f"drckit {doc.kind} {VERSION}"]
    if doc.kind == "algebra":
        out.append(str(p.n))
        out += [_row(r) for r in p.times] + [_row(r) for r in p.star]
    elif doc.kind == "semigroup":
        out.append(str(p.n))
        out += [_row(r) for r in p.mul] + [_row(p.plus), _row(p.star)]
    elif doc.kind == "category":
        out.append(f"arrows {p.m}")
        out.append(f"comp {len(p.comp)}")
        out += [_row(t) for t in p.comp]
        out += [f"d {_row(p.d)}".rstrip(), f"r {_row(p.r)}".rstrip()]
        out.append(f"leq {len(p.leq)}")
        out += [_row(t) for t in p.leq]
        out.append(f"objects {_row(p.objects)}")
        out.append("times")
        out += [_row(r) for r in p.obj_times]
        out.append("star")
        out += [_row(r) for r in p.obj_star]
        out.append(f"eval {len(p.eval)}")
        out += [f"{a} {_row(path)}" for path, a in p.eval]
    elif doc.kind == "word":
        out.append(_row(p))
    else:
        raise MalformedInputError(f"unknown document kind '{doc.kind}'")
    return "\n".join(out) + "\n"


def read_document(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

def _witness(w) -> str:
    return _row(w) if w is not None else ""


def _axiom_line(name: str, ok: bool, witness=None) -> str:
    if ok:
        return f"AXIOM {name} PASS"
    return f"AXIOM {name} FAIL {_witness(witness)}".rstrip()


def _check_lines(doc: Document) -> tuple[list[str], bool]:
    p = doc.payload
    if doc.kind == "algebra":
        cls = classify(p)
        lines = [_axiom_line(a, a not in cls.violations, cls.violations.get(a))
                 for a in AXIOM_ORDER]
        return lines, cls.strong
    if doc.kind == "semigroup":
        if not is_associative(p):
            bad = np.argwhere(~_assoc_lhs_rhs(np.asarray(p.mul)))[0]
            return [_axiom_line("assoc", False, tuple(int(v) for v in bad))], False
        lines = [_axiom_line("assoc", True)]
        fails = drc_failures(p)
        lines += [_axiom_line(a, a not in fails, fails.get(a)) for a in DRC_AXIOMS]
        if fails:
            # the ample identities presuppose the DRC ones
            return lines + [f"AXIOM {a} SKIP" for a in AMPLE_AXIOMS], False
        fails = ample_failures(p)
        lines += [_axiom_line(a, a not in fails, fails.get(a)) for a in AMPLE_AXIOMS]
        return lines, not fails
    if doc.kind == "category":
        rep = check_axioms(p)
        lines = []
        for name, ok, w in rep.results:
            if not ok and w is None:
                lines.append(f"AXIOM {name} SKIP")
            else:
                lines.append(_axiom_line(name, ok, w))
        return lines, rep.ok
    raise MalformedInputError("check expects an algebra, semigroup or category document")


def _flag_lines(flags: dict) -> list[str]:
    return [f"FLAG {k} {'true' if v else 'false'}" for k, v in flags.items()]


def _words(P: ProjectionAlgebra, text: str) -> tuple[int, ...]:
    try:
        w = tuple(int(t) for t in text.split())
    except ValueError:
        raise MalformedInputError(f"word '{text}' is not a list of integers") from None
    if not w:
        raise MalformedInputError("words are nonempty")
    if any(not 0 <= q < P.n for q in w):
        raise MalformedInputError(f"word '{text}' has letters outside 0..{P.n - 1}")
    return w


def _need(doc: Document, *kinds: str):
    if doc.kind not in kinds:
        raise MalformedInputError(f"expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc.payload


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drckit", description=(
        "Projection algebras, DRC-restriction semigroups and their ordered categories."))
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="axiom report for any structure document")
    c.add_argument("file")
    c = sub.add_parser("classify", help="flag list for any structure document")
    c.add_argument("file")
    c = sub.add_parser("build-fundamental", help="fundamental quotient of the chain semigroup")
    c.add_argument("file")
    c = sub.add_parser("build-munn", help="subsemigroup of the Munn model generated by projections")
    c.add_argument("file")
    c.add_argument("--sidecar", help="write element -> (p, q, pairs) lines here")
    c = sub.add_parser("word-eq", help="bounded equality test for two words")
    c.add_argument("file")
    c.add_argument("w1")
    c.add_argument("w2")
    c.add_argument("--budget", type=int, help="maximum number of visited paths")
    c.add_argument("--max-len", type=int, help="maximum intermediate path length")
    c = sub.add_parser("normalize", help="rewrite a word to a path of the same length")
    c.add_argument("file")
    c.add_argument("word")
    c = sub.add_parser("round-trip", help="semigroup -> category -> semigroup, or the reverse")
    c.add_argument("file")
    c = sub.add_parser("enumerate", help="stream every structure of a given size")
    c.add_argument("kind", choices=("algebra", "semigroup"))
    c.add_argument("n", type=int)
    c.add_argument("--dedup", action="store_true", help="one per isomorphism class")
    c.add_argument("--max-n", type=int, help="raise the size guard")
    return ap


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "enumerate":
        if args.kind == "algebra":
            items = enumerate_strong_algebras(args.n, dedup=args.dedup, max_n=args.max_n)
        else:
            items = enumerate_drc_restriction_semigroups(args.n, dedup=args.dedup, max_n=args.max_n)
        for x in items:
            out.write(serialize(Document(args.kind, x)))
        return 0
    doc = read_document(args.file)
    if cmd == "check":
        lines, ok = _check_lines(doc)
        out.write("\n".join(lines) + "\n")
        return 0 if ok else 1
    if cmd == "classify":
        p = doc.payload
        if doc.kind == "algebra":
            flags = classify(p).flags()
        elif doc.kind == "semigroup":
            flags = {"drc": is_drc(p), "drc_restriction": is_drc_restriction(p)}
            if flags["drc_restriction"]:
                flags.update(classify_special(p).flags())
        elif doc.kind == "category":
            rep = check_axioms(p)
            flags = {"cpoc": rep.ok}
            if rep.ok:
                flags.update(classify_cpoc(p).as_dict())
        else:
            raise MalformedInputError("classify expects an algebra, semigroup or category document")
        out.write("\n".join(_flag_lines(flags)) + "\n")
        return 0
    if cmd == "build-fundamental":
        model = build_fundamental(_need(doc, "algebra"))
        out.write(serialize(Document("semigroup", model.semigroup)))
        return 0
    if cmd == "build-munn":
        model = build_E_of_SMP(_need(doc, "algebra"))
        out.write(serialize(Document("semigroup", model.semigroup)))
        if args.sidecar:
            with open(args.sidecar, "w", encoding="utf-8") as fh:
                fh.write("# element p q then (x, image) pairs\n")
                for i, a in enumerate(model.elements):
                    flat = [v for pair in a.pairs for v in pair]
                    fh.write(f"{i} {a.p} {a.q} {_row(flat)}\n")
        return 0
    if cmd == "normalize":
        P = _need(doc, "algebra")
        path = normalize_word(P, _words(P, args.word))
        out.write(serialize(Document("word", path.seq)))
        return 0
    if cmd == "word-eq":
        P = _need(doc, "algebra")
        a = normalize_word(P, _words(P, args.w1))
        b = normalize_word(P, _words(P, args.w2))
        verdict = paths_equivalent(a, b, Budget(args.max_len, args.budget))
        out.write(verdict.value + "\n")
        return 1 if verdict.value == "NO" else 0
    if cmd == "round-trip":
        p = _need(doc, "semigroup", "category")
        ok, detail = (round_trip_semigroup(p) if doc.kind == "semigroup"
                      else round_trip_category(p))
        out.write("OK\n" if ok else f"MISMATCH {detail}\n")
        return 0 if ok else 1
    raise MalformedInputError(f"unknown command {cmd}")


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _run(args, out)
    except (DrcError, OSError) as exc:
        err.write(f"drckit: error: {exc}\n")
        return 2


def main_entry() -> None:
    sys.exit(main())
