"""Paths modulo the congruence generated by the two move families, and the
fundamental quotient of the resulting semigroup.

Moves act on a factor of a path and keep both endpoints:

* collapse ``(p, p) -> (p)`` and its reverse, the expansion ``(p) -> (p, p)``;
* for an admissible triple ``(e, p, f)`` swap ``(e, e*p, f) <-> (e, p x f, f)``.

Equality of classes is only semi-decided here: :func:`paths_equivalent`
searches a bounded neighbourhood and answers ``UNKNOWN`` rather than guess.
The fundamental quotient is finite and is computed exactly via signatures.
"""

from __future__ import annotations

import enum
import functools
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .drc_semigroup import BiUnarySemigroup, projection_algebra_of, require_drc_restriction
from .errors import ContractViolation, PreconditionError
from .path_category import PPath, left_restrict_seq, right_restrict_seq
from .projection_algebra import (AlgebraHom, ProjectionAlgebra, downset, is_homomorphism,
                                 require_strong)

DEFAULT_LENGTH_SLACK = 4
DEFAULT_MAX_STATES = 10 ** 6


def is_admissible(P: ProjectionAlgebra, e: int, p: int, f: int) -> bool:
    """``f = (e*p)*f`` and ``e = e x (p x f)``."""
    return P.star[P.star[e][p]][f] == f and P.times[e][P.times[p][f]] == e


@functools.lru_cache(maxsize=256)
def _swap_table(P: ProjectionAlgebra) -> dict[tuple[int, int], dict[int, tuple[int, ...]]]:
    """``table[e, f][m]`` lists the middles reachable from ``(e, m, f)`` in one swap."""
    alt: dict[tuple[int, int], dict[int, set]] = {}
    for e in P.elements():
        for f in P.elements():
            for p in P.elements():
                if not is_admissible(P, e, p, f):
                    continue
                a, b = P.star[e][p], P.times[p][f]
                if a != b:
                    row = alt.setdefault((e, f), {})
                    row.setdefault(a, set()).add(b)
                    row.setdefault(b, set()).add(a)
    return {k: {m: tuple(sorted(v)) for m, v in row.items()} for k, row in alt.items()}


def _neighbours(P: ProjectionAlgebra, seq: tuple[int, ...], max_len: Optional[int]) -> set:
    out = set()
    k = len(seq)
    for i in range(k - 1):
        if seq[i] == seq[i + 1]:
            out.add(seq[:i] + seq[i + 1:])
    if max_len is None or k < max_len:
        for i in range(k):
            out.add(seq[:i + 1] + seq[i:])
    swaps = _swap_table(P)
    for i in range(k - 2):
        row = swaps.get((seq[i], seq[i + 2]))
        if row:
            for m in row.get(seq[i + 1], ()):
                out.add(seq[:i + 1] + (m,) + seq[i + 2:])
    out.discard(seq)
    return out


def elementary_moves(a: PPath) -> list[PPath]:
    """Every path one move away from ``a``, sorted by sequence."""
    return [PPath(a.algebra, s) for s in sorted(_neighbours(a.algebra, a.seq, None))]


# ---------------------------------------------------------------------------
# signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FundamentalSignature:
    """``d`` together with ``theta_p2 ... theta_pk`` restricted to the downset of ``d``,
    stored as sorted ``(input, output)`` pairs."""

    d: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def r(self) -> int:
        return dict(self.pairs)[self.d]

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


def signature_of_seq(P: ProjectionAlgebra, seq: Sequence[int]) -> FundamentalSignature:
    pairs = []
    for x in downset(P, seq[0]):
        y = x
        for p in seq[1:]:
            y = P.star[y][p]
        pairs.append((x, y))
    return FundamentalSignature(seq[0], tuple(pairs))


def fundamental_signature(a: PPath) -> FundamentalSignature:
    return signature_of_seq(a.algebra, a.seq)


# ---------------------------------------------------------------------------
# bounded equivalence search
# ---------------------------------------------------------------------------

class Verdict(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Budget:
    """Search limits; ``None`` picks the defaults at call time."""

    max_len: Optional[int] = None
    max_states: Optional[int] = None

    def resolve(self, *lengths: int) -> tuple[int, int]:
        max_len = self.max_len if self.max_len is not None else max(lengths) + DEFAULT_LENGTH_SLACK
        max_states = self.max_states
        if max_states is None:
            max_states = int(os.environ.get("DRCKIT_BUDGET", DEFAULT_MAX_STATES))
        return max_len, max_states


def paths_equivalent(a: PPath, b: PPath, budget: Optional[Budget] = None) -> Verdict:
    """Three-valued equivalence test.

    ``NO`` is returned only with a sound refutation: different endpoints or
    different signatures. ``YES`` means a move sequence was found whose
    intermediate paths never exceed ``max_len``. Anything else is ``UNKNOWN``.
    """
    P = a.algebra
    if a.seq == b.seq:
        return Verdict.YES
    if a.d != b.d or a.r != b.r or fundamental_signature(a) != fundamental_signature(b):
        return Verdict.NO
    max_len, max_states = (budget or Budget()).resolve(len(a), len(b))
    if len(a) > max_len or len(b) > max_len:
        return Verdict.UNKNOWN
    seen = [{a.seq}, {b.seq}]
    frontier = [[a.seq], [b.seq]]
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        nxt = []
        for s in frontier[side]:
            for t in _neighbours(P, s, max_len):
                if t in seen[1 - side]:
                    return Verdict.YES
                if t not in seen[side]:
                    seen[side].add(t)
                    nxt.append(t)
            if len(seen[0]) + len(seen[1]) > max_states:
                return Verdict.UNKNOWN
        frontier[side] = nxt
    return Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# words, classes and products
# ---------------------------------------------------------------------------

def normalize_word(P: ProjectionAlgebra, word: Sequence[int]) -> PPath:
    """A path whose letters spell a word equivalent to ``word``, of the same length.

    Each new letter ``q`` meets the last entry ``r`` of the path built so far:
    the pair becomes ``(r x q, r * q)``, and the prefix is pulled back onto
    ``r x q`` by right restriction.
    """
    if not word:
        raise PreconditionError("words are nonempty")
    if any(not 0 <= q < P.n for q in word):
        raise PreconditionError(f"word {tuple(word)} has a letter outside 0..{P.n - 1}")
    seq = (word[0],)
    for q in word[1:]:
        last = seq[-1]
        seq = right_restrict_seq(P, seq, P.times[last][q]) + (P.star[last][q],)
    return PPath(P, seq)


@dataclass(frozen=True, eq=False)
class ChainElement:
    """A class of paths held through one representative.

    Identity of the Python object is the only built-in equality; use
    :func:`paths_equivalent` on representatives or compare signatures.
    """

    representative: PPath

    @functools.cached_property
    def signature(self) -> FundamentalSignature:
        return fundamental_signature(self.representative)

    @property
    def algebra(self) -> ProjectionAlgebra:
        return self.representative.algebra

    def plus(self) -> "ChainElement":
        return ChainElement(PPath(self.algebra, (self.representative.d,)))

    def star(self) -> "ChainElement":
        return ChainElement(PPath(self.algebra, (self.representative.r,)))


def chain_product_seq(P: ProjectionAlgebra, p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    last, first = p[-1], q[0]
    return (right_restrict_seq(P, p, P.times[last][first])
            + left_restrict_seq(P, P.star[last][first], q))


def chain_product(a: ChainElement, b: ChainElement) -> ChainElement:
    P = a.algebra
    return ChainElement(PPath(P, chain_product_seq(P, a.representative.seq,
                                                   b.representative.seq)))


def generator(P: ProjectionAlgebra, p: int) -> ChainElement:
    return ChainElement(PPath(P, (p,)))


# ---------------------------------------------------------------------------
# the fundamental quotient
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FundamentalModel:
    """The finite quotient as tables, with one signature and one representative path
    per element. ``generators[p]`` is the element of the class of ``(p)``."""

    semigroup: BiUnarySemigroup
    signatures: tuple[FundamentalSignature, ...]
    representatives: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    algebra: ProjectionAlgebra = field(repr=False)


def build_fundamental(P: ProjectionAlgebra) -> FundamentalModel:
    """Close the generator signatures under the product, then tabulate.

    Elements are numbered in discovery order: generators first by projection,
    then breadth-first by right multiplication with generators.
    """
    require_strong(P)
    sigs: list[FundamentalSignature] = []
    reps: list[tuple[int, ...]] = []
    index: dict[FundamentalSignature, int] = {}

    def add(seq):
        sig = signature_of_seq(P, seq)
        if sig not in index:
            index[sig] = len(sigs)
            sigs.append(sig)
            reps.append(seq)
        return index[sig]

    gens = tuple(add((p,)) for p in P.elements())
    k = 0
    while k < len(reps):
        for p in P.elements():
            add(chain_product_seq(P, reps[k], (p,)))
        k += 1
    m = len(sigs)
    mul = [[index[signature_of_seq(P, chain_product_seq(P, reps[a], reps[b]))]
            for b in range(m)] for a in range(m)]
    plus = [gens[s.d] for s in sigs]
    star = [gens[s.r] for s in sigs]
    return FundamentalModel(BiUnarySemigroup(mul, plus, star), tuple(sigs), tuple(reps),
                            gens, P)


# ---------------------------------------------------------------------------
# universal property
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathEvaluator:
    """``[p1, ..., pk] -> e(p1) e(p2) ... e(pk)`` with ``e`` the composite of the
    homomorphism and the embedding of ``P(S)`` into ``S``."""

    semigroup: BiUnarySemigroup
    images: tuple[int, ...]

    def __call__(self, x) -> int:
        seq = x.representative.seq if isinstance(x, ChainElement) else tuple(x)
        return self.semigroup.product(*(self.images[p] for p in seq))

    def batch(self, words: np.ndarray, lengths: np.ndarray) -> np.ndarray:
        """Fold many padded sequences at once; ``words[i, :lengths[i]]`` is used."""
        M = np.asarray(self.semigroup.mul, dtype=np.intp)
        img = np.asarray(self.images, dtype=np.intp)
        acc = img[words[:, 0]]
        for j in range(1, words.shape[1]):
            live = lengths > j
            acc = np.where(live, M[acc, img[words[:, j]]], acc)
        return acc


def extend_hom(phi: AlgebraHom, S: BiUnarySemigroup) -> PathEvaluator:
    """The evaluator extending ``phi: P -> P(S)`` to classes of paths."""
    require_drc_restriction(S)
    PS, emb = projection_algebra_of(S)
    if phi.target != PS:
        raise PreconditionError("the homomorphism must land in the projection algebra of S")
    if not is_homomorphism(phi):
        raise PreconditionError("map is not a projection algebra homomorphism")
    return PathEvaluator(S, tuple(emb[y] for y in phi.map))


def check_well_defined(ev: PathEvaluator, pairs: Iterable[tuple[PPath, PPath]]) -> None:
    """Raise ``ContractViolation`` on the first pair of paths evaluating differently."""
    for a, b in pairs:
        if ev(a.seq) != ev(b.seq):
            raise ContractViolation(f"{a.seq} and {b.seq} evaluate to {ev(a.seq)} and {ev(b.seq)}")
