"""The path category of a strong projection algebra.

A path is a nonempty tuple ``(p1, ..., pk)`` of projections with each
consecutive pair friendly. Length-1 paths are the identity arrows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import MalformedInputError, PreconditionError, UndefinedCompositionError
from .projection_algebra import (Map, ProjectionAlgebra, delta, downset, friendly,
                                 natural_leq, theta, then)


def is_path(P: ProjectionAlgebra, seq: Sequence[int]) -> bool:
    if not seq or any(not 0 <= p < P.n for p in seq):
        return False
    return all(friendly(P, a, b) for a, b in zip(seq, seq[1:]))


@dataclass(frozen=True)
class PPath:
    """A path over ``algebra``; equality and hashing use ``seq`` alone."""

    algebra: ProjectionAlgebra = field(compare=False, repr=False)
    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(p) for p in self.seq))
        if not self.seq:
            raise MalformedInputError("a path needs at least one projection")
        if any(not 0 <= p < self.algebra.n for p in self.seq):
            raise MalformedInputError(f"path {self.seq} leaves 0..{self.algebra.n - 1}")
        for i, (a, b) in enumerate(zip(self.seq, self.seq[1:])):
            if not friendly(self.algebra, a, b):
                raise PreconditionError(
                    f"positions {i} and {i + 1} of {self.seq} are not friendly")

    @property
    def d(self) -> int:
        return self.seq[0]

    @property
    def r(self) -> int:
        return self.seq[-1]

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)


def compose(a: PPath, b: PPath) -> PPath:
    """``a o b``: concatenation sharing the junction projection."""
    if a.r != b.d:
        raise UndefinedCompositionError(f"r{a.seq} = {a.r} differs from d{b.seq} = {b.d}")
    return PPath(a.algebra, a.seq + b.seq[1:])


def left_restrict_seq(P: ProjectionAlgebra, q: int, seq: Sequence[int]) -> tuple[int, ...]:
    out = [q]
    for p in seq[1:]:
        out.append(P.star[out[-1]][p])
    return tuple(out)


def right_restrict_seq(P: ProjectionAlgebra, seq: Sequence[int], q: int) -> tuple[int, ...]:
    out = [q]
    for p in reversed(seq[:-1]):
        out.append(P.times[p][out[-1]])
    return tuple(reversed(out))


def left_restrict(q: int, a: PPath) -> PPath:
    """The restriction of ``a`` starting at ``q``, for ``q`` below ``d(a)``."""
    if not natural_leq(a.algebra, q, a.d):
        raise PreconditionError(f"{q} is not below d{a.seq} = {a.d}")
    return PPath(a.algebra, left_restrict_seq(a.algebra, q, a.seq))


def right_restrict(a: PPath, q: int) -> PPath:
    """The restriction of ``a`` ending at ``q``, for ``q`` below ``r(a)``."""
    if not natural_leq(a.algebra, q, a.r):
        raise PreconditionError(f"{q} is not below r{a.seq} = {a.r}")
    return PPath(a.algebra, right_restrict_seq(a.algebra, a.seq, q))


def path_leq(a: PPath, b: PPath) -> bool:
    """``a <= b`` iff ``a`` is the left restriction of ``b`` at ``d(a)``."""
    P = b.algebra
    return (len(a) == len(b) and natural_leq(P, a.d, b.d)
            and a.seq == left_restrict_seq(P, a.d, b.seq))


def theta_of_path(a: PPath) -> Map:
    """``theta_p1`` then ``theta_p2`` ... then ``theta_pk``."""
    P = a.algebra
    return then(*(theta(P, p) for p in a.seq))


def delta_of_path(a: PPath) -> Map:
    """``delta_pk`` then ... then ``delta_p1``."""
    P = a.algebra
    return then(*(delta(P, p) for p in reversed(a.seq)))


def nu_of_path(a: PPath) -> dict[int, int]:
    """``Theta`` restricted to ``d(a)`` downset; lands in the downset of ``r(a)``."""
    big = theta_of_path(a)
    return {x: big[x] for x in downset(a.algebra, a.d)}


def mu_of_path(a: PPath) -> dict[int, int]:
    """``Delta`` restricted to ``r(a)`` downset; inverse of ``nu_of_path``."""
    big = delta_of_path(a)
    return {y: big[y] for y in downset(a.algebra, a.r)}


def successors(P: ProjectionAlgebra) -> tuple[tuple[int, ...], ...]:
    """``successors(P)[p]`` lists every ``q`` with ``p`` friendly to ``q``."""
    return tuple(tuple(q for q in P.elements() if friendly(P, p, q)) for p in P.elements())


def iter_paths(P: ProjectionAlgebra, max_len: int, min_len: int = 1) -> Iterator[tuple[int, ...]]:
    """Every path sequence with length in ``min_len..max_len``, by length then lexicographically."""
    succ = successors(P)
    layer = [(p,) for p in P.elements()]
    for length in range(1, max_len + 1):
        if length >= min_len:
            yield from layer
        layer = [s + (q,) for s in layer for q in succ[s[-1]]]


def identity_path(P: ProjectionAlgebra, p: int) -> PPath:
    return PPath(P, (p,))

