"""Finite two-sided projection algebras given by operation tables.

Elements are the integers ``0..n-1``. ``times[e][f]`` is ``e x f`` and
``star[e][f]`` is ``e * f``. Maps between finite sets are tuples ``m`` with
``m[x]`` the image of ``x``; maps compose left to right, so ``then(f, g)``
applies ``f`` first.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from . import _search
from .errors import MalformedInputError, PreconditionError, ResourceLimitError

Table = tuple[tuple[int, ...], ...]
Map = tuple[int, ...]

#: Largest carrier size accepted by the exhaustive enumerators unless overridden.
ENUMERATION_GUARD = int(os.environ.get("DRCKIT_ENUM_GUARD", "4"))

AXIOM_ORDER = ("L1", "L2", "L3", "L4", "R1", "R2", "R3", "R4", "P3", "P4", "SP1", "SP2")
AXIOM_ARITY = {"L1": 1, "R1": 1, "L2": 2, "R2": 2, "P4": 2}


def _freeze(rows: Iterable[Iterable[int]]) -> Table:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class ProjectionAlgebra:
    """A carrier ``0..n-1`` with the binary operations ``x`` and ``*``."""

    times: Table
    star: Table

    def __post_init__(self):
        object.__setattr__(self, "times", _freeze(self.times))
        object.__setattr__(self, "star", _freeze(self.star))
        n = len(self.times)
        if n == 0:
            raise MalformedInputError("a projection algebra needs at least one element")
        for name, tab in (("times", self.times), ("star", self.star)):
            if len(tab) != n:
                raise MalformedInputError(f"{name} has {len(tab)} rows, expected {n}")
            for i, row in enumerate(tab):
                if len(row) != n:
                    raise MalformedInputError(f"{name} row {i} has {len(row)} entries, expected {n}")
                for x in row:
                    if not 0 <= x < n:
                        raise MalformedInputError(f"{name} row {i} has entry {x} outside 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.times)

    def elements(self) -> range:
        return range(self.n)

    def x(self, e: int, f: int) -> int:
        return self.times[e][f]

    def s(self, e: int, f: int) -> int:
        return self.star[e][f]


def semilattice(meet: Sequence[Sequence[int]]) -> ProjectionAlgebra:
    """The algebra of a meet-semilattice, with both operations equal to the meet."""
    return ProjectionAlgebra(meet, meet)


def chain(n: int) -> ProjectionAlgebra:
    """The ``n``-element chain ``0 < 1 < ... < n-1`` as a semilattice algebra."""
    return semilattice([[min(i, j) for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraClassification:
    left: bool
    right: bool
    two_sided: bool
    strong: bool
    symmetric: bool
    commutative: bool
    first_violation: Optional[tuple[str, tuple[int, ...]]]
    #: least witness for every axiom that fails
    violations: dict = field(default_factory=dict, compare=False)

    def flags(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in
                ("left", "right", "two_sided", "strong", "symmetric", "commutative")}


def _axiom_holds(P: ProjectionAlgebra) -> dict[str, np.ndarray]:
    """Boolean arrays, one per axiom, indexed by the axiom's variables (e, f, g)."""
    n = P.n
    X = np.asarray(P.times, dtype=np.intp)
    S = np.asarray(P.star, dtype=np.intp)
    i = np.arange(n)
    e1 = i
    e2, f2 = i[:, None], i[None, :]
    e, f, g = i[:, None, None], i[None, :, None], i[None, None, :]
    ef2 = X[e2, f2]
    fe2 = S[f2, e2]
    ef, fg, eg = X[e, f], X[f, g], X[e, g]
    gf_s, fe_s = S[g, f], S[f, e]
    return {
        "L1": X[e1, e1] == e1,
        "L2": X[ef2, e2] == ef2,
        "L3": X[e, fg] == X[ef, fg],
        "L4": X[ef, g] == X[ef, eg],
        "R1": S[e1, e1] == e1,
        "R2": fe2 == S[e2, fe2],
        "R3": S[gf_s, e] == S[gf_s, fe_s],
        "R4": S[g, fe_s] == S[S[g, e], fe_s],
        "P3": (S[S[e, fg], g] == S[S[e, f], g]) & (X[g, X[S[g, f], e]] == X[g, X[f, e]]),
        "P4": (S[ef2, e2] == ef2) & (X[f2, S[e2, f2]] == S[e2, f2]),
        "SP1": X[e, S[X[ef, g], f]] == X[ef, g],
        "SP2": S[X[f, S[g, fe_s]], e] == S[g, fe_s],
    }


def classify(P: ProjectionAlgebra) -> AlgebraClassification:
    """Evaluate every axiom over every tuple and derive the classification flags.

    ``first_violation`` is the least ``(axiom, witness)`` with axioms ordered as in
    :data:`AXIOM_ORDER` and witnesses ordered lexicographically.
    """
    holds = _axiom_holds(P)
    violations = {}
    for name in AXIOM_ORDER:
        bad = np.argwhere(~holds[name])
        if len(bad):
            violations[name] = tuple(int(v) for v in bad[0])
    left = not any(a in violations for a in ("L1", "L2", "L3", "L4"))
    right = not any(a in violations for a in ("R1", "R2", "R3", "R4"))
    two_sided = left and right and "P3" not in violations and "P4" not in violations
    strong = two_sided and "SP1" not in violations and "SP2" not in violations
    X = np.asarray(P.times)
    S = np.asarray(P.star)
    symmetric = strong and bool((X == S.T).all())
    commutative = strong and bool((X == X.T).all())
    first = next(((a, violations[a]) for a in AXIOM_ORDER if a in violations), None)
    return AlgebraClassification(left, right, two_sided, strong, symmetric, commutative,
                                 first, violations)


def require_strong(P: ProjectionAlgebra) -> None:
    c = classify(P)
    if not c.strong:
        raise PreconditionError(f"projection algebra is not strong: {c.first_violation}")


# ---------------------------------------------------------------------------
# order, maps, friendliness
# ---------------------------------------------------------------------------

def natural_leq(P: ProjectionAlgebra, e: int, f: int) -> bool:
    """``e <= f`` in the natural order, that is ``f x e == e``."""
    return P.times[f][e] == e


def downset(P: ProjectionAlgebra, e: int) -> tuple[int, ...]:
    return tuple(x for x in P.elements() if P.times[e][x] == x)


def theta(P: ProjectionAlgebra, p: int) -> Map:
    """``q -> q * p``."""
    return tuple(P.star[q][p] for q in P.elements())


def delta(P: ProjectionAlgebra, p: int) -> Map:
    """``q -> p x q``."""
    return tuple(P.times[p])


def friendly(P: ProjectionAlgebra, p: int, q: int) -> bool:
    return P.times[p][q] == p and P.star[p][q] == q


def identity_map(n: int) -> Map:
    return tuple(range(n))


def then(*maps: Map) -> Map:
    """Compose maps left to right: ``then(f, g)[x] == g[f[x]]``."""
    out = maps[0]
    for m in maps[1:]:
        out = tuple(m[x] for x in out)
    return out


def subalgebra(P: ProjectionAlgebra, elems: Sequence[int]) -> ProjectionAlgebra:
    """Relabel a closed subset ``elems`` as ``0..k-1`` (in the given order)."""
    pos = {x: k for k, x in enumerate(elems)}
    try:
        times = [[pos[P.times[a][b]] for b in elems] for a in elems]
        star = [[pos[P.star[a][b]] for b in elems] for a in elems]
    except KeyError as exc:
        raise PreconditionError(f"subset is not closed: produces {exc.args[0]}") from None
    return ProjectionAlgebra(times, star)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraHom:
    source: ProjectionAlgebra
    target: ProjectionAlgebra
    map: Map

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if len(self.map) != self.source.n:
            raise MalformedInputError(
                f"map has length {len(self.map)}, source has {self.source.n} elements")
        if any(not 0 <= y < self.target.n for y in self.map):
            raise MalformedInputError("map sends an element outside the target")

    def __call__(self, x: int) -> int:
        return self.map[x]


def is_homomorphism(h: AlgebraHom) -> bool:
    P, Q, m = h.source, h.target, h.map
    return all(
        m[P.times[a][b]] == Q.times[m[a]][m[b]] and m[P.star[a][b]] == Q.star[m[a]][m[b]]
        for a in P.elements() for b in P.elements()
    )


def enumerate_homomorphisms(P: ProjectionAlgebra, Q: ProjectionAlgebra) -> list[Map]:
    """All homomorphisms ``P -> Q`` as image tuples, in lexicographic order."""
    n = P.n
    img = [-1] * n

    def consistent(k: int) -> bool:
        # only constraints mentioning the newest point k can have become decidable
        for a in range(k + 1):
            for b in range(k + 1):
                for tp, tq in ((P.times, Q.times), (P.star, Q.star)):
                    z = tp[a][b]
                    if z <= k and k in (a, b, z) and img[z] != tq[img[a]][img[b]]:
                        return False
        return True

    out = []

    def rec(k: int):
        if k == n:
            out.append(tuple(img))
            return
        for y in range(Q.n):
            img[k] = y
            if consistent(k):
                rec(k + 1)
        img[k] = -1

    rec(0)
    return out


# ---------------------------------------------------------------------------
# isomorphism and canonical forms
# ---------------------------------------------------------------------------

def _relabel(tab: Table, perm: Sequence[int]) -> Table:
    """Table of the same operation after renaming x to perm[x]."""
    n = len(tab)
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            out[perm[a]][perm[b]] = perm[tab[a][b]]
    return tuple(map(tuple, out))


def order_profile(P: ProjectionAlgebra) -> tuple[tuple[int, int], ...]:
    """Per element: (size of its downset, number of elements above it)."""
    below = [sum(1 for x in P.elements() if P.times[e][x] == x) for e in P.elements()]
    above = [sum(1 for f in P.elements() if P.times[f][e] == e) for e in P.elements()]
    return tuple(zip(below, above))


def _profile_perms(profile: Sequence) -> Iterator[tuple[int, ...]]:
    """Relabelings sending elements to positions sorted by profile, all tie orders."""
    n = len(profile)
    classes: dict = {}
    for x in range(n):
        classes.setdefault(profile[x], []).append(x)
    keys = sorted(classes)
    slots = []
    start = 0
    for k in keys:
        members = classes[k]
        slots.append((members, list(range(start, start + len(members)))))
        start += len(members)
    for choice in itertools.product(*(itertools.permutations(m) for m, _ in slots)):
        perm = [0] * n
        for (members, pos), order in zip(slots, choice):
            for x, p in zip(order, pos):
                perm[x] = p
        yield tuple(perm)


def canonical_form(P: ProjectionAlgebra) -> ProjectionAlgebra:
    """Least relabeling of ``P`` among those that sort elements by order profile."""
    best = None
    for perm in _profile_perms(order_profile(P)):
        cand = (_relabel(P.times, perm), _relabel(P.star, perm))
        if best is None or cand < best:
            best = cand
    return ProjectionAlgebra(*best)


def find_isomorphism(P: ProjectionAlgebra, Q: ProjectionAlgebra) -> Optional[Map]:
    if P.n != Q.n:
        return None
    pq, qq = order_profile(P), order_profile(Q)
    if sorted(pq) != sorted(qq):
        return None
    for perm in itertools.permutations(range(Q.n)):
        if any(pq[x] != qq[perm[x]] for x in P.elements()):
            continue
        if _relabel(P.times, perm) == Q.times and _relabel(P.star, perm) == Q.star:
            return perm
    return None


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------

def _guard(n: int, max_n: Optional[int]) -> None:
    limit = ENUMERATION_GUARD if max_n is None else max_n
    if n < 1:
        raise MalformedInputError("carrier size must be positive")
    if n > limit:
        raise ResourceLimitError(f"n={n} exceeds the enumeration guard {limit}")


def _strong_equations(X: _search.Table, S: _search.Table, n: int) -> list[tuple]:
    x = lambda a, b: (X, a, b)
    s = lambda a, b: (S, a, b)
    eqs = []
    rng = range(n)
    for e, f in itertools.product(rng, repeat=2):
        eqs += [
            (x(x(e, f), e), x(e, f)),
            (s(f, e), s(e, s(f, e))),
            (s(x(e, f), e), x(e, f)),
            (x(f, s(e, f)), s(e, f)),
        ]
    for e, f, g in itertools.product(rng, repeat=3):
        eqs += [
            (x(e, x(f, g)), x(x(e, f), x(f, g))),
            (x(x(e, f), g), x(x(e, f), x(e, g))),
            (s(s(g, f), e), s(s(g, f), s(f, e))),
            (s(g, s(f, e)), s(s(g, e), s(f, e))),
            (s(s(e, x(f, g)), g), s(s(e, f), g)),
            (x(g, x(s(g, f), e)), x(g, x(f, e))),
            (x(e, s(x(x(e, f), g), f)), x(x(e, f), g)),
            (s(x(f, s(g, s(f, e))), e), s(g, s(f, e))),
        ]
    return eqs


@functools.lru_cache(maxsize=None)
def _enumerate_strong(n: int) -> tuple[ProjectionAlgebra, ...]:
    X = _search.Table("times", 0, 2, n)
    S = _search.Table("star", n * n, 2, n)
    domains = []
    for tab in (X, S):
        for a in range(n):
            for b in range(n):
                domains.append((a,) if a == b else tuple(range(n)))
    order = sorted(
        range(2 * n * n),
        key=lambda c: (max(divmod(c % (n * n), n)), c % (n * n), c // (n * n)),
    )
    found = []
    for v in _search.solve(2 * n * n, domains, order, _strong_equations(X, S, n)):
        times = tuple(tuple(v[a * n:(a + 1) * n]) for a in range(n))
        star = tuple(tuple(v[n * n + a * n:n * n + (a + 1) * n]) for a in range(n))
        found.append(ProjectionAlgebra(times, star))
    found.sort(key=lambda P: (P.times, P.star))
    return tuple(found)


def enumerate_strong_algebras(n: int, dedup: bool = False,
                              max_n: Optional[int] = None) -> list[ProjectionAlgebra]:
    """Every strong projection algebra on ``0..n-1``, sorted by ``(times, star)``.

    With ``dedup`` the result holds one canonical representative per isomorphism
    class instead.
    """
    _guard(n, max_n)
    found = list(_enumerate_strong(n))
    if dedup:
        found = sorted({canonical_form(P): None for P in found},
                       key=lambda P: (P.times, P.star))
    return found
