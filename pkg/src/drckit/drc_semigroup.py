"""Finite bi-unary semigroups ``(S, ., +, *)`` and the DRC axiom families.

``mul[a][b]`` is the product ``ab``; ``plus[a]`` and ``star[a]`` are the two
unary operations. Projections are the values of ``plus``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _search
from .errors import (ContractViolation, MalformedInputError, PreconditionError,
                     StructuralError)
from .projection_algebra import Map, ProjectionAlgebra, Table, _freeze, _guard

DRC_AXIOMS = ("i", "ii", "iii", "iv", "v", "i'", "ii'", "iii'", "iv'", "v'")
AMPLE_AXIOMS = ("vi", "vi'")


@dataclass(frozen=True)
class BiUnarySemigroup:
    mul: Table
    plus: Map
    star: Map

    def __post_init__(self):
        object.__setattr__(self, "mul", _freeze(self.mul))
        object.__setattr__(self, "plus", tuple(int(x) for x in self.plus))
        object.__setattr__(self, "star", tuple(int(x) for x in self.star))
        n = len(self.mul)
        if n == 0:
            raise MalformedInputError("a semigroup needs at least one element")
        for i, row in enumerate(self.mul):
            if len(row) != n:
                raise MalformedInputError(f"mul row {i} has {len(row)} entries, expected {n}")
            if any(not 0 <= x < n for x in row):
                raise MalformedInputError(f"mul row {i} has an entry outside 0..{n - 1}")
        for name in ("plus", "star"):
            row = getattr(self, name)
            if len(row) != n:
                raise MalformedInputError(f"{name} has {len(row)} entries, expected {n}")
            if any(not 0 <= x < n for x in row):
                raise MalformedInputError(f"{name} has an entry outside 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.mul)

    def elements(self) -> range:
        return range(self.n)

    def product(self, *xs: int) -> int:
        out = xs[0]
        for x in xs[1:]:
            out = self.mul[out][x]
        return out


def semilattice_semigroup(meet: Sequence[Sequence[int]]) -> BiUnarySemigroup:
    """A meet-semilattice with both unary operations the identity."""
    n = len(meet)
    return BiUnarySemigroup(meet, range(n), range(n))


def group_semigroup(mul: Sequence[Sequence[int]]) -> BiUnarySemigroup:
    """A group table with both unary operations constant at the identity."""
    n = len(mul)
    unit = next(e for e in range(n) if all(mul[e][x] == x == mul[x][e] for x in range(n)))
    return BiUnarySemigroup(mul, [unit] * n, [unit] * n)


def cyclic_group(n: int) -> BiUnarySemigroup:
    return group_semigroup([[(a + b) % n for b in range(n)] for a in range(n)])


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------

def is_associative(S: BiUnarySemigroup) -> bool:
    return bool(_assoc_lhs_rhs(np.asarray(S.mul, dtype=np.intp)).all())


def _assoc_lhs_rhs(M: np.ndarray) -> np.ndarray:
    n = len(M)
    a, b, c = np.ix_(range(n), range(n), range(n))
    return M[M[a, b], c] == M[a, M[b, c]]


def require_associative(S: BiUnarySemigroup) -> None:
    M = np.asarray(S.mul, dtype=np.intp)
    bad = np.argwhere(~_assoc_lhs_rhs(M))
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise StructuralError(f"multiplication is not associative at ({a}, {b}, {c})")


def _drc_holds(S: BiUnarySemigroup) -> dict[str, np.ndarray]:
    M = np.asarray(S.mul, dtype=np.intp)
    P = np.asarray(S.plus, dtype=np.intp)
    R = np.asarray(S.star, dtype=np.intp)
    i = np.arange(S.n)
    x, y = i[:, None], i[None, :]
    xy = M[x, y]
    xb = np.broadcast_to
    shape = (S.n, S.n)
    return {
        "i": xb((M[P[i], i] == i)[:, None], shape),
        "ii": P[xy] == P[M[x, P[y]]],
        "iii": P[xy] == M[M[P[x], P[xy]], P[x]],
        "iv": xb((P[P[i]] == P[i])[:, None], shape),
        "v": xb((R[P[i]] == P[i])[:, None], shape),
        "i'": xb((M[i, R[i]] == i)[:, None], shape),
        "ii'": R[xy] == R[M[R[x], y]],
        "iii'": R[xy] == M[M[R[y], R[xy]], R[y]],
        "iv'": xb((R[R[i]] == R[i])[:, None], shape),
        "v'": xb((P[R[i]] == R[i])[:, None], shape),
    }


def drc_failures(S: BiUnarySemigroup) -> dict[str, tuple[int, int]]:
    """Least witness for each DRC identity that fails; the table must be associative."""
    require_associative(S)
    holds = _drc_holds(S)
    out = {}
    for name in DRC_AXIOMS:
        bad = np.argwhere(~holds[name])
        if len(bad):
            out[name] = tuple(int(v) for v in bad[0])
    return out


def _least(holds: dict[str, np.ndarray], names: Iterable[str]):
    for name in names:
        bad = np.argwhere(~holds[name])
        if len(bad):
            return name, tuple(int(v) for v in bad[0])
    return None


def check_drc(S: BiUnarySemigroup) -> tuple[bool, Optional[tuple[str, tuple[int, int]]]]:
    """All ten DRC identities over every pair ``(x, y)``.

    Returns ``(ok, witness)`` with the least failing ``(axiom, (x, y))``. One-variable
    identities report ``y = 0``. A non-associative table raises ``StructuralError``.
    """
    require_associative(S)
    w = _least(_drc_holds(S), DRC_AXIOMS)
    return w is None, w


def ample_failures(S: BiUnarySemigroup) -> dict[str, tuple[int, int]]:
    """Least witness ``(x, e)`` for each ample identity that fails, ``e`` a projection."""
    M = np.asarray(S.mul, dtype=np.intp)
    Pl = np.asarray(S.plus, dtype=np.intp)
    R = np.asarray(S.star, dtype=np.intp)
    proj = np.asarray(projections(S), dtype=np.intp)
    x = np.arange(S.n)[:, None]
    e = proj[None, :]
    holds = {
        "vi": M[x, R[M[e, x]]] == M[R[M[e, Pl[x]]], x],
        "vi'": M[Pl[M[x, e]], x] == M[x, Pl[M[R[x], e]]],
    }
    out = {}
    for name in AMPLE_AXIOMS:
        bad = np.argwhere(~holds[name])
        if len(bad):
            a, k = (int(v) for v in bad[0])
            out[name] = (a, int(proj[k]))
    return out


def check_ample(S: BiUnarySemigroup) -> tuple[bool, Optional[tuple[str, tuple[int, int]]]]:
    """The two ample identities with the second variable ranging over projections only.

    Witnesses are ``(axiom, (x, e))`` with ``e`` a projection.
    """
    ok, w = check_drc(S)
    if not ok:
        raise PreconditionError(f"not a DRC semigroup: {w}")
    fails = ample_failures(S)
    first = next(((a, fails[a]) for a in AMPLE_AXIOMS if a in fails), None)
    return first is None, first


@functools.lru_cache(maxsize=4096)
def is_drc(S: BiUnarySemigroup) -> bool:
    try:
        return check_drc(S)[0]
    except StructuralError:
        return False


@functools.lru_cache(maxsize=4096)
def is_drc_restriction(S: BiUnarySemigroup) -> bool:
    return is_drc(S) and check_ample(S)[0]


def require_drc_restriction(S: BiUnarySemigroup, error=PreconditionError) -> None:
    if not is_drc(S):
        raise error(f"not a DRC semigroup: {check_drc(S)[1] if is_associative(S) else 'non-associative'}")
    ok, w = check_ample(S)
    if not ok:
        raise error(f"not DRC-restriction: {w}")


# ---------------------------------------------------------------------------
# projections and orders
# ---------------------------------------------------------------------------

def projections(S: BiUnarySemigroup) -> tuple[int, ...]:
    return tuple(sorted(set(S.plus)))


def projection_algebra_of(S: BiUnarySemigroup) -> tuple[ProjectionAlgebra, tuple[int, ...]]:
    """The algebra on ``P(S)`` with ``e x f = (ef)+`` and ``e * f = (ef)*``.

    Returns the algebra on ``0..k-1`` and the embedding ``emb`` with ``emb[i]`` the
    element of ``S`` that ``i`` stands for.
    """
    ok, w = check_drc(S)
    if not ok:
        raise PreconditionError(f"not a DRC semigroup: {w}")
    emb = projections(S)
    pos = {p: i for i, p in enumerate(emb)}
    times = [[pos[S.plus[S.mul[e][f]]] for f in emb] for e in emb]
    star = [[pos[S.star[S.mul[e][f]]] for f in emb] for e in emb]
    return ProjectionAlgebra(times, star), emb


def omega(S: BiUnarySemigroup, e: int, f: int) -> bool:
    """``e omega f`` on projections: ``fef = e``."""
    return S.mul[S.mul[f][e]][f] == e


def leq_right(S: BiUnarySemigroup, a: int, b: int) -> bool:
    return a == S.mul[S.plus[a]][b] and omega(S, S.plus[a], S.plus[b])


def leq_left(S: BiUnarySemigroup, a: int, b: int) -> bool:
    return a == S.mul[b][S.star[a]] and omega(S, S.star[a], S.star[b])


def rho_sigma(S: BiUnarySemigroup, a: int) -> tuple[dict[int, int], dict[int, int]]:
    """``rho_a: x -> (xa)*`` on the projections below ``a+`` and ``sigma_a: y -> (ay)+``
    on those below ``a*``, as dicts."""
    proj = projections(S)
    rho = {x: S.star[S.mul[x][a]] for x in proj if omega(S, x, S.plus[a])}
    sigma = {y: S.plus[S.mul[a][y]] for y in proj if omega(S, y, S.star[a])}
    return rho, sigma


def natural_leq_S(S: BiUnarySemigroup, a: int, b: int) -> bool:
    """``a <= b`` iff ``a = a+ b = b a*``; defined for DRC-restriction semigroups only."""
    if not is_drc_restriction(S):
        raise ContractViolation("the natural order is only defined on DRC-restriction semigroups")
    return a == S.mul[S.plus[a]][b] == S.mul[b][S.star[a]]


# ---------------------------------------------------------------------------
# congruences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    """A partition of ``0..n-1``; blocks are sorted and listed by least element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        seen = sorted(x for b in blocks for x in b)
        if seen != list(range(len(seen))) or any(not b for b in blocks):
            raise MalformedInputError("blocks must partition 0..n-1")

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Congruence":
        groups: dict = {}
        for x, k in enumerate(labels):
            groups.setdefault(k, []).append(x)
        return cls(tuple(groups.values()))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def labels(self) -> tuple[int, ...]:
        lab = [0] * self.n
        for k, b in enumerate(self.blocks):
            for x in b:
                lab[x] = k
        return tuple(lab)

    def is_identity(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def contains(self, other: "Congruence") -> bool:
        lab = self.labels()
        return all(len({lab[x] for x in b}) == 1 for b in other.blocks)


def is_congruence(S: BiUnarySemigroup, c: Congruence) -> bool:
    """Compatibility with multiplication on both sides and with both unary operations."""
    lab = np.asarray(c.labels())
    M = np.asarray(S.mul)
    for b in c.blocks:
        rep = b[0]
        for x in b[1:]:
            if (lab[M[x]] != lab[M[rep]]).any() or (lab[M[:, x]] != lab[M[:, rep]]).any():
                return False
            if lab[S.plus[x]] != lab[S.plus[rep]] or lab[S.star[x]] != lab[S.star[rep]]:
                return False
    return True


def is_projection_separating(S: BiUnarySemigroup, c: Congruence) -> bool:
    lab = c.labels()
    seen = set()
    for p in projections(S):
        if lab[p] in seen:
            return False
        seen.add(lab[p])
    return True


def mu(S: BiUnarySemigroup) -> Congruence:
    """The relation of equal ``+``, ``*``, ``(ap)+`` and ``(pa)*`` for every projection p."""
    require_drc_restriction(S)
    M = np.asarray(S.mul)
    Pl = np.asarray(S.plus)
    R = np.asarray(S.star)
    proj = list(projections(S))
    keys = np.concatenate(
        [Pl[:, None], R[:, None], Pl[M[:, proj]], R[M[proj, :]].T], axis=1)
    c = Congruence.from_labels([tuple(row) for row in keys.tolist()])
    if not (is_congruence(S, c) and is_projection_separating(S, c)):
        raise ContractViolation("mu failed its own congruence check")
    return c


def quotient(S: BiUnarySemigroup, c: Congruence) -> BiUnarySemigroup:
    """Tables on blocks, block ``k`` being the ``k``-th block of ``c``."""
    if c.n != S.n:
        raise MalformedInputError("partition size does not match the semigroup")
    if not is_congruence(S, c):
        raise ContractViolation("partition is not a (2,1,1)-congruence")
    lab = c.labels()
    reps = [b[0] for b in c.blocks]
    mul = [[lab[S.mul[a][b]] for b in reps] for a in reps]
    return BiUnarySemigroup(mul, [lab[S.plus[a]] for a in reps], [lab[S.star[a]] for a in reps])


def is_fundamental(S: BiUnarySemigroup) -> bool:
    return mu(S).is_identity()


def subsemigroup(S: BiUnarySemigroup, elems: Sequence[int]) -> BiUnarySemigroup:
    """Relabel a subset closed under all three operations as ``0..k-1``."""
    pos = {x: i for i, x in enumerate(elems)}
    try:
        return BiUnarySemigroup([[pos[S.mul[a][b]] for b in elems] for a in elems],
                                [pos[S.plus[a]] for a in elems],
                                [pos[S.star[a]] for a in elems])
    except KeyError as exc:
        raise ContractViolation(f"subset is not closed: produces {exc.args[0]}") from None


def closure(S: BiUnarySemigroup, gens: Iterable[int]) -> tuple[int, ...]:
    """Multiplicative closure of ``gens``, sorted."""
    seen = set(gens)
    frontier = list(seen)
    gens = sorted(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for z in (S.mul[a][g], S.mul[g][a]):
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
        frontier = nxt
    return tuple(sorted(seen))


def projection_generated_sub(S: BiUnarySemigroup) -> tuple[BiUnarySemigroup, tuple[int, ...]]:
    """``E(S)``: the subsemigroup generated by the projections, with its embedding."""
    elems = closure(S, projections(S))
    return subsemigroup(S, elems), elems


# ---------------------------------------------------------------------------
# special classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpecialClassification:
    restriction: bool
    P_restriction: bool
    generalized_regular_circ: bool
    circ: Optional[Map]

    def flags(self) -> dict[str, bool]:
        return {"restriction": self.restriction, "P_restriction": self.P_restriction,
                "generalized_regular_circ": self.generalized_regular_circ}


def classify_special(S: BiUnarySemigroup) -> SpecialClassification:
    require_drc_restriction(S)
    m, pl, st = S.mul, S.plus, S.star
    proj = projections(S)
    p_restr = all(pl[m[e][f]] == m[m[e][f]][e] == st[m[f][e]] for e in proj for f in proj)
    restr = all(pl[m[e][f]] == m[e][f] == m[f][e] == st[m[f][e]] for e in proj for f in proj)
    circ = []
    for x in S.elements():
        cands = [y for y in S.elements()
                 if pl[x] == m[x][y] and st[x] == m[y][x] and st[x] == pl[y] and pl[x] == st[y]]
        if len(cands) > 1:
            raise ContractViolation(f"element {x} has several circ candidates {cands}")
        if not cands:
            circ = None
            break
        circ.append(cands[0])
    return SpecialClassification(restr, p_restr, circ is not None,
                                 tuple(circ) if circ is not None else None)


def circ_identities(S: BiUnarySemigroup, circ: Map) -> Optional[tuple[str, tuple[int, int]]]:
    """Least failure among the five defining identities of a generalized regular circ."""
    m = S.mul
    c = circ
    checks = (
        ("xcx", lambda x, y: m[m[x][c[x]]][x] == x),
        ("cc", lambda x, y: c[c[x]] == x),
        ("right", lambda x, y: c[m[x][y]] == m[m[c[m[x][y]]][x]][c[x]]),
        ("left", lambda x, y: c[m[x][y]] == m[m[c[y]][y]][c[m[x][y]]]),
        ("shift", lambda x, y: m[c[m[x][y]]][x] == c[m[m[c[x]][x]][y]]),
    )
    for name, ok in checks:
        for x, y in itertools.product(S.elements(), repeat=2):
            if not ok(x, y):
                return name, (x, y)
    return None


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

def _profile(S: BiUnarySemigroup) -> tuple:
    proj = set(S.plus)
    return tuple(
        (x not in proj, S.mul[x][x] != x, S.plus.count(x), S.star.count(x),
         sum(1 for r in S.mul for v in r if v == x))
        for x in S.elements())


def _relabel(S: BiUnarySemigroup, perm: Sequence[int]) -> tuple:
    n = S.n
    mul = [[0] * n for _ in range(n)]
    plus = [0] * n
    star = [0] * n
    for a in range(n):
        plus[perm[a]] = perm[S.plus[a]]
        star[perm[a]] = perm[S.star[a]]
        for b in range(n):
            mul[perm[a]][perm[b]] = perm[S.mul[a][b]]
    return tuple(map(tuple, mul)), tuple(plus), tuple(star)


def canonical_form(S: BiUnarySemigroup) -> BiUnarySemigroup:
    """Least relabeling of ``S`` among those sorting elements by a structural profile."""
    from .projection_algebra import _profile_perms

    best = None
    for perm in _profile_perms(_profile(S)):
        cand = _relabel(S, perm)
        if best is None or cand < best:
            best = cand
    return BiUnarySemigroup(*best)


def find_isomorphism(S: BiUnarySemigroup, T: BiUnarySemigroup) -> Optional[Map]:
    """A relabeling ``perm`` with ``S`` relabeled by ``perm`` equal to ``T``, by backtracking."""
    if S.n != T.n:
        return None
    ps, pt = _profile(S), _profile(T)
    if sorted(ps) != sorted(pt):
        return None
    n = S.n
    img = [-1] * n
    used = [False] * n

    def ok(k):
        for a in range(k + 1):
            if img[S.plus[a]] >= 0 and img[S.plus[a]] != T.plus[img[a]]:
                return False
            if img[S.star[a]] >= 0 and img[S.star[a]] != T.star[img[a]]:
                return False
            for b in range(k + 1):
                z = S.mul[a][b]
                if img[z] >= 0 and img[z] != T.mul[img[a]][img[b]]:
                    return False
        return True

    def rec(k):
        if k == n:
            return True
        for y in range(n):
            if not used[y] and ps[k] == pt[y]:
                img[k], used[y] = y, True
                if ok(k) and rec(k + 1):
                    return True
                img[k], used[y] = -1, False
        return False

    return tuple(img) if rec(0) else None


def generated_isomorphism(S: BiUnarySemigroup, gens_s: Sequence[int],
                          T: BiUnarySemigroup, gens_t: Sequence[int]) -> Optional[Map]:
    """The isomorphism sending ``gens_s[i]`` to ``gens_t[i]``, if one exists.

    Both semigroups must be generated by the listed elements. The map is built by
    walking products of generators in both at once; ``None`` is returned when the
    walk is inconsistent, not injective, not onto, or fails to respect ``+``/``*``.
    """
    if S.n != T.n or len(gens_s) != len(gens_t):
        return None
    img = {}
    for a, b in zip(gens_s, gens_t):
        if img.setdefault(a, b) != b:
            return None
    frontier = list(img)
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens_s, gens_t):
                z, w = S.mul[a][g], T.mul[img[a]][h]
                if z in img:
                    if img[z] != w:
                        return None
                else:
                    img[z] = w
                    nxt.append(z)
        frontier = nxt
    if len(img) != S.n or len(set(img.values())) != T.n:
        return None
    perm = tuple(img[x] for x in S.elements())
    if _relabel(S, perm) != (T.mul, T.plus, T.star):
        return None
    return perm


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------

def _drc_equations(M, Pl, R, n, ample):
    m = lambda a, b: (M, a, b)
    p = lambda a: (Pl, a)
    s = lambda a: (R, a)
    eqs = []
    rng = range(n)
    for a, b, c in itertools.product(rng, repeat=3):
        eqs.append((m(m(a, b), c), m(a, m(b, c))))
    for x in rng:
        eqs += [(m(p(x), x), x), (p(p(x)), p(x)), (s(p(x)), p(x)),
                (m(x, s(x)), x), (s(s(x)), s(x)), (p(s(x)), s(x))]
    for x, y in itertools.product(rng, repeat=2):
        eqs += [
            (p(m(x, y)), p(m(x, p(y)))),
            (p(m(x, y)), m(m(p(x), p(m(x, y))), p(x))),
            (s(m(x, y)), s(m(s(x), y))),
            (s(m(x, y)), m(m(s(y), s(m(x, y))), s(y))),
        ]
        if ample:
            eqs += [(m(x, s(m(y, x))), m(s(m(y, p(x))), x)),
                    (m(p(m(x, y)), x), m(x, p(m(s(x), y))))]
    return eqs


@functools.lru_cache(maxsize=None)
def _enumerate_drc(n: int, ample: bool) -> tuple[BiUnarySemigroup, ...]:
    M = _search.Table("mul", 0, 2, n)
    Pl = _search.Table("plus", n * n, 1, n)
    R = _search.Table("star", n * n + n, 1, n)
    size = n * n + 2 * n
    domains = [tuple(range(n))] * size
    mul_order = sorted(range(n * n), key=lambda c: (max(divmod(c, n)), c))
    order = mul_order + list(range(n * n, size))
    out = []
    for v in _search.solve(size, domains, order, _drc_equations(M, Pl, R, n, ample)):
        mul = tuple(tuple(v[a * n:(a + 1) * n]) for a in range(n))
        out.append(BiUnarySemigroup(mul, v[n * n:n * n + n], v[n * n + n:]))
    out.sort(key=lambda S: (S.mul, S.plus, S.star))
    return tuple(out)


def _dedup(found: list[BiUnarySemigroup]) -> list[BiUnarySemigroup]:
    return sorted({canonical_form(S): None for S in found},
                  key=lambda S: (S.mul, S.plus, S.star))


def enumerate_drc_restriction_semigroups(n: int, dedup: bool = False,
                                         max_n: Optional[int] = None) -> list[BiUnarySemigroup]:
    """Every DRC-restriction semigroup on ``0..n-1``, sorted by ``(mul, plus, star)``.

    With ``dedup`` one canonical representative per isomorphism class is returned.
    """
    _guard(n, max_n)
    found = list(_enumerate_drc(n, True))
    return _dedup(found) if dedup else found


def enumerate_drc_semigroups(n: int, dedup: bool = False,
                             max_n: Optional[int] = None) -> list[BiUnarySemigroup]:
    """Every DRC semigroup on ``0..n-1``, ample or not; same ordering conventions."""
    _guard(n, max_n)
    found = list(_enumerate_drc(n, False))
    return _dedup(found) if dedup else found
