"""Finite ordered categories with an object algebra and an evaluation map.

Arrows are ``0..m-1``. Objects are the arrows fixed by ``d``; the object
algebra tables are indexed by position in ``objects``. The evaluation map is
stored for every path over the objects up to some length; longer paths are
evaluated by composing the length-2 values.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .drc_semigroup import (BiUnarySemigroup, classify_special, natural_leq_S,
                            projection_algebra_of, require_drc_restriction)
from .errors import (ContractViolation, MalformedInputError, PreconditionError,
                     StructuralError, UndefinedCompositionError)
from .path_category import iter_paths, left_restrict_seq, right_restrict_seq
from .projection_algebra import Map, ProjectionAlgebra, Table, _freeze, classify

DEFAULT_EVAL_LEN = 6

AXIOM_IDS = ("C1", "C2", "C3", "PO", "O1", "O2", "O3", "O4", "WP", "G1d",
             "E1", "E2", "E3", "E5", "E6", "Edom", "G2")


@dataclass(frozen=True)
class FiniteOrderedCategory:
    m: int
    comp: tuple[tuple[int, int, int], ...]
    d: Map
    r: Map
    leq: tuple[tuple[int, int], ...]
    objects: tuple[int, ...]
    obj_times: Table
    obj_star: Table
    eval: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        m = int(self.m)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "comp", tuple(sorted(tuple(map(int, t)) for t in self.comp)))
        object.__setattr__(self, "d", tuple(map(int, self.d)))
        object.__setattr__(self, "r", tuple(map(int, self.r)))
        object.__setattr__(self, "leq", tuple(sorted(set(tuple(map(int, t)) for t in self.leq))))
        object.__setattr__(self, "objects", tuple(sorted(map(int, self.objects))))
        object.__setattr__(self, "obj_times", _freeze(self.obj_times))
        object.__setattr__(self, "obj_star", _freeze(self.obj_star))
        object.__setattr__(self, "eval", tuple(sorted(
            (tuple(map(int, path)), int(a)) for path, a in self.eval)))
        if m < 1:
            raise MalformedInputError("a category needs at least one arrow")
        ok = range(m)
        for t in self.comp:
            if len(t) != 3 or any(x not in ok for x in t):
                raise StructuralError(f"composition entry {t} refers to a missing arrow")
        pairs = [t[:2] for t in self.comp]
        if len(set(pairs)) != len(pairs):
            raise StructuralError("composition lists some pair twice")
        for name in ("d", "r"):
            row = getattr(self, name)
            if len(row) != m or any(x not in ok for x in row):
                raise MalformedInputError(f"{name} must list {m} arrows")
        for t in self.leq:
            if len(t) != 2 or any(x not in ok for x in t):
                raise MalformedInputError(f"order entry {t} refers to a missing arrow")
        k = len(self.objects)
        if k == 0 or any(x not in ok for x in self.objects):
            raise MalformedInputError("objects must be a nonempty set of arrows")
        for name in ("obj_times", "obj_star"):
            tab = getattr(self, name)
            if len(tab) != k or any(len(row) != k or any(not 0 <= v < k for v in row) for row in tab):
                raise MalformedInputError(f"{name} must be a {k}x{k} table over object positions")
        objs = set(self.objects)
        for path, a in self.eval:
            if not path or any(p not in objs for p in path) or a not in ok:
                raise MalformedInputError(f"evaluation entry {path} -> {a} is out of range")

    # -- cached lookups --------------------------------------------------------

    @functools.cached_property
    def comp_map(self) -> dict[tuple[int, int], int]:
        return {(a, b): c for a, b, c in self.comp}

    @functools.cached_property
    def leq_set(self) -> frozenset:
        return frozenset(self.leq)

    @functools.cached_property
    def below(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.m)]
        for a, b in self.leq:
            out[b].append(a)
        return tuple(tuple(x) for x in out)

    @functools.cached_property
    def obj_pos(self) -> dict[int, int]:
        return {p: i for i, p in enumerate(self.objects)}

    @functools.cached_property
    def obj_algebra(self) -> ProjectionAlgebra:
        return ProjectionAlgebra(self.obj_times, self.obj_star)

    @functools.cached_property
    def eval_map(self) -> dict[tuple[int, ...], int]:
        return dict(self.eval)

    @property
    def eval_len(self) -> int:
        return max((len(p) for p, _ in self.eval), default=0)

    # -- object algebra in arrow ids ------------------------------------------

    def times(self, p: int, q: int) -> int:
        pos = self.obj_pos
        return self.objects[self.obj_times[pos[p]][pos[q]]]

    def star(self, p: int, q: int) -> int:
        pos = self.obj_pos
        return self.objects[self.obj_star[pos[p]][pos[q]]]

    def obj_leq(self, p: int, q: int) -> bool:
        return self.times(q, p) == p

    def friendly(self, p: int, q: int) -> bool:
        return self.times(p, q) == p and self.star(p, q) == q

    def downset(self, p: int) -> tuple[int, ...]:
        return tuple(x for x in self.objects if self.obj_leq(x, p))

    def object_paths(self, max_len: int):
        """Every path over the objects up to ``max_len``, in arrow ids."""
        for seq in iter_paths(self.obj_algebra, max_len):
            yield tuple(self.objects[i] for i in seq)


# ---------------------------------------------------------------------------
# primitives
# ---------------------------------------------------------------------------

def compose(C: FiniteOrderedCategory, a: int, b: int) -> int:
    try:
        return C.comp_map[a, b]
    except KeyError:
        raise UndefinedCompositionError(f"{a} o {b} is not defined") from None


def left_restriction(C: FiniteOrderedCategory, p: int, a: int) -> int:
    """The unique ``u <= a`` with ``d(u) = p``."""
    us = [u for u in C.below[a] if C.d[u] == p]
    if len(us) != 1:
        raise ContractViolation(f"arrow {a} has {len(us)} restrictions with domain {p}")
    return us[0]


def right_restriction(C: FiniteOrderedCategory, a: int, q: int) -> int:
    """The unique ``v <= a`` with ``r(v) = q``."""
    vs = [v for v in C.below[a] if C.r[v] == q]
    if len(vs) != 1:
        raise ContractViolation(f"arrow {a} has {len(vs)} restrictions with codomain {q}")
    return vs[0]


def evaluate(C: FiniteOrderedCategory, path: Sequence[int]) -> int:
    """The stored value, or the composite of the length-2 values."""
    path = tuple(path)
    got = C.eval_map.get(path)
    if got is not None:
        return got
    if len(path) < 3:
        raise PreconditionError(f"no stored evaluation for {path}")
    out = evaluate(C, path[:2])
    for i in range(1, len(path) - 1):
        out = compose(C, out, evaluate(C, path[i:i + 2]))
    return out


def nu(C: FiniteOrderedCategory, a: int) -> dict[int, int]:
    """``p -> r(left restriction of a at p)`` on the downset of ``d(a)``."""
    return {p: C.r[left_restriction(C, p, a)] for p in C.downset(C.d[a])}


def mu_map(C: FiniteOrderedCategory, a: int) -> dict[int, int]:
    """``q -> d(right restriction of a at q)`` on the downset of ``r(a)``."""
    return {q: C.d[right_restriction(C, a, q)] for q in C.downset(C.r[a])}


def Theta(C: FiniteOrderedCategory, a: int) -> dict[int, int]:
    n = nu(C, a)
    return {x: n[C.star(x, C.d[a])] for x in C.objects}


def Delta(C: FiniteOrderedCategory, a: int) -> dict[int, int]:
    mm = mu_map(C, a)
    return {y: mm[C.times(C.r[a], y)] for y in C.objects}


def linked_pairs(C: FiniteOrderedCategory, b: int) -> list[tuple[int, int]]:
    """Pairs ``(e, f)`` with ``f = (e Theta_b) * f`` and ``e = e x (f Delta_b)``."""
    th, de = Theta(C, b), Delta(C, b)
    return [(e, f) for e in C.objects for f in C.objects
            if C.star(th[e], f) == f and C.times(e, de[f]) == e]


def lambda_rho(C: FiniteOrderedCategory, e: int, b: int, f: int) -> tuple[int, int]:
    th, de = Theta(C, b), Delta(C, b)
    e1, e2 = C.star(e, C.d[b]), de[f]
    f1, f2 = th[e], C.times(C.r[b], f)
    lam = compose(C, compose(C, evaluate(C, (e, e1)), left_restriction(C, e1, b)),
                  evaluate(C, (f1, f)))
    rho = compose(C, compose(C, evaluate(C, (e, e2)), left_restriction(C, e2, b)),
                  evaluate(C, (f2, f)))
    return lam, rho


# ---------------------------------------------------------------------------
# axiom report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    """``results`` lists ``(axiom, ok, witness)`` in :data:`AXIOM_IDS` order."""

    results: tuple[tuple[str, bool, Optional[tuple]], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def first_failure(self) -> Optional[tuple[str, Optional[tuple]]]:
        return next(((a, w) for a, ok, w in self.results if not ok), None)

    def failed(self) -> dict[str, Optional[tuple]]:
        return {a: w for a, ok, w in self.results if not ok}


def _first(it):
    return next(iter(it), None)


def _check_c1(C):
    cm = C.comp_map
    for x, y in itertools.product(range(C.m), repeat=2):
        defined = (x, y) in cm
        if defined != (C.r[x] == C.d[y]):
            return (x, y)
        if defined and (C.d[cm[x, y]] != C.d[x] or C.r[cm[x, y]] != C.r[y]):
            return (x, y)
    return None


def _check_c2(C):
    cm = C.comp_map
    for x, y in itertools.product(range(C.m), repeat=2):
        if (x, y) not in cm:
            continue
        for z in range(C.m):
            if (y, z) in cm and cm.get((cm[x, y], z)) != cm.get((x, cm[y, z])):
                return (x, y, z)
    return None


def _check_c3(C):
    cm = C.comp_map
    if tuple(sorted(set(C.d))) != C.objects or tuple(sorted(set(C.r))) != C.objects:
        return ("objects",)
    for x in range(C.m):
        if cm.get((C.d[x], x)) != x or cm.get((x, C.r[x])) != x:
            return (x,)
    return None


def _check_po(C):
    L = C.leq_set
    for a in range(C.m):
        if (a, a) not in L:
            return (a, a)
    for a, b in C.leq:
        if a != b and (b, a) in L:
            return (a, b)
        for c in range(C.m):
            if (b, c) in L and (a, c) not in L:
                return (a, b, c)
    return None


def _check_o1(C):
    L = C.leq_set
    for a, b in C.leq:
        if (C.d[a], C.d[b]) not in L or (C.r[a], C.r[b]) not in L:
            return (a, b)
    return None


def _check_o2(C):
    L, cm = C.leq_set, C.comp_map
    for (a, b), (c, dd) in itertools.product(C.leq, repeat=2):
        if C.r[a] == C.d[c] and C.r[b] == C.d[dd]:
            if (cm.get((a, c)), cm.get((b, dd))) not in L:
                return (a, b, c, dd)
    return None


def _check_o3(C, side):
    L = C.leq_set
    end = C.d if side == "d" else C.r
    for a in range(C.m):
        for p in C.objects:
            if (p, end[a]) in L:
                if sum(1 for u in C.below[a] if end[u] == p) != 1:
                    return (a, p)
    return None


def _check_wp(C):
    cls = classify(C.obj_algebra)
    if not cls.strong:
        return ("not strong",) + cls.first_violation
    L = C.leq_set
    for p, q in itertools.product(C.objects, repeat=2):
        if ((p, q) in L) != C.obj_leq(p, q):
            return (p, q)
    return None


def _check_g1d(C):
    for a in range(C.m):
        n = nu(C, a)
        dom = list(n)
        for x, y in itertools.product(dom, repeat=2):
            if (n[C.times(x, y)] != C.times(n[x], n[y])
                    or n[C.star(x, y)] != C.star(n[x], n[y])):
                return (a, x, y)
    return None


def _check_e1(C):
    ev = C.eval_map
    for p in C.objects:
        if ev.get((p,)) != p or ev.get((p, p)) != p:
            return (p,)
    return None


def _check_e2(C):
    for path, a in C.eval:
        if C.d[a] != path[0] or C.r[a] != path[-1]:
            return path
    return None


def _check_e3(C):
    ev, cm = C.eval_map, C.comp_map
    for path, a in C.eval:
        for i in range(len(path)):
            left, right = ev.get(path[:i + 1]), ev.get(path[i:])
            if cm.get((left, right)) != a:
                return path + (i,)
    return None


def _check_e56(C, side):
    ev = C.eval_map
    for path, a in C.eval:
        end = path[0] if side == "d" else path[-1]
        for t in C.downset(end):
            if side == "d":
                rp = _restrict_path(C, t, path, left=True)
                want = _first(u for u in C.below[a] if C.d[u] == t)
            else:
                rp = _restrict_path(C, t, path, left=False)
                want = _first(u for u in C.below[a] if C.r[u] == t)
            if ev.get(rp) != want:
                return path + (t,)
    return None


def _restrict_path(C, t, path, left):
    pos = C.obj_pos
    P = C.obj_algebra
    seq = [pos[p] for p in path]
    out = (left_restrict_seq(P, pos[t], seq) if left else right_restrict_seq(P, seq, pos[t]))
    return tuple(C.objects[i] for i in out)


def _check_edom(C):
    want = set(C.object_paths(max(C.eval_len, 2)))
    have = set(C.eval_map)
    missing = sorted(want - have)
    extra = sorted(have - want)
    if missing:
        return ("missing",) + missing[0]
    if extra:
        return ("not a path",) + extra[0]
    return None


def _check_g2(C):
    for b in range(C.m):
        for e, f in linked_pairs(C, b):
            try:
                lam, rho = lambda_rho(C, e, b, f)
            except (UndefinedCompositionError, ContractViolation, PreconditionError):
                return (e, b, f)
            if lam != rho:
                return (e, b, f)
    return None


def check_axioms(C: FiniteOrderedCategory) -> AxiomReport:
    """Every axiom with its least witness; later checks are skipped (and marked
    failed with witness ``None``) once a structural prerequisite fails."""
    steps = [
        ("C1", _check_c1), ("C2", _check_c2), ("C3", _check_c3), ("PO", _check_po),
        ("O1", _check_o1), ("O2", _check_o2), ("O3", lambda C: _check_o3(C, "d")),
        ("O4", lambda C: _check_o3(C, "r")), ("WP", _check_wp), ("G1d", _check_g1d),
        ("E1", _check_e1), ("E2", _check_e2), ("E3", _check_e3),
        ("E5", lambda C: _check_e56(C, "d")), ("E6", lambda C: _check_e56(C, "r")),
        ("Edom", _check_edom), ("G2", _check_g2),
    ]
    gates = {"C1", "C3", "PO", "O3", "O4", "WP", "Edom"}
    results = []
    blocked = False
    for name, fn in steps:
        if blocked:
            results.append((name, False, None))
            continue
        w = fn(C)
        results.append((name, w is None, w))
        if w is not None and name in gates:
            blocked = True
    return AxiomReport(tuple(results))


# ---------------------------------------------------------------------------
# functors
# ---------------------------------------------------------------------------

def from_semigroup(S: BiUnarySemigroup, eval_len: int = DEFAULT_EVAL_LEN) -> FiniteOrderedCategory:
    """The category of a DRC-restriction semigroup: ``a o b = ab`` when ``a* = b+``."""
    require_drc_restriction(S)
    PS, emb = projection_algebra_of(S)
    comp = [(a, b, S.mul[a][b]) for a in S.elements() for b in S.elements()
            if S.star[a] == S.plus[b]]
    leq = [(a, b) for a in S.elements() for b in S.elements() if natural_leq_S(S, a, b)]
    ev = []
    for seq in iter_paths(PS, max(eval_len, 2)):
        path = tuple(emb[i] for i in seq)
        ev.append((path, S.product(*path)))
    return FiniteOrderedCategory(S.n, comp, S.plus, S.star, leq, emb, PS.times, PS.star, ev)


def pseudo_product(C: FiniteOrderedCategory, a: int, b: int) -> int:
    t, u = C.times(C.r[a], C.d[b]), C.star(C.r[a], C.d[b])
    return compose(C, compose(C, right_restriction(C, a, t), evaluate(C, (t, u))),
                   left_restriction(C, u, b))


def to_semigroup(C: FiniteOrderedCategory, verify: bool = True) -> BiUnarySemigroup:
    """Tables of the total product ``a . b``; ``+`` is ``d`` and ``*`` is ``r``."""
    if verify:
        report = check_axioms(C)
        if not report.ok:
            raise ContractViolation(f"category fails {report.first_failure()}")
    mul = [[pseudo_product(C, a, b) for b in range(C.m)] for a in range(C.m)]
    return BiUnarySemigroup(mul, C.d, C.r)


def round_trip_category(C: FiniteOrderedCategory) -> tuple[bool, Optional[str]]:
    """Rebuild ``C`` through its semigroup and report the first differing field."""
    try:
        back = from_semigroup(to_semigroup(C), eval_len=max(C.eval_len, 2))
    except (ContractViolation, PreconditionError) as exc:
        return False, f"rebuild failed: {exc}"
    for name in ("m", "comp", "d", "r", "leq", "objects", "obj_times", "obj_star", "eval"):
        mine, theirs = getattr(C, name), getattr(back, name)
        if mine != theirs:
            if isinstance(mine, tuple) and isinstance(theirs, tuple):
                diff = _first(i for i, (x, y) in enumerate(zip(mine, theirs)) if x != y)
                if diff is None:
                    diff = min(len(mine), len(theirs))
                return False, f"{name} differs at entry {diff}"
            return False, f"{name} differs"
    return True, None


def round_trip_semigroup(S: BiUnarySemigroup) -> tuple[bool, Optional[str]]:
    back = to_semigroup(from_semigroup(S))
    for name in ("mul", "plus", "star"):
        if getattr(S, name) != getattr(back, name):
            return False, f"{name} differs"
    return True, None


# ---------------------------------------------------------------------------
# special classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CpocFlags:
    groupoid: bool
    symmetric: bool
    commutative: bool

    def as_dict(self) -> dict[str, bool]:
        return {"groupoid": self.groupoid, "symmetric": self.symmetric,
                "commutative": self.commutative}


def classify_cpoc(C: FiniteOrderedCategory) -> CpocFlags:
    cm = C.comp_map
    groupoid = all(
        any(cm.get((a, b)) == C.d[a] and cm.get((b, a)) == C.r[a] for b in range(C.m))
        for a in range(C.m))
    cls = classify(C.obj_algebra)
    symmetric = cls.symmetric and all(
        evaluate(C, (p, q, p)) == p
        for p in C.objects for q in C.objects if C.friendly(p, q))
    return CpocFlags(groupoid, symmetric, cls.commutative)


# The flags of a category and of its semigroup that are meant to match.
FLAG_CORRESPONDENCE = (("groupoid", "generalized_regular_circ"),
                       ("symmetric", "P_restriction"),
                       ("commutative", "restriction"))


def flag_mismatches(S: BiUnarySemigroup, C: Optional[FiniteOrderedCategory] = None) -> list[str]:
    C = C if C is not None else from_semigroup(S)
    cat = classify_cpoc(C).as_dict()
    sem = classify_special(S).flags()
    return [f"{a}={cat[a]} but {b}={sem[b]}" for a, b in FLAG_CORRESPONDENCE if cat[a] != sem[b]]
