"""Isomorphisms between principal downsets and the semigroup they induce.

``PartialIso(P, p, q, pairs)`` is an isomorphism from the downset of ``p`` onto
the downset of ``q``, stored as sorted ``(x, image)`` pairs. Composition in the
groupoid needs matching ends; the semigroup product :func:`smp_product` is
total and first cuts both factors down to where they can meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .drc_semigroup import (BiUnarySemigroup, Congruence, mu, projection_algebra_of,
                            require_drc_restriction)
from .errors import ContractViolation, MalformedInputError, PreconditionError, UndefinedCompositionError
from .projection_algebra import (Map, ProjectionAlgebra, delta, downset, friendly, natural_leq,
                                 require_strong, theta, then)


@dataclass(frozen=True)
class PartialIso:
    algebra: ProjectionAlgebra = field(compare=False, repr=False)
    p: int
    q: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        P = self.algebra
        pairs = tuple(sorted((int(x), int(y)) for x, y in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        dom = tuple(x for x, _ in pairs)
        img = sorted(y for _, y in pairs)
        if dom != downset(P, self.p):
            raise MalformedInputError(f"domain {dom} is not the downset of {self.p}")
        if tuple(img) != downset(P, self.q):
            raise MalformedInputError(f"image {tuple(img)} is not the downset of {self.q}")
        m = dict(pairs)
        for x in dom:
            for y in dom:
                if (m[P.times[x][y]] != P.times[m[x]][m[y]]
                        or m[P.star[x][y]] != P.star[m[x]][m[y]]):
                    raise ContractViolation(f"map is not a homomorphism at ({x}, {y})")

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def __call__(self, x: int) -> int:
        return self.as_dict()[x]

    def inverse(self) -> "PartialIso":
        return PartialIso(self.algebra, self.q, self.p, tuple((y, x) for x, y in self.pairs))

    def restrict(self, x: int) -> "PartialIso":
        """The restriction to the downset of ``x``, a member of ``M(x, x alpha)``."""
        m = self.as_dict()
        if x not in m:
            raise PreconditionError(f"{x} is not below {self.p}")
        return PartialIso(self.algebra, x, m[x],
                          tuple((y, m[y]) for y in downset(self.algebra, x)))


def identity(P: ProjectionAlgebra, p: int) -> PartialIso:
    return PartialIso(P, p, p, tuple((x, x) for x in downset(P, p)))


def gamma(P: ProjectionAlgebra, p: int, q: int) -> PartialIso:
    """``theta_q`` restricted to the downset of ``p``, for friendly ``p, q``."""
    if not friendly(P, p, q):
        raise PreconditionError(f"{p} and {q} are not friendly")
    return PartialIso(P, p, q, tuple((x, P.star[x][q]) for x in downset(P, p)))


def groupoid_compose(a: PartialIso, b: PartialIso) -> PartialIso:
    if a.q != b.p:
        raise UndefinedCompositionError(f"codomain {a.q} differs from domain {b.p}")
    mb = b.as_dict()
    return PartialIso(a.algebra, a.p, b.q, tuple((x, mb[y]) for x, y in a.pairs))


def smp_product(a: PartialIso, b: PartialIso) -> PartialIso:
    """``a`` cut down to the preimage of ``q x s``, then ``theta_(q*s)``, then ``b``."""
    P = a.algebra
    q, s = a.q, b.p
    inv = {y: x for x, y in a.pairs}
    top = inv[P.times[q][s]]
    ma, mb = a.as_dict(), b.as_dict()
    qs = P.star[q][s]
    pairs = tuple((x, mb[P.star[ma[x]][qs]]) for x in downset(P, top))
    return PartialIso(P, top, mb[qs], pairs)


def smp_plus(a: PartialIso) -> PartialIso:
    return identity(a.algebra, a.p)


def smp_star(a: PartialIso) -> PartialIso:
    return identity(a.algebra, a.q)


# ---------------------------------------------------------------------------
# closures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureModel:
    """A finite semigroup generated by one element per projection.

    ``elements[i]`` is the concrete value behind element ``i``; ``generators[p]``
    is the element standing for projection ``p``.
    """

    semigroup: BiUnarySemigroup
    elements: tuple
    generators: tuple[int, ...]


def _close(P: ProjectionAlgebra, gens: list, product, plus, star) -> ClosureModel:
    elems = []
    index = {}

    def add(v):
        if v not in index:
            index[v] = len(elems)
            elems.append(v)
        return index[v]

    gen_ids = tuple(add(g) for g in gens)
    k = 0
    while k < len(elems):
        for g in gens:
            add(product(elems[k], g))
        k += 1
    m = len(elems)
    mul = [[index[product(elems[a], elems[b])] for b in range(m)] for a in range(m)]
    try:
        pl = [index[plus(v)] for v in elems]
        st = [index[star(v)] for v in elems]
    except KeyError as exc:
        raise ContractViolation(f"closure is not closed under the unary operations: {exc}") from None
    return ClosureModel(BiUnarySemigroup(mul, pl, st), tuple(elems), gen_ids)


def build_E_of_SMP(P: ProjectionAlgebra) -> ClosureModel:
    """The subsemigroup generated by the identities of all principal downsets."""
    require_strong(P)
    return _close(P, [identity(P, p) for p in P.elements()], smp_product, smp_plus, smp_star)


# ---------------------------------------------------------------------------
# pairs of total maps
# ---------------------------------------------------------------------------

PairRepr = tuple[Map, Map]


def pair_repr(a: PartialIso) -> PairRepr:
    """``(theta_p then a, delta_q then a^-1)`` as maps on the whole algebra."""
    P = a.algebra
    m, inv = a.as_dict(), a.inverse().as_dict()
    return (tuple(m[x] for x in theta(P, a.p)), tuple(inv[y] for y in delta(P, a.q)))


def pair_product(u: PairRepr, v: PairRepr) -> PairRepr:
    return then(u[0], v[0]), then(v[1], u[1])


def _top(P: ProjectionAlgebra, image) -> int:
    vals = set(image)
    tops = [t for t in vals if all(natural_leq(P, x, t) for x in vals)]
    if len(tops) != 1:
        raise ContractViolation(f"image {sorted(vals)} is not a principal downset")
    return tops[0]


def pair_plus(P: ProjectionAlgebra, u: PairRepr) -> PairRepr:
    p = _top(P, u[1])
    return theta(P, p), delta(P, p)


def pair_star(P: ProjectionAlgebra, u: PairRepr) -> PairRepr:
    q = _top(P, u[0])
    return theta(P, q), delta(P, q)


def build_pair_closure(P: ProjectionAlgebra) -> ClosureModel:
    """Closure of ``(theta_p, delta_p)`` under the componentwise product."""
    require_strong(P)
    gens = [(theta(P, p), delta(P, p)) for p in P.elements()]
    return _close(P, gens, pair_product,
                  lambda u: pair_plus(P, u), lambda u: pair_star(P, u))


# ---------------------------------------------------------------------------
# the representation of a semigroup
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiResult:
    """``images[a]`` is ``nu_a`` written over ``P(S)`` indices (``emb`` maps them back)."""

    algebra: ProjectionAlgebra
    emb: tuple[int, ...]
    images: tuple[PartialIso, ...]
    kernel: Congruence


def nu_of_element(S: BiUnarySemigroup, PS: ProjectionAlgebra, emb, a: int) -> PartialIso:
    pos = {e: i for i, e in enumerate(emb)}
    p, q = pos[S.plus[a]], pos[S.star[a]]
    pairs = tuple((x, pos[S.star[S.mul[emb[x]][a]]]) for x in downset(PS, p))
    return PartialIso(PS, p, q, pairs)


def phi_S(S: BiUnarySemigroup) -> PhiResult:
    """``a -> nu_a`` with ``nu_a: x -> (xa)*``; checks that it is a homomorphism
    and that its kernel equals ``mu(S)``."""
    require_drc_restriction(S)
    PS, emb = projection_algebra_of(S)
    images = tuple(nu_of_element(S, PS, emb, a) for a in S.elements())
    for a in S.elements():
        if images[S.plus[a]] != smp_plus(images[a]) or images[S.star[a]] != smp_star(images[a]):
            raise ContractViolation(f"phi does not preserve the unary operations at {a}")
        for b in S.elements():
            if images[S.mul[a][b]] != smp_product(images[a], images[b]):
                raise ContractViolation(f"phi is not multiplicative at ({a}, {b})")
    kernel = Congruence.from_labels(images)
    if kernel != mu(S):
        raise ContractViolation("kernel of phi differs from mu")
    return PhiResult(PS, emb, images, kernel)


def image_of_phi(res: PhiResult) -> tuple[PartialIso, ...]:
    """Distinct images in first-occurrence order."""
    return tuple(dict.fromkeys(res.images))


def is_full_subalgebra(res: PhiResult) -> bool:
    """Whether the image contains every identity map of a principal downset."""
    ids = {identity(res.algebra, p) for p in res.algebra.elements()}
    return ids <= set(res.images)


def inverse_law(a: PartialIso) -> Optional[str]:
    """``None`` when ``a . a^-1 = a+`` and ``a^-1 . a = a*`` hold."""
    inv = a.inverse()
    if smp_product(a, inv) != smp_plus(a):
        return "a a^-1 differs from a+"
    if smp_product(inv, a) != smp_star(a):
        return "a^-1 a differs from a*"
    return None
