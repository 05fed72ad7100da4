import itertools
import random

import pytest

import oracles
from drckit import (BiUnarySemigroup, PartialIso, build_E_of_SMP, build_fundamental,
                    build_pair_closure, chain, classify, is_drc_restriction, is_fundamental, mu,
                    phi_S, semilattice, smp_product)
from drckit.drc_semigroup import (find_isomorphism, projection_generated_sub,
                                  semilattice_semigroup)
from drckit.errors import (ContractViolation, MalformedInputError, PreconditionError,
                           UndefinedCompositionError)
from drckit.munn_fundamental import (gamma, groupoid_compose, identity, image_of_phi,
                                     inverse_law, is_full_subalgebra, pair_product, pair_repr,
                                     smp_plus, smp_star)
from drckit.projection_algebra import delta, downset, friendly, theta

MEET2 = semilattice([[0, 0], [0, 1]])


def all_partial_isos(P):
    out = []
    for p, q in itertools.product(P.elements(), repeat=2):
        dom, cod = downset(P, p), downset(P, q)
        if len(dom) != len(cod):
            continue
        for img in itertools.permutations(cod):
            try:
                out.append(PartialIso(P, p, q, tuple(zip(dom, img))))
            except ContractViolation:
                pass
    return out


def test_gamma_examples(strong_up_to_3):
    for P in strong_up_to_3:
        for p in P.elements():
            assert gamma(P, p, p) == identity(P, p)
        for p, q in itertools.product(P.elements(), repeat=2):
            if friendly(P, p, q):
                g = gamma(P, p, q)
                assert g.inverse().as_dict() == {y: P.times[p][y] for y in downset(P, q)}
                assert groupoid_compose(g, g.inverse()) == identity(P, p)
    with pytest.raises(PreconditionError):
        gamma(MEET2, 0, 1)


def test_partial_iso_validation():
    with pytest.raises(MalformedInputError):
        PartialIso(MEET2, 1, 1, ((0, 0),))
    with pytest.raises(UndefinedCompositionError):
        groupoid_compose(identity(MEET2, 0), identity(MEET2, 1))


def test_product_examples_and_laws(strong_up_to_3):
    rng = random.Random(3)
    for P in strong_up_to_3:
        isos = all_partial_isos(P)
        for p, q in itertools.product(P.elements(), repeat=2):
            assert smp_product(identity(P, p), identity(P, q)) == gamma(P, P.times[p][q],
                                                                        P.star[p][q])
        for a in isos:
            assert inverse_law(a) is None
            assert smp_product(a, a.inverse()) == smp_plus(a)
            assert smp_star(a) == identity(P, a.q)
            for x in downset(P, a.p):
                r = a.restrict(x)
                assert (r.p, r.q) == (x, a(x))
        for a, b in itertools.product(isos, repeat=2):
            if a.q == b.p:
                assert smp_product(a, b) == groupoid_compose(a, b)
        for _ in range(50):
            a, b, c = (rng.choice(isos) for _ in range(3))
            assert smp_product(smp_product(a, b), c) == smp_product(a, smp_product(b, c))


def test_pair_representation(strong_up_to_3):
    for P in strong_up_to_3:
        isos = all_partial_isos(P)
        reprs = [pair_repr(a) for a in isos]
        assert len(set(reprs)) == len(isos)
        for p in P.elements():
            assert pair_repr(identity(P, p)) == (theta(P, p), delta(P, p))
        for a, b in itertools.product(isos, repeat=2):
            assert pair_product(pair_repr(a), pair_repr(b)) == pair_repr(smp_product(a, b))


def test_build_E_small_cases(strong_up_to_3):
    assert build_E_of_SMP(chain(1)).semigroup.n == 1
    for P in strong_up_to_3:
        model = build_E_of_SMP(P)
        S = model.semigroup
        assert S.n == build_fundamental(P).semigroup.n
        assert is_drc_restriction(S) and is_fundamental(S)
        assert projection_generated_sub(S)[0] == S
        if classify(P).commutative:
            assert find_isomorphism(S, semilattice_semigroup(P.times)) is not None
            assert all(e.p == e.q and e == identity(P, e.p) for e in model.elements)
        assert build_pair_closure(P).semigroup.n == S.n


def test_phi_on_enumerated_instances(o3_up_to_4):
    for S in o3_up_to_4:
        res = phi_S(S)
        assert res.kernel == mu(S)
        for a in S.elements():
            # images are written over P(S) indices; map back through emb for the oracle
            img = {res.emb[x]: res.emb[y] for x, y in res.images[a].pairs}
            assert img == oracles.naive_nu(S.mul, S.plus, S.star, a)
        for p in set(S.plus):
            k = res.emb.index(p)
            assert res.images[p] == identity(res.algebra, k)
        if is_fundamental(S):
            assert is_full_subalgebra(res)
            assert len(image_of_phi(res)) == S.n


def test_phi_requires_restriction_semigroup():
    S = BiUnarySemigroup([[0, 0, 0], [0, 1, 2], [2, 2, 2]], [0, 1, 1], [0, 1, 0])
    with pytest.raises(PreconditionError):
        phi_S(S)
    assert phi_S(semilattice_semigroup(MEET2.times)).kernel.is_identity()
