import itertools
import random

import pytest
from hypothesis import given, strategies as st

from drckit import (AlgebraHom, Budget, PPath, Verdict, build_fundamental, chain,
                    chain_product, enumerate_strong_algebras, extend_hom, fundamental_signature,
                    is_drc_restriction, is_fundamental, iter_paths, normalize_word,
                    paths_equivalent, projection_algebra_of, semilattice)
from drckit.chain_semigroup import (ChainElement, PathEvaluator, check_well_defined,
                                    elementary_moves, generator, is_admissible,
                                    signature_of_seq)
from drckit.drc_semigroup import find_isomorphism, projection_generated_sub, semilattice_semigroup
from drckit.errors import ContractViolation, PreconditionError
from drckit.path_category import delta_of_path, is_path, theta_of_path
from drckit.projection_algebra import downset, enumerate_homomorphisms

MEET2 = semilattice([[0, 0], [0, 1]])

# sizes of the fundamental quotient over each isomorphism class, sorted
FUNDAMENTAL_SIZES = {1: [1], 2: [2, 4], 3: [3, 3, 4, 5, 5, 5, 9]}


def strong_algebra_and_word(max_n=3, max_len=6):
    return st.integers(0, 10 ** 6).flatmap(lambda k: _pick(k, max_n, max_len))


def _pick(k, max_n, max_len):
    algebras = [P for n in range(1, max_n + 1) for P in enumerate_strong_algebras(n)]
    P = algebras[k % len(algebras)]
    word = st.lists(st.integers(0, P.n - 1), min_size=1, max_size=max_len)
    return st.tuples(st.just(P), word)


def test_admissible_examples(strong_up_to_3):
    P = chain(3)
    for p in P.elements():
        assert is_admissible(P, p, p, p)
    for e, p, f in itertools.product(P.elements(), repeat=3):
        assert is_admissible(P, e, p, f) == (e == f and e <= p)
    for P in strong_up_to_3:
        for e, p, f in itertools.product(P.elements(), repeat=3):
            if is_admissible(P, e, p, f):
                assert is_path(P, (e, P.star[e][p], f))
                assert is_path(P, (e, P.times[p][f], f))


def test_elementary_move_examples():
    P = MEET2
    assert PPath(P, (1, 1)) in elementary_moves(PPath(P, (1,)))
    moves = {m.seq for m in elementary_moves(PPath(P, (1, 1, 1)))}
    assert (1, 1) in moves and (1, 1, 1, 1) in moves


def test_moves_preserve_endpoints_and_signature(strong_up_to_3):
    for P in strong_up_to_3:
        for s in iter_paths(P, 4):
            a = PPath(P, s)
            sig = fundamental_signature(a)
            for b in elementary_moves(a):
                assert (b.d, b.r) == (a.d, a.r)
                assert fundamental_signature(b) == sig


def test_equivalence_examples(strong_up_to_3):
    for P in strong_up_to_3:
        for p in P.elements():
            assert paths_equivalent(PPath(P, (p, p)), PPath(P, (p,))) is Verdict.YES
        for p, q in itertools.product(P.elements(), repeat=2):
            if p != q:
                assert paths_equivalent(PPath(P, (p,)), PPath(P, (q,))) is Verdict.NO
        for e, p, f in itertools.product(P.elements(), repeat=3):
            if is_admissible(P, e, p, f):
                a = PPath(P, (e, P.star[e][p], f))
                b = PPath(P, (e, P.times[p][f], f))
                assert paths_equivalent(a, b) is Verdict.YES


def test_exhausted_search_is_unknown_not_no():
    P = MEET2
    a, b = PPath(P, (1, 1, 1, 1)), PPath(P, (1,))
    assert paths_equivalent(a, b, Budget(max_states=2)) is Verdict.UNKNOWN
    assert paths_equivalent(a, b, Budget(max_len=3)) is Verdict.UNKNOWN
    assert paths_equivalent(a, b) is Verdict.YES


def test_budget_defaults(monkeypatch):
    assert Budget().resolve(2, 5)[0] == 9
    monkeypatch.setenv("DRCKIT_BUDGET", "17")
    assert Budget().resolve(1) == (5, 17)
    assert Budget(3, 4).resolve(10) == (3, 4)


def test_yes_is_sound_on_all_short_pairs(strong_up_to_3):
    rng = random.Random(7)
    for P in strong_up_to_3:
        seqs = list(iter_paths(P, 3))
        for _ in range(60):
            a, b = PPath(P, rng.choice(seqs)), PPath(P, rng.choice(seqs))
            v = paths_equivalent(a, b, Budget(max_len=5, max_states=5000))
            if v is Verdict.YES:
                assert fundamental_signature(a) == fundamental_signature(b)
            if fundamental_signature(a) != fundamental_signature(b):
                assert v is Verdict.NO


def test_normalize_examples(strong_up_to_3):
    for P in strong_up_to_3:
        for p in P.elements():
            assert normalize_word(P, [p]).seq == (p,)
            assert normalize_word(P, [p, p]).seq == (p, p)
    with pytest.raises(PreconditionError):
        normalize_word(MEET2, [])
    with pytest.raises(PreconditionError):
        normalize_word(MEET2, [2])


@given(strong_algebra_and_word())
def test_normalize_preserves_length_and_value(case):
    P, word = case
    path = normalize_word(P, word)
    assert len(path) == len(word) and is_path(P, path.seq)
    model = build_fundamental(P)
    S = model.semigroup
    direct = S.product(*(model.generators[p] for p in word))
    assert model.signatures[direct] == fundamental_signature(path)


def test_chain_product_examples(strong_up_to_3):
    for P in strong_up_to_3:
        for p, q in itertools.product(P.elements(), repeat=2):
            pq = chain_product(generator(P, p), generator(P, q))
            assert pq.representative.seq == (P.times[p][q], P.star[p][q])
        for p in P.elements():
            pp = chain_product(generator(P, p), generator(P, p))
            assert pp.representative.seq == (p, p)
            assert paths_equivalent(pp.representative, PPath(P, (p,))) is Verdict.YES
            e = ChainElement(PPath(P, (p,)))
            assert e.plus().representative.seq == e.star().representative.seq == (p,)


@given(strong_algebra_and_word(max_len=4), st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))
def test_product_is_associative_on_signatures(case, s1, s2):
    P, w = case
    a = ChainElement(normalize_word(P, w))
    b = ChainElement(normalize_word(P, random.Random(s1).choices(range(P.n), k=3)))
    c = ChainElement(normalize_word(P, random.Random(s2).choices(range(P.n), k=2)))
    left = chain_product(chain_product(a, b), c)
    right = chain_product(a, chain_product(b, c))
    assert left.signature == right.signature


def test_product_respects_signatures(strong_up_to_3):
    rng = random.Random(11)
    for P in strong_up_to_3:
        seqs = list(iter_paths(P, 3))
        by_sig = {}
        for s in seqs:
            by_sig.setdefault(signature_of_seq(P, s), []).append(s)
        for group in by_sig.values():
            for s, t in itertools.combinations(group[:4], 2):
                a, b = ChainElement(PPath(P, s)), ChainElement(PPath(P, t))
                c = ChainElement(PPath(P, rng.choice(seqs)))
                assert chain_product(a, c).signature == chain_product(b, c).signature
                assert chain_product(c, a).signature == chain_product(c, b).signature


def test_signature_examples_and_determination(strong_up_to_3):
    for P in strong_up_to_3:
        for p in P.elements():
            ident = tuple((x, x) for x in downset(P, p))
            assert signature_of_seq(P, (p,)).pairs == ident
            assert signature_of_seq(P, (p, p)) == signature_of_seq(P, (p,))
        seen = {}
        back = {}
        for s in iter_paths(P, 4):
            a = PPath(P, s)
            pair = (theta_of_path(a), delta_of_path(a))
            sig = fundamental_signature(a)
            assert seen.setdefault(sig, pair) == pair
            assert back.setdefault(pair, sig) == sig


def test_build_fundamental_golden_sizes():
    for n, sizes in FUNDAMENTAL_SIZES.items():
        got = sorted(build_fundamental(P).semigroup.n for P in enumerate_strong_algebras(n, dedup=True))
        assert got == sizes


def test_build_fundamental_properties(strong_up_to_3):
    for P in strong_up_to_3:
        model = build_fundamental(P)
        S = model.semigroup
        assert is_drc_restriction(S) and is_fundamental(S)
        assert projection_generated_sub(S)[0] == S
        PS, emb = projection_algebra_of(S)
        assert sorted(emb) == sorted(model.generators)
        for sig, rep in zip(model.signatures, model.representatives):
            assert signature_of_seq(P, rep) == sig
    M = build_fundamental(MEET2).semigroup
    assert find_isomorphism(M, semilattice_semigroup(MEET2.times)) is not None
    assert build_fundamental(chain(1)).semigroup.n == 1


def _sample_homs(strong_up_to_3, o3):
    for S in o3:
        PS, emb = projection_algebra_of(S)
        for P in strong_up_to_3:
            if P.n <= 2 or P.n == PS.n:
                for m in enumerate_homomorphisms(P, PS)[:3]:
                    yield P, S, AlgebraHom(P, PS, m)


def test_extend_hom_on_moves(strong_up_to_3, o3_up_to_3):
    checked = 0
    for P, S, phi in _sample_homs(strong_up_to_3, o3_up_to_3[::5]):
        ev = extend_hom(phi, S)
        pairs = [(PPath(P, s), b) for s in iter_paths(P, 3) for b in elementary_moves(PPath(P, s))]
        check_well_defined(ev, pairs)
        for p in P.elements():
            assert ev((p,)) == ev((p, p)) == ev.images[p]
            assert ev(generator(P, p)) == ev.images[p]
        checked += 1
    assert checked > 50


def test_extend_hom_identity_and_errors(o3_up_to_3):
    for S in o3_up_to_3:
        PS, emb = projection_algebra_of(S)
        ev = extend_hom(AlgebraHom(PS, PS, tuple(PS.elements())), S)
        for p in PS.elements():
            assert ev((p,)) == emb[p]
    P3 = chain(3)
    S = semilattice_semigroup(P3.times)
    PS, _ = projection_algebra_of(S)
    with pytest.raises(PreconditionError):
        extend_hom(AlgebraHom(P3, PS, (2, 1, 0)), S)
    with pytest.raises(PreconditionError):
        extend_hom(AlgebraHom(P3, MEET2, (0, 0, 1)), S)


def test_check_well_defined_reports_violations():
    S = semilattice_semigroup([[0, 0], [0, 1]])
    ev = PathEvaluator(S, (0, 1))
    with pytest.raises(ContractViolation):
        check_well_defined(ev, [(PPath(MEET2, (0,)), PPath(MEET2, (1,)))])
