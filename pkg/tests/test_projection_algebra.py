import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from drckit import (AXIOM_ORDER, AlgebraHom, ProjectionAlgebra, chain, classify, delta, downset,
                    enumerate_homomorphisms, enumerate_strong_algebras, find_isomorphism,
                    friendly, is_homomorphism, natural_leq, semilattice, theta, then)
from drckit.errors import MalformedInputError, PreconditionError, ResourceLimitError
from drckit.projection_algebra import canonical_form, require_strong, subalgebra

ONE = ProjectionAlgebra([[0]], [[0]])
MEET2 = semilattice([[0, 0], [0, 1]])


def tables(n):
    row = st.lists(st.integers(0, n - 1), min_size=n, max_size=n)
    return st.lists(row, min_size=n, max_size=n)


@st.composite
def any_algebra(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    return ProjectionAlgebra(draw(tables(n)), draw(tables(n)))


# golden values: n <= 3 agree with the naive oracle below, n = 4 frozen from the enumerator
STRONG_COUNTS = {1: 1, 2: 3, 3: 28, 4: 723}
STRONG_CLASSES = {1: 1, 2: 2, 3: 7, 4: 43}


def test_one_element_algebra_has_every_flag():
    c = classify(ONE)
    assert all(c.flags().values())
    assert c.first_violation is None


def test_meet_semilattice_is_strong_symmetric_commutative():
    c = classify(MEET2)
    assert c.strong and c.symmetric and c.commutative


def test_two_element_counterexample_reports_l2():
    # 0 x 1 = 1, every other product 0; star taken constant 0
    P = ProjectionAlgebra([[0, 1], [0, 0]], [[0, 0], [0, 0]])
    c = classify(P)
    assert not c.left
    assert c.violations["L2"] == (0, 1)
    # L1 already fails at e = 1, so it precedes L2 in the least witness
    assert c.first_violation == ("L1", (1,))


def test_out_of_range_entry_is_malformed():
    with pytest.raises(MalformedInputError):
        ProjectionAlgebra([[0, 2], [0, 1]], [[0, 0], [0, 1]])
    with pytest.raises(MalformedInputError):
        ProjectionAlgebra([[0, 0], [0]], [[0, 0], [0, 1]])


@given(any_algebra())
def test_classify_matches_naive_evaluation(P):
    c = classify(P)
    assert c.flags() == oracles.pa_flags(P.times, P.star)
    assert c.violations == oracles.pa_failures(P.times, P.star)
    expected = next(((a, c.violations[a]) for a in AXIOM_ORDER if a in c.violations), None)
    assert c.first_violation == expected


@given(any_algebra())
def test_flag_hierarchy(P):
    c = classify(P)
    assert not c.strong or c.two_sided
    assert not c.two_sided or (c.left and c.right)
    assert not (c.symmetric or c.commutative) or c.strong


def test_natural_order_examples():
    assert natural_leq(MEET2, 0, 1)
    assert not natural_leq(MEET2, 1, 0)
    assert all(natural_leq(MEET2, e, e) for e in MEET2.elements())


def test_top_theta_is_identity_and_downsets():
    assert theta(MEET2, 1) == (0, 1)
    assert downset(MEET2, 1) == (0, 1)
    assert downset(MEET2, 0) == (0,)
    assert not friendly(MEET2, 0, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_naive_oracle(n):
    lib = [(P.times, P.star) for P in enumerate_strong_algebras(n)]
    assert lib == oracles.naive_strong_algebras(n)
    assert len(lib) == STRONG_COUNTS[n]


def test_enumeration_golden_counts():
    for n in (1, 2, 3, 4):
        assert len(enumerate_strong_algebras(n)) == STRONG_COUNTS[n]
        assert len(enumerate_strong_algebras(n, dedup=True)) == STRONG_CLASSES[n]


def test_dedup_classes_are_pairwise_non_isomorphic(strong_dedup_up_to_4):
    for n in (2, 3):
        reps = [P for P in strong_dedup_up_to_4 if P.n == n]
        for P, Q in itertools.combinations(reps, 2):
            assert find_isomorphism(P, Q) is None


def test_every_labeled_algebra_is_isomorphic_to_its_canonical_form(strong_up_to_3):
    for P in strong_up_to_3:
        Q = canonical_form(P)
        iso = find_isomorphism(P, Q)
        assert iso is not None
        assert is_homomorphism(AlgebraHom(P, Q, iso))


def test_enumeration_guard():
    with pytest.raises(ResourceLimitError):
        enumerate_strong_algebras(5)
    with pytest.raises(MalformedInputError):
        enumerate_strong_algebras(0)


def test_calculus_identities_on_enumerated_algebras(strong_up_to_3):
    for P in strong_up_to_3:
        els = list(P.elements())
        leq = lambda a, b: natural_leq(P, a, b)
        # partial order
        for a, b, c in itertools.product(els, repeat=3):
            assert not (leq(a, b) and leq(b, a)) or a == b
            assert not (leq(a, b) and leq(b, c)) or leq(a, c)
        for p in els:
            down = set(downset(P, p))
            assert set(theta(P, p)) == down == set(delta(P, p))
            assert down == {x for x in els if oracles.naive_leq(P.times, x, p)}
            subalgebra(P, sorted(down))
            assert theta(P, p)[p] == p and friendly(P, p, p)
        for p, q in itertools.product(els, repeat=2):
            a, b = P.times[p][q], P.star[p][q]
            assert leq(a, p) and leq(b, q) and friendly(P, a, b)
            if leq(p, q):
                tp, tq, dq = theta(P, p), theta(P, q), delta(P, q)
                assert tp == then(tp, tq) == then(tq, tp) == then(tp, dq)
            ps, sp = P.star[p][q], P.times[q][p]
            assert delta(P, ps) == then(delta(P, q), delta(P, p), theta(P, q))
            assert theta(P, sp) == then(theta(P, q), theta(P, p), delta(P, q))


def test_commutative_strong_algebras_are_meet_semilattices(strong_up_to_3):
    for P in strong_up_to_3:
        if not classify(P).commutative:
            continue
        els = P.elements()
        for x, y in itertools.product(els, repeat=2):
            assert P.times[x][y] == P.times[y][x] == P.star[x][y]
        for x, y, z in itertools.product(els, repeat=3):
            assert P.times[P.times[x][y]][z] == P.times[x][P.times[y][z]]


def test_homomorphisms_preserve_order_and_friendliness(strong_up_to_3):
    small = [P for P in strong_up_to_3 if P.n <= 3]
    for P, Q in itertools.product(small[:12], repeat=2):
        homs = enumerate_homomorphisms(P, Q)
        pairs = list(itertools.product(P.elements(), repeat=2))
        brute = [m for m in itertools.product(range(Q.n), repeat=P.n)
                 if all(m[P.times[a][b]] == Q.times[m[a]][m[b]]
                        and m[P.star[a][b]] == Q.star[m[a]][m[b]] for a, b in pairs)]
        assert homs == brute
        for m in homs:
            for a, b in itertools.product(P.elements(), repeat=2):
                if natural_leq(P, a, b):
                    assert natural_leq(Q, m[a], m[b])
                if friendly(P, a, b):
                    assert friendly(Q, m[a], m[b])


def test_identity_and_constant_homomorphisms():
    P = chain(3)
    assert is_homomorphism(AlgebraHom(P, P, (0, 1, 2)))
    assert is_homomorphism(AlgebraHom(P, ONE, (0, 0, 0)))
    with pytest.raises(MalformedInputError):
        AlgebraHom(P, P, (0, 1))


def test_require_strong_rejects_non_strong():
    with pytest.raises(PreconditionError):
        require_strong(ProjectionAlgebra([[0, 1], [0, 0]], [[0, 0], [0, 0]]))
