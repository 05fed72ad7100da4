import itertools

import pytest

from drckit import (AlgebraHom, PPath, chain, compose, iter_paths, left_restrict, path_leq,
                    right_restrict)
from drckit.errors import MalformedInputError, PreconditionError, UndefinedCompositionError
from drckit.path_category import (delta_of_path, is_path, mu_of_path, nu_of_path,
                                  theta_of_path)
from drckit.projection_algebra import (delta, downset, friendly, is_homomorphism, natural_leq,
                                       subalgebra, theta, then)


def paths(P, max_len=3):
    return [PPath(P, s) for s in iter_paths(P, max_len)]


def naive_paths(P, max_len):
    out = []
    for k in range(1, max_len + 1):
        for s in itertools.product(P.elements(), repeat=k):
            if all(P.times[a][b] == a and P.star[a][b] == b for a, b in zip(s, s[1:])):
                out.append(s)
    return out


def test_path_validation():
    P = chain(2)
    with pytest.raises(PreconditionError):
        PPath(P, (0, 1))
    with pytest.raises(MalformedInputError):
        PPath(P, ())
    with pytest.raises(MalformedInputError):
        PPath(P, (2,))
    assert not is_path(P, (0, 1)) and is_path(P, (1, 1))


def test_iter_paths_matches_brute_force(strong_up_to_3):
    for P in strong_up_to_3:
        assert sorted(iter_paths(P, 4)) == sorted(naive_paths(P, 4))
        lens = [len(s) for s in iter_paths(P, 4)]
        assert lens == sorted(lens)


def test_composition_examples_and_errors(strong_up_to_3):
    P = chain(2)
    one = PPath(P, (1,))
    assert compose(one, one) == one
    with pytest.raises(UndefinedCompositionError):
        compose(PPath(P, (0,)), one)
    for P in strong_up_to_3:
        for p, q in itertools.product(P.elements(), repeat=2):
            if friendly(P, p, q):
                assert compose(PPath(P, (p,)), PPath(P, (p, q))).seq == (p, q)


def test_composition_is_associative_and_restricts_componentwise(strong_up_to_3):
    for P in strong_up_to_3:
        ps = paths(P, 3)
        by_start = {}
        for a in ps:
            by_start.setdefault(a.d, []).append(a)
        for a in ps:
            for b in by_start.get(a.r, []):
                ab = compose(a, b)
                for c in by_start.get(b.r, []):
                    assert compose(ab, c) == compose(a, compose(b, c))
                for r in downset(P, a.d):
                    left = left_restrict(r, a)
                    assert left_restrict(r, ab) == compose(left, left_restrict(left.r, b))


def test_restrictions(strong_up_to_3):
    for P in strong_up_to_3:
        for a in paths(P, 3):
            assert left_restrict(a.d, a) == a
            assert right_restrict(a, a.r) == a
            for q in downset(P, a.d):
                lr = left_restrict(q, a)
                assert lr.d == q and natural_leq(P, lr.r, a.r)
                assert right_restrict(a, lr.r) == lr
                assert path_leq(lr, a)
            for q in downset(P, a.r):
                rr = right_restrict(a, q)
                assert rr.r == q and natural_leq(P, rr.d, a.d)
        for p in P.elements():
            for q in downset(P, p):
                assert left_restrict(q, PPath(P, (p,))).seq == (q,)
    P = chain(2)
    with pytest.raises(PreconditionError):
        left_restrict(1, PPath(P, (0,)))
    with pytest.raises(PreconditionError):
        right_restrict(PPath(P, (0,)), 1)


def test_path_order_is_a_partial_order_with_unique_restrictions(strong_up_to_3):
    for P in strong_up_to_3:
        ps = paths(P, 3)
        for a, b in itertools.product(ps, repeat=2):
            if path_leq(a, b) and path_leq(b, a):
                assert a == b
            if len(a) == len(b) == 1:
                assert path_leq(a, b) == natural_leq(P, a.d, b.d)
        for a, b, c in itertools.product([x for x in ps if len(x) <= 2], repeat=3):
            if path_leq(a, b) and path_leq(b, c):
                assert path_leq(a, c)
        # exactly one path below b starts at each q <= d(b)
        for b in ps:
            for q in downset(P, b.d):
                below = [a for a in ps if a.d == q and path_leq(a, b)]
                assert below == [left_restrict(q, b)]


def test_theta_delta_identities(strong_up_to_3):
    for P in strong_up_to_3:
        ps = paths(P, 3)
        for p in P.elements():
            one = PPath(P, (p,))
            assert theta_of_path(one) == theta(P, p) and delta_of_path(one) == delta(P, p)
        for a in ps:
            T, D = theta_of_path(a), delta_of_path(a)
            assert then(T, D) == theta(P, a.d)
            assert then(D, T) == delta(P, a.r)
            nu, mu = nu_of_path(a), mu_of_path(a)
            assert sorted(nu.values()) == list(downset(P, a.r))
            assert all(mu[nu[x]] == x for x in nu) and all(nu[mu[y]] == y for y in mu)
            for q in downset(P, a.d):
                assert delta(P, nu[q]) == then(D, delta(P, q), T)
            # nu is an isomorphism of the downset subalgebras
            dom, cod = downset(P, a.d), downset(P, a.r)
            src, dst = subalgebra(P, dom), subalgebra(P, cod)
            pos = {y: i for i, y in enumerate(cod)}
            assert is_homomorphism(AlgebraHom(src, dst, [pos[nu[x]] for x in dom]))
        for a in ps:
            for b in ps:
                if a.r == b.d:
                    ab = compose(a, b)
                    assert theta_of_path(ab) == then(theta_of_path(a), theta_of_path(b))
