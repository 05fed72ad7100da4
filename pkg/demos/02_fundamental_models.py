"""
Three fundamental models of one algebra
========================================

For a strong projection algebra we build the same finite semigroup three
ways: from paths modulo moves, from partial isomorphisms between downsets and
from pairs of maps. Then we check they agree.
"""

import numpy as np

from drckit import (build_E_of_SMP, build_fundamental, build_pair_closure,
                    enumerate_strong_algebras, is_fundamental, normalize_word,
                    paths_equivalent, PPath)
from drckit.drc_semigroup import generated_isomorphism

P = enumerate_strong_algebras(3, dedup=True)[-1]
print("algebra: times", P.times, "star", P.star)

# approach one: classes of paths
paths = build_fundamental(P)
S = paths.semigroup
print("order", S.n, "fundamental", is_fundamental(S))
for sig, rep in zip(paths.signatures, paths.representatives):
    print("  path", rep, "->", sig.pairs)

# the multiplication table, as an array
print(np.array(S.mul))

# approach two and three
munn = build_E_of_SMP(P)
pairs = build_pair_closure(P)
for name, model in (("partial isos", munn), ("pairs", pairs)):
    iso = generated_isomorphism(S, paths.generators, model.semigroup, model.generators)
    print(name, "order", model.semigroup.n, "isomorphic", iso is not None)

# any word can be pushed to a path of the same length
word = [2, 0, 1, 2]
path = normalize_word(P, word)
print("word", word, "normalizes to", path.seq)

# equal paths are found by search over moves
p = path.seq[-1]
print("(p, p) ~ (p):", paths_equivalent(PPath(P, (p, p)), PPath(P, (p,))).value)
