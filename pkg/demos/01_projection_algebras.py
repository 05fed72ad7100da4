"""
Projection algebras
===================

Small strong projection algebras: enumerate them, classify them and look at
the maps ``theta`` and ``delta`` that drive everything else in the package.
"""

import numpy as np

from drckit import chain, classify, enumerate_strong_algebras, semilattice
from drckit.projection_algebra import delta, downset, theta, then

# a meet semilattice is the simplest kind: both operations are the meet
P = semilattice([[0, 0], [0, 1]])
print("flags of the two element semilattice:", classify(P).flags())

# tables come back as tuples; numpy is handy for looking at them
print(np.array(P.times))

# counting labelled and unlabelled strong algebras of order 3
labelled = enumerate_strong_algebras(3)
classes = enumerate_strong_algebras(3, dedup=True)
print(len(labelled), "labelled algebras in", len(classes), "isomorphism classes")

# most of them are not commutative
for Q in classes:
    c = classify(Q)
    print("times", Q.times, "star", Q.star, "commutative" if c.commutative else "")

# theta_p then delta_p is theta_p again, on any algebra
Q = classes[-1]
for p in Q.elements():
    assert then(theta(Q, p), delta(Q, p)) == theta(Q, p)
    print("p =", p, "downset", downset(Q, p), "theta", theta(Q, p), "delta", delta(Q, p))

# a chain 0 < 1 < 2 as a semilattice
C3 = chain(3)
print("order on the chain:", [(e, f) for e in C3.elements() for f in downset(C3, e)])
