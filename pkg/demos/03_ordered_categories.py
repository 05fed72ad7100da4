"""
Semigroups and their ordered categories
========================================

Every DRC-restriction semigroup gives an ordered category on its projections.
We build one, check its axioms, read the semigroup back and compare flags.
"""

from drckit import (check_axioms, classify_cpoc, classify_special,
                    enumerate_drc_restriction_semigroups, from_semigroup, mu, phi_S,
                    to_semigroup)
from drckit.cli_io import Document, serialize

semigroups = enumerate_drc_restriction_semigroups(3, dedup=True)
print(len(semigroups), "DRC-restriction semigroups of order 3 up to isomorphism")

S = semigroups[-1]
print(serialize(Document("semigroup", S)))

C = from_semigroup(S)
print("objects", C.objects, "arrows", C.m)
print("axioms hold:", check_axioms(C).ok)

# reading the semigroup back is exact
assert to_semigroup(C) == S

# flags on both sides
print("category:", classify_cpoc(C).as_dict())
print("semigroup:", classify_special(S).flags())

# the kernel of the representation by partial isomorphisms is mu
print("mu blocks", mu(S).blocks, "kernel blocks", phi_S(S).kernel.blocks)

# the category as a document, the same text the CLI reads
print(serialize(Document("category", C)))
