"""Finite projection algebras, DRC-restriction semigroups and the ordered
categories built from them."""

from .errors import (ContractViolation, DrcError, MalformedInputError, PreconditionError,
                     ResourceLimitError, StructuralError, UndefinedCompositionError)
from .projection_algebra import (AXIOM_ORDER, AlgebraHom, ProjectionAlgebra, chain, classify,
                                 delta, downset, enumerate_homomorphisms,
                                 enumerate_strong_algebras, find_isomorphism, friendly,
                                 is_homomorphism, natural_leq, semilattice, theta, then)
from .drc_semigroup import (BiUnarySemigroup, Congruence, check_ample, check_drc,
                            classify_special, enumerate_drc_restriction_semigroups,
                            enumerate_drc_semigroups, is_drc, is_drc_restriction,
                            is_fundamental, mu, natural_leq_S, projection_algebra_of, quotient)
from .path_category import PPath, compose, iter_paths, left_restrict, path_leq, right_restrict
from .chain_semigroup import (Budget, ChainElement, FundamentalModel, PathEvaluator, Verdict,
                              build_fundamental, chain_product, extend_hom,
                              fundamental_signature, normalize_word, paths_equivalent)
from .munn_fundamental import (PartialIso, build_E_of_SMP, build_pair_closure, phi_S,
                               smp_product)
from .cpo_category import (FiniteOrderedCategory, check_axioms, classify_cpoc, from_semigroup,
                           round_trip_category, round_trip_semigroup, to_semigroup)
from .cli_io import Document, parse, serialize

__version__ = "0.1.0"
