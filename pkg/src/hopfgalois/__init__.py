"""Exact-arithmetic toolkit for Hopf-Galois structures on finite separable
field extensions: regular-subgroup enumeration on coset spaces, opposite
(commuting) structures, Galois descent of group algebras, normal-basis
generator tests, and associated-order freeness certificates."""

from .errors import (CapabilityError, ConsistencyError, DomainError,
                     FixtureValidationError, HopfGaloisError, StructureError,
                     TheoremViolationError)
from .perm import (CosetSpace, FiniteGroup, LambdaEmbedding, Permutation,
                   RegularSubgroup, build_coset_space, centralizer_bruteforce,
                   enumerate_regular_normalized, group_queries, is_normalized_by,
                   is_regular, left_translation_embedding, metacyclic_group,
                   opposite)
from .transition import (CosetVariableMatrix, IntPolynomial,
                         build_transition_matrix, canonical_det, det_symbolic,
                         verify_det_identity)
from .numberfield import (FieldElement, GaloisContext, NumberField, Subfield,
                          check_irreducible, fixed_subfield, load_field)
from .descent import (DescendedAlgebra, GroupAlgebraElement, MapAlgebraElement,
                      descend, embed_in_map_algebra, is_generator, is_separable,
                      verify_commuting, verify_hopf_galois)
from .integral import (AssociatedOrder, CertificateReport, FractionalIdeal,
                       FreenessResult, Lattice, associated_order,
                       freeness_certificate, freeness_search, transfer_element)

__version__ = "0.1.0"
