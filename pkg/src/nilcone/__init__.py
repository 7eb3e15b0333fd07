"""Exact semi-invariants, generic normal forms, and quotient maps for the
conjugation of triangular and block-triangular groups on nilpotent matrices.
"""

from .errors import (AcceptabilityError, ConsistencyError, GenericityError,
                     NilconeError, NotConjugateError, NotSumFreeError,
                     NotToricError, PatternError, ScaleError, ShapeError,
                     SingularMatrixError, UnsupportedMorphismError)
from .groups import (Character, ParabolicShape, char_eval, conjugate,
                     is_in_borel, is_in_parabolic, is_in_unipotent,
                     is_nilpotent, random_element, random_generic_nilpotent,
                     random_nilpotent)
from .linalg import (Matrix, Polynomial, Rational, corner_submatrix, det,
                     mat_mul, mat_pow, poly_eval_matrix, rational,
                     solve_homogeneous)
from .normalform import (ConjugacyCertificate, PatternSpec, conjugacy_witness,
                         genericity_minors, is_generic, normal_form_B,
                         normal_form_P, normal_form_U, pattern,
                         random_pattern_matrix)
from .quiver import (MorphismDatum, QuiverShape, Representation, build_MN,
                     datum_from_morphism, eval_f_phi, random_morphism)
from .quotients import (QuotientReport, g_invariant, git_map_n3,
                        git_semistable, nonsurjectivity_relation,
                        separation_check_U, toric_f, u_coordinates,
                        u_quotient_n2, u_quotient_n3, verify_relations)
from .semiinv import (SemiInvariantDatum, WeightedInvariant, block_matrix,
                      det_k, evaluate, extraction_character, f_ij, g_ij,
                      invariants_n3, random_datum, stack, verify_semiinvariance,
                      weight_of)
from .toric import (BlockPair, ToricCone, ToricExponent, acceptable_permutation,
                    cone_contains, cones_equal, dual_cone, enumerate_sum_free,
                    eval_via_permutation, is_acceptable_entry, is_sum_free,
                    semigroup_generators, sum_free_datum, toric_cone,
                    toric_exponents, toric_exponents_oracle, toric_part)

__all__ = [name for name in dir() if not name.startswith("_")]
