"""Gassmann triples, transplantation of invariants and coinvariants, and
exact lattice and spectral certificates for quotients of free G-complexes."""
from .errors import (
    BadComplexStructure, BoundExceeded, ClosureBoundExceeded, DegreeMismatch, GassmannError, InputError,
    NotASubgroup, NotBalanced, NotEquivalent, NotFree, NotInvariant, OrderMismatch, RankMismatch,
    SearchExhausted, Singular, SizeBound,
)
from .perm import Permutation
from .groups import (
    CosetSpace, FiniteGroup, Subgroup, conjugacy_class_representatives, conjugacy_classes,
    coset_action_matrix, enumerate_group, right_cosets, subgroups,
)
from .equivalence import (
    ClassIntersectionProfile, almost_conjugate, cayley_gassmann_check, class_profile, conjugate_subgroups,
    permutation_character, representation_equivalent,
)
from .transplant import (
    Coinvariants, GModule, TransplantationPair, clear_denominators, find_invertible_intertwiner,
    intertwiner_space, transplant_coinvariants, transplant_invariants, transplantation_pair,
)
from .complex import GComplex, HomologyGroup, QuotientComplex, homology, join_complex, quotient, transplant_chains, transplant_homology
from .isogeny import (
    INFINITE, ComplexTorusData, IntegerMatrixMap, IsogenyCertificate, lattice_isogeny_check,
    smith_normal_form, torus_isogeny_check,
)
from .spectra import CharPoly, LaplacianOperator, certify_isospectral, char_poly, quotient_laplacian
from ._kernels import BACKEND

__version__ = "0.1.0"
