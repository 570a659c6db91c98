"""Field-generic dense linear algebra and polynomial-matrix arithmetic."""

from .congruence import Congruence, symmetric_congruence, symmetric_factor, verify_congruence
from .elimination import determinant, nullspace, rank, rank_margin, rref, solve_linear
from .matrices import (DEFAULT_TOL, as_matrix, block_diag, commutator, convert, diag, equal, field_of,
                       identity, inverse, is_symmetric, is_zero, max_abs, to_complex, zeros)
from .polymat import PolyMat, poly_block, scalar_poly_det
from .scalars import FieldKind, GaussianRational
from .spectrum import joint_spectrum, multiset_close
from .structure import (charpoly, commutant, commutant_matrices, is_nonderogatory, polynomial_in, resultant,
                        spectra_disjoint, sylvester_solve)
from .subspace import Subspace, column_space, intersection, kernel_basis, krylov_closure

__all__ = [
    "Congruence", "DEFAULT_TOL", "FieldKind", "GaussianRational", "PolyMat", "Subspace",
    "as_matrix", "block_diag", "charpoly", "column_space", "commutant", "commutant_matrices",
    "commutator", "convert", "determinant", "diag", "equal", "field_of", "identity", "intersection",
    "inverse", "is_nonderogatory", "is_symmetric", "is_zero", "joint_spectrum", "kernel_basis",
    "krylov_closure", "max_abs", "multiset_close", "nullspace", "poly_block", "polynomial_in", "rank",
    "rank_margin", "resultant", "rref", "scalar_poly_det", "solve_linear", "spectra_disjoint",
    "symmetric_congruence", "symmetric_factor", "sylvester_solve", "to_complex", "verify_congruence",
    "zeros",
]
