"""Deformations of symplectic data into the locus where G is invertible."""

from .curves import (Certification, CurveCase, CurveCertificate, DeformationCurve, ResidualCheck,
                     curve_residuals, deform_corank_one, deform_g_zero, deform_general, validate_curve)
from .tools import (ReachabilityWitness, Symmetrization, curve_from_reachability, find_nonderogatory_commuting,
                    invertible_symmetric_intertwiner, reachability_decompose, reachability_residual,
                    solve_bracket_symmetric, symmetric_intertwiners, symmetrize_pair)

__all__ = [
    "Certification", "CurveCase", "CurveCertificate", "DeformationCurve", "ReachabilityWitness",
    "ResidualCheck", "Symmetrization", "curve_from_reachability", "curve_residuals", "deform_corank_one",
    "deform_g_zero", "deform_general", "find_nonderogatory_commuting", "invertible_symmetric_intertwiner",
    "reachability_decompose", "reachability_residual", "solve_bracket_symmetric", "symmetric_intertwiners",
    "symmetrize_pair", "validate_curve",
]
