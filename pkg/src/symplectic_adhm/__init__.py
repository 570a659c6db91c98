"""Symplectic ADHM data on the projective plane: exact validation, stability, tangent spaces,
deformation curves, monads and the Uhlenbeck projection."""

from importlib import resources

from .adhm import (ClassicalDatum, GaugeElement, SymplecticDatum, SymplecticForm, act, iota, is_costable,
                   is_stable, orbit_equivalent, random_datum, random_gauge, stratum, validate)
from .deform import DeformationCurve, deform_general, validate_curve
from .errors import AdhmError, InputError, PipelineError
from .io import datum_from_dict, datum_to_dict, load_datum
from .linalg import FieldKind
from .monad import build_monad, check_complex, check_lift, fiber, scan_singular
from .tangent import is_smooth_point, tangent_report
from .uhlenbeck import UhlenbeckPoint, XDatum, embed_tau, extract_double_dual, project

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path of a shipped example datum (e.g. ``"n2_r4_isotropic.json"``)."""
    return resources.files(__package__).joinpath("fixtures", name)


__all__ = [
    "AdhmError", "ClassicalDatum", "DeformationCurve", "FieldKind", "GaugeElement", "InputError",
    "PipelineError", "SymplecticDatum", "SymplecticForm", "UhlenbeckPoint", "XDatum", "act", "build_monad",
    "check_complex", "check_lift", "datum_from_dict", "datum_to_dict", "deform_general", "embed_tau",
    "extract_double_dual", "fiber", "fixture_path", "iota", "is_costable", "is_smooth_point", "is_stable",
    "load_datum", "orbit_equivalent", "project", "random_datum", "random_gauge", "scan_singular", "stratum",
    "tangent_report", "validate", "validate_curve",
]
