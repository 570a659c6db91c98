"""JSON documents for data, curves and command reports.

Exact rationals are written as "p/q" strings, Gaussian rationals as
["p/q", "p'/q'"] pairs and complex floats as [re, im] pairs of numbers.
"""

from __future__ import annotations

import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .adhm import ClassicalDatum, SymplecticDatum, SymplecticForm, validate
from .errors import InputError
from .linalg import DEFAULT_TOL, FieldKind, GaussianRational, PolyMat
from .linalg.scalars import format_rational

SCHEMA_VERSION = "1"


class DocumentError(InputError):
    """A JSON document is malformed or inconsistent."""


def scalar_to_json(x):
    if isinstance(x, GaussianRational):
        return [format_rational(x.re), format_rational(x.im)]
    if isinstance(x, (Fraction, int, np.integer)):
        return format_rational(Fraction(int(x)) if not isinstance(x, Fraction) else x)
    z = complex(x)
    return [z.real, z.imag]


def matrix_to_json(m) -> list:
    m = np.asarray(m)
    return [[scalar_to_json(x) for x in row] for row in m]


def _scalar_from_json(x, kind: FieldKind):
    if kind is FieldKind.COMPLEX:
        if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
            return complex(x[0], x[1])
        if isinstance(x, (int, float)) and not isinstance(x, bool):
            return complex(x)
        raise DocumentError(f"complex entries must be [re, im] numbers, got {x!r}")
    if kind is FieldKind.GAUSSIAN_RATIONAL:
        if isinstance(x, list) and len(x) == 2:
            return GaussianRational(_rational(x[0]), _rational(x[1]))
        return GaussianRational(_rational(x), 0)
    return _rational(x)


def _rational(x) -> Fraction:
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise DocumentError(f"not a rational: {x!r}") from None
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise DocumentError(f"exact entries must be 'p/q' strings or integers, got {x!r}")


def matrix_from_json(rows, kind: FieldKind, shape: tuple[int, int], name: str) -> np.ndarray:
    if not isinstance(rows, list) or any(not isinstance(row, list) for row in rows):
        raise DocumentError(f"{name} must be a list of rows")
    if len(rows) != shape[0] or any(len(row) != shape[1] for row in rows):
        raise DocumentError(f"{name} must have shape {shape}")
    dtype = complex if kind is FieldKind.COMPLEX else object
    out = np.empty(shape, dtype=dtype)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = _scalar_from_json(x, kind)
    return out


def datum_to_dict(d: SymplecticDatum, comment: str | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "n": d.n, "r": d.r, "field": d.field.value}
    for name, m in zip("ABIG", d.matrices()):
        doc[name] = matrix_to_json(m)
    doc["omega"] = "standard" if d.omega.standard else matrix_to_json(d.omega.matrix)
    if comment:
        doc["comment"] = comment
    return doc


def datum_from_dict(doc: dict, tol: float = DEFAULT_TOL, field: FieldKind | None = None) -> SymplecticDatum:
    """Parse and validate a datum document (raises DocumentError or EquationViolated)."""
    if not isinstance(doc, dict):
        raise DocumentError("a datum document must be a JSON object")
    missing = [key for key in ("n", "r", "field", "A", "B", "I", "G") if key not in doc]
    if missing:
        raise DocumentError(f"missing keys: {', '.join(missing)}")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {version!r}")
    n, r = doc["n"], doc["r"]
    if not (isinstance(n, int) and isinstance(r, int) and n >= 0 and r >= 0 and r % 2 == 0):
        raise DocumentError("n must be a count and r an even count")
    try:
        kind = FieldKind.parse(doc["field"])
    except ValueError:
        raise DocumentError(f"unknown field {doc['field']!r}") from None
    A = matrix_from_json(doc["A"], kind, (n, n), "A")
    B = matrix_from_json(doc["B"], kind, (n, n), "B")
    I = matrix_from_json(doc["I"], kind, (n, r), "I")
    G = matrix_from_json(doc["G"], kind, (n, n), "G")
    omega = doc.get("omega", "standard")
    if omega != "standard":
        omega = SymplecticForm.from_matrix(matrix_from_json(omega, kind, (r, r), "omega"), kind, tol)
    d = validate(A, B, I, G, omega, kind, tol)
    if field is not None and field is not kind:
        d = d.to_field(field)
    return d


def classical_to_dict(c: ClassicalDatum) -> dict:
    return {"schema_version": SCHEMA_VERSION, "n": c.n, "r": c.r, "field": c.field.value,
            "A": matrix_to_json(c.A), "B": matrix_to_json(c.B), "I": matrix_to_json(c.I),
            "J": matrix_to_json(c.J)}


def polymat_to_json(p: PolyMat) -> dict:
    """Coefficient matrices of t^0, t^1, ... (an empty list is the zero matrix of the given shape)."""
    return {"shape": list(p.shape), "coefficients": [matrix_to_json(c) for c in p.coeffs]}


def curve_to_dict(curve, certificate=None) -> dict:
    out = {"case": curve.case.value, "field": curve.field.value,
           "rotation": [scalar_to_json(Fraction(x)) for x in curve.rotation],
           "A_t": polymat_to_json(curve.A_t), "B_t": polymat_to_json(curve.B_t),
           "I_t": polymat_to_json(curve.I_t), "G_t": polymat_to_json(curve.G_t),
           "gauge_log": [matrix_to_json(g.g) for g in curve.gauge_log]}
    if certificate is not None:
        out["certificate"] = certificate.as_dict()
    return out


def load_json(path) -> dict:
    text = Path(path).read_text() if str(path) != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_datum(path, tol: float = DEFAULT_TOL, field: FieldKind | None = None) -> SymplecticDatum:
    return datum_from_dict(load_json(path), tol, field)


def format_document(doc: dict) -> str:
    """Readable JSON with one matrix row per line."""
    lines = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, list) and value and all(isinstance(row, list) for row in value):
            rows = ",\n    ".join(json.dumps(row) for row in value)
            lines.append(f'  "{key}": [\n    {rows}\n  ]')
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def save_datum(d: SymplecticDatum, path, comment: str | None = None) -> None:
    Path(path).write_text(format_document(datum_to_dict(d, comment)))


def canonical_digest(doc) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def make_report(command: str, results: dict, input_doc=None, seed=None, tol: float = DEFAULT_TOL,
                certificates=None) -> dict:
    """A deterministic report: identical inputs give identical bytes."""
    return {"command": command,
            "input_digest": canonical_digest(input_doc) if input_doc is not None else None,
            "seed": seed, "tol": tol, "results": results, "certificates": certificates or {}}


def _default(obj):
    if isinstance(obj, (Fraction, GaussianRational)):
        return scalar_to_json(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return matrix_to_json(obj) if obj.ndim == 2 else [_default(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, default=_default)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


__all__ = ["DocumentError", "SCHEMA_VERSION", "canonical_digest", "classical_to_dict", "curve_to_dict",
           "datum_from_dict", "datum_to_dict", "dumps", "format_document", "load_datum", "load_json", "make_report",
           "matrix_from_json", "matrix_to_json", "polymat_to_json", "save_datum", "scalar_to_json"]
