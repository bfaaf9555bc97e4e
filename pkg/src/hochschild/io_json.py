"""JSON file formats for algebras, bimodules, cochains and extensions.

Scalars travel as decimal strings ("3", "-1/2"), never floats, so files are
exact end-to-end.  Serialization is canonical (two-space indent, one
trailing newline): the bundled fixtures re-serialize byte-identically.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import (
    Bimodule,
    FiniteAlgebra,
    validate_algebra,
    validate_bimodule,
)
from .extensions import ExtensionPresentation, TwoCochain, crossed_product_presentation, validate_extension
from .koszul import PresentedModule, free_module, presented_module
from .matrix import Matrix
from .rings import GF, QQ, ZZ, ScalarRing


class SchemaError(ValueError):
    """A file failed schema validation; carries the stage and a witness."""

    def __init__(self, stage: str, witness: str):
        self.stage = stage
        self.witness = witness
        super().__init__(f"{stage}: {witness}")


def ring_to_json(ring: ScalarRing):
    if ring.kind == "Fp":
        return {"Fp": ring.p}
    return ring.kind


def ring_from_json(doc) -> ScalarRing:
    if doc == "Z":
        return ZZ
    if doc == "Q":
        return QQ
    if isinstance(doc, dict) and set(doc) == {"Fp"}:
        try:
            return GF(int(doc["Fp"]))
        except ValueError as exc:
            raise SchemaError("scalars", str(exc)) from None
    raise SchemaError("scalars", f"unrecognized scalar ring {doc!r}")


def _parse_scalar(ring: ScalarRing, s, where: str):
    if not isinstance(s, str):
        raise SchemaError(where, f"scalar {s!r} must be a decimal string")
    try:
        return ring.parse(s)
    except ValueError as exc:
        raise SchemaError(where, str(exc)) from None


def _matrix_from_json(ring: ScalarRing, doc, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(doc, list) or len(doc) != rows or any(len(r) != cols for r in doc):
        raise SchemaError(where, f"expected a {rows}x{cols} nested list of strings")
    return Matrix.from_rows(ring, [[_parse_scalar(ring, x, where) for x in r] for r in doc])


def _matrix_to_json(M: Matrix):
    return [[M.ring.format(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


# -- algebras -----------------------------------------------------------------


def algebra_to_json(A: FiniteAlgebra) -> dict:
    return {
        "scalars": ring_to_json(A.ring),
        "rank": A.rank,
        "basis": list(A.basis_names),
        "unit": [A.ring.format(u) for u in A.unit],
        "mul": [A.ring.format(c) for c in A.mul],
    }


def algebra_from_json(doc) -> FiniteAlgebra:
    if not isinstance(doc, dict):
        raise SchemaError("algebra", "expected an object")
    missing = {"scalars", "rank", "basis", "unit", "mul"} - set(doc)
    if missing:
        raise SchemaError("algebra", f"missing fields {sorted(missing)}")
    ring = ring_from_json(doc["scalars"])
    d = doc["rank"]
    if not isinstance(d, int) or d < 1:
        raise SchemaError("algebra", "rank must be a positive integer")
    if len(doc["basis"]) != d:
        raise SchemaError("algebra", f"expected {d} basis names")
    if len(doc["unit"]) != d:
        raise SchemaError("algebra", f"expected {d} unit coordinates")
    if len(doc["mul"]) != d**3:
        raise SchemaError("algebra", f"expected {d ** 3} structure constants (flat, row-major)")
    unit = [_parse_scalar(ring, u, "algebra.unit") for u in doc["unit"]]
    mul = [_parse_scalar(ring, c, "algebra.mul") for c in doc["mul"]]
    try:
        return validate_algebra(ring, d, doc["basis"], unit, mul)
    except ValueError as exc:
        raise SchemaError("algebra.validate", str(exc)) from None


# -- bimodules ----------------------------------------------------------------


def bimodule_to_json(M: Bimodule, algebra_ref: str | None = None) -> dict:
    return {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(M.algebra),
        "rank": M.rank,
        "left": [_matrix_to_json(L) for L in M.left],
        "right": [_matrix_to_json(R) for R in M.right],
    }


def _resolve_algebra(doc, base_dir: Path | None) -> FiniteAlgebra:
    if isinstance(doc, str):
        path = Path(doc)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return load_algebra(path)
    return algebra_from_json(doc)


def bimodule_from_json(doc, base_dir: Path | None = None) -> Bimodule:
    if not isinstance(doc, dict):
        raise SchemaError("bimodule", "expected an object")
    missing = {"algebra", "rank", "left", "right"} - set(doc)
    if missing:
        raise SchemaError("bimodule", f"missing fields {sorted(missing)}")
    A = _resolve_algebra(doc["algebra"], base_dir)
    m = doc["rank"]
    if not isinstance(m, int) or m < 0:
        raise SchemaError("bimodule", "rank must be a nonnegative integer")
    if len(doc["left"]) != A.rank or len(doc["right"]) != A.rank:
        raise SchemaError("bimodule", f"expected {A.rank} left and right action matrices")
    left = [_matrix_from_json(A.ring, L, m, m, "bimodule.left") for L in doc["left"]]
    right = [_matrix_from_json(A.ring, R, m, m, "bimodule.right") for R in doc["right"]]
    try:
        return validate_bimodule(A, m, left, right)
    except ValueError as exc:
        raise SchemaError("bimodule.validate", str(exc)) from None


# -- presented modules (Koszul coefficients) -----------------------------------


def presented_module_to_json(M: PresentedModule, algebra_ref: str | None = None) -> dict:
    return {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(M.algebra),
        "generators": M.generators,
        "relations": _matrix_to_json(M.relations),
        "action": [_matrix_to_json(T) for T in M.action],
    }


def presented_module_from_json(doc, base_dir: Path | None = None) -> PresentedModule:
    if not isinstance(doc, dict):
        raise SchemaError("module", "expected an object")
    A = _resolve_algebra(doc.get("algebra"), base_dir)
    if doc.get("self", False) or "generators" not in doc:
        return free_module(A)
    g = doc["generators"]
    rel_doc = doc.get("relations", [])
    ncols = len(rel_doc[0]) if rel_doc else 0
    relations = _matrix_from_json(A.ring, rel_doc, g, ncols, "module.relations") if rel_doc else Matrix.zeros(A.ring, g, 0)
    action = [_matrix_from_json(A.ring, T, g, g, "module.action") for T in doc.get("action", [])]
    if len(action) != A.rank:
        raise SchemaError("module", f"expected {A.rank} action matrices")
    try:
        return presented_module(A, g, relations, action)
    except ValueError as exc:
        raise SchemaError("module.validate", str(exc)) from None


# -- cochains and extensions ----------------------------------------------------


def cochain_to_json(B: TwoCochain, algebra_ref=None, bimodule_ref=None) -> dict:
    return {
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_json(B.algebra),
        "bimodule": bimodule_ref if bimodule_ref is not None else bimodule_to_json(B.bimodule),
        "matrix": _matrix_to_json(B.matrix),
    }


def _resolve_bimodule(doc, base_dir: Path | None) -> Bimodule:
    if isinstance(doc, str):
        path = Path(doc)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        return load_bimodule(path)
    return bimodule_from_json(doc, base_dir)


def cochain_from_json(doc, base_dir: Path | None = None) -> TwoCochain:
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise SchemaError("cochain", "expected an object with a matrix field")
    A = _resolve_algebra(doc.get("algebra"), base_dir)
    M = _resolve_bimodule(doc.get("bimodule"), base_dir)
    mat = _matrix_from_json(A.ring, doc["matrix"], M.rank, A.rank**2, "cochain.matrix")
    return TwoCochain(A, M, mat)


def extension_to_json(E: ExtensionPresentation, cocycle: TwoCochain | None = None, **refs) -> dict:
    if cocycle is not None:
        return {
            "algebra": refs.get("algebra_ref") or algebra_to_json(E.algebra),
            "bimodule": refs.get("bimodule_ref") or bimodule_to_json(E.bimodule),
            "cocycle": _matrix_to_json(cocycle.matrix),
        }
    return {
        "algebra": refs.get("algebra_ref") or algebra_to_json(E.algebra),
        "bimodule": refs.get("bimodule_ref") or bimodule_to_json(E.bimodule),
        "total": algebra_to_json(E.total),
        "projection": _matrix_to_json(E.projection),
        "inclusion": _matrix_to_json(E.inclusion),
        "section": _matrix_to_json(E.section),
    }


def extension_from_json(doc, base_dir: Path | None = None) -> ExtensionPresentation:
    if not isinstance(doc, dict):
        raise SchemaError("extension", "expected an object")
    A = _resolve_algebra(doc.get("algebra"), base_dir)
    M = _resolve_bimodule(doc.get("bimodule"), base_dir)
    if "cocycle" in doc:
        mat = _matrix_from_json(A.ring, doc["cocycle"], M.rank, A.rank**2, "extension.cocycle")
        try:
            return crossed_product_presentation(A, M, TwoCochain(A, M, mat))
        except ValueError as exc:
            raise SchemaError("extension.validate", str(exc)) from None
    missing = {"total", "projection", "inclusion", "section"} - set(doc)
    if missing:
        raise SchemaError("extension", f"missing fields {sorted(missing)}")
    total = algebra_from_json(doc["total"])
    d, m = A.rank, M.rank
    proj = _matrix_from_json(A.ring, doc["projection"], d, d + m, "extension.projection")
    incl = _matrix_from_json(A.ring, doc["inclusion"], d + m, m, "extension.inclusion")
    sect = _matrix_from_json(A.ring, doc["section"], d + m, d, "extension.section")
    try:
        return validate_extension(ExtensionPresentation(A, M, total, proj, incl, sect))
    except ValueError as exc:
        raise SchemaError("extension.validate", str(exc)) from None


# -- file helpers ----------------------------------------------------------------


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def save(doc, path) -> None:
    Path(path).write_text(dumps(doc))


def _load_doc(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise SchemaError("file", f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError("file", f"invalid JSON in {path}: {exc}") from None


def load_algebra(path) -> FiniteAlgebra:
    return algebra_from_json(_load_doc(path))


def load_bimodule(path) -> Bimodule:
    return bimodule_from_json(_load_doc(path), base_dir=Path(path).parent)


def load_presented_module(path) -> PresentedModule:
    return presented_module_from_json(_load_doc(path), base_dir=Path(path).parent)


def load_cochain(path) -> TwoCochain:
    return cochain_from_json(_load_doc(path), base_dir=Path(path).parent)


def load_extension(path) -> ExtensionPresentation:
    return extension_from_json(_load_doc(path), base_dir=Path(path).parent)
