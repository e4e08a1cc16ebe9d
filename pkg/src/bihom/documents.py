"""JSON algebra and representation documents.

An algebra document looks like::

    {
      "dimension": 2,
      "parameters": ["c22_2", "d22_2", "a11", "b11"],
      "assumptions_nonzero": [],
      "kind": "poisson",
      "mu":      [[2, 2, 2, "c22_2"]],
      "bracket": [[1, 2, 2, "1"], [2, 2, 2, "d22_2"]],
      "alpha":   [["a11", "0"], ["0", "0"]],
      "beta":    [["b11", "0"], ["0", "0"]]
    }

Product entries are ``[i, j, k, expr]`` meaning ``e_k`` has coefficient
``expr`` in ``p(e_i, e_j)``; indices are 1-based and unlisted entries are zero.
Matrices are row-major, so column ``j`` holds the image of ``e_j``.
Superscripts and subscripts flatten as indices-then-superscript:
``c_{22}^{2}`` is written ``c22_2``.

A representation document adds ``module_dim``, ``rho_bracket`` and ``rho_mu``
(one ``module_dim x module_dim`` grid per basis element of the algebra),
``gamma`` and ``nu``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .errors import BiHomError, DimensionMismatch, DocumentError, KindMismatch
from .expr import parse_scalar, print_scalar
from .linalg import KINDS, BiHomAlgebra, BilinearMap, LinearMap
from .scalar import ZERO

PRODUCT_KEYS = ("mu", "bracket")


def _expr_text(value, path):
    if isinstance(value, bool):
        raise DocumentError(path, "expected an expression, got a boolean")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    raise DocumentError(path, f"expected an expression string, got {type(value).__name__}")


def _parse(value, params, path):
    text = _expr_text(value, path)
    try:
        return parse_scalar(text, params)
    except BiHomError as e:
        raise DocumentError(path, e) from e


def _grid(value, n, params, path, cols=None) -> LinearMap:
    cols = n if cols is None else cols
    if not isinstance(value, list) or len(value) != n:
        raise DimensionMismatch(f"{path}: expected {n} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise DimensionMismatch(f"{path}[{i}]: expected {cols} entries")
        rows.append(tuple(_parse(x, params, f"{path}[{i}][{j}]") for j, x in enumerate(row)))
    return LinearMap(tuple(rows))


def _tensor(entries, n, params, path) -> BilinearMap:
    if not isinstance(entries, list):
        raise DocumentError(path, "expected a list of [i, j, k, expr] entries")
    cells = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    seen = set()
    for pos, entry in enumerate(entries):
        epath = f"{path}[{pos}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise DocumentError(epath, "expected [i, j, k, expr]")
        i, j, k, expr = entry
        for idx in (i, j, k):
            if isinstance(idx, bool) or not isinstance(idx, int):
                raise DocumentError(epath, "indices must be integers")
            if not 1 <= idx <= n:
                raise DimensionMismatch(f"{epath}: index {idx} outside 1..{n}")
        if (i, j, k) in seen:
            raise DocumentError(epath, f"duplicate entry ({i},{j},{k})")
        seen.add((i, j, k))
        cells[i - 1][j - 1][k - 1] = _parse(expr, params, epath + "[3]")
    return BilinearMap(tuple(tuple(tuple(c) for c in row) for row in cells))


def _header(doc):
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    n = doc.get("dimension")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DimensionMismatch("dimension: must be a positive integer")
    params = doc.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise DocumentError("parameters", "expected a list of identifiers")
    assumptions = doc.get("assumptions_nonzero", [])
    if not isinstance(assumptions, list) or any(a not in params for a in assumptions):
        raise DocumentError("assumptions_nonzero", "must be a subset of parameters")
    kind = doc.get("kind", "poisson")
    if kind not in KINDS:
        raise KindMismatch(f"kind: unknown kind {kind!r}")
    return n, tuple(params), tuple(assumptions), kind


def load_algebra(doc: dict) -> BiHomAlgebra:
    """Build a BiHomAlgebra from a parsed JSON document."""
    n, params, assumptions, kind = _header(doc)
    wants = {
        "associative": {"mu"},
        "plain": {"mu"},
        "lie": {"bracket"},
        "poisson": {"mu", "bracket"},
    }[kind]
    products = {}
    for key in PRODUCT_KEYS:
        present = doc.get(key) is not None
        if present and key not in wants:
            raise KindMismatch(f"{key}: not allowed for kind {kind}")
        if not present and key in wants:
            raise KindMismatch(f"{key}: required for kind {kind}")
        if present:
            products[key] = _tensor(doc[key], n, params, key)
    for key in ("alpha", "beta"):
        if key not in doc:
            raise DocumentError(key, "missing twisting map")
    return BiHomAlgebra(
        dim=n,
        alpha=_grid(doc["alpha"], n, params, "alpha"),
        beta=_grid(doc["beta"], n, params, "beta"),
        mu=products.get("mu"),
        bracket=products.get("bracket"),
        kind=kind,
        parameters=params,
        assumptions_nonzero=assumptions,
    )


def _dump_tensor(B: BilinearMap):
    n = B.dim
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c = B.constants[i][j][k]
                if not c.is_zero():
                    out.append([i + 1, j + 1, k + 1, print_scalar(c)])
    return out


def dump_matrix(L: LinearMap):
    return [[print_scalar(x) for x in row] for row in L.entries]


def used_parameters(A: BiHomAlgebra) -> set:
    names = set()
    for L in (A.alpha, A.beta):
        for row in L.entries:
            for x in row:
                names.update(x.variables)
    for _, P in A.products():
        for row in P.constants:
            for cell in row:
                for x in cell:
                    names.update(x.variables)
    return names


def dump_algebra(A: BiHomAlgebra) -> dict:
    params = list(A.parameters)
    extra = sorted(used_parameters(A) - set(params))
    doc = {
        "dimension": A.dim,
        "parameters": params + extra,
        "assumptions_nonzero": list(A.assumptions_nonzero),
        "kind": A.kind,
    }
    if A.mu is not None:
        doc["mu"] = _dump_tensor(A.mu)
    if A.bracket is not None:
        doc["bracket"] = _dump_tensor(A.bracket)
    doc["alpha"] = dump_matrix(A.alpha)
    doc["beta"] = dump_matrix(A.beta)
    return doc


def parse_matrix(value, parameters, path="matrix") -> LinearMap:
    """A standalone square matrix given as a grid of expressions."""
    if isinstance(value, dict):
        parameters = tuple(value.get("parameters", parameters or ()))
        value = value.get("matrix")
    if not isinstance(value, list) or not value:
        raise DocumentError(path, "expected a non-empty grid")
    return _grid(value, len(value), parameters, path)


def load_representation(doc: dict):
    from .representations import Representation

    A = load_algebra(doc)
    params = A.parameters
    m = doc.get("module_dim")
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise DimensionMismatch("module_dim: must be a positive integer")

    def family(key, needed):
        value = doc.get(key)
        if value is None:
            if needed:
                raise KindMismatch(f"{key}: required by the algebra's products")
            return None
        if not needed:
            raise KindMismatch(f"{key}: algebra has no matching product")
        if not isinstance(value, list) or len(value) != A.dim:
            raise DimensionMismatch(f"{key}: expected one matrix per basis element ({A.dim})")
        return tuple(_grid(g, m, params, f"{key}[{i}]") for i, g in enumerate(value))

    return Representation(
        algebra=A,
        module_dim=m,
        rho_bracket=family("rho_bracket", A.bracket is not None),
        rho_mu=family("rho_mu", A.mu is not None),
        gamma=_grid(doc.get("gamma"), m, params, "gamma"),
        nu=_grid(doc.get("nu"), m, params, "nu"),
    )


def dump_representation(R) -> dict:
    doc = dump_algebra(R.algebra)
    doc["module_dim"] = R.module_dim
    if R.rho_bracket is not None:
        doc["rho_bracket"] = [dump_matrix(L) for L in R.rho_bracket]
    if R.rho_mu is not None:
        doc["rho_mu"] = [dump_matrix(L) for L in R.rho_mu]
    doc["gamma"] = dump_matrix(R.gamma)
    doc["nu"] = dump_matrix(R.nu)
    return doc


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_algebra_file(path) -> BiHomAlgebra:
    return load_algebra(read_json(path))


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def algebra_from_json(text: str) -> BiHomAlgebra:
    return load_algebra(json.loads(text))


def dump_algebra_json(A: BiHomAlgebra, *, indent: Optional[int] = 2) -> str:
    return json.dumps(dump_algebra(A), indent=indent)
