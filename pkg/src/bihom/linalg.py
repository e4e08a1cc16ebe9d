"""Linear and bilinear maps over the Scalar field, and the BiHomAlgebra value.

Vectors are plain tuples of :class:`~bihom.scalar.Scalar`.  Matrices are stored
row-major, so column ``j`` of a :class:`LinearMap` is the image of ``e_j``.
Structure constants follow ``c[i][j][k]`` = coefficient of ``e_k`` in
``p(e_i, e_j)``.  Indices are 0-based internally.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import DimensionMismatch, KindMismatch, Singular
from .scalar import ONE, ZERO, Scalar

Vector = Tuple[Scalar, ...]

KINDS = ("associative", "lie", "poisson", "plain")


def _sc(v) -> Scalar:
    return v if isinstance(v, Scalar) else Scalar.coerce(v)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(v: Vector, w: Vector) -> Vector:
    return tuple(a + b for a, b in zip(v, w))


def vec_sub(v: Vector, w: Vector) -> Vector:
    return tuple(a - b for a, b in zip(v, w))


def vec_scale(c: Scalar, v: Vector) -> Vector:
    if c.is_zero():
        return (ZERO,) * len(v)
    return tuple(c * a for a in v)


def vec_is_zero(v: Vector) -> bool:
    return all(a.is_zero() for a in v)


@dataclass(frozen=True)
class LinearMap:
    entries: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_sc(x) for x in row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def dim(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} map is not square")
        return self.rows

    def is_square(self) -> bool:
        return self.rows == self.cols

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(tuple(basis_vector(n, i) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "LinearMap":
        return cls(tuple((ZERO,) * (rows if cols is None else cols) for _ in range(rows)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "LinearMap":
        n = len(values)
        return cls(tuple(tuple(_sc(values[i]) if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Vector]) -> "LinearMap":
        n = len(columns[0]) if columns else 0
        return cls(tuple(tuple(col[i] for col in columns) for i in range(n)))

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def is_diagonal(self) -> bool:
        return all(x.is_zero() for i, row in enumerate(self.entries) for j, x in enumerate(row) if i != j)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return compose_linear(self, other)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        _same_shape(self, other)
        return LinearMap(tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        _same_shape(self, other)
        return LinearMap(tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)))

    def scaled(self, c) -> "LinearMap":
        c = _sc(c)
        return LinearMap(tuple(vec_scale(c, row) for row in self.entries))

    def transpose(self) -> "LinearMap":
        return LinearMap(tuple(self.column(j) for j in range(self.cols)))


def _same_shape(a: LinearMap, b: LinearMap):
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatch(f"shapes {a.rows}x{a.cols} and {b.rows}x{b.cols} differ")


@dataclass(frozen=True)
class BilinearMap:
    constants: Tuple[Tuple[Tuple[Scalar, ...], ...], ...]

    def __post_init__(self):
        c = tuple(tuple(tuple(_sc(x) for x in cell) for cell in row) for row in self.constants)
        n = len(c)
        for row in c:
            if len(row) != n or any(len(cell) != n for cell in row):
                raise DimensionMismatch("structure-constant tensor must be n x n x n")
        object.__setattr__(self, "constants", c)

    @property
    def dim(self) -> int:
        return len(self.constants)

    def product(self, i: int, j: int) -> Vector:
        return self.constants[i][j]

    @classmethod
    def zero(cls, n: int) -> "BilinearMap":
        return cls(tuple(tuple((ZERO,) * n for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_products(cls, n: int, table) -> "BilinearMap":
        """Build from ``table[(i, j)] = vector`` (0-based); missing pairs are zero."""
        z = (ZERO,) * n
        return cls(tuple(tuple(tuple(table.get((i, j), z)) for j in range(n)) for i in range(n)))

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.constants for cell in row for x in cell)

    def __add__(self, other: "BilinearMap") -> "BilinearMap":
        if self.dim != other.dim:
            raise DimensionMismatch("tensor dimensions differ")
        return BilinearMap(tuple(
            tuple(vec_add(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.constants, other.constants)
        ))

    def scaled(self, c) -> "BilinearMap":
        c = _sc(c)
        return BilinearMap(tuple(tuple(vec_scale(c, cell) for cell in row) for row in self.constants))


def apply_linear(L: LinearMap, v: Vector) -> Vector:
    if L.cols != len(v):
        raise DimensionMismatch(f"map with {L.cols} columns applied to vector of length {len(v)}")
    out = [ZERO] * L.rows
    for j, x in enumerate(v):
        if x.is_zero():
            continue
        for i in range(L.rows):
            a = L.entries[i][j]
            if not a.is_zero():
                out[i] = out[i] + a * x
    return tuple(out)


def apply_bilinear(B: BilinearMap, v: Vector, w: Vector) -> Vector:
    n = B.dim
    if len(v) != n or len(w) != n:
        raise DimensionMismatch(f"bilinear map of dimension {n} applied to vectors of length {len(v)}, {len(w)}")
    out = [ZERO] * n
    for i, x in enumerate(v):
        if x.is_zero():
            continue
        row = B.constants[i]
        for j, y in enumerate(w):
            if y.is_zero():
                continue
            cell = row[j]
            xy = None
            for k, c in enumerate(cell):
                if c.is_zero():
                    continue
                if xy is None:
                    xy = x * y
                out[k] = out[k] + c * xy
    return tuple(out)


def compose_linear(L1: LinearMap, L2: LinearMap) -> LinearMap:
    """Matrix product ``L1 . L2`` (apply L2 first)."""
    if L1.cols != L2.rows:
        raise DimensionMismatch(f"cannot compose {L1.rows}x{L1.cols} with {L2.rows}x{L2.cols}")
    cols = [apply_linear(L1, L2.column(j)) for j in range(L2.cols)]
    return LinearMap.from_columns(cols) if cols else LinearMap(tuple(() for _ in range(L1.rows)))


def determinant(L: LinearMap) -> Scalar:
    n = L.dim
    return _det(L.entries, tuple(range(n)), tuple(range(n)), {})


def _det(m, rows, cols, memo) -> Scalar:
    # Laplace expansion along the first remaining row, memoised on the column set
    if not rows:
        return ONE
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    r = rows[0]
    total = ZERO
    for idx, c in enumerate(cols):
        a = m[r][c]
        if a.is_zero():
            continue
        minor = _det(m, rows[1:], cols[:idx] + cols[idx + 1:], memo)
        term = a * minor
        total = total - term if idx % 2 else total + term
    memo[key] = total
    return total


def invert_linear(L: LinearMap, assumptions=()) -> LinearMap:
    """Inverse via adjugate / determinant over the fraction field.

    A determinant that is a nonzero rational function is accepted even if it
    vanishes at particular parameter values; ``assumptions`` is informational.
    """
    n = L.dim
    det = determinant(L)
    if det.is_zero():
        raise Singular("determinant is the zero scalar")
    if L.is_diagonal():
        return LinearMap.diagonal([ONE / L.entries[i][i] for i in range(n)])
    memo: dict = {}
    rows = tuple(range(n))
    inv = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = _det(L.entries, rows[:j] + rows[j + 1:], rows[:i] + rows[i + 1:], memo)
            cof = minor if (i + j) % 2 == 0 else -minor
            inv[i][j] = cof / det
    return LinearMap(tuple(tuple(r) for r in inv))


def power(L: LinearMap, k: int) -> LinearMap:
    out = LinearMap.identity(L.dim)
    for _ in range(k):
        out = compose_linear(L, out)
    return out


def direct_sum_maps(L1: LinearMap, L2: LinearMap) -> LinearMap:
    n1, n2 = L1.dim, L2.dim
    rows = [tuple(L1.entries[i]) + (ZERO,) * n2 for i in range(n1)]
    rows += [(ZERO,) * n1 + tuple(L2.entries[i]) for i in range(n2)]
    return LinearMap(tuple(rows))


def kronecker(L1: LinearMap, L2: LinearMap) -> LinearMap:
    """Kronecker product with row-major basis ordering (L1 index major)."""
    n1, n2 = L1.dim, L2.dim
    rows = []
    for i in range(n1):
        for j in range(n2):
            rows.append(tuple(L1.entries[i][k] * L2.entries[j][l] for k in range(n1) for l in range(n2)))
    return LinearMap(tuple(rows))


@dataclass(frozen=True)
class BiHomAlgebra:
    """Finite-dimensional algebra with up to two products and twisting maps."""

    dim: int
    alpha: LinearMap
    beta: LinearMap
    mu: Optional[BilinearMap] = None
    bracket: Optional[BilinearMap] = None
    kind: str = "poisson"
    parameters: Tuple[str, ...] = ()
    assumptions_nonzero: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindMismatch(f"unknown kind {self.kind!r}")
        if self.dim < 1:
            raise DimensionMismatch("dimension must be positive")
        if self.kind in ("associative", "poisson", "plain") and self.mu is None:
            raise KindMismatch(f"kind {self.kind} requires mu")
        if self.kind in ("lie", "poisson") and self.bracket is None:
            raise KindMismatch(f"kind {self.kind} requires a bracket")
        if self.kind == "lie" and self.mu is not None:
            raise KindMismatch("kind lie must not carry mu")
        if self.kind in ("associative", "plain") and self.bracket is not None:
            raise KindMismatch(f"kind {self.kind} must not carry a bracket")
        for name in ("alpha", "beta"):
            m = getattr(self, name)
            if not m.is_square() or m.rows != self.dim:
                raise DimensionMismatch(f"{name} is {m.rows}x{m.cols}, expected {self.dim}x{self.dim}")
        for name in ("mu", "bracket"):
            p = getattr(self, name)
            if p is not None and p.dim != self.dim:
                raise DimensionMismatch(f"{name} has dimension {p.dim}, expected {self.dim}")
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "assumptions_nonzero", tuple(self.assumptions_nonzero))

    def replace(self, **changes) -> "BiHomAlgebra":
        return dataclasses.replace(self, **changes)

    def products(self):
        """Present products as ``(name, tensor)`` pairs, mu first."""
        out = []
        if self.mu is not None:
            out.append(("mu", self.mu))
        if self.bracket is not None:
            out.append(("bracket", self.bracket))
        return out


def is_regular(A: BiHomAlgebra) -> bool:
    return not determinant(A.alpha).is_zero() and not determinant(A.beta).is_zero()
