"""Symbolic checks of the BiHom identities on basis tuples.

Every identity in scope is multilinear, so it holds on all of A exactly when
its residual vanishes on every tuple of basis vectors.  Each check walks the
tuples in lexicographic order and reports the first one with a nonzero
residual.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Optional

from .errors import DimensionMismatch, KindMismatch
from .linalg import (
    BiHomAlgebra,
    BilinearMap,
    LinearMap,
    Vector,
    apply_bilinear,
    apply_linear,
    basis_vector,
    compose_linear,
    invert_linear,
    is_regular,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    zero_vector,
)
from .report import CheckResult, Report
from .scalar import Scalar

THIRD = Scalar.from_rational(Fraction(1, 3))

POISSON_CHECKS = (
    "commuting_maps",
    "multiplicativity",
    "bihom_associativity",
    "bihom_commutativity",
    "bihom_skew_symmetry",
    "bihom_jacobi",
    "bihom_leibniz",
)


class _Maps:
    """Cached powers/compositions of alpha and beta and their basis images."""

    def __init__(self, A: BiHomAlgebra):
        self.A = A
        self.n = A.dim
        self._maps = {"a": A.alpha, "b": A.beta}
        self._cols = {}

    def map(self, word: str) -> LinearMap:
        # word over {a, b, A, B}; A, B denote inverses; applied right-to-left
        m = self._maps.get(word)
        if m is None:
            if word in ("A", "B"):
                m = invert_linear(self.map(word.lower()))
            else:
                m = compose_linear(self.map(word[0]), self.map(word[1:]))
            self._maps[word] = m
        return m

    def col(self, word: str, i: int) -> Vector:
        key = (word, i)
        v = self._cols.get(key)
        if v is None:
            v = self.map(word).column(i)
            self._cols[key] = v
        return v

    def apply(self, word: str, v: Vector) -> Vector:
        return apply_linear(self.map(word), v)


def _mul(B: BilinearMap) -> Callable[[Vector, Vector], Vector]:
    return lambda v, w: apply_bilinear(B, v, w)


def _scan(name: str, arity: int, n: int, residual, **extra) -> CheckResult:
    for idx in cartesian(range(n), repeat=arity):
        r = residual(*idx)
        if r is None:
            continue
        detail = None
        if isinstance(r, tuple) and len(r) == 2 and isinstance(r[0], str):
            detail, r = r
        if not vec_is_zero(r):
            return CheckResult(name, False, tuple(i + 1 for i in idx), tuple(r), detail=detail, **extra)
    return CheckResult(name, True, **extra)


def _single(result: CheckResult, subject=None) -> Report:
    return Report([result], subject=subject)


# -- individual identities ----------------------------------------------------


def _commuting(A: BiHomAlgebra) -> CheckResult:
    ab = compose_linear(A.alpha, A.beta)
    ba = compose_linear(A.beta, A.alpha)
    n = A.dim
    for i in range(n):
        for j in range(n):
            if not (ab.entries[i][j] - ba.entries[i][j]).is_zero():
                col = vec_sub(ab.column(j), ba.column(j))
                return CheckResult("commuting_maps", False, (i + 1, j + 1), col, witness_kind="entry")
    return CheckResult("commuting_maps", True)


def check_commuting_maps(A: BiHomAlgebra) -> Report:
    """alpha.beta = beta.alpha; a FAIL witness is the first differing matrix entry."""
    return _single(_commuting(A))


def _multiplicativity(A: BiHomAlgebra, M: Optional[_Maps] = None) -> CheckResult:
    M = M or _Maps(A)
    conds = []
    for pname, P in A.products():
        for mname, word in (("alpha", "a"), ("beta", "b")):
            conds.append((f"{mname}, {pname}", _mul(P), P, word))

    def residual(i, j):
        for detail, p, P, word in conds:
            r = vec_sub(M.apply(word, P.product(i, j)), p(M.col(word, i), M.col(word, j)))
            if not vec_is_zero(r):
                return detail, r
        return None

    return _scan("multiplicativity", 2, A.dim, residual)


def check_multiplicativity(A: BiHomAlgebra) -> Report:
    return _single(_multiplicativity(A))


def _require(A: BiHomAlgebra, mu=False, bracket=False):
    if mu and A.mu is None:
        raise KindMismatch("algebra has no product mu")
    if bracket and A.bracket is None:
        raise KindMismatch("algebra has no bracket")


def _associativity(A: BiHomAlgebra, M: Optional[_Maps] = None) -> CheckResult:
    _require(A, mu=True)
    M = M or _Maps(A)
    mu = _mul(A.mu)

    def residual(i, j, k):
        left = mu(M.col("a", i), A.mu.product(j, k))
        right = mu(A.mu.product(i, j), M.col("b", k))
        return vec_sub(left, right)

    return _scan("bihom_associativity", 3, A.dim, residual)


def check_bihom_associativity(A: BiHomAlgebra) -> Report:
    return _single(_associativity(A))


def _commutativity(A: BiHomAlgebra, M: Optional[_Maps] = None, informational=False) -> CheckResult:
    _require(A, mu=True)
    M = M or _Maps(A)
    mu = _mul(A.mu)

    def residual(i, j):
        return vec_sub(mu(M.col("b", i), M.col("a", j)), mu(M.col("b", j), M.col("a", i)))

    return _scan("bihom_commutativity", 2, A.dim, residual, informational=informational)


def check_bihom_commutativity(A: BiHomAlgebra) -> Report:
    return _single(_commutativity(A))


def _skew(A: BiHomAlgebra, M: Optional[_Maps] = None) -> CheckResult:
    _require(A, bracket=True)
    M = M or _Maps(A)
    br = _mul(A.bracket)

    def residual(i, j):
        return vec_add(br(M.col("b", i), M.col("a", j)), br(M.col("b", j), M.col("a", i)))

    return _scan("bihom_skew_symmetry", 2, A.dim, residual)


def check_bihom_skew_symmetry(A: BiHomAlgebra) -> Report:
    return _single(_skew(A))


def _jacobi(A: BiHomAlgebra, M: Optional[_Maps] = None) -> CheckResult:
    _require(A, bracket=True)
    M = M or _Maps(A)
    br = _mul(A.bracket)
    inner = {}

    def term(i, j, k):
        key = (j, k)
        v = inner.get(key)
        if v is None:
            v = inner[key] = br(M.col("b", j), M.col("a", k))
        return br(M.col("bb", i), v)

    def residual(i, j, k):
        return vec_add(vec_add(term(i, j, k), term(j, k, i)), term(k, i, j))

    return _scan("bihom_jacobi", 3, A.dim, residual)


def check_bihom_jacobi(A: BiHomAlgebra) -> Report:
    return _single(_jacobi(A))


def check_jacobi_regular_form(A: BiHomAlgebra) -> Report:
    """Jacobi identity rearranged with alpha^{-1}; raises Singular for non-invertible alpha."""
    _require(A, bracket=True)
    M = _Maps(A)
    M.map("A")
    br = _mul(A.bracket)

    def residual(i, j, k):
        lhs = br(M.col("bb", i), br(M.col("b", j), M.col("a", k)))
        r1 = br(br(M.col("Abb", i), M.col("b", j)), M.col("ab", k))
        r2 = br(M.col("bb", j), br(M.col("b", i), M.col("a", k)))
        return vec_sub(vec_sub(lhs, r1), r2)

    return _single(_scan("jacobi_regular_form", 3, A.dim, residual))


def _leibniz(A: BiHomAlgebra, M: Optional[_Maps] = None) -> CheckResult:
    _require(A, mu=True, bracket=True)
    M = M or _Maps(A)
    mu, br = _mul(A.mu), _mul(A.bracket)

    def residual(i, j, k):
        lhs = br(A.mu.product(i, j), M.col("ab", k))
        r1 = mu(br(_e(A.dim, i), M.col("b", k)), M.col("a", j))
        r2 = mu(M.col("a", i), br(_e(A.dim, j), M.col("a", k)))
        return vec_sub(vec_sub(lhs, r1), r2)

    return _scan("bihom_leibniz", 3, A.dim, residual)


_BASIS_CACHE = {}


def _e(n: int, i: int) -> Vector:
    key = (n, i)
    v = _BASIS_CACHE.get(key)
    if v is None:
        v = _BASIS_CACHE[key] = basis_vector(n, i)
    return v


def check_bihom_leibniz(A: BiHomAlgebra) -> Report:
    return _single(_leibniz(A))


def _label(report: Report) -> str:
    fatal_ok = all(c.passed for c in report.checks if not c.informational)
    if not fatal_ok:
        return "not BiHom-Poisson"
    comm = report.get("bihom_commutativity")
    return "BiHom-Poisson" if comm.passed else "non-BiHom-commutative BiHom-Poisson"


def verify_bihom_poisson(A: BiHomAlgebra, subject: Optional[str] = None, checks=None) -> Report:
    """Run the seven defining identities in their fixed order.

    BiHom-commutativity is informational: failing it only changes the label to
    "non-BiHom-commutative BiHom-Poisson".
    """
    if A.kind != "poisson":
        raise KindMismatch(f"expected a poisson-kind algebra, got {A.kind}")
    M = _Maps(A)
    runners = {
        "commuting_maps": lambda: _commuting(A),
        "multiplicativity": lambda: _multiplicativity(A, M),
        "bihom_associativity": lambda: _associativity(A, M),
        "bihom_commutativity": lambda: _commutativity(A, M, informational=True),
        "bihom_skew_symmetry": lambda: _skew(A, M),
        "bihom_jacobi": lambda: _jacobi(A, M),
        "bihom_leibniz": lambda: _leibniz(A, M),
    }
    selected = POISSON_CHECKS if checks is None else [c for c in POISSON_CHECKS if c in set(checks)]
    report = Report([runners[name]() for name in selected], subject=subject)
    if checks is None:
        report.label = _label(report)
    return report


def verify(A: BiHomAlgebra, subject: Optional[str] = None, checks=None, commutativity_fatal=False) -> Report:
    """Kind-appropriate verification: Poisson, Lie, associative or plain."""
    if A.kind == "poisson":
        report = verify_bihom_poisson(A, subject, checks)
        if commutativity_fatal:
            for c in report.checks:
                c.informational = False
        return report
    M = _Maps(A)
    runners = {
        "commuting_maps": lambda: _commuting(A),
        "multiplicativity": lambda: _multiplicativity(A, M),
    }
    if A.kind == "lie":
        runners["bihom_skew_symmetry"] = lambda: _skew(A, M)
        runners["bihom_jacobi"] = lambda: _jacobi(A, M)
    elif A.kind == "associative":
        runners["bihom_associativity"] = lambda: _associativity(A, M)
        runners["bihom_commutativity"] = lambda: _commutativity(A, M, informational=not commutativity_fatal)
    names = [n for n in runners if checks is None or n in set(checks)]
    return Report([runners[n]() for n in names], subject=subject)


def bihom_associator(A: BiHomAlgebra, v: Vector, w: Vector, u: Vector) -> Vector:
    """as(x, y, z) = mu(mu(x, y), beta(z)) - mu(alpha(x), mu(y, z))."""
    _require(A, mu=True)
    n = A.dim
    if not (len(v) == len(w) == len(u) == n):
        raise DimensionMismatch("associator arguments must have the algebra's dimension")
    mu = _mul(A.mu)
    return vec_sub(mu(mu(v, w), apply_linear(A.beta, u)), mu(apply_linear(A.alpha, v), mu(w, u)))


def check_admissible(A: BiHomAlgebra, regular_form: Optional[bool] = None) -> Report:
    """One-third associator identity; also the alpha^{-1} form when A is regular.

    ``regular_form`` forces (True) or suppresses (False) the second check; by
    default it runs exactly when both twisting maps are invertible.
    """
    _require(A, mu=True)
    M = _Maps(A)
    mu = _mul(A.mu)

    def assoc(u, v, w):
        return vec_sub(mu(mu(u, v), M.apply("b", w)), mu(M.apply("a", u), mu(v, w)))

    def residual(i, j, k):
        c = M.col
        lhs = assoc(c("b", i), c("a", j), c("aa", k))
        t1 = mu(mu(c("b", i), c("ab", k)), c("aa", j))
        t2 = mu(mu(c("bb", k), c("a", i)), c("aa", j))
        t3 = mu(mu(c("b", j), c("ab", k)), c("aa", i))
        t4 = mu(mu(c("b", j), c("a", i)), c("aab", k))
        rhs = vec_scale(THIRD, vec_sub(vec_add(vec_sub(t1, t2), t3), t4))
        return vec_sub(lhs, rhs)

    report = Report([_scan("admissibility", 3, A.dim, residual)])
    if regular_form is None:
        regular_form = is_regular(A)
    if regular_form:
        # words: A = alpha^{-1}, B = beta^{-1}
        M.map("A")
        M.map("B")

        def residual2(i, j, k):
            c = M.col
            x, y, z = _e(A.dim, i), _e(A.dim, j), _e(A.dim, k)
            lhs = assoc(x, y, z)
            t1 = mu(mu(x, c("Ab", k)), c("a", j))
            t2 = mu(mu(c("AAbb", k), c("aB", i)), c("a", j))
            t3 = mu(mu(c("Ab", j), c("Ab", k)), c("aaB", i))
            t4 = mu(mu(c("Ab", j), c("aB", i)), c("b", k))
            rhs = vec_scale(THIRD, vec_sub(vec_add(vec_sub(t1, t2), t3), t4))
            return vec_sub(lhs, rhs)

        report.checks.append(_scan("admissibility_regular_form", 3, A.dim, residual2))
    return report


def check_morphism(f: LinearMap, A: BiHomAlgebra, B: BiHomAlgebra, mode: str = "full") -> Report:
    """f: A -> B; full mode adds f.alpha = alpha'.f and f.beta = beta'.f."""
    if mode not in ("full", "weak"):
        raise ValueError(f"unknown mode {mode!r}")
    if f.cols != A.dim or f.rows != B.dim:
        raise DimensionMismatch(f"map is {f.rows}x{f.cols}, algebras have dimensions {A.dim} -> {B.dim}")
    fcol = [f.column(i) for i in range(A.dim)]
    checks = []
    for name, label in (("bracket", "morphism_bracket"), ("mu", "morphism_product")):
        PA, PB = getattr(A, name), getattr(B, name)
        if PA is None and PB is None:
            continue
        PA = PA or BilinearMap.zero(A.dim)
        PB = PB or BilinearMap.zero(B.dim)

        def residual(i, j, PA=PA, PB=PB):
            return vec_sub(apply_linear(f, PA.product(i, j)), apply_bilinear(PB, fcol[i], fcol[j]))

        checks.append(_scan(label, 2, A.dim, residual))
    if mode == "full":
        for mname in ("alpha", "beta"):
            left = compose_linear(f, getattr(A, mname))
            right = compose_linear(getattr(B, mname), f)
            res = CheckResult(f"morphism_{mname}", True)
            for i in range(f.rows):
                for j in range(f.cols):
                    if not (left.entries[i][j] - right.entries[i][j]).is_zero():
                        res = CheckResult(
                            f"morphism_{mname}", False, (i + 1, j + 1),
                            vec_sub(left.column(j), right.column(j)), witness_kind="entry",
                        )
                        break
                if not res.passed:
                    break
            checks.append(res)
    return Report(checks)


def residual_at(A: BiHomAlgebra, name: str, witness) -> Vector:
    """Recompute the residual of one named identity at a 1-based witness tuple."""
    idx = tuple(i - 1 for i in witness)
    M = _Maps(A)
    n = A.dim
    e = lambda i: _e(n, i)  # noqa: E731
    if name == "commuting_maps":
        ab, ba = compose_linear(A.alpha, A.beta), compose_linear(A.beta, A.alpha)
        return vec_sub(ab.column(idx[1]), ba.column(idx[1]))
    if name == "bihom_associativity":
        mu = _mul(A.mu)
        i, j, k = idx
        return vec_sub(mu(M.col("a", i), mu(e(j), e(k))), mu(mu(e(i), e(j)), M.col("b", k)))
    if name == "bihom_commutativity":
        mu = _mul(A.mu)
        i, j = idx
        return vec_sub(mu(M.col("b", i), M.col("a", j)), mu(M.col("b", j), M.col("a", i)))
    if name == "bihom_skew_symmetry":
        br = _mul(A.bracket)
        i, j = idx
        return vec_add(br(M.col("b", i), M.col("a", j)), br(M.col("b", j), M.col("a", i)))
    if name == "bihom_jacobi":
        br = _mul(A.bracket)
        i, j, k = idx
        t = lambda p, q, r: br(M.col("bb", p), br(M.col("b", q), M.col("a", r)))  # noqa: E731
        return vec_add(vec_add(t(i, j, k), t(j, k, i)), t(k, i, j))
    if name == "bihom_leibniz":
        mu, br = _mul(A.mu), _mul(A.bracket)
        i, j, k = idx
        lhs = br(mu(e(i), e(j)), M.col("ab", k))
        return vec_sub(vec_sub(lhs, mu(br(e(i), M.col("b", k)), M.col("a", j))), mu(M.col("a", i), br(e(j), M.col("a", k))))
    if name == "multiplicativity":
        i, j = idx
        out = zero_vector(n)
        for _, P in A.products():
            for word in ("a", "b"):
                r = vec_sub(M.apply(word, P.product(i, j)), apply_bilinear(P, M.col(word, i), M.col(word, j)))
                if not vec_is_zero(r):
                    return r
        return out
    raise KeyError(name)
