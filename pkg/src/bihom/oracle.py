"""Independent numeric re-implementation of every identity check.

Nothing here touches the polynomial engine: document expressions are folded
directly to ``Fraction`` (integers stay plain ``int`` for speed) and all
identities are evaluated with naive nested loops.  Used to confirm symbolic
verdicts and as the search module's workhorse.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as cartesian
from typing import Dict, List, Mapping, Optional, Sequence

from .errors import NotNumeric, PoleAtPoint, Singular
from .expr import eval_expr, identifiers, parse_ast
from .report import CheckResult, Report
from .scalar import Scalar

THIRD = Fraction(1, 3)

# Fixed default for every seeded random choice (oracle points, samplers).
DEFAULT_SEED = 20240917

POISSON_CHECKS = (
    "commuting_maps",
    "multiplicativity",
    "bihom_associativity",
    "bihom_commutativity",
    "bihom_skew_symmetry",
    "bihom_jacobi",
    "bihom_leibniz",
)


def _num(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


class NumericAlgebra:
    """Plain-list copy of an algebra with rational entries."""

    def __init__(self, n, alpha, beta, mu=None, bracket=None, kind="poisson"):
        self.n = n
        self.alpha = alpha
        self.beta = beta
        self.mu = mu
        self.bracket = bracket
        self.kind = kind
        self._maps = {"a": alpha, "b": beta}

    def map(self, word: str):
        m = self._maps.get(word)
        if m is None:
            if word in ("A", "B"):
                m = mat_inverse(self.map(word.lower()))
            else:
                m = mat_mul(self.map(word[0]), self.map(word[1:]))
            self._maps[word] = m
        return m

    def ap(self, word: str, v):
        return mat_vec(self.map(word), v)

    def basis(self, i):
        v = [0] * self.n
        v[i] = 1
        return v


def mat_vec(M, v):
    n = len(M)
    out = [0] * n
    for j, x in enumerate(v):
        if x:
            for i in range(n):
                a = M[i][j]
                if a:
                    out[i] += a * x
    return out


def mat_mul(P, Q):
    n, m, p = len(P), len(Q), len(Q[0])
    return [[sum(P[i][k] * Q[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def mat_inverse(M):
    """Gauss-Jordan elimination over Q."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise Singular("numeric matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [[_num(x) for x in row[n:]] for row in aug]


def bil(T, v, w):
    n = len(v)
    out = [0] * n
    for i, x in enumerate(v):
        if not x:
            continue
        row = T[i]
        for j, y in enumerate(w):
            if not y:
                continue
            cell = row[j]
            s = x * y
            for k in range(n):
                c = cell[k]
                if c:
                    out[k] += c * s
    return out


def _add(*vs):
    return [sum(t) for t in zip(*vs)]


def _sub(v, w):
    return [a - b for a, b in zip(v, w)]


def _scale(c, v):
    return [c * a for a in v]


# -- residuals on arbitrary vectors -------------------------------------------


def res_multiplicativity(N: NumericAlgebra, x, y):
    for P in (N.mu, N.bracket):
        if P is None:
            continue
        for w in ("a", "b"):
            r = _sub(N.ap(w, bil(P, x, y)), bil(P, N.ap(w, x), N.ap(w, y)))
            if any(r):
                return r
    return [0] * N.n


def res_associativity(N, x, y, z):
    mu = N.mu
    return _sub(bil(mu, N.ap("a", x), bil(mu, y, z)), bil(mu, bil(mu, x, y), N.ap("b", z)))


def res_commutativity(N, x, y):
    mu = N.mu
    return _sub(bil(mu, N.ap("b", x), N.ap("a", y)), bil(mu, N.ap("b", y), N.ap("a", x)))


def res_skew(N, x, y):
    br = N.bracket
    return _add(bil(br, N.ap("b", x), N.ap("a", y)), bil(br, N.ap("b", y), N.ap("a", x)))


def res_jacobi(N, x, y, z):
    br = N.bracket

    def t(p, q, r):
        return bil(br, N.ap("bb", p), bil(br, N.ap("b", q), N.ap("a", r)))

    return _add(t(x, y, z), t(y, z, x), t(z, x, y))


def res_jacobi_regular(N, x, y, z):
    br = N.bracket
    lhs = bil(br, N.ap("bb", x), bil(br, N.ap("b", y), N.ap("a", z)))
    r1 = bil(br, bil(br, N.ap("Abb", x), N.ap("b", y)), N.ap("ab", z))
    r2 = bil(br, N.ap("bb", y), bil(br, N.ap("b", x), N.ap("a", z)))
    return _sub(_sub(lhs, r1), r2)


def res_leibniz(N, x, y, z):
    mu, br = N.mu, N.bracket
    lhs = bil(br, bil(mu, x, y), N.ap("ab", z))
    r1 = bil(mu, bil(br, x, N.ap("b", z)), N.ap("a", y))
    r2 = bil(mu, N.ap("a", x), bil(br, y, N.ap("a", z)))
    return _sub(_sub(lhs, r1), r2)


def _assoc(N, u, v, w):
    mu = N.mu
    return _sub(bil(mu, bil(mu, u, v), N.ap("b", w)), bil(mu, N.ap("a", u), bil(mu, v, w)))


def res_admissibility(N, x, y, z):
    mu = N.mu
    a = N.ap
    lhs = _assoc(N, a("b", x), a("a", y), a("aa", z))
    t1 = bil(mu, bil(mu, a("b", x), a("ab", z)), a("aa", y))
    t2 = bil(mu, bil(mu, a("bb", z), a("a", x)), a("aa", y))
    t3 = bil(mu, bil(mu, a("b", y), a("ab", z)), a("aa", x))
    t4 = bil(mu, bil(mu, a("b", y), a("a", x)), a("aab", z))
    rhs = _scale(THIRD, _sub(_add(_sub(t1, t2), t3), t4))
    return _sub(lhs, rhs)


def res_admissibility_regular(N, x, y, z):
    mu = N.mu
    a = N.ap
    lhs = _assoc(N, x, y, z)
    t1 = bil(mu, bil(mu, x, a("Ab", z)), a("a", y))
    t2 = bil(mu, bil(mu, a("AAbb", z), a("aB", x)), a("a", y))
    t3 = bil(mu, bil(mu, a("Ab", y), a("Ab", z)), a("aaB", x))
    t4 = bil(mu, bil(mu, a("Ab", y), a("aB", x)), a("b", z))
    rhs = _scale(THIRD, _sub(_add(_sub(t1, t2), t3), t4))
    return _sub(lhs, rhs)


RESIDUALS = {
    "multiplicativity": (2, res_multiplicativity),
    "bihom_associativity": (3, res_associativity),
    "bihom_commutativity": (2, res_commutativity),
    "bihom_skew_symmetry": (2, res_skew),
    "bihom_jacobi": (3, res_jacobi),
    "bihom_leibniz": (3, res_leibniz),
    "jacobi_regular_form": (3, res_jacobi_regular),
    "admissibility": (3, res_admissibility),
    "admissibility_regular_form": (3, res_admissibility_regular),
}


def commuting_residual(N: NumericAlgebra):
    ab = mat_mul(N.alpha, N.beta)
    ba = mat_mul(N.beta, N.alpha)
    for i in range(N.n):
        for j in range(N.n):
            if ab[i][j] != ba[i][j]:
                return (i, j), [ab[r][j] - ba[r][j] for r in range(N.n)]
    return None, None


def residual(N: NumericAlgebra, name: str, vectors: Sequence[Sequence]):
    """Residual of a named identity at arbitrary argument vectors."""
    if name == "commuting_maps":
        ab = mat_mul(N.alpha, N.beta)
        ba = mat_mul(N.beta, N.alpha)
        return _sub(mat_vec(ab, vectors[0]), mat_vec(ba, vectors[0]))
    arity, fn = RESIDUALS[name]
    return fn(N, *vectors[:arity])


def check(N: NumericAlgebra, name: str) -> CheckResult:
    """Basis-tuple scan of one identity with numeric arithmetic."""
    informational = name == "bihom_commutativity"
    if name == "commuting_maps":
        where, r = commuting_residual(N)
        if where is None:
            return CheckResult(name, True)
        return CheckResult(name, False, (where[0] + 1, where[1] + 1), _scalars(r), witness_kind="entry")
    arity, fn = RESIDUALS[name]
    basis = [N.basis(i) for i in range(N.n)]
    for idx in cartesian(range(N.n), repeat=arity):
        r = fn(N, *(basis[i] for i in idx))
        if any(r):
            return CheckResult(name, False, tuple(i + 1 for i in idx), _scalars(r), informational=informational)
    return CheckResult(name, True, informational=informational)


def _scalars(v):
    return tuple(Scalar.from_rational(Fraction(x)) for x in v)


def holds(N: NumericAlgebra, name: str) -> bool:
    return check(N, name).passed


def oracle_verify(doc, checks: Optional[Sequence[str]] = None) -> Report:
    """Numeric verdict for the seven BiHom-Poisson identities.

    ``doc`` is a numeric algebra document or a :class:`NumericAlgebra`.
    """
    N = doc if isinstance(doc, NumericAlgebra) else numeric_algebra(doc)
    names = POISSON_CHECKS if checks is None else tuple(checks)
    report = Report([check(N, name) for name in names])
    if checks is None:
        fatal = all(c.passed for c in report.checks if not c.informational)
        if not fatal:
            report.label = "not BiHom-Poisson"
        elif report.get("bihom_commutativity").passed:
            report.label = "BiHom-Poisson"
        else:
            report.label = "non-BiHom-commutative BiHom-Poisson"
    return report


# -- documents -> numbers ---------------------------------------------------------


def _value(text, env, strict):
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return _num(Fraction(text))
    if strict and identifiers(parse_ast(text)):
        raise NotNumeric(f"expression {text!r} contains parameters")
    return _num(eval_expr(text, env))


def numeric_algebra(doc: dict, point: Optional[Mapping[str, object]] = None) -> NumericAlgebra:
    """Instantiate a document; with ``point=None`` every entry must be numeric."""
    env = {k: Fraction(v) for k, v in (point or {}).items()}
    strict = point is None
    n = doc["dimension"]

    def tensor(entries):
        if entries is None:
            return None
        T = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, e in entries:
            T[i - 1][j - 1][k - 1] = _value(e, env, strict)
        return T

    def grid(g):
        return [[_value(e, env, strict) for e in row] for row in g]

    return NumericAlgebra(
        n,
        grid(doc["alpha"]),
        grid(doc["beta"]),
        mu=tensor(doc.get("mu")),
        bracket=tensor(doc.get("bracket")),
        kind=doc.get("kind", "poisson"),
    )


def document_expressions(doc: dict) -> List[str]:
    out = []
    for key in ("mu", "bracket"):
        for entry in doc.get(key) or []:
            out.append(entry[3])
    for key in ("alpha", "beta", "gamma", "nu"):
        for row in doc.get(key) or []:
            out.extend(row)
    for key in ("rho_bracket", "rho_mu"):
        for g in doc.get(key) or []:
            for row in g:
                out.extend(row)
    return [e for e in out if isinstance(e, str)]


def random_point(doc: dict, rng: random.Random, span: int = 97, tries: int = 200) -> Dict[str, Fraction]:
    """A random integer point that respects assumptions_nonzero and avoids poles."""
    params = list(doc.get("parameters", []))
    nonzero = set(doc.get("assumptions_nonzero", []))
    exprs = document_expressions(doc)
    for _ in range(tries):
        point = {}
        for p in params:
            v = rng.randint(-span, span)
            while p in nonzero and v == 0:
                v = rng.randint(-span, span)
            point[p] = Fraction(v)
        try:
            for e in exprs:
                eval_expr(e, point)
        except PoleAtPoint:
            continue
        return point
    raise PoleAtPoint("could not find a pole-free point")


def confirm_report(doc: dict, report: Report, rng: random.Random, points: int = 3, include_pass: bool = False) -> bool:
    """Re-check FAIL verdicts numerically at random points; records the outcome.

    A FAIL is confirmed when the numeric oracle also fails that identity at
    every sampled point.  Returns True when all re-checked verdicts agree.
    """
    targets = [c for c in report.checks if include_pass or not c.passed]
    if not targets:
        return True
    samples = [random_point(doc, rng) for _ in range(points)]
    numerics = [numeric_algebra(doc, p) for p in samples]
    agree = True
    for c in targets:
        c.oracle = []
        for p, N in zip(samples, numerics):
            try:
                verdict = check(N, c.name).verdict
            except Singular:
                verdict = "SINGULAR"
            c.oracle.append({"point": {k: str(v) for k, v in sorted(p.items())}, "verdict": verdict})
        c.oracle_confirmed = all(o["verdict"] == c.verdict for o in c.oracle)
        agree = agree and c.oracle_confirmed
    return agree
