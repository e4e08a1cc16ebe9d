"""Representations of BiHom-Lie, BiHom-associative and BiHom-Poisson algebras.

A representation is stored as one module-space matrix per basis element of
the algebra; rho extends linearly.  Every check reduces to matrix identities
on basis elements (or pairs of them).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product as cartesian
from typing import Optional, Sequence, Tuple

from .axioms import verify, verify_bihom_poisson
from .constructions import yau_twist
from .errors import HypothesisFailed, KindMismatch, NotAMorphism, NonCommutingMaps, ShapeMismatch, Singular
from .linalg import (
    BiHomAlgebra,
    BilinearMap,
    LinearMap,
    Vector,
    apply_bilinear,
    apply_linear,
    compose_linear,
    determinant,
    direct_sum_maps,
    invert_linear,
)
from .report import CheckResult, Report
from .scalar import ONE, ZERO

Family = Tuple[LinearMap, ...]


@dataclass(frozen=True)
class Representation:
    algebra: BiHomAlgebra
    module_dim: int
    rho_bracket: Optional[Family]
    rho_mu: Optional[Family]
    gamma: LinearMap
    nu: LinearMap

    def __post_init__(self):
        m = self.module_dim
        for name in ("gamma", "nu"):
            L = getattr(self, name)
            if (L.rows, L.cols) != (m, m):
                raise ShapeMismatch(f"{name} is {L.rows}x{L.cols}, module has dimension {m}")
        for name in ("rho_bracket", "rho_mu"):
            fam = getattr(self, name)
            if fam is None:
                continue
            fam = tuple(fam)
            object.__setattr__(self, name, fam)
            if len(fam) != self.algebra.dim:
                raise ShapeMismatch(f"{name} has {len(fam)} matrices, algebra has dimension {self.algebra.dim}")
            for i, L in enumerate(fam):
                if (L.rows, L.cols) != (m, m):
                    raise ShapeMismatch(f"{name}[{i}] is {L.rows}x{L.cols}, expected {m}x{m}")

    def replace(self, **changes) -> "Representation":
        return replace(self, **changes)


def rho_at(family: Family, v: Vector) -> LinearMap:
    """rho(v) = sum_i v_i rho(e_i)."""
    m = family[0].rows
    out = LinearMap.zero(m)
    for c, L in zip(v, family):
        if not c.is_zero():
            out = out + L.scaled(c)
    return out


def zero_representation(A: BiHomAlgebra, module_dim: int = 1) -> Representation:
    z = tuple(LinearMap.zero(module_dim) for _ in range(A.dim))
    return Representation(
        algebra=A,
        module_dim=module_dim,
        rho_bracket=z if A.bracket is not None else None,
        rho_mu=z if A.mu is not None else None,
        gamma=LinearMap.identity(module_dim),
        nu=LinearMap.identity(module_dim),
    )


def _left_mult(T: BilinearMap, i: int) -> LinearMap:
    n = T.dim
    return LinearMap.from_columns([T.product(i, j) for j in range(n)])


def adjoint_representation(A: BiHomAlgebra) -> Representation:
    """A acting on itself by left multiplication, with gamma=alpha and nu=beta."""
    n = A.dim
    return Representation(
        algebra=A,
        module_dim=n,
        rho_bracket=tuple(_left_mult(A.bracket, i) for i in range(n)) if A.bracket is not None else None,
        rho_mu=tuple(_left_mult(A.mu, i) for i in range(n)) if A.mu is not None else None,
        gamma=A.alpha,
        nu=A.beta,
    )


# -- checks -------------------------------------------------------------------


def _flat(L: LinearMap) -> Vector:
    return tuple(x for row in L.entries for x in row)


def _matrix_scan(name: str, arity: int, n: int, residual) -> CheckResult:
    for idx in cartesian(range(n), repeat=arity):
        r = residual(*idx)
        if not r.is_zero():
            return CheckResult(name, False, tuple(i + 1 for i in idx), _flat(r), detail="matrix residual, row-major")
    return CheckResult(name, True)


def _gamma_nu(R: Representation) -> CheckResult:
    d = compose_linear(R.gamma, R.nu) - compose_linear(R.nu, R.gamma)
    if d.is_zero():
        return CheckResult("gamma_nu_commute", True)
    for i in range(d.rows):
        for j in range(d.cols):
            if not d.entries[i][j].is_zero():
                return CheckResult("gamma_nu_commute", False, (i + 1, j + 1), d.column(j), witness_kind="entry")
    raise AssertionError("unreachable")


def _intertwine(R: Representation, fam: Family, prefix: str):
    A = R.algebra
    n = A.dim
    acol = [A.alpha.column(i) for i in range(n)]
    bcol = [A.beta.column(i) for i in range(n)]
    yield _matrix_scan(
        f"{prefix}_alpha_gamma", 1, n,
        lambda i: compose_linear(rho_at(fam, acol[i]), R.gamma) - compose_linear(R.gamma, fam[i]),
    )
    yield _matrix_scan(
        f"{prefix}_beta_nu", 1, n,
        lambda i: compose_linear(rho_at(fam, bcol[i]), R.nu) - compose_linear(R.nu, fam[i]),
    )


def _lie_checks(R: Representation):
    A = R.algebra
    if A.bracket is None or R.rho_bracket is None:
        raise KindMismatch("Lie representation needs a bracket and rho_bracket")
    fam = R.rho_bracket
    n = A.dim
    out = list(_intertwine(R, fam, "lie"))
    acol = [A.alpha.column(i) for i in range(n)]
    bcol = [A.beta.column(i) for i in range(n)]
    abcol = [apply_linear(A.alpha, bcol[i]) for i in range(n)]

    def residual(i, j):
        lhs = compose_linear(rho_at(fam, apply_bilinear(A.bracket, bcol[i], _e(n, j))), R.nu)
        t1 = compose_linear(rho_at(fam, abcol[i]), fam[j])
        t2 = compose_linear(rho_at(fam, bcol[j]), rho_at(fam, acol[i]))
        return lhs - t1 + t2

    out.append(_matrix_scan("lie_bracket", 2, n, residual))
    return out


def _assoc_checks(R: Representation):
    A = R.algebra
    if A.mu is None or R.rho_mu is None:
        raise KindMismatch("associative representation needs mu and rho_mu")
    fam = R.rho_mu
    n = A.dim
    out = list(_intertwine(R, fam, "assoc"))
    acol = [A.alpha.column(i) for i in range(n)]

    def residual(i, j):
        lhs = compose_linear(rho_at(fam, A.mu.product(i, j)), R.nu)
        return lhs - compose_linear(rho_at(fam, acol[i]), fam[j])

    out.append(_matrix_scan("assoc_product", 2, n, residual))
    return out


def _e(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def check_lie_representation(R: Representation) -> Report:
    return Report([_gamma_nu(R)] + _lie_checks(R), subject="lie representation")


def check_assoc_representation(R: Representation) -> Report:
    return Report([_gamma_nu(R)] + _assoc_checks(R), subject="associative representation")


def check_poisson_representation(R: Representation) -> Report:
    A = R.algebra
    if A.kind != "poisson":
        raise KindMismatch("Poisson representation needs a poisson-kind algebra")
    checks = [_gamma_nu(R)] + _lie_checks(R) + _assoc_checks(R)
    n = A.dim
    rb, rm = R.rho_bracket, R.rho_mu
    acol = [A.alpha.column(i) for i in range(n)]
    bcol = [A.beta.column(i) for i in range(n)]
    abcol = [apply_linear(A.alpha, bcol[i]) for i in range(n)]

    def comp1(i, j):
        lhs = compose_linear(rho_at(rb, A.mu.product(i, j)), R.nu)
        t1 = compose_linear(rho_at(rm, bcol[j]), rb[i])
        t2 = compose_linear(rho_at(rm, acol[i]), rb[j])
        return lhs - t1 - t2

    def comp2(i, j):
        lhs = compose_linear(rho_at(rm, apply_bilinear(A.bracket, bcol[i], _e(n, j))), R.nu)
        t1 = compose_linear(rho_at(rm, abcol[i]), rb[j])
        t2 = compose_linear(rho_at(rb, bcol[j]), rho_at(rm, acol[i]))
        return lhs + t1 + t2

    checks.append(_matrix_scan("rep_comp1", 2, n, comp1))
    checks.append(_matrix_scan("rep_comp2", 2, n, comp2))
    return Report(checks, subject="poisson representation")


# -- twisting -----------------------------------------------------------------


def twist_lie_representation(R: Representation) -> Tuple[Representation, Report]:
    """Twist a representation of an ordinary Lie algebra along (alpha, beta).

    ``R.algebra`` carries the ordinary bracket; its ``alpha``/``beta`` fields
    are the twisting morphisms.  The result represents the Yau-twisted
    bracket {alpha x, beta y} by rho~(x) = rho(alpha x) gamma.
    """
    A = R.algebra
    fam = R.rho_bracket
    if A.bracket is None or fam is None:
        raise KindMismatch("twisting needs a bracket and rho_bracket")
    n = A.dim
    acol = [A.alpha.column(i) for i in range(n)]
    bcol = [A.beta.column(i) for i in range(n)]
    hyps = (
        ("rho(alpha x) gamma = gamma rho(x)",
         lambda i: compose_linear(rho_at(fam, acol[i]), R.gamma) - compose_linear(R.gamma, fam[i])),
        ("rho(beta x) nu = nu rho(x)",
         lambda i: compose_linear(rho_at(fam, bcol[i]), R.nu) - compose_linear(R.nu, fam[i])),
        ("rho(alpha x) nu = -rho(beta x) gamma",
         lambda i: compose_linear(rho_at(fam, acol[i]), R.nu) + compose_linear(rho_at(fam, bcol[i]), R.gamma)),
    )
    for label, res in hyps:
        for i in range(n):
            if not res(i).is_zero():
                raise HypothesisFailed(f"{label} fails at x=e_{i + 1}")
    if not _gamma_nu(R).passed:
        raise HypothesisFailed("gamma and nu do not commute")
    plain = A.replace(alpha=LinearMap.identity(n), beta=LinearMap.identity(n))
    try:
        twisted = yau_twist(plain, A.alpha, A.beta)
    except (NotAMorphism, NonCommutingMaps) as e:
        raise HypothesisFailed(str(e)) from e
    new = R.replace(
        algebra=twisted,
        rho_bracket=tuple(compose_linear(rho_at(fam, acol[i]), R.gamma) for i in range(n)),
    )
    return new, check_lie_representation(new)


# -- semi-direct products -------------------------------------------------------


def _family_zero(fam: Optional[Family]) -> bool:
    return fam is None or all(L.is_zero() for L in fam)


def _twists(A: BiHomAlgebra, R: Representation, families: Sequence[Family]):
    """alpha^-1 beta and gamma nu^-1, or None when every rho vanishes."""
    if all(_family_zero(f) for f in families):
        return None
    if determinant(A.alpha).is_zero():
        raise Singular("alpha is not invertible")
    if determinant(R.nu).is_zero():
        raise Singular("nu is not invertible")
    return (
        compose_linear(invert_linear(A.alpha), A.beta),
        compose_linear(R.gamma, invert_linear(R.nu)),
    )


def _semidirect_tensor(T: BilinearMap, fam: Family, twists, m: int, sign) -> BilinearMap:
    n = T.dim
    size = n + m
    zero_m = (ZERO,) * m

    def cell(i, j):
        if i < n and j < n:
            return tuple(T.product(i, j)) + zero_m
        if i < n:  # x = e_i, b = f_j
            return (ZERO,) * n + fam[i].column(j - n)
        if j < n and twists is not None:  # a = f_i, y = e_j
            ab, gn = twists
            v = apply_linear(rho_at(fam, ab.column(j)), gn.column(i - n))
            return (ZERO,) * n + tuple(sign * x for x in v)
        return (ZERO,) * size

    return BilinearMap(tuple(tuple(cell(i, j) for j in range(size)) for i in range(size)))


def _sum_algebra(A: BiHomAlgebra, R: Representation, mu, bracket, kind) -> BiHomAlgebra:
    return BiHomAlgebra(
        dim=A.dim + R.module_dim,
        alpha=direct_sum_maps(A.alpha, R.gamma),
        beta=direct_sum_maps(A.beta, R.nu),
        mu=mu,
        bracket=bracket,
        kind=kind,
        parameters=A.parameters,
        assumptions_nonzero=A.assumptions_nonzero,
    )


def _gate(report: Report, what: str):
    if not report.passed:
        c = report.failures()[0]
        raise HypothesisFailed(f"{what} check fails: {c.name} at {c.witness_text()}")


def _with_algebra(A: BiHomAlgebra, R: Representation) -> Representation:
    if R.algebra.dim != A.dim:
        raise ShapeMismatch("representation and algebra dimensions differ")
    return R if R.algebra is A else R.replace(algebra=A)


def semidirect_lie(A: BiHomAlgebra, R: Representation) -> Tuple[BiHomAlgebra, Report]:
    R = _with_algebra(A, R)
    _gate(check_lie_representation(R), "Lie representation")
    tw = _twists(A, R, [R.rho_bracket])
    br = _semidirect_tensor(A.bracket, R.rho_bracket, tw, R.module_dim, -1)
    S = _sum_algebra(A, R, None, br, "lie")
    return S, verify(S, subject="semidirect (Lie)")


def semidirect_assoc(A: BiHomAlgebra, R: Representation) -> Tuple[BiHomAlgebra, Report]:
    R = _with_algebra(A, R)
    _gate(check_assoc_representation(R), "associative representation")
    tw = _twists(A, R, [R.rho_mu])
    mu = _semidirect_tensor(A.mu, R.rho_mu, tw, R.module_dim, 1)
    S = _sum_algebra(A, R, mu, None, "associative")
    return S, verify(S, subject="semidirect (associative)", commutativity_fatal=True)


def semidirect_poisson(A: BiHomAlgebra, R: Representation) -> Tuple[BiHomAlgebra, Report]:
    R = _with_algebra(A, R)
    _gate(check_poisson_representation(R), "Poisson representation")
    tw = _twists(A, R, [R.rho_bracket, R.rho_mu])
    m = R.module_dim
    br = _semidirect_tensor(A.bracket, R.rho_bracket, tw, m, -1)
    mu = _semidirect_tensor(A.mu, R.rho_mu, tw, m, 1)
    S = _sum_algebra(A, R, mu, br, "poisson")
    return S, verify_bihom_poisson(S, subject="semidirect (Poisson)")
