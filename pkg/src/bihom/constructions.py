"""New algebras from old: commutator bracket, Yau twist, sums, tensors, polarization."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Sequence, Tuple

from .axioms import check_bihom_commutativity, check_morphism
from .errors import CommutativityRequired, KindMismatch, NonCommutingMaps, NotAMorphism, Singular
from .linalg import (
    BiHomAlgebra,
    BilinearMap,
    LinearMap,
    Vector,
    apply_bilinear,
    compose_linear,
    direct_sum_maps,
    invert_linear,
    is_regular,
    kronecker,
    vec_add,
    vec_scale,
    vec_sub,
)
from .scalar import ZERO, Scalar

HALF = Scalar.from_rational(Fraction(1, 2))


def _tensor(n: int, fn: Callable[[int, int], Vector]) -> BilinearMap:
    return BilinearMap(tuple(tuple(tuple(fn(i, j)) for j in range(n)) for i in range(n)))


def _swap_twists(A: BiHomAlgebra) -> Tuple[LinearMap, LinearMap]:
    """The maps alpha^-1 beta and alpha beta^-1 used by every "swapped" term."""
    if not is_regular(A):
        raise Singular("alpha and beta must be invertible")
    ai = invert_linear(A.alpha)
    bi = invert_linear(A.beta)
    return compose_linear(ai, A.beta), compose_linear(A.alpha, bi)


def _swapped(A: BiHomAlgebra) -> Callable[[int, int], Vector]:
    """(i, j) -> mu(alpha^-1 beta e_j, alpha beta^-1 e_i)."""
    ab, ba = _swap_twists(A)
    mu = A.mu
    return lambda i, j: apply_bilinear(mu, ab.column(j), ba.column(i))


def commutator_bracket(A: BiHomAlgebra) -> BiHomAlgebra:
    """Poisson-kind algebra with {x,y} = mu(x,y) - mu(a^-1 b y, a b^-1 x)."""
    if A.mu is None:
        raise KindMismatch("commutator bracket needs mu")
    sw = _swapped(A)
    br = _tensor(A.dim, lambda i, j: vec_sub(A.mu.product(i, j), sw(i, j)))
    return A.replace(kind="poisson", bracket=br)


def _commutes(f: LinearMap, g: LinearMap) -> bool:
    return compose_linear(f, g) == compose_linear(g, f)


def yau_twist(P: BiHomAlgebra, alpha_new: LinearMap, beta_new: LinearMap, check: bool = True) -> BiHomAlgebra:
    """Twist every product p into p(alpha_new x, beta_new y).

    The result carries the maps alpha_new*alpha and beta_new*beta.  With
    ``check=False`` the commuting and morphism preconditions are skipped, which
    lets callers reproduce formulas from data that violates them.
    """
    if check:
        pairs = (
            ("alpha', beta'", alpha_new, beta_new),
            ("alpha', alpha", alpha_new, P.alpha),
            ("alpha', beta", alpha_new, P.beta),
            ("beta', alpha", beta_new, P.alpha),
            ("beta', beta", beta_new, P.beta),
        )
        for label, f, g in pairs:
            if not _commutes(f, g):
                raise NonCommutingMaps(f"{label} do not commute")
        for label, f in (("alpha'", alpha_new), ("beta'", beta_new)):
            r = check_morphism(f, P, P, mode="weak")
            for c in r.failures():
                raise NotAMorphism(f"{label} fails {c.name} at {c.witness_text()}")
    n = P.dim
    acol = [alpha_new.column(i) for i in range(n)]
    bcol = [beta_new.column(i) for i in range(n)]

    def twist(T):
        if T is None:
            return None
        return _tensor(n, lambda i, j: apply_bilinear(T, acol[i], bcol[j]))

    return P.replace(
        mu=twist(P.mu),
        bracket=twist(P.bracket),
        alpha=compose_linear(alpha_new, P.alpha),
        beta=compose_linear(beta_new, P.beta),
    )


def _rename_algebra(A: BiHomAlgebra, mapping: Dict[str, str]) -> BiHomAlgebra:
    if not mapping:
        return A

    def lin(L):
        return LinearMap(tuple(tuple(x.rename(mapping) for x in row) for row in L.entries))

    def bil(T):
        if T is None:
            return None
        return BilinearMap(tuple(
            tuple(tuple(x.rename(mapping) for x in cell) for cell in row) for row in T.constants
        ))

    return A.replace(
        alpha=lin(A.alpha),
        beta=lin(A.beta),
        mu=bil(A.mu),
        bracket=bil(A.bracket),
        parameters=tuple(mapping.get(p, p) for p in A.parameters),
        assumptions_nonzero=tuple(mapping.get(p, p) for p in A.assumptions_nonzero),
    )


def rename_apart(A1: BiHomAlgebra, A2: BiHomAlgebra) -> Tuple[BiHomAlgebra, BiHomAlgebra]:
    """Suffix colliding parameter names with _L / _R unless the lists are identical."""
    if A1.parameters == A2.parameters:
        return A1, A2
    clash = set(A1.parameters) & set(A2.parameters)
    return (
        _rename_algebra(A1, {p: p + "_L" for p in clash}),
        _rename_algebra(A2, {p: p + "_R" for p in clash}),
    )


def _merge(seq1: Sequence[str], seq2: Sequence[str]) -> Tuple[str, ...]:
    return tuple(dict.fromkeys(tuple(seq1) + tuple(seq2)))


def direct_sum(A1: BiHomAlgebra, A2: BiHomAlgebra) -> BiHomAlgebra:
    """Block-diagonal sum on dim1 + dim2; cross-block products vanish."""
    if A1.kind != A2.kind:
        raise KindMismatch(f"cannot sum a {A1.kind} algebra with a {A2.kind} algebra")
    A1, A2 = rename_apart(A1, A2)
    n1, n2 = A1.dim, A2.dim
    n = n1 + n2
    zero = (ZERO,) * n

    def block(T1, T2):
        if T1 is None:
            return None

        def fn(i, j):
            if i < n1 and j < n1:
                return tuple(T1.product(i, j)) + (ZERO,) * n2
            if i >= n1 and j >= n1:
                return (ZERO,) * n1 + tuple(T2.product(i - n1, j - n1))
            return zero

        return _tensor(n, fn)

    return BiHomAlgebra(
        dim=n,
        alpha=direct_sum_maps(A1.alpha, A2.alpha),
        beta=direct_sum_maps(A1.beta, A2.beta),
        mu=block(A1.mu, A2.mu),
        bracket=block(A1.bracket, A2.bracket),
        kind=A1.kind,
        parameters=_merge(A1.parameters, A2.parameters),
        assumptions_nonzero=_merge(A1.assumptions_nonzero, A2.assumptions_nonzero),
    )


def _kron_tensor(T: BilinearMap, S: BilinearMap) -> BilinearMap:
    n, m = T.dim, S.dim

    def fn(p, q):
        i, k = divmod(p, m)
        j, l = divmod(q, m)
        a, b = T.product(i, j), S.product(k, l)
        return tuple(a[r] * b[s] for r in range(n) for s in range(m))

    return _tensor(n * m, fn)


def tensor_product(A: BiHomAlgebra, B: BiHomAlgebra) -> BiHomAlgebra:
    """A (poisson) tensor B (associative, BiHom-commutative); row-major basis e_i (x) f_k."""
    if A.kind != "poisson":
        raise KindMismatch("left factor must be poisson-kind")
    if B.kind != "associative":
        raise KindMismatch("right factor must be associative-kind")
    c = check_bihom_commutativity(B).checks[0]
    if not c.passed:
        raise CommutativityRequired(f"right factor is not BiHom-commutative at {c.witness_text()}")
    A, B = rename_apart(A, B)
    return BiHomAlgebra(
        dim=A.dim * B.dim,
        alpha=kronecker(A.alpha, B.alpha),
        beta=kronecker(A.beta, B.beta),
        mu=_kron_tensor(A.mu, B.mu),
        bracket=_kron_tensor(A.bracket, B.mu),
        kind="poisson",
        parameters=_merge(A.parameters, B.parameters),
        assumptions_nonzero=_merge(A.assumptions_nonzero, B.assumptions_nonzero),
    )


def polarize(A: BiHomAlgebra) -> BiHomAlgebra:
    """Split mu into halves of its BiHom-skew and BiHom-symmetric parts."""
    if A.mu is None:
        raise KindMismatch("polarization needs mu")
    sw = _swapped(A)
    n = A.dim
    cache = {(i, j): (A.mu.product(i, j), sw(i, j)) for i in range(n) for j in range(n)}
    br = _tensor(n, lambda i, j: vec_scale(HALF, vec_sub(*cache[i, j])))
    dot = _tensor(n, lambda i, j: vec_scale(HALF, vec_add(*cache[i, j])))
    return A.replace(kind="poisson", mu=dot, bracket=br)


def depolarize(P: BiHomAlgebra) -> BiHomAlgebra:
    """Single product bracket + mu, kind plain."""
    if P.kind != "poisson":
        raise KindMismatch("depolarization needs a poisson-kind algebra")
    return P.replace(kind="plain", mu=P.mu + P.bracket, bracket=None)


def zero_algebra(dim: int, kind: str = "poisson") -> BiHomAlgebra:
    z = BilinearMap.zero(dim)
    return BiHomAlgebra(
        dim=dim,
        alpha=LinearMap.identity(dim),
        beta=LinearMap.identity(dim),
        mu=z if kind != "lie" else None,
        bracket=z if kind in ("lie", "poisson") else None,
        kind=kind,
    )
