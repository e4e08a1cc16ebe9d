"""Random generators shared by the test modules.

Everything takes an explicit ``random.Random`` so each test is reproducible.
Filtering is done with the numeric oracle (plain ints/Fractions) so the
symbolic code under test never decides what counts as a valid input.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import List, Sequence

from bihom.linalg import BiHomAlgebra, BilinearMap, LinearMap
from bihom.oracle import NumericAlgebra, check
from bihom.scalar import Polynomial, Scalar, var

GRID = (-1, 0, 1, 2)
NONZERO = (-1, 1, 2)
VARS = ("a", "b", "c")


def identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def diag(values: Sequence) -> List[List]:
    n = len(values)
    return [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]


def zero_tensor(n: int):
    return [[[0] * n for _ in range(n)] for _ in range(n)]


def sparse_tensor(rng: random.Random, n: int, lo: int = 0, hi: int = 3, values=NONZERO):
    """A tensor with between ``lo`` and ``hi`` nonzero structure constants."""
    T = zero_tensor(n)
    slots = list(product(range(n), repeat=3))
    for i, j, k in rng.sample(slots, rng.randint(lo, hi)):
        T[i][j][k] = rng.choice(values)
    return T


def is_zero_tensor(T) -> bool:
    return not any(c for row in T for cell in row for c in cell)


def holds(n, mu=None, bracket=None, names=(), alpha=None, beta=None) -> bool:
    a = alpha if alpha is not None else identity(n)
    b = beta if beta is not None else identity(n)
    N = NumericAlgebra(n, a, b, mu=mu, bracket=bracket)
    return all(check(N, name).passed for name in names)


# -- conversions to the symbolic types -------------------------------------------------


def S(c) -> Scalar:
    return c if isinstance(c, Scalar) else Scalar.from_rational(Fraction(c))


def lin(M) -> LinearMap:
    return LinearMap(tuple(tuple(S(x) for x in row) for row in M))


def bil(T) -> BilinearMap:
    return BilinearMap(tuple(tuple(tuple(S(x) for x in cell) for cell in row) for row in T))


def algebra(n, mu=None, bracket=None, alpha=None, beta=None, kind="poisson", parameters=(), nonzero=()):
    return BiHomAlgebra(
        n,
        lin(alpha if alpha is not None else identity(n)),
        lin(beta if beta is not None else identity(n)),
        mu=None if mu is None else bil(mu),
        bracket=None if bracket is None else bil(bracket),
        kind=kind,
        parameters=tuple(parameters),
        assumptions_nonzero=tuple(nonzero),
    )


# -- ordinary (untwisted) structures ----------------------------------------------------


def random_commutative_associative(rng, n, lo=0, hi=3):
    while True:
        T = sparse_tensor(rng, n, lo, hi)
        if holds(n, mu=T, names=("bihom_associativity", "bihom_commutativity")):
            return T


def random_associative(rng, n, lo=1, hi=3):
    while True:
        T = sparse_tensor(rng, n, lo, hi)
        if holds(n, mu=T, names=("bihom_associativity",)):
            return T


def random_lie(rng, n, lo=0, hi=3):
    while True:
        T = sparse_tensor(rng, n, lo, hi)
        if holds(n, bracket=T, names=("bihom_skew_symmetry", "bihom_jacobi")):
            return T


def random_ordinary_poisson(rng, n=2):
    """Random tensors over the grid, kept when the ordinary Poisson axioms hold.

    The zero algebra is rejected; one of the two products is drawn nonzero.
    """
    while True:
        lead = rng.random() < 0.5
        mu = random_commutative_associative(rng, n, lo=int(lead))
        br = random_lie(rng, n, lo=int(not lead))
        if holds(n, mu=mu, bracket=br, names=("bihom_leibniz",)):
            return mu, br


def diagonal_morphism(rng, n, tensors, values=GRID, tries=500):
    """A random diagonal map that is a weak morphism of every tensor given."""
    for _ in range(tries):
        d = [rng.choice(values) for _ in range(n)]
        ok = all(
            T[i][j][k] == 0 or d[k] == d[i] * d[j]
            for T in tensors if T is not None
            for i in range(n) for j in range(n) for k in range(n)
        )
        if ok:
            return d
    return [1] * n


def gradings(tensors, n, top=2):
    """Integer gradings g with g[k] = g[i] + g[j] on every nonzero slot."""
    out = []
    for g in product(range(top + 1), repeat=n):
        if all(
            T[i][j][k] == 0 or g[k] == g[i] + g[j]
            for T in tensors
            for i in range(n) for j in range(n) for k in range(n)
        ):
            out.append(g)
    return out


def random_plain_regular(rng, n=2):
    """Regular diagonal alpha, beta and a multiplicative plain product."""
    while True:
        a = [rng.choice(NONZERO) for _ in range(n)]
        b = [rng.choice(NONZERO) for _ in range(n)]
        T = [[[rng.choice((-1, 0, 0, 0, 1, 2)) for _ in range(n)] for _ in range(n)] for _ in range(n)]
        if holds(n, mu=T, alpha=diag(a), beta=diag(b), names=("multiplicativity",)):
            return algebra(n, mu=T, alpha=diag(a), beta=diag(b), kind="plain")


# -- scalars ------------------------------------------------------------------------------


def random_polynomial(rng, variables=VARS, terms=3, degree=2, coeff=5) -> Polynomial:
    out = Polynomial({})
    count = 0 if rng.random() < 0.03 else rng.randint(1, terms)
    for _ in range(count):
        c = Fraction(rng.randint(-coeff, coeff), rng.randint(1, 3))
        mono = S(c)
        for _ in range(rng.randint(0, degree)):
            mono = mono * var(rng.choice(variables))
        out = out + mono.num
    return out


def random_scalar(rng, variables=VARS) -> Scalar:
    num = random_polynomial(rng, variables)
    while True:
        den = random_polynomial(rng, variables, terms=2, degree=1)
        if den.terms:
            return Scalar(num) / Scalar(den)


def random_point(rng, variables=VARS, span=50):
    return {v: Fraction(rng.randint(-span, span), rng.randint(1, 7)) for v in variables}


def random_invertible(rng, n, variables=("a", "b")):
    """A random symbolic n x n map with nonzero determinant (checked numerically)."""
    from bihom.oracle import mat_inverse

    while True:
        entries = [[random_scalar(rng, variables) if rng.random() < 0.4 else S(rng.choice(GRID))
                    for _ in range(n)] for _ in range(n)]
        point = random_point(rng, variables)
        try:
            numeric = [[e.evaluate(point) for e in row] for row in entries]
            mat_inverse(numeric)
        except ArithmeticError:
            continue
        return lin(entries)


# -- documents ------------------------------------------------------------------------------


def instantiate(doc: dict, point) -> dict:
    """Replace every expression of a document by its value at ``point``."""
    from bihom.expr import eval_expr

    def f(e):
        return str(eval_expr(e, point))

    out = dict(doc, parameters=[], assumptions_nonzero=[])
    for key in ("mu", "bracket"):
        if doc.get(key) is not None:
            out[key] = [[i, j, k, f(e)] for i, j, k, e in doc[key]]
    for key in ("alpha", "beta"):
        out[key] = [[f(e) for e in row] for row in doc[key]]
    return out


def with_identity_maps(doc: dict) -> dict:
    n = doc["dimension"]
    eye = [["1" if i == j else "0" for j in range(n)] for i in range(n)]
    return dict(doc, alpha=eye, beta=eye)
