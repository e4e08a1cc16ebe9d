"""Exhaustive search for small BiHom-Poisson structures over a finite grid.

Candidates are slot vectors (alpha, beta, mu, bracket) enumerated in
lexicographic order of grid positions.  Commuting and multiplicativity
pruning happens per map pair before tensors are combined, so the pruned
stream is a concatenation of ``mu_list x bracket_list`` blocks and can be
indexed directly.  Every identity evaluation goes through the numeric oracle.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, PoleAtPoint
from .oracle import (
    NumericAlgebra,
    commuting_residual,
    numeric_algebra,
    oracle_verify,
    res_associativity,
    res_jacobi,
    res_leibniz,
    res_multiplicativity,
    res_skew,
)

DEFAULT_BUDGET = 10**8
SHAPES = ("diagonal", "general")
PRODUCTS = ("mu", "bracket", "both")

Tensor = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class SearchSpec:
    dim: int
    grid: Tuple[Fraction, ...]
    morphism_shape: str = "diagonal"
    products: str = "both"
    symmetry_reduction: bool = False
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        grid = tuple(Fraction(g) for g in self.grid)
        if not grid:
            raise ValueError("grid must be nonempty")
        if len(set(grid)) != len(grid):
            raise ValueError("grid values must be distinct")
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.morphism_shape not in SHAPES:
            raise ValueError(f"morphism_shape must be one of {SHAPES}")
        if self.products not in PRODUCTS:
            raise ValueError(f"products must be one of {PRODUCTS}")
        object.__setattr__(self, "grid", grid)

    @property
    def has_mu(self) -> bool:
        return self.products in ("mu", "both")

    @property
    def has_bracket(self) -> bool:
        return self.products in ("bracket", "both")

    @property
    def kind(self) -> str:
        return {"mu": "associative", "bracket": "lie", "both": "poisson"}[self.products]

    def slot_count(self) -> int:
        n = self.dim
        maps = 2 * (n if self.morphism_shape == "diagonal" else n * n)
        return maps + n**3 * (int(self.has_mu) + int(self.has_bracket))

    def raw_count(self) -> int:
        return len(self.grid) ** self.slot_count()


@dataclass
class SearchResult:
    structures: List[dict]
    count_examined: int
    matches: List[List[Tuple[str, Dict[str, Fraction]]]]
    indices: List[int] = field(default_factory=list)

    @property
    def uncatalogued(self) -> List[int]:
        """Positions (into ``structures``) with no catalog family match."""
        return [i for i, m in enumerate(self.matches) if not m]

    def to_dict(self) -> dict:
        items = []
        for idx, doc, m in zip(self.indices, self.structures, self.matches):
            items.append({
                "index": idx,
                "document": doc,
                "matches": [{"id": eid, "assignment": {k: str(v) for k, v in sorted(a.items())}} for eid, a in m],
            })
        return {
            "count_examined": self.count_examined,
            "count_passing": len(self.structures),
            "count_uncatalogued": len(self.uncatalogued),
            "structures": items,
        }


# -- enumeration ----------------------------------------------------------------


def _maps(spec: SearchSpec) -> List[Matrix]:
    n, grid = spec.dim, spec.grid
    zero = Fraction(0)
    out = []
    if spec.morphism_shape == "diagonal":
        for diag in cartesian(grid, repeat=n):
            out.append(tuple(tuple(diag[i] if i == j else zero for j in range(n)) for i in range(n)))
    else:
        for flat in cartesian(grid, repeat=n * n):
            out.append(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))
    return out


def _tensor(n: int, flat) -> Tensor:
    return tuple(tuple(tuple(flat[(i * n + j) * n:(i * n + j + 1) * n]) for j in range(n)) for i in range(n))


def _num(M):
    return [[int(x) if x.denominator == 1 else x for x in row] for row in M]


def _num_t(T):
    return [[[int(x) if x.denominator == 1 else x for x in cell] for cell in row] for row in T]


def _multiplicative_tensors(spec: SearchSpec, alpha: Matrix, beta: Matrix) -> List[Tensor]:
    """All tensors over the grid for which alpha and beta are multiplicative, lex order."""
    n, grid = spec.dim, spec.grid
    if spec.morphism_shape == "diagonal":
        a = [alpha[i][i] for i in range(n)]
        b = [beta[i][i] for i in range(n)]
        choices = []
        for i, j, k in cartesian(range(n), repeat=3):
            if a[k] == a[i] * a[j] and b[k] == b[i] * b[j]:
                choices.append(grid)
            else:
                choices.append(tuple(g for g in grid if g == 0))
        return [_tensor(n, flat) for flat in cartesian(*choices)]
    N = NumericAlgebra(n, _num(alpha), _num(beta))
    basis = [N.basis(i) for i in range(n)]
    out = []
    for flat in cartesian(grid, repeat=n**3):
        T = _tensor(n, flat)
        N.mu, N.bracket = _num_t(T), None
        if not any(any(res_multiplicativity(N, basis[i], basis[j])) for i in range(n) for j in range(n)):
            out.append(T)
    return out


@dataclass
class _Block:
    alpha: Matrix
    beta: Matrix
    mus: List[Optional[Tensor]]
    brackets: List[Optional[Tensor]]

    def __len__(self):
        return len(self.mus) * len(self.brackets)


def _check_budget(spec: SearchSpec):
    raw = spec.raw_count()
    if raw > spec.budget:
        raise BudgetExceeded(raw, spec.budget)


def _blocks(spec: SearchSpec) -> Iterator[_Block]:
    _check_budget(spec)
    maps = _maps(spec)
    tensor_cache: Dict[Tuple[Matrix, Matrix], List[Tensor]] = {}
    for alpha in maps:
        for beta in maps:
            N = NumericAlgebra(spec.dim, _num(alpha), _num(beta))
            if commuting_residual(N)[0] is not None:
                continue
            key = (alpha, beta)
            if key not in tensor_cache:
                tensor_cache[key] = _multiplicative_tensors(spec, alpha, beta)
            ts = tensor_cache[key]
            yield _Block(alpha, beta, ts if spec.has_mu else [None], ts if spec.has_bracket else [None])


def candidate_document(spec: SearchSpec, alpha: Matrix, beta: Matrix, mu: Optional[Tensor], bracket: Optional[Tensor]) -> dict:
    n = spec.dim

    def entries(T):
        return [[i + 1, j + 1, k + 1, str(T[i][j][k])]
                for i in range(n) for j in range(n) for k in range(n) if T[i][j][k]]

    doc = {"dimension": n, "parameters": [], "assumptions_nonzero": [], "kind": spec.kind}
    if mu is not None:
        doc["mu"] = entries(mu)
    if bracket is not None:
        doc["bracket"] = entries(bracket)
    doc["alpha"] = [[str(x) for x in row] for row in alpha]
    doc["beta"] = [[str(x) for x in row] for row in beta]
    return doc


def enumerate_candidates(spec: SearchSpec) -> Iterator[dict]:
    """Pruned candidates as numeric documents, lexicographic and deterministic."""
    for blk in _blocks(spec):
        for mu in blk.mus:
            for br in blk.brackets:
                yield candidate_document(spec, blk.alpha, blk.beta, mu, br)


def count_candidates(spec: SearchSpec) -> int:
    return sum(len(b) for b in _blocks(spec))


def sample_candidates(spec: SearchSpec, k: int) -> List[Tuple[int, dict]]:
    """k candidates at a deterministic stride through the pruned stream."""
    blocks = list(_blocks(spec))
    total = sum(len(b) for b in blocks)
    if total == 0:
        return []
    stride = max(1, total // k)
    wanted = list(range(0, total, stride))[:k]
    out = []
    base = 0
    it = iter(wanted)
    target = next(it, None)
    for blk in blocks:
        size = len(blk)
        while target is not None and target < base + size:
            m, b = divmod(target - base, len(blk.brackets))
            out.append((target, candidate_document(spec, blk.alpha, blk.beta, blk.mus[m], blk.brackets[b])))
            target = next(it, None)
        base += size
    return out


# -- staged oracle filter -------------------------------------------------------------


def _holds(N: NumericAlgebra, fn, arity: int) -> bool:
    basis = [N.basis(i) for i in range(N.n)]
    for idx in cartesian(range(N.n), repeat=arity):
        if any(fn(N, *(basis[i] for i in idx))):
            return False
    return True


def _passing_in_block(spec: SearchSpec, blk: _Block) -> List[Tuple[int, Optional[Tensor], Optional[Tensor]]]:
    """(offset, mu, bracket) of block members passing every fatal identity."""
    n = spec.dim
    N = NumericAlgebra(n, _num(blk.alpha), _num(blk.beta))
    mus = []
    for m, mu in enumerate(blk.mus):
        if mu is None:
            mus.append((m, None, None))
            continue
        N.mu, N.bracket = _num_t(mu), None
        if _holds(N, res_associativity, 3):
            mus.append((m, mu, N.mu))
    brs = []
    for b, br in enumerate(blk.brackets):
        if br is None:
            brs.append((b, None, None))
            continue
        N.mu, N.bracket = None, _num_t(br)
        if _holds(N, res_skew, 2) and _holds(N, res_jacobi, 3):
            brs.append((b, br, N.bracket))
    out = []
    nb = len(blk.brackets)
    for m, mu, mu_n in mus:
        for b, br, br_n in brs:
            if mu is not None and br is not None:
                N.mu, N.bracket = mu_n, br_n
                if not _holds(N, res_leibniz, 3):
                    continue
            out.append((m * nb + b, mu, br))
    return out


def _swap_key(spec: SearchSpec, alpha, beta, mu, br):
    """Slot vectors of the structure and of its e1 <-> e2 relabelling."""
    n = spec.dim
    perm = [1, 0] + list(range(2, n))

    def mflat(M, p):
        return tuple(M[p[i]][p[j]] for i in range(n) for j in range(n))

    def tflat(T, p):
        if T is None:
            return ()
        return tuple(T[p[i]][p[j]][p[k]] for i in range(n) for j in range(n) for k in range(n))

    ident = list(range(n))
    return (
        (mflat(alpha, ident), mflat(beta, ident), tflat(mu, ident), tflat(br, ident)),
        (mflat(alpha, perm), mflat(beta, perm), tflat(mu, perm), tflat(br, perm)),
    )


def _run_block(args):
    spec, blk = args
    return _passing_in_block(spec, blk)


def run_search(spec: SearchSpec, jobs: int = 1, match: bool = True) -> SearchResult:
    """Enumerate, filter with the numeric oracle, and match catalog families.

    Output order follows the enumeration index and does not depend on ``jobs``.
    """
    blocks = list(_blocks(spec))
    if jobs > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_block = list(pool.map(_run_block, [(spec, b) for b in blocks], chunksize=1))
    else:
        per_block = [_passing_in_block(spec, b) for b in blocks]
    structures, indices, matches = [], [], []
    base = 0
    families = _families(spec.dim) if match else []
    for blk, passing in zip(blocks, per_block):
        for off, mu, br in passing:
            if spec.symmetry_reduction and spec.dim >= 2:
                own, swapped = _swap_key(spec, blk.alpha, blk.beta, mu, br)
                if swapped < own:
                    continue
            doc = candidate_document(spec, blk.alpha, blk.beta, mu, br)
            structures.append(doc)
            indices.append(base + off)
            if match:
                slots = _candidate_slots(spec.dim, blk.alpha, blk.beta, mu, br)
                matches.append(_match_slots(slots, doc, families))
            else:
                matches.append([])
        base += len(blk)
    return SearchResult(structures, base, matches, indices)


def brute_force_search(spec: SearchSpec) -> List[int]:
    """Reference path: full oracle_verify on every candidate; returns passing indices."""
    return [i for i, doc in enumerate(enumerate_candidates(spec)) if _oracle_pass(doc)]


def _oracle_pass(doc: dict) -> bool:
    from .oracle import check

    N = numeric_algebra(doc)
    if doc["kind"] == "poisson":
        return oracle_verify(N).passed
    names = ["commuting_maps", "multiplicativity"]
    names += ["bihom_associativity"] if doc["kind"] == "associative" else ["bihom_skew_symmetry", "bihom_jacobi"]
    return all(check(N, name).passed for name in names)


# -- catalog matching ---------------------------------------------------------------


def _candidate_slots(n, alpha, beta, mu, br) -> Dict[tuple, Fraction]:
    slots = {}
    for name, M in (("alpha", alpha), ("beta", beta)):
        for i in range(n):
            for j in range(n):
                if M[i][j]:
                    slots[(name, i, j)] = M[i][j]
    for name, T in (("mu", mu), ("bracket", br)):
        if T is None:
            continue
        for i, j, k in cartesian(range(n), repeat=3):
            if T[i][j][k]:
                slots[(name, i, j, k)] = T[i][j][k]
    return slots


def _doc_slots(doc: dict) -> Dict[tuple, Fraction]:
    N = numeric_algebra(doc)
    n = N.n

    def tup(M):
        return tuple(tuple(Fraction(x) for x in row) for row in M)

    def tens(T):
        if T is None:
            return None
        return tuple(tuple(tuple(Fraction(x) for x in c) for c in row) for row in T)

    return _candidate_slots(n, tup(N.alpha), tup(N.beta), tens(N.mu), tens(N.bracket))


@dataclass(frozen=True)
class _Family:
    id: str
    document: dict
    slots: Tuple[Tuple[tuple, object], ...]  # (slot key, Scalar), nonzero scalars only
    support: frozenset
    nonzero: frozenset
    kinds: frozenset


@lru_cache(maxsize=None)
def _families(dim: int) -> List[_Family]:
    from .catalog import catalog_entries

    out = []
    for e in catalog_entries():
        if e.document["dimension"] != dim:
            continue
        A = e.algebra
        slots = []
        for name, L in (("alpha", A.alpha), ("beta", A.beta)):
            for i in range(dim):
                for j in range(dim):
                    s = L.entries[i][j]
                    if not s.is_zero():
                        slots.append(((name, i, j), s))
        for name, T in A.products():
            for i, j, k in cartesian(range(dim), repeat=3):
                s = T.constants[i][j][k]
                if not s.is_zero():
                    slots.append(((name, i, j, k), s))
        kinds = frozenset(name for name, _ in A.products())
        out.append(_Family(e.id, e.document, tuple(slots), frozenset(k for k, _ in slots),
                           frozenset(A.assumptions_nonzero), kinds))
    return out


def _univariate(poly, env, p):
    """Coefficients {degree: value} of poly in p after substituting env."""
    coeffs: Dict[int, Fraction] = {}
    for mono, c in poly.terms.items():
        deg = 0
        val = c
        for name, e in mono:
            if name == p:
                deg = e
            else:
                val *= env[name] ** e
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + val
    return coeffs


def _solve(fam: _Family, slots: Dict[tuple, Fraction]) -> Optional[Dict[str, Fraction]]:
    params = list(fam.document.get("parameters", []))
    env: Dict[str, Fraction] = {}
    eqs = [(s, slots.get(key, Fraction(0))) for key, s in fam.slots]
    while True:
        progress = False
        pending = []
        for s, v in eqs:
            unknown = [x for x in s.variables if x not in env]
            if not unknown:
                try:
                    if s.evaluate(env) != v:
                        return None
                except PoleAtPoint:
                    return None
                continue
            if len(unknown) == 1:
                p = unknown[0]
                num = _univariate(s.num, env, p)
                den = _univariate(s.den, env, p)
                if max(num) <= 1 and max(den) <= 1:
                    a = num.get(1, 0) - v * den.get(1, 0)
                    c = v * den.get(0, 0) - num.get(0, 0)
                    if a:
                        env[p] = Fraction(c) / a
                        progress = True
                        continue
                    if c:
                        return None
                    continue
            pending.append((s, v))
        eqs = pending
        if not eqs:
            break
        if not progress:
            # Every remaining equation couples several unknowns: pin the first one.
            s, v = eqs[0]
            p = sorted(x for x in s.variables if x not in env)[0]
            env[p] = Fraction(1) if (v or p in fam.nonzero) else Fraction(0)
    for p in params:
        if p not in env:
            env[p] = Fraction(1) if p in fam.nonzero else Fraction(0)
    if any(env[p] == 0 for p in fam.nonzero):
        return None
    return env


def _confirm(fam: _Family, env: Dict[str, Fraction], doc: dict) -> bool:
    """Independent exact re-check: instantiate the family and compare tensors."""
    try:
        inst = numeric_algebra(fam.document, env)
    except PoleAtPoint:
        return False
    target = numeric_algebra(doc)
    if inst.alpha != target.alpha or inst.beta != target.beta:
        return False
    n = target.n
    zero = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a, b in ((inst.mu, target.mu), (inst.bracket, target.bracket)):
        if (a or zero) != (b or zero):
            return False
    return True


def _match_slots(slots, doc, families) -> List[Tuple[str, Dict[str, Fraction]]]:
    keys = set(slots)
    kinds = {k[0] for k in keys if k[0] in ("mu", "bracket")}
    out = []
    for fam in families:
        if not keys <= fam.support or not kinds <= fam.kinds:
            continue
        env = _solve(fam, slots)
        if env is not None and _confirm(fam, env, doc):
            out.append((fam.id, env))
    return out


def match_family(doc: dict, catalog=None) -> List[Tuple[str, Dict[str, Fraction]]]:
    """Catalog families (and parameter values) that instantiate exactly to ``doc``."""
    if catalog is None:
        families = _families(doc["dimension"])
    else:
        ids = {getattr(e, "id", e) for e in catalog}
        families = [f for f in _families(doc["dimension"]) if f.id in ids]
    return _match_slots(_doc_slots(doc), doc, families)


# -- small-grid representation solver --------------------------------------------------


def find_representations(A, module_dim: int = 1, grid=(-1, 0, 1), kind: Optional[str] = None,
                         include_zero: bool = False, limit: Optional[int] = None, maps_grid=None):
    """Exhaustive search for representations with matrix entries drawn from ``grid``.

    ``kind`` selects the checker ("lie", "assoc" or "poisson"; default from
    the algebra).  gamma and nu range over ``maps_grid`` (default ``grid``).
    Returns every passing Representation in lexicographic order.
    """
    from .linalg import LinearMap
    from .representations import (
        Representation,
        check_assoc_representation,
        check_lie_representation,
        check_poisson_representation,
    )
    from .scalar import Scalar

    if kind is None:
        kind = {"lie": "lie", "associative": "assoc", "poisson": "poisson"}.get(A.kind)
        if kind is None:
            raise ValueError(f"no representation notion for kind {A.kind}")
    checker = {"lie": check_lie_representation, "assoc": check_assoc_representation,
               "poisson": check_poisson_representation}[kind]
    families = {"lie": ("rho_bracket",), "assoc": ("rho_mu",), "poisson": ("rho_bracket", "rho_mu")}[kind]
    m, n = module_dim, A.dim
    grid = [Scalar.from_rational(Fraction(g)) for g in grid]
    mgrid = grid if maps_grid is None else [Scalar.from_rational(Fraction(g)) for g in maps_grid]
    per_matrix = m * m
    n_rho = len(families) * n * per_matrix
    if len(grid) ** n_rho * len(mgrid) ** (2 * per_matrix) > DEFAULT_BUDGET:
        raise BudgetExceeded(len(grid) ** n_rho * len(mgrid) ** (2 * per_matrix), DEFAULT_BUDGET)

    def mat(flat):
        return LinearMap(tuple(tuple(flat[r * m:(r + 1) * m]) for r in range(m)))

    found = []
    for gn in cartesian(mgrid, repeat=2 * per_matrix):
        gamma, nu = mat(gn[:per_matrix]), mat(gn[per_matrix:])
        for flat in cartesian(grid, repeat=n_rho):
            if not include_zero and all(x.is_zero() for x in flat):
                continue
            mats = [mat(flat[t * per_matrix:(t + 1) * per_matrix]) for t in range(len(families) * n)]
            fams = {f: tuple(mats[t * n:(t + 1) * n]) for t, f in enumerate(families)}
            R = Representation(
                algebra=A, module_dim=m,
                rho_bracket=fams.get("rho_bracket"), rho_mu=fams.get("rho_mu"),
                gamma=gamma, nu=nu,
            )
            if checker(R).passed:
                found.append(R)
                if limit is not None and len(found) >= limit:
                    return found
    return found


def parse_grid(text: str) -> Tuple[Fraction, ...]:
    return tuple(Fraction(t.strip()) for t in text.split(",") if t.strip())


__all__ = [
    "SearchSpec",
    "SearchResult",
    "enumerate_candidates",
    "count_candidates",
    "sample_candidates",
    "run_search",
    "brute_force_search",
    "match_family",
    "oracle_verify",
    "find_representations",
    "parse_grid",
]
