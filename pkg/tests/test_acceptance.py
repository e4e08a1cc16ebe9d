"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The conftest collects the lines and repeats them in the terminal summary.
"""

import itertools
import random
import time
from fractions import Fraction

from bihom import (
    check_admissible,
    commutator_bracket,
    depolarize,
    direct_sum,
    dump_algebra,
    invert_linear,
    load_algebra,
    parse_scalar,
    polarize,
    print_scalar,
    tensor_product,
    verify_bihom_poisson,
    yau_twist,
)
from bihom.catalog import catalog_entries, catalog_verify, get_entry
from bihom.errors import DivisionByZero, PoleAtPoint, Singular
from bihom.expr import eval_expr
from bihom.linalg import BiHomAlgebra, BilinearMap, LinearMap, compose_linear, determinant
from bihom.oracle import confirm_report, oracle_verify
from bihom.representations import (
    Representation,
    adjoint_representation,
    check_assoc_representation,
    check_lie_representation,
    check_poisson_representation,
    semidirect_assoc,
    semidirect_lie,
    semidirect_poisson,
    zero_representation,
)
from bihom.scalar import Scalar, scalar_arith, var
from bihom.search import SearchSpec, find_representations, run_search, sample_candidates

import strategies as st

LIE_LEIBNIZ = ("bihom_skew_symmetry", "bihom_jacobi", "bihom_leibniz")


def _rng(seed, tag):
    return random.Random(f"{seed}:{tag}")


# -- 1 ------------------------------------------------------------------------------------


def test_criterion_1_catalog_soundness(criterion, seed):
    t0 = time.perf_counter()
    results = catalog_verify("all", seed=seed)
    elapsed = time.perf_counter() - t0
    verdicts = dict((eid, r) for eid, r in results)
    unconfirmed = [
        (eid, c.name) for eid, r in results for c in r.failures() if c.oracle_confirmed is not True
    ]
    failing = sorted(eid for eid, r in results if not r.passed)
    ok = (
        elapsed < 30
        and len(results) == 23
        and verdicts["alg1"].passed
        and verdicts["alg4"].passed
        and not unconfirmed
    )
    criterion(1, ok, f"{len(results)} reports in {elapsed:.2f}s; confirmed FAILs: {failing}; unconfirmed: {unconfirmed}")
    assert ok


# -- 2 ------------------------------------------------------------------------------------


def test_criterion_2_twist_of_ordinary_poisson(criterion, seed):
    rng = _rng(seed, "c2")
    t0 = time.perf_counter()
    passed = 0
    for _ in range(20):
        mu, br = st.random_ordinary_poisson(rng, 2)
        a = st.diagonal_morphism(rng, 2, [mu, br])
        b = st.diagonal_morphism(rng, 2, [mu, br])
        P = st.algebra(2, mu=mu, bracket=br)
        T = yau_twist(P, st.lin(st.diag(a)), st.lin(st.diag(b)))
        passed += verify_bihom_poisson(T).passed
    elapsed = time.perf_counter() - t0
    ok = passed == 20 and elapsed < 60
    criterion(2, ok, f"{passed}/20 twisted algebras PASS in {elapsed:.2f}s")
    assert ok


# -- 3 ------------------------------------------------------------------------------------


def _twisted_associative(rng):
    n = rng.choice([2, 3])
    T = st.random_associative(rng, n)
    gs = st.gradings([T], n)
    g, h = rng.choice(gs), rng.choice(gs)
    s, t = var("s"), var("t")
    A0 = st.algebra(n, mu=T, kind="associative", parameters=("s", "t"), nonzero=("s", "t"))
    return yau_twist(A0, LinearMap.diagonal([s**e for e in g]), LinearMap.diagonal([t**e for e in h]))


def test_criterion_3_commutator_bracket(criterion, seed):
    rng = _rng(seed, "c3")
    clean = findings = unconfirmed = 0
    for _ in range(20):
        A = _twisted_associative(rng)
        P = commutator_bracket(A)
        report = verify_bihom_poisson(P, checks=("commuting_maps", "multiplicativity") + LIE_LEIBNIZ)
        if report.passed:
            clean += 1
        elif confirm_report(dump_algebra(P), report, rng):
            findings += 1
        else:
            unconfirmed += 1
    ok = unconfirmed == 0
    criterion(3, ok, f"{clean}/20 PASS, {findings} oracle-confirmed findings, {unconfirmed} unconfirmed")
    assert ok


# -- 4 ------------------------------------------------------------------------------------


def test_criterion_4_polarization_equivalence(criterion, seed):
    rng = _rng(seed, "c4")
    agree = admissible = 0
    for _ in range(200):
        A = st.random_plain_regular(rng, 2)
        adm = check_admissible(A).passed
        admissible += adm
        agree += adm == verify_bihom_poisson(polarize(A)).passed
    ok = agree == 200
    criterion(4, ok, f"{agree}/200 agree ({admissible} admissible)")
    assert ok


# -- 5 ------------------------------------------------------------------------------------


def _catalog_specializations(rng):
    """Numeric alpha = beta = id specializations, with subsets of parameters zeroed."""
    for entry in catalog_entries():
        doc = st.with_identity_maps(entry.document)
        params = doc["parameters"]
        nonzero = set(doc["assumptions_nonzero"])
        free = [p for p in params if p not in nonzero]
        max_size = len(free) if len(free) <= 6 else 2
        for size in range(max_size + 1):
            for zeroed in itertools.combinations(free, size):
                point = {p: Fraction(0 if p in zeroed else rng.choice(st.NONZERO)) for p in params}
                try:
                    yield st.instantiate(doc, point)
                except (PoleAtPoint, ZeroDivisionError):
                    continue


def _random_regular_poisson(rng):
    mu, br = st.random_ordinary_poisson(rng, 2)
    gs = st.gradings([mu, br], 2)
    g, h = rng.choice(gs), rng.choice(gs)
    s, t = var("s"), var("t")
    P0 = st.algebra(2, mu=mu, bracket=br, parameters=("s", "t"), nonzero=("s", "t"))
    return yau_twist(P0, LinearMap.diagonal([s**e for e in g]), LinearMap.diagonal([t**e for e in h]))


def _round_trips(P):
    Q = polarize(depolarize(P))
    return (Q.mu, Q.bracket, Q.alpha, Q.beta) == (P.mu, P.bracket, P.alpha, P.beta)


def test_criterion_5_round_trip(criterion, seed):
    rng = _rng(seed, "c5")
    corpus = []
    for doc in _catalog_specializations(rng):
        P = load_algebra(doc)
        if verify_bihom_poisson(P).label == "BiHom-Poisson":
            corpus.append(P)
    from_catalog = len(corpus)
    while len(corpus) < from_catalog + 50:
        P = _random_regular_poisson(rng)
        if verify_bihom_poisson(P).label == "BiHom-Poisson":
            corpus.append(P)
    bad = sum(not _round_trips(P) for P in corpus)
    ok = bad == 0 and from_catalog > 0
    criterion(5, ok, f"{len(corpus) - bad}/{len(corpus)} round trips exact ({from_catalog} catalog specializations + 50 random)")
    assert ok


# -- 6 ------------------------------------------------------------------------------------


def _identity_algebra(n, kind, mu=None, bracket=None):
    return st.algebra(n, mu=mu, bracket=bracket, kind=kind)


def _classical_fixtures():
    """(label, checker, semidirect, R) for classical alpha = beta = id representations."""
    e = st.zero_tensor
    out = []
    # 2-dim non-abelian and sl2, adjoint representation
    b2 = e(2)
    b2[0][1][1], b2[1][0][1] = 1, -1
    sl2 = e(3)
    for (i, j, k, c) in ((0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)):
        sl2[i][j][k], sl2[j][i][k] = c, -c
    for label, n, T in (("lie2 adjoint", 2, b2), ("sl2 adjoint", 3, sl2)):
        A = _identity_algebra(n, "lie", bracket=T)
        out.append((label, check_lie_representation, semidirect_lie, adjoint_representation(A)))
    # commutative associative algebras, regular representation and the 1-dim identity rep
    dual = e(2)
    dual[0][0][0] = dual[0][1][1] = dual[1][0][1] = 1
    A = _identity_algebra(2, "associative", mu=dual)
    out.append(("dual numbers regular", check_assoc_representation, semidirect_assoc, adjoint_representation(A)))
    one = e(1)
    one[0][0][0] = 1
    A1 = _identity_algebra(1, "associative", mu=one)
    R1 = Representation(A1, 1, None, (LinearMap.identity(1),), LinearMap.identity(1), LinearMap.identity(1))
    out.append(("1-dim identity", check_assoc_representation, semidirect_assoc, R1))
    # Poisson: adjoint representations of ordinary Poisson algebras
    P2 = _identity_algebra(2, "poisson", mu=dual, bracket=e(2))
    out.append(("dual numbers Poisson adjoint", check_poisson_representation, semidirect_poisson, adjoint_representation(P2)))
    mu3 = e(3)
    for (i, j, k) in ((0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2)):
        mu3[i][j][k] = 1
    br3 = e(3)
    br3[1][2][2], br3[2][1][2] = 1, -1
    P3 = _identity_algebra(3, "poisson", mu=mu3, bracket=br3)
    out.append(("3-dim Poisson adjoint", check_poisson_representation, semidirect_poisson, adjoint_representation(P3)))
    return out


def _solver_fixtures(limit=4):
    out = []
    A4 = get_entry("alg4").algebra
    for R in find_representations(A4, 1, (-1, 0, 1), limit=limit):
        out.append(("alg4 solver", check_poisson_representation, semidirect_poisson, R))
    for eid in ("alg10", "alg13", "alg19", "alg20"):
        doc = get_entry(eid).document
        for values in itertools.product((1, 2, -1), repeat=len(doc["parameters"])):
            point = dict(zip(doc["parameters"], map(Fraction, values)))
            A = load_algebra(st.instantiate(doc, point))
            if not determinant(A.alpha).is_zero():
                break
        reps = [R for R in find_representations(A, 1, (-1, 0, 1)) if not determinant(R.nu).is_zero()]
        out.extend((f"{eid} solver", check_poisson_representation, semidirect_poisson, R) for R in reps[:limit])
    return out


def test_criterion_6_semidirect_products(criterion, seed):
    rng = _rng(seed, "c6")
    fixtures = [
        (f"{entry.id} zero", check_poisson_representation, semidirect_poisson, zero_representation(entry.algebra))
        for entry in catalog_entries()
    ]
    fixtures += _classical_fixtures() + _solver_fixtures()
    used = clean = 0
    findings, unconfirmed, rejected, skipped = [], [], [], []
    for label, checker, semidirect, R in fixtures:
        if not checker(R).passed:
            rejected.append(label)
            continue
        try:
            S, report = semidirect(R.algebra, R)
        except Singular:
            skipped.append(label)
            continue
        used += 1
        if report.passed:
            clean += 1
        elif confirm_report(dump_algebra(S), report, rng):
            findings.append(label)
        else:
            unconfirmed.append(label)
    ok = not unconfirmed and used > 0
    criterion(
        6,
        ok,
        f"{used} fixtures: {clean} PASS, confirmed findings {findings}, unconfirmed {unconfirmed}; "
        f"rejected by checker {rejected}; singular maps {len(skipped)}",
    )
    assert ok


# -- 7 ------------------------------------------------------------------------------------


def test_criterion_7_sum_and_tensor(criterion):
    alg1, alg4 = get_entry("alg1").algebra, get_entry("alg4").algebra
    s = verify_bihom_poisson(direct_sum(alg1, alg4))
    lam = var("lam")
    scaled = BiHomAlgebra(1, LinearMap.identity(1), LinearMap.identity(1),
                          mu=BilinearMap((((lam,),),)), kind="associative", parameters=("lam",))
    unital = BiHomAlgebra(1, LinearMap.identity(1), LinearMap.identity(1),
                          mu=BilinearMap((((Scalar.from_rational(1),),),)), kind="associative")
    t_scaled = verify_bihom_poisson(tensor_product(alg4, scaled))
    t_unital = verify_bihom_poisson(tensor_product(alg4, unital))
    ok = s.passed and t_scaled.passed and t_unital.passed
    criterion(7, ok, f"alg1+alg4 {s.verdict}, alg4 x unital {t_unital.verdict}, alg4 x lambda {t_scaled.verdict}")
    assert ok


# -- 8 ------------------------------------------------------------------------------------


def test_criterion_8_oracle_equivalence_and_search(criterion):
    spec = SearchSpec(2, (0, 1))
    samples = sample_candidates(spec, 1000)
    agree = sum(oracle_verify(doc).passed == verify_bihom_poisson(load_algebra(doc)).passed for _, doc in samples)
    t0 = time.perf_counter()
    result = run_search(spec)
    elapsed = time.perf_counter() - t0
    uncat = set(result.uncatalogued)
    covered = all(bool(m) or i in uncat for i, m in enumerate(result.matches))
    ok = len(samples) == 1000 and agree == 1000 and elapsed < 300 and covered
    criterion(
        8,
        ok,
        f"{agree}/{len(samples)} agree; search {elapsed:.1f}s, {result.count_examined} examined, "
        f"{len(result.structures)} pass, {len(result.structures) - len(uncat)} matched, {len(uncat)} uncatalogued",
    )
    assert ok


# -- 9 ------------------------------------------------------------------------------------


def _homomorphism_holds(rng, a, b, op):
    if op == "pow":
        b = rng.randint(0, 3)
    if op == "div" and b.is_zero():
        try:
            scalar_arith(op, a, b)
        except DivisionByZero:
            return True
        return False
    result = scalar_arith(op, a, b)
    for _ in range(50):
        p = st.random_point(rng)
        try:
            x, y, r = a.evaluate(p), (b if op == "pow" else b.evaluate(p)), result.evaluate(p)
        except PoleAtPoint:
            continue
        if op == "div" and y == 0:
            continue
        expected = {"add": lambda: x + y, "sub": lambda: x - y, "mul": lambda: x * y,
                    "div": lambda: x / y, "neg": lambda: -x, "pow": lambda: x**y}[op]()
        return r == expected
    return True


def test_criterion_9_kernel_properties(criterion, seed):
    rng = _rng(seed, "c9")
    ops = ("add", "sub", "mul", "div", "neg", "pow")
    hom = sum(
        _homomorphism_holds(rng, st.random_scalar(rng), st.random_scalar(rng), rng.choice(ops))
        for _ in range(200)
    )
    trips = 0
    for _ in range(500):
        s = st.random_scalar(rng)
        trips += parse_scalar(print_scalar(s), st.VARS) == s
    inv = 0
    for k in range(50):
        n = 2 if k % 2 == 0 else 3
        L = st.random_invertible(rng, n)
        inv += compose_linear(invert_linear(L), L) == LinearMap.identity(n)
    ok = hom == 200 and trips == 500 and inv == 50
    criterion(9, ok, f"homomorphism {hom}/200, round trip {trips}/500, inverse {inv}/50")
    assert ok


def test_eval_expr_matches_parsed_scalar(seed):
    # sanity link between the two expression evaluators used above
    rng = _rng(seed, "c9-eval")
    for _ in range(50):
        s = st.random_scalar(rng)
        p = st.random_point(rng)
        try:
            expected = s.evaluate(p)
        except PoleAtPoint:
            continue
        assert eval_expr(print_scalar(s), p) == expected
