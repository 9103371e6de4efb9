"""Acceptance criteria.  Each test records one PASS/FAIL line, printed in the
terminal summary.  Time limits and tolerances are pinned here."""

import math
import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from roundtrip import case

import conftest
from conftest import CUBIC_Q, CUBIC_S, SEXTIC_Q, SEXTIC_S, SEXTIC_S_MISPRINT
from surfreparam import PlaneMap, ProjParam
from surfreparam.baselocus import (
    base_locus,
    divisor_D,
    implicit_equation,
    linear_system_basis,
    monomials,
    surface_degree,
)
from surfreparam.fiber import FIBER, PROJ, deg_map_param, deg_map_planemap, gstar
from surfreparam.groebner import buchberger, in_ideal, is_groebner
from surfreparam.polycore import VarTable, gcd, normalize, parse, resultant, sylvester_resultant
from surfreparam.reparam import BudgetExhausted, reparametrize_general, verify_solution
from surfreparam.solspace import solspace_algorithm

LIMIT_FIBER = 5.0
LIMIT_DEGREE_TWO = 30.0
LIMIT_CUBIC = 300.0
LIMIT_SEXTIC = 300.0
FUZZ_CASES = 20
FUZZ_PASS_RATE = 0.90
KERNEL_INSTANCES = 100


def check(n: int, ok: bool, detail: str) -> None:
    conftest.ACCEPTANCE_LINES.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


# --- 1 ------------------------------------------------------------------------------


def test_criterion_1_cubic_fiber(cubic):
    (G, n), dt = timed(lambda: (gstar(cubic, random.Random(0)), deg_map_param(cubic)))
    ok = (n == 3 and G.is_identity_change()
          and normalize(G.ustar) == parse("h1^2 + h1*t1 + t1^2", FIBER)
          and G.v_num == FIBER.var("h2") * G.v_den
          and dt < LIMIT_FIBER)
    check(1, ok, f"degMap = {n}, u* = {normalize(G.ustar)}, t2 = h2, {dt:.2f} s (< {LIMIT_FIBER:.0f} s)")


# --- 2 ------------------------------------------------------------------------------


def test_criterion_2_cubic_degree_two_empty(cubic):
    rng = random.Random(0)
    G = gstar(cubic, rng)
    basis = [PROJ.from_dict({m: 1}) for m in monomials(2)]
    cs, dt = timed(solspace_algorithm, G, basis, 3, rng)
    check(2, cs is None and dt < LIMIT_DEGREE_TWO,
          f"solution space at d=2 empty: {cs is None}, {dt:.2f} s (< {LIMIT_DEGREE_TWO:.0f} s)")


# --- 3 ------------------------------------------------------------------------------


def test_criterion_3_cubic_degree_three(cubic, cubic_solution):
    sol = cubic_solution
    cert = verify_solution(cubic, sol.Q, sol.S)
    Sa, Qa = PlaneMap.parse(CUBIC_S), ProjParam.parse(CUBIC_Q)
    golden = verify_solution(cubic, Qa, Sa)
    third = Qa.compose(Sa).forms
    # third coordinate of Q_a o S_a over the fourth is t2 in affine terms
    identity = (third[2] * PROJ.var("t3") - PROJ.var("t2") * third[3]).is_zero()
    ok = (cert.passed and sol.certificate.d == 3 and (cert.degmap_S, cert.degmap_Q) == (3, 1)
          and golden.passed and identity and sol.elapsed < LIMIT_CUBIC)
    check(3, ok, f"emitted pair verified: {cert.passed} at d = {sol.certificate.d}; "
                 f"reference pair verified: {golden.passed}; third coordinate = t2: {identity}; "
                 f"{sol.elapsed:.1f} s (< {LIMIT_CUBIC:.0f} s)")


# --- 4 ------------------------------------------------------------------------------

REFERENCE_L3 = ["t1^3 - t1^2*t3", "t1^2*t2", "t1*t2^2", "t1*t2*t3", "t2^2*t3"]


def _span_equal(A, B):
    import sympy
    mons = monomials(3)
    rows = lambda fs: sympy.Matrix([[int(f.coefficients_in(["t1", "t2", "t3"]).get(m, PROJ.zero())
                                         .constant_value()) for m in mons] for f in fs])
    ra, rb = rows(A), rows(B)
    return ra.rank() == rb.rank() == sympy.Matrix.vstack(ra, rb).rank()


def test_criterion_4_sextic_empty_base(sextic, sextic_solution):
    sol = sextic_solution
    rep = base_locus(sextic.forms, random.Random(0))
    D = divisor_D(rep, surface_degree(sextic, rep))
    L = linear_system_basis(3, D)
    span = _span_equal(L.basis, [parse(t, PROJ) for t in REFERENCE_L3])
    cert = verify_solution(sextic, sol.Q, sol.S)
    lam = verify_solution(sextic, ProjParam.parse(SEXTIC_Q), PlaneMap.parse(SEXTIC_S))
    ok = (sol.diagnostics["ell"] == 3 and str(D) == "2*(0:0:1) + 1*(1:0:1) + 1*(0:1:0)"
          and L.dimension == 5 and span and cert.passed and lam.passed and sol.elapsed < LIMIT_SEXTIC)
    check(4, ok, f"ell = {sol.diagnostics['ell']}, D = {D}, dim L = {L.dimension}, "
                 f"same span as reference: {span}; emitted pair verified: {cert.passed}; "
                 f"reference Q with the specialized plane map verified: {lam.passed}; "
                 f"{sol.elapsed:.1f} s (< {LIMIT_SEXTIC:.0f} s)")


@pytest.mark.xfail(strict=True, reason="the reference plane map as given has a wrong first "
                                       "coordinate and does not compose to the input")
def test_criterion_4_reference_pair_as_given(sextic):
    cert = verify_solution(sextic, ProjParam.parse(SEXTIC_Q), PlaneMap.parse(SEXTIC_S_MISPRINT))
    check(4, cert.passed, f"reference pair as given verified: {cert.passed} "
                          f"(composition {cert.composition_checked}) -- known misprint, expected to fail")


# --- 5 ------------------------------------------------------------------------------


def degree_formula(S: PlaneMap) -> tuple[int, int, int]:
    """(deg S^2, degMap S, mult of the base locus of S)."""
    return S.degree ** 2, deg_map_planemap(S), base_locus(list(S.forms), random.Random(0)).total


def _forced_plane_map(rng, d, k):
    mons = [m for m in monomials(d) if m[0] + m[1] >= k]
    return PlaneMap(tuple(PROJ.from_dict({m: rng.randint(-3, 3) for m in mons}) for _ in range(3)))


@settings(max_examples=30)
@given(st.sampled_from([(2, 0), (2, 1), (3, 1), (3, 2)]), st.integers(0, 10**6))
def test_criterion_5_degree_formula_random_maps(dk, seed):
    S = _forced_plane_map(random.Random(seed), *dk)
    try:
        if not S.common_factor().is_constant():
            return
        sq, dm, mult = degree_formula(S)
    except ValueError:  # not dominant or a degenerate fiber
        return
    assert sq == dm + mult


def test_criterion_5_degree_formula(sextic, cubic_solution, sextic_solution, fuzz_results):
    emitted = [cubic_solution.S, sextic_solution.S] + [r.S for r in fuzz_results if r is not None]
    bad = [str(S) for S in emitted if (lambda t: t[0] != t[1] + t[2])(degree_formula(S))]
    rep = base_locus(sextic.forms, random.Random(0))
    surf = implicit_equation(sextic).total_degree()  # elimination, independent of the formula
    n = deg_map_param(sextic)
    mS = base_locus(list(sextic_solution.S.forms), random.Random(0)).total
    chain = sextic.degree ** 2 == n * surf + rep.total and (sextic.degree, n, surf, rep.total) == (6, 3, 4, 24)
    ok = not bad and chain and mS == rep.total // surf == 6
    check(5, ok, f"deg(S)^2 = degMap(S) + mult(B(S)) on {len(emitted) - len(bad)}/{len(emitted)} emitted maps; "
                 f"36 = {n}*{surf} + {rep.total}: {chain}; mult(B(S)) = {mS}")


# --- 6 ------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def fuzz_results():
    out = []
    for seed in range(FUZZ_CASES):
        P, _, _ = case(seed)
        n = deg_map_param(P)
        base = math.isqrt(n - 1) + 1
        try:
            sol = reparametrize_general(P, seed=seed, d_max=base + 2)
            out.append(sol if sol.certificate.passed else None)
        except BudgetExhausted:
            out.append(None)
    return out


def test_criterion_6_round_trip_fuzz(fuzz_results):
    passed = sum(r is not None for r in fuzz_results)
    rate = passed / len(fuzz_results)
    failing = [k for k, r in enumerate(fuzz_results) if r is None]
    check(6, len(fuzz_results) >= 20 and rate >= FUZZ_PASS_RATE,
          f"{passed}/{len(fuzz_results)} certificate-passing (rate {rate:.2f} >= {FUZZ_PASS_RATE}); "
          f"exhausted seeds: {failing}")


# --- 7 ------------------------------------------------------------------------------

XYZ = VarTable(["x", "y", "z"])


def _rand_poly(rng, table, vars, max_deg, terms, bound=5):
    d = {}
    for _ in range(terms):
        exps = [0] * len(table.names)
        for _ in range(rng.randint(0, max_deg)):
            exps[table.names.index(rng.choice(vars))] += 1
        d[tuple(exps)] = rng.randint(-bound, bound)
    return table.from_dict(d)


def test_criterion_7_kernel_suites():
    rng = random.Random(7)
    vars = ["x", "y", "z"]
    spoly_ok = member_ok = res_ok = dual_ok = 0
    for k in range(KERNEL_INSTANCES):
        gens = [g for g in (_rand_poly(rng, XYZ, vars, 2, 3) for _ in range(rng.randint(1, 3))) if not g.is_zero()]
        if not gens:
            gens = [XYZ.var("x")]
        order = "lex" if k % 2 else "grevlex"
        gb = buchberger(gens, vars, order)
        spoly_ok += is_groebner(gb, vars, order)
        member_ok += all(in_ideal(g, gb, vars, order) for g in gens)

        # factored corpus: a shared factor in x on even k
        a = _rand_poly(rng, XYZ, ["x", "y"], 2, 3)
        b = _rand_poly(rng, XYZ, ["x", "y"], 2, 3)
        c = _rand_poly(rng, XYZ, ["x", "y"], 1, 2) + XYZ.var("x") if k % 2 == 0 else XYZ.one()
        f, g = a * c, b * c
        if f.degree("x") < 1 or g.degree("x") < 1:
            f, g = f + XYZ.var("x") ** 2, g + XYZ.var("x")
        r1 = resultant(f, g, "x")
        r2 = sylvester_resultant(f, g, "x")
        dual_ok += (r1 - r2).is_zero() or (r1 + r2).is_zero()
        res_ok += r1.is_zero() == (gcd(f, g).degree("x") > 0)
    n = KERNEL_INSTANCES
    ok = spoly_ok == member_ok == res_ok == dual_ok == n
    check(7, ok, f"S-polynomials reduce to zero {spoly_ok}/{n}; generators are members {member_ok}/{n}; "
                 f"resultant = 0 iff common factor {res_ok}/{n}; two resultant routes agree {dual_ok}/{n}")
