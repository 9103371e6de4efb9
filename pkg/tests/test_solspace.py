import random

import flint
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from surfreparam.baselocus import monomials
from surfreparam.fiber import PROJ, gstar
from surfreparam.polycore import VarTable, parse
from surfreparam.solspace import (
    GenericMap,
    bilinear_conditions,
    linear_span_basis,
    solspace_algorithm,
    solve_system,
)

T = VarTable(["a", "b", "c", "d"])


def poly(s):
    return parse(s, T)


def monomial_basis(d):
    return [PROJ.from_dict({m: 1}) for m in monomials(d)]


def test_cubic_degree_two_is_empty(cubic):
    G = gstar(cubic, random.Random(0))
    assert solspace_algorithm(G, monomial_basis(2), 3, random.Random(0)) is None


def test_cubic_bilinear_condition_count(cubic):
    G = gstar(cubic, random.Random(0))
    assert len(bilinear_conditions(GenericMap.over(monomial_basis(3)), G)) == 40


def test_punctured_fiber_of_sign_symmetric_map():
    # (x^2, y^2, xy + 1) identifies (x, y) with (-x, -y) only
    from surfreparam import ProjParam
    P = ProjParam.parse("t1^2; t2^2; t1*t2 + t3^2; t3^2")
    G = gstar(P, random.Random(0))
    assert G.u.degree("t1") == 2 and G.ustar.degree("t1") == 1


def test_linear_span_basis_keeps_span():
    eqs = [poly("a*b + c"), poly("2*a*b + 2*c"), poly("a*b - d"), poly("c + d")]
    basis = linear_span_basis(eqs)
    assert len(basis) == 2
    # each original equation is a combination of the basis
    sy = [sympy.sympify(str(e).replace("^", "**")) for e in eqs + basis]
    mons = sorted({m for e in sy for m in sympy.Poly(e, *sympy.symbols("a b c d")).monoms()})
    rows = [[dict(sympy.Poly(e, *sympy.symbols("a b c d")).terms()).get(m, 0) for m in mons] for e in sy]
    M = sympy.Matrix(rows)
    assert M.rank() == sympy.Matrix(rows[len(eqs):]).rank() == 2


def test_solve_system_linear():
    comps = solve_system([poly("a + b - 1"), poly("a - b")], ["a", "b", "c", "d"])
    assert len(comps) == 1
    p = comps[0].sample(random.Random(0))
    assert p["a"] == p["b"] == flint.fmpq(1, 2)


def test_solve_system_empty():
    assert solve_system([poly("a*b - 1"), poly("a")], ["a", "b"]) == []


bilinear_eq = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                       min_size=1, max_size=3)


@settings(max_examples=60)
@given(bilinear_eq, st.integers(0, 10**6))
def test_solve_system_samples_are_solutions(coeffs, seed):
    # equations of the form (k1 a + k2 b)(c) + k3 d + k4 -- bilinear in (a,b) and (c,d)
    eqs = [poly(f"({k1}*a + {k2}*b)*c + {k3}*d + {k4}") for k1, k2, k3, k4 in coeffs]
    eqs = [e for e in eqs if not e.is_zero()]
    if not eqs:
        return
    comps = solve_system(eqs, ["a", "b", "c", "d"])
    rng = random.Random(seed)
    for comp in comps:
        p = comp.sample(rng)
        if p is None:
            continue
        assert comp.contains(p)
        for e in eqs:
            assert e.eval(p).constant_value() == 0


def test_sextic_components_satisfy_bilinear_conditions(sextic):
    from surfreparam.baselocus import base_locus, divisor_D, linear_system_basis
    rng = random.Random(0)
    G = gstar(sextic, rng)
    D = divisor_D(base_locus(sextic.forms, rng), 4)
    L = linear_system_basis(3, D)
    cs = solspace_algorithm(G, L.basis, 3, rng)
    assert cs is not None
    for comp in cs.components:
        p = comp.sample(rng)
        assert p is not None
        for c in cs.C13:
            assert c.eval({v: p[v] for v in c.variables()}).constant_value() == 0


def test_constraint_sets_serialize(sextic):
    import json
    from surfreparam.baselocus import base_locus, divisor_D, linear_system_basis
    rng = random.Random(0)
    G = gstar(sextic, rng)
    L = linear_system_basis(3, divisor_D(base_locus(sextic.forms, rng), 4))
    cs = solspace_algorithm(G, L.basis, 3, rng)
    doc = json.loads(json.dumps(cs.as_dict()))
    assert doc["degree"] == 3 and len(doc["basis"]) == 5
    assert len(doc["C13"]) == len(cs.C13) and len(doc["components"]) == len(cs.components)
