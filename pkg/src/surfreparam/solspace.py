"""Plane maps of a given degree whose generic fiber contains a given fiber.

Three generic forms e_i = sum_k lam_{i,k} b_k over a basis b of candidate
forms describe every plane map (e1 : e2 : e3).  The fiber condition turns
into polynomial conditions on the undetermined coefficients lam:

* bilinear conditions in (lam_1, lam_3): the normal form of
  e1(h) e3(t) - e1(t) e3(h) modulo the punctured fiber must vanish;
* the same conditions for (lam_2, lam_3), obtained by renaming;
* degree conditions: the plane-map R-polynomial must drop to the target
  degree, which makes its higher coefficients vanish.

Solutions are reported as parametric components (see :class:`Component`),
filtered by the non-vanishing sets U1 (e3 is not zero), U2 (the map is
dominant) and, per component, U3 (the target coefficient is not zero).
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import flint

from .fiber import PROJ, ShapeFiber
from .polycore import (
    MPoly,
    RatFrac,
    VarTable,
    jacobian_numerator,
    normalize,
    poly_key,
    primpart,
    resultant,
    rref,
    to_str,
)

log = logging.getLogger(__name__)

H = ("h1", "h2")
T = ("t1", "t2")


class SolveBudgetError(RuntimeError):
    """The case split exceeded its branch budget."""


def lam(i: int, k: int) -> str:
    return f"l{i}_{k}"


@dataclass
class GenericMap:
    """Three generic forms over a common basis of degree-d forms."""

    basis: list[MPoly]
    table: VarTable

    @classmethod
    def over(cls, basis: Sequence[MPoly]) -> "GenericMap":
        n = len(basis)
        names = [lam(i, k) for i in (1, 2, 3) for k in range(1, n + 1)] + ["h1", "h2", "t1", "t2", "t3"]
        return cls(list(basis), VarTable(names))

    @property
    def n(self) -> int:
        return len(self.basis)

    def lams(self, i: int) -> list[str]:
        return [lam(i, k) for k in range(1, self.n + 1)]

    def form(self, i: int, values: dict | None = None) -> MPoly:
        """e_i as a form in t1, t2, t3 (symbolic unless ``values`` are given)."""
        acc = self.table.zero()
        for name, b in zip(self.lams(i), self.basis):
            c = values[name] if values is not None else self.table.var(name)
            acc = acc + b.to_table(self.table) * c
        return acc

    def affine(self, i: int) -> MPoly:
        return self.form(i).eval({"t3": 1})

    def at_h(self, i: int) -> MPoly:
        return self.affine(i).rename({"t1": "h1", "t2": "h2"})

    def ghat(self, i: int) -> MPoly:
        """e_i(h) e_3(t) - e_i(t) e_3(h)."""
        return self.at_h(i) * self.affine(3) - self.affine(i) * self.at_h(3)

    @property
    def degree(self) -> int:
        return self.basis[0].total_degree()


# ---------------------------------------------------------------------------
# parametric components


@dataclass
class Component:
    """Constructible set given by a triangular parametrization.

    Variables in ``free`` range over all values; every other variable of
    ``subs`` is a rational function of the free ones; ``guards`` must not
    vanish; ``residual`` lists equations the case split could not make
    triangular (their variables stay in ``free``).
    """

    table: VarTable
    variables: tuple[str, ...]
    subs: dict[str, RatFrac]
    guards: list[MPoly] = field(default_factory=list)
    residual: list[MPoly] = field(default_factory=list)
    extra_nonzero: list[list[MPoly]] = field(default_factory=list)

    @property
    def free(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if v not in self.subs)

    @property
    def dimension(self) -> int:
        return len(self.free) - len(self.residual)

    def value(self, var: str) -> RatFrac:
        if var in self.subs:
            return self.subs[var]
        return RatFrac(self.table.var(var), reduce=False)

    def assignment(self) -> dict[str, RatFrac]:
        return {v: self.value(v) for v in self.variables}

    def evaluate(self, free_values: dict) -> dict[str, flint.fmpq] | None:
        """Full point from values of the free variables (None if a guard vanishes)."""
        vals = {v: flint.fmpq(free_values[v]) for v in self.free}
        for g in self.guards:
            if g.eval(vals).constant_value() == 0:
                return None
        for r in self.residual:
            if r.eval(vals).constant_value() != 0:
                return None
        out = dict(vals)
        for v, e in self.subs.items():
            d = e.den.eval(vals).constant_value()
            if d == 0:
                return None
            out[v] = e.num.eval(vals).constant_value() / d
        return out

    def contains(self, point: dict) -> bool:
        """Membership of a full rational point."""
        vals = {v: point[v] for v in self.free}
        if any(g.eval(vals).constant_value() == 0 for g in self.guards):
            return False
        if any(r.eval(vals).constant_value() != 0 for r in self.residual):
            return False
        for v, e in self.subs.items():
            d = e.den.eval(vals).constant_value()
            if d == 0 or e.num.eval(vals).constant_value() / d != point[v]:
                return False
        return True

    def sample(self, rng: random.Random, bound: int = 5, tries: int = 200) -> dict | None:
        """Random rational point with small integer free values."""
        for _ in range(tries):
            fv = {v: rng.randint(-bound, bound) for v in self.free}
            if self.residual:
                fv = _solve_residual(self, fv, rng, bound)
                if fv is None:
                    continue
            p = self.evaluate(fv)
            if p is not None:
                return p
        return None

    def substitute_into(self, p: MPoly) -> MPoly:
        """Numerator of p after substituting the component (denominators are guards)."""
        return _subs_num(p, self.subs)

    def __str__(self) -> str:
        parts = [f"{v} = {self.value(v)}" for v in self.variables]
        s = "{" + ", ".join(parts) + "}"
        if self.residual:
            s += " with " + ", ".join(f"{r} = 0" for r in self.residual)
        return s


def _solve_residual(comp: Component, fv: dict, rng: random.Random, bound: int) -> dict | None:
    """Fix the free values except one per residual equation, then take a rational root."""
    fv = dict(fv)
    pending = list(comp.residual)
    for r in pending:
        vals = {k: v for k, v in fv.items()}
        vs = [v for v in r.variables()]
        if not vs:
            return None
        x = vs[-1]
        vals.pop(x, None)
        uni = r.eval(vals)
        if uni.is_zero():
            continue
        roots = _rational_roots(uni, x)
        if not roots:
            return None
        fv[x] = rng.choice(roots)
    return fv


def _rational_roots(p: MPoly, var: str) -> list[flint.fmpq]:
    _, facs = p.raw.factor()
    out = []
    for f, _ in facs:
        g = MPoly(p.table, f)
        if g.degree(var) == 1 and len(g.variables()) == 1:
            c1, = [c for m, c in g.raw.terms() if m[g.table.index(var)] == 1]
            c0 = sum((c for m, c in g.raw.terms() if m[g.table.index(var)] == 0), flint.fmpq(0))
            out.append(-c0 / c1)
    return out


def _horner_sub(p: MPoly, var: str, num: MPoly, den: MPoly) -> tuple[MPoly, int]:
    """(p(var = num/den) * den^D, D) with D = deg_var p."""
    coeffs = p.univariate_coefficients(var)
    D = len(coeffs) - 1
    if D <= 0:
        return p, 0
    acc = coeffs[D]
    dpow = [p.table.one()]
    for _ in range(D):
        dpow.append(dpow[-1] * den)
    for k in range(D - 1, -1, -1):
        acc = acc * num + coeffs[k] * dpow[D - k]
    return acc, D


def _subs_num(p: MPoly, subs: dict[str, RatFrac]) -> MPoly:
    for v, e in subs.items():
        if p.degree(v) > 0:
            p, _ = _horner_sub(p, v, e.num.to_table(p.table), e.den.to_table(p.table))
    return p


def _subs_frac(e: RatFrac, var: str, num: MPoly, den: MPoly) -> RatFrac:
    n, dn = _horner_sub(e.num, var, num, den)
    d, dd = _horner_sub(e.den, var, num, den)
    if dd > dn:
        n = n * den ** (dd - dn)
    elif dn > dd:
        d = d * den ** (dn - dd)
    return RatFrac(n, d)


def _factors(p: MPoly) -> list[MPoly]:
    if p.is_constant():
        return []
    _, facs = p.raw.factor()
    return [normalize(MPoly(p.table, f)) for f, _ in facs if not f.is_constant()]


class _Branch:
    __slots__ = ("eqs", "subs", "guards")

    def __init__(self, eqs, subs, guards):
        self.eqs: list[MPoly] = eqs
        self.subs: dict[str, RatFrac] = subs
        self.guards: dict[tuple, MPoly] = guards


def solve_system(eqs: Sequence[MPoly], variables: Sequence[str], *, guards: Sequence[MPoly] = (),
                 subs: dict[str, RatFrac] | None = None,
                 prune: Callable[[dict[str, RatFrac]], bool] | None = None,
                 rank: Callable[[str], int] | None = None,
                 max_branches: int = 200000) -> list[Component]:
    """Triangular case split of a polynomial system.

    Repeatedly pick an equation a*x + b linear in some unknown x and branch
    on a != 0 (then x = -b/a) versus a = b = 0.  Reducible equations are split
    into their irreducible factors.  Branches where a guard vanishes, or for
    which ``prune`` returns True, are dropped.  The returned components
    cover the solution set; they may overlap on lower-dimensional pieces.
    ``rank`` orders the unknowns: lower ranks are solved for first.
    """
    variables = tuple(variables)
    table = eqs[0].table if eqs else (guards[0].table if guards else None)
    eqs = linear_span_basis(eqs)
    g0: dict[tuple, MPoly] = {}
    for g in guards:
        for f in _factors(g):
            g0[poly_key(f)] = f
    stack = [_Branch([e for e in eqs], dict(subs or {}), g0)]
    out: list[Component] = []
    seen = 0
    while stack:
        seen += 1
        if seen > max_branches:
            raise SolveBudgetError(f"more than {max_branches} branches")
        br = stack.pop()
        if not _simplify(br):
            continue
        if prune is not None and prune(br.subs):
            continue
        if not br.eqs:
            out.append(Component(table, variables, br.subs, _denominator_guards(br.subs)))
            continue
        reducible = next((i for i, e in enumerate(br.eqs) if len(_factors(e)) > 1), None)
        if reducible is not None:
            facs = _factors(br.eqs[reducible])
            rest = br.eqs[:reducible] + br.eqs[reducible + 1:]
            for k in range(len(facs) - 1, -1, -1):
                gs = dict(br.guards)
                for f in facs[:k]:
                    gs[poly_key(f)] = f
                stack.append(_Branch(rest + [facs[k]], dict(br.subs), gs))
            continue
        pick = _pick(br, variables, rank)
        if pick is None:
            out.append(Component(table, variables, br.subs, _denominator_guards(br.subs), residual=list(br.eqs)))
            continue
        i, x, a, b = pick
        rest = br.eqs[:i] + br.eqs[i + 1:]
        a_known = all(poly_key(f) in br.guards for f in _factors(a))
        if not a_known:
            stack.append(_Branch(rest + [a, b], dict(br.subs), dict(br.guards)))
        stack.append(_assign(br, rest, x, -b, a))
    log.debug("case split: %d branches, %d components", seen, len(out))
    return out


def linear_span_basis(polys: Sequence[MPoly]) -> list[MPoly]:
    """Echelon basis of the Q-span of ``polys`` (same zero set, usually far fewer equations)."""
    polys = [p for p in polys if not p.is_zero()]
    if len(polys) < 2:
        return list(polys)
    table = polys[0].table
    mons = sorted({m for p in polys for m, _ in p.raw.terms()}, reverse=True)
    col = {m: j for j, m in enumerate(mons)}
    rows = []
    for p in polys:
        r = [0] * len(mons)
        for m, c in p.raw.terms():
            r[col[m]] = c
        rows.append(r)
    R, _ = rref(rows, len(mons))
    return [normalize(table.from_dict({m: c for m, c in zip(mons, r) if c != 0})) for r in R]


def _denominator_guards(subs: dict[str, RatFrac]) -> list[MPoly]:
    """Guards a finished branch really needs.

    The substituted equations vanish identically as rational functions, so
    the parametrization is valid wherever its denominators are nonzero; the
    guards that only kept sibling branches disjoint can be dropped.
    """
    out: dict[tuple, MPoly] = {}
    for e in subs.values():
        for f in _factors(e.den):
            out[poly_key(f)] = f
    return list(out.values())


def _simplify(br: _Branch) -> bool:
    """Factor, drop known-nonzero factors and duplicates; False if inconsistent."""
    eqs = []
    keys = set()
    for e in br.eqs:
        if e.is_zero():
            continue
        facs = [f for f in _factors(e) if poly_key(f) not in br.guards]
        if not facs:
            return False
        prod = facs[0]
        for f in facs[1:]:
            prod = prod * f
        prod = normalize(prod)
        k = poly_key(prod)
        if k not in keys:
            keys.add(k)
            eqs.append(prod)
    br.eqs = eqs
    return True


def _pick(br: _Branch, variables, rank=None):
    best = None
    for i, e in enumerate(br.eqs):
        for x in e.variables():
            if x not in variables or e.degree(x) != 1:
                continue
            cs = e.coefficients_in([x])
            a = cs[(1,)]
            b = cs.get((0,), e.table.zero())
            known = a.is_constant() or all(poly_key(f) in br.guards for f in _factors(a))
            score = (0 if known else 1, rank(x) if rank else 0, len(a), len(e), variables.index(x))
            if best is None or score < best[0]:
                best = (score, i, x, a, b)
    if best is None:
        return None
    return best[1:]


def _assign(br: _Branch, rest: list[MPoly], x: str, num: MPoly, den: MPoly) -> _Branch:
    guards = dict(br.guards)
    for f in _factors(den):
        guards[poly_key(f)] = f
    new_guards: dict[tuple, MPoly] = {}
    for k, g in guards.items():
        if g.degree(x) > 0:
            g2, _ = _horner_sub(g, x, num, den)
            if g2.is_zero():
                return _Branch([g.table.one()], {}, {})
            for f in _factors(g2):
                new_guards[poly_key(f)] = f
        else:
            new_guards[k] = g
    eqs = [(_horner_sub(e, x, num, den)[0] if e.degree(x) > 0 else e) for e in rest]
    e_x = RatFrac(num, den)
    subs = {}
    for v, e in br.subs.items():
        if e.num.degree(x) > 0 or e.den.degree(x) > 0:
            subs[v] = _subs_frac(e, x, num, den)
        else:
            subs[v] = e
    subs[x] = e_x
    return _Branch(eqs, subs, new_guards)


def drop_absorbed(comps: list[Component], rng: random.Random, samples: int = 2) -> list[Component]:
    """Remove components whose random points all lie in another component."""
    order = sorted(range(len(comps)), key=lambda i: -comps[i].dimension)
    kept: list[int] = []
    for i in order:
        c = comps[i]
        pts = [c.sample(rng, bound=50) for _ in range(samples)]
        pts = [p for p in pts if p is not None]
        if pts and any(all(comps[j].contains(p) for p in pts) for j in kept):
            continue
        kept.append(i)
    return [comps[i] for i in sorted(kept)]


# ---------------------------------------------------------------------------
# the conditions


def _coefficient_polys(p: MPoly, vars: Sequence[str]) -> list[MPoly]:
    out = []
    keys = set()
    for _, c in sorted(p.coefficients_in(vars).items(), reverse=True):
        if c.is_zero():
            continue
        k = poly_key(c)
        if k not in keys:
            keys.add(k)
            out.append(c)
    return out


def build_U1_U2(E: GenericMap) -> tuple[list[MPoly], list[MPoly]]:
    """U1: the lam_3 entries.  U2: coefficients of the reduced Jacobian numerator."""
    U1 = [E.table.var(v) for v in E.lams(3)]
    e1, e2, e3 = (E.affine(i) for i in (1, 2, 3))
    J = jacobian_numerator(RatFrac(e1, e3), RatFrac(e2, e3), T)
    U2 = _coefficient_polys(J, T)
    if any(u.is_constant() for u in U2):
        U2 = [E.table.one()]
    return U1, U2


def bilinear_conditions(E: GenericMap, fiber: ShapeFiber) -> list[MPoly] | None:
    """C13: h-coefficients of the t-coefficients of the normal form N1.

    Returns None when N1 is a nonzero element free of lam (no solutions).
    """
    N1 = fiber.reduce(E.ghat(1))
    if N1.is_zero():
        return []
    if not N1.involves(E.lams(1) + E.lams(3)):
        return None
    groups = N1.coefficients_in(["t1", "t2", "h1", "h2"])
    out = []
    keys = set()
    for _, c in sorted(groups.items(), reverse=True):
        k = poly_key(c)
        if not c.is_zero() and k not in keys:
            keys.add(k)
            out.append(c)
    return out


def normal_form_N1(E: GenericMap, fiber: ShapeFiber) -> MPoly:
    return fiber.reduce(E.ghat(1))


def solve_bilinear(C13: Sequence[MPoly], E: GenericMap) -> list[Component]:
    """Parametric solutions in (lam_1, lam_3) of the bilinear system."""
    variables = tuple(E.lams(1) + E.lams(3))
    lam3 = E.lams(3)

    def u1_dead(subs):
        return all(v in subs and subs[v].is_zero() for v in lam3)

    if not C13:
        return [Component(E.table, variables, {})]
    # the system is linear in lam_1: solving for lam_1 first keeps every
    # lam_3 expression free of lam_1, which replication relies on
    lam1 = set(E.lams(1))
    return solve_system(list(C13), variables, prune=u1_dead, rank=lambda v: 0 if v in lam1 else 1)


def replicate(comp: Component, E: GenericMap, C13: Sequence[MPoly] = ()) -> list[Component]:
    """Pairs (lam_1, lam_3) and (lam_2, lam_3) both in the component.

    When the lam_3 part only depends on lam_3 this is a renaming of lam_1 to
    lam_2; otherwise the renamed conditions are solved on top of the
    component.
    """
    ren = {a: b for a, b in zip(E.lams(1), E.lams(2))}
    variables = tuple(E.lams(1) + E.lams(2) + E.lams(3))
    lam1 = E.lams(1)
    if any(comp.value(v).num.involves(lam1) or comp.value(v).den.involves(lam1) for v in E.lams(3)):
        C23 = [c.rename(ren) for c in C13]
        eqs = [comp.substitute_into(c) for c in C23] + list(comp.residual)
        eqs = [e for e in eqs if not e.is_zero()]
        if not eqs:
            return [Component(E.table, variables, dict(comp.subs), list(comp.guards))]
        lam2 = set(E.lams(2))
        return solve_system(eqs, variables, guards=comp.guards, subs=dict(comp.subs),
                            rank=lambda v: 0 if v in lam2 else 1)
    subs = dict(comp.subs)
    for v, e in comp.subs.items():
        if v in ren:
            subs[ren[v]] = RatFrac(e.num.rename(ren), e.den.rename(ren), reduce=False)
    guards = list(comp.guards)
    for g in comp.guards:
        if g.involves(E.lams(1)):
            guards.append(g.rename(ren))
    residual = list(comp.residual) + [r.rename(ren) for r in comp.residual if r.involves(lam1)]
    return [Component(E.table, variables, subs, guards, residual)]


def vanishes_on(polys: Sequence[MPoly], comp: Component, rng: random.Random, checks: int = 3) -> bool:
    """True if every polynomial of ``polys`` vanishes identically on ``comp``."""
    for _ in range(checks):
        p = comp.sample(rng, bound=1000)
        if p is None:
            continue
        for u in polys:
            if u.eval({v: p[v] for v in u.variables()}).constant_value() != 0:
                return False
    # random points all gave zero: confirm symbolically
    if comp.residual:
        return True
    return all(comp.substitute_into(u).is_zero() for u in polys)


def replicate_and_filter(components: Sequence[Component], E: GenericMap, U1, U2,
                         rng: random.Random, C13: Sequence[MPoly] = ()) -> list[Component]:
    out = []
    for c in components:
        for r in replicate(c, E, C13):
            if vanishes_on(U1, r, rng) or vanishes_on(U2, r, rng):
                continue
            out.append(r)
    return out


@dataclass
class DegreeConditions:
    skipped: str | None
    C: list[MPoly]
    U3: list[MPoly]
    degree: int


def degree_conditions(comp: Component, E: GenericMap, target: int) -> DegreeConditions:
    """Conditions for the plane-map R-polynomial of a component to have the target degree."""
    g1 = comp.substitute_into(E.ghat(1))
    g2 = comp.substitute_into(E.ghat(2))
    R = resultant(g1, g2, "t2")
    if R.is_zero():
        return DegreeConditions("resultant vanishes", [], [], -1)
    R = primpart(R, H)
    R = primpart(R, ["t1"])
    deg = R.degree("t1")
    if deg < target:
        return DegreeConditions(f"degree {deg} below target", [], [], deg)
    coeffs = R.univariate_coefficients("t1")
    C: list[MPoly] = []
    keys = set()
    for i in range(target + 1, deg + 1):
        for c in _coefficient_polys(coeffs[i], H):
            c = normalize(c)
            if c.is_constant():
                return DegreeConditions(f"coefficient of t1^{i} is a nonzero constant", [], [], deg)
            k = poly_key(c)
            if k not in keys:
                keys.add(k)
                C.append(c)
    U3 = [normalize(c) for c in _coefficient_polys(coeffs[target], H)]
    if any(u.is_constant() for u in U3):
        U3 = [comp.table.one()]
    return DegreeConditions(None, C, U3, deg)


@dataclass
class ConstraintSets:
    """Output of the solution-space search at one degree."""

    degree: int
    C13: list[MPoly]
    C: list[MPoly]
    U1: list[MPoly]
    U2: list[MPoly]
    U3: list[MPoly]
    components: list[Component]
    generic: GenericMap
    diagnostics: dict = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.components

    def as_dict(self) -> dict:
        """Plain-data form (polynomials as strings) for offline inspection."""
        strs = lambda ps: [to_str(p) for p in ps]
        return {
            "degree": self.degree,
            "basis": strs(self.generic.basis),
            "C13": strs(self.C13),
            "C": strs(self.C),
            "U1": strs(self.U1),
            "U2": strs(self.U2),
            "U3": strs(self.U3),
            "components": [
                {"free": list(c.free),
                 "subs": {v: str(e) for v, e in c.subs.items()},
                 "guards": strs(c.guards),
                 "residual": strs(c.residual)}
                for c in self.components
            ],
            "diagnostics": dict(self.diagnostics),
        }


def solspace_algorithm(fiber: ShapeFiber, basis: Sequence[MPoly], target: int,
                       rng: random.Random | None = None, trace: Callable[[str], None] | None = None
                       ) -> ConstraintSets | None:
    """Search plane maps over ``basis`` whose fiber contains ``fiber`` and has size ``target``.

    Returns None when no component survives the filters.
    """
    rng = rng or random.Random(0)
    say = trace or (lambda s: None)
    t0 = time.perf_counter()
    E = GenericMap.over(basis)
    U1, U2 = build_U1_U2(E)
    say(f"basis of {E.n} forms; |U1| = {len(U1)}, |U2| = {len(U2)}")
    C13 = bilinear_conditions(E, fiber)
    if C13 is None:
        say("normal form is a nonzero constant in lam: no solutions")
        return None
    say(f"|C13| = {len(C13)}")
    V = solve_bilinear(C13, E)
    V = drop_absorbed(V, rng)
    say(f"bilinear system: {len(V)} components")
    V123 = replicate_and_filter(V, E, U1, U2, rng, C13)
    say(f"after replication and filtering: {len(V123)} components")
    diag = {"bilinear_components": len(V), "filtered_components": len(V123), "C13": len(C13)}
    C_all: list[MPoly] = []
    U3_all: list[MPoly] = []
    final: list[Component] = []
    for idx, comp in enumerate(V123):
        dc = degree_conditions(comp, E, target)
        if dc.skipped:
            say(f"component {idx}: skipped ({dc.skipped})")
            continue
        say(f"component {idx}: deg {dc.degree}, |C*| = {len(dc.C)}, |U3| = {len(dc.U3)}")
        C_all.extend(dc.C)
        U3_all.extend(dc.U3)
        if dc.C:
            subs = solve_system(dc.C, comp.variables, guards=comp.guards, subs=dict(comp.subs))
            subs = drop_absorbed(subs, rng)
        else:
            subs = [comp]
        for s in subs:
            if vanishes_on(U1, s, rng) or vanishes_on(U2, s, rng) or vanishes_on(dc.U3, s, rng):
                continue
            s.extra_nonzero = [U1, U2, dc.U3]
            final.append(s)
    diag["final_components"] = len(final)
    say(f"{len(final)} solution components ({time.perf_counter() - t0:.1f} s)")
    if not final:
        return None
    return ConstraintSets(E.degree, C13, C_all, U1, U2, U3_all, final, E, diag)
