"""Birational reparametrization drivers.

Given a surface parametrization P of map degree n > 1, find a plane map S
and a birational parametrization Q with P = Q o S (as projective tuples).
Both drivers search a plane map S whose generic fiber equals that of P and
then recover Q coordinate by coordinate: p_j/p_4 is constant on the fibers
of S, so it is a rational function of (s1/s3, s2/s3), read off an
elimination ideal that is linear in the new coordinate z.

``reparametrize_general`` scans the degree d of S upwards over all forms of
degree d; ``reparametrize_empty_base`` works at a single degree over the
forms through the divisor D determined by the base locus of P.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import flint

from . import baselocus
from .baselocus import HypothesisError
from .fiber import PROJ, InconsistencyError, PlaneMap, ProjParam, ShapeFiber, deg_map_param, deg_map_planemap, gstar
from .groebner import buchberger
from .polycore import MPoly, VarTable, gcd_list, homogenize, lcm_list, normalize
from .solspace import ConstraintSets, solspace_algorithm

log = logging.getLogger(__name__)

__all__ = [
    "Certificate",
    "ReparamSolution",
    "HypothesisFailure",
    "BudgetExhausted",
    "NotTransversalError",
    "pick_point",
    "plane_map_at",
    "implicitize_linear_z",
    "build_Q",
    "verify_solution",
    "reparametrize_general",
    "reparametrize_empty_base",
]

_ELIM = VarTable(["w", "t1", "t2", "z", "x", "y"])
_XY = VarTable(["x", "y"])


class NotTransversalError(ValueError):
    """The empty-base driver needs a transversal base locus."""


class BudgetExhausted(RuntimeError):
    """No verified solution up to the degree bound; ``diagnostics`` says why per degree."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass
class HypothesisFailure:
    """Returned by the empty-base driver when its extra hypothesis does not hold."""

    reason: str
    diagnostics: dict = field(default_factory=dict)


@dataclass
class Certificate:
    degmap_P: int
    degmap_S: int
    degmap_Q: int
    composition_checked: bool
    seed: int | None = None
    d: int | None = None
    mode: str | None = None

    @property
    def passed(self) -> bool:
        return self.composition_checked and self.degmap_Q == 1 and self.degmap_S == self.degmap_P

    def as_dict(self) -> dict:
        return {
            "degmap_P": int(self.degmap_P),
            "degmap_S": int(self.degmap_S),
            "degmap_Q": int(self.degmap_Q),
            "composition_checked": self.composition_checked,
            "passed": self.passed,
            "seed": self.seed,
            "d": self.d,
            "mode": self.mode,
        }


@dataclass
class ReparamSolution:
    S: PlaneMap
    Q: ProjParam
    certificate: Certificate
    diagnostics: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# from constraint sets to a plane map


def plane_map_at(cs: ConstraintSets, point: dict) -> PlaneMap | None:
    """Plane map of a lam-specialization, with common factors divided out.

    Returns None for degenerate points (a zero third form, or a degree drop
    after removing the gcd).
    """
    E = cs.generic
    forms = [E.form(i, point).to_table(PROJ) for i in (1, 2, 3)]
    if forms[2].is_zero():
        return None
    g = gcd_list([f for f in forms if not f.is_zero()])
    if not g.is_constant():
        return None
    return PlaneMap(tuple(normalize_forms(forms)))


def normalize_forms(forms: Sequence[MPoly]) -> list[MPoly]:
    """Scale a tuple of forms to coprime integer coefficients, last nonzero form positive."""
    coeffs = [q for f in forms for _, q in f.raw.terms()]
    den = math.lcm(*(int(q.q) for q in coeffs))
    num = math.gcd(*(int(q.p) * (den // int(q.q)) for q in coeffs))
    lead = next(f for f in reversed(forms) if not f.is_zero())
    k = flint.fmpq(den, num) * (1 if lead.leading_coefficient() > 0 else -1)
    return [f * k for f in forms]


def _fiber_gate(S: PlaneMap, G: ShapeFiber, n: int) -> bool:
    """S has degree n and its fiber contains the fiber G (hence equals it)."""
    try:
        if deg_map_planemap(S) != n:
            return False
    except ValueError:
        return False
    (n1, d1), (n2, d2) = S.affine()
    for num, den in ((n1, d1), (n2, d2)):
        at_h = num.rename({"t1": "h1", "t2": "h2"}) * den - num * den.rename({"t1": "h1", "t2": "h2"})
        if not G.reduce(at_h).is_zero():
            return False
    return True


def pick_point(cs: ConstraintSets, G: ShapeFiber, n: int, rng: random.Random,
               tries: int = 40, bound: int = 3) -> tuple[dict, PlaneMap] | None:
    """Random small-integer point of the solution components whose map passes the fiber gate."""
    comps = sorted(cs.components, key=lambda c: -c.dimension)
    for attempt in range(tries):
        comp = comps[attempt % len(comps)]
        p = comp.sample(rng, bound=bound + attempt // len(comps))
        if p is None:
            continue
        if any(all(u.eval({v: p[v] for v in u.variables()}).constant_value() == 0 for u in us)
               for us in comp.extra_nonzero if us):
            continue
        S = plane_map_at(cs, p)
        if S is None or S.degree < cs.degree:
            continue
        if _fiber_gate(S, G, n):
            return p, S
    return None


# ---------------------------------------------------------------------------
# recovering Q


def implicitize_linear_z(S: PlaneMap, P: ProjParam, j: int) -> tuple[MPoly, MPoly]:
    """(A1, A0) in Q[x, y] with p_j/p_4 = A1/A0 evaluated at (s1/s3, s2/s3).

    Eliminates t1, t2 from {s1 - x s3, s2 - y s3, p_j - z p_4, w s3 p_4 - 1}
    over Q(x, y); the eliminant must be linear in z.
    """
    aff = lambda f: f.eval({"t3": 1}).to_table(_ELIM)
    s1, s2, s3 = (aff(f) for f in S.forms)
    pj, p4 = aff(P.forms[j - 1]), aff(P.forms[3])
    x, y, z, w = (_ELIM.var(v) for v in "xyzw")
    gens = [s1 - x * s3, s2 - y * s3, pj - z * p4, w * s3 * p4 - 1]
    gb = buchberger(gens, ["w", "t1", "t2", "z"], "lex", params=("x", "y"))
    elim = [g for g in gb if not g.involves(["w", "t1", "t2"])]
    if len(elim) != 1 or elim[0].degree("z") != 1:
        raise InconsistencyError(f"coordinate {j}: eliminant is not linear in z")
    H = elim[0]
    cs = H.coefficients_in(["z"])
    A0 = cs[(1,)]
    A1 = -cs.get((0,), _ELIM.zero())
    if A0.is_zero():
        raise InconsistencyError(f"coordinate {j}: zero z-coefficient")
    if A0.leading_coefficient() < 0:
        A0, A1 = -A0, -A1
    return A1.to_table(_XY), A0.to_table(_XY)


def build_Q(S: PlaneMap, P: ProjParam) -> ProjParam:
    """Homogenized common-denominator form of (A11/A10, A21/A20, A31/A30)."""
    fracs = [implicitize_linear_z(S, P, j) for j in (1, 2, 3)]
    L = lcm_list([a0 for _, a0 in fracs])
    nums = [a1 * (L / a0) for a1, a0 in fracs] + [L]
    g = gcd_list([f for f in nums if not f.is_zero()])
    nums = [f / g for f in nums]
    deg = max(f.total_degree() for f in nums if not f.is_zero())
    ren = {"x": "t1", "y": "t2"}
    forms = []
    for f in nums:
        f = f.to_table(_ELIM).rename(ren, PROJ) if not f.is_zero() else PROJ.zero()
        forms.append(homogenize(f, "t3", ("t1", "t2"), deg) if not f.is_zero() else f)
    return ProjParam(tuple(normalize_forms(forms)))


# ---------------------------------------------------------------------------
# verification


def composition_proportional(P: ProjParam, Q: ProjParam, S: PlaneMap) -> bool:
    """Q o S and P agree as projective tuples (all 2x2 cross products vanish)."""
    QS = Q.compose(S).forms
    if all(f.is_zero() for f in QS):
        return False
    for i in range(4):
        for j in range(i + 1, 4):
            if not (QS[i] * P.forms[j] - QS[j] * P.forms[i]).is_zero():
                return False
    return True


def verify_solution(P: ProjParam, Q: ProjParam, S: PlaneMap, rng: random.Random | None = None,
                    degmap_P: int | None = None) -> Certificate:
    """Exact checks: Q o S proportional to P, Q birational, degMap(S) = degMap(P)."""
    rng = rng or random.Random(0)
    n = degmap_P if degmap_P is not None else deg_map_param(P, rng)
    ok = composition_proportional(P, Q, S)
    try:
        dq = deg_map_param(Q, rng)
    except ValueError:
        dq = 0
    try:
        ds = deg_map_planemap(S)
    except ValueError:
        ds = 0
    return Certificate(n, ds, dq, ok)


# ---------------------------------------------------------------------------
# drivers


def _identity(P: ProjParam, seed: int, mode: str) -> ReparamSolution:
    S = PlaneMap((PROJ.var("t1"), PROJ.var("t2"), PROJ.var("t3")))
    Q = P.reduced()
    cert = verify_solution(P, Q, S)
    cert.seed, cert.d, cert.mode = seed, 1, mode
    return ReparamSolution(S, Q, cert)


def _solve_at(P: ProjParam, G: ShapeFiber, n: int, basis: Sequence[MPoly], rng: random.Random,
              say: Callable[[str], None], points: int = 6) -> tuple[ReparamSolution | None, dict]:
    cs = solspace_algorithm(G, basis, n, rng, say)
    if cs is None:
        return None, {"solution_space": "empty"}
    diag = {"solution_space": "nonempty", **cs.diagnostics,
            "sizes": {"C13": len(cs.C13), "C": len(cs.C), "U1": len(cs.U1), "U2": len(cs.U2), "U3": len(cs.U3)}}
    for _ in range(points):
        found = pick_point(cs, G, n, rng)
        if found is None:
            break
        _, S = found
        say(f"point found: S = {S}")
        try:
            Q = build_Q(S, P)
        except InconsistencyError as exc:
            say(f"rejected point: {exc}")
            continue
        cert = verify_solution(P, Q, S, rng, degmap_P=n)
        if cert.passed:
            return ReparamSolution(S, Q, cert, diag), diag
        say(f"rejected point: certificate {cert.as_dict()}")
    diag["points"] = "no verified point"
    return None, diag


def reparametrize_general(P: ProjParam, seed: int = 0, d_max: int | None = None,
                          trace: Callable[[str], None] | None = None) -> ReparamSolution:
    """Scan d = ceil(sqrt(degMap P)), ..., d_max over all forms of degree d.

    Raises BudgetExhausted (with per-degree diagnostics) when no degree up
    to d_max yields a verified solution.
    """
    say = trace or (lambda s: None)
    rng = random.Random(seed)
    P = P.reduced()
    n = deg_map_param(P, rng)
    say(f"degMap(P) = {n}")
    if n == 1:
        return _identity(P, seed, "general")
    start = math.isqrt(n - 1) + 1
    d_max = d_max if d_max is not None else start + 4
    G = gstar(P, rng)
    say(f"punctured fiber: u* = {G.ustar}")
    per_degree: dict[int, dict] = {}
    for d in range(start, d_max + 1):
        say(f"degree {d}")
        basis = [PROJ.from_dict({m: 1}) for m in baselocus.monomials(d)]
        sol, diag = _solve_at(P, G, n, basis, rng, say)
        per_degree[d] = diag
        if sol is not None:
            sol.certificate.seed, sol.certificate.d, sol.certificate.mode = seed, d, "general"
            sol.diagnostics = {"per_degree": per_degree}
            return sol
    raise BudgetExhausted(f"no verified solution for d <= {d_max}", {"per_degree": per_degree})


def reparametrize_empty_base(P: ProjParam, seed: int = 0, trace: Callable[[str], None] | None = None,
                             fallback: bool = True) -> ReparamSolution | HypothesisFailure:
    """Single degree d = deg(P)/sqrt(deg surface) over the linear system L_d(D).

    Non-transversal input raises NotTransversalError.  When the constructed
    Q turns out to have base points the general driver is run instead
    (``fallback``), and the solution records the downgrade.
    """
    say = trace or (lambda s: None)
    rng = random.Random(seed)
    P = P.reduced()
    report = baselocus.base_locus(P.forms, rng)
    if not report.transversal:
        raise NotTransversalError("the base locus is not transversal; use the general mode")
    n = deg_map_param(P, rng)
    if n == 1:
        return _identity(P, seed, "empty-base")
    surf = baselocus.surface_degree(P, report, rng)
    diag: dict = {"base_points": [pc.label() for pc in report.classes],
                  "multiplicities": list(report.multiplicity), "surface_degree": surf}
    root = math.isqrt(surf)
    if root * root != surf or P.degree % root:
        return HypothesisFailure(f"deg(P) / sqrt(deg surface) = {P.degree}/sqrt({surf}) is not an integer", diag)
    ell = P.degree // root
    diag["ell"] = ell
    say(f"ell = {ell}")
    try:
        D = baselocus.divisor_D(report, surf)
    except HypothesisError as exc:
        return HypothesisFailure(str(exc), diag)
    diag["divisor"] = str(D)
    L = baselocus.linear_system_basis(ell, D)
    diag["linear_system_dimension"] = L.dimension
    say(f"D = {D}; dim L = {L.dimension}")
    if L.dimension < 3:
        return HypothesisFailure("the linear system has dimension below 3", diag)
    G = gstar(P, rng)
    sol, sdiag = _solve_at(P, G, n, L.basis, rng, say)
    diag.update(sdiag)
    if sol is None:
        return HypothesisFailure("the solution space is empty", diag)
    sol.certificate.seed, sol.certificate.d, sol.certificate.mode = seed, ell, "empty-base"
    q_points = baselocus.base_points(sol.Q.forms, rng)
    if q_points:
        diag["downgrade"] = f"Q has base points {[pc.label() for pc in q_points]}"
        say(diag["downgrade"])
        if fallback:
            out = reparametrize_general(P, seed, trace=trace)
            out.diagnostics.update(diag)
            return out
    sol.diagnostics = diag
    return sol
