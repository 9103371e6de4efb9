"""Base points of plane linear systems and the divisor they impose.

A base point class is a Galois orbit of points of the projective plane.
It is stored as an irreducible polynomial a(z) over Q together with three
coordinate polynomials c1, c2, c3 in z (of degree below deg a): the class
is {(c1(r) : c2(r) : c3(r)) : a(r) = 0}.  An affine class {g1(t1), t2 - g2(t1)}
is the case c = (z, g2(z), 1); a class at infinity cut out by the binary
form phi has c = (z, 1, 0) with a(z) = phi(z, 1).  Rational points have
deg a = 1.

Anything that must hold at every point of a class is checked by reducing
modulo a(z), so classes are never split into their conjugates.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

import flint

from . import groebner
from .fiber import PROJ, ProjParam, deg_map_param
from .polycore import (
    MPoly,
    VarTable,
    gcd,
    gcd_list,
    normalize,
    nullspace,
    resultant,
)

log = logging.getLogger(__name__)

ZT = VarTable(["z"])
XT = VarTable(["X", "z"])
AFF = VarTable(["t1", "t2"])


class HypothesisError(ValueError):
    """The input does not satisfy the hypotheses of the requested method."""


@dataclass(frozen=True)
class PointClass:
    """Conjugacy class of base points (see the module docstring)."""

    minpoly: MPoly
    coords: tuple[MPoly, MPoly, MPoly]

    @property
    def size(self) -> int:
        return self.minpoly.degree("z")

    @property
    def chart(self) -> str:
        return "affine" if self.coords[2] == 1 else "infinity"

    @property
    def is_rational(self) -> bool:
        return self.size == 1

    def point(self) -> tuple[Fraction, Fraction, Fraction]:
        """Explicit coordinates of a rational point, last nonzero entry 1."""
        if not self.is_rational:
            raise ValueError("not a rational point")
        a0, a1 = self.minpoly.univariate_coefficients("z")
        root = -a0.constant_value() / a1.constant_value()
        vals = [Fraction(str(c.eval({"z": root}).constant_value())) for c in self.coords]
        last = next(v for v in reversed(vals) if v != 0)
        return tuple(v / last for v in vals)

    def label(self) -> str:
        if self.is_rational:
            return "(" + ":".join(str(v) for v in self.point()) + ")"
        return f"{{{self.minpoly} = 0; ({' : '.join(str(c) for c in self.coords)})}}"

    def triangular_set(self) -> tuple[MPoly, MPoly] | MPoly:
        """{g1(t1), t2 - g2(t1)} for affine classes, the binary form at infinity."""
        if self.chart == "affine":
            if not self.coords[0] == ZT.var("z"):
                raise ValueError("class is not stored in triangular coordinates")
            return (self.minpoly.rename({"z": "t1"}, AFF), AFF.var("t2") - self.coords[1].rename({"z": "t1"}, AFF))
        return normalize(_homog_binary(self.minpoly))

    def reduce(self, f: MPoly) -> MPoly:
        """f(c1(z), c2(z), c3(z)) mod a(z), for a form f in t1, t2, t3."""
        img = {"t1": self.coords[0], "t2": self.coords[1], "t3": self.coords[2]}
        g = f.to_table(PROJ).compose(img, ZT)
        return groebner.pseudo_remainder(g, self.minpoly, "z") if not g.is_zero() else g

    def vanishes(self, f: MPoly) -> bool:
        return self.reduce(f).is_zero()


def _homog_binary(a: MPoly) -> MPoly:
    d = a.degree("z")
    coeffs = a.univariate_coefficients("z")
    t1, t2 = PROJ.var("t1"), PROJ.var("t2")
    return sum((c.constant_value() * t1**k * t2 ** (d - k) for k, c in enumerate(coeffs)), PROJ.zero())


@dataclass
class BaseLocusReport:
    classes: list[PointClass]
    multiplicity: list[int]
    min_multiplicity: list[int]
    # base points where a generic member of the system vanishes to a
    # different order than the least order among the forms
    divergent: list[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        """mult(B): sum over all points, conjugates included."""
        return sum(c.size * m for c, m in zip(self.classes, self.multiplicity))

    @property
    def transversal(self) -> bool:
        return all(m == r * r for m, r in zip(self.multiplicity, self.min_multiplicity))

    @property
    def empty(self) -> bool:
        return not self.classes


@dataclass
class Divisor:
    """Formal sum of base point classes with positive integer coefficients."""

    classes: list[PointClass]
    coefficients: list[int]

    def __str__(self):
        return " + ".join(f"{r}*{c.label()}" for c, r in zip(self.classes, self.coefficients)) or "0"


@dataclass
class LinearSystem:
    degree: int
    basis: list[MPoly]
    divisor: Divisor | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)


# ---------------------------------------------------------------------------
# base points


def _factors(a: MPoly) -> list[MPoly]:
    _, facs = a.raw.factor()
    return [normalize(MPoly(a.table, f)) for f, _ in facs if not f.is_constant()]


def base_points(forms: Sequence[MPoly], rng: random.Random | None = None) -> list[PointClass]:
    """All base point classes of the linear system spanned by ``forms``."""
    rng = rng or random.Random(0)
    forms = [f.to_table(PROJ) for f in forms if not f.is_zero()]
    g = gcd_list(forms)
    if g is None or not g.is_constant():
        raise ValueError(f"forms share the factor {g}")
    classes: list[PointClass] = []
    z = ZT.var("z")
    # affine chart t3 = 1
    aff = [f.eval({"t3": 1}).to_table(AFF) for f in forms]
    aff = [f for f in aff if not f.is_zero()]
    gb = groebner.buchberger(aff, ["t2", "t1"], "lex")
    if not (len(gb) == 1 and gb[0].is_constant()):
        sf = groebner.shape_position(aff, ("t1", "t2"), (), rng=rng)
        (m11, m12), (m21, m22) = sf.change
        vden = sf.v_den.constant_value()
        for a in _factors(sf.u.rename({"t1": "z"}, ZT)):
            v = (sf.v_num.rename({"t1": "z"}, ZT) / vden)
            v = groebner.pseudo_remainder(v, a, "z") if a.degree("z") > 0 else v
            c1 = groebner.pseudo_remainder(z * m11 + v * m12, a, "z")
            c2 = groebner.pseudo_remainder(z * m21 + v * m22, a, "z")
            classes.append(_canonical(PointClass(a, (c1, c2, ZT.one()))))
    # line at infinity t3 = 0
    inf = [f.eval({"t3": 0}) for f in forms]
    q = gcd_list([f for f in inf if not f.is_zero()])
    if q is not None and not q.is_constant():
        for phi in _factors(q):
            if phi.degree("t1") <= 0:
                classes.append(PointClass(z, (ZT.one(), ZT.zero(), ZT.zero())))
                continue
            a = normalize(phi.eval({"t2": 1}).rename({"t1": "z"}, ZT))
            classes.append(PointClass(a, (z, ZT.one(), ZT.zero())))
    return sorted(classes, key=_class_key)


def _canonical(pc: PointClass) -> PointClass:
    """Prefer the triangular form (z, g(z), 1) when the first coordinate generates."""
    if pc.coords[0] == ZT.var("z"):
        return pc
    if pc.is_rational:
        p = pc.point()
        return PointClass(ZT.var("z") - p[0], (ZT.var("z"), ZT.const(p[1]), ZT.one()))
    return pc


def _class_key(pc: PointClass):
    return (pc.chart != "affine", pc.size, pc.label())


# ---------------------------------------------------------------------------
# multiplicities


def _point_multiplicity(f: MPoly, pc: PointClass) -> int:
    """Multiplicity of the curve f = 0 at the points of ``pc``."""
    if f.is_zero():
        raise ValueError("zero form")
    layer = [f]
    r = 0
    while True:
        if any(not pc.vanishes(g) for g in layer):
            return r
        r += 1
        nxt = {}
        for g in layer:
            for v in ("t1", "t2", "t3"):
                d = g.derivative(v)
                if not d.is_zero():
                    nxt[str(d)] = d
        layer = list(nxt.values())
        if not layer:
            return r


def min_multiplicity(forms: Sequence[MPoly], pc: PointClass) -> int:
    return min(_point_multiplicity(f.to_table(PROJ), pc) for f in forms if not f.is_zero())


def _random_matrix(rng: random.Random) -> list[list[int]]:
    while True:
        M = [[rng.randint(-10, 10) for _ in range(3)] for _ in range(3)]
        if flint.fmpz_mat(M).det() != 0:
            return M


def _pencil_multiplicity_once(forms, pc: PointClass, rng: random.Random) -> int | None:
    n = max(f.total_degree() for f in forms)
    W = []
    for _ in range(2):
        W.append(sum((f * rng.randint(-10, 10) for f in forms), PROJ.zero()))
    if any(w.is_zero() for w in W) or not gcd(W[0], W[1]).is_constant():
        return None
    N = _random_matrix(rng)
    Ninv = flint.fmpq_mat(N).inv()
    t = [PROJ.var(v) for v in ("t1", "t2", "t3")]
    img = {v: sum((t[j] * N[i][j] for j in range(3)), PROJ.zero()) for i, v in enumerate(("t1", "t2", "t3"))}
    Wn = [w.compose(img).eval({"t3": 1}) for w in W]
    R = resultant(Wn[0], Wn[1], "t2")
    if R.degree("t1") != n * n:
        return None
    # coordinates of the class after the change: s = N^-1 c
    sig = [sum((pc.coords[j] * Ninv[i, j] for j in range(3)), ZT.zero()) for i in range(3)]
    if groebner.pseudo_remainder(sig[2], pc.minpoly, "z").is_zero():
        return None
    X = XT.var("X")
    chi = resultant(pc.minpoly.to_table(XT), (X * sig[2].to_table(XT) - sig[0].to_table(XT)), "z")
    chi = normalize(chi).rename({"X": "t1"}, PROJ)
    if not gcd(chi, chi.derivative("t1")).is_constant():
        return None
    e = 0
    while chi.divides(R):
        R = R / chi
        e += 1
    return e


def mult_base_point(forms: Sequence[MPoly], pc: PointClass, rng: random.Random | None = None,
                    attempts: int = 20) -> int:
    """Intersection multiplicity at each point of ``pc`` of two generic members.

    Two independent random draws must agree; otherwise both are redrawn.
    """
    rng = rng or random.Random(0)
    forms = [f.to_table(PROJ) for f in forms if not f.is_zero()]
    last = None
    for _ in range(attempts):
        m = _pencil_multiplicity_once(forms, pc, rng)
        if m is None:
            continue
        if last is not None and m == last:
            return m
        last = m
    raise RuntimeError("intersection multiplicity did not stabilize")


def base_locus(forms: Sequence[MPoly], rng: random.Random | None = None) -> BaseLocusReport:
    rng = rng or random.Random(0)
    classes = base_points(forms, rng)
    mult = [mult_base_point(forms, c, rng) for c in classes]
    mins = [min_multiplicity(forms, c) for c in classes]
    report = BaseLocusReport(classes, mult, mins)
    if classes:
        generic = sum((f.to_table(PROJ) * rng.randint(1, 50) for f in forms if not f.is_zero()), PROJ.zero())
        for c, r in zip(classes, mins):
            if _point_multiplicity(generic, c) != r:
                log.warning("order of a generic member at %s differs from the minimum %d", c.label(), r)
                report.divergent.append(c.label())
    return report


def transversality_check(forms: Sequence[MPoly], rng: random.Random | None = None) -> bool:
    """Every base point has pencil multiplicity equal to its minimal multiplicity squared."""
    return base_locus(forms, rng).transversal


# ---------------------------------------------------------------------------
# surface degree, divisor and linear systems


def monomials(d: int, vars: Sequence[str] = ("t1", "t2", "t3")) -> list[tuple[int, ...]]:
    """Exponent vectors of degree d, in descending lex order."""
    n = len(vars)
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


def implicit_equation(P: ProjParam, max_degree: int | None = None) -> MPoly:
    """Lowest-degree form F(x0, x1, x2, x3) with F(P) = 0, by undetermined coefficients."""
    forms = list(P.forms)
    top = max_degree or P.degree**2
    XYZ = VarTable(["x0", "x1", "x2", "x3"])
    for k in range(1, top + 1):
        mons = monomials(k, ("x0", "x1", "x2", "x3"))
        powers = [[f**e for e in range(k + 1)] for f in forms]
        images = []
        for m in mons:
            acc = PROJ.one()
            for i, e in enumerate(m):
                acc = acc * powers[i][e]
            images.append(acc)
        keys = sorted({mon for img in images for mon, _ in img.raw.terms()}, reverse=True)
        kidx = {mon: i for i, mon in enumerate(keys)}
        rows = [[0] * len(mons) for _ in keys]
        for j, img in enumerate(images):
            for mon, c in img.raw.terms():
                rows[kidx[mon]][j] = c
        ns = nullspace(rows, len(mons))
        if ns:
            if len(ns) > 1:
                raise RuntimeError("implicit equation is not unique")
            return normalize(XYZ.from_dict({m: c for m, c in zip(mons, ns[0]) if c != 0}))
    raise RuntimeError(f"no implicit equation of degree <= {top}")


def surface_degree(P: ProjParam, report: BaseLocusReport | None = None, rng=None) -> int:
    """Degree of the image surface, by implicitization.

    When the base locus is transversal the degree formula
    deg(P)^2 = degMap(P) * deg(surface) + mult(B) is checked against it.
    """
    deg = implicit_equation(P).total_degree()
    if report is not None and report.transversal:
        dm = deg_map_param(P, rng)
        if P.degree**2 - report.total != dm * deg:
            from .fiber import InconsistencyError
            raise InconsistencyError(
                f"degree formula gives {(P.degree ** 2 - report.total) / dm}, implicitization {deg}")
    return deg


def divisor_D(report: BaseLocusReport, surf_degree: int) -> Divisor:
    """Coefficients sqrt(mult(A) / deg(surface)); they must be integers."""
    coeffs = []
    for pc, m in zip(report.classes, report.multiplicity):
        q = Fraction(m, surf_degree)
        r = math.isqrt(q.numerator) if q.denominator == 1 else -1
        if r < 0 or r * r != q:
            raise HypothesisError(f"mult {m} at {pc.label()} is not deg(surface) times a square")
        coeffs.append(r)
    return Divisor(list(report.classes), coeffs)


def _derivatives(order: int):
    return monomials(order) if order > 0 else [(0, 0, 0)]


def linear_system_basis(d: int, D: Divisor) -> LinearSystem:
    """Forms of degree d with multiplicity >= r at every point of class A, for r*A in D.

    The basis is in reduced echelon form over the monomials in descending
    lex order.
    """
    mons = monomials(d)
    basis_polys = [PROJ.from_dict({m: 1}) for m in mons]
    rows = []
    for pc, r in zip(D.classes, D.coefficients):
        if r <= 0:
            continue
        if r - 1 > d:
            return LinearSystem(d, [], D)
        # by Euler's relation, vanishing of all partials of order r-1 suffices
        for alpha in _derivatives(r - 1):
            cols = []
            for m in basis_polys:
                g = m
                for v, k in zip(("t1", "t2", "t3"), alpha):
                    for _ in range(k):
                        g = g.derivative(v)
                cols.append(pc.reduce(g) if not g.is_zero() else ZT.zero())
            for k in range(pc.size):
                rows.append([c.coefficients_in(["z"]).get((k,), ZT.zero()).constant_value()
                             if not c.is_zero() else 0 for c in cols])
    ns = nullspace(rows, len(mons))
    forms = [PROJ.from_dict({m: c for m, c in zip(mons, v) if c != 0}) for v in ns]
    return LinearSystem(d, forms, D)
