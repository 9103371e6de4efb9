"""Generic fibers of rational surface parametrizations and of plane maps.

For an affine map t -> (N_i(t)/D_i(t)) the generic fiber through the point
h = (h1, h2) is cut out by G_i = N_i(h) D_i(t) - N_i(t) D_i(h), saturated by
the denominators.  Two independent routes read off its size:

* the resultant route takes Res_t2(G1, G2 + Z G3), strips its Z-content,
  its h-content and its t1-content; the remaining degree in t1 counts the
  fiber;
* the Groebner route computes the radical of the fiber ideal over Q(h) in
  lex order and brings it into shape form {u(t1), t2 - v(t1)}.

Both must agree; a disagreement is reported as an internal inconsistency.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Sequence

from . import groebner
from .groebner import ShapeFiber
from .polycore import (
    MPoly,
    RatFrac,
    VarTable,
    gcd,
    gcd_list,
    jacobian_numerator,
    lcm_list,
    normalize,
    parse,
    primpart,
    resultant,
)

log = logging.getLogger(__name__)

__all__ = [
    "ProjParam",
    "PlaneMap",
    "ShapeFiber",
    "InconsistencyError",
    "fiber_ideal",
    "r_polynomials",
    "deg_map_param",
    "gstar",
    "deg_map_planemap",
    "fiber_of_planemap",
    "fibers_equal",
]

PROJ = VarTable(["t1", "t2", "t3"])
FIBER = VarTable(["Z", "w", "h1", "h2", "t1", "t2"])
H = ("h1", "h2")
T = ("t1", "t2")


_R_CACHE: dict[tuple, tuple[MPoly, MPoly]] = {}


class InconsistencyError(RuntimeError):
    """Two routes that must agree did not."""


def _affine(forms: Sequence[MPoly], den: MPoly) -> list[tuple[MPoly, MPoly]]:
    out = []
    for f in forms:
        n = f.eval({"t3": 1}).to_table(FIBER)
        d = den.eval({"t3": 1}).to_table(FIBER)
        g = gcd(n, d)
        n, d = n / g, d / g
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        out.append((n, d))
    return out


class _Map:
    forms: tuple[MPoly, ...]

    def _check(self, count: int):
        if len(self.forms) != count:
            raise ValueError(f"expected {count} forms, got {len(self.forms)}")
        forms = [f.to_table(PROJ) for f in self.forms]
        if all(f.is_zero() for f in forms):
            raise ValueError("all forms are zero")
        degs = set()
        for f in forms:
            if f.is_zero():
                continue
            hd = f.homogeneous_degrees()
            if len(hd) != 1:
                raise ValueError(f"form {f} is not homogeneous")
            degs |= hd
        if len(degs) != 1:
            raise ValueError(f"forms have different degrees {sorted(degs)}")
        object.__setattr__(self, "forms", tuple(forms))

    @property
    def degree(self) -> int:
        return max(f.total_degree() for f in self.forms)

    def common_factor(self) -> MPoly:
        return gcd_list(self.forms)

    def reduced(self):
        """Same map with the common factor of the forms divided out."""
        g = self.common_factor()
        if g.is_constant():
            return self
        return type(self)(tuple(f / g for f in self.forms))

    def __str__(self):
        return "(" + " : ".join(str(f) for f in self.forms) + ")"


@dataclass(frozen=True)
class ProjParam(_Map):
    """Four coprime forms of equal degree in t1, t2, t3; the last is nonzero."""

    forms: tuple[MPoly, MPoly, MPoly, MPoly]

    def __post_init__(self):
        self._check(4)
        if self.forms[3].is_zero():
            raise ValueError("the fourth form must be nonzero")

    @classmethod
    def parse(cls, text: str) -> "ProjParam":
        parts = [p for p in text.split(";")]
        if len(parts) != 4:
            raise ValueError(f"expected 4 semicolon-separated forms, got {len(parts)}")
        return cls(tuple(parse(p, PROJ) for p in parts))

    def affine(self) -> list[tuple[MPoly, MPoly]]:
        """Reduced fractions (P_i, Q_i) of the affine map at t3 = 1."""
        return _affine(self.forms[:3], self.forms[3])

    def compose(self, plane: "PlaneMap") -> "ProjParam":
        """The parametrization t -> self(plane(t))."""
        img = {"t1": plane.forms[0], "t2": plane.forms[1], "t3": plane.forms[2]}
        return ProjParam(tuple(f.compose(img) for f in self.forms))


@dataclass(frozen=True)
class PlaneMap(_Map):
    """Three forms of equal degree: a rational map of the projective plane."""

    forms: tuple[MPoly, MPoly, MPoly]

    def __post_init__(self):
        self._check(3)
        if self.forms[2].is_zero():
            raise ValueError("the third form must be nonzero")

    @classmethod
    def parse(cls, text: str) -> "PlaneMap":
        parts = text.split(";")
        if len(parts) != 3:
            raise ValueError(f"expected 3 semicolon-separated forms, got {len(parts)}")
        return cls(tuple(parse(p, PROJ) for p in parts))

    def affine(self) -> list[tuple[MPoly, MPoly]]:
        return _affine(self.forms[:2], self.forms[2])

    def lifted(self) -> ProjParam:
        """(s1 : s2 : s3 : s3), the parametrization-shaped twin of the map."""
        s1, s2, s3 = self.forms
        return ProjParam((s1, s2, s3, s3))


# ---------------------------------------------------------------------------
# fiber ideal and R-polynomials


def _at_h(p: MPoly) -> MPoly:
    return p.rename({"t1": "h1", "t2": "h2"})


def _fiber_gens(comps: Sequence[tuple[MPoly, MPoly]]) -> list[MPoly]:
    return [normalize(_at_h(n) * d - n * _at_h(d)) for n, d in comps]


def _saturation(comps: Sequence[tuple[MPoly, MPoly]]) -> MPoly:
    L = lcm_list([d for _, d in comps])
    return FIBER.var("w") * L - 1


def fiber_ideal(P: ProjParam) -> list[MPoly]:
    """Generators G1, G2, G3, W of the generic fiber ideal of P over Q(h)."""
    comps = P.affine()
    return _fiber_gens(comps) + [_saturation(comps)]


def _strip(R: MPoly, var: str) -> MPoly:
    """PrimPart_var(PrimPart_h(R)): drop factors free of h, then factors free of var."""
    R = primpart(R, H)
    return primpart(R, [var])


def _jacobian_ok(comps) -> bool:
    (n1, d1), (n2, d2) = comps[0], comps[1]
    return not jacobian_numerator(RatFrac(n1, d1), RatFrac(n2, d2), T).is_zero()


def _mix(comps, rng: random.Random):
    """Random affine change of the target coordinates."""
    out = []
    for _ in range(3):
        coeffs = [rng.randint(-10, 10) for _ in range(3)]
        shift = rng.randint(-10, 10)
        acc = RatFrac(FIBER.const(shift))
        for c, (n, d) in zip(coeffs, comps):
            acc = acc + RatFrac(n * c, d)
        out.append((acc.num, acc.den))
    return out


def r_polynomials(P: ProjParam, rng: random.Random | None = None, retries: int = 20) -> tuple[MPoly, MPoly]:
    """The pair (R1(t1), R2(t2)) with h-coefficients, normalized.

    When the first two affine components have dependent gradients, a random
    affine change of target coordinates is applied first; it does not
    change the fiber.
    """
    key = tuple(str(f) for f in P.forms)
    hit = _R_CACHE.get(key)
    if hit is not None:
        return hit
    rng = rng or random.Random(0)
    comps = P.affine()
    tries = 0
    while not _jacobian_ok(comps):
        if tries >= retries:
            raise ValueError("map has rank < 2: the Jacobian vanishes identically")
        comps = _mix(P.affine(), rng)
        tries += 1
    G1, G2, G3 = _fiber_gens(comps)
    Z = FIBER.var("Z")
    out = []
    for var, other in (("t1", "t2"), ("t2", "t1")):
        R = resultant(G1, G2 + Z * G3, other)
        if R.is_zero():
            raise InconsistencyError("vanishing resultant for a dominant map")
        out.append(_strip(_content_z(R), var))
    _R_CACHE[key] = (out[0], out[1])
    return out[0], out[1]


def _content_z(R: MPoly) -> MPoly:
    return gcd_list(R.coefficients_in(["Z"]).values())


def _r_degrees(P: ProjParam, rng: random.Random) -> tuple[int, int]:
    R1, R2 = r_polynomials(P, rng)
    return R1.degree("t1"), R2.degree("t2")


def _random_parameter_change(rng: random.Random) -> "PlaneMap":
    while True:
        a, b, c, d = (rng.randint(-5, 5) for _ in range(4))
        if a * d - b * c:
            t1, t2, t3 = PROJ.gens()
            return PlaneMap((t1 * a + t2 * b, t1 * c + t2 * d, t3))


def deg_map_param(P: ProjParam, rng: random.Random | None = None, retries: int = 5) -> int:
    """Degree of the parametrization, read off the R-polynomials.

    When deg_t1 R1 and deg_t2 R2 disagree (a fiber generator free of one
    parameter makes the resultant a power), the parameters are changed
    linearly at random; this does not change the degree.
    """
    rng = rng or random.Random(0)
    d1, d2 = _r_degrees(P, rng)
    tries = 0
    while d1 != d2:
        if tries >= retries:
            raise InconsistencyError(f"deg_t1 R1 = {d1} but deg_t2 R2 = {d2}")
        d1, d2 = _r_degrees(P.compose(_random_parameter_change(rng)), rng)
        tries += 1
    return d1


def _puncture(sf: ShapeFiber) -> ShapeFiber:
    (a, b), (c, d) = sf.change
    det = a * d - b * c
    x = sf.vars[0]
    # distinguished point in shape coordinates: s = M^-1 h
    s1 = (FIBER.var("h1") * d - FIBER.var("h2") * b) / det
    lin = FIBER.var(x) - s1
    u = sf.u.to_table(FIBER)
    if not lin.divides(u):
        raise InconsistencyError("the fiber does not contain its defining point")
    sf.u = u
    sf.ustar = normalize(u / lin)
    sf.v_num = sf.v_num.to_table(FIBER)
    sf.v_den = sf.v_den.to_table(FIBER)
    # {u*, t2 - v} has coprime leading monomials, so it is a Groebner basis;
    # still cheap to confirm
    gens = [sf.ustar, sf.v_den * FIBER.var(sf.vars[1]) - sf.v_num]
    if not groebner.is_groebner(gens, [sf.vars[1], x], "lex", H):
        raise InconsistencyError("punctured fiber is not a Groebner basis")
    return sf


def _fiber(comps, eliminants, expected: int, rng: random.Random) -> ShapeFiber:
    gens = _fiber_gens(comps) + [_saturation(comps)]
    sf = groebner.shape_position(gens, T, H, extra=("w",), eliminants=eliminants, rng=rng)
    if sf.degree != expected:
        raise InconsistencyError(
            f"Groebner route gives a fiber of size {sf.degree}, resultant route {expected}")
    return _puncture(sf)


def gstar(P: ProjParam, rng: random.Random | None = None) -> ShapeFiber:
    """Punctured generic fiber {u*(t1), t2 - v(t1)} of P (shape coordinates)."""
    rng = rng or random.Random(0)
    n = deg_map_param(P, rng)
    R1, R2 = r_polynomials(P, rng)
    eliminants = (R1, R2) if R1.degree("t1") == R2.degree("t2") == n else None
    return _fiber(P.affine(), eliminants, n, rng)


def _plane_r(S: PlaneMap) -> tuple[MPoly, MPoly]:
    comps = S.affine()
    if not _jacobian_ok(comps):
        raise ValueError("plane map is not dominant")
    G1, G2 = _fiber_gens(comps)
    return (_strip(resultant(G1, G2, "t2"), "t1"), _strip(resultant(G1, G2, "t1"), "t2"))


def deg_map_planemap(S: PlaneMap, rng: random.Random | None = None, retries: int = 5) -> int:
    """Degree of a dominant rational map of the plane (same retry policy as for parametrizations)."""
    rng = rng or random.Random(0)
    R1, R2 = _plane_r(S)
    d1, d2 = R1.degree("t1"), R2.degree("t2")
    tries = 0
    while d1 != d2:
        if tries >= retries:
            raise InconsistencyError(f"deg_t1 = {d1} but deg_t2 = {d2}")
        M = _random_parameter_change(rng)
        R1, R2 = _plane_r(PlaneMap(tuple(f.compose(dict(zip(("t1", "t2", "t3"), M.forms))) for f in S.forms)))
        d1, d2 = R1.degree("t1"), R2.degree("t2")
        tries += 1
    return d1


def fiber_of_planemap(S: PlaneMap, rng: random.Random | None = None) -> ShapeFiber:
    """Punctured generic fiber of a plane map, through its lifted twin."""
    rng = rng or random.Random(0)
    R1, R2 = _plane_r(S)
    return _fiber(S.affine(), (R1, R2), R1.degree("t1"), rng)


def _generators_in_t(sf: ShapeFiber) -> list[MPoly]:
    x, y = sf.vars
    gens = [sf.ustar if sf.ustar is not None else sf.u, sf.v_den * FIBER.var(y) - sf.v_num]
    if sf.is_identity_change():
        return gens
    (a, b), (c, d) = sf.change
    det = a * d - b * c
    X, Y = FIBER.var(x), FIBER.var(y)
    back = {x: (X * d - Y * b) / det, y: (Y * a - X * c) / det}
    return [g.compose(back) for g in gens]


def fibers_equal(f1: ShapeFiber, f2: ShapeFiber) -> bool:
    """Equality of two punctured fibers as ideals over Q(h)."""
    if f1.degree != f2.degree:
        return False
    return (all(f2.reduce(g).is_zero() for g in _generators_in_t(f1))
            and all(f1.reduce(g).is_zero() for g in _generators_in_t(f2)))
