"""Buchberger's algorithm over Q and over a rational function field Q(params).

Polynomials are handled internally as dictionaries from exponent vectors in
the *main* variables to coefficients.  Over Q the coefficients are rationals
and every intermediate polynomial is kept monic.  Over Q(params) the
coefficients are polynomials in the parameters and all arithmetic is
fraction-free: reductions cross-multiply by leading coefficients and
intermediate results are divided by their content.  Because every leading
coefficient is a nonzero polynomial, this is exactly Buchberger over the
field Q(params), with basis elements scaled by units.

Pairs are pruned with the Gebauer-Moller criteria and chosen by the normal
selection strategy (smallest lcm first).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import flint

from .polycore import MPoly, RatFrac, VarTable, normalize, squarefree_part, substitute

log = logging.getLogger(__name__)

Monomial = tuple


class GroebnerError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# monomial orders


def _order_key(order: str) -> Callable[[Monomial], tuple]:
    if order == "lex":
        return lambda m: m
    if order == "grevlex":
        return lambda m: (sum(m), tuple(-e for e in reversed(m)))
    if order == "grlex":
        return lambda m: (sum(m), m)
    raise ValueError(f"unknown monomial order {order!r}")


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mlcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mdiv(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# coefficient domains


class _Rationals:
    fraction_free = False

    def __init__(self):
        self.zero = flint.fmpq(0)
        self.one = flint.fmpq(1)

    def cross(self, lc_g, c):
        return self.one, c / lc_g

    def normalize(self, f: dict) -> dict:
        if not f:
            return f
        lc = f[max(f, key=self.key)]
        return {m: c / lc for m, c in f.items()}

    def is_zero(self, c) -> bool:
        return c == 0


class _Parameters:
    fraction_free = True

    def __init__(self, ctx):
        self.ctx = ctx
        self.zero = ctx.constant(0)
        self.one = ctx.constant(1)

    def cross(self, lc_g, c):
        g = lc_g.gcd(c)
        return lc_g / g, c / g

    def normalize(self, f: dict) -> dict:
        if not f:
            return f
        coeffs = sorted(f.values(), key=len)
        g = coeffs[0]
        for c in coeffs[1:]:
            if g.is_constant():
                break
            g = g.gcd(c)
        if not g.is_constant():
            f = {m: c / g for m, c in f.items()}
        ic = _int_content(f.values())
        if f[max(f, key=self.key)].leading_coefficient() < 0:
            ic = -ic
        return {m: c / ic for m, c in f.items()}

    def is_zero(self, c) -> bool:
        return c.is_zero()


def _int_content(coeffs: Iterable) -> flint.fmpq:
    from math import gcd, lcm
    num, den = 0, 1
    for c in coeffs:
        for q in c.coeffs():
            num = gcd(num, int(q.p))
            den = lcm(den, int(q.q))
    return flint.fmpq(num or 1, den)


# ---------------------------------------------------------------------------
# the engine


class _Engine:
    def __init__(self, vars: Sequence[str], order: str, params: Sequence[str], table: VarTable):
        self.vars = tuple(vars)
        self.params = tuple(params)
        self.order = order
        self.key = _order_key(order)
        self.table = table
        if self.params:
            self.pctx = flint.fmpq_mpoly_ctx.get(self.params, "lex")
            self.dom = _Parameters(self.pctx)
        else:
            self.pctx = None
            self.dom = _Rationals()
        self.dom.key = self.key
        self._vidx = [table.index(v) for v in self.vars]
        self._pidx = [table.index(p) for p in self.params]

    # conversion
    def to_internal(self, p: MPoly) -> dict:
        p = p.to_table(self.table)
        out: dict = {}
        if not self.params:
            for mon, c in p.raw.terms():
                key = tuple(mon[i] for i in self._vidx)
                if any(mon[i] for i in range(len(mon)) if i not in self._vidx):
                    raise GroebnerError(f"unexpected variable in {p}")
                out[key] = c
            return out
        grouped: dict = {}
        for mon, c in p.raw.terms():
            key = tuple(mon[i] for i in self._vidx)
            pm = tuple(mon[i] for i in self._pidx)
            if sum(mon) != sum(key) + sum(pm):
                raise GroebnerError(f"unexpected variable in {p}")
            grouped.setdefault(key, {})[pm] = c
        return {k: self.pctx.from_dict(d) for k, d in grouped.items()}

    def to_mpoly(self, f: dict) -> MPoly:
        n = len(self.table)
        terms: dict = {}
        for m, c in f.items():
            if self.params:
                for pm, q in c.terms():
                    e = [0] * n
                    for i, x in zip(self._vidx, m):
                        e[i] = x
                    for i, x in zip(self._pidx, pm):
                        e[i] = x
                    terms[tuple(e)] = q
            else:
                e = [0] * n
                for i, x in zip(self._vidx, m):
                    e[i] = x
                terms[tuple(e)] = c
        return MPoly(self.table, self.table.ctx.from_dict(terms))

    # basic operations
    def lm(self, f: dict) -> Monomial:
        return max(f, key=self.key)

    def axpy(self, a, f: dict, b, m: Monomial, g: dict) -> dict:
        """a*f - b*x^m*g."""
        out = {k: a * c for k, c in f.items()} if not _is_one(a) else dict(f)
        for k, c in g.items():
            km = tuple(x + y for x, y in zip(k, m))
            v = out.get(km, self.dom.zero) - b * c
            if self.dom.is_zero(v):
                out.pop(km, None)
            else:
                out[km] = v
        return out

    def spoly(self, f: dict, g: dict) -> dict:
        mf, mg = self.lm(f), self.lm(g)
        L = _mlcm(mf, mg)
        a, b = self.dom.cross(g[mg], f[mf])
        # a*f*(L/mf) - b*g*(L/mg)
        sf = {tuple(x + y for x, y in zip(k, _mdiv(L, mf))): c for k, c in f.items()}
        return self.axpy(a, sf, b, _mdiv(L, mg), g)

    def reduce(self, f: dict, basis: list[dict], full: bool = True):
        """Reduce ``f``; returns (remainder, multiplier) with multiplier*f == rem mod basis."""
        leads = [(self.lm(g), g) for g in basis]
        rem: dict = {}
        mult = self.dom.one
        f = dict(f)
        steps = 0
        while f:
            m = self.lm(f)
            c = f[m]
            for lg, g in leads:
                if _divides(lg, m):
                    a, b = self.dom.cross(g[lg], c)
                    f = self.axpy(a, f, b, _mdiv(m, lg), g)
                    if not _is_one(a):
                        rem = {k: a * v for k, v in rem.items()}
                        mult = mult * a
                    steps += 1
                    if self.dom.fraction_free and steps % 16 == 0:
                        f, rem, mult = self._shrink(f, rem, mult)
                    break
            else:
                if not full:
                    rem.update(f)
                    break
                rem[m] = c
                del f[m]
        if self.dom.fraction_free and rem:
            f, rem, mult = self._shrink({}, rem, mult)
        return rem, mult

    def _shrink(self, f, rem, mult):
        vals = sorted(list(f.values()) + list(rem.values()), key=len)
        if not vals:
            return f, rem, mult
        g = vals[0]
        for v in vals[1:]:
            if g.is_constant():
                break
            g = g.gcd(v)
        g = g.gcd(mult)
        if g.is_constant():
            return f, rem, mult
        return ({k: v / g for k, v in f.items()}, {k: v / g for k, v in rem.items()}, mult / g)

    def groebner(self, gens: list[dict]) -> list[dict]:
        polys: list[dict] = []
        G: list[int] = []
        B: list[tuple[int, int]] = []
        for f in gens:
            if f:
                polys.append(self.dom.normalize(f))
                G, B = self._update(G, B, len(polys) - 1, polys)
        while B:
            B.sort(key=lambda p: self.key(_mlcm(self.lm(polys[p[0]]), self.lm(polys[p[1]]))))
            i, j = B.pop(0)
            s = self.spoly(polys[i], polys[j])
            if not s:
                continue
            r, _ = self.reduce(s, [polys[k] for k in G])
            if r:
                r = self.dom.normalize(r)
                if all(e == 0 for e in self.lm(r)):
                    return [self.dom.normalize({self.lm(r): self.dom.one})]
                polys.append(r)
                G, B = self._update(G, B, len(polys) - 1, polys)
        return self._reduced([polys[k] for k in G])

    def _update(self, G, B, h, polys):
        lm = lambda k: self.lm(polys[k])
        mh = lm(h)
        C = [(h, g) for g in G]
        D = []
        while C:
            pair = C.pop(0)
            g1 = pair[1]
            L1 = _mlcm(mh, lm(g1))
            if _coprime(mh, lm(g1)) or not any(
                _divides(_mlcm(mh, lm(g2)), L1) for _, g2 in C + D
            ):
                D.append(pair)
        E = [(h, g) for h_, g in D if not _coprime(mh, lm(g))]
        Bn = []
        for g1, g2 in B:
            L = _mlcm(lm(g1), lm(g2))
            if (_divides(mh, L) and _mlcm(lm(g1), mh) != L and _mlcm(mh, lm(g2)) != L):
                continue
            Bn.append((g1, g2))
        Bn.extend(E)
        Gn = [g for g in G if not _divides(mh, lm(g))]
        Gn.append(h)
        return Gn, Bn

    def _reduced(self, G: list[dict]) -> list[dict]:
        G = sorted(G, key=lambda f: self.key(self.lm(f)))
        minimal = []
        for i, f in enumerate(G):
            mf = self.lm(f)
            if any(_divides(self.lm(g), mf) for j, g in enumerate(G) if j != i
                   and (self.lm(g) != mf or j < i)):
                continue
            minimal.append(f)
        out = []
        for i, f in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1:]
            r, _ = self.reduce(f, others)
            out.append(self.dom.normalize(r))
        return sorted(out, key=lambda f: self.key(self.lm(f)))


def _is_one(a) -> bool:
    try:
        return a == 1
    except TypeError:
        return False


def _engine(gens: Sequence[MPoly], vars, order, params) -> _Engine:
    table = gens[0].table
    for v in list(vars) + list(params):
        if v not in table._index:
            table = table.with_vars([v])
    return _Engine(vars, order, params, table)


def buchberger(gens: Sequence[MPoly], vars: Sequence[str], order: str = "lex",
               params: Sequence[str] = ()) -> list[MPoly]:
    """Reduced Groebner basis of ``gens`` in the main variables ``vars``.

    ``vars`` is listed from the largest variable down.  Variables listed in
    ``params`` are treated as elements of the coefficient field Q(params).
    The basis is returned sorted by leading monomial (ascending); over Q its
    elements are monic, over Q(params) they are primitive polynomials in
    the parameters with a positive leading numeric coefficient (that is,
    monic up to a unit of the coefficient field).
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    eng = _engine(gens, vars, order, params)
    out = eng.groebner([eng.to_internal(g) for g in gens])
    return [eng.to_mpoly(f) for f in out]


def leading_monomial(f: MPoly, vars: Sequence[str], order: str = "lex") -> Monomial:
    eng = _Engine(vars, order, [v for v in f.table.names if v not in vars], f.table)
    return eng.lm(eng.to_internal(f))


def normal_form(f: MPoly, gb: Sequence[MPoly], vars: Sequence[str], order: str = "lex",
                params: Sequence[str] = ()) -> RatFrac:
    """Normal form of ``f`` modulo the Groebner basis ``gb``.

    The result is exact over the coefficient field: a fraction whose
    denominator only involves the parameters.
    """
    if f.is_zero():
        return RatFrac(f)
    eng = _engine([f] + list(gb), vars, order, params)
    rem, mult = eng.reduce(eng.to_internal(f), [eng.to_internal(g) for g in gb])
    num = eng.to_mpoly(rem)
    den = MPoly(eng.table, mult.compose(*[eng.table.ctx.gen(eng.table.index(p)) for p in eng.params],
                                       ctx=eng.table.ctx)) if eng.params else eng.table.const(mult)
    return RatFrac(num, den)


def in_ideal(f: MPoly, gb: Sequence[MPoly], vars, order="lex", params=()) -> bool:
    return normal_form(f, gb, vars, order, params).is_zero()


def is_groebner(gb: Sequence[MPoly], vars, order="lex", params=()) -> bool:
    """Buchberger's criterion: all S-polynomials reduce to zero."""
    gb = [g for g in gb if not g.is_zero()]
    if not gb:
        return True
    eng = _engine(gb, vars, order, params)
    G = [eng.to_internal(g) for g in gb]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if _coprime(eng.lm(G[i]), eng.lm(G[j])):
                continue
            r, _ = eng.reduce(eng.spoly(G[i], G[j]), G)
            if r:
                return False
    return True


def elimination_ideal(gb: Sequence[MPoly], keep: Sequence[str], params: Sequence[str] = ()) -> list[MPoly]:
    """Elements of a lex basis that only involve ``keep`` (and parameters).

    Correct when the eliminated variables are the largest in the order the
    basis was computed with.
    """
    keep = set(keep) | set(params)
    return [g for g in gb if all(v in keep for v in g.variables())]


# ---------------------------------------------------------------------------
# zero-dimensional ideals in two variables


def univariate_eliminant(gens: Sequence[MPoly], var: str, other: str, params=(), extra=()) -> MPoly:
    """Generator of the ideal intersected with K[var] (lex with ``var`` lowest)."""
    gb = buchberger(gens, list(extra) + [other, var], "lex", params)
    uni = [g for g in gb if not g.involves([other, *extra])]
    if not uni:
        raise GroebnerError("ideal is not zero-dimensional")
    return uni[0]


def radical_zero_dim(gens: Sequence[MPoly], vars: Sequence[str] = ("t2", "t1"), params=(),
                     extra: Sequence[str] = (), eliminants: Sequence[MPoly] | None = None) -> list[MPoly]:
    """Reduced lex basis of the radical of a zero-dimensional ideal.

    ``vars`` = (y, x) with x lowest; ``extra`` are variables ranked above both
    and eliminated at the end (for instance a saturation variable).  The
    radical is obtained by adjoining the squarefree parts of the two
    univariate eliminants; callers that already know polynomials in the
    ideal vanishing on the right roots may pass them as ``eliminants``.
    """
    y, x = vars
    if eliminants is None:
        fx = univariate_eliminant(gens, x, y, params, extra)
        fy = univariate_eliminant(gens, y, x, params, extra)
    else:
        fx, fy = eliminants
    add = [squarefree_part(fx, x), squarefree_part(fy, y)]
    gb = buchberger(list(gens) + add, list(extra) + [y, x], "lex", params)
    if extra:
        gb = [g for g in gb if not g.involves(extra)]
    return gb


@dataclass
class ShapeFiber:
    """Shape form {u(s1), s2 - v(s1)} of a radical zero-dimensional ideal.

    The coordinates are s = M^-1 t for the integer matrix ``change`` (M);
    v = v_num / v_den with v_den free of t.  ``ustar`` is u with the
    distinguished point removed when the fiber has been punctured.
    """

    u: MPoly
    v_num: MPoly
    v_den: MPoly
    change: tuple[tuple[int, int], tuple[int, int]] = ((1, 0), (0, 1))
    ustar: MPoly | None = None
    vars: tuple[str, str] = ("t1", "t2")
    params: tuple[str, ...] = ()
    basis: list[MPoly] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.u.degree(self.vars[0])

    def is_identity_change(self) -> bool:
        return self.change == ((1, 0), (0, 1))

    def v(self) -> RatFrac:
        return RatFrac(self.v_num, self.v_den)

    def to_coords(self, f: MPoly) -> MPoly:
        """Rewrite f(t) in the shape coordinates: f(M s)."""
        if self.is_identity_change():
            return f
        x, y = self.vars
        (a, b), (c, d) = self.change
        X, Y = f.table.var(x), f.table.var(y)
        return f.compose({x: X * a + Y * b, y: X * c + Y * d})

    def reduce(self, f: MPoly, punctured: bool = True) -> MPoly:
        """Fraction-free remainder of f(t) modulo {u or u*, s2 - v(s1)}.

        The result equals the true normal form times a nonzero polynomial in
        the parameters.
        """
        x, y = self.vars
        f = self.to_coords(f)
        if f.degree(y) > 0:
            f = substitute(f, {y: RatFrac(self.v_num.to_table(f.table), self.v_den.to_table(f.table),
                                          reduce=False)}).num
        modulus = self.ustar if (punctured and self.ustar is not None) else self.u
        return pseudo_remainder(f, modulus.to_table(f.table), x)


def pseudo_remainder(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Remainder of lc(g)^k f by g in ``var`` (k minimal per step)."""
    dg = g.degree(var)
    if dg < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    gc = g.univariate_coefficients(var)
    lg = gc[-1]
    monic = lg.is_constant()
    X = f.table.var(var)
    while not f.is_zero() and f.degree(var) >= dg:
        df = f.degree(var)
        lf = f.coefficients_in([var]).get((df,))
        if monic:
            f = f - g * lf * X ** (df - dg) / lg.constant_value()
        else:
            f = f * lg - g * lf * X ** (df - dg)
    return f


def shape_basis(gb: Sequence[MPoly], vars: Sequence[str] = ("t1", "t2"), params: Sequence[str] = ()) -> ShapeFiber | None:
    """Read off the shape form from a reduced lex basis (x lowest), or None."""
    x, y = vars
    if len(gb) != 2:
        return None
    u, other = gb
    if u.involves([y]) or u.degree(x) <= 0:
        return None
    if other.degree(y) != 1:
        return None
    cy = other.coefficients_in([y])
    lead = cy[(1,)]
    if lead.involves([x, y]):
        return None
    rest = cy.get((0,), other.table.zero())
    return ShapeFiber(u=u, v_num=-rest, v_den=lead, vars=(x, y), params=tuple(params), basis=list(gb))


def shape_position(gens: Sequence[MPoly], vars: Sequence[str] = ("t1", "t2"), params: Sequence[str] = (),
                   extra: Sequence[str] = (), eliminants: Sequence[MPoly] | None = None,
                   rng: random.Random | None = None, retries: int = 20) -> ShapeFiber:
    """Shape form of the radical of ⟨gens⟩, after a random linear change if needed.

    The change has integer entries in [-10, 10] drawn from ``rng``.
    """
    x, y = vars
    rng = rng or random.Random(0)
    gb = radical_zero_dim(gens, (y, x), params, extra, eliminants)
    sf = shape_basis(gb, vars, params)
    if sf is not None:
        return sf
    for attempt in range(retries):
        a, b, c, d = (rng.randint(-10, 10) for _ in range(4))
        if a * d - b * c == 0:
            continue
        M = ((a, b), (c, d))
        probe = ShapeFiber(gens[0].table.zero(), gens[0].table.zero(), gens[0].table.one(), change=M, vars=(x, y))
        moved = [probe.to_coords(g) for g in gens]
        gb = radical_zero_dim(moved, (y, x), params, extra)
        sf = shape_basis(gb, vars, params)
        log.debug("shape position attempt %d with change %s: %s", attempt, M, "ok" if sf else "no")
        if sf is not None:
            sf.change = M
            return sf
    raise GroebnerError("no linear change brought the ideal into shape position")
