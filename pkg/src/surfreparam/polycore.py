"""Exact sparse multivariate polynomials over the rationals.

The arithmetic kernel is python-flint's ``fmpq_mpoly``; this module wraps it
with a variable table that carries a class tag per variable (``h`` for the
generic point, ``t`` for parameters, ``lam`` for undetermined coefficients,
``w`` for the saturation variable, ``xyz`` for target coordinates, ``aux`` for
anything else), a canonical printer/parser pair and the handful of derived
operations the rest of the package relies on.
"""

from __future__ import annotations

import re
from collections import defaultdict
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

import flint

Rational = flint.fmpq

TAGS = ("h", "t", "lam", "w", "xyz", "aux")


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based offending column."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at column {pos}")
        self.pos = pos


def _default_tag(name: str) -> str:
    if re.fullmatch(r"h\d+", name):
        return "h"
    if re.fullmatch(r"t\d+", name):
        return "t"
    if name.startswith("l") and re.fullmatch(r"l\d+_\d+", name):
        return "lam"
    if name == "w":
        return "w"
    if name in ("x", "y", "z"):
        return "xyz"
    return "aux"


class VarTable:
    """Ordered variable names with class tags; the order is the lex order."""

    _cache: dict[tuple, "VarTable"] = {}

    def __new__(cls, names: Sequence[str], tags: Mapping[str, str] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        tagmap = {n: (tags or {}).get(n, _default_tag(n)) for n in names}
        key = (names, tuple(sorted(tagmap.items())))
        hit = cls._cache.get(key)
        if hit is not None:
            return hit
        self = super().__new__(cls)
        self.names = names
        self.tags = tagmap
        self.ctx = flint.fmpq_mpoly_ctx.get(names if names else ("_",), "lex")
        self._index = {n: i for i, n in enumerate(names)}
        cls._cache[key] = self
        return self

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"VarTable({list(self.names)})"

    def index(self, name: str) -> int:
        return self._index[name]

    def var(self, name: str) -> "MPoly":
        return MPoly(self, self.ctx.gen(self._index[name]))

    def gens(self) -> list["MPoly"]:
        return [self.var(n) for n in self.names]

    def of_tag(self, tag: str) -> tuple[str, ...]:
        return tuple(n for n in self.names if self.tags[n] == tag)

    def const(self, c) -> "MPoly":
        return MPoly(self, self.ctx.constant(_q(c)))

    def zero(self) -> "MPoly":
        return self.const(0)

    def one(self) -> "MPoly":
        return self.const(1)

    def from_dict(self, terms: Mapping[tuple, object]) -> "MPoly":
        return MPoly(self, self.ctx.from_dict({k: _q(v) for k, v in terms.items()}))

    def union(self, other: "VarTable") -> "VarTable":
        names = list(self.names) + [n for n in other.names if n not in self._index]
        tags = dict(other.tags)
        tags.update(self.tags)
        return VarTable(names, tags)

    def with_vars(self, extra: Sequence[str], front: bool = False) -> "VarTable":
        extra = [n for n in extra if n not in self._index]
        names = (list(extra) + list(self.names)) if front else (list(self.names) + list(extra))
        return VarTable(names, self.tags)


def _q(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, flint.fmpz):
        return flint.fmpq(c)
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, str):
        f = Fraction(c)
        return flint.fmpq(f.numerator, f.denominator)
    raise TypeError(f"not a rational: {c!r}")


def to_fraction(c) -> Fraction:
    c = _q(c)
    return Fraction(int(c.p), int(c.q))


class MPoly:
    """Polynomial over Q in the variables of a :class:`VarTable`."""

    __slots__ = ("table", "raw")

    def __init__(self, table: VarTable, raw):
        self.table = table
        self.raw = raw

    # construction helpers
    def _wrap(self, raw) -> "MPoly":
        return MPoly(self.table, raw)

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.table is not self.table:
                other = other.to_table(self.table)
            return other.raw
        return self.table.ctx.constant(_q(other))

    # arithmetic
    def __add__(self, other):
        return self._wrap(self.raw + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.raw - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self.raw)

    def __mul__(self, other):
        return self._wrap(self.raw * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.raw)

    def __pow__(self, k: int):
        return self._wrap(self.raw**k)

    def __truediv__(self, other):
        """Exact division; raises ``ArithmeticError`` if not exact."""
        if not isinstance(other, MPoly):
            return self._wrap(self.raw / _q(other))
        q, r = divmod(self.raw, self._coerce(other))
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return self._wrap(q)

    def divides(self, other: "MPoly") -> bool:
        """True when ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return divmod(other.raw, self.raw)[1].is_zero()

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return (self.raw - self._coerce(other)).is_zero()
        try:
            return (self.raw - self._coerce(other)).is_zero()
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.table.names, tuple(sorted(self.raw.to_dict().items(), key=lambda kv: kv[0]))).__repr__())

    def __bool__(self):
        return not self.raw.is_zero()

    def __len__(self):
        return len(self.raw)

    # inspection
    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def is_constant(self) -> bool:
        return self.raw.is_constant()

    def constant_value(self) -> flint.fmpq:
        if not self.raw.is_constant():
            raise ValueError("not a constant")
        return self.raw.leading_coefficient() if not self.raw.is_zero() else flint.fmpq(0)

    def terms(self) -> list[tuple[tuple[int, ...], flint.fmpq]]:
        """Terms in descending lex order."""
        return list(self.raw.terms())

    def degree(self, var: str) -> int:
        if self.raw.is_zero():
            return -1
        return self.raw.degrees()[self.table.index(var)]

    def total_degree(self) -> int:
        if self.raw.is_zero():
            return -1
        return int(self.raw.total_degree())

    def variables(self) -> tuple[str, ...]:
        if self.raw.is_zero():
            return ()
        degs = self.raw.degrees()
        return tuple(n for n, d in zip(self.table.names, degs) if d > 0)

    def involves(self, vars: Iterable[str]) -> bool:
        if self.raw.is_zero():
            return False
        degs = self.raw.degrees()
        return any(degs[self.table.index(v)] > 0 for v in vars if v in self.table._index)

    def is_homogeneous(self, vars: Sequence[str] | None = None) -> bool:
        return len(self.homogeneous_degrees(vars)) <= 1

    def homogeneous_degrees(self, vars: Sequence[str] | None = None) -> set[int]:
        idx = [self.table.index(v) for v in (vars if vars is not None else self.table.names)]
        return {sum(m[i] for i in idx) for m in self.raw.monoms()}

    def leading_coefficient(self) -> flint.fmpq:
        """Coefficient of the lex-largest term."""
        return self.raw.leading_coefficient() if not self.raw.is_zero() else flint.fmpq(0)

    def coefficients_in(self, vars: Sequence[str]) -> dict[tuple[int, ...], "MPoly"]:
        """Group terms by their exponents in ``vars``; values live in the same table."""
        idx = [self.table.index(v) for v in vars]
        groups: dict[tuple, dict] = defaultdict(dict)
        for mon, c in self.raw.terms():
            key = tuple(mon[i] for i in idx)
            m = list(mon)
            for i in idx:
                m[i] = 0
            groups[key][tuple(m)] = c
        ctx = self.table.ctx
        return {k: MPoly(self.table, ctx.from_dict(d)) for k, d in groups.items()}

    def univariate_coefficients(self, var: str) -> list["MPoly"]:
        """Coefficients of ``var``^0 .. ``var``^deg."""
        groups = self.coefficients_in([var])
        deg = max((k[0] for k in groups), default=-1)
        zero = self.table.zero()
        return [groups.get((k,), zero) for k in range(deg + 1)]

    def derivative(self, var: str) -> "MPoly":
        return self._wrap(self.raw.derivative(self.table.index(var)))

    def to_table(self, table: VarTable) -> "MPoly":
        """Move to another table by variable name; missing names raise."""
        if table is self.table:
            return self
        if not self.raw.is_zero():
            missing = [v for v in self.variables() if v not in table._index]
            if missing:
                raise ValueError(f"variables {missing} not in target table")
        gens = [table.ctx.gen(table.index(n)) if n in table._index else table.ctx.constant(0)
                for n in self.table.names]
        if not gens:
            return MPoly(table, table.ctx.constant(self.constant_value()))
        return MPoly(table, self.raw.compose(*gens, ctx=table.ctx))

    def eval(self, values: Mapping[str, object]) -> "MPoly":
        """Substitute rational numbers for some variables."""
        return self._wrap(self.raw.subs({k: _q(v) for k, v in values.items()}))

    def rename(self, mapping: Mapping[str, str], table: VarTable | None = None) -> "MPoly":
        """Rename variables; the result lives in ``table`` (default: same table)."""
        table = table or self.table
        gens = [table.ctx.gen(table.index(mapping.get(n, n))) if mapping.get(n, n) in table._index
                else table.ctx.constant(0) for n in self.table.names]
        return MPoly(table, self.raw.compose(*gens, ctx=table.ctx))

    def compose(self, images: Mapping[str, "MPoly"], table: VarTable | None = None) -> "MPoly":
        """Polynomial substitution ``var -> image``; unmapped variables are kept."""
        table = table or self.table
        gens = []
        for n in self.table.names:
            if n in images:
                img = images[n]
                gens.append(img.to_table(table).raw if isinstance(img, MPoly) else table.ctx.constant(_q(img)))
            elif n in table._index:
                gens.append(table.ctx.gen(table.index(n)))
            else:
                if self.degree(n) > 0:
                    raise ValueError(f"variable {n} has no image")
                gens.append(table.ctx.constant(0))
        return MPoly(table, self.raw.compose(*gens, ctx=table.ctx))

    # printing
    def __str__(self) -> str:
        return to_str(self)

    def __repr__(self) -> str:
        return f"MPoly({to_str(self)!r})"


# ---------------------------------------------------------------------------
# normalization, gcd, content


def integer_content(p: MPoly) -> flint.fmpq:
    """Positive rational c with p/c having coprime integer coefficients."""
    if p.is_zero():
        return flint.fmpq(0)
    num = 0
    den = 1
    from math import gcd, lcm
    for c in p.raw.coeffs():
        num = gcd(num, int(c.p))
        den = lcm(den, int(c.q))
    return flint.fmpq(num, den)


def normalize(p: MPoly) -> MPoly:
    """Integer content 1 and positive lex-leading coefficient (zero stays zero)."""
    if p.is_zero():
        return p
    c = integer_content(p)
    if p.leading_coefficient() < 0:
        c = -c
    return MPoly(p.table, p.raw / c)


def gcd(a: MPoly, b: MPoly) -> MPoly:
    """Normalized greatest common divisor."""
    if a.is_zero():
        return normalize(b)
    if b.is_zero():
        return normalize(a)
    return normalize(MPoly(a.table, a.raw.gcd(a._coerce(b))))


def gcd_list(polys: Iterable[MPoly]) -> MPoly | None:
    """Normalized gcd of a family, smallest first, stopping early at 1."""
    polys = sorted((p for p in polys if not p.is_zero()), key=len)
    if not polys:
        return None
    g = polys[0].raw
    for p in polys[1:]:
        g = g.gcd(p.raw)
        if g.is_constant():
            break
    return normalize(MPoly(polys[0].table, g))


def lcm(a: MPoly, b: MPoly) -> MPoly:
    return normalize(a * b / gcd(a, b))


def content_primpart(p: MPoly, vars: Sequence[str]) -> tuple[MPoly, MPoly]:
    """Split ``p = content * primpart`` viewing ``p`` as a polynomial in ``vars``.

    The content is the gcd of the coefficients (polynomials in the remaining
    variables); the primitive part is normalized and the rational unit is
    kept on the content.
    """
    if p.is_zero():
        return p.table.zero(), p.table.zero()
    vars = [v for v in vars if v in p.table._index]
    groups = p.coefficients_in(vars)
    g = gcd_list(groups.values())
    prim = normalize(p / g)
    return p / prim, prim


def primpart(p: MPoly, vars: Sequence[str]) -> MPoly:
    return content_primpart(p, vars)[1]


def squarefree_part(p: MPoly, var: str) -> MPoly:
    """Product of the distinct irreducible factors of ``p`` that involve ``var``."""
    if p.degree(var) <= 0:
        return p.table.one()
    return normalize(p / gcd(p, p.derivative(var)))


def resultant(a: MPoly, b: MPoly, var: str) -> MPoly:
    """Resultant with respect to ``var`` (flint subresultant kernel)."""
    if a.is_zero() or b.is_zero():
        return a.table.zero()
    da, db = a.degree(var), b.degree(var)
    if da == 0 and db == 0:
        return a.table.one()
    if da == 0:
        return a**db
    if db == 0:
        return b**da
    return MPoly(a.table, a.raw.resultant(a._coerce(b), a.table.index(var)))


def sylvester_resultant(a: MPoly, b: MPoly, var: str) -> MPoly:
    """Resultant as the Sylvester determinant, by fraction-free Bareiss elimination.

    Kept as an independent check on :func:`resultant`; cubic in the
    matrix size, so only used on small inputs.
    """
    if a.is_zero() or b.is_zero():
        return a.table.zero()
    ca = a.univariate_coefficients(var)[::-1]
    cb = b.univariate_coefficients(var)[::-1]
    m, n = len(ca) - 1, len(cb) - 1
    if m == 0 and n == 0:
        return a.table.one()
    if m == 0:
        return ca[0] ** n
    if n == 0:
        return cb[0] ** m
    size = m + n
    zero = a.table.zero()
    rows = []
    for i in range(n):
        rows.append([zero] * i + ca + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + cb + [zero] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _bareiss_det(M: list[list[MPoly]]) -> MPoly:
    M = [row[:] for row in M]
    n = len(M)
    sign = 1
    prev = M[0][0].table.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return M[0][0].table.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def det(M: list[list[MPoly]]) -> MPoly:
    """Determinant of a square matrix of polynomials."""
    return _bareiss_det(M)


# ---------------------------------------------------------------------------
# rational functions


class RatFrac:
    """Reduced fraction num/den of polynomials in one table, den normalized."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, reduce: bool = True):
        if den is None:
            den = num.table.one()
        if den.table is not num.table:
            den = den.to_table(num.table)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if num.is_zero():
                den = num.table.one()
            elif not den.is_constant():
                g = gcd(num, den)
                if not g.is_constant():
                    num, den = num / g, den / g
            c = integer_content(den)
            if den.leading_coefficient() < 0:
                c = -c
            num, den = num / c, den / c
        self.num = num
        self.den = den

    @property
    def table(self) -> VarTable:
        return self.num.table

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def __add__(self, o):
        o = _as_frac(o, self.table)
        return RatFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, o):
        o = _as_frac(o, self.table)
        return RatFrac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, o):
        return _as_frac(o, self.table) - self

    def __mul__(self, o):
        o = _as_frac(o, self.table)
        return RatFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _as_frac(o, self.table)
        return RatFrac(self.num * o.den, self.den * o.num)

    def __neg__(self):
        return RatFrac(-self.num, self.den, reduce=False)

    def __eq__(self, o):
        o = _as_frac(o, self.table)
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def derivative(self, var: str) -> "RatFrac":
        return RatFrac(self.num.derivative(var) * self.den - self.num * self.den.derivative(var),
                       self.den * self.den)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _as_frac(o, table: VarTable) -> RatFrac:
    if isinstance(o, RatFrac):
        return o
    if isinstance(o, MPoly):
        return RatFrac(o.to_table(table), reduce=False)
    return RatFrac(table.const(o), reduce=False)


def substitute(p: MPoly, bindings: Mapping[str, object], table: VarTable | None = None) -> RatFrac:
    """Substitute polynomials or rational functions for variables.

    Rational bindings are handled by homogenizing each substituted variable
    against its denominator, so only one flint composition is needed.
    """
    table = table or p.table
    fr = {k: (v if isinstance(v, RatFrac) else _as_frac(v, table)) for k, v in bindings.items()}
    fr = {k: RatFrac(v.num.to_table(table), v.den.to_table(table), reduce=False) for k, v in fr.items()}
    polyb = {k: v.num / v.den.constant_value() for k, v in fr.items() if v.den.is_constant()}
    ratb = {k: v for k, v in fr.items() if not v.den.is_constant()}
    if not ratb:
        return RatFrac(p.compose(polyb, table), reduce=False)
    # homogenize each rational variable x with a fresh symbol, then compose
    fresh = [f"_d{i}" for i in range(len(ratb))]
    work = p.table.with_vars(fresh)
    q = p.to_table(work)
    den = table.one()
    for (x, v), d in zip(ratb.items(), fresh):
        deg = q.degree(x)
        if deg <= 0:
            continue
        q = homogenize(q, d, vars=[x], degree=deg)
        den = den * v.den**deg
    images = dict(polyb)
    for (x, v), d in zip(ratb.items(), fresh):
        images[x] = v.num
        images[d] = v.den
    return RatFrac(q.compose(images, table), den)


def homogenize(p: MPoly, hvar: str, vars: Sequence[str] | None = None, degree: int | None = None) -> MPoly:
    """Homogenize in ``vars`` (default: all but ``hvar``) with ``hvar`` to ``degree``."""
    table = p.table
    if hvar not in table._index:
        table = table.with_vars([hvar])
        p = p.to_table(table)
    vars = [v for v in (vars if vars is not None else table.names) if v != hvar]
    idx = [table.index(v) for v in vars]
    hi = table.index(hvar)
    if p.is_zero():
        return p
    degs = [sum(m[i] for i in idx) for m in p.raw.monoms()]
    top = max(degs)
    if degree is None:
        degree = top
    if degree < top:
        raise ValueError("target degree below polynomial degree")
    terms = {}
    for (m, c), dm in zip(p.raw.terms(), degs):
        mm = list(m)
        mm[hi] += degree - dm
        terms[tuple(mm)] = c
    return MPoly(table, table.ctx.from_dict(terms))


def dehomogenize(p: MPoly, hvar: str) -> MPoly:
    return p.eval({hvar: 1})


def jacobian_numerator(f: RatFrac, g: RatFrac, vars: Sequence[str]) -> MPoly:
    """Reduced numerator of the Jacobian determinant of (f, g) in two variables."""
    x, y = vars
    fx, fy = f.derivative(x), f.derivative(y)
    gx, gy = g.derivative(x), g.derivative(y)
    jac = fx * gy - fy * gx
    return normalize(jac.num)


# ---------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*^()/]))")


def parse(text: str, table: VarTable) -> MPoly:
    """Parse ``text`` over ``table``.

    Grammar: sums of products of factors, ``^`` (or ``**``) with a
    non-negative integer exponent, parentheses, integer or ``a/b`` literals
    and variable names.  Unknown names raise :class:`ParseError`.
    """
    toks: list[tuple[str, str, int]] = []
    pos = 0
    s = text.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            col = pos + len(s[pos:]) - len(s[pos:].lstrip())
            raise ParseError(f"unexpected character {s[col]!r}", col)
        start = m.start(m.lastindex)
        kind = ("num", "name", "op")[m.lastindex - 1]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("end", "", len(s)))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def expr():
        sign = 1
        if peek()[1] in "+-" and peek()[0] == "op":
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in ("+", "-"):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = power()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] in ("^", "**"):
            take()
            kind, val, at = take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a non-negative integer", at)
            return base ** int(val)
        return base

    def atom():
        kind, val, at = take()
        if kind == "num":
            return table.const(Fraction(val))
        if kind == "name":
            if val not in table._index:
                raise ParseError(f"unknown variable {val!r}", at)
            return table.var(val)
        if kind == "op" and val == "(":
            inner = expr()
            k2, v2, at2 = take()
            if v2 != ")":
                raise ParseError("expected ')'", at2)
            return inner
        if kind == "op" and val == "-":
            return -power()
        if kind == "end":
            raise ParseError("unexpected end of input", at)
        raise ParseError(f"unexpected token {val!r}", at)

    if toks[0][0] == "end":
        raise ParseError("empty polynomial", 0)
    out = expr()
    if peek()[0] != "end":
        raise ParseError(f"unexpected token {peek()[1]!r}", peek()[2])
    return out


def _fmt_coeff(c: flint.fmpq) -> str:
    return str(int(c.p)) if c.q == 1 else f"{int(c.p)}/{int(c.q)}"


def to_str(p: MPoly) -> str:
    """Canonical text: terms in descending lex order, ``^`` for powers."""
    if p.is_zero():
        return "0"
    parts = []
    names = p.table.names
    for k, (mon, c) in enumerate(p.raw.terms()):
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, mon) if e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def poly_key(p: MPoly) -> tuple:
    """Hashable, order-stable key for deduplication."""
    return tuple((tuple(m), (int(c.p), int(c.q))) for m, c in p.raw.terms())


def eval_rational(p: MPoly, values: Mapping[str, object]) -> flint.fmpq:
    """Value of ``p`` at a full rational assignment."""
    r = p.eval(values)
    if not r.is_constant():
        raise ValueError(f"unassigned variables {r.variables()}")
    return r.constant_value()


def lcm_list(polys: Iterable[MPoly]) -> MPoly:
    return reduce(lcm, polys)


# ---------------------------------------------------------------------------
# linear algebra over Q


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[flint.fmpq]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if not rows:
        return [], []
    M = flint.fmpq_mat(len(rows), ncols, [_q(c) for r in rows for c in r])
    R, rank = M.rref()
    out = [[R[i, j] for j in range(ncols)] for i in range(rank)]
    pivots = [next(j for j in range(ncols) if r[j] != 0) for r in out]
    return out, pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[flint.fmpq]]:
    """Basis of {x : rows * x = 0}, in reduced echelon form."""
    R, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [flint.fmpq(0)] * ncols
        v[f] = flint.fmpq(1)
        for r, p in zip(R, pivots):
            v[p] = -r[f]
        basis.append(v)
    if not basis:
        return []
    E, _ = rref(basis, ncols)
    return E
