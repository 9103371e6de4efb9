"""Fulton's algorithm for the intersection multiplicity of two affine plane
curves at the origin.  Independent of the resultant-based computation in
the package; used as a test oracle."""

import sympy

x, y = sympy.symbols("x y")


def intersection_at_origin(F, G, depth=0):
    F = sympy.Poly(F, x, y)
    G = sympy.Poly(G, x, y)
    if F.is_zero or G.is_zero:
        return float("inf")
    if F.eval((0, 0)) != 0 or G.eval((0, 0)) != 0:
        return 0
    f = sympy.Poly(F.as_expr().subs(y, 0), x)
    g = sympy.Poly(G.as_expr().subs(y, 0), x)
    r = f.degree() if not f.is_zero else None
    s = g.degree() if not g.is_zero else None
    if r is None and s is None:
        return float("inf")  # y divides both
    if r is None or (s is not None and s < r):
        F, G, f, g, r, s = G, F, g, f, s, r
    # now f != 0 and (g == 0 or deg g >= deg f)
    if s is None:
        # G = y * G1
        G1 = sympy.Poly(sympy.cancel(G.as_expr() / y), x, y)
        # I(F, y) is the order of f at 0
        order = min(m[0] for m in f.monoms())
        return order + intersection_at_origin(F.as_expr(), G1.as_expr(), depth + 1)
    G2 = sympy.expand(f.LC() * G.as_expr() - g.LC() * x ** (s - r) * F.as_expr())
    return intersection_at_origin(F.as_expr(), G2, depth + 1)
