"""How many parameter points map to a generic surface point?

We load the cubic from demos/data, count the preimages of a generic point
(the map degree) and print the punctured fiber: the other preimages of a
point (h1, h2), written as polynomials over Q(h1, h2).
"""
from pathlib import Path

from surfreparam import ProjParam, deg_map_param, gstar, r_polynomials

text = (Path(__file__).parent / "data" / "cubic_fiber3.txt").read_text()
text = "\n".join(l.split("#")[0] for l in text.splitlines())
P = ProjParam.parse(text)
print("P =", P)

R1, R2 = r_polynomials(P)
print("degree of R1 in t1:", R1.degree("t1"), " degree of R2 in t2:", R2.degree("t2"))
print("degMap(P) =", deg_map_param(P))

# The point (h1, h2) itself is removed; two more preimages remain.
G = gstar(P)
print("u* =", G.ustar)
print("t2 =", G.v_num, "/", G.v_den)

# Composing with squaring multiplies the degree by 4.
from surfreparam import PlaneMap
sq = P.compose(PlaneMap.parse("t1^2; t2^2; t3^2"))
print("after squaring the parameters: degMap =", deg_map_param(sq))
