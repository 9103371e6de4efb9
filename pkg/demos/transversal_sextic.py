"""A sextic with a transversal base locus.

The base points and their multiplicities give the degree of the image
surface, and from it the degree of a plane map S whose fibers match those
of P.  S is then searched inside the curves of that degree through the
base points with the prescribed multiplicities, and Q with P = Q o S is
recovered by elimination.
"""
from pathlib import Path

from surfreparam import ProjParam, reparametrize_empty_base
from surfreparam.baselocus import base_locus, divisor_D, linear_system_basis, surface_degree

text = (Path(__file__).parent / "data" / "sextic_transversal.txt").read_text()
P = ProjParam.parse("\n".join(l.split("#")[0] for l in text.splitlines()))

report = base_locus(P.forms)
for pc, m, r in zip(report.classes, report.multiplicity, report.min_multiplicity):
    print(f"base point {pc.label()}: multiplicity {m}, every form vanishes to order >= {r}")
print("transversal:", report.transversal)

surf = surface_degree(P, report)
print(f"deg P^2 = degMap * deg(surface) + mult:  {P.degree**2} = 3*{surf} + {report.total}")

D = divisor_D(report, surf)
L = linear_system_basis(3, D)
print("D =", D)
print("cubics through D:", ", ".join(str(f) for f in L.basis))

sol = reparametrize_empty_base(P, trace=lambda s: print("  ..", s))
print("S =", sol.S)
print("Q =", sol.Q)
print("certificate:", sol.certificate.as_dict())
