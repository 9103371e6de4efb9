"""Hide a plane map inside a parametrization and find it again.

P is built as Q0 o S0 with S0 the squaring map and Q0 birational.  The
general driver does not know S0; it finds some S of degree 2 with the same
fibers, which must agree with S0 up to a projective change of coordinates.
"""
from surfreparam import PlaneMap, ProjParam, reparametrize_general
from surfreparam.fiber import fibers_equal, fiber_of_planemap

S0 = PlaneMap.parse("t1^2; t2^2; t3^2")
Q0 = ProjParam.parse("t1*t3 + t2*t3; t2*t3 - t3^2; t3^2; t1^2 - t2^2 + t1*t3")
P = Q0.compose(S0).reduced()
print("P =", P)

sol = reparametrize_general(P, seed=1)
print("S =", sol.S)
print("Q =", sol.Q)
print("verified:", sol.certificate.passed)
print("same fibers as S0:", fibers_equal(fiber_of_planemap(sol.S), fiber_of_planemap(S0)))
