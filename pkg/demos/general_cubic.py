"""The general driver on the cubic.

The base locus is a single point at infinity where the forms do not meet
transversally, so the driver scans degrees: nothing of degree 2 has the
right fibers, and degree 3 succeeds.  This takes a minute or two.
"""
import time

from surfreparam import ProjParam, reparametrize_general

P = ProjParam.parse("t1^3 + t2*t3^2; t1^3; t2*t3^2; t3^3")
t0 = time.perf_counter()
sol = reparametrize_general(P, trace=lambda s: print(f"{time.perf_counter() - t0:7.1f}s  {s}"))
print("S =", sol.S)
print("Q =", sol.Q)
for d, info in sol.diagnostics["per_degree"].items():
    print(f"degree {d}: {info['solution_space']}")
