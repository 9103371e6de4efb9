"""Seeded generator of round-trip cases P = Q0 o S0 with Q0 birational.

Even seeds use the squaring map for S0, odd seeds a random quadratic map
of degree >= 2.  Q0 is a random invertible linear change of
(t1 t3, t2 t3, t3^2, q) with q a random conic, so Q0 is birational.
"""

import random

import flint

from surfreparam import PlaneMap, ProjParam
from surfreparam.baselocus import monomials
from surfreparam.fiber import PROJ, deg_map_planemap


def _form(rng, d, bound=3):
    return PROJ.from_dict({m: rng.randint(-bound, bound) for m in monomials(d)})


def _plane_map(rng):
    while True:
        S0 = PlaneMap(tuple(_form(rng, 2) for _ in range(3)))
        try:
            if S0.common_factor().is_constant() and deg_map_planemap(S0) >= 2:
                return S0
        except ValueError:
            pass


def case(seed: int) -> tuple[ProjParam, ProjParam, PlaneMap]:
    rng = random.Random(seed)
    S0 = PlaneMap.parse("t1^2; t2^2; t3^2") if seed % 2 == 0 else _plane_map(rng)
    t1, t2, t3 = (PROJ.var(v) for v in ("t1", "t2", "t3"))
    while True:
        M = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
        if flint.fmpq_mat(4, 4, [c for r in M for c in r]).det() != 0:
            break
    base = [t1 * t3, t2 * t3, t3 * t3, _form(rng, 2)]
    Q0 = ProjParam(tuple(sum((base[j] * M[i][j] for j in range(4)), PROJ.zero()) for i in range(4)))
    return Q0.compose(S0).reduced(), Q0, S0
