import random
import time

import pytest
from hypothesis import HealthCheck, settings

from surfreparam import PlaneMap, ProjParam
from surfreparam.fiber import PROJ
from surfreparam.polycore import VarTable

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# map degree 3, one non-transversal base point at infinity
CUBIC = "t1^3 + t2*t3^2; t1^3; t2*t3^2; t3^3"

# degree 6, map degree 3, transversal base locus
SEXTIC = (
    "-t1^2*(t1^3 - t1^2*t3 - 2*t1*t2*t3 - t2^2*t3)*t2;"
    "t1^6 - 2*t1^5*t3 + t1^4*t2^2 - 4*t1^4*t2*t3 + t1^4*t3^2 - t1^3*t2^3 + 4*t1^3*t2*t3^2"
    " + t1^2*t2^3*t3 + 6*t1^2*t2^2*t3^2 + 4*t1*t2^3*t3^2 + t2^4*t3^2;"
    "t1^4*t2^2;"
    "t1^2*(t1^2 + t1*t2 - t1*t3 - t2^2)^2"
)

# reference reparametrizing pair for CUBIC, homogenized with t3
CUBIC_S = ("1/2*t1^3 + 1/2*t2*t3^2 - 1/2*t3^3 + 1/2*t2^3 - 1/2*t2^2*t3;"
           "t1^3 + t2^3 - t2^2*t3 + 3/2*t2*t3^2 + 1/2*t3^3; t3^3")
CUBIC_Q = ("64*t1^3 - 96*t1^2*t2 + 48*t1*t2^2 - 8*t2^3 + 160*t1^2*t3 - 160*t1*t2*t3 + 40*t2^2*t3"
           " + 134*t1*t3^2 - 66*t2*t3^2 + 37*t3^3;"
           "64*t1^3 - 96*t1^2*t2 + 48*t1*t2^2 - 8*t2^3 + 160*t1^2*t3 - 160*t1*t2*t3 + 40*t2^2*t3"
           " + 138*t1*t3^2 - 68*t2*t3^2 + 40*t3^3;"
           "(-3*t3 - 4*t1 + 2*t2)*t3^2; t3^3")

# reference Q for SEXTIC, and the plane map of the reference specialization
# of the linear-system coefficients.  SEXTIC_S_MISPRINT is the same map with
# a wrong first coordinate; it does not compose to SEXTIC.
SEXTIC_Q = "t2*t3; t2^2 - t1*t3 + 2*t3^2; t3^2; (t1 + t2 - 2*t3)^2"
SEXTIC_S = "t1^2*t2 + t1*t2^2 - 2*t1*t2*t3 - t2^2*t3; -t1^3 + t1^2*t3 + 2*t1*t2*t3 + t2^2*t3; t1^2*t2"
SEXTIC_S_MISPRINT = "t1*(t1^2 + t1*t2 - t2^2 - t1*t3); -(t1^3 - t1^2*t3 - 2*t1*t2*t3 - t2^2*t3); t1^2*t2"

FIBER_H = VarTable(["Z", "w", "h1", "h2", "t1", "t2"])


@pytest.fixture(scope="session")
def cubic():
    return ProjParam.parse(CUBIC)


@pytest.fixture(scope="session")
def sextic():
    return ProjParam.parse(SEXTIC)


@pytest.fixture(scope="session")
def cubic_solution(cubic):
    from surfreparam import reparametrize_general
    t0 = time.perf_counter()
    sol = reparametrize_general(cubic, seed=0)
    sol.elapsed = time.perf_counter() - t0
    return sol


@pytest.fixture(scope="session")
def sextic_solution(sextic):
    from surfreparam import reparametrize_empty_base
    t0 = time.perf_counter()
    sol = reparametrize_empty_base(sextic, seed=0)
    sol.elapsed = time.perf_counter() - t0
    return sol


def random_form(rng: random.Random, d: int, bound: int = 3, density: float = 1.0):
    from surfreparam.baselocus import monomials
    terms = {m: rng.randint(-bound, bound) for m in monomials(d) if rng.random() < density}
    return PROJ.from_dict(terms)


def plane(text: str) -> PlaneMap:
    return PlaneMap.parse(text)


# --- acceptance report ----------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
