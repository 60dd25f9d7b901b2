import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from unitroot.laurent import LaurentPoly, parse  # noqa: E402
from unitroot.stienstra import make_context  # noqa: E402

HYPERELLIPTIC = "y^2 - x^5 - 2*x^2 - x - 1"
FROBPOLY_11 = "1,3,18,33,121"


@pytest.fixture(scope="session")
def hyper():
    return parse(HYPERELLIPTIC, ["x", "y"])


@pytest.fixture(scope="session")
def hyper_ctx(hyper):
    return make_context(hyper, 11)


def random_laurent(rng: random.Random, nvars: int, max_terms: int = 6, lo: int = -2, hi: int = 2):
    """A random Laurent polynomial with coefficients in [-5, 5] and small exponents."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(lo, hi) for _ in range(nvars))
        terms[e] = rng.choice([c for c in range(-5, 6) if c])
    names = ["x", "y", "z"][:nvars]
    return LaurentPoly(terms, names)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
