from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from circleprod import Element, JointElement, make_space
from circleprod.symmetry import antisymmetrize, symmetrize

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]
SPACES = ROOT / "spaces"

IDENTITY2 = make_space(2, 2, [[1, 0], [0, 1]], True)
RATIONAL23 = make_space(2, 3, [[1, "1/2", -2], ["-1/3", 3, "2/5"]], False)
# self-dual but with a non-symmetric Gram matrix
SKEWED2 = make_space(2, 2, [[2, 3], [5, 7]], True)
SYMMETRIC3 = make_space(3, 3, [[1, "1/2", 0], ["1/2", -1, 2], [0, 2, 3]], True)


@pytest.fixture
def identity2():
    return IDENTITY2


@pytest.fixture
def rational23():
    return RATIONAL23


coefs = st.sampled_from([Fraction(x) for x in ("-2", "-1", "-1/2", "1/2", "1", "2")])


def words(dim, max_grade, min_grade=0):
    return st.lists(st.integers(1, dim), min_size=min_grade, max_size=max_grade).map(tuple)


def elements(dim=2, max_grade=3, side="U", min_grade=0, max_terms=4):
    return st.lists(st.tuples(words(dim, max_grade, min_grade), coefs), min_size=0,
                    max_size=max_terms).map(lambda ts: Element(ts, side))


def joints(dim_u=2, dim_v=2, max_grade=2, max_terms=3):
    key = st.tuples(words(dim_u, max_grade), words(dim_v, max_grade))
    return st.lists(st.tuples(key, coefs), max_size=max_terms).map(JointElement)


def vectors(dim=2, side="U"):
    return elements(dim, 1, side, min_grade=1, max_terms=3).filter(bool)


def symmetric_elements(dim=2, max_grade=2):
    return elements(dim, max_grade).map(symmetrize)


def antisymmetric_elements(dim=2, max_grade=2):
    return elements(dim, max_grade).map(antisymmetrize)
