from fractions import Fraction

import pytest
from hypothesis import given

from circleprod import Element, JointElement, SideError, duality, e, f, grade_parts, joint_product
from circleprod.symmetry import symmetrize
from circleprod.tensor import concat_product, embed, format_element, grade_part

from conftest import IDENTITY2, RATIONAL23, elements, joints


def test_concat_examples():
    assert e(1) * e(2) == e(1, 2)
    assert (e(1) + e(2)) * e(1) == e(1, 1) + e(2, 1)
    assert concat_product(Element.scalar(1), e(1, 2)) == e(1, 2)
    with pytest.raises(SideError):
        concat_product(e(1), f(1))


def test_joint_product_examples():
    a = JointElement.term((1,), ())
    b = JointElement.term((), (1,))
    assert joint_product(a, b) == JointElement.term((1,), (1,))
    assert (joint_product(JointElement.term((1,), (2,)), JointElement.term((2,), (1,)))
            == JointElement.term((1, 2), (2, 1)))
    c = JointElement.term((1, 2), (3,), coef=Fraction(-1, 2))
    assert joint_product(JointElement.unit(), c) == c


def test_duality_examples():
    assert duality(e(1, 2), f(1, 2), IDENTITY2) == 1
    assert duality(e(1), f(1, 2), IDENTITY2) == 0
    assert duality(e(1, 2), f(2, 1), IDENTITY2) == 0
    # positional product with a nontrivial Gram
    assert duality(e(1, 2), f(3, 2), RATIONAL23) == Fraction(-2) * 3
    with pytest.raises(SideError):
        duality(f(1), e(1), IDENTITY2)


def test_grade_parts_examples():
    a = Element.scalar(3) + e(1) + e(1, 2)
    assert grade_parts(a) == [(0, Element.scalar(3)), (1, e(1)), (2, e(1, 2))]
    assert grade_parts(Element.zero()) == []
    parts = grade_parts(symmetrize(e(1, 2)))
    assert [g for g, _ in parts] == [2]


def test_printing():
    assert format_element(Element.zero()) == "0"
    assert str(Element.scalar(Fraction(-3, 2)) + e(2, 1) * 2) == "-3/2 + 2·e2*e1"
    assert str(JointElement.term((1,), (2, 1), coef=-1) + 1) == "1·1;1 - 1·e1;f2*f1"


def oracle_duality(a, b, spec):
    # explicit double sum over terms and positions, independent of the library loop
    total = Fraction(0)
    for u, cu in a.items():
        for v, cv in b.items():
            if len(u) == len(v):
                prod = Fraction(1)
                for k in range(len(u)):
                    prod *= spec.gram[u[k] - 1][v[k] - 1]
                total += cu * cv * prod
    return total


@given(elements(2, 3, "U"), elements(3, 3, "V"))
def test_duality_matches_oracle(a, b):
    assert duality(a, b, RATIONAL23) == oracle_duality(a, b, RATIONAL23)


@given(elements(), elements(), elements())
def test_concat_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert Element.scalar(1) * a == a == a * Element.scalar(1)


@given(elements(max_grade=3), elements(max_grade=3))
def test_grade_additivity(a, b):
    for g in range(7):
        rhs = sum((grade_part(a, k) * grade_part(b, g - k) for k in range(g + 1)), Element.zero())
        assert grade_part(a * b, g) == rhs


@given(joints(), joints(), joints())
def test_joint_algebra_associative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert JointElement.unit() * a == a


@given(elements(2, 2, "U"), elements(3, 2, "V"))
def test_embed_commutes(u, v):
    # (u;1)(1;v) == (1;v)(u;1) since the legs live in different factors
    assert embed(u) * embed(v) == embed(v) * embed(u)
