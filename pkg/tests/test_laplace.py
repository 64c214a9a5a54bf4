import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circleprod import (Element, JointElement, e, f, joint_coproduct, laplace_closed,
                        laplace_recursive, self_pairing)
from circleprod.laplace import permanent_pairing
from circleprod.symmetry import power, symmetrize
from circleprod.tensor import duality, embed

from conftest import IDENTITY2, RATIONAL23, SKEWED2, joints, vectors, words

G = SKEWED2  # non-symmetric Gram so that argument order matters


def J(u=(), v=(), c=1):
    return JointElement.term(tuple(u), tuple(v), coef=c)


def test_initial_condition_examples():
    for lap in (laplace_closed, laplace_recursive):
        assert lap(J((1,)), J((), (1,)), RATIONAL23) == RATIONAL23.pair(1, 1)
        assert lap(J((1, 2)), J((), (1,)), RATIONAL23) == 0
        g = G.pair
        assert lap(J((1, 2)), J((), (1, 2)), G) == g(1, 1) * g(2, 2) + g(1, 2) * g(2, 1)
        assert lap(J(), J(), G) == 1
        assert lap(J((1,), (2,)), J((2,), (1,)), IDENTITY2) == 1


def test_power_spot_value():
    x2 = embed(power(e(1), 2))
    y2 = embed(power(f(1), 2))
    assert laplace_closed(x2, y2, IDENTITY2) == 2 == laplace_recursive(x2, y2, IDENTITY2)


def test_same_side_generators_vanish():
    assert laplace_recursive(J((1,)), J((2,)), G) == 0 == laplace_closed(J((1,)), J((2,)), G)
    assert laplace_recursive(J((), (1,)), J((), (1,)), G) == 0


def test_self_pairing_needs_self_duality():
    assert self_pairing(e(1), e(2), G) == G.pair(1, 2)
    with pytest.raises(ValueError):
        self_pairing(e(1), e(1), RATIONAL23)


def symm_duality(u, v, spec):
    # n! <Symm u, Symm v> computed literally through the projection and the duality
    n = len(u)
    if n != len(v):
        return Fraction(0)
    return factorial(n) * duality(symmetrize(Element.word(*u)), symmetrize(Element.word(*v, side="V")), spec)


@given(st.integers(0, 4).flatmap(lambda n: st.tuples(words(2, n, n), words(3, n, n))))
def test_permanent_equals_symmetrized_duality(uv):
    u, v = uv
    assert permanent_pairing(u, v, RATIONAL23) == symm_duality(u, v, RATIONAL23)


@given(st.integers(0, 4).flatmap(lambda n: st.tuples(words(2, n, n), words(3, n, n))))
def test_permanent_by_permutation_sum(uv):
    u, v = uv
    total = sum((eval_prod(u, p, RATIONAL23) for p in itertools.permutations(v)), Fraction(0))
    assert permanent_pairing(u, v, RATIONAL23) == total


def eval_prod(u, v, spec):
    out = Fraction(1)
    for i, j in zip(u, v):
        out *= spec.pair(i, j)
    return out


@given(joints(2, 3, max_grade=3), joints(2, 3, max_grade=3))
def test_recursive_matches_closed(a, b):
    assert laplace_recursive(a, b, RATIONAL23) == laplace_closed(a, b, RATIONAL23)


@given(joints(2, 2, max_grade=3), joints(2, 2, max_grade=3))
def test_recursive_matches_closed_skewed(a, b):
    assert laplace_recursive(a, b, G) == laplace_closed(a, b, G)


@given(joints(2, 3, max_grade=2), joints(2, 3, max_grade=2), joints(2, 3, max_grade=2))
def test_splitting_identity(a, b, c):
    rhs = sum((k * laplace_closed(J(*l), b, RATIONAL23) * laplace_closed(J(*r), c, RATIONAL23)
               for (l, r), k in joint_coproduct(a).items()), Fraction(0))
    assert laplace_closed(a, b * c, RATIONAL23) == rhs


@given(joints(2, 3, max_grade=3), joints(2, 3, max_grade=3))
def test_symmetry(a, b):
    assert laplace_closed(a, b, RATIONAL23) == laplace_closed(b, a, RATIONAL23)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(words(2, n, n), words(3, n, n), st.randoms())))
def test_permutation_lemma(args):
    u, v, rnd = args
    base = laplace_closed(embed(Element.word(*u)), embed(Element.word(*v, side="V")), RATIONAL23)
    shuffled = list(v)
    rnd.shuffle(shuffled)
    assert laplace_closed(embed(Element.word(*u)), embed(Element.word(*shuffled, side="V")), RATIONAL23) == base


@given(words(2, 3), words(3, 3), words(2, 3), words(3, 3))
def test_factorization(u1, v1, u2, v2):
    # (u1;v1 | u2;v2) = (u1|v2)(v1|u2): each U-leg pairs with the opposite V-leg
    lhs = laplace_closed(J(u1, v1), J(u2, v2), RATIONAL23)
    rhs = laplace_closed(J(u1), J((), v2), RATIONAL23) * laplace_closed(J((), v1), J(u2), RATIONAL23)
    assert lhs == rhs


@given(vectors(2, "U"), vectors(3, "V"))
def test_square_of_vectors(x, y):
    xy = duality(x, y, RATIONAL23)
    assert laplace_closed(power(x, 2), power(y, 2), RATIONAL23) == 2 * xy ** 2
