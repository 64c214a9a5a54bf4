"""Symmetrization and antisymmetrization projections inside T(U).

The symmetric and exterior algebras are represented by their images
Symm(T(U)) and ASymm(T(U)); products are Symm/ASymm of concatenation.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from sympy.utilities.iterables import multiset_permutations

from .config import check_projection_grade
from .tensor import Element, concat_product


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=1 << 14)
def _symm_orbit(sorted_word: tuple) -> tuple:
    # every distinct arrangement carries prod(mult!)/n! of the average
    n = len(sorted_word)
    counts = defaultdict(int)
    for i in sorted_word:
        counts[i] += 1
    weight = Fraction(prod(factorial(m) for m in counts.values()), factorial(n))
    return tuple((tuple(p), weight) for p in multiset_permutations(list(sorted_word)))


@lru_cache(maxsize=1 << 14)
def _asymm_orbit(sorted_word: tuple) -> tuple:
    n = len(sorted_word)
    weight = Fraction(1, factorial(n))
    return tuple((p, permutation_sign(p) * weight) for p in itertools.permutations(sorted_word))


def symmetrize(a: Element) -> Element:
    """Symm(x1..xn) = 1/n! sum_p x_p(1)..x_p(n), extended linearly."""
    classes: dict = defaultdict(Fraction)
    for w, c in a.items():
        check_projection_grade(len(w))
        classes[tuple(sorted(w))] += c
    acc: dict = defaultdict(Fraction)
    for m, c in classes.items():
        if c:
            for w, weight in _symm_orbit(m):
                acc[w] += c * weight
    return Element._raw(acc, a.side)


def antisymmetrize(a: Element) -> Element:
    """ASymm(x1..xn) = 1/n! sum_p sign(p) x_p(1)..x_p(n), extended linearly."""
    classes: dict = defaultdict(Fraction)
    for w, c in a.items():
        check_projection_grade(len(w))
        if len(set(w)) < len(w):
            continue
        classes[tuple(sorted(w))] += permutation_sign(w) * c
    acc: dict = defaultdict(Fraction)
    for m, c in classes.items():
        if c:
            for w, weight in _asymm_orbit(m):
                acc[w] += c * weight
    return Element._raw(acc, a.side)


def is_symmetric(a: Element) -> bool:
    return symmetrize(a) == a


def is_antisymmetric(a: Element) -> bool:
    return antisymmetrize(a) == a


def sym_product(u: Element, v: Element) -> Element:
    """u . v = Symm(u (x) v)."""
    return symmetrize(concat_product(u, v))


def wedge_product(u: Element, v: Element) -> Element:
    """u ^ v = ASymm(u (x) v)."""
    return antisymmetrize(concat_product(u, v))


def power(x: Element, t: int) -> Element:
    """t-fold concatenation of a grade <= 1 element."""
    if x.max_grade() > 1:
        raise ValueError("power() needs a linear combination of generators (grade <= 1)")
    if t < 0:
        raise ValueError("power exponent must be nonnegative")
    check_projection_grade(t)
    out = Element.scalar(1, x.side)
    for _ in range(t):
        out = concat_product(out, x)
    return out


def polarization_expansion(vectors: list[Element]) -> Element:
    """1/(2^t t!) sum over signs e of e1..et (e1 x1 + ... + et xt)^t."""
    t = len(vectors)
    if t < 1:
        raise ValueError("need at least one vector")
    check_projection_grade(t)
    side = vectors[0].side
    total = Element.zero(side)
    for signs in itertools.product((1, -1), repeat=t):
        x = Element.zero(side)
        for s, vec in zip(signs, vectors):
            x = x + vec * s
        total = total + power(x, t) * prod(signs)
    return total / (2 ** t * factorial(t))


def symmetric_basis(dim: int, grade: int) -> list[tuple]:
    """Sorted multisets of size ``grade`` over 1..dim."""
    return list(itertools.combinations_with_replacement(range(1, dim + 1), grade))


def antisymmetric_basis(dim: int, grade: int) -> list[tuple]:
    """Strictly increasing index tuples of size ``grade``."""
    return list(itertools.combinations(range(1, dim + 1), grade))


def wedge_of(indices, side: str = "U") -> Element:
    """e_{i1} ^ ... ^ e_{it} as an embedded antisymmetric tensor."""
    return antisymmetrize(Element.word(*indices, side=side))


def sym_of(indices, side: str = "U") -> Element:
    """e_{i1} ... e_{it} in the symmetric algebra (embedded)."""
    return symmetrize(Element.word(*indices, side=side))


def symmetric_coordinates(a: Element) -> dict[tuple, Fraction]:
    """Coordinates of a symmetric element in the basis Symm(sorted multiset)."""
    out: dict = defaultdict(Fraction)
    for w, c in a.items():
        out[tuple(sorted(w))] += c
    return {k: c for k, c in out.items() if c}


def antisymmetric_coordinates(a: Element) -> dict[tuple, Fraction]:
    """Coordinates of an antisymmetric element in the basis ASymm(increasing word)."""
    out: dict = defaultdict(Fraction)
    for w, c in a.items():
        if len(set(w)) == len(w):
            out[tuple(sorted(w))] += permutation_sign(w) * c
    return {k: c for k, c in out.items() if c}
