"""Laplace pairing (a | b) on the joint tensor algebra.

Two independent evaluators:

* ``laplace_recursive`` uses only the splitting identity
  (a | b c) = sum (a_(1) | b)(a_(2) | c), symmetry, and the generator-level
  initial conditions.
* ``laplace_closed`` uses the factorial/symmetrized-duality closed form.

They must agree on every input.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .hopf import joint_term_coproduct
from .space import SpaceSpec
from .tensor import Element, JointElement, embed


def _as_joint(a) -> JointElement:
    if isinstance(a, (Element, Rational)):
        return embed(a)
    return a


@lru_cache(maxsize=1 << 16)
def permanent_pairing(u: tuple, v: tuple, spec: SpaceSpec) -> Fraction:
    """n! <Symm(u), Symm(v)> for a U-word u and V-word v.

    Expanding the two averages leaves the permanent of the Gram submatrix
    gram[u_i][v_j]; zero when the lengths differ.
    """
    n = len(u)
    if n != len(v):
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    rows = [[spec.pair(i, j) for j in v] for i in u]
    # dp over the set of used columns; row k is matched when popcount(mask) == k
    dp = {0: Fraction(1)}
    for k in range(n):
        nxt: dict = {}
        for mask, val in dp.items():
            for j in range(n):
                if not mask >> j & 1 and rows[k][j]:
                    m2 = mask | 1 << j
                    nxt[m2] = nxt.get(m2, 0) + val * rows[k][j]
        dp = nxt
    return Fraction(dp.get((1 << n) - 1, 0))


def term_pairing(a_term, b_term, spec: SpaceSpec) -> Fraction:
    (u, v), (u2, v2) = a_term, b_term
    if len(u) != len(v2) or len(u2) != len(v):
        return Fraction(0)
    x = permanent_pairing(u, v2, spec)
    if not x:
        return x
    return x * permanent_pairing(u2, v, spec)


def laplace_closed(a, b, spec: SpaceSpec) -> Fraction:
    """sum i! k! <Symm(u_i), Symm(v'_l)> <Symm(u'_k), Symm(v_j)> over homogeneous pieces.

    Unequal-grade cross terms are skipped: they vanish by orthogonality.
    """
    a, b = _as_joint(a), _as_joint(b)
    total = Fraction(0)
    for ka, ca in a.items():
        for kb, cb in b.items():
            if len(ka[0]) == len(kb[1]) and len(kb[0]) == len(ka[1]):
                total += ca * cb * term_pairing(ka, kb, spec)
    return total


def _initial(a, b, spec: SpaceSpec) -> Fraction:
    # both arguments have total grade <= 1
    ga, gb = len(a[0]) + len(a[1]), len(b[0]) + len(b[1])
    if ga == 0 and gb == 0:
        return Fraction(1)
    if ga + gb == 1:
        return Fraction(0)
    if a[0] and b[1]:
        return spec.pair(a[0][0], b[1][0])
    if a[1] and b[0]:
        return spec.pair(b[0][0], a[1][0])
    return Fraction(0)


def laplace_recursive(a, b, spec: SpaceSpec) -> Fraction:
    """Evaluate (a | b) by peeling generators off the right of the second slot."""
    a, b = _as_joint(a), _as_joint(b)
    memo: dict = {}

    def rec(x, y):
        key = (x, y)
        if key in memo:
            return memo[key]
        gx, gy = len(x[0]) + len(x[1]), len(y[0]) + len(y[1])
        if gy >= 2:
            if y[1]:
                rest, gen = (y[0], y[1][:-1]), ((), y[1][-1:])
            else:
                rest, gen = (y[0][:-1], ()), (y[0][-1:], ())
            val = Fraction(0)
            for (x1, x2), mult in joint_term_coproduct(*x):
                left = rec(x1, rest)
                if left:
                    val += mult * left * rec(x2, gen)
        elif gx >= 2:
            val = rec(y, x)
        else:
            val = _initial(x, y, spec)
        memo[key] = val
        return val

    total = Fraction(0)
    for ka, ca in a.items():
        for kb, cb in b.items():
            total += ca * cb * rec(ka, kb)
    return total


def self_pairing(a: Element, b: Element, spec: SpaceSpec) -> Fraction:
    """Pairing of two elements of T(U) under self-duality: (a(x)1 | 1(x)b)."""
    if not spec.self_dual:
        raise ValueError("self_pairing needs a self-dual space")
    ja = JointElement._raw({(w, ()): c for w, c in a.items()})
    jb = JointElement._raw({((), w): c for w, c in b.items()})
    return laplace_closed(ja, jb, spec)
