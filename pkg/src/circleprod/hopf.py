"""Coproduct, antipode and counit of T(U), T(V) and the joint algebra."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Mapping

from .config import check_coproduct_grade
from .tensor import (Element, JointElement, SideError, _join_terms, _prune,
                     format_word, joint_key, word_key)


@lru_cache(maxsize=1 << 16)
def word_splits(word: tuple) -> tuple:
    """All (u_S, u_{T\\S}) for S a subset of positions, letters kept in order.

    Repeated letters give repeated pairs; callers accumulate.
    """
    n = len(word)
    out = []
    for mask in range(1 << n):
        left = tuple(word[k] for k in range(n) if mask >> k & 1)
        right = tuple(word[k] for k in range(n) if not mask >> k & 1)
        out.append((left, right))
    return tuple(out)


def word_coproduct(word: tuple) -> tuple:
    """Accumulated coproduct of a single word as ((left, right), multiplicity) pairs."""
    check_coproduct_grade(len(word))
    return _word_coproduct(word)


@lru_cache(maxsize=1 << 16)
def _word_coproduct(word):
    acc: dict = defaultdict(int)
    for pair in word_splits(word):
        acc[pair] += 1
    return tuple(acc.items())


class TensorSquare:
    """Sparse element of T (x) T on one side; keys are (left word, right word)."""

    __slots__ = ("side", "_terms")

    def __init__(self, terms: Mapping = (), side: str = "U"):
        acc: dict = defaultdict(Fraction)
        for (l, r), c in dict(terms).items():
            acc[(tuple(l), tuple(r))] += Fraction(c)
        self.side = side
        self._terms = _prune(acc)

    @classmethod
    def _raw(cls, terms, side):
        obj = cls.__new__(cls)
        obj.side = side
        obj._terms = _prune(terms)
        return obj

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, key):
        return self._terms.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, TensorSquare):
            return NotImplemented
        return self._terms == other._terms and (self.side == other.side or not self._terms)

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        acc = defaultdict(Fraction, self._terms)
        for k, c in other.items():
            acc[k] += c
        return TensorSquare._raw(acc, self.side)

    def __mul__(self, other):
        if isinstance(other, Rational):
            return TensorSquare._raw({k: c * other for k, c in self._terms.items()}, self.side)
        if not isinstance(other, TensorSquare):
            return NotImplemented
        # componentwise product (a (x) b)(c (x) d) = ac (x) bd
        acc: dict = defaultdict(Fraction)
        for (l1, r1), c1 in self._terms.items():
            for (l2, r2), c2 in other._terms.items():
                acc[(l1 + l2, r1 + r2)] += c1 * c2
        return TensorSquare._raw(acc, self.side)

    __rmul__ = __mul__

    def swap(self) -> "TensorSquare":
        return TensorSquare._raw({(r, l): c for (l, r), c in self._terms.items()}, self.side)

    def left(self, fn) -> "TensorSquare":
        """Apply a linear map Element -> Element to the left leg."""
        return self._apply(fn, 0)

    def right(self, fn) -> "TensorSquare":
        return self._apply(fn, 1)

    def _apply(self, fn, leg):
        acc: dict = defaultdict(Fraction)
        for key, c in self._terms.items():
            image = fn(Element.word(*key[leg], side=self.side))
            for w, c2 in image.items():
                new = (w, key[1]) if leg == 0 else (key[0], w)
                acc[new] += c * c2
        return TensorSquare._raw(acc, self.side)

    def multiply(self) -> Element:
        """mu: l (x) r -> l*r."""
        acc: dict = defaultdict(Fraction)
        for (l, r), c in self._terms.items():
            acc[l + r] += c
        return Element._raw(acc, self.side)

    def __str__(self):
        return format_tensor_square(self)

    __repr__ = __str__


class JointTensorSquare:
    """Sparse element of (T(U)(x)T(V)) (x) (T(U)(x)T(V)); keys ((u1, v1), (u2, v2))."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping = ()):
        acc: dict = defaultdict(Fraction)
        for ((u1, v1), (u2, v2)), c in dict(terms).items():
            acc[((tuple(u1), tuple(v1)), (tuple(u2), tuple(v2)))] += Fraction(c)
        self._terms = _prune(acc)

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = _prune(terms)
        return obj

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, key):
        return self._terms.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, JointTensorSquare):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __mul__(self, other):
        if isinstance(other, Rational):
            return JointTensorSquare._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, JointTensorSquare):
            return NotImplemented
        acc: dict = defaultdict(Fraction)
        for ((a1, b1), (a2, b2)), c1 in self._terms.items():
            for ((a3, b3), (a4, b4)), c2 in other._terms.items():
                acc[((a1 + a3, b1 + b3), (a2 + a4, b2 + b4))] += c1 * c2
        return JointTensorSquare._raw(acc)

    __rmul__ = __mul__

    def swap(self) -> "JointTensorSquare":
        return JointTensorSquare._raw({(r, l): c for (l, r), c in self._terms.items()})

    def left(self, fn) -> "JointTensorSquare":
        return self._apply(fn, 0)

    def right(self, fn) -> "JointTensorSquare":
        return self._apply(fn, 1)

    def _apply(self, fn, leg):
        acc: dict = defaultdict(Fraction)
        for key, c in self._terms.items():
            image = fn(JointElement.term(*key[leg]))
            for k2, c2 in image.items():
                new = (k2, key[1]) if leg == 0 else (key[0], k2)
                acc[new] += c * c2
        return JointTensorSquare._raw(acc)

    def multiply(self) -> JointElement:
        acc: dict = defaultdict(Fraction)
        for ((u1, v1), (u2, v2)), c in self._terms.items():
            acc[(u1 + u2, v1 + v2)] += c
        return JointElement._raw(acc)

    def __str__(self):
        return format_joint_tensor_square(self)

    __repr__ = __str__


def coproduct(a: Element) -> TensorSquare:
    """Delta(x1..xn) = sum over subsets S of u_S (x) u_{T\\S}, extended linearly."""
    if isinstance(a, JointElement):
        raise SideError("use joint_coproduct for joint elements")
    acc: dict = defaultdict(Fraction)
    for w, c in a.items():
        for pair, mult in word_coproduct(w):
            acc[pair] += c * mult
    return TensorSquare._raw(acc, a.side)


def antipode(a: Element) -> Element:
    """S(x1..xn) = (-1)^n xn..x1."""
    return Element._raw({w[::-1]: c * (-1) ** len(w) for w, c in a.items()}, a.side)


def counit(a: Element) -> Fraction:
    return a[()]


def joint_term_coproduct(u: tuple, v: tuple) -> tuple:
    """Coproduct of (u;v) as (((u1, v1), (u2, v2)), multiplicity) pairs."""
    check_coproduct_grade(max(len(u), len(v)))
    return _joint_term_coproduct(u, v)


@lru_cache(maxsize=1 << 16)
def _joint_term_coproduct(u, v):
    acc: dict = defaultdict(int)
    for (u1, u2), m in _word_coproduct(u):
        for (v1, v2), n in _word_coproduct(v):
            acc[((u1, v1), (u2, v2))] += m * n
    return tuple(acc.items())


def joint_coproduct(a: JointElement) -> JointTensorSquare:
    """(Delta_U (x) Delta_V) with the legs regrouped as (u1;v1) (x) (u2;v2)."""
    acc: dict = defaultdict(Fraction)
    for (u, v), c in a.items():
        for key, mult in joint_term_coproduct(u, v):
            acc[key] += c * mult
    return JointTensorSquare._raw(acc)


def joint_antipode(a: JointElement) -> JointElement:
    return JointElement._raw(
        {(u[::-1], v[::-1]): c * (-1) ** (len(u) + len(v)) for (u, v), c in a.items()}
    )


def joint_counit(a: JointElement) -> Fraction:
    return a[((), ())]


def format_tensor_square(t: TensorSquare) -> str:
    items = sorted(t.items(), key=lambda kv: (word_key(kv[0][0]), word_key(kv[0][1])))
    return _join_terms(
        (c, f"({format_word(l, t.side)} | {format_word(r, t.side)})") for (l, r), c in items
    )


def format_joint_tensor_square(t: JointTensorSquare) -> str:
    def leg(k):
        return f"{format_word(k[0], 'U')};{format_word(k[1], 'V')}"

    items = sorted(t.items(), key=lambda kv: (joint_key(kv[0][0]), joint_key(kv[0][1])))
    return _join_terms((c, f"({leg(l)} | {leg(r)})") for (l, r), c in items)


def double_coproduct(a: Element, first: str = "left") -> dict:
    """(Delta (x) I) Delta (first="left") or (I (x) Delta) Delta as a sparse triple map."""
    acc: dict = defaultdict(Fraction)
    for (l, r), c in coproduct(a).items():
        if first == "left":
            for (l1, l2), m in word_coproduct(l):
                acc[(l1, l2, r)] += c * m
        else:
            for (r1, r2), m in word_coproduct(r):
                acc[(l, r1, r2)] += c * m
    return _prune(acc)


def joint_double_coproduct(a: JointElement, first: str = "left") -> dict:
    acc: dict = defaultdict(Fraction)
    for (l, r), c in joint_coproduct(a).items():
        if first == "left":
            for (l1, l2), m in joint_term_coproduct(*l):
                acc[(l1, l2, r)] += c * m
        else:
            for (r1, r2), m in joint_term_coproduct(*r):
                acc[(l, r1, r2)] += c * m
    return _prune(acc)
