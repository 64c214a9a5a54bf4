"""Free tensor algebras T(U), T(V) and the joint algebra T(U) (x) T(V).

Words are tuples of 1-based basis indices; the empty tuple is the unit.
Elements are immutable sparse maps word -> Fraction with zero terms pruned.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

from .space import SpaceSpec

Word = tuple  # tuple[int, ...]
SIDES = ("U", "V")
LETTER = {"U": "e", "V": "f"}


class SideError(TypeError):
    """Operands live on different sides (U vs V) or have the wrong kind."""


def _prune(acc: Mapping) -> dict:
    return {k: c for k, c in acc.items() if c != 0}


def word_key(word: Word):
    return (len(word), word)


def format_scalar(c: Fraction) -> str:
    return str(c)


def format_word(word: Word, side: str) -> str:
    if not word:
        return "1"
    letter = LETTER[side]
    return "*".join(f"{letter}{i}" for i in word)


def _join_terms(pieces: Iterable[tuple[Fraction, str | None]]) -> str:
    # (coef, body) with body None for a bare scalar
    out = []
    for coef, body in pieces:
        text = format_scalar(abs(coef)) if body is None else f"{abs(coef)}·{body}"
        if not out:
            out.append(text if coef > 0 else "-" + text)
        else:
            out.append((" + " if coef > 0 else " - ") + text)
    return "".join(out) or "0"


class _Sparse:
    __slots__ = ("_terms", "_hash")

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    @property
    def terms(self) -> Mapping:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)


class Element(_Sparse):
    """Member of T(U) (side "U") or T(V) (side "V")."""

    __slots__ = ("side",)

    def __init__(self, terms: Mapping | Iterable = (), side: str = "U"):
        if side not in SIDES:
            raise ValueError(f"side must be U or V, got {side!r}")
        acc: dict = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, coef in items:
            word = tuple(int(i) for i in word)
            if any(i < 1 for i in word):
                raise ValueError(f"basis indices are 1-based, got {word}")
            acc[word] += Fraction(coef)
        self.side = side
        self._terms = _prune(acc)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, side: str) -> "Element":
        obj = cls.__new__(cls)
        obj.side = side
        obj._terms = _prune(terms)
        obj._hash = None
        return obj

    @classmethod
    def word(cls, *indices: int, side: str = "U", coef=1) -> "Element":
        return cls({tuple(indices): coef}, side)

    @classmethod
    def scalar(cls, c, side: str = "U") -> "Element":
        return cls({(): c}, side)

    @classmethod
    def zero(cls, side: str = "U") -> "Element":
        return cls._raw({}, side)

    def grades(self) -> set[int]:
        return {len(w) for w in self._terms}

    def max_grade(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def map_terms(self, fn) -> "Element":
        """Linear extension of ``fn(word) -> iterable of (word, coef)``."""
        acc: dict = defaultdict(Fraction)
        for w, c in self._terms.items():
            for w2, c2 in fn(w):
                acc[w2] += c * c2
        return Element._raw(acc, self.side)

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def _same_side(self, other: "Element"):
        if not isinstance(other, Element):
            raise SideError(f"expected Element, got {type(other).__name__}")
        if other.side != self.side and self._terms and other._terms:
            raise SideError(f"side mismatch: {self.side} vs {other.side}")

    def _coerce(self, other):
        if isinstance(other, Rational):
            return Element.scalar(other, self.side)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._same_side(other)
        side = self.side if self._terms else other.side
        acc = defaultdict(Fraction, self._terms)
        for w, c in other._terms.items():
            acc[w] += c
        return Element._raw(acc, side)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw({w: -c for w, c in self._terms.items()}, self.side)

    def __sub__(self, other):
        other = self._coerce(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            c = Fraction(other)
            return Element._raw({w: c * v for w, v in self._terms.items()}, self.side)
        if isinstance(other, Element):
            return concat_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = Element.scalar(other, self.side)
        if not isinstance(other, Element):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.side == other.side and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.side if self._terms else None, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({self.side}: {format_element(self)})"


class JointElement(_Sparse):
    """Member of T(U) (x) T(V); keys are (U-word, V-word)."""

    __slots__ = ()

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (u, v), coef in items:
            key = (tuple(int(i) for i in u), tuple(int(i) for i in v))
            if any(i < 1 for i in key[0] + key[1]):
                raise ValueError(f"basis indices are 1-based, got {key}")
            acc[key] += Fraction(coef)
        self._terms = _prune(acc)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "JointElement":
        obj = cls.__new__(cls)
        obj._terms = _prune(terms)
        obj._hash = None
        return obj

    @classmethod
    def term(cls, u: Word = (), v: Word = (), coef=1) -> "JointElement":
        return cls({(tuple(u), tuple(v)): coef})

    @classmethod
    def unit(cls) -> "JointElement":
        return cls._raw({((), ()): Fraction(1)})

    def max_grade(self) -> int:
        return max((len(u) + len(v) for u, v in self._terms), default=0)

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: joint_key(kv[0]))

    def _coerce(self, other):
        if isinstance(other, Rational):
            return JointElement.term(coef=other)
        if isinstance(other, Element):
            return embed(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if not isinstance(other, JointElement):
            return NotImplemented
        acc = defaultdict(Fraction, self._terms)
        for k, c in other._terms.items():
            acc[k] += c
        return JointElement._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return JointElement._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if not isinstance(other, JointElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            c = Fraction(other)
            return JointElement._raw({k: c * v for k, v in self._terms.items()})
        other = self._coerce(other)
        if isinstance(other, JointElement):
            return joint_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self * other
        if isinstance(other, Element):
            return joint_product(embed(other), self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = JointElement.term(coef=other)
        if not isinstance(other, JointElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return format_joint(self)

    def __repr__(self):
        return f"JointElement({format_joint(self)})"


def joint_key(key):
    u, v = key
    return (len(u) + len(v), len(u), u, v)


def e(*indices: int, coef=1) -> Element:
    """Word e_{i1}*...*e_{in} in T(U)."""
    return Element.word(*indices, side="U", coef=coef)


def f(*indices: int, coef=1) -> Element:
    """Word f_{j1}*...*f_{jn} in T(V)."""
    return Element.word(*indices, side="V", coef=coef)


def unit(side: str = "U") -> Element:
    return Element.scalar(1, side)


def embed(a) -> JointElement:
    """T(U) -> T(U)(x)1, T(V) -> 1(x)T(V); scalars go to multiples of (1;1)."""
    if isinstance(a, JointElement):
        return a
    if isinstance(a, Rational):
        return JointElement.term(coef=a)
    if a.side == "U":
        return JointElement._raw({(w, ()): c for w, c in a.items()})
    return JointElement._raw({((), w): c for w, c in a.items()})


def on_side(a: Element, side: str) -> Element:
    """Reinterpret the words of ``a`` on ``side`` (self-dual identification e_i = f_i)."""
    return Element._raw(dict(a.items()), side)


def concat_product(a: Element, b: Element) -> Element:
    if a.side != b.side:
        raise SideError(f"cannot concatenate {a.side}-side with {b.side}-side element")
    acc: dict = defaultdict(Fraction)
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            acc[w1 + w2] += c1 * c2
    return Element._raw(acc, a.side)


def joint_product(a: JointElement, b: JointElement) -> JointElement:
    acc: dict = defaultdict(Fraction)
    for (u1, v1), c1 in a.items():
        for (u2, v2), c2 in b.items():
            acc[(u1 + u2, v1 + v2)] += c1 * c2
    return JointElement._raw(acc)


def word_duality(u: Word, v: Word, spec: SpaceSpec) -> Fraction:
    if len(u) != len(v):
        return Fraction(0)
    out = Fraction(1)
    for i, j in zip(u, v):
        out *= spec.pair(i, j)
        if not out:
            break
    return out


def duality(a: Element, b: Element, spec: SpaceSpec) -> Fraction:
    """Bilinear extension of <x1..xn, y1..ym> = delta_{nm} prod_k <x_k, y_k>."""
    if a.side != "U" or b.side != "V":
        if a or b:
            raise SideError("duality pairs a U-side element with a V-side element")
    total = Fraction(0)
    for u, cu in a.items():
        for v, cv in b.items():
            if len(u) == len(v):
                total += cu * cv * word_duality(u, v, spec)
    return total


def grade_part(a: Element, g: int) -> Element:
    return Element._raw({w: c for w, c in a.items() if len(w) == g}, a.side)


def grade_parts(a: Element) -> list[tuple[int, Element]]:
    return [(g, grade_part(a, g)) for g in sorted(a.grades())]


def format_element(a: Element) -> str:
    return _join_terms(
        (c, None if not w else format_word(w, a.side)) for w, c in a.sorted_items()
    )


def format_joint(a: JointElement) -> str:
    return _join_terms(
        (c, f"{format_word(u, 'U')};{format_word(v, 'V')}") for (u, v), c in a.sorted_items()
    )


def iter_words(dim: int, grade: int) -> Iterator[Word]:
    """All words of a given length over indices 1..dim, in lexicographic order."""
    from itertools import product

    return (tuple(w) for w in product(range(1, dim + 1), repeat=grade))
