"""Square product, circle products and the phi maps.

``a [] b = sum (a_(1) | b_(1)) a_(2) b_(2)``. On the joint algebra the
pairing is the Laplace pairing; on T(U) with a self-duality the pairing of
two T(U) elements is the Laplace pairing of (a (x) 1) against (1 (x) b).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import factorial, prod

from .hopf import _word_coproduct, coproduct, word_coproduct
from .laplace import permanent_pairing, self_pairing
from .space import SpaceSpec
from .symmetry import (antisymmetric_basis, antisymmetric_coordinates,
                       antisymmetrize, is_antisymmetric, is_symmetric,
                       symmetric_basis, symmetric_coordinates, symmetrize,
                       sym_of, wedge_of)
from .tensor import Element, JointElement, SideError, embed, iter_words


class NotProjected(ValueError):
    """Circle product operand is not in the symmetric/antisymmetric image."""


class SelfDualityRequired(ValueError):
    pass


def _require_self_dual(spec: SpaceSpec, what: str):
    if not spec.self_dual:
        raise SelfDualityRequired(f"{what} needs a self-dual space")


def contract(u: tuple, v: tuple, spec: SpaceSpec) -> tuple:
    """sum over splits of u and v of P(u1, v1) (u2, v2), P the permanent pairing."""
    for w in (u, v):
        word_coproduct(w)  # cap check
    return _contract(u, v, spec)


@lru_cache(maxsize=1 << 16)
def _contract(u, v, spec):
    acc: dict = defaultdict(Fraction)
    right = defaultdict(list)
    for (v1, v2), n in _word_coproduct(v):
        right[len(v1)].append((v1, v2, n))
    for (u1, u2), m in _word_coproduct(u):
        for v1, v2, n in right.get(len(u1), ()):
            p = permanent_pairing(u1, v1, spec)
            if p:
                acc[(u2, v2)] += m * n * p
    return tuple((k, c) for k, c in acc.items() if c)


def joint_square(a, b, spec: SpaceSpec) -> JointElement:
    """Square product on T(U) (x) T(V)."""
    a, b = embed(a), embed(b)
    acc: dict = defaultdict(Fraction)
    for (u, v), ca in a.items():
        for (u2, v2), cb in b.items():
            c = ca * cb
            # (a1|b1) splits as P(a1_U, b1_V) * P(b1_U, a1_V)
            left = contract(u, v2, spec)
            if not left:
                continue
            for (ua, vb), x in contract(u2, v, spec):
                for (ur, vr), y in left:
                    acc[(ur + ua, vb + vr)] += c * x * y
    return JointElement._raw(acc)


def self_square(a: Element, b: Element, spec: SpaceSpec) -> Element:
    """Square product on T(U) for a self-dual space."""
    _require_self_dual(spec, "the T(U) square product")
    if a.side != b.side and a and b:
        raise SideError("self-dual square needs operands on the same side")
    acc: dict = defaultdict(Fraction)
    for w, ca in a.items():
        for w2, cb in b.items():
            for (r, r2), x in contract(w, w2, spec):
                acc[r + r2] += ca * cb * x
    return Element._raw(acc, a.side if a else b.side)


def square(a, b, spec: SpaceSpec):
    """Square product; same-side T(U) operands use the self-dual product."""
    if isinstance(a, Element) and isinstance(b, Element) and (a.side == b.side or not a or not b):
        return self_square(a, b, spec)
    return joint_square(a, b, spec)


def _check_operands(u, v, spec, test, kind):
    _require_self_dual(spec, f"the {kind} circle product")
    for x in (u, v):
        if not isinstance(x, Element):
            raise SideError("circle products act on T(U) elements")
        if not test(x):
            raise NotProjected(f"operand {x} is not {kind}")
    if u.side != v.side and u and v:
        raise SideError("circle product operands must be on the same side")


def circle_sym(u: Element, v: Element, spec: SpaceSpec) -> Element:
    """u o v = sum (u_(1) | v_(1)) Symm(u_(2) v_(2)) on symmetric elements."""
    _check_operands(u, v, spec, is_symmetric, "symmetric")
    side = u.side if u else v.side
    by_grade = defaultdict(list)
    for (v1, v2), c in coproduct(v).items():
        by_grade[len(v1)].append((v1, v2, c))
    acc: dict = defaultdict(Fraction)
    for (u1, u2), cu in coproduct(u).items():
        for v1, v2, cv in by_grade.get(len(u1), ()):
            p = self_pairing(Element._raw({u1: 1}, side), Element._raw({v1: 1}, side), spec)
            if p:
                acc[u2 + v2] += cu * cv * p
    return symmetrize(Element._raw(acc, side))


def circle_antisym(u: Element, v: Element, spec: SpaceSpec) -> Element:
    """u o v = ASymm(u [] v) on antisymmetric elements."""
    _check_operands(u, v, spec, is_antisymmetric, "antisymmetric")
    return antisymmetrize(self_square(u, v, spec))


def _fold(op, factors, side, spec):
    out = Element.scalar(1, side)
    for x in factors:
        out = op(out, x, spec)
    return out


def phi_tensor(a: Element, spec: SpaceSpec) -> Element:
    """phi(x1..xn) = x1 [] ... [] xn, extended linearly."""
    _require_self_dual(spec, "phi_tensor")
    cache: dict = {(): Element.scalar(1, a.side)}

    def image(w):
        if w not in cache:
            cache[w] = self_square(image(w[:-1]), Element.word(w[-1], side=a.side), spec)
        return cache[w]

    out = Element.zero(a.side)
    for w, c in a.items():
        out = out + image(w) * c
    return out


def circle_power(x: Element, t: int, spec: SpaceSpec) -> Element:
    """x o x o ... o x (t factors, symmetric circle); t = 0 gives 1."""
    return _fold(circle_sym, [x] * t, x.side, spec)


def phi_sym_multiset(m: tuple, spec: SpaceSpec, side: str = "U") -> Element:
    """phi(e_{m1} ... e_{mt}) through polarization over circle powers."""
    t = len(m)
    if t == 0:
        return Element.scalar(1, side)
    total = Element.zero(side)
    for signs in cartesian((1, -1), repeat=t):
        if signs[0] == -1:
            continue  # (-x)^t = (-1)^t x^t pairs each sign vector with its negation
        acc: dict = defaultdict(Fraction)
        for s, i in zip(signs, m):
            acc[(i,)] += s
        x = Element._raw(acc, side)
        total = total + circle_power(x, t, spec) * prod(signs)
    return total * Fraction(2, 2 ** t * factorial(t))


def phi_sym(a: Element, spec: SpaceSpec) -> Element:
    """phi on the symmetric algebra: phi(x^n) = x o ... o x, extended by polarization."""
    _require_self_dual(spec, "phi_sym")
    if not is_symmetric(a):
        raise NotProjected("phi_sym needs a symmetric element")
    out = Element.zero(a.side)
    for m, c in symmetric_coordinates(a).items():
        out = out + phi_sym_multiset(m, spec, a.side) * c
    return out


def phi_antisym(a: Element, spec: SpaceSpec) -> Element:
    """phi(e_{i1} ^ ... ^ e_{it}) = e_{i1} o ... o e_{it} (left fold) on the wedge basis."""
    _require_self_dual(spec, "phi_antisym")
    if not is_antisymmetric(a):
        raise NotProjected("phi_antisym needs an antisymmetric element")
    out = Element.zero(a.side)
    for idx, c in antisymmetric_coordinates(a).items():
        gens = [Element.word(i, side=a.side) for i in idx]
        out = out + _fold(circle_antisym, gens, a.side, spec) * c
    return out


MODES = ("tensor", "symmetric", "antisymmetric")
_MODE_ALIASES = {"tensor": "tensor", "sym": "symmetric", "symmetric": "symmetric",
                 "asym": "antisymmetric", "antisymmetric": "antisymmetric"}


def canonical_basis(mode: str, dim: int, max_grade: int) -> list[tuple]:
    mode = _MODE_ALIASES[mode]
    out = []
    for t in range(max_grade + 1):
        if mode == "tensor":
            out += list(iter_words(dim, t))
        elif mode == "symmetric":
            out += symmetric_basis(dim, t)
        else:
            out += antisymmetric_basis(dim, t)
    return out


def basis_element(mode: str, idx: tuple, side: str = "U") -> Element:
    mode = _MODE_ALIASES[mode]
    if mode == "tensor":
        return Element.word(*idx, side=side)
    if mode == "symmetric":
        return sym_of(idx, side)
    return wedge_of(idx, side)


def coordinates(mode: str, a: Element) -> dict:
    mode = _MODE_ALIASES[mode]
    if mode == "tensor":
        return dict(a.items())
    if mode == "symmetric":
        return symmetric_coordinates(a)
    return antisymmetric_coordinates(a)


def phi(mode: str, a: Element, spec: SpaceSpec) -> Element:
    mode = _MODE_ALIASES[mode]
    return {"tensor": phi_tensor, "symmetric": phi_sym, "antisymmetric": phi_antisym}[mode](a, spec)


@dataclass(frozen=True)
class PhiMatrix:
    """Matrix of phi on the canonical graded basis; column j is phi(basis[j])."""

    mode: str
    max_grade: int
    basis: tuple
    entries: tuple
    triangular: bool = field(init=False)
    unit_diagonal: bool = field(init=False)

    def __post_init__(self):
        n = len(self.basis)
        tri = all(
            self.entries[i][j] == 0
            for i in range(n) for j in range(n)
            if len(self.basis[i]) > len(self.basis[j])
        )
        diag = all(
            self.entries[i][j] == (1 if i == j else 0)
            for i in range(n) for j in range(n)
            if len(self.basis[i]) == len(self.basis[j])
        )
        object.__setattr__(self, "triangular", tri)
        object.__setattr__(self, "unit_diagonal", diag)

    @property
    def invertible(self) -> bool:
        return self.triangular and self.unit_diagonal

    def inverse(self) -> list[list[Fraction]]:
        return invert(self.entries)

    def apply(self, coords: dict) -> dict:
        """Coordinates of phi(a) from coordinates of a."""
        index = {b: i for i, b in enumerate(self.basis)}
        out = [Fraction(0)] * len(self.basis)
        for b, c in coords.items():
            j = index[b]
            for i in range(len(self.basis)):
                out[i] += self.entries[i][j] * c
        return {self.basis[i]: c for i, c in enumerate(out) if c}

    def format(self) -> str:
        lines = [f"mode: {self.mode}", f"max_grade: {self.max_grade}",
                 "basis: " + " ".join(basis_label(self.mode, b) for b in self.basis)]
        lines += [" ".join(str(x) for x in row) for row in self.entries]
        lines.append(f"triangular: {'yes' if self.invertible else 'no'}")
        return "\n".join(lines)


def basis_label(mode, idx):
    if not idx:
        return "1"
    sep = {"tensor": "*", "symmetric": ".", "antisymmetric": "^"}[mode]
    return sep.join(f"e{i}" for i in idx)


def phi_matrix(spec: SpaceSpec, mode: str, max_grade: int, side: str = "U") -> PhiMatrix:
    _require_self_dual(spec, "phi_matrix")
    mode = _MODE_ALIASES[mode]
    basis = canonical_basis(mode, spec.dim_u, max_grade)
    index = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    cols = []
    for b in basis:
        image = coordinates(mode, phi(mode, basis_element(mode, b, side), spec))
        col = [Fraction(0)] * n
        for k, c in image.items():
            col[index[k]] = c
        cols.append(col)
    entries = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return PhiMatrix(mode, max_grade, tuple(basis), entries)


def invert(matrix) -> list[list[Fraction]]:
    """Exact Gauss-Jordan inverse of a square Fraction matrix."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                k = aug[r][col]
                aug[r] = [x - k * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def phi_inverse(mode: str, a: Element, spec: SpaceSpec, max_grade: int | None = None) -> Element:
    """phi^{-1}(a) computed by inverting the truncated phi matrix."""
    mode = _MODE_ALIASES[mode]
    g = a.max_grade() if max_grade is None else max_grade
    pm = phi_matrix(spec, mode, g, a.side)
    inv = pm.inverse()
    index = {b: i for i, b in enumerate(pm.basis)}
    coords = coordinates(mode, a)
    out = Element.zero(a.side)
    for i, b in enumerate(pm.basis):
        c = sum((inv[i][index[k]] * v for k, v in coords.items()), Fraction(0))
        if c:
            out = out + basis_element(mode, b, a.side) * c
    return out
