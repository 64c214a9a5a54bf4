"""Underlying spaces U, V and the rational bilinear form between them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

Scalar = Fraction


class SpaceError(ValueError):
    pass


def as_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact rational."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class SpaceSpec:
    """Dimensions of U and V plus the Gram matrix ``gram[i][j] = <e_{i+1}, f_{j+1}>``.

    With ``self_dual`` set, ``e_i`` and ``f_i`` name the same basis vector and
    the Gram matrix is read as a bilinear form on U itself.
    """

    dim_u: int
    dim_v: int
    gram: tuple[tuple[Fraction, ...], ...]
    self_dual: bool = False

    def __post_init__(self):
        if self.dim_u < 1 or self.dim_v < 1:
            raise SpaceError("dimensions must be positive")
        if len(self.gram) != self.dim_u or any(len(row) != self.dim_v for row in self.gram):
            raise SpaceError(
                f"gram must be {self.dim_u}x{self.dim_v}, got "
                f"{len(self.gram)}x{','.join(str(len(r)) for r in self.gram) or 0}"
            )
        if self.self_dual and self.dim_u != self.dim_v:
            raise SpaceError("self_dual requires dim_u == dim_v")

    def pair(self, i: int, j: int) -> Fraction:
        """<e_i, f_j> with 1-based indices."""
        if not 1 <= i <= self.dim_u:
            raise IndexError(f"U index {i} out of range 1..{self.dim_u}")
        if not 1 <= j <= self.dim_v:
            raise IndexError(f"V index {j} out of range 1..{self.dim_v}")
        return self.gram[i - 1][j - 1]

    def dim(self, side: str) -> int:
        return self.dim_u if side == "U" else self.dim_v

    @property
    def symmetric_gram(self) -> bool:
        return self.dim_u == self.dim_v and all(
            self.gram[i][j] == self.gram[j][i] for i in range(self.dim_u) for j in range(i)
        )


def make_space(dim_u: int, dim_v: int, gram: Sequence[Sequence], self_dual: bool = False) -> SpaceSpec:
    rows = tuple(tuple(as_scalar(x) for x in row) for row in gram)
    return SpaceSpec(int(dim_u), int(dim_v), rows, bool(self_dual))


def identity_space(dim: int) -> SpaceSpec:
    return make_space(dim, dim, [[int(i == j) for j in range(dim)] for i in range(dim)], True)


def pair_vectors(spec: SpaceSpec, i: int, j: int) -> Fraction:
    return spec.pair(i, j)


def parse_space(text: str) -> SpaceSpec:
    """Parse the line-based space file format.

    Keys: ``dim_u N``, ``dim_v M``, ``self_dual true|false`` and one
    ``gram a_1 ... a_M`` line per U basis vector. ``#`` starts a comment.
    """
    dims: dict[str, int] = {}
    self_dual = None
    gram = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *vals = line.split()
        try:
            if key in ("dim_u", "dim_v"):
                if len(vals) != 1:
                    raise SpaceError(f"{key} takes one value")
                dims[key] = int(vals[0])
            elif key == "self_dual":
                if vals not in (["true"], ["false"]):
                    raise SpaceError("self_dual must be true or false")
                self_dual = vals[0] == "true"
            elif key == "gram":
                gram.append([Fraction(v) for v in vals])
            else:
                raise SpaceError(f"unknown key {key!r}")
        except (ValueError, ZeroDivisionError) as exc:
            raise SpaceError(f"line {lineno}: {exc}") from None
    for key in ("dim_u", "dim_v"):
        if key not in dims:
            raise SpaceError(f"missing {key}")
    return make_space(dims["dim_u"], dims["dim_v"], gram, bool(self_dual))


def load_space(path) -> SpaceSpec:
    return parse_space(Path(path).read_text(encoding="utf-8"))


def format_space(spec: SpaceSpec) -> str:
    lines = [f"dim_u {spec.dim_u}", f"dim_v {spec.dim_v}",
             f"self_dual {'true' if spec.self_dual else 'false'}"]
    lines += ["gram " + " ".join(str(x) for x in row) for row in spec.gram]
    return "\n".join(lines) + "\n"
