"""Randomized invariant suites and the check runner behind ``circleprod check``.

Every suite draws from its own ``random.Random`` stream seeded by
``f"{seed}/{suite name}"`` so results do not depend on suite order.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional

from . import hopf, laplace, products, symmetry, tensor
from .space import SpaceSpec, make_space
from .tensor import Element, JointElement

COEFFICIENTS = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "1/2", "1", "2"))


# ---------------------------------------------------------------------------
# random inputs

def rand_coef(rng: random.Random) -> Fraction:
    return rng.choice(COEFFICIENTS)


def rand_word(rng, dim, grade):
    return tuple(rng.randint(1, dim) for _ in range(grade))


def rand_element(rng, dim: int, max_grade: int, side: str = "U", terms=(1, 4),
                 min_grade: int = 0) -> Element:
    n = rng.randint(*terms)
    return Element(
        [(rand_word(rng, dim, rng.randint(min_grade, max_grade)), rand_coef(rng)) for _ in range(n)],
        side,
    )


def rand_homogeneous(rng, dim, grade, side="U", terms=(1, 4)) -> Element:
    return rand_element(rng, dim, grade, side, terms, min_grade=grade)


def rand_vector(rng, dim, side="U") -> Element:
    """Random nonzero grade-1 element."""
    while True:
        x = rand_homogeneous(rng, dim, 1, side, terms=(1, 3))
        if x:
            return x


def rand_joint(rng, spec: SpaceSpec, max_grade: int, terms=(1, 4)) -> JointElement:
    n = rng.randint(*terms)
    return JointElement([
        ((rand_word(rng, spec.dim_u, rng.randint(0, max_grade)),
          rand_word(rng, spec.dim_v, rng.randint(0, max_grade))), rand_coef(rng))
        for _ in range(n)
    ])


def rand_symmetric(rng, dim, max_grade, side="U") -> Element:
    return symmetry.symmetrize(rand_element(rng, dim, max_grade, side))


def rand_antisymmetric(rng, dim, max_grade, side="U") -> Element:
    return symmetry.antisymmetrize(rand_element(rng, dim, max_grade, side))


# ---------------------------------------------------------------------------
# runner

@dataclass
class CheckContext:
    spec: SpaceSpec
    max_grade: int
    laplace: Callable = laplace.laplace_closed

    def pair(self, a, b):
        return self.laplace(a, b, self.spec)


@dataclass
class Suite:
    name: str
    criterion: int
    fn: Callable  # (ctx, rng) -> None | counterexample text
    needs: tuple = ()
    trials: Optional[int] = None  # None: use the runner's trial count
    cap: int = 99  # per-suite grade ceiling
    kind: str = "check"  # "check" or "report"


@dataclass
class SuiteResult:
    name: str
    criterion: int
    status: str  # PASS | FAIL | SKIP | INFO
    trials: int
    counterexample: Optional[str] = None
    note: str = ""
    seconds: float = 0.0


@dataclass
class CheckReport:
    seed: int
    max_grade: int
    trials: int
    results: list = field(default_factory=list)

    @property
    def failed(self) -> list:
        return [r for r in self.results if r.status == "FAIL"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def format(self, timing: bool = False) -> str:
        lines = [f"check seed={self.seed} max_grade={self.max_grade} trials={self.trials}"]
        for r in self.results:
            extra = f" [{r.seconds:.2f}s]" if timing else ""
            if r.status == "PASS":
                lines.append(f"PASS  {r.name}  {r.trials}/{r.trials}{extra}")
            elif r.status == "FAIL":
                lines.append(f"FAIL  {r.name}  {r.counterexample}{extra}")
            else:
                lines.append(f"{r.status}  {r.name}  {r.note}{extra}")
        counts = defaultdict(int)
        for r in self.results:
            counts[r.status] += 1
        lines.append(
            f"summary: {counts['PASS']} passed, {counts['FAIL']} failed, "
            f"{counts['SKIP']} skipped, {counts['INFO']} reports"
        )
        return "\n".join(lines)


SUITES: list[Suite] = []


def suite(name, criterion, needs=(), trials=None, cap=99, kind="check"):
    def deco(fn):
        SUITES.append(Suite(name, criterion, fn, tuple(needs), trials, cap, kind))
        return fn
    return deco


def _unmet(needs, spec: SpaceSpec) -> Optional[str]:
    if "self_dual" in needs and not spec.self_dual:
        return "needs a self-dual space"
    if "symmetric_gram" in needs and not (spec.self_dual and spec.symmetric_gram):
        return "needs a self-dual space with symmetric Gram matrix"
    return None


def run_suite(s: Suite, spec: SpaceSpec, seed: int, max_grade: int, trials: int,
              laplace_fn=None) -> SuiteResult:
    reason = _unmet(s.needs, spec)
    if reason:
        return SuiteResult(s.name, s.criterion, "SKIP", 0, note=reason)
    n = s.trials if s.trials is not None and trials > 0 else trials
    ctx = CheckContext(spec, min(max_grade, s.cap), laplace_fn or laplace.laplace_closed)
    rng = random.Random(f"{seed}/{s.name}")
    start = time.perf_counter()
    for k in range(n):
        msg = s.fn(ctx, rng)
        if msg is not None and s.kind == "check":
            return SuiteResult(s.name, s.criterion, "FAIL", k + 1,
                               counterexample=f"trial {k} (seed {seed}): {msg}",
                               seconds=time.perf_counter() - start)
        if s.kind == "report":
            return SuiteResult(s.name, s.criterion, "INFO", 1, note=msg or "",
                               seconds=time.perf_counter() - start)
    return SuiteResult(s.name, s.criterion, "PASS", n, seconds=time.perf_counter() - start)


def run_checks(spec: SpaceSpec, seed: int = 42, max_grade: int = 5, trials: int = 100,
               criteria=None, names=None, laplace_fn=None) -> CheckReport:
    """Run every registered suite (optionally filtered) and collect a report.

    ``laplace_fn`` replaces the pairing used inside the suites; it exists so
    the harness itself can be tested against a deliberately broken pairing.
    """
    report = CheckReport(seed, max_grade, trials)
    if trials <= 0:
        return report
    for s in SUITES:
        if criteria is not None and s.criterion not in criteria:
            continue
        if names is not None and s.name not in names:
            continue
        report.results.append(run_suite(s, spec, seed, max_grade, trials, laplace_fn))
    return report


def _neq(label, lhs, rhs, **inputs) -> Optional[str]:
    if lhs == rhs:
        return None
    shown = "; ".join(f"{k} = {v}" for k, v in inputs.items())
    return f"{label}: {shown}; lhs = {lhs}; rhs = {rhs}"


# ---------------------------------------------------------------------------
# space / tensor

@suite("space.field_axioms", 0)
def _field_axioms(ctx, rng):
    def r():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    a, b, c = r(), r(), r()
    ok = ((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
          and a + b == b + a and a * b == b * a and a + 0 == a and a * 1 == a and a + (-a) == 0
          and (a == 0 or a * (1 / a) == 1))
    return None if ok else f"a = {a}, b = {b}, c = {c}"


@suite("space.immutable_lookup", 0)
def _immutable(ctx, rng):
    i, j = rng.randint(1, ctx.spec.dim_u), rng.randint(1, ctx.spec.dim_v)
    first = ctx.spec.pair(i, j)
    try:
        ctx.spec.dim_u = 0  # type: ignore[misc]
        return "SpaceSpec accepted attribute assignment"
    except AttributeError:
        pass
    return _neq("lookup", first, ctx.spec.pair(i, j), i=i, j=j)


@suite("tensor.associativity", 0, cap=4)
def _tensor_assoc(ctx, rng):
    d = ctx.spec.dim_u
    a, b, c = (rand_element(rng, d, ctx.max_grade) for _ in range(3))
    return _neq("(ab)c vs a(bc)", (a * b) * c, a * (b * c), a=a, b=b, c=c)


@suite("tensor.grade_additivity", 0, cap=4)
def _grade_add(ctx, rng):
    d = ctx.spec.dim_u
    a, b = rand_element(rng, d, ctx.max_grade), rand_element(rng, d, ctx.max_grade)
    ab = a * b
    for g in range(2 * ctx.max_grade + 1):
        rhs = Element.zero("U")
        for g1 in range(g + 1):
            rhs = rhs + tensor.grade_part(a, g1) * tensor.grade_part(b, g - g1)
        msg = _neq(f"grade {g} part", tensor.grade_part(ab, g), rhs, a=a, b=b)
        if msg:
            return msg
    parts = Element.zero("U")
    for _, p in tensor.grade_parts(a):
        parts = parts + p
    return _neq("parts sum", parts, a, a=a)


@suite("tensor.duality_bilinear_orthogonal", 0, cap=4)
def _duality(ctx, rng):
    sp = ctx.spec
    g = ctx.max_grade
    a1, a2 = rand_element(rng, sp.dim_u, g, "U"), rand_element(rng, sp.dim_u, g, "U")
    b = rand_element(rng, sp.dim_v, g, "V")
    c = rand_coef(rng)
    msg = _neq("linearity", tensor.duality(a1 * c + a2, b, sp),
               c * tensor.duality(a1, b, sp) + tensor.duality(a2, b, sp), a1=a1, a2=a2, b=b)
    if msg:
        return msg
    p, q = rng.sample(range(g + 1), 2) if g >= 1 else (0, 0)
    if p != q:
        x, y = rand_homogeneous(rng, sp.dim_u, p, "U"), rand_homogeneous(rng, sp.dim_v, q, "V")
        return _neq("grade orthogonality", tensor.duality(x, y, sp), 0, x=x, y=y)
    return None


@suite("tensor.joint_associative_unital", 0, cap=3)
def _joint_assoc(ctx, rng):
    a, b, c = (rand_joint(rng, ctx.spec, ctx.max_grade) for _ in range(3))
    one = JointElement.unit()
    return (_neq("(ab)c vs a(bc)", (a * b) * c, a * (b * c), a=a, b=b, c=c)
            or _neq("1a", one * a, a, a=a) or _neq("a1", a * one, a, a=a))


# ---------------------------------------------------------------------------
# criterion 1: Hopf axioms

def _hopf_axioms_tu(ctx, rng, which):
    d = ctx.spec.dim_u
    a = rand_element(rng, d, ctx.max_grade)
    if which == "coassociativity":
        return _neq("(D(x)I)D vs (I(x)D)D", hopf.double_coproduct(a, "left"),
                    hopf.double_coproduct(a, "right"), a=a)
    if which == "cocommutativity":
        D = hopf.coproduct(a)
        return _neq("swap", D.swap(), D, a=a)
    if which == "counit":
        D = hopf.coproduct(a)
        return (_neq("(e(x)I)D", D.left(lambda x: Element.scalar(hopf.counit(x))).multiply(), a, a=a)
                or _neq("(I(x)e)D", D.right(lambda x: Element.scalar(hopf.counit(x))).multiply(), a, a=a))
    if which == "antipode":
        D = hopf.coproduct(a)
        target = Element.scalar(hopf.counit(a), a.side)
        return (_neq("mu(S(x)I)D", D.left(hopf.antipode).multiply(), target, a=a)
                or _neq("mu(I(x)S)D", D.right(hopf.antipode).multiply(), target, a=a))
    b = rand_element(rng, d, ctx.max_grade)
    return _neq("D(ab) vs D(a)D(b)", hopf.coproduct(a * b), hopf.coproduct(a) * hopf.coproduct(b), a=a, b=b)


def _hopf_axioms_joint(ctx, rng, which):
    g = max(1, ctx.max_grade // 2)
    a = rand_joint(rng, ctx.spec, g)
    if which == "coassociativity":
        return _neq("(D(x)I)D vs (I(x)D)D", hopf.joint_double_coproduct(a, "left"),
                    hopf.joint_double_coproduct(a, "right"), a=a)
    if which == "cocommutativity":
        D = hopf.joint_coproduct(a)
        return _neq("swap", D.swap(), D, a=a)
    if which == "counit":
        D = hopf.joint_coproduct(a)
        eps = lambda x: JointElement.term(coef=hopf.joint_counit(x))  # noqa: E731
        return (_neq("(e(x)I)D", D.left(eps).multiply(), a, a=a)
                or _neq("(I(x)e)D", D.right(eps).multiply(), a, a=a))
    if which == "antipode":
        D = hopf.joint_coproduct(a)
        target = JointElement.term(coef=hopf.joint_counit(a))
        return (_neq("mu(S(x)I)D", D.left(hopf.joint_antipode).multiply(), target, a=a)
                or _neq("mu(I(x)S)D", D.right(hopf.joint_antipode).multiply(), target, a=a))
    b = rand_joint(rng, ctx.spec, max(1, g // 2 + 1))
    return _neq("D(ab) vs D(a)D(b)", hopf.joint_coproduct(a * b),
                hopf.joint_coproduct(a) * hopf.joint_coproduct(b), a=a, b=b)


for _which, _cap in (("coassociativity", 5), ("cocommutativity", 5), ("counit", 5),
                     ("antipode", 5), ("homomorphism", 4)):
    suite(f"hopf.{_which}[T(U)]", 1, cap=_cap)(
        lambda ctx, rng, w=_which: _hopf_axioms_tu(ctx, rng, w))
    suite(f"hopf.{_which}[joint]", 1, cap=_cap)(
        lambda ctx, rng, w=_which: _hopf_axioms_joint(ctx, rng, w))


# ---------------------------------------------------------------------------
# criterion 2: symmetry

@suite("symm.projections", 2, cap=5)
def _projections(ctx, rng):
    a = rand_element(rng, ctx.spec.dim_u, ctx.max_grade)
    S, A = symmetry.symmetrize, symmetry.antisymmetrize
    low = tensor.grade_part(a, 0) + tensor.grade_part(a, 1)
    return (_neq("Symm Symm", S(S(a)), S(a), a=a)
            or _neq("ASymm ASymm", A(A(a)), A(a), a=a)
            or _neq("Symm ASymm", S(A(a)), low, a=a)
            or _neq("ASymm Symm", A(S(a)), low, a=a))


@suite("symm.ideal_annihilation", 2, cap=4)
def _ideal(ctx, rng):
    d = ctx.spec.dim_u
    x, y = tensor.e(rng.randint(1, d)), tensor.e(rng.randint(1, d))
    l, r = rand_element(rng, d, ctx.max_grade - 2), rand_element(rng, d, ctx.max_grade - 2)
    comm, anti = x * y - y * x, x * y + y * x
    return (_neq("Symm(l(xy-yx)r)", symmetry.symmetrize(l * comm * r), 0, x=x, y=y, l=l, r=r)
            or _neq("ASymm(l(xy+yx)r)", symmetry.antisymmetrize(l * anti * r), 0, x=x, y=y, l=l, r=r))


@suite("symm.graded_anticommutativity", 2, cap=5)
def _anticomm(ctx, rng):
    d = ctx.spec.dim_u
    p = rng.randint(1, max(1, ctx.max_grade - 1))
    q = rng.randint(1, max(1, ctx.max_grade - p))
    u = symmetry.antisymmetrize(rand_homogeneous(rng, d, p))
    v = symmetry.antisymmetrize(rand_homogeneous(rng, d, q))
    return _neq("u^v vs (-1)^pq v^u", symmetry.wedge_product(u, v),
                symmetry.wedge_product(v, u) * (-1) ** (p * q), u=u, v=v)


@suite("symm.homogeneous_coproduct", 2, cap=5)
def _homog_coproduct(ctx, rng):
    x = rand_vector(rng, ctx.spec.dim_u)
    t = rng.randint(0, ctx.max_grade)
    rhs: dict = defaultdict(Fraction)
    for k in range(t + 1):
        for l, cl in symmetry.power(x, t - k).items():
            for r, cr in symmetry.power(x, k).items():
                rhs[(l, r)] += comb(t, k) * cl * cr
    return _neq(f"D(x^{t})", hopf.coproduct(symmetry.power(x, t)),
                hopf.TensorSquare(rhs, "U"), x=x)


@suite("symm.polarization", 2, cap=5)
def _polarization(ctx, rng):
    t = rng.randint(1, ctx.max_grade)
    xs = [rand_vector(rng, ctx.spec.dim_u) for _ in range(t)]
    prod_ = Element.scalar(1)
    for x in xs:
        prod_ = prod_ * x
    return _neq("polarization", symmetry.polarization_expansion(xs), symmetry.symmetrize(prod_),
                xs="[" + ", ".join(map(str, xs)) + "]")


@suite("symm.duality_compatibility", 2, cap=4)
def _duality_compat(ctx, rng):
    sp = ctx.spec
    a = rand_element(rng, sp.dim_u, ctx.max_grade, "U")
    b = rand_element(rng, sp.dim_v, ctx.max_grade, "V")
    D = tensor.duality
    for name, P in (("Symm", symmetry.symmetrize), ("ASymm", symmetry.antisymmetrize)):
        msg = (_neq(f"<{name} a, b> vs <a, {name} b>", D(P(a), b, sp), D(a, P(b), sp), a=a, b=b)
               or _neq(f"<{name} a, b> vs <{name} a, {name} b>", D(P(a), b, sp), D(P(a), P(b), sp), a=a, b=b))
        if msg:
            return msg
    return None


def _projected_coproduct(P, a):
    return hopf.coproduct(a).left(P).right(P)


def _projected_double(P, a, first):
    acc: dict = defaultdict(Fraction)
    for (l, r), c in _projected_coproduct(P, a).items():
        leg = l if first == "left" else r
        for (x, y), c2 in _projected_coproduct(P, Element.word(*leg)).items():
            key = (x, y, r) if first == "left" else (l, x, y)
            acc[key] += c * c2
    return {k: v for k, v in acc.items() if v}


@suite("symm.projected_hopf", 2, cap=4)
def _projected_hopf(ctx, rng):
    d = ctx.spec.dim_u
    for name, P in (("Symm", symmetry.symmetrize), ("ASymm", symmetry.antisymmetrize)):
        a = P(rand_element(rng, d, ctx.max_grade))
        D = _projected_coproduct(P, a)
        msg = (_neq(f"{name} cocommutativity", D.swap(), D, a=a)
               or _neq(f"{name} coassociativity", _projected_double(P, a, "left"),
                       _projected_double(P, a, "right"), a=a))
        if msg:
            return msg
    return None


# ---------------------------------------------------------------------------
# criterion 3: Laplace pairing

@suite("laplace.oracle_equivalence", 3, trials=200, cap=4)
def _oracle(ctx, rng):
    a, b = rand_joint(rng, ctx.spec, ctx.max_grade), rand_joint(rng, ctx.spec, ctx.max_grade)
    return _neq("recursive vs closed", laplace.laplace_recursive(a, b, ctx.spec), ctx.pair(a, b), a=a, b=b)


@suite("laplace.splitting", 3, cap=2)
def _splitting(ctx, rng):
    a, b, c = (rand_joint(rng, ctx.spec, ctx.max_grade) for _ in range(3))
    rhs = sum((k * ctx.pair(JointElement.term(*l), b) * ctx.pair(JointElement.term(*r), c)
               for (l, r), k in hopf.joint_coproduct(a).items()), Fraction(0))
    return _neq("(a|bc) vs sum (a1|b)(a2|c)", ctx.pair(a, b * c), rhs, a=a, b=b, c=c)


@suite("laplace.left_splitting", 3, cap=2)
def _left_splitting(ctx, rng):
    a, b, c = (rand_joint(rng, ctx.spec, ctx.max_grade) for _ in range(3))
    rhs = sum((k * ctx.pair(a, JointElement.term(*l)) * ctx.pair(b, JointElement.term(*r))
               for (l, r), k in hopf.joint_coproduct(c).items()), Fraction(0))
    return _neq("(ab|c) vs sum (a|c1)(b|c2)", ctx.pair(a * b, c), rhs, a=a, b=b, c=c)


@suite("laplace.symmetry", 3, cap=4)
def _lap_symmetry(ctx, rng):
    a, b = rand_joint(rng, ctx.spec, ctx.max_grade), rand_joint(rng, ctx.spec, ctx.max_grade)
    return _neq("(a|b) vs (b|a)", ctx.pair(a, b), ctx.pair(b, a), a=a, b=b)


@suite("laplace.grade_orthogonality", 3, cap=4)
def _lap_orth(ctx, rng):
    sp = ctx.spec
    n, m = rng.sample(range(ctx.max_grade + 1), 2)
    x = Element.word(*rand_word(rng, sp.dim_u, n), side="U")
    y = Element.word(*rand_word(rng, sp.dim_v, m), side="V")
    return _neq("(x1..xn | y1..ym)", ctx.pair(x, y), 0, x=x, y=y)


@suite("laplace.permutation_invariance", 3, cap=4)
def _lap_perm(ctx, rng):
    sp = ctx.spec
    n = rng.randint(1, ctx.max_grade)
    xw, yw = rand_word(rng, sp.dim_u, n), rand_word(rng, sp.dim_v, n)
    x, y = Element.word(*xw, side="U"), Element.word(*yw, side="V")
    base = ctx.pair(x, y)
    px = Element.word(*rng.sample(xw, n), side="U")
    py = Element.word(*rng.sample(yw, n), side="V")
    # sum over all rearrangements of the y's equals n! times a single one
    total = Element.zero("V")
    for p in itertools.permutations(yw):
        total = total + Element.word(*p, side="V")
    return (_neq("permute y", ctx.pair(x, py), base, x=x, y=y, py=py)
            or _neq("permute x", ctx.pair(px, y), base, x=x, y=y, px=px)
            or _neq("sum over Per(n)", ctx.pair(x, total), base * factorial(n), x=x, y=y))


@suite("laplace.factorization", 3, cap=3)
def _lap_factor(ctx, rng):
    sp = ctx.spec
    g = ctx.max_grade
    u1, u2 = (rand_homogeneous(rng, sp.dim_u, rng.randint(0, g), "U") for _ in range(2))
    v1, v2 = (rand_homogeneous(rng, sp.dim_v, rng.randint(0, g), "V") for _ in range(2))
    lhs = ctx.pair(tensor.embed(u1) * tensor.embed(v1), tensor.embed(u2) * tensor.embed(v2))
    rhs = ctx.pair(u1, v2) * ctx.pair(v1, u2)
    return _neq("(u1(x)v1 | u2(x)v2) vs (u1|v2)(v1|u2)", lhs, rhs, u1=u1, v1=v1, u2=u2, v2=v2)


@suite("laplace.spot_values", 3, cap=4)
def _lap_spot(ctx, rng):
    sp = ctx.spec
    x, y = rand_vector(rng, sp.dim_u, "U"), rand_vector(rng, sp.dim_v, "V")
    xy = tensor.duality(x, y, sp)
    return (_neq("(1|1)", ctx.pair(JointElement.unit(), JointElement.unit()), 1)
            or _neq("(x^2|y^2)", ctx.pair(symmetry.power(x, 2), symmetry.power(y, 2)), 2 * xy ** 2, x=x, y=y))


# ---------------------------------------------------------------------------
# criterion 4: square product on the joint algebra

@suite("square.associativity", 4, cap=3)
def _sq_assoc(ctx, rng):
    sp = ctx.spec
    a, b, c = (rand_joint(rng, sp, ctx.max_grade, terms=(1, 3)) for _ in range(3))
    sq = products.joint_square
    return _neq("(a[]b)[]c vs a[](b[]c)", sq(sq(a, b, sp), c, sp), sq(a, sq(b, c, sp), sp), a=a, b=b, c=c)


@suite("square.unit", 4, cap=3)
def _sq_unit(ctx, rng):
    a = rand_joint(rng, ctx.spec, ctx.max_grade)
    one = JointElement.unit()
    sq = products.joint_square
    return _neq("1[]a", sq(one, a, ctx.spec), a, a=a) or _neq("a[]1", sq(a, one, ctx.spec), a, a=a)


@suite("square.weak_commutativity", 4, cap=2)
def _sq_weak(ctx, rng):
    sp = ctx.spec
    a, b, c = (rand_joint(rng, sp, ctx.max_grade) for _ in range(3))
    sq = products.joint_square
    return _neq("(a[]b|c) vs (a|b[]c)", ctx.pair(sq(a, b, sp), c), ctx.pair(a, sq(b, c, sp)), a=a, b=b, c=c)


@suite("square.recovery", 4, cap=2)
def _sq_recovery(ctx, rng):
    sp = ctx.spec
    a, b = rand_joint(rng, sp, ctx.max_grade), rand_joint(rng, sp, ctx.max_grade)
    Db = list(hopf.joint_coproduct(b).items())
    acc = JointElement()
    for (a1, a2), ca in hopf.joint_coproduct(a).items():
        s1 = hopf.joint_antipode(JointElement.term(*a1))
        for (b1, b2), cb in Db:
            w = ctx.pair(s1, JointElement.term(*b1))
            if w:
                acc = acc + products.joint_square(JointElement.term(*a2), JointElement.term(*b2), sp) * (ca * cb * w)
    return _neq("ab vs sum (S(a1)|b1) a2[]b2", a * b, acc, a=a, b=b)


# ---------------------------------------------------------------------------
# criterion 5: circle products

@suite("circle.symm_from_square", 5, needs=("self_dual",), cap=3)
def _circ_sym_sq(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    u, v = rand_symmetric(rng, d, ctx.max_grade), rand_symmetric(rng, d, ctx.max_grade)
    return _neq("Symm(u[]v) vs u o v", symmetry.symmetrize(products.self_square(u, v, sp)),
                products.circle_sym(u, v, sp), u=u, v=v)


@suite("circle.asymm_from_square", 5, needs=("self_dual",), cap=3)
def _circ_asym_sq(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    u, v = rand_antisymmetric(rng, d, ctx.max_grade), rand_antisymmetric(rng, d, ctx.max_grade)
    return _neq("ASymm(u[]v) vs u o v", symmetry.antisymmetrize(products.self_square(u, v, sp)),
                products.circle_antisym(u, v, sp), u=u, v=v)


@suite("circle.sym_associativity", 5, needs=("self_dual",), cap=2)
def _circ_sym_assoc(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    u, v, w = (rand_symmetric(rng, d, ctx.max_grade) for _ in range(3))
    o = products.circle_sym
    return _neq("(uov)ow vs uo(vow)", o(o(u, v, sp), w, sp), o(u, o(v, w, sp), sp), u=u, v=v, w=w)


@suite("circle.asym_associativity", 5, needs=("self_dual",), cap=2)
def _circ_asym_assoc(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    u, v, w = (rand_antisymmetric(rng, d, ctx.max_grade) for _ in range(3))
    o = products.circle_antisym
    return _neq("(uov)ow vs uo(vow)", o(o(u, v, sp), w, sp), o(u, o(v, w, sp), sp), u=u, v=v, w=w)


@suite("circle.sym_commutativity", 5, needs=("symmetric_gram",), cap=3)
def _circ_comm(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    u, v = rand_symmetric(rng, d, ctx.max_grade), rand_symmetric(rng, d, ctx.max_grade)
    return _neq("uov vs vou", products.circle_sym(u, v, sp), products.circle_sym(v, u, sp), u=u, v=v)


@suite("circle.generator_formula", 5, needs=("self_dual",))
def _circ_gen(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    x, y = rand_vector(rng, d), rand_vector(rng, d)
    rhs = Element.scalar(laplace.self_pairing(x, y, sp)) + symmetry.wedge_product(x, y)
    return _neq("x o y vs (x|y) + x^y", products.circle_antisym(x, y, sp), rhs, x=x, y=y)


@suite("circle.grade_one_pairings", 5, cap=4)
def _grade_one(ctx, rng):
    sp = ctx.spec
    g = rng.randint(2, max(2, ctx.max_grade))
    a = symmetry.antisymmetrize(rand_homogeneous(rng, sp.dim_u, g, "U"))
    b = rand_homogeneous(rng, sp.dim_v, g, "V")
    S = symmetry.symmetrize
    return (_neq("<Symm a, Symm b>", tensor.duality(S(a), S(b), sp), 0, a=a, b=b)
            or _neq("(a|b)", ctx.pair(a, b), 0, a=a, b=b))


def four_vector_report(spec: SpaceSpec, x, y, z, w) -> dict:
    """Compare (x^y) o (z^w) with the printed all-positive four-vector expansion.

    Returns the exact value, the printed form, and the sign patterns (if any)
    on the four pairing terms that would make the printed form correct.
    """
    W, P = symmetry.wedge_product, lambda a, b: laplace.self_pairing(a, b, spec)
    exact = products.circle_antisym(W(x, y), W(z, w), spec)
    terms = [P(x, z) * W(y, w), P(x, w) * W(y, z), P(y, z) * W(x, w), P(y, w) * W(x, z)]
    top = W(W(W(x, y), z), w)
    matches = []
    for signs in itertools.product((1, -1), repeat=4):
        cand = top
        for s, t in zip(signs, terms):
            cand = cand + t * s
        if cand == exact:
            matches.append(signs)
    return {"exact": exact, "printed": top + terms[0] + terms[1] + terms[2] + terms[3],
            "printed_matches": (1, 1, 1, 1) in matches, "sign_patterns": matches}


@suite("circle.four_vector_expansion", 5, needs=("self_dual",), kind="report")
def _four_vector(ctx, rng):
    x, y, z, w = (rand_vector(rng, ctx.spec.dim_u) for _ in range(4))
    rep = four_vector_report(ctx.spec, x, y, z, w)
    pats = ", ".join("".join("+" if s > 0 else "-" for s in p) for p in rep["sign_patterns"]) or "none"
    return (f"x,y,z,w = {x}, {y}, {z}, {w}: ASymm(u[]v) = {rep['exact']}; "
            f"printed all-positive form = {rep['printed']}; "
            f"matches: {'yes' if rep['printed_matches'] else 'no'}; matching sign patterns: {pats}")


# ---------------------------------------------------------------------------
# criterion 6: phi

@suite("phi.tensor_homomorphism", 6, needs=("self_dual",), cap=3)
def _phi_t(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    a, b = rand_element(rng, d, ctx.max_grade), rand_element(rng, d, ctx.max_grade)
    lhs = products.phi_tensor(a * b, sp)
    rhs = products.self_square(products.phi_tensor(a, sp), products.phi_tensor(b, sp), sp)
    return _neq("phi(ab) vs phi(a)[]phi(b)", lhs, rhs, a=a, b=b)


@suite("phi.sym_homomorphism", 6, needs=("symmetric_gram",), cap=2)
def _phi_s(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    u, v = rand_symmetric(rng, d, ctx.max_grade), rand_symmetric(rng, d, ctx.max_grade)
    lhs = products.phi_sym(symmetry.sym_product(u, v), sp)
    rhs = products.circle_sym(products.phi_sym(u, sp), products.phi_sym(v, sp), sp)
    return _neq("phi(uv) vs phi(u)ophi(v)", lhs, rhs, u=u, v=v)


@suite("phi.antisym_homomorphism", 6, needs=("self_dual",), cap=2)
def _phi_a(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    u, v = rand_antisymmetric(rng, d, ctx.max_grade), rand_antisymmetric(rng, d, ctx.max_grade)
    lhs = products.phi_antisym(symmetry.wedge_product(u, v), sp)
    rhs = products.circle_antisym(products.phi_antisym(u, sp), products.phi_antisym(v, sp), sp)
    return _neq("phi(u^v) vs phi(u)ophi(v)", lhs, rhs, u=u, v=v)


@suite("phi.triangularity", 6, needs=("self_dual",), trials=1, cap=4)
def _phi_tri(ctx, rng):
    g = min(ctx.max_grade, 4 if ctx.spec.dim_u <= 2 else 3)
    for mode in products.MODES:
        pm = products.phi_matrix(ctx.spec, mode, g)
        if not (pm.triangular and pm.unit_diagonal):
            return f"phi_matrix mode={mode} max_grade={g} is not unit upper-triangular"
    return None


@suite("phi.round_trip", 6, needs=("self_dual",), cap=3)
def _phi_round(ctx, rng):
    sp, d = ctx.spec, ctx.spec.dim_u
    mode = rng.choice(products.MODES)
    a = rand_element(rng, d, ctx.max_grade)
    if mode == "symmetric":
        a = symmetry.symmetrize(a)
    elif mode == "antisymmetric":
        a = symmetry.antisymmetrize(a)
    image = products.phi(mode, a, sp)
    return _neq(f"phi^-1(phi(a)) [{mode}]", products.phi_inverse(mode, image, sp, a.max_grade()), a, a=a)


def squared_pairing(a, b, spec: SpaceSpec) -> Fraction:
    """A deliberately broken pairing (not bilinear) for mutation-testing the harness."""
    return laplace.laplace_closed(a, b, spec) ** 2


def default_spaces() -> dict[str, SpaceSpec]:
    """The two configurations used by the acceptance run."""
    return {
        "self-dual dim 2, identity Gram": make_space(2, 2, [[1, 0], [0, 1]], True),
        "dim 2x3, rational Gram": make_space(2, 3, [[1, "1/2", -2], ["-1/3", 3, "2/5"]], False),
    }
