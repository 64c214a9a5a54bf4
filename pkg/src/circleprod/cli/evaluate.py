"""Typed evaluation of parsed expressions against a space spec.

Values are scalars (Fraction), one-sided elements, joint elements, or the
tensor squares returned by ``delta``.  Scalars coerce into elements and
elements into joint elements whenever an operation needs it.
"""

from __future__ import annotations

from fractions import Fraction

from .. import hopf, laplace, products, symmetry, tensor
from ..hopf import JointTensorSquare, TensorSquare
from ..space import SpaceSpec
from ..tensor import Element, JointElement
from .parser import BinOp, Call, Expr, Gen, Neg, Num, parse_expression


class EvalError(TypeError):
    """Expression is well formed but does not type-check against the space."""


def _kind(x) -> str:
    if isinstance(x, Fraction):
        return "scalar"
    if isinstance(x, Element):
        return f"{x.side}-element"
    if isinstance(x, JointElement):
        return "joint element"
    return "tensor square"


def _no_squares(op, *vals):
    for v in vals:
        if isinstance(v, (TensorSquare, JointTensorSquare)):
            raise EvalError(f"{op}: delta results cannot be combined further")


def _elem(x, side="U", what="operand") -> Element:
    if isinstance(x, Fraction):
        return Element.scalar(x, side)
    if isinstance(x, Element):
        return x
    raise EvalError(f"{what} must be a one-sided element, got a {_kind(x)}")


def _same_side(a, b, op):
    """Coerce a pair to Elements on a common side."""
    side = a.side if isinstance(a, Element) else b.side if isinstance(b, Element) else "U"
    a, b = _elem(a, side, f"{op} operand"), _elem(b, side, f"{op} operand")
    if a.side != b.side:
        raise EvalError(f"{op} needs both operands on the same side")
    return a, b


def _joint(x) -> JointElement:
    return tensor.embed(x)


def _add(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a + b
    if isinstance(a, JointElement) or isinstance(b, JointElement):
        return _joint(a) + _joint(b)
    if isinstance(a, Element) and isinstance(b, Element) and a.side != b.side:
        return _joint(a) + _joint(b)
    a, b = _same_side(a, b, "+")
    return a + b


def _mul(a, b):
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        return a * b
    if isinstance(a, Element) and isinstance(b, Element) and a.side == b.side:
        return a * b
    return _joint(a) * _joint(b)


def _square(a, b, spec):
    if isinstance(a, JointElement) or isinstance(b, JointElement):
        return products.joint_square(_joint(a), _joint(b), spec)
    if isinstance(a, Element) and isinstance(b, Element) and a.side != b.side:
        return products.joint_square(_joint(a), _joint(b), spec)
    a, b = _same_side(a, b, "@")
    return products.self_square(a, b, spec)


def _semicolon(a, b):
    if isinstance(a, JointElement) or isinstance(a, Element) and a.side != "U":
        raise EvalError("left of ';' must be a U-side element or scalar")
    if isinstance(b, JointElement) or isinstance(b, Element) and b.side != "V":
        raise EvalError("right of ';' must be a V-side element or scalar")
    return _joint(a) * _joint(b)


def _check_generator(node: Gen, spec: SpaceSpec):
    dim = spec.dim(node.side)
    if node.index > dim:
        raise EvalError(f"generator {'e' if node.side == 'U' else 'f'}{node.index} "
                        f"out of range (dim {dim})")


def evaluate(node: Expr, spec: SpaceSpec, mode: str | None = None):
    """Value of ``node``; ``mode`` ("sym" or "asym") resolves the bare ``o`` operator."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Gen):
        _check_generator(node, spec)
        return Element.word(node.index, side=node.side)
    if isinstance(node, Neg):
        val = evaluate(node.operand, spec, mode)
        _no_squares("-", val)
        return -val
    if isinstance(node, BinOp):
        a, b = evaluate(node.left, spec, mode), evaluate(node.right, spec, mode)
        _no_squares(node.op, a, b)
        op = node.op
        if op == "+":
            return _add(a, b)
        if op == "-":
            return _add(a, -b)
        if op == "*":
            return _mul(a, b)
        if op == "^":
            return symmetry.wedge_product(*_same_side(a, b, "^"))
        if op == "@":
            return _square(a, b, spec)
        if op == ";":
            return _semicolon(a, b)
        if op == "o":
            if mode not in ("sym", "asym"):
                raise EvalError("bare 'o' needs --mode sym|asym (or use o_s / o_a)")
            op = "o_s" if mode == "sym" else "o_a"
        u, v = _same_side(a, b, op)
        return (products.circle_sym if op == "o_s" else products.circle_antisym)(u, v, spec)
    return _call(node, spec, mode)


def _call(node: Call, spec: SpaceSpec, mode=None):
    name = node.name
    if name == "pow":
        base = evaluate(node.args[0], spec, mode)
        _no_squares(name, base)
        out = Fraction(1)
        for _ in range(int(node.args[1].value)):
            out = _mul(out, base)
        return out
    args = [evaluate(a, spec, mode) for a in node.args]
    _no_squares(name, *args)
    if name in ("lap", "lap_slow"):
        fn = laplace.laplace_closed if name == "lap" else laplace.laplace_recursive
        return fn(_joint(args[0]), _joint(args[1]), spec)
    if name == "dual":
        a, b = args
        if not (isinstance(a, (Fraction, Element)) and isinstance(b, (Fraction, Element))):
            raise EvalError("dual needs one-sided arguments")
        a, b = _elem(a, "U"), _elem(b, "V")
        if a.side != "U" or b.side != "V":
            raise EvalError("dual needs a U-side and a V-side argument")
        return tensor.duality(a, b, spec)
    (x,) = args
    if name == "S":
        return hopf.joint_antipode(x) if isinstance(x, JointElement) else hopf.antipode(_elem(x))
    if name == "eps":
        return hopf.joint_counit(x) if isinstance(x, JointElement) else hopf.counit(_elem(x))
    if name == "delta":
        return hopf.joint_coproduct(x) if isinstance(x, JointElement) else hopf.coproduct(_elem(x))
    x = _elem(x, what=f"argument of {name}")
    if name == "symm":
        return symmetry.symmetrize(x)
    if name == "asymm":
        return symmetry.antisymmetrize(x)
    if name == "phi_t":
        return products.phi_tensor(x, spec)
    if name == "phi_s":
        return products.phi_sym(x, spec)
    return products.phi_antisym(x, spec)


def format_value(x) -> str:
    if isinstance(x, Fraction):
        return tensor.format_scalar(x)
    return str(x)


def evaluate_text(text: str, spec: SpaceSpec, mode: str | None = None) -> str:
    return format_value(evaluate(parse_expression(text), spec, mode))
