"""Tokenizer and precedence-climbing parser for the expression language.

Infix levels, tightest first (all left-associative):

    5  *  ^          concatenation, wedge
    4  @             square product
    3  o  o_s  o_a   circle products (bare ``o`` follows the evaluation mode)
    2  ;             joint constructor  U-part ; V-part
    1  +  -

Unary minus binds tighter than every infix operator.  ``·`` is accepted as
a synonym for ``*`` so that printed results parse back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line, self.column = line, column


FUNCTIONS = {
    "symm": 1, "asymm": 1, "S": 1, "eps": 1, "delta": 1,
    "lap": 2, "lap_slow": 2, "dual": 2, "pow": 2,
    "phi_t": 1, "phi_s": 1, "phi_a": 1,
}

PRECEDENCE = {"*": 5, "^": 5, "@": 4, "o": 3, "o_s": 3, "o_a": 3, ";": 2, "+": 1, "-": 1}


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    side: str  # "U" for eN, "V" for fN
    index: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Expr = Union[Num, Gen, Neg, BinOp, Call]


# ---------------------------------------------------------------------------
# tokens

@dataclass(frozen=True)
class Token:
    kind: str  # int, ident, op, lparen, rparen, comma, slash, end
    text: str
    pos: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^@;·])
  | (?P<slash>/)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
""", re.VERBOSE)


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def tokenize(text: str) -> list[Token]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_line_col(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "op" and tok == "·":
                tok = "*"
            if kind == "ident" and tok in ("o", "o_s", "o_a"):
                kind = "op"
            out.append(Token(kind, tok, pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# ---------------------------------------------------------------------------
# parser

_GEN_RE = re.compile(r"([ef])(\d+)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.k = 0

    def peek(self) -> Token:
        return self.tokens[self.k]

    def next(self) -> Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def error(self, msg, tok: Token):
        raise ParseError(msg, *_line_col(self.text, tok.pos))

    def expect(self, kind, what):
        tok = self.next()
        if tok.kind != kind:
            self.error(f"expected {what}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def parse(self) -> Expr:
        node = self.expr(1)
        tok = self.peek()
        if tok.kind != "end":
            self.error(f"unexpected {tok.text!r}", tok)
        return node

    def expr(self, min_prec: int) -> Expr:
        left = self.unary()
        while True:
            tok = self.peek()
            prec = PRECEDENCE.get(tok.text) if tok.kind == "op" else None
            if prec is None or prec < min_prec:
                return left
            self.next()
            right = self.expr(prec + 1)
            left = BinOp(tok.text, left, right)

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.next()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.next()
        if tok.kind == "int":
            num = Fraction(int(tok.text))
            if self.peek().kind == "slash":
                self.next()
                den = self.expect("int", "denominator")
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                num = Fraction(int(tok.text), int(den.text))
            return Num(num)
        if tok.kind == "lparen":
            node = self.expr(1)
            self.expect("rparen", "')'")
            return node
        if tok.kind == "ident":
            m = _GEN_RE.fullmatch(tok.text)
            if m:
                index = int(m.group(2))
                if index < 1:
                    self.error(f"generator index must be positive in {tok.text!r}", tok)
                return Gen("U" if m.group(1) == "e" else "V", index)
            if tok.text not in FUNCTIONS:
                self.error(f"unknown identifier {tok.text!r}", tok)
            self.expect("lparen", f"'(' after {tok.text}")
            args = [self.expr(1)]
            while self.peek().kind == "comma":
                self.next()
                args.append(self.expr(1))
            self.expect("rparen", "')'")
            if len(args) != FUNCTIONS[tok.text]:
                self.error(f"{tok.text} takes {FUNCTIONS[tok.text]} argument(s), got {len(args)}", tok)
            if tok.text == "pow" and not (isinstance(args[1], Num) and args[1].value.denominator == 1):
                self.error("pow exponent must be a nonnegative integer literal", tok)
            return Call(tok.text, tuple(args))
        self.error(f"unexpected {tok.text or 'end of input'!r}", tok)


def parse_expression(text: str) -> Expr:
    return _Parser(text).parse()


def unparse(node: Expr) -> str:
    """Fully parenthesized text that parses back to ``node``."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Gen):
        return f"{'e' if node.side == 'U' else 'f'}{node.index}"
    if isinstance(node, Neg):
        return f"-{unparse(node.operand)}" if isinstance(node.operand, (Num, Gen, Call)) \
            else f"-({unparse(node.operand)})"
    if isinstance(node, BinOp):
        return f"({unparse(node.left)} {node.op} {unparse(node.right)})"
    return f"{node.name}(" + ", ".join(unparse(a) for a in node.args) + ")"
