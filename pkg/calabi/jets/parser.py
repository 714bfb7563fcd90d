"""
calabi/jets/parser.py

Recursive-descent parser for the function-spec DSL.

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | factor
    factor := base ('^' integer)?
    base   := number | 'x' index | '(' expr ')' | 'ln' '(' expr ')'
            | 'exp' '(' expr ')'

Unary minus binds looser than '^': `-x1^2` is -(x1^2).

Whitespace is insignificant. Numbers are integers or decimals; a quotient of two
constants folds into one exact rational constant, so `1/3` is the rational 1/3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from calabi.errors import DimensionError, DslSyntaxError, UnknownIdentifierError
from calabi.jets.expr import BinOp, Call, Const, Expr, Neg, Pow, Var, max_index
from calabi.jets.spec import FunctionSpec

FUNCTIONS = ("ln", "exp")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)
_VAR_RE = re.compile(r"x(\d+)$")


@dataclass(frozen=True)
class Token:
    kind: str  # number | var | func | op | eof
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise DslSyntaxError(f"unexpected character '{text[pos]}'", pos, text)
        kind = match.lastgroup
        lexeme = match.group()
        if kind == "ident":
            var_match = _VAR_RE.match(lexeme)
            if var_match:
                if int(var_match.group(1)) < 1:
                    raise DslSyntaxError("variable index must be >= 1", pos, text)
                tokens.append(Token("var", lexeme, pos))
            elif lexeme in FUNCTIONS:
                tokens.append(Token("func", lexeme, pos))
            elif lexeme == "x":
                raise DslSyntaxError("variable 'x' needs an index", pos, text)
            else:
                raise UnknownIdentifierError(lexeme, pos, text)
        elif kind != "ws":
            tokens.append(Token(kind, lexeme, pos))
        pos = match.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    # --- token helpers ---

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, lexeme: str) -> Optional[Token]:
        if self.current.kind == "op" and self.current.text == lexeme:
            return self.advance()
        return None

    def expect(self, lexeme: str) -> Token:
        token = self.accept(lexeme)
        if token is None:
            raise self.error(f"expected '{lexeme}'")
        return token

    def error(self, message: str) -> DslSyntaxError:
        found = self.current.text or "end of input"
        return DslSyntaxError(f"{message}, found {found!r}", self.current.position, self.text)

    # --- grammar ---

    def parse(self) -> Expr:
        expr = self.expr()
        if self.current.kind != "eof":
            raise self.error("unexpected trailing input")
        return expr

    def expr(self) -> Expr:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            token = self.advance()
            right = self.unary()
            node = self._fold(token, node, right)
        return node

    def unary(self) -> Expr:
        if self.accept("-"):
            operand = self.unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Neg(operand)
        return self.factor()

    def factor(self) -> Expr:
        base = self.base()
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            token = self.current
            if token.kind != "number" or not token.text.isdigit():
                raise self.error("exponent must be an integer")
            self.advance()
            return Pow(base, sign * int(token.text))
        return base

    def base(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Const(Fraction(token.text))
        if token.kind == "var":
            self.advance()
            return Var(int(token.text[1:]))
        if token.kind == "func":
            self.advance()
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(token.text, arg)  # type: ignore[arg-type]
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error("expected a number, variable, function or '('")

    def _fold(self, token: Token, left: Expr, right: Expr) -> Expr:
        # constant quotients become one rational literal
        if token.text == "/" and isinstance(left, Const) and isinstance(right, Const):
            if right.value == 0:
                raise DslSyntaxError("division by zero constant", token.position, self.text)
            return Const(left.value / right.value)
        return BinOp(token.text, left, right)  # type: ignore[arg-type]


def parse_expression(text: str) -> Expr:
    return _Parser(text).parse()


def parse(text: str, dim: Optional[int] = None) -> FunctionSpec:
    """
    Parse DSL text into a validated FunctionSpec.

    Args:
        text: the function, e.g. "-ln(x1)+0.5*x2^2".
        dim: explicit dimension; defaults to the largest variable index.
    """
    expr = parse_expression(text)
    needed = max_index(expr)
    if dim is None:
        dim = needed
    if dim < 1:
        raise DimensionError("function spec has zero dimension (no variables and no dim given)")
    if dim < needed:
        raise DimensionError(f"expression reads x{needed} but dim={dim}")
    return FunctionSpec(expr=expr, dim=dim)
