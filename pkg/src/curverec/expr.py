"""Parser and evaluator for curvature/torsion expressions in the variable ``s``.

Grammar (ASCII only)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative, binds tightest
    atom   := NUMBER | 'pi' | 's' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := sin | cos | tan | exp | log | sqrt | abs

``^`` binds tighter than unary minus, so ``-2^2`` is ``-(2^2)``. All
arithmetic is IEEE double precision; ``^`` is the real power function
(``math.pow``), never an integer fast path. Printing via :func:`to_text`
is precedence-aware and re-parses to a structurally identical tree, so a
print/parse round trip evaluates bit-for-bit identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import CurveRecError, InputError, NumericalError

__all__ = [
    "Expression",
    "Num",
    "Var",
    "Pi",
    "Neg",
    "BinOp",
    "Call",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "EvalDomainError",
    "parse_expression",
    "eval_expression",
    "eval_expression_array",
    "to_text",
]


class ExprSyntaxError(InputError):
    """Malformed expression text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class UnknownIdentifierError(InputError):
    """Identifier is neither ``s``, ``pi``, nor a known function name."""

    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier {name!r} (offset {offset})")
        self.name = name
        self.offset = offset


class EvalDomainError(NumericalError):
    """Evaluation produced a non-finite value; carries the offending node."""

    def __init__(self, message: str, node: "Expression", s=None):
        at = "" if s is None else f" at s={s!r}"
        super().__init__(f"{message}{at}: {to_text(node)}")
        self.node = node


# --- syntax tree ------------------------------------------------------------
# Offsets are kept for error messages but excluded from equality so that a
# reprinted-and-reparsed tree compares equal to the original.

@dataclass(frozen=True)
class Num:
    value: float
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Pi:
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    child: "Expression"
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expression"
    right: "Expression"
    offset: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expression"
    offset: int = field(default=-1, compare=False, repr=False)


Expression = Union[Num, Var, Pi, Neg, BinOp, Call]

_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "abs": abs,
}

_FUNCTIONS_ARRAY = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}


# --- tokenizer --------------------------------------------------------------

_OPS = set("+-*/^")


@dataclass(frozen=True)
class _Token:
    kind: str  # num ident op lparen rparen end
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
                # a bare 'e' that is not an exponent is left for the
                # identifier rules to reject
            tokens.append(_Token("num", text[start:i], start))
            continue
        if ch.isalpha():
            start = i
            while i < n and text[i].isalpha():
                i += 1
            tokens.append(_Token("ident", text[start:i], start))
            continue
        if ch in _OPS:
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


# --- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(f"expected {what}", tok.offset)
        return self.advance()

    def parse_expr(self) -> Expression:
        node = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            tok = self.advance()
            node = BinOp(tok.text, node, self.parse_term(), offset=tok.offset)
        return node

    def parse_term(self) -> Expression:
        node = self.parse_unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.advance()
            node = BinOp(tok.text, node, self.parse_unary(), offset=tok.offset)
        return node

    def parse_unary(self) -> Expression:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Neg(self.parse_unary(), offset=tok.offset)
        return self.parse_power()

    def parse_power(self) -> Expression:
        node = self.parse_atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            # exponent may itself carry unary minus: 2^-3
            node = BinOp("^", node, self.parse_unary(), offset=tok.offset)
        return node

    def parse_atom(self) -> Expression:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text), offset=tok.offset)
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == "s":
                return Var(offset=tok.offset)
            if name == "pi":
                return Pi(offset=tok.offset)
            if name in _FUNCTIONS:
                self.expect("lparen", f"'(' after function {name!r}")
                arg = self.parse_expr()
                self.expect("rparen", "')' closing function argument")
                return Call(name, arg, offset=tok.offset)
            raise UnknownIdentifierError(name, tok.offset)
        if tok.kind == "lparen":
            self.advance()
            node = self.parse_expr()
            self.expect("rparen", "')'")
            return node
        raise ExprSyntaxError(
            "expected a number, 's', 'pi', a function call, or '('", tok.offset
        )


def parse_expression(text: str) -> Expression:
    """Parse expression text into a syntax tree.

    Raises ExprSyntaxError (with byte offset) on malformed input and
    UnknownIdentifierError on identifiers outside the grammar.
    """
    if not text or text.isspace():
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(_tokenize(text))
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExprSyntaxError("unexpected trailing input", trailing.offset)
    return node


# --- evaluation -------------------------------------------------------------

def eval_expression(expr: Expression, s: float) -> float:
    """Evaluate the tree at arc length ``s`` in IEEE double precision.

    Any non-finite intermediate (division by zero, log of a negative
    number, overflow, ...) raises EvalDomainError carrying the offending
    node.
    """
    return _eval(expr, float(s))


def _eval(node: Expression, s: float) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return s
    if isinstance(node, Pi):
        return math.pi
    if isinstance(node, Neg):
        return -_eval(node.child, s)
    if isinstance(node, BinOp):
        left = _eval(node.left, s)
        right = _eval(node.right, s)
        try:
            if node.op == "+":
                value = left + right
            elif node.op == "-":
                value = left - right
            elif node.op == "*":
                value = left * right
            elif node.op == "/":
                value = left / right
            else:
                value = math.pow(left, right)
        except (ZeroDivisionError, ValueError, OverflowError) as exc:
            raise EvalDomainError(str(exc), node, s) from None
        if not math.isfinite(value):
            raise EvalDomainError("non-finite intermediate", node, s)
        return value
    if isinstance(node, Call):
        arg = _eval(node.arg, s)
        try:
            value = _FUNCTIONS[node.func](arg)
        except (ValueError, OverflowError) as exc:
            raise EvalDomainError(str(exc), node, s) from None
        if not math.isfinite(value):
            raise EvalDomainError("non-finite intermediate", node, s)
        return value
    raise TypeError(f"not an expression node: {node!r}")


_POW_ELEMENTWISE = np.frompyfunc(math.pow, 2, 1)


def eval_expression_array(expr: Expression, s: np.ndarray) -> np.ndarray:
    """Vectorized evaluation over an array of arc lengths.

    Same domain-error semantics as eval_expression: if any element of an
    intermediate is non-finite, EvalDomainError is raised for that node.
    """
    s = np.asarray(s, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval_array(expr, s)
    return out


def _eval_array(node: Expression, s: np.ndarray) -> np.ndarray:
    if isinstance(node, Num):
        return np.full_like(s, node.value)
    if isinstance(node, Var):
        return s.copy()
    if isinstance(node, Pi):
        return np.full_like(s, math.pi)
    if isinstance(node, Neg):
        return -_eval_array(node.child, s)
    if isinstance(node, BinOp):
        left = _eval_array(node.left, s)
        right = _eval_array(node.right, s)
        if node.op == "+":
            value = left + right
        elif node.op == "-":
            value = left - right
        elif node.op == "*":
            value = left * right
        elif node.op == "/":
            value = left / right
        else:
            # Elementwise math.pow so the vectorized path reproduces the
            # scalar evaluator bit for bit; numpy's power ufunc rounds
            # small integral exponents through a different code path.
            try:
                value = _POW_ELEMENTWISE(left, right).astype(float)
            except (ZeroDivisionError, ValueError, OverflowError):
                raise EvalDomainError("non-finite intermediate", node) from None
        if not np.isfinite(value).all():
            raise EvalDomainError("non-finite intermediate", node)
        return value
    if isinstance(node, Call):
        value = _FUNCTIONS_ARRAY[node.func](_eval_array(node.arg, s))
        if not np.isfinite(value).all():
            raise EvalDomainError("non-finite intermediate", node)
        return value
    raise TypeError(f"not an expression node: {node!r}")


# --- printing ---------------------------------------------------------------

_BIN_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM_PREC = 5


def _prec(node: Expression) -> int:
    if isinstance(node, BinOp):
        return _BIN_PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    return _ATOM_PREC


def to_text(node: Expression) -> str:
    """Render the tree with minimal parentheses.

    Parenthesization preserves tree shape exactly (including among
    same-precedence neighbors, since float arithmetic is not
    associative), so parse(to_text(t)) == t structurally.
    """
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "s"
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Neg):
        inner = to_text(node.child)
        if _prec(node.child) < _NEG_PREC or isinstance(node.child, Neg):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, BinOp):
        prec = _BIN_PREC[node.op]
        left = to_text(node.left)
        right = to_text(node.right)
        if node.op == "^":
            # right-associative: parenthesize any structured left child,
            # and any right child bound looser than '^' itself
            if _prec(node.left) < _ATOM_PREC:
                left = f"({left})"
            if _prec(node.right) < _BIN_PREC["^"]:
                right = f"({right})"
        else:
            if _prec(node.left) < prec:
                left = f"({left})"
            if _prec(node.right) <= prec or isinstance(node.right, Neg):
                right = f"({right})"
        return f"{left}{node.op}{right}"
    if isinstance(node, Call):
        return f"{node.func}({to_text(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")
