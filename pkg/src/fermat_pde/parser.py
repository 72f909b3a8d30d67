"""Text syntax for exponential polynomials.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | factor
    factor  := atom ('^' uint)?
    atom    := number | number 'i' | 'i' | 'z1' | 'z2'
             | 'exp' '(' expr ')' | '(' expr ')'

``exp`` only accepts a polynomial argument and ``/`` only accepts a constant
divisor.  ``(a+bi)`` is an ordinary parenthesised sum of constants, so it
folds to the complex literal it denotes.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .exp_poly import EvaluationOverflow, ExpPoly, Poly2, ep_pow

MAX_POWER = 64

SYNTAX = "syntax"
NON_POLYNOMIAL_EXPONENT = "non-polynomial-exponent"
NUMERIC_OVERFLOW = "numeric-literal-overflow"


@dataclass(frozen=True)
class ParseDiagnostic:
    position: int
    message: str
    kind: str

    def __str__(self) -> str:
        return f"{self.kind} at offset {self.position}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic

    @property
    def position(self) -> int:
        return self.diagnostic.position

    @property
    def kind(self) -> str:
        return self.diagnostic.kind


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)

_NAMES = {"z1", "z2", "exp", "i"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(ParseDiagnostic(pos, f"unexpected character {text[pos]!r}", SYNTAX))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, message: str, pos: int | None = None, kind: str = SYNTAX):
        if pos is None:
            pos = self.peek()[2]
        raise ParseError(ParseDiagnostic(pos, message, kind))

    def expect(self, value: str):
        kind, text, pos = self.peek()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            self.fail(f"expected {value!r}, found {found}")
        return self.advance()

    def parse(self) -> ExpPoly:
        value = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            self.fail(f"unexpected {text!r}")
        return value

    def expr(self) -> ExpPoly:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ExpPoly:
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, pos = self.advance()[1:]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                d = rhs.as_constant()
                if d is None:
                    self.fail("divisor must be a constant", pos)
                if d == 0:
                    self.fail("division by zero", pos)
                value = value.scaled(1 / d)
        return value

    def unary(self) -> ExpPoly:
        if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.advance()[1]
            value = self.unary()
            return -value if op == "-" else value
        return self.factor()

    def factor(self) -> ExpPoly:
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.advance()
            kind, text, pos = self.peek()
            if kind != "num" or not text.isdigit():
                self.fail("exponent must be a non-negative integer literal")
            self.advance()
            n = int(text)
            if n > MAX_POWER:
                self.fail(f"exponent {n} exceeds {MAX_POWER}", pos, NUMERIC_OVERFLOW)
            base = ExpPoly.const(1) if n == 0 else ep_pow(base, n)
        return base

    def atom(self) -> ExpPoly:
        kind, text, pos = self.peek()
        if kind == "num":
            self.advance()
            imaginary = text.endswith("i")
            value = float(text[:-1] if imaginary else text)
            if not math.isfinite(value):
                self.fail(f"literal {text!r} is out of range", pos, NUMERIC_OVERFLOW)
            return ExpPoly.const(complex(0, value) if imaginary else value)
        if kind == "name":
            if text not in _NAMES:
                self.fail(f"unknown name {text!r}")
            self.advance()
            if text == "z1":
                return ExpPoly.poly(Poly2.z1())
            if text == "z2":
                return ExpPoly.poly(Poly2.z2())
            if text == "i":
                return ExpPoly.const(1j)
            self.expect("(")
            arg_pos = self.peek()[2]
            arg = self.expr()
            self.expect(")")
            poly = arg.as_poly()
            if poly is None:
                self.fail("argument of exp must be a polynomial", arg_pos, NON_POLYNOMIAL_EXPONENT)
            return ExpPoly.exp(poly)
        if kind == "op" and text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        found = "end of input" if kind == "end" else repr(text)
        self.fail(f"unexpected {found}")


def parse_expr(text: str) -> ExpPoly:
    """Parse ``text`` into a canonical ExpPoly.

    Raises :class:`ParseError` (carrying a :class:`ParseDiagnostic`) on any
    malformed input.
    """
    parser = _Parser(text)
    try:
        return parser.parse()
    except (ValueError, OverflowError, EvaluationOverflow) as exc:
        if isinstance(exc, ParseError):
            raise
        # non-finite intermediate values from constant folding
        raise ParseError(ParseDiagnostic(parser.peek()[2], str(exc), NUMERIC_OVERFLOW)) from exc
    except RecursionError as exc:
        raise ParseError(ParseDiagnostic(parser.peek()[2], "expression nested too deeply", SYNTAX)) from exc


def parse_poly(text: str) -> Poly2:
    """Parse an expression that must reduce to a polynomial."""
    value = parse_expr(text)
    poly = value.as_poly()
    if poly is None:
        raise ParseError(ParseDiagnostic(0, "expected a polynomial", NON_POLYNOMIAL_EXPONENT))
    return poly


def parse_complex(text: str) -> complex:
    """Parse a constant such as ``3``, ``-2.5i``, ``1+2i`` or ``(1-2i)``."""
    value = parse_expr(str(text))
    c = value.as_constant()
    if c is None:
        raise ParseError(ParseDiagnostic(0, "expected a constant", SYNTAX))
    return complex(c)


def _real(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_complex(c: complex) -> str:
    """``a+bi`` text for a scalar; integers print without a decimal point."""
    c = complex(c)
    if c.imag == 0:
        return _real(c.real)
    im = _real(abs(c.imag)) + "i"
    if c.real == 0:
        return ("-" if c.imag < 0 else "") + im
    return f"{_real(c.real)}{'-' if c.imag < 0 else '+'}{im}"


def _coefficient(c: complex) -> str:
    s = format_complex(c)
    if c.real != 0 and c.imag != 0:
        return f"({s})"
    return s


def _monomial(c: complex, i: int, j: int) -> str:
    factors = []
    if i:
        factors.append("z1" if i == 1 else f"z1^{i}")
    if j:
        factors.append("z2" if j == 1 else f"z2^{j}")
    if not factors:
        return _coefficient(c)
    if c == 1:
        return "*".join(factors)
    if c == -1:
        return "-" + "*".join(factors)
    return "*".join([_coefficient(c)] + factors)


def _join(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def format_poly(p: Poly2) -> str:
    if p.is_zero():
        return "0"
    return _join([_monomial(c, i, j) for (i, j), c in p.items()])


def format_expr(f: ExpPoly) -> str:
    """Deterministic text that :func:`parse_expr` maps back to ``f``."""
    if f.is_zero():
        return "0"
    parts = []
    for t in f.terms:
        if t.exponent.is_zero():
            parts.append(format_poly(t.coeff))
            continue
        e = f"exp({format_poly(t.exponent)})"
        if len(t.coeff) == 1:
            ((i, j), c), = t.coeff.items()
            if (i, j) == (0, 0) and c in (1, -1):
                parts.append(e if c == 1 else "-" + e)
            else:
                parts.append(f"{_monomial(c, i, j)}*{e}")
        else:
            parts.append(f"({format_poly(t.coeff)})*{e}")
    return _join(parts)
