"""Expression trees: parsing, printing, exact conversion and symbolic differentiation.

Grammar (``^`` is non-associative and binds tighter than unary minus)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" exponent)?
    exponent := signed-integer | "(" signed-integer ")"
    atom   := "z" | "m" | "i" | integer | "exp" "(" expr ")" | "(" expr ")"

``exp`` and the family parameter ``m`` are only accepted in numeric mode.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DiffMonoError, ModeError, ParseError, UndefinedPowerError
from .exact import GaussianRational, I, Polynomial, format_gaussian
from .ratfunc import RationalFunction, rf_pow

EXACT = "exact"
NUMERIC = "numeric"


class Expr:
    """Base class of all tree nodes. Nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_expr(self)


@dataclass(frozen=True)
class Const(Expr):
    value: GaussianRational


@dataclass(frozen=True)
class Num(Expr):
    """Floating constant, only produced by numeric transforms (never parsed)."""

    value: complex


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Param(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


ZERO = Const(GaussianRational(0))
ONE = Const(GaussianRational(1))
Z = Var()
M = Param()


# --------------------------------------------------------------------- lexer

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].isspace():
            break
        mt = _TOKEN.match(text, pos)
        if mt.group(1) is not None:
            start = mt.start(1)
            end = mt.end(1)
            if end < n and text[end] == ".":
                raise ParseError("decimal literals are not allowed", end)
            tokens.append(Token("int", mt.group(1), start))
        elif mt.group(2) is not None:
            tokens.append(Token("name", mt.group(2), mt.start(2)))
        else:
            ch = mt.group(3)
            start = mt.start(3)
            if ch == ".":
                raise ParseError("decimal literals are not allowed", start)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(Token("op", ch, start))
        pos = mt.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# -------------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text: str, mode: str):
        if mode not in (EXACT, NUMERIC):
            raise ValueError(f"unknown parse mode {mode!r}")
        self.text = text
        self.mode = mode
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            raise ParseError(f"expected {text!r}, found {self._found()}", self.tok.pos)
        return self.advance()

    def _found(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self._found()}", self.tok.pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            r = self.term()
            e = Add(e, r) if op == "+" else Sub(e, r)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance()
            r = self.unary()
            if op.text == "/":
                if isinstance(r, Const) and not r.value:
                    raise ParseError("zero denominator", op.pos)
                e = Div(e, r)
            else:
                e = Mul(e, r)
        return e

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if not (self.tok.kind == "op" and self.tok.text == "^"):
            return base
        self.advance()
        k = self.exponent()
        if self.tok.kind == "op" and self.tok.text == "^":
            raise ParseError("'^' is non-associative; add parentheses", self.tok.pos)
        if k < 0:
            return Div(ONE, Pow(base, -k))
        return Pow(base, k)

    def exponent(self) -> int:
        paren = self.tok.kind == "op" and self.tok.text == "("
        if paren:
            self.advance()
        sign = 1
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1 if self.advance().text == "-" else 1
        if self.tok.kind != "int":
            raise ParseError(f"expected an integer exponent, found {self._found()}", self.tok.pos)
        k = sign * int(self.advance().text)
        if paren:
            self.expect(")")
        return k

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Const(GaussianRational(int(t.text)))
        if t.kind == "name":
            self.advance()
            if t.text == "z":
                return Z
            if t.text == "i":
                return Const(I)
            if t.text == "m":
                if self.mode == EXACT:
                    raise ModeError("family parameter 'm' is not allowed in exact mode", t.pos)
                return M
            if t.text == "exp":
                if self.mode == EXACT:
                    raise ModeError("'exp' is not allowed in exact mode", t.pos)
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Exp(arg)
            raise ParseError(f"unknown name {t.text!r}", t.pos)
        if t.kind == "op" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {self._found()}", t.pos)


def parse(text: str, mode: str = EXACT) -> Expr:
    """Parse ``text``; every failure is a :class:`ParseError` carrying an offset."""
    try:
        return _Parser(text, mode).parse()
    except RecursionError:
        raise ParseError("expression nested too deeply", 0) from None


# ------------------------------------------------------------------- printer

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _frac_text(x: float) -> str:
    q = Fraction(x)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _const_text(c: GaussianRational) -> tuple[str, int]:
    s = format_gaussian(c)
    if s.startswith("(") or s == "i" or s.isdigit():
        return s, _PREC_ATOM
    if "/" in s or "*" in s:
        return s, _PREC_MUL  # "3/4", "-3*i": a term, so "z/-3/4" would misparse
    return s, _PREC_NEG  # "-2", "-i"


def _num_text(v: complex) -> tuple[str, int]:
    re_, im_ = _frac_text(v.real), _frac_text(v.imag)
    if v.imag == 0:
        return f"({re_})", _PREC_ATOM
    return f"({re_}+({im_})*i)", _PREC_ATOM


def _show(e: Expr) -> tuple[str, int]:
    if isinstance(e, Const):
        return _const_text(e.value)
    if isinstance(e, Num):
        return _num_text(complex(e.value))
    if isinstance(e, Var):
        return "z", _PREC_ATOM
    if isinstance(e, Param):
        return "m", _PREC_ATOM
    if isinstance(e, Exp):
        return f"exp({_show(e.arg)[0]})", _PREC_ATOM
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, _PREC_NEG), _PREC_NEG
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _PREC_ATOM)}^{e.exponent}", _PREC_POW
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        return _wrap(e.left, _PREC_ADD) + op + _wrap(e.right, _PREC_MUL), _PREC_ADD
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        return _wrap(e.left, _PREC_MUL) + op + _wrap(e.right, _PREC_NEG), _PREC_MUL
    raise TypeError(f"not an expression node: {e!r}")


def _wrap(e: Expr, need: int) -> str:
    s, prec = _show(e)
    return s if prec >= need else f"({s})"


def print_expr(e: Expr) -> str:
    return _show(e)[0]


# ----------------------------------------------------------- tree utilities


def has_param(e: Expr) -> bool:
    return any(isinstance(n, Param) for n in walk(e))


def has_exp(e: Expr) -> bool:
    return any(isinstance(n, Exp) for n in walk(e))


def walk(e: Expr):
    yield e
    for child in _children(e):
        yield from walk(child)


def _children(e: Expr) -> tuple:
    if isinstance(e, (Add, Sub, Mul, Div)):
        return (e.left, e.right)
    if isinstance(e, (Neg, Exp)):
        return (e.arg,)
    if isinstance(e, Pow):
        return (e.base,)
    return ()


def substitute(e: Expr, var: Expr | None = None, param: Expr | None = None) -> Expr:
    """Replace ``z`` by ``var`` and/or ``m`` by ``param``."""
    if isinstance(e, Var):
        return var if var is not None else e
    if isinstance(e, Param):
        return param if param is not None else e
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(substitute(e.left, var, param), substitute(e.right, var, param))
    if isinstance(e, (Neg, Exp)):
        return type(e)(substitute(e.arg, var, param))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, var, param), e.exponent)
    return e


def bind_param(e: Expr, m) -> Expr:
    return substitute(e, param=Const(GaussianRational.coerce(m)))


# ------------------------------------------------------ exact interpretation


def to_rational_function(e: Expr) -> RationalFunction:
    """Evaluate an exact-mode tree in the field of rational functions over Q(i)."""
    if isinstance(e, Const):
        return RationalFunction.constant(e.value)
    if isinstance(e, Var):
        return RationalFunction.from_polynomial(Polynomial([0, 1]))
    if isinstance(e, Add):
        return to_rational_function(e.left) + to_rational_function(e.right)
    if isinstance(e, Sub):
        return to_rational_function(e.left) - to_rational_function(e.right)
    if isinstance(e, Mul):
        return to_rational_function(e.left) * to_rational_function(e.right)
    if isinstance(e, Div):
        return to_rational_function(e.left) / to_rational_function(e.right)
    if isinstance(e, Neg):
        return -to_rational_function(e.arg)
    if isinstance(e, Pow):
        base = to_rational_function(e.base)
        if e.exponent < 0:
            return RationalFunction.constant(1) / rf_pow(base, -e.exponent)
        return rf_pow(base, e.exponent)
    if isinstance(e, (Param, Exp, Num)):
        raise ModeError(f"{type(e).__name__.lower()} node has no exact rational value", 0)
    raise TypeError(f"not an expression node: {e!r}")


def parse_rational(text: str) -> RationalFunction:
    return to_rational_function(parse(text, EXACT))


def parse_constant(text: str) -> GaussianRational:
    f = parse_rational(text)
    if not f.is_constant():
        raise ParseError(f"{text!r} is not a constant", 0)
    return f.num[0]


def from_rational_function(f: RationalFunction) -> Expr:
    num = _poly_expr(f.num)
    if f.den.degree == 0:
        return num
    return Div(num, _poly_expr(f.den))


def _poly_expr(p: Polynomial) -> Expr:
    if p.is_zero():
        return ZERO
    out = None
    for j in range(p.degree, -1, -1):
        c = p[j]
        if not c:
            continue
        mono = ONE if j == 0 else (Z if j == 1 else Pow(Z, j))
        t = Const(c) if j == 0 else (mono if c == 1 else Mul(Const(c), mono))
        out = t if out is None else Add(out, t)
    return out


# -------------------------------------------------------------- derivatives


def _is_const(e: Expr, value) -> bool:
    return isinstance(e, Const) and e.value == value


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return Neg(b)
    return Sub(a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return Mul(a, b)


def _pow(b: Expr, k: int) -> Expr:
    if k == 0:
        return ONE
    if k == 1:
        return b
    return Pow(b, k)


def derivative(e: Expr, order: int = 1) -> Expr:
    """Symbolic d/dz, ``order`` times."""
    for _ in range(order):
        e = _d(e)
    return e


def _d(e: Expr) -> Expr:
    if isinstance(e, (Const, Num, Param)):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Add):
        return _add(_d(e.left), _d(e.right))
    if isinstance(e, Sub):
        return _sub(_d(e.left), _d(e.right))
    if isinstance(e, Neg):
        d = _d(e.arg)
        return ZERO if _is_const(d, 0) else Neg(d)
    if isinstance(e, Mul):
        return _add(_mul(_d(e.left), e.right), _mul(e.left, _d(e.right)))
    if isinstance(e, Div):
        dl, dr = _d(e.left), _d(e.right)
        if _is_const(dr, 0):
            return ZERO if _is_const(dl, 0) else Div(dl, e.right)
        return Div(_sub(_mul(dl, e.right), _mul(e.left, dr)), Pow(e.right, 2))
    if isinstance(e, Pow):
        if e.exponent == 0:
            return ZERO
        db = _d(e.base)
        return _mul(_mul(Const(GaussianRational(e.exponent)), _pow(e.base, e.exponent - 1)), db)
    if isinstance(e, Exp):
        return _mul(e, _d(e.arg))
    raise TypeError(f"not an expression node: {e!r}")


# ------------------------------------------------------- numeric evaluation

POLE_RATIO = 1e-9


class PoleProximity(DiffMonoError):
    """Raised by scalar evaluation at a detected pole."""


def evaluate(e: Expr, z, m=None):
    """Evaluate at complex ``z`` (scalar or ndarray).

    Returns ``(value, excluded)``; ``excluded`` flags points where a division
    had ``|den| < 1e-9 * max(|num|, 1)``.  Excluded entries of ``value`` are NaN.
    """
    z = np.asarray(z, dtype=complex)
    excluded = np.zeros(z.shape, dtype=bool)
    with np.errstate(all="ignore"):
        value = _ev(e, z, m, excluded)
        value = np.broadcast_to(np.asarray(value, dtype=complex), z.shape).copy()
    value[excluded] = np.nan
    return value, excluded


def evaluate_scalar(e: Expr, z: complex, m=None) -> complex:
    value, excluded = evaluate(e, complex(z), m)
    if excluded.any():
        raise PoleProximity(f"pole detected near z={z}")
    return complex(value)


def _ev(e: Expr, z, m, excluded):
    if isinstance(e, Const):
        return complex(e.value)
    if isinstance(e, Num):
        return complex(e.value)
    if isinstance(e, Var):
        return z
    if isinstance(e, Param):
        if m is None:
            raise DiffMonoError("family parameter m is unbound")
        return complex(m)
    if isinstance(e, Add):
        return _ev(e.left, z, m, excluded) + _ev(e.right, z, m, excluded)
    if isinstance(e, Sub):
        return _ev(e.left, z, m, excluded) - _ev(e.right, z, m, excluded)
    if isinstance(e, Mul):
        return _ev(e.left, z, m, excluded) * _ev(e.right, z, m, excluded)
    if isinstance(e, Div):
        num = _ev(e.left, z, m, excluded)
        den = _ev(e.right, z, m, excluded)
        near = np.abs(den) < POLE_RATIO * np.maximum(np.abs(num), 1.0)
        excluded |= np.broadcast_to(near, excluded.shape)
        return num / np.where(near, 1.0, den)
    if isinstance(e, Neg):
        return -_ev(e.arg, z, m, excluded)
    if isinstance(e, Pow):
        if e.exponent == 0:
            base = _ev(e.base, z, m, excluded)
            if np.any(base == 0):
                raise UndefinedPowerError("0^0 is undefined")
            return np.ones_like(base)
        return _ev(e.base, z, m, excluded) ** e.exponent
    if isinstance(e, Exp):
        return np.exp(_ev(e.arg, z, m, excluded))
    raise TypeError(f"not an expression node: {e!r}")
