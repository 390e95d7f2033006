"""Expression trees for meromorphic maps of one complex variable ``z``.

Grammar (standard precedence, ``^`` binds tightest and is right-associative)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := ('-' | '+') unary | power
    power    := atom ('^' unary)?
    atom     := number | number 'i' | 'i' | 'z' | 'pi'
              | ('exp' | 'sqrt') '(' expr ')' | '(' expr ')'

Exponents must fold to an integer constant; use ``sqrt`` for half powers.
"""

from __future__ import annotations

import cmath
import enum
import math
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import DomainError, ExprSyntaxError, NonIntegerExponent, UnknownBuiltin

__all__ = [
    "Var", "Const", "Neg", "Add", "Sub", "Mul", "Div", "PowInt", "Exp", "Sqrt",
    "Node", "parse", "to_source", "const_value", "Claim", "MapDefinition",
    "builtin", "BUILTIN_NAMES", "parse_complex", "F1_SOURCE",
]


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError(f"non-finite constant {self.value!r}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class PowInt:
    base: "Node"
    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or int(self.exponent) != self.exponent:
            raise ValueError(f"PowInt exponent must be an integer, got {self.exponent!r}")
        object.__setattr__(self, "exponent", int(self.exponent))


@dataclass(frozen=True)
class Exp:
    arg: "Node"


@dataclass(frozen=True)
class Sqrt:
    arg: "Node"


Node = Union[Var, Const, Neg, Add, Sub, Mul, Div, PowInt, Exp, Sqrt]

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div}
_FUNCTIONS = {"exp": Exp, "sqrt": Sqrt}


# -- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass
class _Token:
    kind: str  # "num", "imag", "ident", "op", "end"
    text: str
    pos: int
    value: complex = 0j


def _tokenize(src: str) -> list:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        text = m.group()
        if kind == "num":
            # imaginary literal: digits immediately followed by a lone i/j
            nxt = _TOKEN_RE.match(src, m.end())
            if nxt is not None and nxt.lastgroup == "ident" and nxt.group() in ("i", "j"):
                if not math.isfinite(float(text)):
                    raise ExprSyntaxError(f"numeric literal {text!r} out of range", pos)
                tokens.append(_Token("imag", text + nxt.group(), pos, complex(0.0, float(text))))
                pos = nxt.end()
                continue
            if not math.isfinite(float(text)):
                raise ExprSyntaxError(f"numeric literal {text!r} out of range", pos)
            tokens.append(_Token("num", text, pos, complex(float(text))))
        elif kind != "ws":
            tokens.append(_Token(kind, text, pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(src)))
    return tokens


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Token:
        if self.tok.text != text or self.tok.kind != "op":
            found = repr(self.tok.text) if self.tok.kind != "end" else "end of input"
            raise ExprSyntaxError(f"expected {text!r}, found {found}", self.tok.pos)
        return self.advance()

    def parse(self) -> Node:
        if self.tok.kind == "end":
            raise ExprSyntaxError("empty expression", 0)
        node = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            node = _BINARY[op](node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            node = _BINARY[op](node, self.unary())
        return node

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        if self.tok.kind == "op" and self.tok.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self.advance()
            start = self.tok.pos
            exponent = self.unary()
            try:
                value = const_value(exponent)
            except (ArithmeticError, ValueError) as exc:
                raise ExprSyntaxError(f"cannot evaluate exponent: {exc}", start) from None
            if value is None:
                raise NonIntegerExponent(
                    "exponent must be an integer constant (use sqrt for half powers)", start)
            if (value.imag != 0 or not math.isfinite(value.real)
                    or value.real != math.floor(value.real)):
                raise NonIntegerExponent(
                    f"non-integer exponent {_format_complex(value)}; use sqrt for half powers",
                    start)
            if abs(value.real) > 1e6:
                raise ExprSyntaxError("exponent too large", caret.pos)
            return PowInt(base, int(value.real))
        return base

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Const(tok.value)
        if tok.kind == "imag":
            self.advance()
            return Const(tok.value)
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == "z":
                return Var()
            if name in ("i", "j"):
                return Const(1j)
            if name == "pi":
                return Const(math.pi)
            if name in _FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return _FUNCTIONS[name](arg)
            raise ExprSyntaxError(f"unknown identifier {name!r}", tok.pos)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = repr(tok.text) if tok.kind != "end" else "end of input"
        raise ExprSyntaxError(f"expected an operand, found {found}", tok.pos)


def parse(src: str) -> Node:
    """Parse an expression in ``z``; raises ExprSyntaxError on bad input."""
    try:
        return _Parser(src).parse()
    except RecursionError:
        raise ExprSyntaxError("expression nested too deeply") from None


def const_value(node: Node) -> Optional[complex]:
    """Value of a z-free tree, or None if the tree depends on z."""
    if isinstance(node, Var):
        return None
    if isinstance(node, Const):
        return node.value
    if isinstance(node, (Neg, Exp, Sqrt)):
        a = const_value(node.arg)
        if a is None:
            return None
        if isinstance(node, Neg):
            return -a
        return cmath.exp(a) if isinstance(node, Exp) else cmath.sqrt(a + 0j)
    if isinstance(node, PowInt):
        b = const_value(node.base)
        if b is None:
            return None
        if b == 0 and node.exponent < 0:
            raise ExprSyntaxError("zero raised to a negative power")
        return b ** node.exponent
    a, b = const_value(node.left), const_value(node.right)
    if a is None or b is None:
        return None
    if isinstance(node, Add):
        return a + b
    if isinstance(node, Sub):
        return a - b
    if isinstance(node, Mul):
        return a * b
    if b == 0:
        raise ExprSyntaxError("division by zero in constant expression")
    return a / b


def parse_complex(text: str) -> complex:
    """Parse a constant such as ``0.3``, ``-2i`` or ``0.3+0.2i``."""
    try:
        value = const_value(parse(text))
    except (ArithmeticError, ValueError) as exc:
        if isinstance(exc, ExprSyntaxError):
            raise
        raise ExprSyntaxError(f"cannot evaluate constant {text!r}: {exc}", 0) from None
    if value is None:
        raise ExprSyntaxError(f"expected a constant, got {text!r}", 0)
    return value


# -- printer -----------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _format_real(x: float) -> str:
    return repr(float(x))


def _format_complex(c: complex) -> str:
    if c.imag == 0:
        return _format_real(c.real)
    if c.real == 0:
        return f"{_format_real(c.imag)}i"
    sign = "+" if c.imag >= 0 else "-"
    return f"{_format_real(c.real)}{sign}{_format_real(abs(c.imag))}i"


def _precedence(node: Node) -> int:
    if isinstance(node, (Add, Sub)):
        return _PREC_ADD
    if isinstance(node, (Mul, Div)):
        return _PREC_MUL
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, PowInt):
        return _PREC_POW
    if isinstance(node, Const):
        c = node.value
        plain_real = c.imag == 0 and math.copysign(1.0, c.real) > 0
        plain_imag = c.real == 0 and c.imag > 0 and math.copysign(1.0, c.real) > 0
        return _PREC_ATOM if (plain_real or plain_imag) else _PREC_ADD
    return _PREC_ATOM


def _wrap(node: Node, min_prec: int) -> str:
    s = to_source(node)
    return f"({s})" if _precedence(node) < min_prec else s


def to_source(node: Node) -> str:
    """Render a tree back to source text that `parse` accepts."""
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Const):
        return _format_complex(node.value)
    if isinstance(node, Neg):
        return "-" + _wrap(node.arg, _PREC_NEG)
    if isinstance(node, (Exp, Sqrt)):
        name = "exp" if isinstance(node, Exp) else "sqrt"
        return f"{name}({to_source(node.arg)})"
    if isinstance(node, PowInt):
        e = node.exponent
        exp_src = str(e) if e >= 0 else f"({e})"
        return f"{_wrap(node.base, _PREC_ATOM)}^{exp_src}"
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(node)]
    prec = _precedence(node)
    # left-associative: the right operand must bind strictly tighter
    return f"{_wrap(node.left, prec)}{op}{_wrap(node.right, prec + 1)}"


# -- map definitions ---------------------------------------------------------

class Claim(str, enum.Enum):
    """Properties a catalog entry asserts; they select applicable checks."""

    SPHERICALLY_CONVEX = "SphericallyConvex"
    CENTRALLY_NORMALIZED = "CentrallyNormalized"
    SPHERICAL_ISOMETRY = "SphericalIsometry"


@dataclass(frozen=True)
class MapDefinition:
    """A meromorphic map given by an expression.

    ``inverse_chart`` is an expression for ``1/f``; it is needed only when
    ``f`` has poles in the unit disk.
    """

    name: str
    ast: Node
    inverse_chart: Optional[Node] = None
    claimed_properties: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "claimed_properties",
                           frozenset(Claim(c) for c in self.claimed_properties))

    def claims(self, claim: Claim) -> bool:
        return claim in self.claimed_properties

    @property
    def is_convex(self) -> bool:
        return Claim.SPHERICALLY_CONVEX in self.claimed_properties

    @property
    def is_isometry(self) -> bool:
        return Claim.SPHERICAL_ISOMETRY in self.claimed_properties

    @property
    def is_centrally_normalized(self) -> bool:
        return Claim.CENTRALLY_NORMALIZED in self.claimed_properties

    @classmethod
    def from_source(cls, src: str, inverse_src: Optional[str] = None,
                    name: Optional[str] = None, claims=()) -> "MapDefinition":
        inverse = parse(inverse_src) if inverse_src is not None else None
        return cls(name or src, parse(src), inverse, frozenset(claims))


F1_SOURCE = "(sqrt(1+z)-sqrt(1-z))/(sqrt(1+z)+sqrt(1-z))"
F3_SOURCE = "z^2*exp(z)"

_CONVEX = Claim.SPHERICALLY_CONVEX
_NORMAL = Claim.CENTRALLY_NORMALIZED
_ISO = Claim.SPHERICAL_ISOMETRY


def _unit(theta: float) -> complex:
    if theta == 0:
        return 1 + 0j
    return cmath.exp(1j * theta)


def _scale(eta: complex) -> MapDefinition:
    if eta == 0:
        raise DomainError("scale(eta) needs eta != 0")
    claims = set()
    if abs(eta) <= 1:
        claims |= {_CONVEX, _NORMAL}
    if abs(abs(eta) - 1) <= 1e-15:
        claims.add(_ISO)
    ast = Var() if eta == 1 else Mul(Const(eta), Var())
    return MapDefinition(f"scale({_format_complex(eta)})", ast, None, frozenset(claims))


def _rot(a: complex, theta: float) -> MapDefinition:
    u = _unit(theta)
    num = Sub(Var(), Const(a))
    den = Add(Const(1), Mul(Var(), Const(a.conjugate())))
    ast = Mul(Const(u), Div(num, den))
    inverse = Mul(Const(u.conjugate()), Div(den, num))
    claims = {_CONVEX, _ISO}
    if a == 0:
        claims.add(_NORMAL)
    name = f"rot({_format_complex(a)},{_format_real(theta)})"
    return MapDefinition(name, ast, inverse, frozenset(claims))


def _invrot(theta: float) -> MapDefinition:
    u = _unit(theta)
    ast = Div(Const(u), Var())
    inverse = Var() if u == 1 else Mul(Const(u.conjugate()), Var())
    return MapDefinition(f"invrot({_format_real(theta)})", ast, inverse,
                         frozenset({_CONVEX, _ISO}))


def _real_arg(value: complex, what: str) -> float:
    if value.imag != 0:
        raise DomainError(f"{what} must be real, got {_format_complex(value)}")
    return value.real


_BUILTIN_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$", re.S)

BUILTIN_NAMES = ("identity", "scale(eta)", "rot(a,theta)", "invrot(theta)", "f1", "f2", "f3")


def builtin(name: str) -> MapDefinition:
    """Look up a catalog map: identity, scale(eta), rot(a,theta), invrot(theta), f1, f2, f3."""
    m = _BUILTIN_RE.match(name)
    if m is None:
        raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    key, argtext = m.group(1), m.group(2)
    args = [parse_complex(a) for a in argtext.split(",")] if argtext is not None else []

    def arity(n):
        if len(args) != n:
            raise UnknownBuiltin(f"builtin {key!r} takes {n} argument(s), got {len(args)}")

    if key == "identity":
        arity(0)
        return MapDefinition("identity", Var(), None, frozenset({_CONVEX, _NORMAL, _ISO}))
    if key == "scale":
        arity(1)
        return _scale(args[0])
    if key == "rot":
        arity(2)
        return _rot(args[0], _real_arg(args[1], "theta"))
    if key == "invrot":
        arity(1)
        return _invrot(_real_arg(args[0], "theta"))
    if key == "f1":
        arity(0)
        return MapDefinition("f1", parse(F1_SOURCE), None, frozenset({_CONVEX, _NORMAL}))
    if key == "f2":
        arity(0)
        return MapDefinition("f2", Exp(Var()), None, frozenset({_CONVEX}))
    if key == "f3":
        arity(0)
        return MapDefinition("f3", parse(F3_SOURCE), None, frozenset())
    raise UnknownBuiltin(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
