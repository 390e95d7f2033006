"""Second-order forward-mode differentiation of expression trees.

Two evaluation paths exist:

* `eval_jet` walks the tree for a single point with `Jet2` arithmetic.
* `eval_jets` compiles the tree once to a postfix `Tape` and runs it over an
  array of points, either in the compiled ``_jetkernel`` extension or in the
  numpy fallback (``_jetkernel_py``).  The backend is chosen at import time;
  set ``SPHCONV_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import cmath
import functools
import os
from dataclasses import dataclass

import numpy as np

from . import _jetkernel_py
from .errors import BranchError, EvaluationError, PoleError
from .expr import Add, Const, Div, Exp, Mul, Neg, Node, PowInt, Sqrt, Sub, Var

try:
    from . import _jetkernel as _compiled
except ImportError:  # extension not built
    _compiled = None

__all__ = [
    "Jet2", "eval_jet", "Tape", "compile_tape", "eval_jets", "JetArrays",
    "STATUS_OK", "STATUS_POLE", "STATUS_BRANCH", "available_backends", "BACKEND",
]

STATUS_OK = 0
STATUS_POLE = 1
STATUS_BRANCH = 2


def _select_backend() -> str:
    wanted = os.environ.get("SPHCONV_BACKEND", "auto").strip().lower()
    if wanted == "python":
        return "python"
    if wanted == "compiled" and _compiled is None:
        raise ImportError("SPHCONV_BACKEND=compiled but sphconv._jetkernel is not built")
    return "compiled" if _compiled is not None else "python"


BACKEND = _select_backend()


def available_backends() -> list:
    return ["compiled", "python"] if _compiled is not None else ["python"]


@dataclass(frozen=True)
class Jet2:
    """Value, first and second derivative of a function at one point."""

    v: complex
    d1: complex = 0j
    d2: complex = 0j

    def __add__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other: "Jet2") -> "Jet2":
        return Jet2(self.v - other.v, self.d1 - other.d1, self.d2 - other.d2)

    def __neg__(self) -> "Jet2":
        return Jet2(-self.v, -self.d1, -self.d2)

    def __mul__(self, other: "Jet2") -> "Jet2":
        u, w = self, other
        return Jet2(u.v * w.v,
                    u.d1 * w.v + u.v * w.d1,
                    u.d2 * w.v + 2 * u.d1 * w.d1 + u.v * w.d2)

    def reciprocal(self) -> "Jet2":
        if self.v == 0:
            raise ZeroDivisionError("reciprocal of a jet with zero value")
        r = 1 / self.v
        r1 = -self.d1 * r * r
        r2 = (2 * self.d1 * self.d1 - self.v * self.d2) * r * r * r
        return Jet2(r, r1, r2)

    def __truediv__(self, other: "Jet2") -> "Jet2":
        return self * other.reciprocal()

    def powi(self, n: int) -> "Jet2":
        if n == 0:
            return Jet2(1 + 0j)
        if n == 1:
            return self
        if n < 0:
            return self.reciprocal().powi(-n)
        pm2 = _powi(self.v, n - 2)
        pm1 = pm2 * self.v
        return Jet2(pm1 * self.v,
                    n * pm1 * self.d1,
                    n * (n - 1) * pm2 * self.d1 * self.d1 + n * pm1 * self.d2)

    def exp(self) -> "Jet2":
        e = cmath.exp(self.v)
        return Jet2(e, e * self.d1, e * (self.d2 + self.d1 * self.d1))

    def sqrt(self) -> "Jet2":
        if self.v == 0:
            raise ZeroDivisionError("sqrt is not differentiable at 0")
        w = cmath.sqrt(self.v + 0j)  # principal branch; ignores the sign of a zero imag
        w1 = self.d1 / (2 * w)
        return Jet2(w, w1, (self.d2 - 2 * w1 * w1) / (2 * w))


def _powi(x: complex, n: int) -> complex:
    """x**n for n >= 0 by binary exponentiation (same order as the kernels)."""
    result = 1 + 0j
    while n > 0:
        if n & 1:
            result = result * x
        x = x * x
        n >>= 1
    return result


def eval_jet(ast: Node, z: complex) -> Jet2:
    """Return f(z), f'(z), f''(z) for the tree ``ast``.

    Raises PoleError when a denominator (or a negative power's base) is zero
    and BranchError when a square root's argument is zero.
    """
    z = complex(z)

    def walk(node):
        if isinstance(node, Var):
            return Jet2(z, 1 + 0j, 0j)
        if isinstance(node, Const):
            return Jet2(node.value)
        if isinstance(node, Neg):
            return -walk(node.arg)
        if isinstance(node, Add):
            return walk(node.left) + walk(node.right)
        if isinstance(node, Sub):
            return walk(node.left) - walk(node.right)
        if isinstance(node, Mul):
            return walk(node.left) * walk(node.right)
        if isinstance(node, Div):
            num, den = walk(node.left), walk(node.right)
            if den.v == 0:
                raise PoleError(f"pole at z={z}", z=z)
            return num / den
        if isinstance(node, PowInt):
            base = walk(node.base)
            if node.exponent < 0 and base.v == 0:
                raise PoleError(f"pole at z={z}", z=z)
            return base.powi(node.exponent)
        if isinstance(node, Exp):
            return walk(node.arg).exp()
        if isinstance(node, Sqrt):
            arg = walk(node.arg)
            if arg.v == 0:
                raise BranchError(f"sqrt branch point at z={z}", z=z)
            return arg.sqrt()
        raise TypeError(f"not an expression node: {node!r}")

    try:
        return walk(ast)
    except OverflowError as exc:
        raise EvaluationError(f"overflow at z={z}: {exc}", z=z) from None


# -- tapes -------------------------------------------------------------------

OP_VAR, OP_CONST, OP_NEG, OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_POWI, OP_EXP, OP_SQRT = range(10)


@dataclass(frozen=True, eq=False)
class Tape:
    """Postfix program for a stack machine over jets."""

    ops: np.ndarray     # int32 opcodes
    args: np.ndarray    # int64: constant index for OP_CONST, exponent for OP_POWI
    consts: np.ndarray  # complex128
    depth: int          # maximum stack depth


@functools.lru_cache(maxsize=256)
def compile_tape(ast: Node) -> Tape:
    ops, args, consts = [], [], []
    depth = 0
    max_depth = 0

    def emit(op, arg=0, delta=0):
        nonlocal depth, max_depth
        ops.append(op)
        args.append(arg)
        depth += delta
        max_depth = max(max_depth, depth)

    def walk(node):
        if isinstance(node, Var):
            emit(OP_VAR, delta=1)
        elif isinstance(node, Const):
            consts.append(node.value)
            emit(OP_CONST, len(consts) - 1, delta=1)
        elif isinstance(node, (Neg, Exp, Sqrt)):
            walk(node.arg)
            emit({Neg: OP_NEG, Exp: OP_EXP, Sqrt: OP_SQRT}[type(node)])
        elif isinstance(node, PowInt):
            walk(node.base)
            emit(OP_POWI, node.exponent)
        elif isinstance(node, (Add, Sub, Mul, Div)):
            walk(node.left)
            walk(node.right)
            emit({Add: OP_ADD, Sub: OP_SUB, Mul: OP_MUL, Div: OP_DIV}[type(node)], delta=-1)
        else:
            raise TypeError(f"not an expression node: {node!r}")

    walk(ast)
    return Tape(np.asarray(ops, dtype=np.int32), np.asarray(args, dtype=np.int64),
                np.asarray(consts, dtype=np.complex128), max_depth)


@dataclass
class JetArrays:
    v: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    status: np.ndarray  # uint8, STATUS_*

    @property
    def ok(self) -> np.ndarray:
        return self.status == STATUS_OK


def eval_jets(ast: Node, zs, backend: str = None) -> JetArrays:
    """Evaluate jets of ``ast`` at every point of ``zs`` (any shape).

    Failed points carry a nonzero status and NaN jets; nothing is raised.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    shape = zs.shape
    flat = np.ascontiguousarray(zs.ravel())
    tape = compile_tape(ast)
    backend = backend or BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise ImportError("compiled jet kernel is not available")
        v, d1, d2, status = _compiled.eval_tape(tape.ops, tape.args, tape.consts, tape.depth, flat)
    elif backend == "python":
        v, d1, d2, status = _jetkernel_py.eval_tape(tape.ops, tape.args, tape.consts, tape.depth, flat)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return JetArrays(np.asarray(v).reshape(shape), np.asarray(d1).reshape(shape),
                     np.asarray(d2).reshape(shape), np.asarray(status).reshape(shape))
