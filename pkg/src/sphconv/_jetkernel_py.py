"""Pure numpy fallback for the compiled tape evaluator (``_jetkernel.pyx``).

Each opcode is applied to whole arrays at once.  A point whose evaluation
fails gets a status code and is carried along as NaN; the first failure at a
point wins.
"""

import numpy as np

# opcodes; keep in sync with jet.py and _jetkernel.pyx
OP_VAR, OP_CONST, OP_NEG, OP_ADD, OP_SUB, OP_MUL, OP_DIV, OP_POWI, OP_EXP, OP_SQRT = range(10)
STATUS_OK, STATUS_POLE, STATUS_BRANCH = 0, 1, 2


def _mul(a, b):
    av, a1, a2 = a
    bv, b1, b2 = b
    return (av * bv, a1 * bv + av * b1, a2 * bv + 2 * a1 * b1 + av * b2)


def _reciprocal(a, status):
    v, d1, d2 = a
    bad = v == 0
    if bad.any():
        status[bad & (status == STATUS_OK)] = STATUS_POLE
        v = np.where(bad, np.nan, v)
    r = 1 / v
    return (r, -d1 * r * r, (2 * d1 * d1 - v * d2) * r * r * r)


def _powi(x, n):
    result = np.ones_like(x)
    while n > 0:
        if n & 1:
            result = result * x
        x = x * x
        n >>= 1
    return result


def _powi_jet(a, n, status):
    if n == 0:
        one = np.ones_like(a[0])
        return (one, np.zeros_like(one), np.zeros_like(one))
    if n == 1:
        return a
    if n < 0:
        return _powi_jet(_reciprocal(a, status), -n, status)
    v, d1, d2 = a
    pm2 = _powi(v, n - 2)
    pm1 = pm2 * v
    return (pm1 * v, n * pm1 * d1, n * (n - 1) * pm2 * d1 * d1 + n * pm1 * d2)


def eval_tape(ops, args, consts, depth, zs):
    """Return ``(v, d1, d2, status)`` arrays for every point in ``zs``."""
    zs = np.asarray(zs, dtype=np.complex128)
    n = zs.shape[0]
    status = np.zeros(n, dtype=np.uint8)
    zero = np.zeros(n, dtype=np.complex128)
    stack = []
    with np.errstate(all="ignore"):
        for op, arg in zip(ops.tolist(), args.tolist()):
            if op == OP_VAR:
                stack.append((zs, np.ones(n, dtype=np.complex128), zero))
            elif op == OP_CONST:
                stack.append((np.full(n, consts[arg], dtype=np.complex128), zero, zero))
            elif op == OP_NEG:
                v, d1, d2 = stack.pop()
                stack.append((-v, -d1, -d2))
            elif op == OP_EXP:
                v, d1, d2 = stack.pop()
                e = np.exp(v)
                stack.append((e, e * d1, e * (d2 + d1 * d1)))
            elif op == OP_SQRT:
                v, d1, d2 = stack.pop()
                bad = v == 0
                if bad.any():
                    status[bad & (status == STATUS_OK)] = STATUS_BRANCH
                    v = np.where(bad, np.nan, v)
                w = np.sqrt(v + 0j)  # +0j folds -0.0 imag onto the upper side of the cut
                w1 = d1 / (2 * w)
                stack.append((w, w1, (d2 - 2 * w1 * w1) / (2 * w)))
            elif op == OP_POWI:
                stack.append(_powi_jet(stack.pop(), arg, status))
            else:
                b = stack.pop()
                a = stack.pop()
                if op == OP_ADD:
                    stack.append(tuple(x + y for x, y in zip(a, b)))
                elif op == OP_SUB:
                    stack.append(tuple(x - y for x, y in zip(a, b)))
                elif op == OP_MUL:
                    stack.append(_mul(a, b))
                elif op == OP_DIV:
                    stack.append(_mul(a, _reciprocal(b, status)))
                else:
                    raise ValueError(f"bad opcode {op}")
    v, d1, d2 = stack.pop()
    failed = status != STATUS_OK
    if failed.any():
        v, d1, d2 = (np.where(failed, np.nan, x) for x in (v, d1, d2))
    return v, d1, d2, status
