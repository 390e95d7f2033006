# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tape evaluator: per-point stack machine over second-order jets.

Mirrors ``_jetkernel_py.eval_tape`` opcode for opcode.
"""

import numpy as np
from libc.stdlib cimport malloc, free
from libc.math cimport NAN

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex csqrt(double complex)

# opcodes; keep in sync with jet.py and _jetkernel_py.py
cdef enum:
    OP_VAR = 0
    OP_CONST = 1
    OP_NEG = 2
    OP_ADD = 3
    OP_SUB = 4
    OP_MUL = 5
    OP_DIV = 6
    OP_POWI = 7
    OP_EXP = 8
    OP_SQRT = 9

cdef enum:
    STATUS_OK = 0
    STATUS_POLE = 1
    STATUS_BRANCH = 2


cdef inline double complex _powi(double complex x, long n) noexcept nogil:
    cdef double complex result = 1.0
    while n > 0:
        if n & 1:
            result = result * x
        x = x * x
        n >>= 1
    return result


cdef inline int _reciprocal(double complex* v, double complex* d1, double complex* d2) noexcept nogil:
    cdef double complex r, r1, r2
    if v[0] == 0:
        return STATUS_POLE
    r = 1.0 / v[0]
    r1 = -d1[0] * r * r
    r2 = (2 * d1[0] * d1[0] - v[0] * d2[0]) * r * r * r
    v[0] = r
    d1[0] = r1
    d2[0] = r2
    return STATUS_OK


cdef inline void _mul(double complex* av, double complex* a1, double complex* a2,
                      double complex bv, double complex b1, double complex b2) noexcept nogil:
    cdef double complex v = av[0] * bv
    cdef double complex d1 = a1[0] * bv + av[0] * b1
    cdef double complex d2 = a2[0] * bv + 2 * a1[0] * b1 + av[0] * b2
    av[0] = v
    a1[0] = d1
    a2[0] = d2


cdef int _run(const int* ops, const long long* args, const double complex* consts,
              Py_ssize_t n_ops, double complex z, double complex* sv, double complex* s1,
              double complex* s2, double complex* out) noexcept nogil:
    cdef Py_ssize_t pc
    cdef int sp = 0, op, st
    cdef long n
    cdef double complex v, d1, d2, e, w, w1, pm1, pm2
    for pc in range(n_ops):
        op = ops[pc]
        if op == OP_VAR:
            sv[sp] = z
            s1[sp] = 1.0
            s2[sp] = 0.0
            sp += 1
        elif op == OP_CONST:
            sv[sp] = consts[args[pc]]
            s1[sp] = 0.0
            s2[sp] = 0.0
            sp += 1
        elif op == OP_NEG:
            sv[sp - 1] = -sv[sp - 1]
            s1[sp - 1] = -s1[sp - 1]
            s2[sp - 1] = -s2[sp - 1]
        elif op == OP_EXP:
            e = cexp(sv[sp - 1])
            d1 = s1[sp - 1]
            d2 = s2[sp - 1]
            sv[sp - 1] = e
            s1[sp - 1] = e * d1
            s2[sp - 1] = e * (d2 + d1 * d1)
        elif op == OP_SQRT:
            v = sv[sp - 1]
            if v == 0:
                return STATUS_BRANCH
            w = csqrt(v + 0j)
            w1 = s1[sp - 1] / (2 * w)
            sv[sp - 1] = w
            s2[sp - 1] = (s2[sp - 1] - 2 * w1 * w1) / (2 * w)
            s1[sp - 1] = w1
        elif op == OP_POWI:
            n = args[pc]
            if n == 0:
                sv[sp - 1] = 1.0
                s1[sp - 1] = 0.0
                s2[sp - 1] = 0.0
            elif n != 1:
                if n < 0:
                    st = _reciprocal(&sv[sp - 1], &s1[sp - 1], &s2[sp - 1])
                    if st != STATUS_OK:
                        return st
                    n = -n
                if n != 1:
                    v = sv[sp - 1]
                    d1 = s1[sp - 1]
                    d2 = s2[sp - 1]
                    pm2 = _powi(v, n - 2)
                    pm1 = pm2 * v
                    sv[sp - 1] = pm1 * v
                    s1[sp - 1] = n * pm1 * d1
                    s2[sp - 1] = n * (n - 1) * pm2 * d1 * d1 + n * pm1 * d2
        else:
            sp -= 1
            if op == OP_ADD:
                sv[sp - 1] = sv[sp - 1] + sv[sp]
                s1[sp - 1] = s1[sp - 1] + s1[sp]
                s2[sp - 1] = s2[sp - 1] + s2[sp]
            elif op == OP_SUB:
                sv[sp - 1] = sv[sp - 1] - sv[sp]
                s1[sp - 1] = s1[sp - 1] - s1[sp]
                s2[sp - 1] = s2[sp - 1] - s2[sp]
            elif op == OP_MUL:
                _mul(&sv[sp - 1], &s1[sp - 1], &s2[sp - 1], sv[sp], s1[sp], s2[sp])
            elif op == OP_DIV:
                st = _reciprocal(&sv[sp], &s1[sp], &s2[sp])
                if st != STATUS_OK:
                    return st
                _mul(&sv[sp - 1], &s1[sp - 1], &s2[sp - 1], sv[sp], s1[sp], s2[sp])
    out[0] = sv[0]
    out[1] = s1[0]
    out[2] = s2[0]
    return STATUS_OK


def eval_tape(ops, args, consts, int depth, zs):
    """Return ``(v, d1, d2, status)`` arrays for every point in ``zs``."""
    cdef const int[::1] ops_v = np.ascontiguousarray(ops, dtype=np.int32)
    cdef const long long[::1] args_v = np.ascontiguousarray(args, dtype=np.int64)
    cdef const double complex[::1] consts_v = np.ascontiguousarray(
        consts if len(consts) else np.zeros(1), dtype=np.complex128)
    cdef const double complex[::1] z_v = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef Py_ssize_t i, n = z_v.shape[0], n_ops = ops_v.shape[0]
    v_arr = np.empty(n, dtype=np.complex128)
    d1_arr = np.empty(n, dtype=np.complex128)
    d2_arr = np.empty(n, dtype=np.complex128)
    status_arr = np.zeros(n, dtype=np.uint8)
    cdef double complex[::1] v_out = v_arr
    cdef double complex[::1] d1_out = d1_arr
    cdef double complex[::1] d2_out = d2_arr
    cdef unsigned char[::1] st_out = status_arr
    cdef double complex out[3]
    cdef double complex nan_c = NAN + 0j
    cdef int st
    cdef int size = depth if depth > 0 else 1
    cdef const int* ops_p = &ops_v[0]
    cdef const long long* args_p = &args_v[0]
    cdef const double complex* consts_p = &consts_v[0]
    cdef double complex* sv = <double complex*> malloc(3 * size * sizeof(double complex))
    if sv == NULL:
        raise MemoryError()
    cdef double complex* s1 = sv + size
    cdef double complex* s2 = sv + 2 * size
    try:
        with nogil:
            for i in range(n):
                st = _run(ops_p, args_p, consts_p, n_ops, z_v[i], sv, s1, s2, out)
                st_out[i] = st
                if st == STATUS_OK:
                    v_out[i] = out[0]
                    d1_out[i] = out[1]
                    d2_out[i] = out[2]
                else:
                    v_out[i] = nan_c
                    d1_out[i] = nan_c
                    d2_out[i] = nan_c
    finally:
        free(sv)
    return v_arr, d1_arr, d2_arr, status_arr
