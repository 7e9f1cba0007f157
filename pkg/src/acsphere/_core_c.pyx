# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _core_py: dual scalars and wedge kernels.

Same semantics as the pure-Python module; the Dual here keeps leaf duals
(float parts) unboxed and recurses only for nested parts.
"""

from libc.math cimport sqrt as c_sqrt

import numpy as np

__all__ = [
    "Dual",
    "sqrt_s",
    "value_of",
    "is_dual",
    "wedge11",
    "wedge12",
    "matmul_forms_11",
]


cdef class Dual:
    """Scalar carrying a value and a directional-derivative part.

    Parts may themselves be Dual (one nesting level per perturbation);
    comparisons act on the underlying primal value.
    """

    cdef readonly int depth
    cdef double v, e
    cdef Dual dv, de

    def __init__(self, val, eps=0.0):
        cdef int dv_d = _depth(val)
        cdef int de_d = _depth(eps)
        cdef int d = dv_d if dv_d > de_d else de_d
        if d == 0:
            self.depth = 1
            self.v = <double> val
            self.e = <double> eps
            self.dv = None
            self.de = None
        else:
            self.depth = d + 1
            self.dv = _lift(val, d)
            self.de = _lift(eps, d)

    @property
    def val(self):
        return self.v if self.depth == 1 else self.dv

    @property
    def eps(self):
        return self.e if self.depth == 1 else self.de

    # -- arithmetic -----------------------------------------------------

    def __add__(x, y):
        return _binop(x, y, 0)

    def __radd__(x, y):
        return _binop(y, x, 0)

    def __sub__(x, y):
        return _binop(x, y, 1)

    def __rsub__(x, y):
        return _binop(y, x, 1)

    def __mul__(x, y):
        return _binop(x, y, 2)

    def __rmul__(x, y):
        return _binop(y, x, 2)

    def __truediv__(x, y):
        return _binop(x, y, 3)

    def __rtruediv__(x, y):
        return _binop(y, x, 3)

    def __neg__(self):
        return _neg(self)

    def __pos__(self):
        return self

    def __abs__(self):
        if _value(self) < 0.0:
            return _neg(self)
        return self

    def __pow__(x, n, z):
        cdef Dual a
        cdef long k
        if z is not None or type(x) is not Dual:
            return NotImplemented
        if not isinstance(n, int):
            raise TypeError("dual scalars support integer powers only; use sqrt_s")
        a = <Dual> x
        k = <long> n
        if k < 0:
            a = _div(_const(1.0, a.depth), a)
            k = -k
        cdef Dual out = _const(1.0, a.depth)
        while k:
            if k & 1:
                out = _mul(out, a)
            a = _mul(a, a)
            k >>= 1
        return out

    def sqrt(self):
        return _sqrt(self)

    # -- comparisons on the primal value ---------------------------------

    def __richcmp__(x, y, int op):
        cdef double a = _value_any(x)
        cdef double b = _value_any(y)
        if op == 0:
            return a < b
        if op == 1:
            return a <= b
        if op == 2:
            return a == b
        if op == 3:
            return a != b
        if op == 4:
            return a > b
        return a >= b

    def __repr__(self):
        if self.depth == 1:
            return "Dual(%r, %r)" % (self.v, self.e)
        return "Dual(%r, %r)" % (self.dv, self.de)


cdef inline int _depth(x):
    if type(x) is Dual:
        return (<Dual> x).depth
    return 0


cdef inline Dual _wrap_leaf(double v, double e):
    cdef Dual out = Dual.__new__(Dual)
    out.depth = 1
    out.v = v
    out.e = e
    return out


cdef inline Dual _wrap(Dual v, Dual e):
    cdef Dual out = Dual.__new__(Dual)
    out.depth = v.depth + 1
    out.dv = v
    out.de = e
    return out


cdef Dual _const(double c, int depth):
    cdef Dual out = _wrap_leaf(c, 0.0)
    cdef int d = 1
    while d < depth:
        out = _wrap(out, _const(0.0, d))
        d += 1
    return out


cdef Dual _lift(x, int depth):
    cdef Dual out
    cdef int d
    if type(x) is Dual:
        out = <Dual> x
        d = out.depth
        if d > depth:
            raise ValueError("cannot lower dual depth")
    else:
        return _const(<double> x, depth)
    while d < depth:
        out = _wrap(out, _const(0.0, d))
        d += 1
    return out


cdef _binop(x, y, int op):
    cdef Dual a, b
    if type(x) is Dual:
        a = <Dual> x
        if type(y) is Dual:
            b = <Dual> y
        else:
            try:
                b = _const(<double> float(y), a.depth)
            except (TypeError, ValueError):
                return NotImplemented
    else:
        b = <Dual> y
        try:
            a = _const(<double> float(x), b.depth)
        except (TypeError, ValueError):
            return NotImplemented
    if a.depth < b.depth:
        a = _lift(a, b.depth)
    elif b.depth < a.depth:
        b = _lift(b, a.depth)
    if op == 0:
        return _add(a, b)
    if op == 1:
        return _sub(a, b)
    if op == 2:
        return _mul(a, b)
    return _div(a, b)


cdef Dual _add(Dual a, Dual b):
    if a.depth == 1:
        return _wrap_leaf(a.v + b.v, a.e + b.e)
    return _wrap(_add(a.dv, b.dv), _add(a.de, b.de))


cdef Dual _sub(Dual a, Dual b):
    if a.depth == 1:
        return _wrap_leaf(a.v - b.v, a.e - b.e)
    return _wrap(_sub(a.dv, b.dv), _sub(a.de, b.de))


cdef Dual _mul(Dual a, Dual b):
    if a.depth == 1:
        return _wrap_leaf(a.v * b.v, a.v * b.e + a.e * b.v)
    return _wrap(_mul(a.dv, b.dv), _add(_mul(a.dv, b.de), _mul(a.de, b.dv)))


cdef Dual _div(Dual a, Dual b):
    if a.depth == 1:
        return _wrap_leaf(a.v / b.v, (a.e * b.v - a.v * b.e) / (b.v * b.v))
    return _wrap(
        _div(a.dv, b.dv),
        _div(_sub(_mul(a.de, b.dv), _mul(a.dv, b.de)), _mul(b.dv, b.dv)),
    )


cdef Dual _neg(Dual a):
    if a.depth == 1:
        return _wrap_leaf(-a.v, -a.e)
    return _wrap(_neg(a.dv), _neg(a.de))


cdef Dual _sqrt(Dual a):
    cdef double s
    cdef Dual sv
    if a.depth == 1:
        s = c_sqrt(a.v)
        return _wrap_leaf(s, a.e / (s + s))
    sv = _sqrt(a.dv)
    return _wrap(sv, _div(a.de, _add(sv, sv)))


cdef double _value(Dual a):
    while a.depth > 1:
        a = a.dv
    return a.v


cdef double _value_any(x) except *:
    if type(x) is Dual:
        return _value(<Dual> x)
    return <double> float(x)


def is_dual(x):
    return type(x) is Dual


def value_of(x):
    """Primal float value of a float or (nested) dual scalar."""
    if type(x) is Dual:
        return _value(<Dual> x)
    return float(x)


def sqrt_s(x):
    """Square root for float-or-dual scalars."""
    if type(x) is Dual:
        return _sqrt(<Dual> x)
    return c_sqrt(<double> x)


# -- dense antisymmetric wedge kernels (float coefficient arrays) ----------


def wedge11(a, b):
    """Wedge of two 1-forms: out[i,j] = a[i]b[j] - a[j]b[i]."""
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t d = av.shape[0]
    out = np.empty((d, d), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    for i in range(d):
        ov[i, i] = 0.0
        for j in range(i + 1, d):
            ov[i, j] = av[i] * bv[j] - av[j] * bv[i]
            ov[j, i] = -ov[i, j]
    return out


def wedge12(a, B):
    """Wedge of a 1-form with a 2-form (shuffle convention)."""
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[:, ::1] Bv = np.ascontiguousarray(B, dtype=np.float64)
    cdef Py_ssize_t d = av.shape[0]
    out = np.empty((d, d, d), dtype=np.float64)
    cdef double[:, :, ::1] ov = out
    cdef Py_ssize_t i, j, k
    for i in range(d):
        for j in range(d):
            for k in range(d):
                ov[i, j, k] = av[i] * Bv[j, k] - av[j] * Bv[i, k] + av[k] * Bv[i, j]
    return out


def matmul_forms_11(M, N):
    """Matrices of 1-forms multiplied with wedge as entry product."""
    cdef double[:, :, ::1] Mv = np.ascontiguousarray(M, dtype=np.float64)
    cdef double[:, :, ::1] Nv = np.ascontiguousarray(N, dtype=np.float64)
    cdef Py_ssize_t r = Mv.shape[0], m = Mv.shape[1], d = Mv.shape[2]
    cdef Py_ssize_t c = Nv.shape[1]
    out = np.zeros((r, c, d, d), dtype=np.float64)
    cdef double[:, :, :, ::1] ov = out
    cdef Py_ssize_t i, j, k, x, y
    cdef double acc
    for i in range(r):
        for j in range(c):
            for x in range(d):
                for y in range(x + 1, d):
                    acc = 0.0
                    for k in range(m):
                        acc += Mv[i, k, x] * Nv[k, j, y] - Mv[i, k, y] * Nv[k, j, x]
                    ov[i, j, x, y] = acc
                    ov[i, j, y, x] = -acc
    return out
