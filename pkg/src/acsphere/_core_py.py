"""Pure-Python scalar and small-array kernels.

This module is the reference implementation of the hot kernels: forward-mode
dual scalars (arbitrarily nestable, which gives exact second and third
directional derivatives) and the dense antisymmetric wedge kernels.  The
compiled twin ``_core_c`` exposes the same names with the same semantics;
tests compare the two on identical inputs.
"""

import math

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


def _depth(x):
    return x.depth if type(x) is Dual else 0


def _lift(x, depth):
    """Embed x as a constant dual of the given nesting depth."""
    d = _depth(x)
    if d > depth:
        raise ValueError("cannot lower dual depth")
    while d < depth:
        x = Dual(x, _zero(d))
        d += 1
    return x


def _zero(depth):
    z = 0.0
    for _ in range(depth):
        z = Dual(z, z)
    return z


class Dual:
    """Scalar carrying a value and a directional-derivative part.

    Parts may themselves be ``Dual``; each nesting level is an independent
    perturbation, so evaluating an already-dual expression at a dual point
    yields exact mixed second (and deeper) directional derivatives.
    Comparisons act on the underlying primal value.
    """

    __slots__ = ("val", "eps", "depth")

    def __init__(self, val, eps=0.0):
        dv, de = _depth(val), _depth(eps)
        if dv != de:
            d = max(dv, de)
            val = _lift(val, d)
            eps = _lift(eps, d)
            dv = d
        elif dv == 0:
            val = float(val)
            eps = float(eps)
        self.val = val
        self.eps = eps
        self.depth = dv + 1

    # -- arithmetic ----------------------------------------------------

    def _pair(self, other):
        """Return (a, b) as equal-depth Duals, or None if not coercible."""
        if type(other) is Dual:
            da, db = self.depth, other.depth
            if da == db:
                return self, other
            if da < db:
                return _lift(self, db), other
            return self, _lift(other, da)
        try:
            c = float(other)
        except (TypeError, ValueError):
            return None
        return self, _lift(c, self.depth)

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Dual(a.val + b.val, a.eps + b.eps)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Dual(a.val - b.val, a.eps - b.eps)

    def __rsub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Dual(b.val - a.val, b.eps - a.eps)

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Dual(a.val * b.val, a.val * b.eps + a.eps * b.val)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Dual(a.val / b.val, (a.eps * b.val - a.val * b.eps) / (b.val * b.val))

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        a, b = p
        return Dual(b.val / a.val, (b.eps * a.val - b.val * a.eps) / (a.val * a.val))

    def __neg__(self):
        return Dual(-self.val, -self.eps)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if value_of(self) < 0.0 else self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("dual scalars support integer powers only; use sqrt_s")
        if n < 0:
            return (1.0 / self) ** (-n)
        out = _lift(1.0, self.depth)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self):
        s = sqrt_s(self.val)
        return Dual(s, self.eps / (s + s))

    # -- comparisons on the primal value -------------------------------

    def __lt__(self, other):
        return value_of(self) < value_of(other)

    def __le__(self, other):
        return value_of(self) <= value_of(other)

    def __gt__(self, other):
        return value_of(self) > value_of(other)

    def __ge__(self, other):
        return value_of(self) >= value_of(other)

    def __eq__(self, other):
        return value_of(self) == value_of(other)

    __hash__ = None

    def __repr__(self):
        return "Dual(%r, %r)" % (self.val, self.eps)


def is_dual(x):
    return type(x) is Dual


def value_of(x):
    """Primal float value of a float or (nested) dual scalar."""
    while type(x) is Dual:
        x = x.val
    return float(x)


def sqrt_s(x):
    """Square root for float-or-dual scalars."""
    if type(x) is Dual:
        return x.sqrt()
    return math.sqrt(x)


# -- dense antisymmetric wedge kernels (float coefficient arrays) -------
#
# Coefficient convention: a 1-form is its value vector on the frame, a
# k-form the fully antisymmetric array of values on frame k-tuples, and
# (a^b)(X,Y) = a(X)b(Y) - a(Y)b(X) with no 1/k! factor.


def wedge11(a, b):
    """Wedge of two 1-forms: out[i,j] = a[i]b[j] - a[j]b[i]."""
    return np.outer(a, b) - np.outer(b, a)


def wedge12(a, B):
    """Wedge of a 1-form with a 2-form (shuffle convention).

    out[i,j,k] = a[i]B[j,k] - a[j]B[i,k] + a[k]B[i,j]
    """
    return (
        np.einsum("i,jk->ijk", a, B)
        - np.einsum("j,ik->ijk", a, B)
        + np.einsum("k,ij->ijk", a, B)
    )


def matmul_forms_11(M, N):
    """Product of two matrices of 1-forms, wedge as entry multiplication.

    M: (r, m, d), N: (m, c, d) coefficient arrays; out[i,j] = sum_k M[i,k]^N[k,j],
    an (r, c, d, d) array of 2-form coefficients.
    """
    return np.einsum("ika,kjb->ijab", M, N) - np.einsum("ikb,kja->ijab", M, N)
