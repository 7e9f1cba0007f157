"""Exact directional derivatives of scalar/array fields via dual scalars.

A "field" here is any callable taking a :class:`~acsphere.sphere.Point`
whose coordinates may be dual scalars and returning a scalar or an ndarray
(object dtype when dual coordinates flow through).  All helpers are pure
functions; concurrent evaluation at distinct points is safe.
"""

import numpy as np

from . import kernels as K


def value_of(x):
    return K.value_of(x)


def values(arr):
    """Primal float array of a (possibly object-dtype) scalar array."""
    a = np.asarray(arr)
    if a.dtype != object:
        return a.astype(float)
    out = np.empty(a.shape, dtype=float)
    flat_in = a.reshape(-1)
    flat_out = out.reshape(-1)
    for i in range(flat_in.size):
        flat_out[i] = K.value_of(flat_in[i])
    return out


def eps_parts(arr):
    """Derivative parts of a scalar or array of duals (floats pass as 0)."""
    a = np.asarray(arr)
    if a.dtype != object:
        return np.zeros(a.shape)
    out = np.empty(a.shape, dtype=object)
    flat_in = a.reshape(-1)
    flat_out = out.reshape(-1)
    for i in range(flat_in.size):
        x = flat_in[i]
        flat_out[i] = x.eps if K.is_dual(x) else 0.0
    if all(not K.is_dual(x) for x in out.reshape(-1)):
        return out.astype(float)
    return out


def dual_coords(u, v):
    """Coordinates of a point displaced along v by a fresh dual layer."""
    return tuple(K.Dual(ui, vi) for ui, vi in zip(u, v))


def d_eval(field, point, v):
    """Evaluate a field and its exact directional derivative along v.

    Returns ``(value, derivative)``.  Both inherit the dual depth of the
    input coordinates, so nesting this call yields higher derivatives.
    """
    q = point.displaced_dual(v)
    out = field(q)
    if isinstance(out, np.ndarray):
        return values_like(out), eps_parts(out)
    return (out.val if K.is_dual(out) else out), (out.eps if K.is_dual(out) else 0.0)


def values_like(arr):
    """Strip one dual layer from an array (value parts, keeping inner duals)."""
    a = np.asarray(arr)
    if a.dtype != object:
        return a
    out = np.empty(a.shape, dtype=object)
    flat_in = a.reshape(-1)
    flat_out = out.reshape(-1)
    for i in range(flat_in.size):
        x = flat_in[i]
        flat_out[i] = x.val if K.is_dual(x) else x
    return out


def directional_derivative(field, point, v):
    """Exact (machine-precision) directional derivative of a field at a point.

    ``field`` maps points to scalars or arrays; ``v`` is a chart-coordinate
    direction.  Raises ValueError if the point lies outside the field's
    chart domain (propagated from the field itself).
    """
    _, deriv = d_eval(field, point, v)
    if isinstance(deriv, np.ndarray):
        return values(deriv) if deriv.dtype == object else deriv
    return K.value_of(deriv)


def as_object_array(rows):
    """Build an object-dtype ndarray from nested lists of scalars."""
    arr = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            arr[i, j] = x
    return arr


def mdot(A, B):
    """Matrix product usable with object-dtype (dual-valued) arrays."""
    return np.dot(A, B)
