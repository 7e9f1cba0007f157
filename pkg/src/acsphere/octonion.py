"""Seven-dimensional cross product from a fixed octonion table.

The imaginary units e1..e7 multiply along the oriented triples

    (1,2,3), (1,4,5), (1,7,6), (2,4,6), (2,5,7), (3,4,7), (3,6,5)

meaning e1*e2 = e3, e1*e4 = e5, e1*e7 = e6, e2*e4 = e6, e2*e5 = e7,
e3*e4 = e7, e3*e6 = e5, extended antisymmetrically.  This single table is
the project-wide convention; every sphere-of-dimension-6 expected value in
the test suite refers to it.  The induced bilinear product
x x y = sum f[i,j,k] x_i y_j e_k satisfies |x x y|^2 = |x|^2|y|^2 - <x,y>^2
and x x (x x y) = -|x|^2 y + <x,y> x, which is exactly what makes
J_p(X) = p x X an orthogonal almost complex structure on the unit sphere.
"""

import numpy as np

ORIENTED_TRIPLES_7D = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
)


def structure_constants(triples, size):
    """Totally antisymmetric f[i,j,k] with f = +1 on the oriented triples."""
    f = np.zeros((size, size, size))
    for (a, b, c) in triples:
        i, j, k = a - 1, b - 1, c - 1
        for (x, y, z, s) in (
            (i, j, k, 1.0),
            (j, k, i, 1.0),
            (k, i, j, 1.0),
            (j, i, k, -1.0),
            (i, k, j, -1.0),
            (k, j, i, -1.0),
        ):
            f[x, y, z] = s
    return f


CROSS_7D = structure_constants(ORIENTED_TRIPLES_7D, 7)

# 3D cross product in the same encoding (f_{123} = +1)
CROSS_3D = structure_constants(((1, 2, 3),), 3)


def cross_matrix(f, p):
    """Matrix of W -> p x W: out[k, j] = sum_i f[i, j, k] p_i.

    Accepts dual-valued p (object arrays propagate through).
    """
    size = f.shape[0]
    dual = np.asarray(p).dtype == object
    M = np.zeros((size, size), dtype=object if dual else float)
    for i in range(size):
        for j in range(size):
            for k in range(size):
                if f[i, j, k]:
                    M[k, j] = M[k, j] + f[i, j, k] * p[i]
    return M


def cross(f, x, y):
    return np.dot(cross_matrix(f, x), y)
