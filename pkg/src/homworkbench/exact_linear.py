"""Exact rational linear and multilinear algebra on numpy object arrays.

Every array produced here holds :class:`fractions.Fraction` entries, so all
arithmetic is exact.  Conventions used across the package:

* a linear map ``M`` sends ``e_j`` to column ``j``: ``M(e_j) = sum_i M[i, j] e_i``;
* a product tensor ``c`` encodes ``e_i . e_j = sum_k c[i, j, k] e_k``;
* a coproduct tensor ``f`` encodes ``Delta(e_k) = sum_{i,j} f[k, i, j] e_i (x) e_j``;
* an element of ``A (x) A`` is an ``n x n`` array ``T`` with ``T[i, j]`` the
  coefficient of ``e_i (x) e_j``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

__all__ = [
    "DimensionError",
    "scalar",
    "to_array",
    "zeros",
    "identity",
    "basis",
    "is_zero",
    "mat_apply",
    "mult_apply",
    "det_exact",
    "inverse",
    "solve",
    "dual_map",
    "exchange_sigma",
    "kron",
    "direct_sum",
    "block",
    "compose_family",
    "matrix_power",
    "left_mult",
    "right_mult",
    "product_from_operators",
    "coproduct_of",
    "product_of_coproduct",
    "basis_grids",
    "gmul",
    "gact",
    "gapply",
]


class DimensionError(ValueError):
    """Raised when operands have incompatible shapes."""


def scalar(value) -> Fraction:
    """Parse ``value`` (int, Fraction, or a string such as ``"-3/4"``) exactly.

    Floats are rejected: they are not exact rationals in any useful sense.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"non-rational scalar {value!r}") from exc
    raise TypeError(f"non-rational scalar {value!r} of type {type(value).__name__}")


_scalar_vec = np.frompyfunc(scalar, 1, 1)


def to_array(data) -> np.ndarray:
    """Return an object array of Fractions with the shape of ``data``."""
    arr = np.asarray(data, dtype=object)
    if arr.size == 0:
        return arr.astype(object)
    return np.asarray(_scalar_vec(arr), dtype=object).reshape(arr.shape)


def zeros(*shape) -> np.ndarray:
    if len(shape) == 1 and isinstance(shape[0], tuple):
        shape = shape[0]
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def basis(n: int) -> np.ndarray:
    """Rows are the standard basis vectors of ``K^n``."""
    return identity(n)


def is_zero(arr) -> bool:
    return not np.any(np.asarray(arr, dtype=object) != 0)


def _square(m: np.ndarray, what: str = "matrix") -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {m.shape}")
    return m.shape[0]


def mat_apply(m, v) -> np.ndarray:
    """Apply the linear map ``m`` to the coordinate vector ``v``."""
    m, v = to_array(m), to_array(v)
    if m.ndim != 2 or v.ndim != 1 or m.shape[1] != v.shape[0]:
        raise DimensionError(f"cannot apply {m.shape} matrix to vector of length {v.shape}")
    return m.dot(v)


def mult_apply(c, x, y) -> np.ndarray:
    """Evaluate ``x . y`` from structure constants ``c``."""
    c, x, y = to_array(c), to_array(x), to_array(y)
    n = c.shape[0]
    if c.shape != (n, n, n) or x.shape != (n,) or y.shape != (n,):
        raise DimensionError(
            f"product tensor {c.shape} incompatible with vectors {x.shape}, {y.shape}"
        )
    return np.einsum("i,j,ijk->k", x, y, c)


def det_exact(m) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Entries are first scaled to integers by a common denominator so that
    every intermediate division is exact integer division.
    """
    m = to_array(m)
    n = _square(m)
    if n == 0:
        return Fraction(1)
    den = 1
    for entry in m.flat:
        den = den * entry.denominator // np.gcd(den, entry.denominator)
    a = [[int(entry * den) for entry in row] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den**n)


def _row_reduce(aug: np.ndarray, n: int) -> np.ndarray | None:
    """Gauss-Jordan on the first ``n`` columns; ``None`` when singular."""
    aug = aug.copy()
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col] != 0), None)
        if pivot is None:
            return None
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(n):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    return aug


def inverse(m) -> np.ndarray:
    m = to_array(m)
    n = _square(m)
    reduced = _row_reduce(np.concatenate([m, identity(n)], axis=1), n)
    if reduced is None:
        raise ZeroDivisionError("matrix is singular")
    return reduced[:, n:]


def solve(m, rhs) -> np.ndarray:
    """Solve ``m @ X = rhs`` exactly (``rhs`` may be a vector or a matrix)."""
    m, rhs = to_array(m), to_array(rhs)
    n = _square(m)
    vector = rhs.ndim == 1
    b = rhs.reshape(n, -1)
    reduced = _row_reduce(np.concatenate([m, b], axis=1), n)
    if reduced is None:
        raise ZeroDivisionError("matrix is singular")
    out = reduced[:, n:]
    return out[:, 0] if vector else out


def dual_map(m) -> np.ndarray:
    """Matrix of the dual map in the dual basis: the transpose."""
    m = to_array(m)
    _square(m)
    return m.T.copy()


def exchange_sigma(t) -> np.ndarray:
    """Swap tensor factors, ``x (x) y -> y (x) x``.

    Accepts either a flat vector of length ``n**2`` (index ``i*n + j``) or
    an ``n x n`` array, and returns the same layout.
    """
    t = to_array(t)
    if t.ndim == 2 and t.shape[0] == t.shape[1]:
        return t.T.copy()
    if t.ndim != 1:
        raise DimensionError(f"expected a tensor of A(x)A, got shape {t.shape}")
    n = int(round(len(t) ** 0.5))
    if n * n != len(t):
        raise DimensionError(f"length {len(t)} is not a perfect square")
    return t.reshape(n, n).T.reshape(-1).copy()


def kron(a, b) -> np.ndarray:
    """Kronecker product; ``kron(A, B)`` is the matrix of ``A (x) B``."""
    return np.kron(to_array(a), to_array(b))


def direct_sum(a, b) -> np.ndarray:
    a, b = to_array(a), to_array(b)
    out = zeros(a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


def block(rows) -> np.ndarray:
    return np.block([[to_array(x) for x in row] for row in rows]).astype(object)


def compose_family(family, m, *, after: bool = False) -> np.ndarray:
    """Pre- or post-compose every map of an action family with ``m``.

    ``family[x]`` is the matrix of ``l(e_x)``.  By default the result is
    ``x -> l(m e_x)`` (reparametrising the argument); with ``after=True``
    it is ``x -> m l(e_x)``.
    """
    family, m = to_array(family), to_array(m)
    if after:
        return np.einsum("ab,xbc->xac", m, family)
    return np.einsum("yx,yab->xab", m, family)


def matrix_power(m, k: int) -> np.ndarray:
    m = to_array(m)
    n = _square(m)
    if k < 0:
        m, k = inverse(m), -k
    out = identity(n)
    for _ in range(k):
        out = out.dot(m)
    return out


def left_mult(c) -> np.ndarray:
    """Family ``L[x]`` with ``L(e_x) e_y = e_x . e_y``; ``L[x][k, y] = c[x, y, k]``."""
    return np.transpose(to_array(c), (0, 2, 1)).copy()


def right_mult(c) -> np.ndarray:
    """Family ``R[x]`` with ``R(e_x) e_y = e_y . e_x``; ``R[x][k, y] = c[y, x, k]``."""
    return np.transpose(to_array(c), (1, 2, 0)).copy()


def product_from_operators(L) -> np.ndarray:
    """Inverse of :func:`left_mult`."""
    return np.transpose(to_array(L), (0, 2, 1)).copy()


def coproduct_of(c) -> np.ndarray:
    """Coproduct on ``A`` dual to the product ``c`` on ``A*``: ``f[k, i, j] = c[i, j, k]``."""
    return np.transpose(to_array(c), (2, 0, 1)).copy()


def product_of_coproduct(f) -> np.ndarray:
    """Product on ``A*`` dual to the coproduct ``f`` on ``A``."""
    return np.transpose(to_array(f), (1, 2, 0)).copy()


# Identities are evaluated on all basis tuples at once.  A "grid" is an
# object array whose trailing axis holds coordinates and whose leading axes
# index the basis tuple; operands broadcast against each other.


def basis_grids(*dims: int) -> list[np.ndarray]:
    """Standard basis vectors laid out along separate leading axes.

    ``basis_grids(n, n, m)`` returns ``[x, y, v]`` where ``x[i, 0, 0]`` is
    ``e_i`` in ``K^n``, ``y[0, j, 0]`` is ``e_j`` and ``v[0, 0, a]`` is
    ``e_a`` in ``K^m``.
    """
    out = []
    for k, d in enumerate(dims):
        shape = [1] * len(dims) + [d]
        shape[k] = d
        out.append(identity(d).reshape(shape))
    return out


def gmul(c: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Broadcast product ``x . y`` of two grids."""
    t = np.tensordot(x, c, axes=([-1], [0]))
    return np.matmul(y[..., None, :], t)[..., 0, :]


def gact(family: np.ndarray, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Broadcast action ``l(x) v`` for an action family ``l``."""
    m = np.tensordot(x, family, axes=([-1], [0]))
    return np.matmul(m, v[..., :, None])[..., 0]


def gapply(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Broadcast ``m(v)`` for a (possibly rectangular) matrix ``m``."""
    return np.matmul(v, m.T)
