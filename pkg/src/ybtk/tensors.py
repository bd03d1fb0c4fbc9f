"""Dense matrices and four-index (two-slot) operators over either backend.

Flattening convention, fixed project-wide: a two-slot operator ``T`` with
entries ``T^{ab}_{cd}`` (indices 0-based in code) is the ``n^2 x n^2``
matrix with row index ``a*n + b`` and column index ``c*n + d``, so that
``T`` maps ``e_c (x) e_d`` to ``sum_ab T^{ab}_{cd} e_a (x) e_b``.  For
three slots the row index is ``(a*n + b)*n + c``.  With this convention
the printed 4x4 matrices of the n=2 catalog are read in the basis order
(11, 12, 21, 22).

The two transposes act entrywise as ``(A^{t1})^{ab}_{cd} = A^{cb}_{ad}``
and ``(A^{t2})^{ab}_{cd} = A^{ad}_{cb}``; the second partial trace is
``Tr2(A)^a_c = sum_d A^{ad}_{cd}``.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import SingularMatrixError
from .scalars import Field, Scalar, substitute

__all__ = ["Mat", "Tensor4", "permutation", "embed", "yb_sides"]


class Mat:
    """A dense rows x cols matrix over a Field.

    Exact backend: entries are RatFun values in nested lists.  Float
    backend: a complex128 ndarray.  Instances are treated as immutable;
    all operations return new matrices.
    """

    __slots__ = ("field", "rows", "cols", "_a")

    def __init__(self, field: Field, rows: int, cols: int, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._a = data

    # -- constructors --------------------------------------------------

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Mat":
        if field.exact:
            z = field.zero
            return Mat(field, rows, cols, [[z] * cols for _ in range(rows)])
        return Mat(field, rows, cols, np.zeros((rows, cols), dtype=complex))

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        if field.exact:
            z, o = field.zero, field.one
            return Mat(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])
        return Mat(field, n, n, np.eye(n, dtype=complex))

    @staticmethod
    def from_rows(field: Field, entries) -> "Mat":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged matrix rows")
        if field.exact:
            return Mat(field, rows, cols, [list(r) for r in entries])
        return Mat(field, rows, cols, np.array(entries, dtype=complex))

    @staticmethod
    def build(field: Field, rows: int, cols: int, fn: Callable[[int, int], Scalar]) -> "Mat":
        if field.exact:
            return Mat(field, rows, cols, [[fn(i, j) for j in range(cols)] for i in range(rows)])
        a = np.empty((rows, cols), dtype=complex)
        for i in range(rows):
            for j in range(cols):
                a[i, j] = complex(fn(i, j))
        return Mat(field, rows, cols, a)

    # -- access ---------------------------------------------------------

    def at(self, i: int, j: int) -> Scalar:
        if self.field.exact:
            return self._a[i][j]
        return complex(self._a[i, j])

    def tolist(self) -> list:
        if self.field.exact:
            return [list(r) for r in self._a]
        return [[complex(x) for x in row] for row in self._a]

    @property
    def square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._check_shape(other)
        if self.field.exact:
            a, b = self._a, other._a
            return Mat(
                self.field,
                self.rows,
                self.cols,
                [[a[i][j] + b[i][j] for j in range(self.cols)] for i in range(self.rows)],
            )
        return Mat(self.field, self.rows, self.cols, self._a + other._a)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_shape(other)
        if self.field.exact:
            a, b = self._a, other._a
            return Mat(
                self.field,
                self.rows,
                self.cols,
                [[a[i][j] - b[i][j] for j in range(self.cols)] for i in range(self.rows)],
            )
        return Mat(self.field, self.rows, self.cols, self._a - other._a)

    def __neg__(self) -> "Mat":
        return self.scale(self.field.from_int(-1))

    def scale(self, s: Scalar) -> "Mat":
        if self.field.exact:
            return Mat(
                self.field,
                self.rows,
                self.cols,
                [[x * s for x in row] for row in self._a],
            )
        return Mat(self.field, self.rows, self.cols, self._a * complex(s))

    def __mul__(self, s):
        return self.scale(self.field.from_int(s) if isinstance(s, int) else s)

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("matmul shape mismatch")
        if not self.field.exact:
            return Mat(self.field, self.rows, other.cols, self._a @ other._a)
        a, b = self._a, other._a
        out = [[self.field.zero] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            ai = a[i]
            oi = out[i]
            for k in range(self.cols):
                x = ai[k]
                if x.is_zero:
                    continue
                bk = b[k]
                for j in range(other.cols):
                    y = bk[j]
                    if not y.is_zero:
                        oi[j] = oi[j] + x * y
        return Mat(self.field, self.rows, other.cols, out)

    def transpose(self) -> "Mat":
        if self.field.exact:
            return Mat(
                self.field,
                self.cols,
                self.rows,
                [[self._a[i][j] for i in range(self.rows)] for j in range(self.cols)],
            )
        return Mat(self.field, self.cols, self.rows, self._a.T.copy())

    def trace(self) -> Scalar:
        if not self.square:
            raise ValueError("trace of a non-square matrix")
        acc = self.field.zero
        for i in range(self.rows):
            acc = acc + self.at(i, i)
        return acc

    def trace_product(self, other: "Mat") -> Scalar:
        """Tr(self @ other) without materialising the product."""
        if self.cols != other.rows or self.rows != other.cols:
            raise ValueError("trace_product shape mismatch")
        if not self.field.exact:
            return complex(np.einsum("ij,ji->", self._a, other._a))
        acc = self.field.zero
        for i in range(self.rows):
            row = self._a[i]
            for j in range(self.cols):
                x = row[j]
                if x.is_zero:
                    continue
                y = other._a[j][i]
                if not y.is_zero:
                    acc = acc + x * y
        return acc

    def kron(self, other: "Mat") -> "Mat":
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        if not self.field.exact:
            return Mat(self.field, rows, cols, np.kron(self._a, other._a))
        out = [[self.field.zero] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                x = self._a[i][j]
                if x.is_zero:
                    continue
                for k in range(other.rows):
                    base_r = i * other.rows + k
                    row_o = other._a[k]
                    row = out[base_r]
                    for l in range(other.cols):
                        y = row_o[l]
                        if not y.is_zero:
                            row[j * other.cols + l] = x * y
        return Mat(self.field, rows, cols, out)

    # -- comparisons ----------------------------------------------------

    def max_abs(self) -> float:
        if self.field.exact:
            raise ValueError("max_abs is a float-backend operation")
        return float(np.max(np.abs(self._a))) if self._a.size else 0.0

    def compare(self, other: "Mat"):
        """Return (ok, residual, witness) under the field's notion of equality.

        Float backend: residual is max|difference| / max(1, |A|, |B|) and
        the witness is the argmax index on failure.  Exact backend:
        residual is None and the witness is the first differing index.
        """
        self._check_shape(other)
        if self.field.exact:
            for i in range(self.rows):
                for j in range(self.cols):
                    if not self._a[i][j] == other._a[i][j]:
                        return False, None, (i, j)
            return True, None, None
        scale = max(1.0, self.max_abs(), other.max_abs())
        diff = np.abs(self._a - other._a)
        residual = float(diff.max() / scale) if diff.size else 0.0
        if residual <= self.field.tolerance:
            return True, residual, None
        witness = np.unravel_index(int(diff.argmax()), diff.shape)
        return False, residual, (int(witness[0]), int(witness[1]))

    def eq(self, other: "Mat") -> bool:
        return self.compare(other)[0]

    def is_identity(self) -> bool:
        return self.square and self.eq(Mat.identity(self.field, self.rows))

    def _check_shape(self, other: "Mat"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("matrix shape mismatch")

    # -- inversion -------------------------------------------------------

    def inverse(self) -> "Mat":
        """Gauss-Jordan inverse; SingularMatrixError when none exists.

        Exact backend: the first nonzero entry of each column is the
        pivot (abstract fields have no magnitudes).  Float backend:
        LAPACK with magnitude pivoting, then a residual check.
        """
        if not self.square:
            raise SingularMatrixError("only square matrices are invertible")
        n = self.rows
        if not self.field.exact:
            try:
                inv = np.linalg.inv(self._a)
            except np.linalg.LinAlgError:
                raise SingularMatrixError("singular matrix") from None
            residual = np.max(np.abs(self._a @ inv - np.eye(n)))
            if residual > self.field.tolerance ** 0.5:
                raise SingularMatrixError("numerically singular matrix")
            return Mat(self.field, n, n, inv)
        aug = [list(row) + [self.field.one if i == j else self.field.zero for j in range(n)]
               for i, row in enumerate(self._a)]
        for col in range(n):
            pivot_row = None
            for r in range(col, n):
                if not aug[r][col].is_zero:
                    pivot_row = r
                    break
            if pivot_row is None:
                raise SingularMatrixError("singular matrix (zero pivot column %d)" % col)
            if pivot_row != col:
                aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
            inv_p = aug[col][col].invert()
            aug[col] = [x * inv_p for x in aug[col]]
            for r in range(n):
                if r == col:
                    continue
                f = aug[r][col]
                if f.is_zero:
                    continue
                prow = aug[col]
                aug[r] = [x - f * y for x, y in zip(aug[r], prow)]
        return Mat(self.field, n, n, [row[n:] for row in aug])

    # -- conversion -------------------------------------------------------

    def evaluate(self, bindings, target: Field) -> "Mat":
        """Substitute symbols entrywise and land in ``target``."""
        if not self.field.exact:
            raise ValueError("evaluate() starts from the exact backend")
        return Mat.build(
            target,
            self.rows,
            self.cols,
            lambda i, j: substitute(self._a[i][j], bindings, target),
        )

    def format_rows(self) -> list[list[str]]:
        return [
            [self.field.format(self.at(i, j)) for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def __repr__(self):
        return "Mat(%dx%d over %s)" % (self.rows, self.cols, self.field.tag.backend)


class Tensor4:
    """A two-slot operator: an n^2 x n^2 matrix addressed by four indices."""

    __slots__ = ("n", "mat")

    def __init__(self, n: int, mat: Mat):
        if mat.rows != n * n or mat.cols != n * n:
            raise ValueError("Tensor4 needs an n^2 x n^2 matrix")
        self.n = n
        self.mat = mat

    @property
    def field(self) -> Field:
        return self.mat.field

    @staticmethod
    def from_entry_fn(field: Field, n: int, fn) -> "Tensor4":
        def flat(i, j):
            a, b = divmod(i, n)
            c, d = divmod(j, n)
            return fn(a, b, c, d)

        return Tensor4(n, Mat.build(field, n * n, n * n, flat))

    @staticmethod
    def identity(field: Field, n: int) -> "Tensor4":
        return Tensor4(n, Mat.identity(field, n * n))

    def entry(self, a: int, b: int, c: int, d: int) -> Scalar:
        return self.mat.at(a * self.n + b, c * self.n + d)

    # -- reindexings ------------------------------------------------------

    def t1(self) -> "Tensor4":
        return Tensor4.from_entry_fn(
            self.field, self.n, lambda a, b, c, d: self.entry(c, b, a, d)
        )

    def t2(self) -> "Tensor4":
        return Tensor4.from_entry_fn(
            self.field, self.n, lambda a, b, c, d: self.entry(a, d, c, b)
        )

    def transpose(self, kind: str) -> "Tensor4":
        if kind == "t1":
            return self.t1()
        if kind == "t2":
            return self.t2()
        raise ValueError("transpose kind must be 't1' or 't2'")

    def partial_trace2(self) -> Mat:
        n = self.n

        def tr(a, c):
            acc = self.field.zero
            for d in range(n):
                acc = acc + self.entry(a, d, c, d)
            return acc

        return Mat.build(self.field, n, n, tr)

    # -- algebra ------------------------------------------------------------

    def __matmul__(self, other: "Tensor4") -> "Tensor4":
        return Tensor4(self.n, self.mat @ other.mat)

    def __add__(self, other: "Tensor4") -> "Tensor4":
        return Tensor4(self.n, self.mat + other.mat)

    def __sub__(self, other: "Tensor4") -> "Tensor4":
        return Tensor4(self.n, self.mat - other.mat)

    def scale(self, s: Scalar) -> "Tensor4":
        return Tensor4(self.n, self.mat.scale(s))

    def inverse(self) -> "Tensor4":
        return Tensor4(self.n, self.mat.inverse())

    def eq(self, other: "Tensor4") -> bool:
        return self.mat.eq(other.mat)

    def evaluate(self, bindings, target: Field) -> "Tensor4":
        return Tensor4(self.n, self.mat.evaluate(bindings, target))

    def __repr__(self):
        return "Tensor4(n=%d over %s)" % (self.n, self.field.tag.backend)

    # -- three-slot lifts -----------------------------------------------------

    def lift12(self) -> Mat:
        return self.mat.kron(Mat.identity(self.field, self.n))

    def lift23(self) -> Mat:
        return Mat.identity(self.field, self.n).kron(self.mat)

    def lift13(self) -> Mat:
        n = self.n

        def fn(i, j):
            a, rest = divmod(i, n * n)
            b, c = divmod(rest, n)
            d, rest2 = divmod(j, n * n)
            e, f = divmod(rest2, n)
            if b != e:
                return self.field.zero
            return self.entry(a, c, d, f)

        return Mat.build(self.field, n ** 3, n ** 3, fn)


def permutation(field: Field, n: int) -> Tensor4:
    """The flip operator: P^{ab}_{cd} = 1 iff a == d and b == c."""
    one, zero = field.one, field.zero
    return Tensor4.from_entry_fn(
        field, n, lambda a, b, c, d: one if (a == d and b == c) else zero
    )


def embed(mu: Mat, which: str) -> Tensor4:
    """Kronecker embedding of an n x n matrix into a two-slot operator.

    ``slot1`` gives mu (x) I, ``slot2`` gives I (x) mu, ``both`` gives
    mu (x) mu, all in the fixed flattening.
    """
    if not mu.square:
        raise ValueError("embed needs a square matrix")
    n = mu.rows
    eye = Mat.identity(mu.field, n)
    if which == "slot1":
        return Tensor4(n, mu.kron(eye))
    if which == "slot2":
        return Tensor4(n, eye.kron(mu))
    if which == "both":
        return Tensor4(n, mu.kron(mu))
    raise ValueError("which must be 'slot1', 'slot2' or 'both'")


def yb_sides(r: Tensor4) -> tuple[Mat, Mat]:
    """Both triple products of the quantum Yang-Baxter equation on n^3.

    Returns (R12 R13 R23, R23 R13 R12) as n^3 x n^3 matrices in the
    fixed three-slot flattening.
    """
    r12 = r.lift12()
    r13 = r.lift13()
    r23 = r.lift23()
    return r12 @ r13 @ r23, r23 @ r13 @ r12
