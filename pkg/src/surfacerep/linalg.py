"""Exact linear algebra over Q and GF(p), and integer Smith normal form.

No floating point is used anywhere. Rational scalars are ``Fraction`` (or
plain ints when integral); prime field scalars are ints in ``range(p)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

DEFAULT_SEARCH_CAP = 10**6


class CapExceeded(RuntimeError):
    """A bounded search gave up. The answer is unknown, not negative."""

    def __init__(self, what: str, cap: int, needed: int | None = None):
        self.what = what
        self.cap = cap
        self.needed = needed
        msg = f"{what}: search cap {cap} exceeded"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)

    def to_json(self) -> dict:
        return {"what": self.what, "cap": self.cap, "needed": self.needed}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class Field:
    """``Field()`` is Q; ``Field(p)`` is GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, x) -> Fraction | int:
        if self.p is None:
            # integral rationals stay ints; arithmetic on them is much cheaper
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, x, y):
        return x + y if self.p is None else (x + y) % self.p

    def sub(self, x, y):
        return x - y if self.p is None else (x - y) % self.p

    def mul(self, x, y):
        return x * y if self.p is None else (x * y) % self.p

    def neg(self, x):
        return -x if self.p is None else (-x) % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return self(1 / Fraction(x)) if self.p is None else pow(x, -1, self.p)

    def elements(self) -> Iterator:
        if self.p is None:
            raise ValueError("Q is infinite")
        return iter(range(self.p))

    def parse(self, text) -> Fraction | int:
        return self(Fraction(str(text)))

    def format(self, x) -> str:
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    def to_json(self) -> dict:
        return {"field": "Q"} if self.p is None else {"field": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> Field:
        kind = data.get("field", "Q")
        if kind == "Q":
            return cls()
        if kind == "Fp":
            return cls(int(data["p"]))
        raise ValueError(f"unknown field {kind!r}")

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


QQ = Field()


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple[tuple, ...]

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> Matrix:
        return cls(field, tuple(tuple(field(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, field: Field, r: int) -> Matrix:
        return cls(field, tuple(tuple(field.one if i == j else field.zero for j in range(r)) for i in range(r)))

    @classmethod
    def zeros(cls, field: Field, r: int, c: int | None = None) -> Matrix:
        c = r if c is None else c
        return cls(field, tuple((field.zero,) * c for _ in range(r)))

    @classmethod
    def unit(cls, field: Field, r: int, i: int, j: int) -> Matrix:
        rows = [[field.zero] * r for _ in range(r)]
        rows[i][j] = field.one
        return cls(field, tuple(map(tuple, rows)))

    @classmethod
    def from_vec(cls, field: Field, vec: Sequence, r: int) -> Matrix:
        return cls(field, tuple(tuple(vec[i * r : (i + 1) * r]) for i in range(r)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def vec(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def transpose(self) -> Matrix:
        return Matrix(self.field, tuple(zip(*self.rows)))

    def _check(self, other: Matrix) -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch {self.field} vs {other.field}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        F = self.field
        return Matrix(F, tuple(tuple(F.add(x, y) for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        F = self.field
        return Matrix(F, tuple(tuple(F.sub(x, y) for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c) -> Matrix:
        F = self.field
        c = F(c)
        return Matrix(F, tuple(tuple(F.mul(c, x) for x in row) for row in self.rows))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        cols = list(zip(*other.rows))
        if self.field.p is None:
            rows = tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in self.rows)
        else:
            p = self.field.p
            rows = tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in self.rows)
        return Matrix(self.field, rows)

    __mul__ = __matmul__

    def apply(self, v: Sequence) -> tuple:
        F = self.field
        out = []
        for row in self.rows:
            s = sum(x * y for x, y in zip(row, v))
            out.append(F(s))
        return tuple(out)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.field, self.shape[0])

    def trace(self):
        return self.field(sum(self.rows[i][i] for i in range(self.shape[0])))

    def det(self):
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        F = self.field
        a = [list(row) for row in self.rows]
        n = len(a)
        d = F.one
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return F.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = F.neg(d)
            d = F.mul(d, a[c][c])
            inv = F.inv(a[c][c])
            for i in range(c + 1, n):
                if a[i][c]:
                    f = F.mul(a[i][c], inv)
                    a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[c])]
        return d

    def is_invertible(self) -> bool:
        return self.is_square and bool(self.det())

    def inverse(self) -> Matrix:
        n, _ = self.shape
        aug = Matrix(self.field, tuple(row + e for row, e in zip(self.rows, Matrix.identity(self.field, n).rows)))
        red, _, pivots = rref(aug)
        if [p for p in pivots if p < n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        F = self.field
        return Matrix(F, tuple(tuple(F(x) for x in row[n:]) for row in red.rows))

    def __pow__(self, k: int) -> Matrix:
        base = self if k >= 0 else self.inverse()
        out = Matrix.identity(self.field, self.shape[0])
        for _ in range(abs(k)):
            out = out @ base
        return out

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, field: Field, data) -> Matrix:
        return cls(field, tuple(tuple(field.parse(x) for x in row) for row in data))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(self.field.format(x) for x in row) + "]" for row in self.rows) + "]"


def mul_rows(a: tuple, b: tuple, p: int | None) -> tuple:
    """Product of matrices given as row tuples, skipping Matrix bookkeeping in hot loops."""
    cols = tuple(zip(*b))
    if p is None:
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a)


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    F = m.field
    a = [list(row) for row in m.rows]
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix(F, tuple(map(tuple, a))), len(pivots), pivots


def nullspace(m: Matrix) -> list[tuple]:
    F = m.field
    _, ncols = m.shape
    red, _, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(red.rows, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution of ``m x = b``, or None when inconsistent."""
    F = m.field
    aug = Matrix(F, tuple(row + (F(bi),) for row, bi in zip(m.rows, b)))
    red, _, pivots = rref(aug)
    ncols = m.shape[1]
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(red.rows, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def rank(m: Matrix) -> int:
    return rref(m)[1]


def columns_matrix(field: Field, vectors: Sequence[Sequence]) -> Matrix:
    return Matrix(field, tuple(zip(*vectors))) if vectors else Matrix(field, ())


def combine(basis: Sequence[Matrix], coeffs: Sequence) -> Matrix:
    F = basis[0].field
    out = Matrix.zeros(F, *basis[0].shape)
    for c, b in zip(coeffs, basis):
        if c:
            out = out + b.scale(c)
    return out


def _grid_points(d: int, width: int) -> Iterator[tuple[int, ...]]:
    # points of {0..width-1}^d ordered by coordinate sum, then lexicographically
    for total in range(d * (width - 1) + 1):
        for pt in itertools.product(range(width), repeat=d):
            if sum(pt) == total:
                yield pt


def invertible_points(basis: Sequence[Matrix], cap: int = DEFAULT_SEARCH_CAP, width: int | None = None) -> Iterator[Matrix]:
    """Invertible combinations of ``basis`` in a fixed deterministic order.

    Over Q (or GF(p) with ``p`` larger than the matrix size ``r``) the
    coefficients range over the grid ``{0..r}^d``: the determinant of a
    combination is a polynomial of degree at most ``r`` in each coefficient,
    so if it is not identically zero it is nonzero somewhere on that grid.
    Over GF(p) with ``p <= r`` every point of ``GF(p)^d`` is tried.
    """
    if not basis:
        return
    F = basis[0].field
    r = basis[0].shape[0]
    d = len(basis)
    if F.p is None or F.p > r:
        w = r + 1 if width is None else width
        if F.p is not None:
            w = min(w, F.p)
        size = w**d
        points = _grid_points(d, w)
    else:
        size = F.p**d
        points = itertools.product(range(F.p), repeat=d)
    if size > cap:
        raise CapExceeded("invertible_in_span", cap, size)
    for pt in points:
        m = combine(basis, [F(c) for c in pt])
        if m.det():
            yield m


def invertible_in_span(basis: Sequence[Matrix], cap: int = DEFAULT_SEARCH_CAP) -> Matrix | None:
    if basis:
        shapes = {b.shape for b in basis}
        if len(shapes) != 1 or not basis[0].is_square:
            raise ValueError("basis matrices must be square and of one shape")
    return next(invertible_points(basis, cap), None)


# -- integer matrices ---------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.ncols < 0:
            object.__setattr__(self, "ncols", len(rows[0]) if rows else 0)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)), len(self.rows)) if self.rows else IntMatrix((), 0)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return IntMatrix(tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in self.rows), other.ncols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def det(self) -> int:
        """Bareiss fraction-free elimination."""
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(row) for row in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.rows]


def smith_normal_form(m: IntMatrix) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Return ``(d, U, V)`` with ``U @ m @ V`` diagonal, ``d[0] | d[1] | ...``, U and V unimodular.

    ``d`` has ``min(rows, cols)`` entries, all non-negative; zeros trail.
    """
    nr, nc = m.shape
    a = [list(row) for row in m.rows]
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        U[i] = [x - q * y for x, y in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide every remaining entry
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            i, _ = bad
            # row_t += row_i, then re-clear
            row_op(t, i, -1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    d = [a[k][k] for k in range(min(nr, nc))]
    return d, IntMatrix(tuple(map(tuple, U)), nr), IntMatrix(tuple(map(tuple, V)), nc)
