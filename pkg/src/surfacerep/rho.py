"""The span W of the image of a representation and the linear action of its stabilizer on W.

For ``f`` fixing the conjugacy class of ``phi`` there is a unique linear map
``rho(f)`` on ``W = span phi(pi)`` with ``rho(f)(phi(gamma)) = phi(f_* gamma)``.
It is conjugation by any witness ``A_f`` restricted to ``W``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .linalg import DEFAULT_SEARCH_CAP, Field, Matrix, invertible_points, mul_rows, rank, rref
from .mapping import MappingClass, compose
from .repspace import (Representation, conjugator_space, evaluate, in_stabilizer_class,
                       in_strict_stabilizer, pullback)
from .words import all_words


class NotInStabilizer(ValueError):
    pass


class ConsistencyError(AssertionError):
    """Two routes to a quantity that must agree did not. Indicates a bug."""


class NotAnAutomorphism(ValueError):
    pass


class NotInSpan(ValueError):
    pass


class _Echelon:
    """Incremental row echelon form used to test linear independence."""

    def __init__(self, field: Field):
        self.F = field
        self.rows: list[tuple[int, list]] = []

    def reduce(self, v: Sequence) -> list:
        F = self.F
        v = list(v)
        for piv, row in self.rows:
            if v[piv]:
                c = v[piv]
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = self.F.inv(v[piv])
        v = [self.F.mul(inv, x) for x in v]
        # keep rows fully reduced at their pivots
        new_rows = []
        for p, row in self.rows:
            if row[piv]:
                c = row[piv]
                row = [self.F.sub(x, self.F.mul(c, y)) for x, y in zip(row, v)]
            new_rows.append((p, row))
        new_rows.append((piv, v))
        self.rows = new_rows
        return True


@dataclass(frozen=True)
class AlgebraBasis:
    """Basis of W in saturation order; ``basis[0]`` is the identity."""

    field: Field
    r: int
    basis: tuple[Matrix, ...]
    saturated: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _solver(self) -> tuple[list[int], Matrix]:
        # pick dim independent coordinates of vec(X) and invert the square block
        cols = Matrix(self.field, tuple(zip(*(b.vec() for b in self.basis))))
        _, _, rows = rref(cols.transpose())
        block = Matrix(self.field, tuple(cols.rows[i] for i in rows))
        return rows, block.inverse()

    def coordinates(self, X: Matrix) -> tuple:
        rows, block_inv = self._solver
        v = X.vec()
        c = block_inv.apply([v[i] for i in rows])
        if self.combine(c) != X:
            raise NotInSpan("matrix is not in the span")
        return c

    def combine(self, coords: Sequence) -> Matrix:
        out = Matrix.zeros(self.field, self.r)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def contains(self, X: Matrix) -> bool:
        try:
            self.coordinates(X)
        except NotInSpan:
            return False
        return True

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [b.to_json() for b in self.basis], "saturated": self.saturated}


def span_w_phi(phi: Representation) -> AlgebraBasis:
    """Span of the image of ``phi``, by two-sided saturation from ``I`` and the generator images."""
    F, r = phi.field, phi.r
    gens = []
    for s in phi.presentation.symbols:
        gens += [phi.assign[s], phi.inverses[s]]
    ech = _Echelon(F)
    basis: list[Matrix] = []

    def offer(X: Matrix) -> None:
        if ech.add(X.vec()):
            basis.append(X)

    offer(Matrix.identity(F, r))
    for G in gens:
        offer(G)
    done = 0
    while done < len(basis):
        B = basis[done]
        for G in gens:
            offer(G @ B)
            offer(B @ G)
        done += 1
    ab = AlgebraBasis(F, r, tuple(basis), saturated=False)
    saturated = all(ab.contains(G @ B) and ab.contains(B @ G) for B in basis for G in gens)
    return AlgebraBasis(F, r, tuple(basis), saturated)


def conjugation_on_span(basis: AlgebraBasis, A: Matrix) -> Matrix:
    """Matrix of ``X -> A X A^-1`` on the span, in basis coordinates (columns are images)."""
    Ainv = A.inverse()
    cols = [basis.coordinates(A @ B @ Ainv) for B in basis.basis]
    return Matrix(basis.field, tuple(zip(*cols)))


@dataclass(frozen=True)
class RhoMatrix:
    basis: AlgebraBasis
    matrix: Matrix
    source: str
    conjugator: Matrix

    def to_json(self) -> dict:
        return {
            "basis_dim": self.basis.dim,
            "matrix": self.matrix.to_json(),
            "conjugator": self.conjugator.to_json(),
        }


def build_rho(phi: Representation, f: MappingClass, basis: AlgebraBasis | None = None,
              cap: int = DEFAULT_SEARCH_CAP) -> RhoMatrix:
    basis = span_w_phi(phi) if basis is None else basis
    A = in_stabilizer_class(f, phi, cap)
    if A is None:
        raise NotInStabilizer(f"{f.label} does not fix the conjugacy class")
    return RhoMatrix(basis, conjugation_on_span(basis, A), f.label, A)


def rho_identity_check(phi: Representation, f: MappingClass, rho: RhoMatrix, depth: int = 6) -> tuple[bool, int]:
    """Check ``rho(f)(phi(gamma)) = phi(f_* gamma)`` for every word of length ``<= depth``.

    The pairs ``(phi(gamma), phi(f_* gamma))`` are built letter by letter and
    deduplicated per level; words with the same pair give the same check, so
    the distinct pairs cover every word. Returns ``(ok, distinct pairs checked)``.
    """
    F = phi.field
    psi = pullback(f, phi)
    letters = []
    for s in phi.presentation.symbols:
        letters.append((phi.assign[s].rows, psi.assign[s].rows))
        letters.append((phi.inverses[s].rows, psi.inverses[s].rows))
    I = Matrix.identity(F, phi.r).rows
    seen = {(I, I)}
    frontier = [(I, I)]
    for _ in range(depth):
        nxt = []
        for X, Y in frontier:
            for P, Q in letters:
                k = (mul_rows(X, P, F.p), mul_rows(Y, Q, F.p))
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    # vec(rho(f) X) = T vec(X) on W, with T = B R B^+ ; B^+ picks independent rows
    basis = rho.basis
    rows, block_inv = basis._solver
    B = [b.vec() for b in basis.basis]
    R = rho.matrix.rows
    solve = [[sum(R[i][k] * block_inv.rows[k][j] for k in range(basis.dim)) for j in range(len(rows))]
             for i in range(basis.dim)]
    for xr, yr in seen:
        x = [v for row in xr for v in row]
        sub = [x[i] for i in rows]
        c = [F(sum(a * b for a, b in zip(line, sub))) for line in block_inv.rows]
        if [F(sum(ci * b[t] for ci, b in zip(c, B))) for t in range(len(x))] != x:
            return False, len(seen)
        d = [sum(a * b for a, b in zip(line, sub)) for line in solve]
        y = [F(sum(di * b[t] for di, b in zip(d, B))) for t in range(len(x))]
        if y != [v for row in yr for v in row]:
            return False, len(seen)
    return True, len(seen)


def rho_identity_check_words(phi: Representation, f: MappingClass, rho: RhoMatrix, depth: int = 3) -> bool:
    """Word-by-word version of :func:`rho_identity_check`, substituting ``f_*`` into each word."""
    basis = rho.basis
    for w in all_words(phi.presentation.symbols, depth):
        lhs = basis.combine(rho.matrix.apply(basis.coordinates(evaluate(phi, w))))
        if lhs != evaluate(phi, f(w)):
            return False
    return True


def verify_homomorphism(phi: Representation, f: MappingClass, g: MappingClass,
                        basis: AlgebraBasis | None = None) -> bool:
    basis = span_w_phi(phi) if basis is None else basis
    fg = compose(f, g, check=False)
    return build_rho(phi, fg, basis).matrix == build_rho(phi, f, basis).matrix @ build_rho(phi, g, basis).matrix


def reducibility_witness(basis: AlgebraBasis) -> tuple:
    """Coordinates of ``I``; every ``rho(f)`` fixes this vector."""
    return basis.coordinates(Matrix.identity(basis.field, basis.r))


def kernel_test(phi: Representation, f: MappingClass, basis: AlgebraBasis | None = None) -> bool:
    """``rho(f) = id`` iff ``f . phi = phi``; raises ConsistencyError if the two disagree."""
    rho = build_rho(phi, f, basis)
    trivial = rho.matrix.is_identity()
    strict = in_strict_stabilizer(f, phi)
    if trivial != strict:
        raise ConsistencyError(f"{f.label}: rho trivial={trivial} but strict stabilizer={strict}")
    return trivial


@dataclass(frozen=True)
class WellDefinedness:
    space_dim: int
    conjugators: tuple[Matrix, ...]
    agree: bool


def two_conjugators(space: Sequence[Matrix], cap: int = DEFAULT_SEARCH_CAP) -> tuple[Matrix, ...]:
    """Two invertible, non-proportional elements of the span of ``space`` (or fewer if none)."""
    r = space[0].shape[0]
    F = space[0].field
    found: list[Matrix] = []
    for width in (r + 1, r + 2, r + 3):
        for A in invertible_points(space, cap, width=width):
            if not found:
                found.append(A)
            elif rank(Matrix(F, (found[0].vec(), A.vec()))) == 2:
                return (found[0], A)
        if F.p is not None and F.p <= r:
            break
    return tuple(found)


def well_definedness_check(phi: Representation, f: MappingClass, basis: AlgebraBasis | None = None,
                           cap: int = DEFAULT_SEARCH_CAP) -> WellDefinedness:
    basis = span_w_phi(phi) if basis is None else basis
    space = conjugator_space(phi, pullback(f, phi))
    if len(space) < 2:
        return WellDefinedness(len(space), (), True)
    pair = two_conjugators(space, cap)
    if len(pair) < 2:
        return WellDefinedness(len(space), pair, True)
    m1, m2 = (conjugation_on_span(basis, A) for A in pair)
    return WellDefinedness(len(space), pair, m1 == m2)


def irreducibility_dim_test(phi: Representation) -> bool:
    return span_w_phi(phi).dim == phi.r * phi.r


def conjugation_operator(A: Matrix) -> Matrix:
    """``X -> A X A^-1`` as an ``r^2 x r^2`` matrix on row-major ``vec(X)``."""
    F, r = A.field, A.shape[0]
    Ainv = A.inverse()
    cols = [(A @ Matrix.unit(F, r, i, j) @ Ainv).vec() for i in range(r) for j in range(r)]
    return Matrix(F, tuple(zip(*cols)))


def inner_from_algebra_automorphism(Fmap: Matrix) -> Matrix:
    """Recover ``A`` with ``F(X) = A X A^-1`` from a unital algebra automorphism of End(r)."""
    field = Fmap.field
    n = Fmap.shape[0]
    r = next((k for k in range(1, n + 1) if k * k == n), None)
    if r is None or not Fmap.is_square:
        raise NotAnAutomorphism("map must be square of size r^2")
    if not Fmap.det():
        raise NotAnAutomorphism("map is not invertible")

    def image(i, j) -> Matrix:
        return Matrix.from_vec(field, Fmap.apply(Matrix.unit(field, r, i, j).vec()), r)

    E = {(i, j): image(i, j) for i in range(r) for j in range(r)}
    I = Matrix.identity(field, r)
    Z = Matrix.zeros(field, r)
    if Matrix.from_vec(field, Fmap.apply(I.vec()), r) != I:
        raise NotAnAutomorphism("map is not unital")
    for (i, j), X in E.items():
        for (k, l), Y in E.items():
            want = E[(i, l)] if j == k else Z
            if X @ Y != want:
                raise NotAnAutomorphism("map does not preserve products of matrix units")
    # F(E_11) = (A e_1)(e_1^T A^-1); any nonzero column is a multiple of A e_1
    E11 = E[(0, 0)]
    col = next(j for j in range(r) if any(E11[i, j] for i in range(r)))
    v = [E11[i, col] for i in range(r)]
    cols = [E[(i, 0)].apply(v) for i in range(r)]
    A = Matrix(field, tuple(zip(*cols)))
    if conjugation_operator(A) != Fmap:
        raise ConsistencyError("recovered conjugator does not reproduce the automorphism")
    return A
