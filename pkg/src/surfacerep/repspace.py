"""Representations of the surface group, the mapping class action, and stabilizers.

The action is ``(f . phi)(gamma) = phi(f_*^-1 gamma)``. Conjugators returned by
:func:`in_stabilizer_class` satisfy ``phi(f_* gamma) = A phi(gamma) A^-1``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .linalg import DEFAULT_SEARCH_CAP, CapExceeded, Field, Matrix, invertible_in_span, mul_rows, nullspace
from .mapping import GeneratorSet, MappingClass, inverse
from .words import Presentation, Word, all_words


class InvalidRepresentation(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Representation:
    presentation: Presentation
    field: Field
    r: int
    assign: Mapping[str, Matrix]

    def __post_init__(self):
        syms = self.presentation.symbols
        if set(self.assign) != set(syms):
            raise InvalidRepresentation(f"assignment must cover exactly {list(syms)}")
        for s in syms:
            m = self.assign[s]
            if m.field != self.field or m.shape != (self.r, self.r):
                raise InvalidRepresentation(f"{s}: expected {self.r}x{self.r} over {self.field}")
            if not m.det():
                raise InvalidRepresentation(f"{s}: matrix is singular")
        if self.presentation.relator and not evaluate(self, self.presentation.relator).is_identity():
            raise InvalidRepresentation("relator does not evaluate to the identity")

    @classmethod
    def from_rows(cls, p: Presentation, field: Field, assign: Mapping[str, Sequence[Sequence]]) -> Representation:
        mats = {s: Matrix.from_rows(field, rows) for s, rows in assign.items()}
        r = next(iter(mats.values())).shape[0] if mats else 1
        return cls(p, field, r, mats)

    @classmethod
    def trivial(cls, p: Presentation, field: Field, r: int) -> Representation:
        I = Matrix.identity(field, r)
        return cls(p, field, r, {s: I for s in p.symbols})

    @cached_property
    def inverses(self) -> dict[str, Matrix]:
        return {s: m.inverse() for s, m in self.assign.items()}

    def images(self) -> list[Matrix]:
        return [self.assign[s] for s in self.presentation.symbols]

    def key(self) -> tuple:
        return tuple(self.assign[s].vec() for s in self.presentation.symbols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Representation) and self.presentation == other.presentation
                and self.field == other.field and self.key() == other.key())

    def __hash__(self) -> int:
        return hash(self.key())

    def is_trivial(self) -> bool:
        return all(m.is_identity() for m in self.assign.values())

    def satisfies_boundary(self) -> bool:
        """Whether the boundary word maps to I, i.e. phi factors through the closed-up surface."""
        return evaluate(self, self.presentation.boundary_word()).is_identity()

    def conjugate(self, A: Matrix) -> Representation:
        Ainv = A.inverse()
        return Representation(self.presentation, self.field, self.r,
                              {s: A @ m @ Ainv for s, m in self.assign.items()})

    def to_json(self) -> dict:
        out = {"g": self.presentation.g, "n": self.presentation.n}
        out.update(self.field.to_json())
        out["r"] = self.r
        out["assign"] = {s: self.assign[s].to_json() for s in self.presentation.symbols}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> Representation:
        p = Presentation.surface(int(data["g"]), int(data["n"]))
        F = Field.from_json(data)
        mats = {s: Matrix.from_json(F, rows) for s, rows in data["assign"].items()}
        r = int(data.get("r", next(iter(mats.values())).shape[0]))
        return cls(p, F, r, mats)


def evaluate(phi: Representation, w: Word) -> Matrix:
    out = Matrix.identity(phi.field, phi.r)
    inv = phi.inverses if any(e == -1 for _, e in w) else None
    for sym, sign in w:
        out = out @ (phi.assign[sym] if sign == 1 else inv[sym])
    return out


def _pull(phi: Representation, images: Mapping[str, Word]) -> Representation:
    syms = phi.presentation.symbols
    return Representation(phi.presentation, phi.field, phi.r, {s: evaluate(phi, images[s]) for s in syms})


def act(f: MappingClass, phi: Representation) -> Representation:
    """``f . phi = phi o f_*^-1``."""
    if f.presentation != phi.presentation:
        raise ValueError("mapping class and representation live on different surfaces")
    return _pull(phi, f.backward)


def pullback(f: MappingClass, phi: Representation) -> Representation:
    """``phi o f_*``, i.e. ``f^-1 . phi``."""
    if f.presentation != phi.presentation:
        raise ValueError("mapping class and representation live on different surfaces")
    return _pull(phi, f.forward)


def _compatible(phi: Representation, psi: Representation) -> None:
    if phi.presentation != psi.presentation or phi.field != psi.field or phi.r != psi.r:
        raise ValueError("representations differ in surface, field or dimension")


_SAMPLES: dict[tuple, list[Word]] = {}


def trace_sample(p: Presentation, depth: int = 3) -> list[Word]:
    key = (p.alphabet, depth)
    if key not in _SAMPLES:
        _SAMPLES[key] = list(all_words(p.symbols, depth))
    return _SAMPLES[key]


def trace_signature(phi: Representation, depth: int = 3) -> tuple:
    """Traces of ``phi`` on every reduced word of length ``<= depth`` (shortlex order)."""
    F, p = phi.field, phi.field.p
    gens = {}
    for s in phi.presentation.symbols:
        gens[(s, 1)] = phi.assign[s].rows
        gens[(s, -1)] = phi.inverses[s].rows
    # shortlex order lists every prefix before its extensions
    images = {(): Matrix.identity(F, phi.r).rows}
    out = []
    for w in trace_sample(phi.presentation, depth):
        L = w.letters
        X = images[L] = mul_rows(images[L[:-1]], gens[L[-1]], p) if L else images[()]
        out.append(F(sum(X[i][i] for i in range(phi.r))))
    return tuple(out)


def conjugator_space(phi: Representation, psi: Representation) -> list[Matrix]:
    """Basis of ``{A : A phi(x) = psi(x) A for every generator x}``."""
    _compatible(phi, psi)
    F, r = phi.field, phi.r
    eqs = []
    for s in phi.presentation.symbols:
        P, Q = phi.assign[s], psi.assign[s]
        for i in range(r):
            for j in range(r):
                row = [F.zero] * (r * r)
                for k in range(r):
                    # (A P)_ij = sum_k A_ik P_kj ; (Q A)_ij = sum_k Q_ik A_kj
                    row[i * r + k] = F.add(row[i * r + k], P[k, j])
                    row[k * r + j] = F.sub(row[k * r + j], Q[i, k])
                eqs.append(tuple(row))
    if not eqs:
        return [Matrix.unit(F, r, i, j) for i in range(r) for j in range(r)]
    basis = nullspace(Matrix(F, tuple(eqs)))
    return [Matrix.from_vec(F, v, r) for v in basis]


def conjugate_witness(phi: Representation, psi: Representation, cap: int = DEFAULT_SEARCH_CAP,
                      prefilter_depth: int = 3) -> Matrix | None:
    """An invertible ``A`` with ``A phi(x) A^-1 = psi(x)`` for all generators, or None.

    Equal representations get the identity. Raises :class:`CapExceeded` when
    the invertible-point search is too large.
    """
    _compatible(phi, psi)
    if phi.key() == psi.key():
        return Matrix.identity(phi.field, phi.r)
    if prefilter_depth and trace_signature(phi, prefilter_depth) != trace_signature(psi, prefilter_depth):
        return None
    A = invertible_in_span(conjugator_space(phi, psi), cap)
    if A is not None:
        assert check_conjugator(A, phi, psi)
    return A


def check_conjugator(A: Matrix, phi: Representation, psi: Representation) -> bool:
    return bool(A.det()) and all(
        A @ phi.assign[s] == psi.assign[s] @ A for s in phi.presentation.symbols
    )


def in_stabilizer_class(f: MappingClass, phi: Representation, cap: int = DEFAULT_SEARCH_CAP) -> Matrix | None:
    """Witness ``A_f`` for ``f . [phi] = [phi]``: ``phi(f_* x) = A_f phi(x) A_f^-1``."""
    return conjugate_witness(phi, pullback(f, phi), cap)


def in_strict_stabilizer(f: MappingClass, phi: Representation) -> bool:
    return act(f, phi) == phi


def is_global_fixed_point(phi: Representation, S: GeneratorSet | Iterable[MappingClass],
                          cap: int = DEFAULT_SEARCH_CAP) -> bool:
    """True iff every class of ``S`` fixes ``[phi]``. Raises CapExceeded if undecided."""
    undecided: CapExceeded | None = None
    for f in S:
        try:
            if in_stabilizer_class(f, phi, cap) is None:
                return False
        except CapExceeded as exc:
            undecided = exc
    if undecided is not None:
        raise undecided
    return True


@dataclass
class OrbitReport:
    mode: str
    members: list[Representation]
    complete: bool
    cap: int
    inconclusive: int = 0
    edges: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "size": self.size,
            "complete": self.complete,
            "cap": self.cap,
            "inconclusive_comparisons": self.inconclusive,
        }


def orbit(phi: Representation, S: GeneratorSet | Iterable[MappingClass], cap: int = 10_000,
          mode: str = "hom", search_cap: int = DEFAULT_SEARCH_CAP) -> OrbitReport:
    """Breadth-first orbit of ``phi`` under ``S`` and inverses.

    ``mode="hom"`` compares states exactly; ``mode="class"`` compares up to
    conjugacy (trace signature bucket, then a conjugator search).
    ``edges[(i, k)]`` is the index of the image of member ``i`` under the
    ``k``-th acting class.
    """
    if mode not in ("hom", "class"):
        raise ValueError("mode must be 'hom' or 'class'")
    gens = [h for f in S for h in (f, inverse(f))]
    members = [phi]
    index: dict = {}
    buckets: dict[tuple, list[int]] = {}
    inconclusive = 0

    def lookup(psi: Representation) -> int | None:
        nonlocal inconclusive
        if mode == "hom":
            return index.get(psi.key())
        for i in buckets.get(trace_signature(psi), []):
            try:
                if conjugate_witness(members[i], psi, search_cap, prefilter_depth=0) is not None:
                    return i
            except CapExceeded:
                inconclusive += 1
        return None

    def register(psi: Representation, i: int) -> None:
        if mode == "hom":
            index[psi.key()] = i
        else:
            buckets.setdefault(trace_signature(psi), []).append(i)

    register(phi, 0)
    edges: dict[tuple[int, int], int] = {}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for k, f in enumerate(gens):
            psi = act(f, members[i])
            j = lookup(psi)
            if j is None:
                if len(members) >= cap:
                    return OrbitReport(mode, members, False, cap, inconclusive, edges)
                j = len(members)
                members.append(psi)
                register(psi, j)
                queue.append(j)
            edges[(i, k)] = j
    return OrbitReport(mode, members, True, cap, inconclusive, edges)
