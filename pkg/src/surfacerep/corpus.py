"""Standard test representations: trivial, diagonal and a unipotent pair spanning End(2)."""
from __future__ import annotations

from .linalg import QQ, Field, Matrix
from .repspace import Representation
from .words import Presentation

UPPER = ((1, 1), (0, 1))
LOWER = ((1, 0), (1, 1))


def trivial_rep(p: Presentation, r: int = 2, field: Field = QQ) -> Representation:
    return Representation.trivial(p, field, r)


def diagonal_rep(p: Presentation, field: Field = QQ) -> Representation:
    """``a1 -> diag(1, 2)``, everything else to I; W is the diagonal algebra."""
    I = Matrix.identity(field, 2)
    assign = {s: I for s in p.symbols}
    assign["a1"] = Matrix.from_rows(field, ((1, 0), (0, 2)))
    return Representation(p, field, 2, assign)


def unipotent_pair_rep(p: Presentation, field: Field = QQ) -> Representation:
    """``a1, b1`` go to the elementary unipotents, which generate all of End(2).

    For a closed surface of genus at least 2 we also send ``a2 -> L, b2 -> U`` so
    that ``[a2, b2] = [a1, b1]^-1`` and the relator holds.
    """
    if p.g == 0 or (p.n == 0 and p.g < 2):
        raise ValueError("needs g >= 1 with a puncture, or g >= 2")
    I = Matrix.identity(field, 2)
    U, L = Matrix.from_rows(field, UPPER), Matrix.from_rows(field, LOWER)
    assign = {s: I for s in p.symbols}
    assign["a1"], assign["b1"] = U, L
    if p.n == 0:
        assign["a2"], assign["b2"] = L, U
    return Representation(p, field, 2, assign)


def standard_corpus(p: Presentation, field: Field = QQ) -> dict[str, Representation]:
    return {
        "trivial": trivial_rep(p, 2, field),
        "diagonal": diagonal_rep(p, field),
        "full": unipotent_pair_rep(p, field),
    }
