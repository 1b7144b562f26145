"""Mapping classes as explicit automorphisms of the surface group.

A mapping class stores its action ``f_*`` on generators together with an
explicit inverse. Composition follows ``(f g)_* = f_* . g_*``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .linalg import IntMatrix
from .words import Presentation, Word, WordError, abelianize, free_conjugate, is_identity_in_group


class InvalidMappingClass(ValueError):
    pass


def _substitute(images: Mapping[str, Word], w: Word) -> Word:
    letters = []
    for sym, sign in w:
        img = images[sym]
        letters.extend(img.letters if sign == 1 else img.inverse().letters)
    return Word(tuple(letters))


@dataclass(frozen=True, eq=False)
class MappingClass:
    presentation: Presentation
    forward: Mapping[str, Word]
    backward: Mapping[str, Word]
    label: str = ""
    pure: bool = True

    @classmethod
    def from_strings(cls, p: Presentation, forward: Mapping[str, str], backward: Mapping[str, str],
                     label: str = "", pure: bool = True) -> MappingClass:
        # generators left out are fixed
        def build(m):
            extra = set(m) - set(p.symbols)
            if extra:
                raise WordError(f"unknown generators {sorted(extra)}")
            return {s: p.parse(m[s]) if s in m else Word.gen(s) for s in p.symbols}
        return cls(p, build(forward), build(backward), label, pure)

    @classmethod
    def identity(cls, p: Presentation) -> MappingClass:
        ident = {s: Word.gen(s) for s in p.symbols}
        return cls(p, ident, dict(ident), "id")

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def key(self) -> tuple:
        return tuple(self.forward[s].letters for s in self.presentation.symbols)

    def __eq__(self, other) -> bool:
        return isinstance(other, MappingClass) and self.presentation == other.presentation and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        syms = self.presentation.symbols
        return {
            "label": self.label,
            "forward": {s: str(self.forward[s]) for s in syms},
            "backward": {s: str(self.backward[s]) for s in syms},
            "pure": self.pure,
        }

    @classmethod
    def from_json(cls, data: Mapping, p: Presentation | None = None) -> MappingClass:
        if p is None:
            p = Presentation.surface(int(data["g"]), int(data["n"]))
        return cls.from_strings(p, data["forward"], data["backward"], data.get("label", ""), bool(data.get("pure", True)))

    def __repr__(self) -> str:
        return f"MappingClass({self.label!r}, {self.presentation.alphabet})"


def apply(f: MappingClass, w: Word) -> Word:
    f.presentation.check_word(w)
    return _substitute(f.forward, w)


def apply_inverse(f: MappingClass, w: Word) -> Word:
    f.presentation.check_word(w)
    return _substitute(f.backward, w)


def inverse(f: MappingClass) -> MappingClass:
    label = f.label[:-3] if f.label.endswith("^-1") else f.label + "^-1"
    return MappingClass(f.presentation, f.backward, f.forward, label, f.pure)


def _compose_raw(f: MappingClass, g: MappingClass) -> MappingClass:
    if f.presentation != g.presentation:
        raise ValueError("mapping classes act on different surfaces")
    syms = f.presentation.symbols
    fwd = {s: _substitute(f.forward, g.forward[s]) for s in syms}
    bwd = {s: _substitute(g.backward, f.backward[s]) for s in syms}
    return MappingClass(f.presentation, fwd, bwd, f"{f.label}*{g.label}", f.pure and g.pure)


def compose(f: MappingClass, g: MappingClass, check: bool = True) -> MappingClass:
    """``(f g)_* = f_* . g_*``; ``g`` acts first."""
    h = _compose_raw(f, g)
    if check:
        validate(h).raise_for_failures()
    return h


def power(f: MappingClass, k: int) -> MappingClass:
    base = f if k >= 0 else inverse(f)
    out = MappingClass.identity(f.presentation)
    for _ in range(abs(k)):
        out = _compose_raw(out, base)
    return out


def point_push(alpha: Word, p: Presentation) -> MappingClass:
    """The inner automorphism ``x -> alpha x alpha^-1``."""
    p.check_word(alpha)
    inv = alpha.inverse()
    fwd = {s: alpha * Word.gen(s) * inv for s in p.symbols}
    bwd = {s: inv * Word.gen(s) * alpha for s in p.symbols}
    return MappingClass(p, fwd, bwd, f"push({alpha})")


def maps_equal_in_group(f: MappingClass, g: MappingClass) -> bool:
    p = f.presentation
    return all(is_identity_in_group(f.forward[s] * g.forward[s].inverse(), p) for s in p.symbols)


def birman_relation_check(f: MappingClass, gamma: Word) -> bool:
    p = f.presentation
    lhs = point_push(apply(f, gamma), p)
    rhs = _compose_raw(f, _compose_raw(point_push(gamma, p), inverse(f)))
    return maps_equal_in_group(lhs, rhs)


def homology_rank(p: Presentation) -> int:
    return 2 * p.g + max(p.n - 1, 0)


def homology_basis(p: Presentation) -> tuple[str, ...]:
    return p.symbols[: homology_rank(p)]


def homology_vector(w: Word, p: Presentation) -> tuple[int, ...]:
    """Class of ``w`` in H_1 on the basis a1, b1, ..., c1..c_(n-1); ``c_n`` is ``-(c1 + ... + c_(n-1))``."""
    v = list(abelianize(w, p.alphabet))
    if p.n >= 1:
        last = v.pop()
        for j in range(2 * p.g, len(v)):
            v[j] -= last
    return tuple(v)


def homology_action(f: MappingClass) -> IntMatrix:
    p = f.presentation
    cols = [homology_vector(f.forward[s], p) for s in homology_basis(p)]
    h = homology_rank(p)
    return IntMatrix(tuple(zip(*cols)) if cols else (), h)


def intersection_form(g: int) -> IntMatrix:
    rows = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return IntMatrix(tuple(map(tuple, rows)), 2 * g)


def symplectic_check(f: MappingClass) -> bool:
    p = f.presentation
    if p.n != 0:
        raise ValueError("symplectic check is defined for closed surfaces only")
    M = homology_action(f)
    J = intersection_form(p.g)
    return M.transpose() @ J @ M == J


@dataclass
class ValidationReport:
    label: str
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def raise_for_failures(self) -> None:
        if not self.ok:
            raise InvalidMappingClass(f"{self.label}: failed {', '.join(self.failures())}")


def validate(f: MappingClass) -> ValidationReport:
    """Inverse, relator (boundary word when punctured), purity and symplectic checks."""
    p = f.presentation
    rep = ValidationReport(f.label)
    syms = p.symbols
    if set(f.forward) != set(syms) or set(f.backward) != set(syms):
        rep.checks["generators"] = False
        return rep
    gens = [Word.gen(s) for s in syms]
    rep.checks["inverse"] = all(
        is_identity_in_group(_substitute(f.backward, f.forward[s]) * x.inverse(), p)
        and is_identity_in_group(_substitute(f.forward, f.backward[s]) * x.inverse(), p)
        for s, x in zip(syms, gens)
    )
    rel = p.boundary_word() if p.is_free else p.relator
    if rel:
        img = _substitute(f.forward, rel)
        rep.checks["relator"] = free_conjugate(img, rel) or free_conjugate(img, rel.inverse())
    if f.pure:
        rep.checks["purity"] = all(
            free_conjugate(f.forward[f"c{j}"], Word.gen(f"c{j}")) for j in range(1, p.n + 1)
        )
    if p.n == 0:
        rep.checks["symplectic"] = symplectic_check(f)
    return rep


@dataclass
class GeneratorSet:
    presentation: Presentation
    classes: list[MappingClass]
    provenance: str = ""

    def __iter__(self):
        return iter(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def with_inverses(self) -> list[MappingClass]:
        return [h for f in self.classes for h in (f, inverse(f))]

    def validate(self) -> list[ValidationReport]:
        return [validate(f) for f in self.classes]

    def to_json(self) -> dict:
        return {
            "g": self.presentation.g,
            "n": self.presentation.n,
            "provenance": self.provenance,
            "classes": [f.to_json() for f in self.classes],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> GeneratorSet:
        p = Presentation.surface(int(data["g"]), int(data["n"]))
        classes = [MappingClass.from_json(c, p) for c in data["classes"]]
        return cls(p, classes, data.get("provenance", ""))


SHIPPED = [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1), (0, 3)]


def shipped_genset(g: int, n: int) -> GeneratorSet:
    if (g, n) not in SHIPPED:
        raise KeyError(f"no shipped generator set for g={g}, n={n}")
    text = resources.files("surfacerep.data").joinpath(f"genset_g{g}_n{n}.json").read_text()
    return GeneratorSet.from_json(json.loads(text))


def load_genset(path: str | Path) -> GeneratorSet:
    return GeneratorSet.from_json(json.loads(Path(path).read_text()))


def genset_from_classes(p: Presentation, classes: Iterable[MappingClass], provenance: str = "") -> GeneratorSet:
    return GeneratorSet(p, list(classes), provenance)
