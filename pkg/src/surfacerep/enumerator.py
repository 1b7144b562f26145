"""Exhaustive search over Hom(pi, GL(r, p)) for tiny parameters.

Group elements are indexed once (sorted flat tuples) and all arithmetic runs
on index tables. Deformation classes are orbits under direct conjugation by
every element of GL(r, p). Findings are empirical statements over GF(p).
"""
from __future__ import annotations

import itertools
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .linalg import CapExceeded, Field, Matrix
from .mapping import GeneratorSet, MappingClass
from .repspace import Representation
from .words import Presentation, Word


@dataclass(frozen=True)
class SearchSpec:
    g: int
    n: int
    r: int
    p: int
    max_tuples: int = 2_000_000
    max_orbit: int = 100_000
    time_budget: float | None = None
    mode: str = "class"
    workers: int = 1

    def __post_init__(self):
        if self.mode not in ("class", "hom"):
            raise ValueError("mode must be 'class' or 'hom'")
        Field(self.p)

    @property
    def presentation(self) -> Presentation:
        return Presentation.surface(self.g, self.n)

    def tuple_count(self) -> int:
        return gl_order(self.r, self.p) ** (2 * self.g + self.n)

    def check_feasible(self) -> None:
        need = self.tuple_count()
        if need > self.max_tuples:
            raise CapExceeded("enumerate_homs", self.max_tuples, need)


def gl_order(r: int, p: int) -> int:
    out = 1
    for k in range(r):
        out *= p**r - p**k
    return out


class GLTables:
    """Multiplication, inverse and conjugation tables for GL(r, p) on element indices."""

    def __init__(self, r: int, p: int):
        self.r, self.p = r, p
        F = Field(p)
        elems = []
        for flat in itertools.product(range(p), repeat=r * r):
            if Matrix.from_vec(F, flat, r).det():
                elems.append(flat)
        self.elements: list[tuple[int, ...]] = elems
        self.index = {e: i for i, e in enumerate(elems)}
        self.identity = self.index[Matrix.identity(F, r).vec()]
        N = len(elems)
        self.mul = [[self.index[self._mul(a, b)] for b in elems] for a in elems]
        self.inv = [row.index(self.identity) for row in self.mul]
        # conj[a][x] = a x a^-1
        self.conj = [[self.mul[self.mul[a][x]][self.inv[a]] for x in range(N)] for a in range(N)]

    def _mul(self, a, b):
        r, p = self.r, self.p
        return tuple(sum(a[i * r + k] * b[k * r + j] for k in range(r)) % p for i in range(r) for j in range(r))

    def __len__(self) -> int:
        return len(self.elements)

    def word(self, hom: Sequence[int], w: Word, symbols: Sequence[str]) -> int:
        pos = {s: i for i, s in enumerate(symbols)}
        out = self.identity
        for sym, sign in w:
            x = hom[pos[sym]]
            out = self.mul[out][x if sign == 1 else self.inv[x]]
        return out

    def matrix(self, i: int) -> Matrix:
        return Matrix.from_vec(Field(self.p), self.elements[i], self.r)


@lru_cache(maxsize=None)
def gl_tables(r: int, p: int) -> GLTables:
    return GLTables(r, p)


def _compile(w: Word, symbols: Sequence[str]) -> tuple[tuple[int, int], ...]:
    pos = {s: i for i, s in enumerate(symbols)}
    return tuple((pos[s], e) for s, e in w)


def _eval(T: GLTables, hom: Sequence[int], prog) -> int:
    mul, inv = T.mul, T.inv
    out = T.identity
    for i, e in prog:
        x = hom[i]
        out = mul[out][x if e == 1 else inv[x]]
    return out


def _shard(args) -> list[tuple[int, ...]]:
    r, p, k, relator, lead = args
    T = gl_tables(r, p)
    N = len(T)
    out = []
    for rest in itertools.product(range(N), repeat=k - 1):
        hom = (lead,) + rest
        if relator and _eval(T, hom, relator) != T.identity:
            continue
        out.append(hom)
    return out


def enumerate_hom_tuples(spec: SearchSpec) -> list[tuple[int, ...]]:
    """Generator tuples (element indices) of every homomorphism, sorted; sharded by leading matrix."""
    spec.check_feasible()
    p = spec.presentation
    T = gl_tables(spec.r, spec.p)
    k = len(p.symbols)
    relator = _compile(p.relator, p.symbols)
    jobs = [(spec.r, spec.p, k, relator, lead) for lead in range(len(T))]
    if spec.workers > 1:
        with ProcessPoolExecutor(spec.workers) as ex:
            shards = list(ex.map(_shard, jobs))
    else:
        shards = [_shard(j) for j in jobs]
    return sorted(h for shard in shards for h in shard)


def to_representation(spec: SearchSpec, hom: Sequence[int]) -> Representation:
    T = gl_tables(spec.r, spec.p)
    p = spec.presentation
    return Representation(p, Field(spec.p), spec.r, {s: T.matrix(i) for s, i in zip(p.symbols, hom)})


def enumerate_homs(spec: SearchSpec) -> Iterator[Representation]:
    for hom in enumerate_hom_tuples(spec):
        yield to_representation(spec, hom)


def canonical(T: GLTables, hom: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least conjugate of the tuple."""
    return min(tuple(row[x] for x in hom) for row in T.conj)


def _canon_shard(args) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    r, p, homs = args
    T = gl_tables(r, p)
    return [(h, canonical(T, h)) for h in homs]


@dataclass
class Atlas:
    g: int
    n: int
    r: int
    p: int
    mode: str
    generators: list[str]
    total_homs: int
    class_count: int
    orbit_histogram: dict[int, int]
    fixed: list[tuple[int, ...]]
    inconclusive: int = 0
    orbits: list[list[tuple[int, ...]]] = field(default_factory=list, repr=False)
    action: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = field(default_factory=dict, repr=False)

    def fixed_representations(self) -> list[Representation]:
        spec = SearchSpec(self.g, self.n, self.r, self.p)
        return [to_representation(spec, h) for h in self.fixed]

    def to_json(self) -> dict:
        spec = SearchSpec(self.g, self.n, self.r, self.p)
        return {
            "g": self.g, "n": self.n, "r": self.r, "p": self.p,
            "mode": self.mode,
            "generators": self.generators,
            "total_homs": self.total_homs,
            "class_count": self.class_count,
            "orbit_count": sum(self.orbit_histogram.values()),
            "orbit_histogram": {str(k): v for k, v in sorted(self.orbit_histogram.items())},
            "fixed_count": len(self.fixed),
            "fixed": [to_representation(spec, h).to_json()["assign"] for h in self.fixed],
            "inconclusive": self.inconclusive,
            "note": f"empirical over GF({self.p})",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


def fixed_point_atlas(spec: SearchSpec, S: GeneratorSet | Sequence[MappingClass]) -> Atlas:
    """Orbits of the action of ``S`` on deformation classes (or on homs in ``hom`` mode)."""
    start = time.monotonic()
    classes = list(S)
    pres = spec.presentation
    T = gl_tables(spec.r, spec.p)
    homs = enumerate_hom_tuples(spec)

    if spec.mode == "class":
        if spec.workers > 1:
            chunks = [homs[i::spec.workers] for i in range(spec.workers)]
            with ProcessPoolExecutor(spec.workers) as ex:
                pairs = [pr for part in ex.map(_canon_shard, [(spec.r, spec.p, c) for c in chunks]) for pr in part]
        else:
            pairs = _canon_shard((spec.r, spec.p, homs))
        states = sorted({c for _, c in pairs})
        norm = lambda h: canonical(T, h)  # noqa: E731
    else:
        states = homs
        norm = lambda h: tuple(h)  # noqa: E731

    # f . phi = phi o f_*^-1: images of generators are the backward words
    progs = [[_compile(f.backward[s], pres.symbols) for s in pres.symbols] for f in classes]
    action: dict[tuple[tuple[int, ...], int], tuple[int, ...]] = {}
    for st in states:
        for k, prog in enumerate(progs):
            action[(st, k)] = norm(tuple(_eval(T, st, w) for w in prog))
        if spec.time_budget is not None and time.monotonic() - start > spec.time_budget:
            raise CapExceeded("fixed_point_atlas time budget", int(spec.time_budget))

    # each generator permutes states, so orbits are the connected components
    parent = {st: st for st in states}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (st, _), img in action.items():
        a, b = find(st), find(img)
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for st in states:
        comps.setdefault(find(st), []).append(st)
    orbits = sorted(comps.values())
    for orb in orbits:
        if len(orb) > spec.max_orbit:
            raise CapExceeded("fixed_point_atlas orbit size", spec.max_orbit, len(orb))
    hist = Counter(len(o) for o in orbits)
    fixed = [o[0] for o in orbits if len(o) == 1]
    return Atlas(spec.g, spec.n, spec.r, spec.p, spec.mode, [f.label for f in classes], len(homs),
                 len(states), dict(hist), fixed, 0, orbits, action)


def atlas_is_closed(atlas: Atlas) -> bool:
    where = {st: i for i, orb in enumerate(atlas.orbits) for st in orb}
    return all(where[st] == where[img] for (st, _), img in atlas.action.items())
