"""Co-invariants of H_1 under a set of mapping classes, and fixed rank-one characters."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

from .linalg import IntMatrix, is_prime, smith_normal_form
from .mapping import GeneratorSet, MappingClass, homology_action, homology_rank
from .words import Presentation


@dataclass(frozen=True)
class CoinvariantReport:
    rank: int
    stacked: IntMatrix
    smith_diagonal: tuple[int, ...]

    @property
    def free_rank(self) -> int:
        return self.rank - sum(1 for d in self.smith_diagonal if d)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.smith_diagonal if d > 1)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def torsion_primes(self) -> tuple[int, ...]:
        primes = set()
        for d in self.torsion:
            k = 2
            while d > 1:
                while d % k == 0:
                    primes.add(k)
                    d //= k
                k += 1
        return tuple(sorted(primes))

    def describe(self) -> str:
        if self.is_zero:
            return "0"
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "smith_diagonal": [str(d) for d in self.smith_diagonal],
            "free_rank": self.free_rank,
            "torsion": [str(d) for d in self.torsion],
            "coinvariants": self.describe(),
        }


def _classes(S: GeneratorSet | Iterable[MappingClass]) -> list[MappingClass]:
    return list(S.classes if isinstance(S, GeneratorSet) else S)


def coinvariants(S: GeneratorSet | Iterable[MappingClass]) -> CoinvariantReport:
    """``H_1 / span{(H(f) - I) v}`` read off the Smith form of ``[H(f1)-I | H(f2)-I | ...]``."""
    classes = _classes(S)
    p = classes[0].presentation
    h = homology_rank(p)
    I = IntMatrix.identity(h)
    blocks = [homology_action(f) - I for f in classes]
    rows = tuple(tuple(x for b in blocks for x in b.rows[i]) for i in range(h))
    stacked = IntMatrix(rows, h * len(blocks))
    d, _, _ = smith_normal_form(stacked)
    d = d + [0] * (h - len(d))
    return CoinvariantReport(h, stacked, tuple(d))


def primitive_root(q: int) -> int:
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if q == 2:
        return 1
    m = q - 1
    factors = {k for k in range(2, m + 1) if m % k == 0 and is_prime(k)}
    return next(z for z in range(2, q) if all(pow(z, m // f, q) != 1 for f in factors))


def _extend_to_symbols(values: tuple[int, ...], p: Presentation, q: int) -> tuple[int, ...]:
    if p.n == 0:
        return values
    prod = 1
    for v in values[2 * p.g:]:
        prod = prod * v % q
    return values + (pow(prod, -1, q),)


def character_fixed_points(S: GeneratorSet | Iterable[MappingClass], q: int) -> list[tuple[int, ...]]:
    """All characters ``pi -> GF(q)^x`` (through H_1) fixed by every class of ``S``.

    A character is ``x -> z^e(x)`` for a primitive root ``z``; it is fixed iff
    ``(H(f)^T - I) e = 0 mod q-1`` for all ``f``. Solved through the Smith form
    of the stacked system. Each character is returned as its values on all
    ``2g + n`` generators (``c_n`` is the inverse of ``c1 ... c_(n-1)``).
    """
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    classes = _classes(S)
    p = classes[0].presentation
    h = homology_rank(p)
    m = q - 1
    I = IntMatrix.identity(h)
    rows = []
    for f in classes:
        rows += list((homology_action(f).transpose() - I).rows)
    K = IntMatrix(tuple(rows), h)
    d, _, V = smith_normal_form(K)
    choices = []
    for i in range(h):
        di = d[i] if i < len(d) else 0
        gi = math.gcd(di, m)
        step = m // gi
        choices.append([t * step for t in range(gi)])
    z = primitive_root(q)
    out = set()
    for e_prime in itertools.product(*choices):
        e = tuple(sum(V[i, j] * e_prime[j] for j in range(h)) % m for i in range(h))
        vals = tuple(pow(z, x, q) for x in e)
        out.add(_extend_to_symbols(vals, p, q))
    return sorted(out)


def is_trivial_character(chi: tuple[int, ...]) -> bool:
    return all(v == 1 for v in chi)
