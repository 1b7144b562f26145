"""Words in surface group generators and the word problem.

Letters are ``(symbol, sign)`` pairs with ``sign`` in ``{+1, -1}``. The text
format is whitespace separated tokens with an apostrophe marking an inverse,
e.g. ``"a1 b1 a1' b1'"``.

For ``n >= 1`` punctures the group is stored as the free group on all
``2g + n`` symbols. For ``n == 0`` the single relator is
``[a1, b1] ... [ag, bg]`` with ``[x, y] = x y x^-1 y^-1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Letter = tuple[str, int]


class WordError(ValueError):
    pass


class UnsupportedPresentation(WordError):
    pass


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for sym, sign in letters:
        if out and out[-1][0] == sym and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((sym, sign))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word. Construct through :func:`free_reduce` or ``Word.parse``."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> Word:
        letters = []
        for tok in text.split():
            sign = 1
            while tok.endswith("'"):
                tok = tok[:-1]
                sign = -sign
            if not tok:
                raise WordError("empty token")
            if alphabet is not None and tok not in alphabet.index:
                raise WordError(f"unknown symbol {tok!r} for {alphabet}")
            letters.append((tok, sign))
        return cls(tuple(letters))

    @classmethod
    def gen(cls, sym: str, sign: int = 1) -> Word:
        return cls(((sym, sign),))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def inverse(self) -> Word:
        return Word(tuple((s, -e) for s, e in reversed(self.letters)))

    def symbols(self) -> set[str]:
        return {s for s, _ in self.letters}

    def __str__(self) -> str:
        return " ".join(s if e == 1 else s + "'" for s, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def free_reduce(letters: Iterable[Letter] | str, alphabet: Alphabet | None = None) -> Word:
    if isinstance(letters, str):
        return Word.parse(letters, alphabet)
    letters = tuple(letters)
    if alphabet is not None:
        for sym, _ in letters:
            if sym not in alphabet.index:
                raise WordError(f"unknown symbol {sym!r} for {alphabet}")
    return Word(letters)


def invert(w: Word) -> Word:
    return w.inverse()


def commutator(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with a cyclically reduced core."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return Word(letters[i : j + 1]), Word(letters[:i])


def free_conjugate(u: Word, v: Word) -> bool:
    cu, _ = cyclic_reduce(u)
    cv, _ = cyclic_reduce(v)
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    doubled = cu.letters + cu.letters
    target = cv.letters
    m = len(target)
    return any(doubled[k : k + m] == target for k in range(m))


@dataclass(frozen=True)
class Alphabet:
    g: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.n < 0:
            raise WordError("genus and puncture count must be non-negative")

    @cached_property
    def symbols(self) -> tuple[str, ...]:
        syms: list[str] = []
        for i in range(1, self.g + 1):
            syms += [f"a{i}", f"b{i}"]
        syms += [f"c{j}" for j in range(1, self.n + 1)]
        return tuple(syms)

    @cached_property
    def index(self) -> dict[str, int]:
        return {s: k for k, s in enumerate(self.symbols)}

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return f"Alphabet(g={self.g}, n={self.n})"


def surface_relator(g: int) -> Word:
    w = Word()
    for i in range(1, g + 1):
        w = w * commutator(Word.gen(f"a{i}"), Word.gen(f"b{i}"))
    return w


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relator: Word = field(default_factory=Word)

    @classmethod
    def surface(cls, g: int, n: int = 0) -> Presentation:
        alpha = Alphabet(g, n)
        if n == 0:
            if g == 0:
                raise UnsupportedPresentation("the sphere (g = 0, n = 0) has trivial fundamental group")
            return cls(alpha, surface_relator(g))
        return cls(alpha)

    @property
    def g(self) -> int:
        return self.alphabet.g

    @property
    def n(self) -> int:
        return self.alphabet.n

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.alphabet.symbols

    @property
    def is_free(self) -> bool:
        return not self.relator

    def boundary_word(self) -> Word:
        """``[a1,b1]...[ag,bg] c1 ... cn``: trivial in the closed surface, a derived word otherwise."""
        w = surface_relator(self.g)
        for j in range(1, self.n + 1):
            w = w * Word.gen(f"c{j}")
        return w

    def parse(self, text: str) -> Word:
        return Word.parse(text, self.alphabet)

    def check_word(self, w: Word) -> None:
        for sym, _ in w:
            if sym not in self.alphabet.index:
                raise WordError(f"unknown symbol {sym!r} for {self.alphabet}")

    def to_json(self) -> dict:
        return {"g": self.g, "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> Presentation:
        return cls.surface(int(data["g"]), int(data["n"]))


def abelianize(w: Word, alphabet: Alphabet) -> tuple[int, ...]:
    vec = [0] * len(alphabet)
    for sym, sign in w:
        vec[alphabet.index[sym]] += sign
    return tuple(vec)


class DehnReducer:
    """Greedy Dehn reduction for the closed genus ``g >= 2`` surface group.

    A piece ``u`` of a cyclic rotation ``u v`` of the relator (or its inverse)
    with ``len(u) > len(r) / 2`` is replaced by ``v^-1``. Matches are taken
    leftmost first, longest first.
    """

    def __init__(self, relator: Word):
        rel = relator.letters
        self.length = len(rel)
        rotations: set[tuple[Letter, ...]] = set()
        for base in (rel, relator.inverse().letters):
            for k in range(len(base)):
                rotations.add(base[k:] + base[:k])
        half = self.length // 2
        # prefix -> replacement, for every prefix longer than half the relator
        self.table: dict[tuple[Letter, ...], tuple[Letter, ...]] = {}
        for rot in sorted(rotations):
            for m in range(half + 1, self.length + 1):
                u, v = rot[:m], rot[m:]
                repl = Word(v).inverse().letters
                prev = self.table.get(u)
                if prev is None or len(repl) < len(prev):
                    self.table[u] = repl
        self.max_len = self.length

    def step(self, letters: tuple[Letter, ...]) -> tuple[Letter, ...] | None:
        for i in range(len(letters)):
            top = min(self.max_len, len(letters) - i)
            for m in range(top, self.length // 2, -1):
                repl = self.table.get(letters[i : i + m])
                if repl is not None:
                    return _reduce(letters[:i] + repl + letters[i + m :])
        return None

    def reduce(self, w: Word) -> Word:
        letters = w.letters
        while True:
            nxt = self.step(letters)
            if nxt is None:
                return Word(letters)
            letters = nxt

    def reduce_cyclic(self, w: Word) -> Word:
        """Dehn reduction applied to all cyclic rotations until none shortens."""
        core, _ = cyclic_reduce(self.reduce(w))
        changed = True
        while changed and core:
            changed = False
            L = core.letters
            for k in range(len(L)):
                rot = Word(L[k:] + L[:k])
                red = self.reduce(rot)
                red, _ = cyclic_reduce(red)
                if len(red) < len(core):
                    core, changed = red, True
                    break
        return core


_REDUCERS: dict[int, DehnReducer] = {}


def dehn_reducer(g: int) -> DehnReducer:
    if g not in _REDUCERS:
        _REDUCERS[g] = DehnReducer(surface_relator(g))
    return _REDUCERS[g]


def is_identity_in_group(w: Word, p: Presentation) -> bool:
    if p.is_free:
        return not w
    if p.g == 1:
        # torus: pi_1 = Z^2, abelianization is exact
        return not any(abelianize(w, p.alphabet))
    if p.g >= 2:
        return not dehn_reducer(p.g).reduce(w)
    raise UnsupportedPresentation(f"no word problem solver for {p.alphabet}")


def are_equal_in_group(u: Word, v: Word, p: Presentation) -> bool:
    return is_identity_in_group(u * v.inverse(), p)


def all_words(symbols: Sequence[str], max_len: int) -> Iterator[Word]:
    """Every freely reduced word of length ``<= max_len`` in shortlex order."""
    letters = [(s, e) for s in symbols for e in (1, -1)]
    frontier: list[tuple[Letter, ...]] = [()]
    yield Word()
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for let in letters:
                if w and w[-1][0] == let[0] and w[-1][1] == -let[1]:
                    continue
                cand = w + (let,)
                nxt.append(cand)
                yield Word(cand)
        frontier = nxt
