"""Finite abelian groups Z_{n1} x ... x Z_{nk} and their automorphism groups.

Elements are handled in two forms: coordinate tuples (the readable form) and
integer keys, the mixed-radix fold of the coordinates with the first factor
most significant. Key order equals lexicographic coordinate order, so keys
are used for all hashing and sorting.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import CapacityError

DEFAULT_BOUND = 10_000

Coords = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if any(n < 2 for n in factors):
            raise ValueError(f"cyclic factor orders must be >= 2, got {factors}")
        object.__setattr__(self, "factors", tuple(sorted(factors, reverse=True)))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def label(self) -> str:
        """Descriptor such as ``"4x2"``; ``"1"`` for the trivial group."""
        return "x".join(str(n) for n in self.factors) or "1"

    @property
    def name(self) -> str:
        return " x ".join(f"Z_{n}" for n in self.factors) or "0"

    def __str__(self):
        return self.name

    # -- element encoding -------------------------------------------------

    @cached_property
    def _weights(self) -> tuple[int, ...]:
        w = []
        acc = 1
        for n in reversed(self.factors):
            w.append(acc)
            acc *= n
        return tuple(reversed(w))

    def key(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {tuple(coords)}")
        return sum((c % n) * w for c, n, w in zip(coords, self.factors, self._weights))

    def coords(self, key: int) -> Coords:
        out = []
        for n, w in zip(self.factors, self._weights):
            out.append((key // w) % n)
        return tuple(out)

    def zero(self) -> Coords:
        return (0,) * self.rank

    def generators(self) -> list[Coords]:
        """Canonical generators e_i (1 in slot i, 0 elsewhere)."""
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    def add(self, x: Sequence[int], y: Sequence[int]) -> Coords:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.factors))

    def neg(self, x: Sequence[int]) -> Coords:
        return tuple((-a) % n for a, n in zip(x, self.factors))

    def scale(self, k: int, x: Sequence[int]) -> Coords:
        return tuple((k * a) % n for a, n in zip(x, self.factors))

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        """``add_table[x][y]`` is the key of x + y (keys in, key out)."""
        els = elements(self)
        return tuple(tuple(self.key(self.add(x, y)) for y in els) for x in els)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.key(self.neg(x)) for x in elements(self))


def parse_group(text: str) -> AbelianGroup:
    """Parse descriptors like ``"8"``, ``"4x2"``, ``"2X2x2"``."""
    text = text.strip().lower()
    if not re.fullmatch(r"\d+(x\d+)*", text):
        raise ValueError(f"bad group descriptor {text!r}; expected e.g. 8, 4x2, 2x2x2")
    return AbelianGroup(tuple(int(t) for t in text.split("x")))


Z8 = AbelianGroup((8,))
Z4xZ2 = AbelianGroup((4, 2))
Z2xZ2xZ2 = AbelianGroup((2, 2, 2))
ORDER_8_GROUPS = (Z8, Z4xZ2, Z2xZ2xZ2)


def _check_bound(G: AbelianGroup, bound: int):
    if G.order > bound:
        raise CapacityError(f"group {G.label} has order {G.order} > bound {bound}")


def elements(G: AbelianGroup, bound: int = DEFAULT_BOUND) -> list[Coords]:
    _check_bound(G, bound)
    return list(itertools.product(*(range(n) for n in G.factors)))


def element_order(G: AbelianGroup, x: Sequence[int]) -> int:
    o = 1
    for c, n in zip(x, G.factors):
        o = math.lcm(o, n // math.gcd(c % n, n))
    return o


@dataclass(frozen=True)
class Automorphism:
    """An automorphism given by the images of the canonical generators.

    Equality is by action: two automorphisms are equal iff their generator
    images agree. ``table`` is the induced permutation on element keys.
    """

    group: AbelianGroup
    images: tuple[Coords, ...]
    table: tuple[int, ...] = field(compare=False, repr=False, default=())

    def __post_init__(self):
        G = self.group
        images = tuple(tuple(int(c) % n for c, n in zip(img, G.factors)) for img in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != G.rank:
            raise ValueError("one image per generator required")
        for img, n in zip(images, G.factors):
            if n % element_order(G, img):
                raise ValueError(f"image {img} does not respect generator order {n}")
        if not self.table:
            object.__setattr__(self, "table", _linear_table(G, images))
        if len(set(self.table)) != G.order:
            raise ValueError(f"generator images {images} do not define a bijection")

    def __call__(self, x: Sequence[int]) -> Coords:
        return self.group.coords(self.table[self.group.key(x)])

    def compose(self, other: Automorphism) -> Automorphism:
        """``self o other`` (apply ``other`` first)."""
        return Automorphism(self.group, tuple(self(img) for img in other.images))

    def inverse(self) -> Automorphism:
        G = self.group
        inv = [0] * G.order
        for x, y in enumerate(self.table):
            inv[y] = x
        return Automorphism(G, tuple(G.coords(inv[G.key(e)]) for e in G.generators()))

    @property
    def sort_key(self):
        return self.images


def _linear_table(G: AbelianGroup, images: tuple[Coords, ...]) -> tuple[int, ...]:
    out = []
    for x in elements(G):
        y = G.zero()
        for c, img in zip(x, images):
            y = G.add(y, G.scale(c, img))
        out.append(G.key(y))
    return tuple(out)


def apply(sigma: Automorphism, x: Sequence[int]) -> Coords:
    return sigma(x)


def identity_automorphism(G: AbelianGroup) -> Automorphism:
    return Automorphism(G, tuple(G.generators()))


@dataclass(frozen=True, eq=False)
class AutGroup:
    """All automorphisms of ``group`` in deterministic order, with Cayley table.

    ``mul[i][j]`` is the index of ``members[i] o members[j]``.
    """

    group: AbelianGroup
    members: tuple[Automorphism, ...]
    identity: int
    mul: tuple[tuple[int, ...], ...] = field(repr=False)
    inv: tuple[int, ...] = field(repr=False)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, i: int) -> Automorphism:
        return self.members[i]

    def index(self, sigma: Automorphism) -> int:
        return self._index[sigma.images]

    @cached_property
    def _index(self) -> dict:
        return {a.images: i for i, a in enumerate(self.members)}

    @cached_property
    def perms(self) -> tuple[tuple[int, ...], ...]:
        """``perms[i][x]``: key of members[i] applied to element key x."""
        return tuple(a.table for a in self.members)

    def from_images(self, *images: Sequence[int]) -> int:
        """Index of the automorphism sending e_i to ``images[i]``."""
        return self.index(Automorphism(self.group, tuple(tuple(im) for im in images)))


@lru_cache(maxsize=None)
def automorphism_group(G: AbelianGroup, bound: int = DEFAULT_BOUND) -> AutGroup:
    """Brute force over generator-image tuples, keeping the bijective ones."""
    els = elements(G, bound)
    candidates = [
        [x for x in els if n % element_order(G, x) == 0] for n in G.factors
    ]
    members = []
    for images in itertools.product(*candidates):
        table = _linear_table(G, images)
        if len(set(table)) == G.order:
            members.append(Automorphism(G, images, table))
    members.sort(key=lambda a: a.sort_key)
    index = {a.table: i for i, a in enumerate(members)}
    mul = tuple(
        tuple(index[tuple(a.table[x] for x in b.table)] for b in members) for a in members
    )
    ident = index[tuple(range(G.order))]
    inv = tuple(row.index(ident) for row in mul)
    return AutGroup(G, tuple(members), ident, mul, inv)
