"""The holomorph Hol(E) = E x| Aut(E) of a finite abelian group.

Elements of Hol(E) are plain ints: ``code = sigma * |E| + a`` where ``a`` is
the element key of the translation part and ``sigma`` the index of the
automorphism in ``automorphism_group(E)``. Sorting codes sorts by
(automorphism index, element key). ``HolElement`` is the readable view.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .abelian import AbelianGroup, AutGroup, automorphism_group


class HolElement(NamedTuple):
    a: int
    sigma: int


class HolGroup:
    def __init__(self, base: AbelianGroup):
        self.base = base
        self.auts: AutGroup = automorphism_group(base)
        self.n = base.order
        self.size = self.n * len(self.auts)
        self.identity = self.code(0, self.auts.identity)

        n, A = self.n, len(self.auts)
        add = np.array(base.add_table, dtype=np.int32)
        perm = np.array(self.auts.perms, dtype=np.int32)
        amul = np.array(self.auts.mul, dtype=np.int32)
        ainv = np.array(self.auts.inv, dtype=np.int32)

        s = np.repeat(np.arange(A), n)
        a = np.tile(np.arange(n), A)
        # (a1, s1)(a2, s2) = (a1 + s1(a2), s1 s2)
        prod_a = add[a[:, None], perm[s[:, None], a[None, :]]]
        prod_s = amul[s[:, None], s[None, :]]
        self._mul = (prod_s * n + prod_a).ravel().tolist()
        # (a, s)^-1 = (-s^-1(a), s^-1)
        si = ainv[s]
        neg = np.array(base.neg_table, dtype=np.int32)
        self._inv = (si * n + neg[perm[si, a]]).tolist()
        # Phi_nu(a, s) = (nu(a), nu s nu^-1)
        nu = np.arange(A)[:, None]
        conj_s = amul[amul[nu, s[None, :]], ainv[nu]]
        self._conj = (conj_s * n + perm[nu, a[None, :]]).tolist()
        self._act = add[a[:, None], perm[s[:, None], np.arange(n)[None, :]]].tolist()

    def __repr__(self):
        return f"HolGroup({self.base.label})"

    # -- encoding --------------------------------------------------------

    def code(self, a: int, sigma: int) -> int:
        return sigma * self.n + a

    def split(self, g: int) -> HolElement:
        return HolElement(g % self.n, g // self.n)

    def element(self, a: Sequence[int], sigma: int) -> int:
        """Code of (a, sigma) with ``a`` given as coordinates."""
        return self.code(self.base.key(a), sigma)

    def elements(self) -> range:
        return range(self.size)

    # -- arithmetic ------------------------------------------------------

    def mul(self, g: int, h: int) -> int:
        return self._mul[g * self.size + h]

    def inv(self, g: int) -> int:
        return self._inv[g]

    def power(self, g: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def act(self, g: int, x: int) -> int:
        """a + sigma(x) on element keys."""
        return self._act[g][x]

    def conj_by_aut(self, nu: int, g: int) -> int:
        return self._conj[nu][g]

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for g in self.elements():
            k, x = 1, g
            while x != self.identity:
                x = self.mul(x, g)
                k += 1
            out.append(k)
        return tuple(out)

    def order_of(self, g: int) -> int:
        return self.orders[g]

    @cached_property
    def _image_one_minus(self) -> tuple[frozenset, ...]:
        """Im(1 - sigma) per automorphism index, by direct enumeration."""
        add, neg = self.base.add_table, self.base.neg_table
        return tuple(
            frozenset(add[x][neg[p[x]]] for x in range(self.n)) for p in self.auts.perms
        )

    @cached_property
    def fixed_point_free(self) -> tuple[bool, ...]:
        """True for the elements acting without fixed points (identity excluded)."""
        im = self._image_one_minus
        return tuple(
            g != self.identity and (g % self.n) not in im[g // self.n]
            for g in self.elements()
        )

    def has_fixed_point(self, g: int) -> bool:
        a, s = self.split(g)
        return a in self._image_one_minus[s]

    # -- rendering -------------------------------------------------------

    def render(self, g: int) -> str:
        a, s = self.split(g)
        return render_element(self.base, self.auts, a, s)

    def parse(self, text: str) -> int:
        return parse_element(self, text)


@lru_cache(maxsize=None)
def holomorph(base: AbelianGroup) -> HolGroup:
    return HolGroup(base)


def hol_mul(H: HolGroup, g: int, h: int) -> int:
    return H.mul(g, h)


def hol_inv(H: HolGroup, g: int) -> int:
    return H.inv(g)


def act(H: HolGroup, g: int, x: int) -> int:
    return H.act(g, x)


def has_fixed_point(H: HolGroup, g: int) -> bool:
    return H.has_fixed_point(g)


def conj_by_aut(H: HolGroup, nu: int, g: int) -> int:
    return H.conj_by_aut(nu, g)


# -- display names for automorphisms ------------------------------------

@dataclass(frozen=True)
class _Names:
    by_index: dict
    by_name: dict


def _dihedral_names(auts: AutGroup) -> _Names:
    # r(a,b) = (a+2b, a+b), s(a,b) = (a, a+b) on Z_4 x Z_2
    r = auts.from_images((1, 1), (2, 1))
    s = auts.from_images((1, 1), (0, 1))
    by_index = {}
    x = auts.identity
    for i in range(4):
        for j in range(2):
            g = auts.mul[x][s] if j else x
            name = ("" if i == 0 else "r" if i == 1 else f"r^{i}") + ("s" if j else "")
            by_index[g] = name or "id"
        x = auts.mul[x][r]
    return _Names(by_index, {v: k for k, v in by_index.items()})


def _unit_names(auts: AutGroup) -> _Names:
    by_index = {i: str(a.images[0][0]) for i, a in enumerate(auts.members)}
    return _Names(by_index, {v: k for k, v in by_index.items()})


def _matrix_names(auts: AutGroup) -> _Names:
    by_index = {}
    for i, a in enumerate(auts.members):
        # column j is the image of e_{j+1}
        rows = ["".join(str(a.images[j][r]) for j in range(3)) for r in range(3)]
        by_index[i] = "/".join(rows)
    return _Names(by_index, {v: k for k, v in by_index.items()})


@lru_cache(maxsize=None)
def aut_names(base: AbelianGroup) -> _Names:
    auts = automorphism_group(base)
    if base.factors == (4, 2):
        return _dihedral_names(auts)
    if base.rank == 1:
        return _unit_names(auts)
    if base.factors == (2, 2, 2):
        return _matrix_names(auts)
    by_index = {i: repr(a.images) for i, a in enumerate(auts.members)}
    return _Names(by_index, {v: k for k, v in by_index.items()})


def aut_name(base: AbelianGroup, sigma: int) -> str:
    return aut_names(base).by_index[sigma]


def aut_by_name(base: AbelianGroup, name: str) -> int:
    """Index of an automorphism from its display name (e.g. ``"r^3s"``, ``"5"``)."""
    names = aut_names(base).by_name
    name = name.strip()
    if base.factors == (2, 2, 2) and name not in names:
        return _matrix_word(base, name)
    return names[name]


def _matrix_word(base: AbelianGroup, word: str) -> int:
    """Products of the named matrices, e.g. ``MS``, ``SQ^2``, ``Q^3S``."""
    auts = automorphism_group(base)
    names = aut_names(base).by_name
    out = auts.identity
    for sym, exp in re.findall(r"(Id|S|Q|M)(?:\^(\d+))?", word):
        m = names[_MATRIX_ALIASES[sym]]
        for _ in range(int(exp or 1)):
            out = auts.mul[out][m]
    if re.sub(r"(Id|S|Q|M)(\^\d+)?", "", word):
        raise KeyError(word)
    return out


# Matrices named in the text for GL(3,2); rows separated by '/'.
_MATRIX_ALIASES = {
    "Id": "100/010/001",
    "S": "100/011/001",
    "Q": "110/011/001",
    "M": "100/111/001",
}


def _vector_name(x: tuple[int, ...]) -> str:
    parts = [f"e{i + 1}" for i, c in enumerate(x) if c]
    return "+".join(parts) or "0"


def render_element(base: AbelianGroup, auts: AutGroup, a: int, sigma: int) -> str:
    x = base.coords(a)
    name = aut_name(base, sigma)
    if base.rank == 1:
        return f"({x[0]}, {name})"
    if base.factors == (2, 2, 2):
        return f"({_vector_name(x)}, {name})"
    return f"(({','.join(map(str, x))}), {name})"


def parse_element(H: HolGroup, text: str) -> int:
    """Inverse of ``render`` (also accepts matrix aliases like ``S``, ``Id``)."""
    base = H.base
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"cannot parse {text!r}")
    body = body[1:-1]
    vec, _, name = body.rpartition(",")
    vec, name = vec.strip(), name.strip()
    if base.factors == (2, 2, 2):
        x = [0, 0, 0]
        if vec != "0":
            for part in vec.split("+"):
                x[int(part.strip()[1:]) - 1] ^= 1
        coords = tuple(x)
    elif base.rank == 1:
        coords = (int(vec),)
    else:
        coords = tuple(int(c) for c in vec.strip("()").split(","))
    return H.element(coords, aut_by_name(base, name))
