"""Regular subgroups of Hol(E): closure, enumeration, Aut(E)-classes, iso types."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .abelian import AbelianGroup
from .errors import CapacityError, ConsistencyError
from .holomorph import HolGroup, holomorph

DEFAULT_CLOSURE_BOUND = 4096


class IsoType(str, enum.Enum):
    C8 = "C8"
    C4xC2 = "C4xC2"
    C2xC2xC2 = "C2xC2xC2"
    D8 = "D8"
    Q8 = "Q8"

    def __str__(self):
        return self.value


ISO_TYPES = tuple(IsoType)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a holomorph, stored as the sorted tuple of its member codes."""

    hol: HolGroup = field(compare=False, repr=False)
    members: tuple[int, ...]
    generators: tuple[int, ...] = field(default=(), compare=False)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, g):
        return g in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_members_set")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_members_set", s)
        return s

    @property
    def order(self) -> int:
        return len(self.members)

    def __lt__(self, other: Subgroup):
        return self.members < other.members

    def conjugate(self, nu: int) -> Subgroup:
        H = self.hol
        return Subgroup(H, tuple(sorted(H.conj_by_aut(nu, g) for g in self.members)))

    def dump(self) -> str:
        """One rendered element per line, canonical order."""
        return "".join(self.hol.render(g) + "\n" for g in self.members)


def make_subgroup(H: HolGroup, members: Iterable[int], generators: Sequence[int] = ()) -> Subgroup:
    return Subgroup(H, tuple(sorted(set(members))), tuple(generators))


def closure(H: HolGroup, gens: Sequence[int], bound: int = DEFAULT_CLOSURE_BOUND) -> Subgroup:
    if not gens:
        raise ValueError("closure needs at least one generator")
    seen = {H.identity}
    frontier = [H.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = H.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > bound:
            raise CapacityError(f"closure exceeds {bound} elements")
        frontier = nxt
    return make_subgroup(H, seen, gens)


def is_regular(S: Subgroup) -> bool:
    H = S.hol
    if len(S) != H.n:
        return False
    return all(g == H.identity or not H.has_fixed_point(g) for g in S.members)


def _extend(H: HolGroup, members: list[int], gens: list[int], g: int, limit: int):
    """Closure of ``members`` (a subgroup generated by ``gens``) and ``g``.

    Returns None as soon as the closure exceeds ``limit`` or picks up a
    non-identity element with a fixed point.
    """
    fpf = H.fixed_point_free
    all_gens = gens + [g]
    seen = set(members)
    out = list(members)
    frontier = list(members)
    while frontier:
        nxt = []
        for x in frontier:
            for h in all_gens:
                y = H.mul(x, h)
                if y not in seen:
                    if not fpf[y] or len(out) == limit:
                        return None
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
        frontier = nxt
    return out


def _search_regular(H: HolGroup) -> list[tuple[int, ...]]:
    n = H.n
    fpf, orders = H.fixed_point_free, H.orders
    # The element of a regular subgroup sending 0 to x has translation part x.
    slots = [[] for _ in range(n)]
    for g in H.elements():
        if fpf[g]:
            slots[g % n].append(g)
    for s in slots:
        s.sort(key=lambda g: (-orders[g], g))

    found = []

    def rec(members: list[int], gens: list[int]):
        covered = {g % n for g in members}
        if len(covered) == n:
            found.append(tuple(sorted(members)))
            return
        x = min(set(range(n)) - covered)
        for g in slots[x]:
            ext = _extend(H, members, gens, g, n)
            if ext is not None:
                rec(ext, gens + [g])

    rec([H.identity], [])
    return found


@lru_cache(maxsize=None)
def _regular_subgroups(E: AbelianGroup) -> tuple[Subgroup, ...]:
    H = holomorph(E)
    members = sorted(set(_search_regular(H)))
    return tuple(Subgroup(H, m) for m in members)


def enumerate_regular_subgroups(E: AbelianGroup) -> list[Subgroup]:
    """All regular subgroups of Hol(E), canonical order.

    Backtracking fills one translation slot at a time: a regular subgroup
    holds exactly one element over each point of E, so the branches at a
    node are disjoint and every subgroup is reached once.
    """
    return list(_regular_subgroups(E))


@dataclass(frozen=True)
class ConjClass:
    representative: Subgroup
    orbit: tuple[Subgroup, ...]

    @property
    def size(self) -> int:
        return len(self.orbit)


def aut_orbit(S: Subgroup) -> list[Subgroup]:
    seen = {}
    for nu in range(len(S.hol.auts)):
        img = S.conjugate(nu)
        seen.setdefault(img.members, img)
    return sorted(seen.values())


def conjugacy_classes(subs: Sequence[Subgroup]) -> list[ConjClass]:
    """Partition ``subs`` into Aut(E)-orbits; classes sorted by representative."""
    by_key = {S.members: S for S in subs}
    done = set()
    classes = []
    for S in sorted(by_key.values()):
        if S.members in done:
            continue
        orbit = aut_orbit(S)
        for T in orbit:
            if T.members not in by_key:
                raise ConsistencyError(
                    f"conjugate of a listed subgroup is missing: {T.members}"
                )
            done.add(T.members)
        classes.append(ConjClass(orbit[0], tuple(orbit)))
    classes.sort(key=lambda c: c.representative.members)
    return classes


@lru_cache(maxsize=None)
def regular_classes(E: AbelianGroup) -> tuple[ConjClass, ...]:
    return tuple(conjugacy_classes(enumerate_regular_subgroups(E)))


def order_statistics(H: HolGroup, members: Sequence[int]) -> Counter:
    seen = set(members)
    out = Counter()
    for g in members:
        k, x = 1, g
        while x != H.identity:
            x = H.mul(x, g)
            k += 1
            if k > len(seen):
                raise ValueError("members do not form a group")
        out[k] += 1
    return out


def is_abelian(H: HolGroup, members: Sequence[int]) -> bool:
    return all(H.mul(a, b) == H.mul(b, a) for a in members for b in members)


def classify_order_8(orders: Counter, abelian: bool) -> IsoType:
    if orders.get(8):
        return IsoType.C8
    if abelian:
        return IsoType.C4xC2 if orders.get(4) else IsoType.C2xC2xC2
    return IsoType.Q8 if orders.get(2) == 1 else IsoType.D8


def iso_type(S: Subgroup) -> IsoType:
    if len(S) != 8:
        raise ValueError(f"iso_type needs a group of order 8, got {len(S)}")
    return classify_order_8(order_statistics(S.hol, S.members), is_abelian(S.hol, S.members))


def class_distribution(E: AbelianGroup) -> dict[IsoType, int]:
    out = {t: 0 for t in ISO_TYPES}
    for c in regular_classes(E):
        out[iso_type(c.representative)] += 1
    return out
