"""Pairs (F, tau): regular F in Hol(E) and characters tau: F -> Z_p^*.

A character is stored additively as a homomorphism F -> Z_8; the value v
stands for zeta_8^v under a fixed embedding of the cyclic group of order 8
into Z_p^*. Residue classes of p only filter by the image order afterwards,
so one enumeration serves p = 1, 5 and 3,7 (mod 8).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy import isprime, n_order

from .abelian import ORDER_8_GROUPS, AbelianGroup
from .errors import ConsistencyError, UnsupportedPrimeError
from .subgroups import (
    ISO_TYPES,
    IsoType,
    Subgroup,
    closure,
    enumerate_regular_subgroups,
    iso_type,
)

MOD = 8


@dataclass(frozen=True)
class TauMap:
    """A homomorphism F -> Z_8; ``values[i]`` is the image of ``F.members[i]``."""

    subgroup: Subgroup
    values: tuple[int, ...]

    @property
    def key(self):
        return (self.subgroup.members, self.values)

    def __getitem__(self, g: int) -> int:
        return self.values[self.subgroup.members.index(g)]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.subgroup.members, self.values))

    @property
    def image_order(self) -> int:
        return MOD // math.gcd(MOD, *self.values)

    @property
    def kernel(self) -> tuple[int, ...]:
        return tuple(g for g, v in zip(self.subgroup.members, self.values) if v == 0)

    @property
    def kernel_order(self) -> int:
        return len(self.kernel)

    @property
    def kernel_type(self) -> str:
        """``direct``, ``cyclic`` (order 4), ``klein``, ``C2`` or ``trivial``."""
        k = self.kernel_order
        if k == len(self.subgroup):
            return "direct"
        if k == 4:
            H = self.subgroup.hol
            return "cyclic" if any(H.order_of(g) == 4 for g in self.kernel) else "klein"
        return "C2" if k == 2 else "trivial"

    def scaled(self, u: int) -> TauMap:
        """u * tau, i.e. tau followed by the automorphism x -> u x of Z_8."""
        return TauMap(self.subgroup, tuple(u * v % MOD for v in self.values))

    def transport(self, nu: int) -> TauMap:
        """The action nu.(F, tau) = (Phi_nu(F), tau o Phi_nu^-1)."""
        H = self.subgroup.hol
        pairs = sorted((H.conj_by_aut(nu, g), v) for g, v in zip(self.subgroup.members, self.values))
        F = Subgroup(H, tuple(g for g, _ in pairs))
        return TauMap(F, tuple(v for _, v in pairs))


def _generating_set(F: Subgroup) -> list[int]:
    H = F.hol
    order = sorted(F.members, key=lambda g: (-H.order_of(g), g))
    gens: list[int] = []
    span = {H.identity}
    for g in order:
        if g not in span:
            gens.append(g)
            span = set(closure(H, gens).members)
        if len(span) == len(F):
            break
    return gens


def is_homomorphism(F: Subgroup, values: dict[int, int]) -> bool:
    H = F.hol
    return all(
        values[H.mul(g, h)] == (values[g] + values[h]) % MOD
        for g in F.members
        for h in F.members
    )


def homomorphisms(F: Subgroup) -> list[TauMap]:
    """All homomorphisms F -> Z_8, from generator images checked on all pairs."""
    H = F.hol
    gens = _generating_set(F)
    choices = [[v for v in range(MOD) if H.order_of(g) * v % MOD == 0] for g in gens]
    out = []

    def assign(images: list[int]):
        vals = {H.identity: 0}
        frontier = [H.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, v in zip(gens, images):
                    y = H.mul(x, g)
                    w = (vals[x] + v) % MOD
                    if y in vals:
                        if vals[y] != w:
                            return None
                    else:
                        vals[y] = w
                        nxt.append(y)
            frontier = nxt
        return vals

    def rec(i: int, images: list[int]):
        if i == len(gens):
            vals = assign(images)
            if vals is not None and is_homomorphism(F, vals):
                out.append(TauMap(F, tuple(vals[g] for g in F.members)))
            return
        for v in choices[i]:
            rec(i + 1, images + [v])

    rec(0, [])
    out.sort(key=lambda t: t.values)
    return out


class ResidueClass(str, enum.Enum):
    """Residue of p mod 8, keyed by the largest 2-power dividing p - 1 (capped at 8)."""

    R3_7 = "3,7"
    R5 = "5"
    R1 = "1"

    @property
    def max_image_order(self) -> int:
        return {"3,7": 2, "5": 4, "1": 8}[self.value]

    @property
    def label(self) -> str:
        return f"p = {self.value} (mod 8)"

    @classmethod
    def from_residue(cls, r: int) -> ResidueClass:
        r = int(r)
        if r in (3, 7):
            return cls.R3_7
        if r == 5:
            return cls.R5
        if r == 1:
            return cls.R1
        raise ValueError(f"residue must be one of 1, 3, 5, 7 (mod 8), got {r}")

    @classmethod
    def from_prime(cls, p: int) -> ResidueClass:
        check_prime(p)
        return cls.from_residue(p % 8)


def check_prime(p: int):
    if p in UnsupportedPrimeError.KNOWN_COUNTS:
        raise UnsupportedPrimeError(p)
    if p == 2 or not isprime(p):
        raise UnsupportedPrimeError(p)


@dataclass(frozen=True)
class PairClass:
    group: AbelianGroup
    representative: TauMap
    iso_type: IsoType
    orbit_size: int

    @property
    def subgroup(self) -> Subgroup:
        return self.representative.subgroup

    @property
    def image_order(self) -> int:
        return self.representative.image_order

    @property
    def kernel_order(self) -> int:
        return self.representative.kernel_order

    @property
    def kernel_type(self) -> str:
        return self.representative.kernel_type


def _pair_orbits(E: AbelianGroup) -> tuple[PairClass, ...]:
    pairs = []
    for F in enumerate_regular_subgroups(E):
        pairs.extend(homomorphisms(F))
    pairs.sort(key=lambda t: t.key)
    known = {t.key for t in pairs}
    n_auts = len(enumerate_regular_subgroups(E)[0].hol.auts) if pairs else 0
    done = set()
    out = []
    types = {}
    for t in pairs:
        if t.key in done:
            continue
        orbit = {t.transport(nu).key for nu in range(n_auts)}
        if not orbit <= known or min(orbit) != t.key:
            raise ConsistencyError("pair orbit left the enumerated set")
        done |= orbit
        F = t.subgroup
        if F.members not in types:
            types[F.members] = iso_type(F)
        out.append(PairClass(E, t, types[F.members], len(orbit)))
    return tuple(out)


@lru_cache(maxsize=None)
def pair_orbits_cached(E: AbelianGroup) -> tuple[PairClass, ...]:
    return _pair_orbits(E)


def pair_orbits(E: AbelianGroup) -> list[PairClass]:
    """Orbits of all (F, tau) under nu.(F, tau) = (Phi_nu(F), tau o Phi_nu^-1)."""
    return list(pair_orbits_cached(E))


def bucket_counts(E: AbelianGroup) -> dict[int, int]:
    """Pair-orbit counts by image order d in {1, 2, 4, 8}."""
    out = {d: 0 for d in (1, 2, 4, 8)}
    for c in pair_orbits_cached(E):
        out[c.image_order] += 1
    return out


def _admitted(c: PairClass, residue: ResidueClass) -> bool:
    return c.image_order <= residue.max_image_order


@dataclass(frozen=True)
class BraceTable:
    residue: ResidueClass
    cells: dict  # (E label, IsoType) -> count
    groups: tuple[str, ...] = tuple(G.label for G in ORDER_8_GROUPS)

    @property
    def total(self) -> int:
        return sum(self.cells.values())

    def cell(self, E: str | AbelianGroup, t: IsoType | str) -> int:
        label = E.label if isinstance(E, AbelianGroup) else E
        return self.cells[(label, IsoType(t))]

    def row_sums(self) -> dict[str, int]:
        return {E: sum(self.cells[(E, t)] for t in ISO_TYPES) for E in self.groups}

    def column_sums(self) -> dict[IsoType, int]:
        return {t: sum(self.cells[(E, t)] for E in self.groups) for t in ISO_TYPES}

    def to_dict(self) -> dict:
        return {
            "residue_class": self.residue.value,
            "cells": {E: {t.value: self.cells[(E, t)] for t in ISO_TYPES} for E in self.groups},
            "row_sums": self.row_sums(),
            "column_sums": {t.value: v for t, v in self.column_sums().items()},
            "total": self.total,
        }


def brace_table(residue: ResidueClass | int) -> BraceTable:
    if not isinstance(residue, ResidueClass):
        residue = ResidueClass.from_residue(residue)
    cells = {}
    for E in ORDER_8_GROUPS:
        for t in ISO_TYPES:
            cells[(E.label, t)] = 0
        for c in pair_orbits_cached(E):
            if _admitted(c, residue):
                cells[(E.label, c.iso_type)] += 1
    return BraceTable(residue, cells)


def kernel_breakdown(E: AbelianGroup, t: IsoType, residue: ResidueClass) -> dict[int, int]:
    """Counts by kernel order (descending) inside the (E, t) cell."""
    out: dict[int, int] = {}
    for c in pair_orbits_cached(E):
        if c.iso_type == t and _admitted(c, residue):
            out[c.kernel_order] = out.get(c.kernel_order, 0) + 1
    return dict(sorted(out.items(), reverse=True))


def kernel_type_breakdown(E: AbelianGroup, t: IsoType, residue: ResidueClass) -> dict[str, int]:
    """Like ``kernel_breakdown`` but splits order-4 kernels into cyclic / klein."""
    order = ("direct", "cyclic", "klein", "C2", "trivial")
    out = {k: 0 for k in order}
    for c in pair_orbits_cached(E):
        if c.iso_type == t and _admitted(c, residue):
            out[c.kernel_type] += 1
    return {k: v for k, v in out.items() if v}


def report_rows(residue: ResidueClass) -> list[dict]:
    """Rows (E, F_iso_type, kernel_order, residue_class, count)."""
    rows = []
    for E in ORDER_8_GROUPS:
        for t in ISO_TYPES:
            for k, n in kernel_breakdown(E, t, residue).items():
                rows.append(
                    {"E": E.label, "F": t.value, "kernel_order": k,
                     "residue_class": residue.value, "count": n}
                )
    return rows


# -- embedding into Hol(Z_p x E) --------------------------------------------

def two_sylow_generator(p: int) -> int:
    """Smallest positive integer generating the 2-Sylow subgroup of Z_p^*."""
    two_part = (p - 1) & -(p - 1)
    for g in range(1, p):
        if n_order(g, p) == two_part:
            return g
    raise AssertionError("unreachable for odd primes")


def embed_pair(p: int, tau: TauMap, zeta: int | None = None) -> frozenset[tuple[int, int, int, int]]:
    """G = {(m, tau(f), f)} as 4-tuples (m, k, a, sigma) in Hol(Z_p) x Hol(E).

    ``zeta`` must have multiplicative order equal to the image order d of
    tau; an element f with value v maps to k = zeta^(v d / 8).
    """
    check_prime(p)
    d = tau.image_order
    if zeta is None:
        two_part = (p - 1) & -(p - 1)
        if two_part % d:
            raise ValueError(f"image order {d} does not divide p - 1 = {p - 1}")
        zeta = pow(two_sylow_generator(p), two_part // d, p)
    zeta %= p
    if zeta == 0 or n_order(zeta, p) != d:
        raise ValueError(f"zeta={zeta} must have multiplicative order {d} mod {p}")
    H = tau.subgroup.hol
    out = set()
    for g, v in zip(tau.subgroup.members, tau.values):
        a, s = H.split(g)
        k = pow(zeta, v * d // MOD, p)
        for m in range(p):
            out.add((m, k, a, s))
    return frozenset(out)


def find_tau(F: Subgroup, kernel: Sequence[int], image_order: int | None = None) -> TauMap:
    """The homomorphism with the given kernel (and image order, if several)."""
    kernel = tuple(sorted(kernel))
    hits = [t for t in homomorphisms(F) if t.kernel == kernel]
    if image_order is not None:
        hits = [t for t in hits if t.image_order == image_order]
    if not hits:
        raise ValueError("no homomorphism with that kernel")
    return hits[0]
