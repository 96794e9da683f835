"""Brute-force cross-check in Hol(Z_p x E) = Hol(Z_p) x Hol(E).

Regular subgroups of order 8p are found directly as explicit sets of
elements (m, k, a, sigma) and grouped into classes under conjugation by
Aut(N) = Z_p^* x Aut(E). Nothing here uses the pair classification; only
the group arithmetic of Hol(E) is shared.
"""

from __future__ import annotations

import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .abelian import AbelianGroup, parse_group
from .errors import CapacityError, ConsistencyError
from .holomorph import HolGroup, holomorph
from .subgroups import IsoType, classify_order_8
from .tau import ResidueClass, brace_table, check_prime, embed_pair, pair_orbits_cached

log = logging.getLogger(__name__)

DEFAULT_ALLOWLIST = (5, 11, 13, 17)
WORKERS_ENV = "BRACE8P_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


class HolN:
    """Hol(Z_p) x Hol(E). Elements are ints ``(g * p + k) * p + m``."""

    def __init__(self, p: int, E: AbelianGroup):
        check_prime(p)
        self.p = p
        self.E = E
        self.H: HolGroup = holomorph(E)
        self.n_points = p * self.H.n
        self.identity = self.code(0, 1, self.H.identity)
        self._fpf: dict[int, bool] = {}

    # -- encoding --------------------------------------------------------

    def code(self, m: int, k: int, g: int) -> int:
        p = self.p
        return (g * p + k % p) * p + m % p

    def parts(self, c: int) -> tuple[int, int, int]:
        p = self.p
        return c % p, (c // p) % p, c // (p * p)

    def split(self, c: int) -> tuple[int, int, int, int]:
        """(m, k, a, sigma) with ``a`` an element key and ``sigma`` an Aut(E) index."""
        m, k, g = self.parts(c)
        a, s = self.H.split(g)
        return m, k, a, s

    def from_tuple(self, t: tuple[int, int, int, int]) -> int:
        m, k, a, s = t
        return self.code(m, k, self.H.code(a, s))

    # -- arithmetic ------------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        p = self.p
        m1, k1, g1 = x % p, (x // p) % p, x // (p * p)
        m2, k2, g2 = y % p, (y // p) % p, y // (p * p)
        return self.code(m1 + k1 * m2, k1 * k2, self.H.mul(g1, g2))

    def inv(self, x: int) -> int:
        m, k, g = self.parts(x)
        ki = pow(k, -1, self.p)
        return self.code(-ki * m, ki, self.H.inv(g))

    def act(self, x: int, point: tuple[int, int]) -> tuple[int, int]:
        """(m, k, a, sigma)(z, y) = (m + k z, a + sigma(y))."""
        m, k, g = self.parts(x)
        z, y = point
        return (m + k * z) % self.p, self.H.act(g, y)

    def is_fixed_point_free(self, x: int) -> bool:
        """No point of Z_p x E is fixed (exhaustive over the 8p points)."""
        r = self._fpf.get(x)
        if r is None:
            m, k, g = self.parts(x)
            fix_z = any((m + k * z) % self.p == z for z in range(self.p))
            fix_y = any(self.H.act(g, y) == y for y in range(self.H.n))
            r = not (fix_z and fix_y)
            self._fpf[x] = r
        return r

    def order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
        return k

    # -- Aut(N) ----------------------------------------------------------

    @cached_property
    def aut_conjugators(self) -> list[tuple[int, int]]:
        """(t, t^-1) for t = (0, i, 0, nu) over Aut(N) = Z_p^* x Aut(E)."""
        H = self.H
        out = []
        for i in range(1, self.p):
            for nu in range(len(H.auts)):
                t = self.code(0, i, H.code(0, nu))
                out.append((t, self.inv(t)))
        return out

    def conjugate(self, t: tuple[int, int], x: int) -> int:
        return self.mul(self.mul(t[0], x), t[1])

    def conjugate_set(self, t: tuple[int, int], members: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.conjugate(t, x) for x in members))


@dataclass(frozen=True)
class ConjClassN:
    representative: tuple[int, ...]
    orbit: tuple[tuple[int, ...], ...]
    quotient_type: IsoType

    @property
    def size(self) -> int:
        return len(self.orbit)


def _orders_in_factor(mul, identity, g) -> int:
    k, y = 1, g
    while y != identity:
        y = mul(y, g)
        k += 1
    return k


def sylow_anchors(N: HolN) -> list[tuple[int, ...]]:
    """Cyclic subgroups generated by fixed-point-free elements of order p,
    one per Aut(N)-class."""
    p, H = N.p, N.H
    affine_orders = {}
    for m in range(p):
        for k in range(1, p):
            affine_orders[(m, k)] = _orders_in_factor(
                lambda a, b: ((a[0] + a[1] * b[0]) % p, a[1] * b[1] % p), (0, 1), (m, k)
            )
    hol_orders = H.orders
    cyclic = set()
    for (m, k), o1 in affine_orders.items():
        for g in H.elements():
            if math.lcm(o1, hol_orders[g]) != p:
                continue
            x = N.code(m, k, g)
            if not N.is_fixed_point_free(x):
                continue
            powers, y = [], N.identity
            for _ in range(p):
                powers.append(y)
                y = N.mul(y, x)
            cyclic.add(tuple(sorted(powers)))
    anchors = []
    seen = set()
    for P in sorted(cyclic):
        if P in seen:
            continue
        anchors.append(P)
        seen.update(N.conjugate_set(t, P) for t in N.aut_conjugators)
    return anchors


def _closure_regular(N: HolN, members: list[int], gens: list[int], g: int, limit: int, base_images: dict):
    """Extend a fixed-point-free subgroup by ``g``; None on any violation."""
    all_gens = gens + [g]
    seen = set(members)
    out = list(members)
    images = dict(base_images)
    frontier = list(members)
    while frontier:
        nxt = []
        for x in frontier:
            for h in all_gens:
                y = N.mul(x, h)
                if y in seen:
                    continue
                if len(out) == limit or not N.is_fixed_point_free(y):
                    return None
                pt = N.act(y, (0, 0))
                if pt in images:
                    return None
                images[pt] = y
                seen.add(y)
                out.append(y)
                nxt.append(y)
        frontier = nxt
    return out, images


def _slot_candidates(N: HolN, P: tuple[int, ...], point: tuple[int, int]) -> list[int]:
    """Elements sending (0, 0) to ``point``, normalizing P, fixed-point free."""
    z, y = point
    x = next(c for c in P if c != N.identity)
    Pset = set(P)
    out = []
    for k in range(1, N.p):
        for s in range(len(N.H.auts)):
            g = N.code(z, k, N.H.code(y, s))
            if not N.is_fixed_point_free(g):
                continue
            if N.mul(N.mul(g, x), N.inv(g)) not in Pset:
                continue
            out.append(g)
    return out


def _orbit_reps(N: HolN, P: tuple[int, ...]) -> dict[tuple[int, int], tuple[int, int]]:
    """Map each point to the least point of its P-orbit."""
    rep = {}
    for z in range(N.p):
        for y in range(N.H.n):
            pt = (z, y)
            if pt in rep:
                continue
            orbit = {N.act(c, pt) for c in P}
            r = min(orbit)
            for q in orbit:
                rep[q] = r
    return rep


def _search_from(N: HolN, P: tuple[int, ...], first: int | None) -> list[tuple[int, ...]]:
    limit = N.n_points
    rep = _orbit_reps(N, P)
    all_reps = sorted(set(rep.values()))
    cand_cache: dict = {}
    found = []
    x = next(c for c in P if c != N.identity)

    def candidates(pt):
        if pt not in cand_cache:
            cand_cache[pt] = _slot_candidates(N, P, pt)
        return cand_cache[pt]

    def rec(members, gens, images):
        covered = {rep[pt] for pt in images}
        missing = [r for r in all_reps if r not in covered]
        if not missing:
            found.append(tuple(sorted(members)))
            return
        pt = missing[0]
        pool = candidates(pt)
        if first is not None and len(gens) == 1:
            pool = [first]
        for g in pool:
            ext = _closure_regular(N, members, gens, g, limit, images)
            if ext is not None:
                rec(ext[0], gens + [g], ext[1])

    start = _closure_regular(N, [N.identity], [], x, limit, {(0, 0): N.identity})
    if start is not None:
        rec(start[0], [x], start[1])
    return found


@lru_cache(maxsize=None)
def _holn(p: int, factors: tuple[int, ...]) -> HolN:
    return HolN(p, AbelianGroup(factors))


def _worker(args) -> list[tuple[int, ...]]:
    p, factors, P, first = args
    return _search_from(_holn(p, factors), P, first)


def enumerate_regular_8p(
    p: int,
    E: AbelianGroup,
    allowlist: Sequence[int] = DEFAULT_ALLOWLIST,
    workers: int | None = None,
) -> list[tuple[int, ...]]:
    """Regular subgroups of Hol(Z_p x E) of order 8p, as sorted member codes.

    Every such subgroup contains a normal cyclic subgroup of order p made of
    fixed-point-free elements. Only one such P per Aut(N)-class is used, so
    the result meets every Aut(N)-class of regular subgroups but need not
    contain every subgroup. For each anchor P, the
    search fills P-orbits of points one at a time with an element sending
    (0, 0) into the orbit, closing and rejecting anything that fixes a point.
    """
    if p not in allowlist:
        raise CapacityError(f"p={p} is not on the oracle allowlist {tuple(allowlist)}")
    N = _holn(p, E.factors)
    workers = default_workers() if workers is None else workers
    found = set()
    for P in sylow_anchors(N):
        if workers > 1:
            rep = _orbit_reps(N, P)
            first_slot = min(r for r in set(rep.values()) if r != (0, 0))
            # the anchor covers the orbit of (0, 0); branch on the next slot
            tasks = [(p, E.factors, P, g) for g in _slot_candidates(N, P, first_slot)]
            with ProcessPoolExecutor(max_workers=workers) as ex:
                for part in ex.map(_worker, tasks, chunksize=max(1, len(tasks) // (4 * workers))):
                    found.update(part)
        else:
            found.update(_search_from(N, P, None))
    return sorted(found)


def quotient_type(N: HolN, members: Sequence[int]) -> IsoType:
    """Iso type of G / O_p(G) via the projection (m, k, g) -> (k, g)."""
    p = N.p
    image = sorted({(c // p) for c in members})  # (g * p + k) pairs
    if len(image) != 8:
        raise ValueError("projection does not have order 8")

    def mul(u, v):
        k1, g1 = u % p, u // p
        k2, g2 = v % p, v // p
        return N.H.mul(g1, g2) * p + (k1 * k2) % p

    ident = N.H.identity * p + 1
    orders = Counter(_orders_in_factor(mul, ident, u) for u in image)
    abelian = all(mul(u, v) == mul(v, u) for u in image for v in image)
    return classify_order_8(orders, abelian)


def conjugacy_classes_N(N: HolN, subs: Sequence[tuple[int, ...]]) -> list[ConjClassN]:
    """Group subgroups into Aut(N)-orbits, conjugating by explicit multiplication."""
    done = set()
    out = []
    for S in sorted(subs):
        if S in done:
            continue
        orbit = sorted({N.conjugate_set(t, S) for t in N.aut_conjugators})
        done.update(orbit)
        out.append(ConjClassN(orbit[0], tuple(orbit), quotient_type(N, S)))
    out.sort(key=lambda c: c.representative)
    return out


def _signature(N: HolN, members: Sequence[int]) -> Counter:
    """Multiset of (k, Aut(E)-conjugacy class of sigma); invariant under Aut(N)."""
    classes = _aut_class_index(N.H)
    sig = Counter()
    for c in members:
        m, k, a, s = N.split(c)
        sig[(k, classes[s])] += 1
    return sig


@lru_cache(maxsize=None)
def _aut_class_index(H: HolGroup) -> tuple[int, ...]:
    auts = H.auts
    out = [-1] * len(auts)
    for s in range(len(auts)):
        if out[s] < 0:
            for nu in range(len(auts)):
                out[auts.mul[auts.mul[nu][s]][auts.inv[nu]]] = s
    return tuple(out)


def are_conjugate_N(N: HolN, G1: Sequence[int], G2: Sequence[int]) -> bool:
    G1, G2 = tuple(sorted(G1)), tuple(sorted(G2))
    if len(G1) != len(G2):
        return False
    if quotient_type(N, G1) != quotient_type(N, G2):
        return False
    if _signature(N, G1) != _signature(N, G2):
        return False
    return any(N.conjugate_set(t, G1) == G2 for t in N.aut_conjugators)


def is_regular_N(N: HolN, members: Sequence[int]) -> bool:
    """Free and transitive on the 8p points, checked exhaustively."""
    if len(members) != N.n_points:
        return False
    points = [(z, y) for z in range(N.p) for y in range(N.H.n)]
    if len({N.act(g, (0, 0)) for g in members}) != N.n_points:
        return False
    for g in members:
        if g != N.identity and any(N.act(g, pt) == pt for pt in points):
            return False
    return True


@lru_cache(maxsize=None)
def oracle_classes(p: int, E: AbelianGroup, workers: int | None = None) -> tuple[ConjClassN, ...]:
    N = _holn(p, E.factors)
    subs = enumerate_regular_8p(p, E, workers=workers)
    log.info("p=%d E=%s: %d regular subgroups", p, E.label, len(subs))
    return tuple(conjugacy_classes_N(N, subs))


def embed_as_codes(p: int, E: AbelianGroup, pair_tuples) -> tuple[int, ...]:
    N = _holn(p, E.factors)
    return tuple(sorted(N.from_tuple(t) for t in pair_tuples))


def pair_bijection(p: int, E: AbelianGroup, workers: int | None = None) -> dict[int, int]:
    """Map each admitted pair-orbit index to the oracle class containing its embedding.

    Raises ConsistencyError unless the map is a bijection onto the oracle classes.
    """
    residue = ResidueClass.from_prime(p)
    classes = oracle_classes(p, E, workers)
    where = {}
    for i, c in enumerate(classes):
        for S in c.orbit:
            where[S] = i
    mapping = {}
    for j, pc in enumerate(pair_orbits_cached(E)):
        if pc.image_order > residue.max_image_order:
            continue
        G = embed_as_codes(p, E, embed_pair(p, pc.representative))
        if G not in where:
            raise ConsistencyError(f"embedding of pair orbit {j} is not an oracle subgroup")
        mapping[j] = where[G]
    if sorted(mapping.values()) != list(range(len(classes))):
        raise ConsistencyError("pair orbits do not match oracle classes one to one")
    return mapping


def cross_check(p: int, groups: Sequence[AbelianGroup | str], workers: int | None = None) -> list[dict]:
    """Per-E comparison of oracle class counts with the pair-orbit table."""
    residue = ResidueClass.from_prime(p)
    table = brace_table(residue)
    reports = []
    for E in groups:
        if isinstance(E, str):
            E = parse_group(E)
        classes = oracle_classes(p, E, workers)
        got = Counter(c.quotient_type for c in classes)
        per_type = {}
        mismatches = []
        for t in IsoType:
            want = table.cell(E, t)
            per_type[t.value] = {"oracle": got.get(t, 0), "predicted": want}
            if got.get(t, 0) != want:
                mismatches.append(f"({E.label}, {t.value})")
        predicted = table.row_sums()[E.label]
        if len(classes) != predicted:
            mismatches.append(f"({E.label}, total)")
        reports.append({
            "p": p,
            "E": E.label,
            "oracle_classes": len(classes),
            "predicted": predicted,
            "per_iso_type": per_type,
            "match": not mismatches,
            "mismatches": mismatches,
        })
    return reports
