from collections import Counter

import pytest

from brace8p.abelian import Z2xZ2xZ2, Z4xZ2, Z8
from brace8p.errors import CapacityError, UnsupportedPrimeError
from brace8p.oracle import (
    HolN,
    are_conjugate_N,
    conjugacy_classes_N,
    cross_check,
    enumerate_regular_8p,
    is_regular_N,
    oracle_classes,
    pair_bijection,
    quotient_type,
    sylow_anchors,
)
from brace8p.subgroups import IsoType
from brace8p.tau import pair_orbits


def test_product_formula():
    N = HolN(5, Z8)
    H = N.H
    g = N.code(2, 3, H.parse("(1, 3)"))
    h = N.code(4, 2, H.parse("(2, 5)"))
    m, k, x = N.parts(N.mul(g, h))
    assert (m, k) == ((2 + 3 * 4) % 5, 6 % 5)
    assert x == H.mul(H.parse("(1, 3)"), H.parse("(2, 5)"))
    assert N.mul(g, N.inv(g)) == N.identity
    assert N.mul(N.identity, g) == g


@pytest.mark.parametrize("tau", [1, 2, 4])
def test_conjugating_the_p_generator(tau):
    # (0, tau, a, s)(1, 1, 0, id)(0, tau, a, s)^-1 = (tau, 1, 0, id)
    N = HolN(5, Z4xZ2)
    H = N.H
    t = N.code(0, tau, H.parse("((1,1), rs)"))
    one = N.code(1, 1, H.identity)
    assert N.mul(N.mul(t, one), N.inv(t)) == N.code(tau, 1, H.identity)


def test_action():
    N = HolN(5, Z8)
    g = N.code(3, 2, N.H.parse("(1, 5)"))
    assert N.act(g, (4, 3)) == ((3 + 2 * 4) % 5, (1 + 5 * 3) % 8)


def test_allowlist_and_small_primes():
    with pytest.raises(CapacityError):
        enumerate_regular_8p(19, Z8)
    with pytest.raises(UnsupportedPrimeError):
        HolN(7, Z8)
    assert len(enumerate_regular_8p(19, Z8, allowlist=(19,))) > 0


def test_anchors_are_fixed_point_free_order_p():
    N = HolN(5, Z4xZ2)
    for P in sylow_anchors(N):
        assert len(P) == 5
        assert all(N.is_fixed_point_free(x) for x in P if x != N.identity)


@pytest.mark.parametrize("p,E,n", [(5, Z8, 18), (13, Z8, 18), (11, Z8, 14), (17, Z8, 20),
                                   (5, Z4xZ2, 60), (13, Z4xZ2, 60), (11, Z4xZ2, 52)])
def test_class_counts(p, E, n):
    assert len(oracle_classes(p, E)) == n


def test_z2x2x2_p5():
    classes = oracle_classes(5, Z2xZ2xZ2)
    assert len(classes) == 28
    assert Counter(c.quotient_type for c in classes) == Counter(
        {IsoType.C4xC2: 13, IsoType.C2xC2xC2: 5, IsoType.D8: 8, IsoType.Q8: 2}
    )


@pytest.mark.parametrize("p,E", [(5, Z8), (5, Z4xZ2), (11, Z4xZ2)])
def test_every_enumerated_subgroup_is_regular(p, E):
    N = HolN(p, E)
    for G in enumerate_regular_8p(p, E):
        assert is_regular_N(N, G)


@pytest.mark.parametrize("p,E", [(5, Z8), (17, Z8), (5, Z4xZ2), (11, Z4xZ2), (5, Z2xZ2xZ2)])
def test_pair_bijection(p, E):
    mapping = pair_bijection(p, E)
    classes = oracle_classes(p, E)
    orbits = pair_orbits(E)
    for j, i in mapping.items():
        assert classes[i].quotient_type == orbits[j].iso_type


def test_conjugate_lands_in_same_class():
    N = HolN(5, Z4xZ2)
    classes = oracle_classes(5, Z4xZ2)
    G = classes[7].representative
    t = N.aut_conjugators[13]
    image = N.conjugate_set(t, G)
    assert image in classes[7].orbit
    assert are_conjugate_N(N, G, image)
    assert not are_conjugate_N(N, G, classes[8].representative)


def test_classes_are_orbits():
    N = HolN(5, Z8)
    subs = enumerate_regular_8p(5, Z8)
    classes = conjugacy_classes_N(N, subs)
    for c in classes:
        for S in c.orbit:
            assert quotient_type(N, S) == c.quotient_type
    reps = [c.representative for c in classes]
    assert reps == sorted(reps)


def test_workers_do_not_change_output():
    a = enumerate_regular_8p(5, Z4xZ2, workers=1)
    b = enumerate_regular_8p(5, Z4xZ2, workers=3)
    assert a == b


def test_cross_check_report():
    (r,) = cross_check(5, ["8"])
    assert r["match"] and r["oracle_classes"] == r["predicted"] == 18
    assert r["per_iso_type"]["C8"] == {"oracle": 6, "predicted": 6}
    assert r["mismatches"] == []
