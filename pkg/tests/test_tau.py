
import pytest
from hypothesis import given
from hypothesis import strategies as st

from brace8p.abelian import ORDER_8_GROUPS, Z2xZ2xZ2, Z4xZ2, Z8
from brace8p.cli import example1
from brace8p.errors import UnsupportedPrimeError
from brace8p.holomorph import holomorph
from brace8p.oracle import HolN, is_regular_N
from brace8p.report import brace_table_from_dict
from brace8p.subgroups import ISO_TYPES, IsoType, closure, enumerate_regular_subgroups, iso_type
from brace8p.tau import (
    ResidueClass,
    TauMap,
    brace_table,
    bucket_counts,
    check_prime,
    embed_pair,
    find_tau,
    homomorphisms,
    is_homomorphism,
    kernel_breakdown,
    kernel_type_breakdown,
    pair_orbits,
    two_sylow_generator,
)

R37, R5, R1 = ResidueClass.R3_7, ResidueClass.R5, ResidueClass.R1
HOM_COUNTS = {IsoType.C8: 8, IsoType.C4xC2: 8, IsoType.C2xC2xC2: 8, IsoType.D8: 4, IsoType.Q8: 4}


def _abelianization_order(F):
    H = F.hol
    comms = {H.mul(H.mul(a, b), H.mul(H.inv(a), H.inv(b))) for a in F.members for b in F.members}
    return len(F) // len(closure(H, sorted(comms)))


@pytest.mark.parametrize("E", ORDER_8_GROUPS, ids=lambda E: E.label)
def test_homomorphism_counts(E):
    for F in enumerate_regular_subgroups(E):
        homs = homomorphisms(F)
        assert len(homs) == HOM_COUNTS[iso_type(F)]
        assert len({t.values for t in homs}) == len(homs)
        # Hom(F, C8) = Hom(F^ab, C8); every F^ab here has exponent dividing 8
        ab = _abelianization_order(F)
        assert len(homs) == ab
        for t in homs:
            assert is_homomorphism(F, t.as_dict())
            assert t[F.hol.identity] == 0


def test_true_buckets():
    assert bucket_counts(Z8) == {1: 5, 2: 9, 4: 4, 8: 2}
    assert bucket_counts(Z4xZ2) == {1: 14, 2: 38, 4: 8, 8: 0}
    assert bucket_counts(Z2xZ2xZ2) == {1: 8, 2: 16, 4: 4, 8: 0}


def test_direct_products_are_27():
    assert sum(bucket_counts(E)[1] for E in ORDER_8_GROUPS) == 27


def test_residue_classes():
    assert ResidueClass.from_prime(5) is R5
    assert ResidueClass.from_prime(13) is R5
    assert ResidueClass.from_prime(11) is R37
    assert ResidueClass.from_prime(23) is R37
    assert ResidueClass.from_prime(17) is R1
    assert [r.max_image_order for r in (R37, R5, R1)] == [2, 4, 8]
    with pytest.raises(ValueError):
        ResidueClass.from_residue(4)


@pytest.mark.parametrize("p", [3, 7])
def test_small_primes_rejected_with_constants(p):
    with pytest.raises(UnsupportedPrimeError) as exc:
        check_prime(p)
    assert str({3: 96, 7: 91}[p]) in str(exc.value)


@pytest.mark.parametrize("bad", [2, 9, 1, 0, -5])
def test_bad_primes(bad):
    with pytest.raises(ValueError):
        check_prime(bad)


def test_table_totals_and_nesting():
    T = {r: brace_table(r) for r in (R37, R5, R1)}
    assert [T[r].total for r in (R37, R5, R1)] == [90, 106, 108]
    assert T[R5].total - T[R37].total == sum(bucket_counts(E)[4] for E in ORDER_8_GROUPS)
    assert T[R1].total - T[R5].total == 2
    assert [T[R37].column_sums()[t] for t in ISO_TYPES] == [4, 33, 13, 31, 9]
    assert T[R1].cell("8", IsoType.C8) == 8
    for r in T:
        assert sum(T[r].row_sums().values()) == T[r].total == sum(T[r].column_sums().values())


def test_true_rows():
    assert brace_table(R37).row_sums() == {"8": 14, "4x2": 52, "2x2x2": 24}
    assert brace_table(R5).row_sums() == {"8": 18, "4x2": 60, "2x2x2": 28}
    assert brace_table(R1).row_sums() == {"8": 20, "4x2": 60, "2x2x2": 28}


def test_table_dict_roundtrip():
    for r in (R37, R5, R1):
        T = brace_table(r)
        assert brace_table_from_dict(T.to_dict()).cells == T.cells


def test_kernel_breakdown_examples():
    assert kernel_breakdown(Z8, IsoType.C8, R1) == {8: 2, 4: 2, 2: 2, 1: 2}
    assert kernel_breakdown(Z4xZ2, IsoType.C4xC2, R37) == {8: 6, 4: 14}
    assert kernel_type_breakdown(Z4xZ2, IsoType.C4xC2, R37) == {"direct": 6, "cyclic": 8, "klein": 6}
    assert kernel_breakdown(Z2xZ2xZ2, IsoType.Q8, R5) == {8: 1, 4: 1}


def test_klein_kernels_match_direct_products_for_c4xc2():
    # each C4xC2 class has exactly one tau with Klein kernel, up to conjugacy
    for E in ORDER_8_GROUPS:
        kt = kernel_type_breakdown(E, IsoType.C4xC2, R37)
        assert kt["klein"] == kt["direct"]


def test_example1_pairs_in_distinct_orbits():
    F, tau1, tau2, _, _ = example1(5)
    assert iso_type(F) is IsoType.C4xC2
    where = {}
    H = holomorph(Z8)
    for i, c in enumerate(pair_orbits(Z8)):
        for nu in range(len(H.auts)):
            where[c.representative.transport(nu).key] = i
    assert where[tau1.key] != where[tau2.key]
    assert tau1.kernel_type == tau2.kernel_type == "cyclic"


def test_transport_is_an_action():
    H = holomorph(Z4xZ2)
    A = H.auts
    t = pair_orbits(Z4xZ2)[-1].representative
    for a in range(len(A)):
        for b in range(len(A)):
            assert t.transport(b).transport(a).key == t.transport(A.mul[a][b]).key


def test_two_sylow_generator():
    for p in (5, 11, 13, 17, 41):
        g = two_sylow_generator(p)
        two = (p - 1) & -(p - 1)
        assert pow(g, two, p) == 1 and pow(g, two // 2, p) != 1


def test_embed_pair_trivial_is_direct_product():
    F = enumerate_regular_subgroups(Z4xZ2)[0]
    trivial = next(t for t in homomorphisms(F) if t.image_order == 1)
    G = embed_pair(11, trivial)
    H = F.hol
    assert G == {(m, 1, *H.split(g)) for m in range(11) for g in F.members}


@pytest.mark.parametrize("p", [5, 13, 17])
@pytest.mark.parametrize("E", [Z8, Z4xZ2], ids=lambda E: E.label)
def test_embed_pair_regular(p, E):
    N = HolN(p, E)
    r = ResidueClass.from_prime(p)
    for c in pair_orbits(E):
        if c.image_order <= r.max_image_order:
            G = [N.from_tuple(t) for t in embed_pair(p, c.representative)]
            assert len(G) == 8 * p
            assert is_regular_N(N, G)


def test_embed_pair_errors():
    F = enumerate_regular_subgroups(Z8)[0]
    homs = homomorphisms(F)
    d2 = next(t for t in homs if t.image_order == 2)
    d4 = next(t for t in homs if t.image_order == 4)
    with pytest.raises(ValueError):
        embed_pair(5, d2, zeta=2)        # order 4, not 2
    with pytest.raises(ValueError):
        embed_pair(11, d4)               # 4 does not divide 10
    with pytest.raises(ValueError):
        embed_pair(2, d2)
    with pytest.raises(UnsupportedPrimeError):
        embed_pair(7, d2)
    assert embed_pair(5, d2) == embed_pair(5, d2, zeta=4)


def test_find_tau_errors():
    F = enumerate_regular_subgroups(Z8)[0]
    with pytest.raises(ValueError):
        find_tau(F, F.members[:3])


@given(st.sampled_from([1, 3, 5, 7]), st.integers(0, 200))
def test_scaling_preserves_image_and_kernel(u, i):
    classes = pair_orbits(Z4xZ2)
    t: TauMap = classes[i % len(classes)].representative
    s = t.scaled(u)
    assert s.image_order == t.image_order
    assert s.kernel == t.kernel
