import math

import pytest
from hypothesis import given, settings, strategies as st

from ddpgroups import build_group
from ddpgroups.constructions import (
    OddAbelianDecomposition,
    ddp_abelian,
    power_of_two_family,
    scale_sequence,
    sizeo_lower_bound,
    bound_parameters,
    slonimsky_abelian,
    slonimsky_cyclic,
    slonimsky_cyclic_terms,
    triangular_ddp,
    triangular_terms,
    triangular_variant_ddp,
)
from ddpgroups.ddp import group_sum, verify_ddp, verify_slonimsky
from ddpgroups.errors import BadExponent, EvenModulus, NoDdpExists, NotAbelian, NotAUnit

from conftest import MUTTERAKKORD
from oracles import abelian_types, cyclic_product


def odd_decompositions(limit):
    """Ordered tuples of odd moduli >= 3 with product <= limit."""
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for t in frontier:
            for m in range(3, limit + 1, 2):
                if math.prod(t) * m <= limit:
                    nxt.append(t + (m,))
        out += nxt
        frontier = nxt
    return out


def test_slonimsky_cyclic_examples():
    assert list(slonimsky_cyclic(7).perm) == [0, 6, 1, 5, 2, 4, 3]
    assert list(slonimsky_cyclic(1).perm) == [0]
    s = slonimsky_cyclic(5)
    assert list(s.perm) == [0, 4, 1, 3, 2] and s.last_term == 2


def test_slonimsky_cyclic_rejects_even():
    with pytest.raises(EvenModulus):
        slonimsky_cyclic(8)


def test_pure_formula_signed_diffs_up_to_999():
    for n in range(1, 1000, 2):
        p = slonimsky_cyclic_terms(n)
        h = [0] + [((-1) ** (i - 1) * (p[i - 1] - p[i])) % n for i in range(1, n)]
        assert h == list(range(n))


@pytest.mark.parametrize("n", [3, 9, 21, 99, 225])
def test_cyclic_signed_diffs_through_tables(n):
    assert slonimsky_cyclic(n).signed_diffs == tuple(range(n))


def test_slonimsky_abelian_base_case():
    assert slonimsky_abelian([7]).perm == slonimsky_cyclic(7).perm


@pytest.mark.parametrize("moduli", [(3, 3), (3, 5), (5, 3), (3, 3, 3), (15, 3)])
def test_slonimsky_last_term(moduli):
    s = slonimsky_abelian(moduli)
    assert s.group.decode(s.last_term) == tuple((m - 1) // 2 for m in moduli)
    assert sorted(s.signed_diffs) == list(range(s.group.order))


def test_every_odd_decomposition_up_to_225():
    decs = odd_decompositions(225)
    assert (3, 3, 5, 5) in decs and (225,) in decs
    for moduli in decs:
        s = slonimsky_abelian(moduli or (1,))
        v = verify_slonimsky(s.group, s.perm)
        assert v.ok, moduli
        last = s.group.decode(s.last_term)
        assert (last if isinstance(last, tuple) else (last,)) == tuple((m - 1) // 2 for m in (moduli or (1,)))


def test_odd_decomposition_rejects_even():
    with pytest.raises(EvenModulus):
        OddAbelianDecomposition((3, 4))


def test_triangular_small():
    assert list(triangular_ddp(1).perm) == [0, 1]
    assert list(triangular_ddp(3).perm) == [0, 1, 3, 6, 2, 7, 5, 4]


def test_variant_small():
    s = triangular_variant_ddp(3)
    assert list(s.perm) == [0, 1, 7, 2, 6, 3, 5, 4]
    assert list(s.divisors) == [1, 6, 3, 4, 5, 2, 7]
    y2 = triangular_variant_ddp(2)
    assert verify_ddp(y2.group, y2.perm)


@pytest.mark.parametrize("m", range(1, 13))
def test_triangular_families(m):
    n = 2 ** m
    x = triangular_ddp(m)
    assert list(x.divisors) == list(range(1, n))
    if m >= 2:
        y = triangular_variant_ddp(m)
        swapped = {2 ** (m - 2): 3 * 2 ** (m - 2), 3 * 2 ** (m - 2): 2 ** (m - 2)}
        assert list(y.divisors) == [swapped.get(d, d) for d in range(1, n)]
        if m >= 3:
            assert y.perm != x.perm


def test_variant_needs_m_at_least_2():
    with pytest.raises(BadExponent):
        triangular_variant_ddp(1)
    with pytest.raises(BadExponent):
        triangular_ddp(0)


@pytest.mark.parametrize("m", range(1, 17))
def test_triangular_numbers_biject(m):
    assert len(set(triangular_terms(m))) == 2 ** m


@pytest.mark.parametrize("text, base", [
    ("Z12", MUTTERAKKORD),
    ("Z8", [0, 1, 3, 6, 2, 7, 5, 4]),
])
def test_scaling_by_every_unit(text, base):
    G = build_group(text)
    assert scale_sequence(G, base, 1).perm == tuple(base)
    for r in range(1, G.order):
        if math.gcd(r, G.exponent) == 1:
            assert verify_ddp(G, scale_sequence(G, base, r).perm)
        else:
            with pytest.raises(NotAUnit):
                scale_sequence(G, base, r)


def test_mutterakkord_times_five(z12):
    assert scale_sequence(z12, MUTTERAKKORD, 5).perm[:5] == (0, 7, 11, 8, 10)


def test_scaling_in_product():
    G = build_group("Z4xZ3")
    base = ddp_abelian(G)
    for r in (1, 5, 7, 11):
        assert verify_ddp(G, scale_sequence(G, base, r).perm)


def test_scaling_nonabelian(d5):
    with pytest.raises(NotAbelian):
        scale_sequence(d5, list(range(10)), 3)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_power_of_two_family_distinct(m):
    seqs = list(power_of_two_family(m))
    assert len(seqs) == 2 ** m
    assert len({s.perm for s in seqs}) == 2 ** m


def test_sizeo_values():
    assert sizeo_lower_bound(1) == 1
    assert sizeo_lower_bound(2, [3]) == 12
    assert sizeo_lower_bound(1, [3, 5]) == 100
    assert sizeo_lower_bound(1, [5, 3]) == 6 ** 4
    assert sizeo_lower_bound(1, [3, 5, 7]) == 10 ** 2 * 14 ** 14
    assert sizeo_lower_bound(3) == 8
    assert bound_parameters(12) == (2, [3])
    assert bound_parameters(16) == (4, [])


def test_sizeo_rejects_even():
    with pytest.raises(EvenModulus):
        sizeo_lower_bound(2, [4])


def test_ddp_abelian_z8_is_triangular():
    assert ddp_abelian(build_group("Z8")).perm == triangular_ddp(3).perm


@pytest.mark.parametrize("text", ["Z2", "Z12", "Z4xZ9xZ5", "Z3xZ2xZ5", "Z16xZ3"])
def test_ddp_abelian_verifies(text):
    G = build_group(text)
    s = ddp_abelian(G)
    assert verify_ddp(G, s.perm) and s.perm[-1] == group_sum(G)


@pytest.mark.parametrize("n", range(1, 41))
def test_ddp_abelian_classification(n):
    for moduli in abelian_types(n):
        G = build_group(cyclic_product(moduli))
        if n == 1 or sum(1 for m in moduli if m % 2 == 0) == 1:
            assert verify_ddp(G, ddp_abelian(G).perm)
        else:
            with pytest.raises(NoDdpExists):
                ddp_abelian(G)


def test_ddp_abelian_message():
    with pytest.raises(NoDdpExists, match="0 elements of order 2"):
        ddp_abelian(build_group("Z9"))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(4, 3), (2, 5), (8, 3), (2, 9), (4, 15)]), st.integers(1, 60))
def test_scaled_constructions_sum_to_group_sum(moduli, r):
    G = build_group(cyclic_product(moduli))
    if math.gcd(r, G.exponent) != 1:
        return
    s = scale_sequence(G, ddp_abelian(G), r)
    assert s.perm[-1] == group_sum(G)
