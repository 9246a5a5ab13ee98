import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ddpgroups.errors import InvalidDescriptor, NonGroup, NotNormal, OrderLimitExceeded
from ddpgroups.groups import (
    Cyclic,
    Dihedral,
    DirectProduct,
    Heisenberg,
    PermGroup,
    Quotient,
    SemidirectCyclic,
    abelian_basis,
    build_group,
    center,
    element_order,
    generated_subgroup,
    involutions,
    parse_descriptor,
    quotient,
    real_elements,
    table_from_array,
    upper_central_series,
)

from oracles import abelian_types, cyclic_product, expected_involutions, word_to_index


@pytest.mark.parametrize("text, expected", [
    ("Z12", Cyclic(12)),
    ("D5", Dihedral(5)),
    ("Z4xZ3", DirectProduct((Cyclic(4), Cyclic(3)))),
    ("SD(7,3;2)", SemidirectCyclic(7, 3, 2)),
    ("Heis3", Heisenberg(3)),
    ("Perm[(0 1 2);(0 1)(2 3)]", PermGroup((((0, 1, 2),), ((0, 1), (2, 3))))),
])
def test_parse_roundtrip(text, expected):
    desc = parse_descriptor(text)
    assert desc == expected
    assert str(desc) == text


@pytest.mark.parametrize("bad", ["", "Z", "Q8", "Z4x", "Z4*Z3", "SD(7,3,2)", "Perm[(0 1 2", "Perm[(0 0)]", "Perm[(0 9)]"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidDescriptor):
        parse_descriptor(bad)


def test_semidirect_requires_homomorphism():
    with pytest.raises(InvalidDescriptor):
        SemidirectCyclic(7, 3, 3)  # 3^3 = 6 mod 7
    with pytest.raises(InvalidDescriptor):
        SemidirectCyclic(9, 6, 3)  # not a unit


def test_cyclic_inverse():
    G = build_group("Z12")
    assert G.order == 12
    assert G.inv[5] == 7


def test_dihedral_relation(d5):
    a, b = 1, 5
    assert d5.order == 10
    assert d5.mul[d5.mul[a, b], a] == b
    assert d5.label(b) == "b" and d5.label(8) == "ba^3"


def test_order21_relation():
    G = build_group("SD(7,3;2)")
    a, b = G.encode((1, 0)), G.encode((0, 1))
    assert G.order == 21 and not G.is_abelian
    assert G.mul[G.mul[a, a], b] == G.mul[b, a]


def test_semidirect_encoding():
    G = build_group("SD(7,3;2)")
    for s in range(3):
        for k in range(7):
            assert G.encode((k, s)) == s * 7 + k


def test_product_encoding_is_lexicographic():
    G = build_group("Z2xZ4")
    assert [G.decode(i) for i in range(8)] == [(i, j) for i in range(2) for j in range(4)]


def test_identity_zero_and_latin():
    for text in ["Z1", "Z12", "D6", "Z2xZ2xZ3", "SD(9,6;4)", "Heis3", "Perm[(0 1 2);(0 1)(2 3)]"]:
        G = build_group(text)
        n = G.order
        ar = np.arange(n)
        assert (G.mul[0] == ar).all() and (G.mul[:, 0] == ar).all()
        assert (np.sort(G.mul, axis=1) == ar).all() and (np.sort(G.mul, axis=0) == ar[:, None]).all()
        assert (G.mul[ar, G.inv] == 0).all()
        assert (G.inv[G.inv] == ar).all()


def test_nongroup_rejected():
    # Latin square with identity but not associative (order 5 loop)
    loop = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    with pytest.raises(NonGroup):
        table_from_array(loop, "loop", range(5))


def test_order_limit(monkeypatch):
    monkeypatch.setenv("DDP_ORDER_LIMIT", "50")
    with pytest.raises(OrderLimitExceeded):
        build_group("Z51")
    with pytest.raises(OrderLimitExceeded):
        build_group("Z8xZ8")


def test_perm_group_a4(a4):
    assert a4.order == 12
    assert len(involutions(a4)) == 3
    assert len(center(a4)) == 1


def test_perm_group_s3_from_transpositions():
    G = build_group("Perm[(0 1);(1 2)]")
    assert G.order == 6 and not G.is_abelian


@pytest.mark.parametrize("text, g, order", [("Z12", 5, 12), ("D5", 5, 2), ("Z2xZ4", 6, 2), ("Z2xZ4", 5, 4)])
def test_element_order(text, g, order):
    G = build_group(text)
    assert element_order(G, g) == order
    assert G.order % order == 0


def test_element_order_z2xz4_by_label():
    G = build_group("Z2xZ4")
    assert element_order(G, G.encode((1, 2))) == 2


def test_involutions():
    assert involutions(build_group("Z12")) == [6]
    assert len(involutions(build_group("Z2xZ2"))) == 3
    assert involutions(build_group("D5")) == [5, 6, 7, 8, 9]


@pytest.mark.parametrize("n", range(1, 25))
def test_involution_count_abelian_types(n):
    for moduli in abelian_types(n):
        assert len(involutions(build_group(cyclic_product(moduli)))) == expected_involutions(moduli)


def test_real_elements():
    assert real_elements(build_group("Z7")) == [0]
    assert real_elements(build_group("Z12")) == [0, 6]


def test_real_elements_in_semidirect_kernel():
    # multiplier t^2 = 2 for the primitive root t = 3 mod 7
    G = build_group("SD(7,6;2)")
    assert set(range(7)) & set(real_elements(G)) == {0}


def test_inverting_multiplier_makes_kernel_real():
    # 3^3 = -1 mod 7, so b^3 inverts a
    G = build_group("SD(7,6;3)")
    assert set(range(7)) <= set(real_elements(G))


def _brute_real(G):
    n = G.order
    return sorted({h for h in range(n) for g in range(n)
                   if G.mul[G.mul[G.inv[g], h], g] == G.inv[h]})


@pytest.mark.parametrize("text", ["D5", "SD(7,3;2)", "Perm[(0 1 2);(0 1)(2 3)]", "Heis3", "SD(9,6;4)"])
def test_real_elements_match_double_loop(text):
    G = build_group(text)
    assert real_elements(G) == _brute_real(G)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 16), min_size=1, max_size=3).filter(lambda ms: math.prod(ms) <= 256))
def test_abelian_real_elements_are_self_inverse(moduli):
    G = build_group(cyclic_product(moduli))
    assert real_elements(G) == [g for g in range(G.order) if G.inv[g] == g]


def test_center():
    assert len(center(build_group("Z9"))) == 9
    assert center(build_group("D5")).members == (0,)
    Z = center(build_group("Heis3"))
    assert len(Z) == 3
    assert all(build_group("Heis3").decode(z)[:2] == (0, 0) for z in Z)


def test_quotient_cyclic():
    G = build_group("Z12")
    N = generated_subgroup(G, [4])
    Q, pi = quotient(G, N)
    assert Q.order == 4 and Q.is_abelian
    assert pi.fibers[0] == (0, 4, 8)
    assert max(Q.orders) == 4
    assert pi.kernel.members == N.members


def test_quotient_dihedral_rotations():
    G = build_group("D6")
    R = generated_subgroup(G, [1])
    assert len(R) == 6
    Q, pi = quotient(G, R)
    assert Q.order == 2


def test_quotient_heisenberg_by_center(heis3):
    Q, pi = quotient(heis3, center(heis3))
    assert Q.order == 9 and Q.is_abelian


def test_quotient_not_normal():
    G = build_group("D5")
    with pytest.raises(NotNormal):
        quotient(G, generated_subgroup(G, [5]))


@pytest.mark.parametrize("text, gens", [("Z12", [3]), ("D6", [2]), ("Heis3", [1]), ("Perm[(0 1 2);(0 1)(2 3)]", [3, 8])])
def test_fibers_partition(text, gens):
    G = build_group(text)
    from ddpgroups.groups import normal_closure
    N = normal_closure(G, gens)
    Q, pi = quotient(G, N)
    assert all(len(f) == len(N) for f in pi.fibers)
    assert sorted(x for f in pi.fibers for x in f) == list(range(G.order))


def test_quotient_descriptor_builds():
    Q = build_group(Quotient(Cyclic(12), (4,)))
    assert Q.order == 4


def test_upper_central_series():
    s = upper_central_series(build_group("Z9"))
    assert [len(z) for z in s] == [1, 9] and s.nilpotent
    s = upper_central_series(build_group("Heis3"))
    assert [len(z) for z in s] == [1, 3, 27] and s.nilpotent
    s = upper_central_series(build_group("Perm[(0 1 2);(0 1)(2 3)]"))
    assert [len(z) for z in s] == [1] and not s.nilpotent


@pytest.mark.parametrize("text, nilpotent", [
    ("Z9", True), ("Heis3", True), ("Z8", True), ("Z3xZ4", True), ("D4", True),
    ("D5", False), ("Perm[(0 1 2);(0 1)(2 3)]", False), ("SD(7,3;2)", False), ("D6", False),
])
def test_nilpotent_flags(text, nilpotent):
    assert upper_central_series(build_group(text)).nilpotent is nilpotent


@pytest.mark.parametrize("moduli", [(12,), (2, 4, 3), (3, 3, 5), (9, 3), (2, 2, 2), (1,)])
def test_abelian_basis_is_isomorphism(moduli):
    G = build_group(cyclic_product(moduli))
    basis = abelian_basis(G)
    assert math.prod(o for _, o in basis) == G.order
    images = set()
    from itertools import product
    for coords in product(*(range(o) for _, o in basis)):
        x = 0
        for (b, _), c in zip(basis, coords):
            x = int(G.mul[x, G.power(b, c)])
        images.add(x)
    assert len(images) == G.order


def test_presentation_words(d5):
    gens = {"a": 1, "b": 5}
    assert word_to_index(d5, "ba^3", gens) == 8
    assert word_to_index(d5, "a^5", gens) == 0
