"""Finite groups from multiplication tables, characters, and the group ring.

Validation is tested with explicit bad tables (each bad in exactly one way),
the twisted involution and norm element are checked against their defining
identities on randomized inputs, and automorphism counts are pinned to the
textbook values for the built-in groups.
"""

import random

import pytest

from gammalab.builtins import (
    cyclic_group,
    dihedral_group_4,
    direct_product,
    klein_four_group,
    quaternion_group,
    standard_library,
    symmetric_group_3,
    trivial_group,
)
from gammalab.errors import (
    BudgetExceededError,
    GroupValidationError,
    IncompatibleInputError,
)
from gammalab.groups import (
    FiniteGroup,
    GroupRingElement,
    OrientationChar,
    all_characters,
    automorphisms,
    automorphisms_preserving,
    bar_involution,
    build_group,
    central_involutions,
    norm_element,
    subgroup_and_cosets,
)


def nontrivial_char(group):
    for w in all_characters(group):
        if not w.is_trivial():
            return w
    raise AssertionError("no nontrivial character available")


def random_ring_element(rng, group, bound=5):
    return GroupRingElement(group, [rng.randint(-bound, bound)
                                    for _ in range(group.order)])


# -- table validation -------------------------------------------------------


def test_build_group_rejects_ragged_table():
    with pytest.raises(GroupValidationError):
        build_group([[0, 1], [1]])


def test_build_group_rejects_bad_identity():
    # Row 0 must read 0, 1, ..., n-1.
    with pytest.raises(GroupValidationError):
        build_group([[1, 0], [0, 1]])


def test_build_group_rejects_out_of_range_entries():
    with pytest.raises(GroupValidationError):
        build_group([[0, 1], [1, 2]])


def test_build_group_rejects_missing_inverse():
    # Element 1 never produces the identity.
    with pytest.raises(GroupValidationError) as info:
        build_group([[0, 1], [1, 1]])
    assert "1" in str(info.value)


def test_build_group_rejects_non_associative_loop():
    # A latin square with identity and two-sided inverses that is not
    # associative: (1*1)*2 = 2 but 1*(1*2) = 4.
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    with pytest.raises(GroupValidationError) as info:
        build_group(table)
    assert "associat" in str(info.value).lower()


def test_build_group_rejects_empty_table():
    with pytest.raises(GroupValidationError):
        build_group([])


def test_build_group_accepts_all_builtins():
    for name, group in standard_library().items():
        rebuilt = build_group([list(row) for row in group.table],
                              labels=list(group.labels))
        assert rebuilt.order == group.order


# -- element arithmetic -----------------------------------------------------


def test_element_orders_and_powers():
    z6 = cyclic_group(6)
    assert [z6.element_order(g) for g in range(6)] == [1, 6, 3, 2, 3, 6]
    assert z6.power(1, 4) == 4
    assert z6.power(1, -1) == 5
    assert z6.power(1, 0) == 0
    q8 = quaternion_group()
    # 1, -1, +-i, +-j, +-k have orders 1, 2, 4, 4, 4, ...
    assert sorted(q8.element_order(g) for g in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_inverse_and_associativity_random():
    rng = random.Random(41)
    groups = list(standard_library().values())
    for _ in range(300):
        group = rng.choice(groups)
        a = rng.randrange(group.order)
        b = rng.randrange(group.order)
        c = rng.randrange(group.order)
        assert group.mul(a, group.inv(a)) == 0
        assert group.mul(group.inv(a), a) == 0
        assert group.mul(group.mul(a, b), c) == group.mul(a, group.mul(b, c))


def test_structural_predicates():
    assert cyclic_group(5).is_cyclic()
    assert cyclic_group(5).is_abelian()
    assert klein_four_group().is_abelian()
    assert not klein_four_group().is_cyclic()
    assert not symmetric_group_3().is_abelian()
    assert not quaternion_group().is_abelian()


def test_centers():
    assert trivial_group().center() == [0]
    assert cyclic_group(4).center() == [0, 1, 2, 3]
    assert symmetric_group_3().center() == [0]
    # The center of the quaternion group is {1, -1}.
    q8 = quaternion_group()
    center = q8.center()
    assert len(center) == 2
    assert 0 in center
    other = next(g for g in center if g != 0)
    assert q8.element_order(other) == 2
    assert len(dihedral_group_4().center()) == 2


def test_involutions():
    assert cyclic_group(2).involutions() == [1]
    assert len(klein_four_group().involutions()) == 3
    assert len(symmetric_group_3().involutions()) == 3
    assert len(dihedral_group_4().involutions()) == 5
    assert len(quaternion_group().involutions()) == 1


def test_generating_set_generates():
    for name, group in standard_library().items():
        gens = group.generating_set()
        data = subgroup_and_cosets(group, gens)
        assert data.index == 1
        assert len(data.elements) == group.order


def test_direct_product_structure():
    z2xz3 = direct_product(cyclic_group(2), cyclic_group(3))
    assert z2xz3.order == 6
    assert z2xz3.is_cyclic()
    k4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert k4.order == 4 and not k4.is_cyclic()


# -- orientation characters -------------------------------------------------


def test_character_counts_match_abelianization():
    expected = {
        "trivial": 1, "z2": 2, "z3": 1, "z4": 2, "z6": 2,
        "klein4": 4, "s3": 2, "d4": 4, "q8": 4,
    }
    lib = standard_library()
    assert set(lib) == set(expected)
    for name, group in lib.items():
        chars = all_characters(group)
        assert len(chars) == expected[name], name
        trivials = [w for w in chars if w.is_trivial()]
        assert len(trivials) == 1


def test_characters_are_multiplicative():
    rng = random.Random(42)
    for group in standard_library().values():
        for w in all_characters(group):
            for _ in range(40):
                a = rng.randrange(group.order)
                b = rng.randrange(group.order)
                assert w.values[group.mul(a, b)] == w.values[a] * w.values[b]
            assert w.values[0] == 1


def test_character_validation():
    z2 = cyclic_group(2)
    with pytest.raises(IncompatibleInputError):
        OrientationChar(z2, [1, 2])  # values must be +-1
    with pytest.raises(IncompatibleInputError):
        OrientationChar(z2, [-1, 1])  # identity must map to +1
    with pytest.raises(IncompatibleInputError):
        OrientationChar(z2, [1])  # wrong length
    z4 = cyclic_group(4)
    with pytest.raises(IncompatibleInputError):
        OrientationChar(z4, [1, -1, 1, 1])  # not multiplicative


def test_character_restriction():
    z6 = cyclic_group(6)
    w = nontrivial_char(z6)
    data = subgroup_and_cosets(z6, [3])  # the 2-element subgroup {e, t^3}
    restricted = w.restrict(data.elements, data.subgroup)
    assert restricted.values == (1, w.values[3])
    assert w.values[3] == -1


# -- group ring and twisted involution --------------------------------------


def test_ring_arithmetic_laws_random():
    rng = random.Random(43)
    groups = [cyclic_group(4), symmetric_group_3(), quaternion_group()]
    for _ in range(200):
        group = rng.choice(groups)
        x = random_ring_element(rng, group)
        y = random_ring_element(rng, group)
        z = random_ring_element(rng, group)
        assert (x + y) - y == x
        assert x * (y + z) == x * y + x * z
        assert (x * y) * z == x * (y * z)
        one = GroupRingElement.one(group)
        assert x * one == x and one * x == x
        assert (-x) + x == GroupRingElement.zero(group)
        assert x.scale(3) == x + x + x


def test_ring_evaluation_maps():
    z4 = cyclic_group(4)
    w = nontrivial_char(z4)
    x = GroupRingElement(z4, [2, -1, 3, 5])
    assert x.ev0() == 2
    assert x.augmentation() == 9
    # Twisted augmentation weights each group element by its sign.
    assert x.twisted_augmentation(w) == 2 - (-1) + 3 - 5


def test_bar_involution_is_antimultiplicative():
    rng = random.Random(44)
    cases = []
    for group in [cyclic_group(4), symmetric_group_3(), dihedral_group_4(),
                  quaternion_group()]:
        for w in all_characters(group):
            cases.append((group, w))
    count = 0
    while count < 250:
        group, w = cases[count % len(cases)]
        x = random_ring_element(rng, group)
        y = random_ring_element(rng, group)
        # bar(x y) = bar(y) bar(x)
        assert bar_involution(group, w, x * y) == (
            bar_involution(group, w, y) * bar_involution(group, w, x))
        # bar is an involution and is additive.
        assert bar_involution(group, w, bar_involution(group, w, x)) == x
        assert bar_involution(group, w, x + y) == (
            bar_involution(group, w, x) + bar_involution(group, w, y))
        count += 1


def test_bar_involution_on_single_elements():
    # bar(g) = w(g) g^-1 on basis elements.
    s3 = symmetric_group_3()
    for w in all_characters(s3):
        for g in range(s3.order):
            x = GroupRingElement.from_element(s3, g)
            expected = GroupRingElement.from_element(s3, s3.inv(g), w.values[g])
            assert bar_involution(s3, w, x) == expected


def test_norm_element_identities():
    for group in standard_library().values():
        for w in all_characters(group):
            n = norm_element(group, w)
            # g n = w(g) n for every g (and symmetrically n g = w(g) n),
            # so the two-sided ideal generated by n is just Z n.
            for g in range(group.order):
                gx = GroupRingElement.from_element(group, g)
                assert gx * n == n.scale(w.values[g])
                assert n * gx == n.scale(w.values[g])
            # Its coefficients are exactly the character values.
            assert n.coeffs == w.values
            # bar sends sum w(g) g to sum w(g)^2 g^-1 = sum g, i.e. it swaps
            # the signed norm with the plain one; they agree only for w = 1.
            plain = norm_element(group, OrientationChar.trivial(group))
            assert bar_involution(group, w, n) == plain
            if w.is_trivial():
                assert bar_involution(group, w, n) == n


def test_central_involutions_listing():
    q8 = quaternion_group()
    wtriv = OrientationChar.trivial(q8)
    taus = central_involutions(q8, wtriv)
    assert len(taus) == 1
    assert q8.element_order(taus[0]) == 2
    # A character with w(tau) = -1 rules tau out.
    for w in all_characters(q8):
        if w.values[taus[0]] == -1:
            assert central_involutions(q8, w) == []
    # S3 has involutions but none central.
    s3 = symmetric_group_3()
    assert central_involutions(s3, OrientationChar.trivial(s3)) == []
    # Klein four: every nontrivial element qualifies under the trivial sign.
    k4 = klein_four_group()
    assert central_involutions(k4, OrientationChar.trivial(k4)) == [1, 2, 3]


# -- subgroups and cosets ---------------------------------------------------


def test_subgroup_of_s3():
    s3 = symmetric_group_3()
    # The rotation subgroup has index 2.
    data = subgroup_and_cosets(s3, [1])
    assert data.index == 2
    assert len(data.elements) == 3
    assert data.subgroup.is_cyclic()
    # A reflection generates an order-2 subgroup of index 3.
    data = subgroup_and_cosets(s3, [3])
    assert data.index == 3
    assert data.subgroup.order == 2


def test_cosets_partition_the_group():
    rng = random.Random(45)
    for group in standard_library().values():
        for _ in range(10):
            gens = [rng.randrange(group.order)
                    for _ in range(rng.randint(0, 2))]
            data = subgroup_and_cosets(group, gens)
            seen = sorted(g for coset in data.cosets for g in coset)
            assert seen == list(range(group.order))
            assert len(data.cosets) == data.index
            assert data.index * len(data.elements) == group.order
            # Each representative lies in its own coset; identity coset first.
            for rep, coset in zip(data.representatives, data.cosets):
                assert rep in coset
            assert data.representatives[0] == 0
            # ambient_to_sub translates subgroup elements to local indices.
            for local, g in enumerate(sorted(data.elements)):
                pass
            for g in data.elements:
                local = data.ambient_to_sub(g)
                assert data.subgroup.order > local >= 0


def test_subgroup_multiplication_is_induced():
    z6 = cyclic_group(6)
    data = subgroup_and_cosets(z6, [2])
    sub = data.subgroup
    assert sub.order == 3
    for a in data.elements:
        for b in data.elements:
            product = z6.mul(a, b)
            assert data.ambient_to_sub(product) == sub.mul(
                data.ambient_to_sub(a), data.ambient_to_sub(b))


# -- automorphisms ----------------------------------------------------------


def test_automorphism_counts():
    assert len(automorphisms(trivial_group())) == 1
    assert len(automorphisms(cyclic_group(2))) == 1
    assert len(automorphisms(cyclic_group(3))) == 2
    assert len(automorphisms(cyclic_group(4))) == 2
    assert len(automorphisms(cyclic_group(6))) == 2
    assert len(automorphisms(klein_four_group())) == 6
    assert len(automorphisms(symmetric_group_3())) == 6
    assert len(automorphisms(dihedral_group_4(), cap=100)) == 8
    assert len(automorphisms(quaternion_group(), cap=100)) == 24


def test_automorphisms_are_automorphisms():
    for group in [cyclic_group(6), klein_four_group(), symmetric_group_3()]:
        for phi in automorphisms(group):
            assert sorted(phi) == list(range(group.order))
            assert phi[0] == 0
            for a in range(group.order):
                for b in range(group.order):
                    assert phi[group.mul(a, b)] == group.mul(phi[a], phi[b])


def test_automorphism_cap_raises():
    with pytest.raises(BudgetExceededError) as info:
        automorphisms(dihedral_group_4(), cap=2)
    assert "cap" in str(info.value)
    with pytest.raises(BudgetExceededError):
        automorphisms_preserving(quaternion_group(),
                                 OrientationChar.trivial(quaternion_group()),
                                 cap=3)


def test_automorphisms_preserving_character():
    z4 = cyclic_group(4)
    w = nontrivial_char(z4)
    # Both automorphisms of Z/4 fix the unique surjection to {+-1}.
    assert len(automorphisms_preserving(z4, w)) == 2
    k4 = klein_four_group()
    for w in all_characters(k4):
        preserved = automorphisms_preserving(k4, w)
        for phi in preserved:
            for g in range(4):
                assert w.values[phi[g]] == w.values[g]
        if w.is_trivial():
            assert len(preserved) == 6
        else:
            # Stabilizer of one of the three index-2 kernels.
            assert len(preserved) == 2
