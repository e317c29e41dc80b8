import itertools
import random

import pytest

from ccakit.fgroup import subgroup_index
from ccakit.permcore import (
    Permutation,
    PermutationGroup,
    centralizer_bruteforce,
    is_normal,
    normal_closure,
    parse_cycles,
)


def brute_closure(gens):
    """Independent closure oracle: repeated multiplication until stable."""
    degree = gens[0].degree
    elems = {Permutation.identity(degree)}
    frontier = list(elems)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return elems


class TestPermutation:
    def test_compose_left_to_right(self):
        # (p * q)(i) = q(p(i))
        p = parse_cycles("(1 2)", 3)
        q = parse_cycles("(2 3)", 3)
        r = p * q
        assert r[0] == q[p[0]]
        assert r.cycle_str() == "(1 3 2)"

    def test_involution_squares_to_identity(self):
        p = parse_cycles("(1 2)", 2)
        assert (p * p).is_identity()

    def test_identity_is_neutral(self):
        p = parse_cycles("(1 3 2)", 4)
        e = Permutation.identity(4)
        assert p * e == p and e * p == p

    def test_three_cycle_squared(self):
        p = parse_cycles("(1 2 3)", 3)
        assert (p * p).cycle_str() == "(1 3 2)"

    def test_inverse(self):
        rng = random.Random(5)
        for _ in range(50):
            images = list(range(7))
            rng.shuffle(images)
            p = Permutation(tuple(images))
            assert (p * p.inverse()).is_identity()
            assert (p.inverse() * p).is_identity()

    def test_order(self):
        assert Permutation.identity(4).order() == 1
        assert parse_cycles("(1 4 2 5)", 5).order() == 4
        assert parse_cycles("(1 2)(3 4 5 6)", 6).order() == 4
        assert parse_cycles("(1 2)(3 4 5)", 5).order() == 6

    def test_pow(self):
        p = parse_cycles("(1 2 3 4 5)", 5)
        assert p ** 5 == Permutation.identity(5)
        assert p ** -1 == p.inverse()
        assert p ** 3 == p * p * p

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))


class TestCycleNotation:
    def test_round_trip(self):
        for text, degree in [("(1 2)(3 4 5 6)", 6), ("(1 4 2 5)", 5),
                             ("()", 3), ("(2 10)(4 11)(5 7)(8 9)", 11)]:
            p = parse_cycles(text, degree)
            assert parse_cycles(p.cycle_str(), degree) == p

    def test_identity_prints_as_unit(self):
        assert Permutation.identity(5).cycle_str() == "()"

    def test_whitespace_insensitive(self):
        a = parse_cycles("(1 2)( 3  4 )", 4)
        b = parse_cycles("(1 2)(3 4)", 4)
        assert a == b

    def test_out_of_range_point(self):
        with pytest.raises(ValueError):
            parse_cycles("(1 7)", 5)

    def test_repeated_point_within_cycle(self):
        with pytest.raises(ValueError):
            parse_cycles("(1 2 1)", 4)

    def test_non_disjoint_cycles_compose(self):
        # cycles are applied left to right, so this is a legal product
        assert parse_cycles("(1 2)(2 3)", 4).cycle_str() == "(1 3 2)"


class TestGroupOrder:
    def test_sym4(self):
        G = PermutationGroup(4, [parse_cycles("(1 2)", 4),
                                 parse_cycles("(1 2 3 4)", 4)])
        assert G.order() == 24

    def test_trivial(self):
        G = PermutationGroup(3, [])
        assert G.order() == 1
        assert G.elements() == [Permutation.identity(3)]

    def test_alt5(self):
        G = PermutationGroup(5, [parse_cycles("(1 2 3)", 5),
                                 parse_cycles("(3 4 5)", 5)])
        assert G.order() == 60

    def test_chain_order_equals_closure_size(self):
        cases = [
            [parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)],
            [parse_cycles("(1 2 3)", 5), parse_cycles("(3 4 5)", 5)],
            [parse_cycles("(1 2)", 6), parse_cycles("(1 2 3 4 5 6)", 6)],
            [parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)],
        ]
        for gens in cases:
            G = PermutationGroup(gens[0].degree, gens)
            assert G.order() == len(brute_closure(gens))

    def test_membership(self):
        G = PermutationGroup(5, [parse_cycles("(1 2 3)", 5),
                                 parse_cycles("(3 4 5)", 5)])
        assert G.contains(parse_cycles("(1 2)(4 5)", 5))
        assert not G.contains(parse_cycles("(1 2)", 5))

    def test_closure_under_products(self):
        G = PermutationGroup(5, [parse_cycles("(1 2 3 4 5)", 5),
                                 parse_cycles("(1 2)", 5)])
        elems = G.elements()
        rng = random.Random(11)
        for _ in range(1000):
            x = rng.choice(elems)
            y = rng.choice(elems)
            assert G.contains(x * y)

    def test_enumeration_deterministic(self):
        gens = [parse_cycles("(1 2 3)", 5), parse_cycles("(3 4 5)", 5)]
        a = PermutationGroup(5, gens).elements()
        b = PermutationGroup(5, gens).elements()
        assert a == b
        assert len(set(a)) == len(a) == 60
        assert a[0].is_identity()


class TestSubgroups:
    def setup_method(self):
        self.S4 = PermutationGroup(4, [parse_cycles("(1 2)", 4),
                                       parse_cycles("(1 2 3 4)", 4)])
        self.A4 = PermutationGroup(4, [parse_cycles("(1 2 3)", 4),
                                       parse_cycles("(2 3 4)", 4)])

    def test_index(self):
        assert subgroup_index(self.S4, self.A4) == 2
        assert subgroup_index(self.S4, self.S4) == 1

    def test_index_requires_containment(self):
        S3 = PermutationGroup(4, [parse_cycles("(1 2)", 4),
                                  parse_cycles("(1 2 3)", 4)])
        C5ish = PermutationGroup(4, [parse_cycles("(1 2)", 4)])
        assert subgroup_index(S3, C5ish) == 3
        with pytest.raises(ValueError):
            subgroup_index(self.A4, S3)

    def test_is_normal(self):
        assert is_normal(self.S4, self.A4)
        S3 = PermutationGroup(3, [parse_cycles("(1 2)", 3),
                                  parse_cycles("(1 2 3)", 3)])
        H = PermutationGroup(3, [parse_cycles("(1 2)", 3)])
        assert not is_normal(S3, H)

    def test_is_normal_matches_definition(self):
        S3 = PermutationGroup(3, [parse_cycles("(1 2)", 3),
                                  parse_cycles("(1 2 3)", 3)])
        for hgens in itertools.combinations(S3.elements()[1:], 1):
            H = S3.generated_subgroup(list(hgens))
            expected = all(
                S3.conjugate(h, g) in H.element_set()
                for h in H.elements() for g in S3.elements())
            assert is_normal(S3, H) == expected

    def test_normal_closure(self):
        S3 = PermutationGroup(3, [parse_cycles("(1 2)", 3),
                                  parse_cycles("(1 2 3)", 3)])
        N = normal_closure(S3, [parse_cycles("(1 2 3)", 3)])
        assert N.order() == 3
        N2 = normal_closure(S3, [parse_cycles("(1 2)", 3)])
        assert N2.order() == 6

    def test_centralizer(self):
        p = parse_cycles("(1 2)(3 4)", 4)
        C = centralizer_bruteforce(self.S4, p)
        assert C.order() == 8
        # oracle: filter all 24 elements directly
        direct = [x for x in self.S4.elements() if x * p == p * x]
        assert set(C.elements()) == set(direct)

    def test_point_stabilizer(self):
        H = self.S4.point_stabilizer(0)
        assert H.order() == 6
        assert all(g[0] == 0 for g in H.elements())
