import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epsmult.errors import (DimensionMismatchError, ParseError, PreconditionError,
                            ZeroIdealError)
from epsmult.ideal_core import MonomialIdeal, format_ideal, minimalize, parse_ideal

from conftest import brute_members, random_proper_ideal


def ideal(d, *gens):
    return MonomialIdeal.from_gens(d, gens)


class TestMinimalize:
    def test_drops_divisible_generator(self):
        assert ideal(2, (1, 2), (2, 0), (2, 3)).gens == ((1, 2), (2, 0))

    def test_empty_is_zero_ideal(self):
        z = MonomialIdeal.from_gens(2, [])
        assert z.is_zero and z.gens == ()

    def test_zero_vector_wins(self):
        u = ideal(2, (0, 0), (1, 5))
        assert u.is_unit and u.gens == ((0, 0),)

    def test_duplicates_collapse(self):
        assert ideal(2, (1, 2), (1, 2), (1, 2)).gens == ((1, 2),)

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(DimensionMismatchError):
            MonomialIdeal.from_gens(2, [(1, 2), (1, 2, 3)])

    def test_negative_exponent_rejected(self):
        with pytest.raises(PreconditionError):
            MonomialIdeal.from_gens(2, [(1, -2)])


class TestContains:
    I = ideal(2, (1, 2), (2, 0))

    def test_examples(self):
        assert not self.I.contains((1, 1))
        assert self.I.contains((2, 7))
        assert not MonomialIdeal.zero(2).contains((0, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            self.I.contains((1, 1, 1))


class TestArithmetic:
    I = ideal(2, (1, 2), (2, 0))

    def test_square(self):
        assert (self.I * self.I).gens == ((2, 4), (3, 2), (4, 0))

    def test_power_zero_is_unit(self):
        assert self.I.power(0).is_unit
        assert MonomialIdeal.zero(2).power(0).is_unit

    def test_multiply_by_unit_is_identity(self):
        assert self.I.multiply(MonomialIdeal.unit(2)) == self.I

    def test_multiply_by_zero(self):
        assert self.I.multiply(MonomialIdeal.zero(2)).is_zero

    def test_add(self):
        assert ideal(2, (2, 0)).add(ideal(2, (0, 2))).gens == ((0, 2), (2, 0))

    def test_intersect_principal(self):
        assert ideal(2, (1, 0)).intersect(ideal(2, (0, 1))).gens == ((1, 1),)

    def test_intersect_example(self):
        # frozen from the box membership oracle on [0,4]^2
        got = ideal(2, (0, 2)).intersect(ideal(2, (2, 0), (1, 1)))
        assert got.gens == ((1, 2),)
        lhs = brute_members(((0, 2),), (4, 4))
        rhs = brute_members(((2, 0), (1, 1)), (4, 4))
        assert brute_members(got.gens, (4, 4)) == lhs & rhs


class TestColonAndSaturation:
    I = ideal(2, (1, 2), (2, 0))

    @staticmethod
    def colon_by_power_oracle(ideal_, i, k):
        # I : xi^k has generators max(g - k e_i, 0)
        gens = [tuple(max(e - k, 0) if j == i - 1 else e for j, e in enumerate(g))
                for g in ideal_.gens]
        return MonomialIdeal.from_gens(ideal_.d, gens)

    def stable_colon(self, ideal_, i):
        k = 1
        while True:
            a = self.colon_by_power_oracle(ideal_, i, k)
            b = self.colon_by_power_oracle(ideal_, i, k + 1)
            if a == b:
                return a
            k += 1

    def test_colon_examples(self):
        assert self.I.colon_var_sat(2).gens == ((1, 0),)
        assert self.I.colon_var_sat(1).is_unit
        assert ideal(3, (1, 1, 1)).colon_var_sat(1).gens == ((0, 1, 1),)

    def test_colon_matches_stabilized_oracle(self):
        for i in (1, 2):
            assert self.I.colon_var_sat(i) == self.stable_colon(self.I, i)

    def test_colon_bad_index(self):
        with pytest.raises(PreconditionError):
            self.I.colon_var_sat(3)

    def test_saturate_examples(self):
        assert self.I.saturate().gens == ((1, 0),)
        assert ideal(2, (2, 0), (0, 2)).saturate().is_unit
        assert ideal(3, (1, 1, 1)).saturate().gens == ((1, 1, 1),)

    def test_zero_ideal_rejected(self):
        with pytest.raises(ZeroIdealError):
            MonomialIdeal.zero(2).saturate()
        with pytest.raises(ZeroIdealError):
            MonomialIdeal.zero(2).colon_var_sat(1)
        with pytest.raises(ZeroIdealError):
            MonomialIdeal.zero(2).localize({1})


class TestLocalize:
    I = ideal(2, (1, 2), (2, 0))

    def test_examples(self):
        assert self.I.localize({2}).gens == ((1, 0),)
        assert self.I.localize({1}).is_unit
        assert self.I.localize(set()) == self.I

    def test_matches_iterated_colon(self):
        got = self.I.localize({2})
        assert got == self.I.colon_var_sat(2)
        both = ideal(3, (2, 1, 3), (0, 4, 1)).localize({1, 3})
        via_colon = ideal(3, (2, 1, 3), (0, 4, 1)).colon_var_sat(1).colon_var_sat(3)
        assert both == via_colon

    def test_bad_subset(self):
        with pytest.raises(PreconditionError):
            self.I.localize({0})


class TestBigExponents:
    def test_pure_python_path_agrees_with_scaled_kernel_path(self):
        small = ideal(2, (1, 2), (2, 0))
        shift = 1 << 40
        big = MonomialIdeal.from_gens(2, [(a * shift, b * shift) for a, b in small.gens])
        prod = big.multiply(big)
        expected = tuple(tuple(e * shift for e in g) for g in (small * small).gens)
        assert prod.gens == expected
        assert big.saturate().gens == ((shift, 0),)


IDEAL_GENS = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any),
    min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(IDEAL_GENS, IDEAL_GENS)
def test_antichain_preserved_and_box_agreement(g1, g2):
    I = MonomialIdeal.from_gens(2, g1)
    J = MonomialIdeal.from_gens(2, g2)
    bound = 2 * max(max(max(g) for g in g1), max(max(g) for g in g2), 1)
    box = (bound, bound)
    for result in (I * J, I + J, I.intersect(J)):
        for a in result.gens:
            for b in result.gens:
                if a != b:
                    assert not all(x <= y for x, y in zip(a, b))
    prod_members = {tuple(a + b for a, b in zip(p, q))
                    for p in brute_members(g1, box) for q in brute_members(g2, box)}
    prod_members = {p for p in prod_members if all(c <= bound for c in p)}
    assert brute_members((I * J).gens, box) == prod_members
    assert brute_members((I + J).gens, box) == brute_members(g1, box) | brute_members(g2, box)
    assert brute_members(I.intersect(J).gens, box) == brute_members(g1, box) & brute_members(g2, box)


@settings(max_examples=60, deadline=None)
@given(IDEAL_GENS, IDEAL_GENS,
       st.tuples(st.integers(0, 4), st.integers(0, 4)),
       st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_membership_homomorphism(g1, g2, a, b):
    I = MonomialIdeal.from_gens(2, g1)
    J = MonomialIdeal.from_gens(2, g2)
    if I.contains(a) and J.contains(b):
        assert (I * J).contains(tuple(x + y for x, y in zip(a, b)))


@settings(max_examples=60, deadline=None)
@given(IDEAL_GENS)
def test_saturation_properties(gens):
    I = MonomialIdeal.from_gens(2, gens)
    sat = I.saturate()
    assert I.is_subset(sat)
    assert sat.saturate() == sat
    cap = I.max_exponents()
    for g in sat.gens:
        assert all(e <= c for e, c in zip(g, cap))


def test_random_ops_preserve_antichain_d3(rng):
    for _ in range(25):
        I = random_proper_ideal(rng, 3, 4, 4)
        J = random_proper_ideal(rng, 3, 4, 4)
        for result in (I * J, I + J, I.intersect(J), I.saturate()):
            gens = result.gens
            for a in gens:
                for b in gens:
                    if a != b:
                        assert not all(x <= y for x, y in zip(a, b))


def test_box_membership_agreement_d3(rng):
    for _ in range(8):
        I = random_proper_ideal(rng, 3, 4, 3)
        J = random_proper_ideal(rng, 3, 4, 3)
        bound = 2 * max(max(g) for g in I.gens + J.gens)
        box = (bound,) * 3
        members_i = brute_members(I.gens, box)
        members_j = brute_members(J.gens, box)
        assert brute_members((I + J).gens, box) == members_i | members_j
        assert brute_members(I.intersect(J).gens, box) == members_i & members_j
        prod = {tuple(a + b for a, b in zip(p, q))
                for p in members_i for q in members_j}
        prod = {p for p in prod if all(c <= bound for c in p)}
        assert brute_members((I * J).gens, box) == prod


class TestParsing:
    def test_text_roundtrip(self):
        I = parse_ideal("x1*x2^2, x1^2")
        assert I.gens == ((1, 2), (2, 0))
        assert parse_ideal(format_ideal(I)) == I

    def test_aliases(self):
        assert parse_ideal("x*y^2, x^2") == parse_ideal("x1*x2^2, x1^2")
        assert parse_ideal("z") .gens == ((0, 0, 1),)

    def test_json_form(self):
        I = parse_ideal("[[1,2],[2,0]]")
        assert I.gens == ((1, 2), (2, 0))
        assert parse_ideal(format_ideal(I, style="json")) == I

    def test_unit_and_zero(self):
        assert parse_ideal("1", 2).is_unit
        assert parse_ideal("0", d=2).is_zero
        assert parse_ideal("[]", d=3).is_zero

    def test_dim_expansion(self):
        assert parse_ideal("x^2", d=3).gens == ((2, 0, 0),)

    def test_errors(self):
        with pytest.raises(ParseError):
            parse_ideal("x ** 2")
        with pytest.raises(ParseError):
            parse_ideal("0")
        with pytest.raises(ParseError):
            parse_ideal("[[1,2],[1]]")
        with pytest.raises(ParseError):
            parse_ideal("x3", d=2)

    def test_canonical_generator_order(self):
        a = MonomialIdeal.from_gens(2, [(2, 0), (1, 2)])
        b = MonomialIdeal.from_gens(2, [(1, 2), (2, 0)])
        assert a.gens == b.gens == ((1, 2), (2, 0))
        assert hash(a) == hash(b)


def test_minimalize_helper():
    assert minimalize(2, [(1, 2), (2, 3)]).gens == ((1, 2),)
