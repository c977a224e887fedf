#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import random

import pytest

from errors import FieldBoundError, FieldError, NotRationalError
from ff import (PowerClass, arith, field_ctx, format_element, format_field_ctx, fourth_power_class,
                lift_to_extension, minimal_lift, parse_element, parse_field_ctx, smallest_irreducible,
                sqrt_canonical, williams_identity)
from tests.conftest import odd_primes


# ============================================================================
# CONSTRUCTION
# ============================================================================

def test_field_ctx_rejects_even_and_composite():
    with pytest.raises(FieldError):
        field_ctx(2)
    with pytest.raises(FieldError):
        field_ctx(15)


def test_field_ctx_rejects_reducible_modulus():
    # x^2 - 1 = (x - 1)(x + 1)
    with pytest.raises(FieldError):
        field_ctx(3, 2, modulus=(2, 0, 1))


def test_field_ctx_bound():
    with pytest.raises(FieldBoundError):
        field_ctx(101, 2, max_q=1000)


def test_field_ctx_is_cached():
    assert field_ctx(13) is field_ctx(13)


def test_smallest_irreducible_f9(f9):
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert format_field_ctx(f9) == "3^2:1,0,1"


# ============================================================================
# ARITHMÉTIQUE
# ============================================================================

def test_prime_field_arithmetic(f13):
    a, b = f13(5), f13(11)
    assert a + b == 3
    assert a - b == 7
    assert a * b == 3
    assert a / b == a * b.inverse()
    assert b * b.inverse() == 1
    assert a ** 12 == 1


def test_arith_dispatch(f7):
    assert arith(f7(3), f7(5), "add") == 1
    assert arith(f7(3), None, "inv") == 5
    assert arith(f7(3), 2, "pow") == 2
    with pytest.raises(FieldError):
        arith(f7(3), f7(5), "xor")


def test_division_by_zero(f7):
    with pytest.raises(FieldError):
        f7(3) / f7(0)


def test_mixed_contexts(f7, f13):
    with pytest.raises(FieldError):
        f7(1) + f13(1)


def test_extension_field_inverse(f9):
    for x in f9.nonzero_elements():
        assert x * x.inverse() == f9.one


def test_element_index_bijection(f9):
    assert [x.index for x in f9.elements()] == list(range(9))


# ============================================================================
# CARACTÈRES ET RACINES
# ============================================================================

def test_chi2_mod_13(f13):
    squares = {1, 3, 4, 9, 10, 12}
    for x in f13.nonzero_elements():
        assert x.chi2() == (1 if x.value in squares else -1)
    assert f13(0).chi2() == 0


def test_chi2_is_multiplicative(f9):
    elements = list(f9.nonzero_elements())
    for x in elements:
        for y in elements:
            assert (x * y).chi2() == x.chi2() * y.chi2()


@pytest.mark.parametrize("p", odd_primes(61))
def test_sqrt_canonical_prime_fields(p):
    ctx = field_ctx(p)
    for x in ctx.nonzero_elements():
        root = sqrt_canonical(x)
        if x.chi2() == 1:
            assert root * root == x
            assert root.value <= (p - 1) // 2
        else:
            assert root is None


def test_sqrt_canonical_extension(f9):
    for x in f9.nonzero_elements():
        root = sqrt_canonical(x)
        assert root is not None
        assert root * root == x
        assert root.coeffs <= (-root).coeffs


def test_chi2_vector_matches_chi2(f13):
    assert list(f13.chi2_vector) == [x.chi2() for x in f13.elements()]


def test_fourth_power_class_f13(f13):
    fourth = {1, 3, 9}
    for x in f13.nonzero_elements():
        cls = fourth_power_class(x)
        if x.value in fourth:
            assert cls == PowerClass.FOURTH
        elif x.chi2() == 1:
            assert cls == PowerClass.SQUARE_NOT_FOURTH
        else:
            assert cls == PowerClass.NONSQUARE


def test_fourth_powers_are_squares_when_q_is_3_mod_4(f7):
    for x in f7.nonzero_elements():
        assert fourth_power_class(x) != PowerClass.SQUARE_NOT_FOURTH


# ============================================================================
# EXTENSIONS
# ============================================================================

def test_lift_embeds_homomorphically(f13):
    lift = lift_to_extension(f13, 2)
    assert lift.field.q == 169
    for a in f13.elements():
        for b in (f13(2), f13(7)):
            assert lift.embed(a * b) == lift.embed(a) * lift.embed(b)
            assert lift.embed(a + b) == lift.embed(a) + lift.embed(b)
            assert lift.preimage(lift.embed(a)) == a


def test_lift_from_extension_field(f9):
    lift = lift_to_extension(f9, 2)
    assert lift.field.q == 81
    for a in f9.elements():
        for b in f9.elements():
            assert lift.embed(a * b) == lift.embed(a) * lift.embed(b)


def test_lift_sqrt_of_nonsquare(f13):
    lift = minimal_lift(f13, [f13(2)])
    assert lift.degree == 2
    root = lift.sqrt(f13(2))
    assert root * root == lift.embed(f13(2))
    assert lift.preimage(root) is None


def test_minimal_lift_stays_in_base(f13):
    lift = minimal_lift(f13, [f13(4), f13(3)])
    assert lift.degree == 1
    with pytest.raises(NotRationalError):
        lift.sqrt(f13(2))


def test_lift_bound():
    ctx = field_ctx(101, max_q=5000)
    with pytest.raises(FieldBoundError):
        lift_to_extension(ctx, 2)


# ============================================================================
# SÉRIALISATION
# ============================================================================

def test_parse_element(f13, f9):
    assert parse_element("15", f13) == 2
    assert parse_element("-1", f13) == 12
    x = parse_element("1,2", f9)
    assert x.coeffs == (1, 2)
    assert format_element(x) == "1,2"
    with pytest.raises(FieldError):
        parse_element("1", f9)
    with pytest.raises(FieldError):
        parse_element("a", f13)


def test_field_ctx_literal(f9):
    assert parse_field_ctx(format_field_ctx(f9)) == f9
    assert parse_field_ctx("13^1:0,1") == field_ctx(13)
    with pytest.raises(FieldError):
        parse_field_ctx("x^1")


# ============================================================================
# IDENTITÉ DE SOMMES DE CARACTÈRES
# ============================================================================

@pytest.mark.parametrize("coeffs", [(1, 0, 1, 0, 1, 0), (1, 2, 3, 1, 0, 5), (0, 1, 1, 1, 1, 3)])
def test_williams_identity_with_chi2(f13, coeffs):
    try:
        lhs, rhs = williams_identity(f13, coeffs, lambda x: x.chi2())
    except FieldError:
        pytest.skip("inadmissible coefficients")
    assert lhs == rhs


def test_williams_identity_with_arbitrary_function(f13):
    lhs, rhs = williams_identity(f13, (1, 2, 3, 1, 0, 5), lambda x: x.value ** 2 % 7)
    assert lhs == rhs


def test_williams_identity_inadmissible(f13):
    # numérateur proportionnel au dénominateur
    with pytest.raises(FieldError):
        williams_identity(f13, (2, 2, 2, 1, 1, 1), lambda x: x.chi2())


WILLIAMS_FIELDS = [(p, 1) for p in odd_primes(113)] + [(3, 2), (5, 2), (7, 2), (11, 2), (3, 3), (3, 4)]


@pytest.mark.parametrize("p,m", WILLIAMS_FIELDS)
def test_williams_identity_random_draws(p, m):
    ctx = field_ctx(p, m)
    rng = random.Random(p ** m)
    elements = list(ctx.elements())
    functions = (lambda x: x.chi2(), lambda x: x.index * x.index % 7 - 3)
    admissible = 0
    for _ in range(2000):
        coeffs = [rng.choice(elements) for _ in range(6)]
        try:
            lhs, rhs = williams_identity(ctx, coeffs, functions[admissible % 2])
        except FieldError:
            continue
        assert lhs == rhs, [format_element(c) for c in coeffs]
        admissible += 1
        if admissible == 50:
            break
    assert admissible == 50
