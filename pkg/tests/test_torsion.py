#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from curves import CurveKind, Point, add_points, legendre, make_curve, points
from errors import DegenerateCurveError, NotRationalError, UnsupportedModelError
from ff import field_ctx
from tests.conftest import odd_primes
from torsion import (DescentImage, brute_force_halvable, four_torsion_profile, four_torsion_shape, is_halvable,
                     order4_halvable, order4_points, order8_present, rational_order4_points, shape_label,
                     two_descent)


# ============================================================================
# 2-DESCENTE
# ============================================================================

def test_descent_image_product():
    a = DescentImage((1, -1, -1))
    assert (a * a).is_trivial
    assert not a.is_trivial


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_descent_kernel_is_2L(f13, d):
    L = legendre(f13(d))
    for P in points(L):
        assert is_halvable(L, P) == brute_force_halvable(L, P)


def test_descent_is_a_homomorphism(f13):
    L = legendre(f13(3))
    pts = list(points(L))
    for P in pts:
        for Q in pts[::3]:
            assert two_descent(L, add_points(L, P, Q)) == two_descent(L, P) * two_descent(L, Q)


@pytest.mark.slow
@pytest.mark.parametrize("p", odd_primes(61))
def test_descent_full_range(p):
    ctx = field_ctx(p)
    for d in ctx.parameters():
        L = legendre(d)
        pts = list(points(L))
        for P in pts:
            assert is_halvable(L, P) == brute_force_halvable(L, P), (p, str(d), str(P))
            for Q in pts:
                assert two_descent(L, add_points(L, P, Q)) == two_descent(L, P) * two_descent(L, Q)


def test_descent_on_weierstrass_model(f13):
    # y² = x(x-1)(x-3) développé
    curve = make_curve(CurveKind.WEIERSTRASS, (-4, 3, 0), f13)
    for P in points(curve):
        assert is_halvable(curve, P) == brute_force_halvable(curve, P)


def test_descent_needs_full_two_torsion(f13):
    # x³ + 2 n'a qu'une racine modulo 13 (ou aucune)
    curve = make_curve(CurveKind.WEIERSTRASS, (0, 0, 2), f13)
    with pytest.raises(NotRationalError):
        two_descent(curve, Point(f13(0), f13(0)))
    with pytest.raises(UnsupportedModelError):
        two_descent(make_curve(CurveKind.EDWARDS, (2,), f13), Point(f13(0), f13(1)))


# ============================================================================
# PROFIL DE 4-TORSION
# ============================================================================

def test_profile_f13(f13):
    profile = four_torsion_profile(f13(3))
    assert (profile.chi_d, profile.chi_1md) == (1, -1)
    assert shape_label(profile.four_torsion) == "Z4xZ2"
    assert profile.halvable_two_torsion == ("(0,0)",)
    assert profile.order8_present

    profile = four_torsion_profile(f13(2))
    assert profile.halvable_two_torsion == ("(1,0)",)
    assert not profile.order8_present


def test_profile_q3(f7):
    profile = four_torsion_profile(f7(3))
    assert (profile.chi_d, profile.chi_1md, profile.chi_m1) == (-1, -1, -1)
    assert shape_label(profile.four_torsion) == "Z2xZ2"
    assert profile.halvable_two_torsion == ()


def test_profile_model(f13):
    model = four_torsion_profile(f13(3)).to_model()
    assert model.four_torsion == "Z4xZ2"
    assert model.halvable == ["(0,0)"]


def test_profile_rejects_degenerate(f13):
    with pytest.raises(DegenerateCurveError):
        four_torsion_profile(f13(1))


@pytest.mark.parametrize("p", odd_primes(47))
def test_torsion_tables_prime_fields(p):
    ctx = field_ctx(p)
    for d in ctx.parameters():
        four_torsion_profile(d, brute_force=True)


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (3, 3)])
def test_torsion_tables_extension_fields(p, m):
    ctx = field_ctx(p, m)
    for d in ctx.parameters():
        four_torsion_profile(d, brute_force=True)


@pytest.mark.slow
@pytest.mark.parametrize("p", odd_primes(113))
def test_torsion_tables_full_range(p):
    ctx = field_ctx(p)
    for d in ctx.parameters():
        four_torsion_profile(d, brute_force=True)


@pytest.mark.slow
@pytest.mark.parametrize("p,m", [(5, 2), (3, 3), (7, 2)])
def test_torsion_tables_full_range_extensions(p, m):
    ctx = field_ctx(p, m)
    for d in ctx.parameters():
        four_torsion_profile(d, brute_force=True)


def test_shape_matches_table(f13):
    for d in f13.parameters():
        assert four_torsion_shape(legendre(d)) == four_torsion_profile(d, brute_force=False).four_torsion


# ============================================================================
# POINTS D'ORDRE 4 ET 8
# ============================================================================

@pytest.mark.parametrize("d", [2, 3, 4, 7])
def test_twelve_order4_points(f13, d):
    found = order4_points(f13(d))
    assert len(found) == 12
    assert len({(p.base, p.coords) for p in found}) == 12


def test_rational_order4_points_match_closed_forms(f13):
    for d in f13.parameters():
        closed = {p.rational_coords for p in order4_points(d)} - {None}
        assert closed == set(rational_order4_points(legendre(d)))


def test_order4_halvable_f13(f13):
    d = f13(3)
    # √3 = 4: P+ = (4, 5) est divisible, P- = (9, ...) ne l'est pas
    assert order4_halvable(d, "(0,0)", 1)
    assert not order4_halvable(d, "(0,0)", -1)
    assert order8_present(d)


def test_order4_halvable_matches_brute_force(f13):
    for d in f13.parameters():
        L = legendre(d)
        for point in order4_points(d):
            if point.negated:
                continue
            coords = point.rational_coords
            if coords is None:
                with pytest.raises(NotRationalError):
                    order4_halvable(d, point.base, point.sign)
                continue
            assert order4_halvable(d, point.base, point.sign) == brute_force_halvable(L, coords)


def test_order4_unknown_family(f13):
    with pytest.raises(UnsupportedModelError):
        order4_halvable(f13(3), "(2,0)", 1)
