#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from collections import Counter
from dataclasses import replace

import pytest

from curves import (INFINITY, CurveKind, Point, count_points, edwards, exceptional, j_edwards, legendre,
                    make_curve, negate, points, scalar_mul)
from errors import DegenerateCurveError, UnsupportedModelError
from ff import field_ctx
from maps import (MAP_NAMES, SIGMA_KINDS, DefinedOver, catalog, compose, edwards_iso_class, edwards_j_fiber,
                  epsilon_consistency, epsilon_isogeny, huff_param, orbit, psi, psi_dual, psi_point, rho,
                  rho_dual, sigma_map, sigma_target, tau_chain, verify_isogeny)


def _ok(f):
    report = verify_isogeny(f, samples=200, seed=1)
    assert report.ok, report.counterexamples
    assert report.undefined_points == 0
    return report


# ============================================================================
# ψ ET SA FACTORISATION
# ============================================================================

@pytest.mark.parametrize("d", [2, 3, 4, 7, 12])
def test_psi_and_dual_are_isogenies(f13, d):
    report = _ok(psi(f13(d)))
    assert report.degree == 2
    assert report.counts_equal is True
    _ok(psi_dual(f13(d)))


def test_psi_kernel(f13):
    d = f13(2)
    assert psi_point(d, Point(f13(0), f13(1))) == INFINITY
    assert psi_point(d, Point(f13(0), f13(12))) == INFINITY


def test_psi_over_extension_field(f9):
    for d in list(f9.parameters())[:4]:
        _ok(psi(d))


def test_tau_chain_factors_psi(f13):
    d = f13(4)
    tau, tau_inv, phi, phi_dual = tau_chain(d)
    f = psi(d)
    for P in points(edwards(d)):
        assert phi.evaluator(tau.evaluator(P)) == f.evaluator(P)
        assert tau_inv.evaluator(tau.evaluator(P)) == P
    for P in points(legendre(d)):
        assert tau_inv.evaluator(phi_dual.evaluator(P)) == psi_dual(d).evaluator(P)


def test_psi_dual_after_psi_is_doubling(f13):
    d = f13(3)
    E = edwards(d)
    f, g = psi(d), psi_dual(d)
    pairs = [(g.evaluator(f.evaluator(P)), scalar_mul(E, 2, P)) for P in points(E)]
    assert all(a == b for a, b in pairs) or all(a == negate(E, b) for a, b in pairs)


# ============================================================================
# ORBITE ET σ
# ============================================================================

def test_orbit_sizes(f13):
    assert [v.value for v in orbit(f13(3))] == [3, 11, 9, 5, 6, 8]
    assert [v.value for v in orbit(f13(2))] == [2, 12, 7]
    with pytest.raises(DegenerateCurveError):
        orbit(f13(1))


@pytest.mark.parametrize("kind", SIGMA_KINDS)
def test_sigma_maps(f13, kind):
    for d in (f13(3), f13(5)):
        f = sigma_map(kind, d)
        assert f.codomain == legendre(sigma_target(kind, d))
        _ok(f)


def test_sigma_defined_over(f7):
    # -1 n'est pas un carré modulo 7
    assert sigma_map("s1", f7(3)).defined_over == DefinedOver.QUADRATIC
    assert sigma_map("s2", f7(2)).defined_over == DefinedOver.BASE


def test_unknown_sigma(f13):
    with pytest.raises(UnsupportedModelError):
        sigma_target("s3", f13(2))


@pytest.mark.parametrize("kind", SIGMA_KINDS)
def test_omega_four_isogenies(f13, kind):
    report = _ok(catalog(f"omega-{kind}", f13(4)))
    assert report.degree == 4


def test_compose_keeps_working_field(f13):
    d = f13(3)
    f = compose(psi(d), sigma_map("s2", d, psi(d).lift))
    assert f.degree == 2
    assert f.codomain == legendre(1 / d)


# ============================================================================
# ρ, ε ET MONTGOMERY
# ============================================================================

@pytest.mark.parametrize("sign", [1, -1])
def test_rho_and_dual(f13, sign):
    for d in (f13(3), f13(4), f13(10)):
        _ok(rho(d, sign))
        _ok(rho_dual(d, sign))


@pytest.mark.parametrize("index", [1, 2, 3])
@pytest.mark.parametrize("sign", [1, -1])
def test_epsilon_isogenies(f13, index, sign):
    for d in (f13(3), f13(6), f13(10)):
        f = epsilon_isogeny(index, sign, d)
        assert f.degree == 2
        _ok(f)
        assert epsilon_consistency(index, sign, d)


def test_epsilon_rejects_unknown_index(f13):
    with pytest.raises(UnsupportedModelError):
        epsilon_isogeny(4, 1, f13(3))


@pytest.mark.parametrize("name,d", [("rho+", 4), ("rho-", 4), ("rho-dual+", 4), ("eps1+", 3), ("eps1-", 3),
                                    ("eps2+", 6), ("eps3+", 10), ("eps3-", 10)])
def test_every_domain_point_is_checked(f13, name, d):
    f = catalog(name, f13(d))
    report = _ok(f)
    assert report.points_checked == len(list(points(f.working_domain)))


@pytest.mark.parametrize("sign", [1, -1])
def test_rho_is_a_bijection_with_exceptional_images(f13, sign):
    d = f13(4)
    f = rho(d, sign)
    images = [f.evaluator(P) for P in points(f.working_domain)]
    assert set(images) == set(points(f.working_codomain))
    assert len(set(images)) == len(images)
    # les deux autres points de 2-torsion vont sur Y+ et Y-
    assert {f.evaluator(Point(f13(1), f13(0))), f.evaluator(Point(d, f13(0)))} == {exceptional("Y+"),
                                                                                 exceptional("Y-")}
    assert exceptional("X+") in images and exceptional("X-") in images


@pytest.mark.parametrize("d", [4, 10])
def test_rho_dual_inverts_rho_on_every_point(f13, d):
    for sign in (1, -1):
        f, g = rho(f13(d), sign), rho_dual(f13(d), sign)
        for P in points(f.working_domain):
            assert g.evaluator(f.evaluator(P)) == P
        for Q in points(g.working_domain):
            assert f.evaluator(g.evaluator(Q)) == Q


@pytest.mark.parametrize("index,d", [(1, 3), (2, 6), (3, 10), (1, 4), (3, 4)])
def test_epsilon_is_two_to_one(f13, index, d):
    for sign in (1, -1):
        f = epsilon_isogeny(index, sign, f13(d))
        images = Counter(f.evaluator(P) for P in points(f.working_domain))
        assert None not in images
        assert set(images.values()) == {2}


def test_verify_flags_points_without_image(f13):
    f = psi(f13(3))
    holed = replace(f, evaluator=lambda P: None if P.is_affine and P.y.is_zero() else psi_point(f13(3), P))
    report = verify_isogeny(holed, samples=50, seed=0)
    assert not report.membership
    assert report.undefined_points == 2
    assert any("has no image" in c for c in report.counterexamples)


def test_montgomery_and_edwards_to_legendre(f13):
    for d in (f13(4), f13(10)):
        _ok(catalog("montgomery", d))
        _ok(catalog("edwards-to-legendre", d))


# ============================================================================
# EDWARDS TORDUES ET HUFF
# ============================================================================

def test_twisted_maps(f13):
    a, d = f13(3), f13(5)
    for name in ("twisted-to-edwards", "psi-twisted", "psi-twisted-dual"):
        report = verify_isogeny(catalog(name, d, a), samples=50, seed=0)
        assert report.membership, report.counterexamples
        assert report.kernel_ok


def test_twisted_map_needs_a(f13):
    with pytest.raises(UnsupportedModelError):
        catalog("psi-twisted", f13(5))


@pytest.mark.parametrize("a,b", [(1, 2), (2, 5), (3, 7)])
def test_huff_param_counts(f13, a, b):
    d = huff_param(f13(a), f13(b))
    assert d.chi2() == 1
    huff = make_curve(CurveKind.HUFF, (a, b), f13)
    assert count_points(huff) == count_points(edwards(d))


# ============================================================================
# CLASSE D'ISOMORPHISME
# ============================================================================

@pytest.mark.parametrize("d", [2, 3, 4, 6, 10])
def test_edwards_iso_class_within_j_fiber(f13, d):
    members = edwards_iso_class(f13(d))
    assert f13(d) in members and 1 / f13(d) in members
    fiber = edwards_j_fiber(f13(d))
    assert set(members) <= set(fiber)
    j = j_edwards(f13(d))
    assert all(j_edwards(v) == j for v in members)


def test_catalog_covers_every_name(f13):
    d, a = f13(3), f13(2)
    for name in MAP_NAMES:
        f = catalog(name, d, a)
        assert f.name == name
    with pytest.raises(UnsupportedModelError):
        catalog("nope", d)


# ============================================================================
# BALAYAGE DU CATALOGUE
# ============================================================================

TWISTED_NAMES = ("psi-twisted", "psi-twisted-dual", "twisted-to-edwards")


def _twisted_coefficients(ctx, d):
    """Un coefficient a carré et un non carré, distincts de d."""
    chosen = {}
    for a in ctx.parameters():
        if a != d:
            chosen.setdefault(a.chi2(), a)
    return list(chosen.values())


@pytest.mark.slow
@pytest.mark.parametrize("p", [13, 17, 29, 37])
def test_catalog_sweep(p):
    ctx = field_ctx(p)
    for d in ctx.parameters():
        maps = []
        for name in MAP_NAMES:
            if name in TWISTED_NAMES:
                continue
            try:
                maps.append(catalog(name, d))
            except DegenerateCurveError:
                continue
        for a in _twisted_coefficients(ctx, d):
            maps += [catalog(name, d, a) for name in TWISTED_NAMES]
        for f in maps:
            report = verify_isogeny(f, samples=1000, seed=p)
            assert report.ok, (f.name, str(d), report.counterexamples)
            if f.total:
                assert report.undefined_points == 0, (f.name, str(d))
