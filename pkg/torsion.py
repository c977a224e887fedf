#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
2-descente, 4-torsion et points d'ordre 4 / 8 des courbes de Legendre L_d.

FONCTIONS PRINCIPALES:
1. two_descent() / is_halvable() - Homomorphisme de 2-descente et divisibilité par 2
2. four_torsion_profile() - Profil de 4-torsion (tables selon q mod 4) vérifié par force brute
3. order4_points() - Les douze points d'ordre 4 en forme close
4. order4_halvable() - Critère de divisibilité des points d'ordre 4 (existence d'un point d'ordre 8)
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from curves import (CurveKind, CurveModel, GroupStructure, Point, add_points, base_change,
                    identity, legendre, negate, points, scalar_mul)
from errors import CensusInvariantError, DegenerateCurveError, NotRationalError, UnsupportedModelError
from ff import FieldElement, Lift, minimal_lift
from models import TorsionProfileModel

logger = logging.getLogger(__name__)

TWO_TORSION_LABELS = ("(0,0)", "(1,0)", "(d,0)")

# (chi2(d), chi2(1-d)) -> (points de L_d[2] ∩ 2L_d, forme de la 4-torsion)
FOUR_TORSION_TABLE_Q1: Dict[Tuple[int, int], Tuple[Tuple[str, ...], Tuple[int, int]]] = {
    (1, 1): (("(0,0)", "(1,0)", "(d,0)"), (4, 4)),
    (-1, 1): (("(1,0)",), (2, 4)),
    (1, -1): (("(0,0)",), (2, 4)),
    (-1, -1): ((), (2, 2)),
}
FOUR_TORSION_TABLE_Q3: Dict[Tuple[int, int], Tuple[Tuple[str, ...], Tuple[int, int]]] = {
    (1, 1): (("(1,0)",), (2, 4)),
    (-1, 1): (("(1,0)",), (2, 4)),
    (1, -1): (("(d,0)",), (2, 4)),
    (-1, -1): ((), (2, 2)),
}


@dataclass(frozen=True)
class DescentImage:
    """Triple of classes in F_q*/(F_q*)², each stored as ±1."""

    signs: Tuple[int, int, int]

    def __mul__(self, other: "DescentImage") -> "DescentImage":
        return DescentImage(tuple(a * b for a, b in zip(self.signs, other.signs)))

    @property
    def is_trivial(self) -> bool:
        return self.signs == (1, 1, 1)


@dataclass(frozen=True)
class TorsionProfile:
    chi_d: int
    chi_1md: int
    chi_m1: int
    four_torsion: GroupStructure
    halvable_two_torsion: Tuple[str, ...]
    order8_present: bool

    def to_model(self) -> TorsionProfileModel:
        return TorsionProfileModel(
            chi_d=self.chi_d,
            chi_1md=self.chi_1md,
            chi_m1=self.chi_m1,
            four_torsion=shape_label(self.four_torsion),
            halvable=list(self.halvable_two_torsion),
            order8=self.order8_present,
        )


@dataclass(frozen=True)
class Order4Point:
    base: str
    sign: int
    negated: bool
    coords: Point
    lift: Lift

    @property
    def rational_coords(self) -> Optional[Point]:
        """The point over F_q, or None if it needs the extension."""
        x, y = self.lift.preimage(self.coords.x), self.lift.preimage(self.coords.y)
        if x is None or y is None:
            return None
        return Point(x, y)


def shape_label(shape: GroupStructure) -> str:
    """Z4xZ2 style, larger factor first."""
    return f"Z{shape.n2}xZ{shape.n1}"


# ============================================================================
# 2-DESCENTE
# ============================================================================

def two_torsion_roots(curve: CurveModel) -> Tuple[FieldElement, FieldElement, FieldElement]:
    """Roots (α, β, γ) of the cubic; (0, 1, d) for L_d."""
    if curve.kind == CurveKind.LEGENDRE:
        ctx = curve.ctx
        return ctx.zero, ctx.one, curve.d
    if curve.kind != CurveKind.WEIERSTRASS:
        raise UnsupportedModelError(f"2-descent needs a Legendre or Weierstrass model, got {curve.kind.value}")
    a2, a4, a6 = curve.params
    roots = [x for x in curve.ctx.elements() if (((x + a2) * x + a4) * x + a6).is_zero()]
    if len(roots) != 3:
        raise NotRationalError(f"{curve} has no full rational 2-torsion")
    return roots[0], roots[1], roots[2]


def two_descent(curve: CurveModel, P: Point) -> DescentImage:
    """
    ⭐ HOMOMORPHISME DE 2-DESCENTE ⭐
    P -> (chi2(x-α), chi2(x-β), chi2(x-γ)), de noyau 2C(F_q).

    Les lignes spéciales: O -> (1,1,1) et, pour (α, 0),
    ((α-β)(α-γ), α-β, α-γ) (de même pour β et γ).
    """
    alpha, beta, gamma = two_torsion_roots(curve)
    if P.is_infinity:
        return DescentImage((1, 1, 1))
    x = P.x
    if x == alpha:
        factors = ((alpha - beta) * (alpha - gamma), alpha - beta, alpha - gamma)
    elif x == beta:
        factors = (beta - alpha, (beta - alpha) * (beta - gamma), beta - gamma)
    elif x == gamma:
        factors = (gamma - alpha, gamma - beta, (gamma - alpha) * (gamma - beta))
    else:
        factors = (x - alpha, x - beta, x - gamma)
    return DescentImage(tuple(f.chi2() for f in factors))


def is_halvable(curve: CurveModel, P: Point) -> bool:
    return two_descent(curve, P).is_trivial


def brute_force_halvable(curve: CurveModel, P: Point) -> bool:
    """∃Q: [2]Q = P, par balayage."""
    return any(add_points(curve, Q, Q) == P for Q in points(curve))


# ============================================================================
# 4-TORSION
# ============================================================================

def four_torsion_shape(curve: CurveModel) -> GroupStructure:
    """Shape of C[4](F_q) from the sizes of C[2](F_q) and C[4](F_q)."""
    zero = identity(curve)
    n2 = n4 = 0
    for P in points(curve):
        double = add_points(curve, P, P)
        if double == zero:
            n2 += 1
            n4 += 1
        elif add_points(curve, double, double) == zero:
            n4 += 1
    if n2 == 1:
        return GroupStructure(1, 1)
    if n2 == 2:
        return GroupStructure(1, n4)
    return GroupStructure(*{4: (2, 2), 8: (2, 4), 16: (4, 4)}[n4])


def _two_torsion_points(d: FieldElement) -> Dict[str, Point]:
    zero = d.ctx.zero
    return {"(0,0)": Point(zero, zero), "(1,0)": Point(d.ctx.one, zero), "(d,0)": Point(d, zero)}


def rational_order4_points(curve: CurveModel) -> List[Point]:
    """Points with [2]P != O and [4]P = O, by scan."""
    zero = identity(curve)
    found = []
    for P in points(curve):
        double = add_points(curve, P, P)
        if double != zero and add_points(curve, double, double) == zero:
            found.append(P)
    return found


def order8_present(d: FieldElement) -> bool:
    """L_d(F_q) has a point of order 8 iff some rational order-4 point is halvable."""
    L = legendre(d)
    return any(is_halvable(L, P) for P in rational_order4_points(L))


def four_torsion_profile(d: FieldElement, brute_force: bool = True) -> TorsionProfile:
    """
    ⭐ PROFIL DE 4-TORSION DE L_d ⭐
    Ligne de table choisie par q mod 4 et (chi2(d), chi2(1-d)); avec brute_force,
    la forme et les points divisibles sont recalculés et comparés.

    Raises:
        DegenerateCurveError: d dans {0, 1}
        CensusInvariantError: la table et le balayage ne concordent pas
    """
    if d == 0 or d == 1:
        raise DegenerateCurveError(f"d = {d}")
    ctx = d.ctx
    chi_d, chi_1md, chi_m1 = d.chi2(), (1 - d).chi2(), (-ctx.one).chi2()
    table = FOUR_TORSION_TABLE_Q1 if ctx.q % 4 == 1 else FOUR_TORSION_TABLE_Q3
    halvable, (n1, n2) = table[(chi_d, chi_1md)]
    shape = GroupStructure(n1, n2)

    L = legendre(d)
    if brute_force:
        observed_shape = four_torsion_shape(L)
        observed_halvable = tuple(label for label, P in _two_torsion_points(d).items()
                                  if brute_force_halvable(L, P))
        if observed_shape != shape or observed_halvable != halvable:
            raise CensusInvariantError(
                f"L_{d} over F_{ctx.q}: table predicts {shape_label(shape)} {halvable}, "
                f"scan gives {shape_label(observed_shape)} {observed_halvable}"
            )
    return TorsionProfile(chi_d, chi_1md, chi_m1, shape, halvable, order8_present(d))


# ============================================================================
# POINTS D'ORDRE 4
# ============================================================================

def _family_points(family: str, d: FieldElement) -> Tuple[Lift, List[Tuple[int, Point]]]:
    ctx = d.ctx
    if family == "(0,0)":
        lift = minimal_lift(ctx, [-ctx.one, d])
        s, i = lift.sqrt(d), lift.sqrt(-ctx.one)
        # (±√d, √-1·√d(1 ∓ √d))
        return lift, [(1, Point(s, i * s * (1 - s))), (-1, Point(-s, i * s * (1 + s)))]
    if family == "(1,0)":
        lift = minimal_lift(ctx, [1 - d])
        w = lift.sqrt(1 - d)
        return lift, [(1, Point(1 + w, w * (1 + w))), (-1, Point(1 - w, w * (1 - w)))]
    if family == "(d,0)":
        lift = minimal_lift(ctx, [d, d - 1])
        s, v = lift.sqrt(d), lift.sqrt(d - 1)
        u = s * v
        dw = lift.embed(d)
        return lift, [(1, Point(dw + u, u * (s + v))), (-1, Point(dw - u, u * (s - v)))]
    raise UnsupportedModelError(f"Unknown 2-torsion family '{family}'")


def order4_points(d: FieldElement) -> List[Order4Point]:
    """
    Les douze points d'ordre 4 de L_d (forme close et opposés), chacun sur le
    plus petit corps de travail de sa famille. [2]P = base est vérifié.
    """
    if d == 0 or d == 1:
        raise DegenerateCurveError(f"d = {d}")
    result = []
    for family in TWO_TORSION_LABELS:
        lift, pairs = _family_points(family, d)
        L = base_change(legendre(d), lift)
        base = _two_torsion_points(lift.embed(d))[family]
        for sign, P in pairs:
            for negated, Q in ((False, P), (True, negate(L, P))):
                if scalar_mul(L, 2, Q) != base:
                    raise CensusInvariantError(f"[2]{Q} != {family} on L_{d}")
                result.append(Order4Point(family, sign, negated, Q, lift))
    return result


def order4_halvable(d: FieldElement, family: str, sign: int) -> bool:
    """
    ⭐ DIVISIBILITÉ D'UN POINT D'ORDRE 4 ⭐
    P_{famille,±} = [2]Q pour un Q rationnel ssi x, x-1 et x-d sont des carrés
    non nuls en l'abscisse x de P.

    Raises:
        NotRationalError: le point n'est pas F_q-rationnel
    """
    if d == 0 or d == 1:
        raise DegenerateCurveError(f"d = {d}")
    lift, pairs = _family_points(family, d)
    P = dict(pairs)[sign]
    x = lift.preimage(P.x)
    y = lift.preimage(P.y)
    if x is None or y is None:
        raise NotRationalError(f"P_{family},{'+' if sign > 0 else '-'} is not rational over F_{d.ctx.q}")
    return all(value.chi2() == 1 for value in (x, x - 1, x - d))

