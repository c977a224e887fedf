#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Catalogue des isomorphismes et isogénies explicites entre courbes d'Edwards,
de Legendre, de Montgomery et leurs formes de Weierstrass.

FONCTIONS PRINCIPALES:
1. psi() / psi_dual() / tau_chain() - 2-isogénie E_d -> L_d et sa factorisation par W_d
2. sigma_map() / omega_four_isogeny() - Isomorphismes de L_d et 4-isogénies E_d -> E_σ(d)
3. rho() / epsilon_isogeny() - Isomorphismes L_d -> E_d̄ et 2-isogénies d'Edwards
4. edwards_iso_class() - Classe d'isomorphisme de E_d
5. verify_isogeny() - Harnais de vérification (image, homomorphisme, comptage, noyau)

Chaque RationalMap porte le Lift sur lequel elle est construite: quand une
formule demande un radical absent de F_q, on travaille dans F_{q^2} et
defined_over vaut "quadratic-extension". Les branches ± utilisent la racine
canonique (sqrt_canonical) pour "+" et son opposé pour "-".
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

from config import get_settings
from curves import (INFINITY, CurveKind, CurveModel, Point, add_points, base_change, count_points,
                    edwards_w_coeffs, exceptional, identity, is_on_curve, j_edwards, lift_point,
                    make_curve, negate, points, tau_inv_point, tau_point)
from errors import DegenerateCurveError, FieldBoundError, NotRationalError, UnsupportedModelError
from ff import FieldElement, Lift, format_field_ctx, lift_to_extension, minimal_lift
from models import IsogenyReport

logger = logging.getLogger(__name__)

Evaluator = Callable[[Point], Optional[Point]]

SIGMA_KINDS = ("s1", "s2", "s12", "s21", "s121")


class DefinedOver(str, Enum):
    BASE = "base-field"
    QUADRATIC = "quadratic-extension"
    QUARTIC = "quartic-extension"


@dataclass(frozen=True)
class RationalMap:
    name: str
    domain: CurveModel
    codomain: CurveModel
    degree: int
    kernel: Tuple[Point, ...]
    defined_over: DefinedOver
    lift: Lift
    evaluator: Evaluator = field(compare=False)
    kernel_complete: bool = True
    # False only when the codomain model keeps its affine points alone
    total: bool = True

    @property
    def working_domain(self) -> CurveModel:
        return _working(self.domain, self.lift)

    @property
    def working_codomain(self) -> CurveModel:
        return _working(self.codomain, self.lift)

    def __call__(self, point: Point) -> Optional[Point]:
        """Image of a point given over F_q or over the working field (None where undefined)."""
        if point.is_affine and point.x.ctx == self.lift.base and self.lift.degree > 1:
            point = lift_point(point, self.lift)
        return self.evaluator(point)

    def descend(self, point: Optional[Point]) -> Optional[Point]:
        """Bring an image back to F_q coordinates when possible."""
        if point is None or not point.is_affine or self.lift.degree == 1:
            return point
        x, y = self.lift.preimage(point.x), self.lift.preimage(point.y)
        if x is None or y is None:
            return None
        return Point(x, y)


def _working(curve: CurveModel, lift: Lift) -> CurveModel:
    return base_change(curve, lift) if curve.ctx == lift.base else curve


def _check_param(d: FieldElement) -> None:
    if d == 0 or d == 1:
        raise DegenerateCurveError(f"d = {d}", "parameter must avoid 0 and 1")


def _prepare(d: FieldElement, radicands: Sequence[FieldElement],
             lift: Optional[Lift]) -> Tuple[Lift, DefinedOver]:
    defined_over = DefinedOver.BASE if all(r.chi2() >= 0 for r in radicands) else DefinedOver.QUADRATIC
    if lift is None:
        lift = minimal_lift(d.ctx, radicands)
    return lift, defined_over


def _curve_over(kind: CurveKind, params: Sequence[FieldElement], lift: Lift) -> CurveModel:
    """Curve with working-field parameters, over F_q whenever they all descend."""
    base_params = [lift.preimage(v) for v in params]
    if all(v is not None for v in base_params):
        return make_curve(kind, base_params, lift.base)
    return make_curve(kind, params, lift.field)


def _edwards(d: FieldElement) -> CurveModel:
    return make_curve(CurveKind.EDWARDS, (d,), d.ctx)


def _legendre(d: FieldElement) -> CurveModel:
    return make_curve(CurveKind.LEGENDRE, (d,), d.ctx)


def _target(value: FieldElement) -> FieldElement:
    if value == 0 or value == 1:
        raise DegenerateCurveError(f"target parameter {value}", "codomain would be singular")
    return value


def compose(first: RationalMap, second: RationalMap, name: Optional[str] = None) -> RationalMap:
    """second ∘ first (both over the same working field)."""
    if first.lift.field != second.lift.field:
        raise NotRationalError("Maps built over different working fields cannot be composed")

    def evaluate(P: Point) -> Optional[Point]:
        image = first.evaluator(P)
        return None if image is None else second.evaluator(image)

    worst = max(first.defined_over, second.defined_over, key=list(DefinedOver).index)
    return RationalMap(
        name=name or f"{second.name}*{first.name}",
        domain=first.domain,
        codomain=second.codomain,
        degree=first.degree * second.degree,
        kernel=first.kernel,
        defined_over=worst,
        lift=first.lift,
        evaluator=evaluate,
        kernel_complete=False,
        total=first.total and second.total,
    )


# ============================================================================
# ORBITE ET ISOMORPHISMES DE L_d
# ============================================================================

def orbit(d: FieldElement) -> List[FieldElement]:
    """{d, 1-d, 1/d, 1-1/d, 1/(1-d), d/(d-1)} sans doublons, dans cet ordre."""
    _check_param(d)
    values = [d, 1 - d, 1 / d, 1 - 1 / d, 1 / (1 - d), d / (d - 1)]
    result: List[FieldElement] = []
    for v in values:
        if v not in result:
            result.append(v)
    return result


def sigma_target(kind: str, d: FieldElement) -> FieldElement:
    targets = {
        "id": lambda: d,
        "s1": lambda: 1 - d,
        "s2": lambda: 1 / d,
        "s12": lambda: 1 - 1 / d,
        "s21": lambda: 1 / (1 - d),
        "s121": lambda: d / (d - 1),
    }
    if kind not in targets:
        raise UnsupportedModelError(f"Unknown sigma kind '{kind}'")
    return targets[kind]()


def _sigma_radicands(kind: str, d: FieldElement) -> List[FieldElement]:
    ctx = d.ctx
    needs = {
        "id": [],
        "s1": [-ctx.one],
        "s2": [d],
        "s12": [-ctx.one, d],
        "s21": [-ctx.one, 1 - d],
        "s121": [1 - d],
    }
    return needs[kind]


def sigma_map(kind: str, d: FieldElement, lift: Optional[Lift] = None) -> RationalMap:
    """
    ⭐ ISOMORPHISMES L_d -> L_σ(d) ⭐
    s1: (1-x, √-1·y); s2: (x/d, y/d^{3/2}); s12, s21, s121 par composition explicite.
    """
    _check_param(d)
    target = sigma_target(kind, d)
    lift, defined_over = _prepare(d, _sigma_radicands(kind, d), lift)
    dw = lift.embed(d)
    i = lift.sqrt(-lift.base.one) if kind in ("s1", "s12", "s21") else None
    s = lift.sqrt(d) if kind in ("s2", "s12") else None
    w = lift.sqrt(1 - d) if kind in ("s21", "s121") else None

    def evaluate(P: Point) -> Optional[Point]:
        if P.is_infinity:
            return INFINITY
        x, y = P.x, P.y
        if kind == "id":
            return P
        if kind == "s1":
            return Point(1 - x, i * y)
        if kind == "s2":
            return Point(x / dw, y / (s * dw))
        if kind == "s12":
            return Point(1 - x / dw, i * y / (s * dw))
        if kind == "s21":
            return Point((1 - x) / (1 - dw), i * y / (w * (1 - dw)))
        return Point((x - dw) / (1 - dw), -y / (w * (1 - dw)))

    logger.debug("sigma %s on d=%s over %s (%s)", kind, d, format_field_ctx(lift.field), defined_over.value)
    return RationalMap(kind, _legendre(d), _legendre(target), 1, (INFINITY,), defined_over, lift, evaluate)


# ============================================================================
# 2-ISOGÉNIE ψ ET CHAÎNE τ / φ
# ============================================================================

def phi_point(d: FieldElement, P: Point) -> Point:
    """W_d -> L_d, kernel {O, (0,0)}."""
    if P.is_infinity or P.x.is_zero():
        return INFINITY
    X, Y = P.x, P.y
    X2 = X * X
    return Point(Y * Y / (4 * X2), Y * ((1 - d) * (1 - d) - X2) / (8 * X2))


def phi_dual_point(d: FieldElement, P: Point) -> Point:
    """L_d -> W_d, kernel {O, (0,0)}."""
    if P.is_infinity or P.x.is_zero():
        return INFINITY
    x, y = P.x, P.y
    x2 = x * x
    return Point(y * y / x2, y * (d - x2) / x2)


def psi_point(d: FieldElement, P: Point) -> Point:
    if P.is_exceptional or P.x.is_zero():
        return phi_point(d, tau_point(d, P))
    x, y = P.x, P.y
    return Point(1 / (x * x), y * (d - 1) / (x * (1 - y * y)))


def psi_dual_point(d: FieldElement, P: Point) -> Point:
    ctx = d.ctx
    if P.is_infinity:
        return Point(ctx.zero, ctx.one)
    x, y = P.x, P.y
    x2, y2 = x * x, y * y
    den_x = d - x2
    den_y = y2 + x2 * (1 - d)
    if den_x.is_zero() or den_y.is_zero():
        return tau_inv_point(d, phi_dual_point(d, P))
    return Point(2 * y / den_x, (y2 - x2 * (1 - d)) / den_y)


def _edwards_kernel(ctx) -> Tuple[Point, ...]:
    return Point(ctx.zero, ctx.one), Point(ctx.zero, -ctx.one)


def psi(d: FieldElement, lift: Optional[Lift] = None) -> RationalMap:
    """
    ⭐ 2-ISOGÉNIE ψ_d: E_d -> L_d ⭐
    (x, y) -> (1/x², y(d-1)/(x(1-y²))), noyau {(0, ±1)}.
    """
    _check_param(d)
    lift, _ = _prepare(d, [], lift)
    dw = lift.embed(d)
    return RationalMap("psi", _edwards(d), _legendre(d), 2, _edwards_kernel(lift.field),
                       DefinedOver.BASE, lift, lambda P: psi_point(dw, P))


def psi_dual(d: FieldElement, lift: Optional[Lift] = None) -> RationalMap:
    """ψ̂_d: L_d -> E_d, (x, y) -> (2y/(d-x²), (y²-x²(1-d))/(y²+x²(1-d))), noyau {O, (0,0)}."""
    _check_param(d)
    lift, _ = _prepare(d, [], lift)
    dw = lift.embed(d)
    zero = lift.field.zero
    return RationalMap("psi-dual", _legendre(d), _edwards(d), 2, (INFINITY, Point(zero, zero)),
                       DefinedOver.BASE, lift, lambda P: psi_dual_point(dw, P))


def w_curve(d: FieldElement) -> CurveModel:
    """W_d: y² = x³ + 2(1+d)x² + (1-d)²x."""
    return make_curve(CurveKind.WEIERSTRASS, edwards_w_coeffs(d), d.ctx)


def tau_chain(d: FieldElement) -> Tuple[RationalMap, RationalMap, RationalMap, RationalMap]:
    """(τ, τ⁻¹, φ_d, φ̂_d) avec φ_d ∘ τ = ψ_d et τ⁻¹ ∘ φ̂_d = ψ̂_d."""
    _check_param(d)
    lift = minimal_lift(d.ctx, [])
    E, W, L = _edwards(d), w_curve(d), _legendre(d)
    zero = d.ctx.zero
    origin = (INFINITY, Point(zero, zero))
    base = DefinedOver.BASE
    tau = RationalMap("tau", E, W, 1, (Point(zero, d.ctx.one),), base, lift, lambda P: tau_point(d, P))
    tau_inv = RationalMap("tau-inv", W, E, 1, (INFINITY,), base, lift, lambda P: tau_inv_point(d, P))
    phi = RationalMap("phi", W, L, 2, origin, base, lift, lambda P: phi_point(d, P))
    phi_dual = RationalMap("phi-dual", L, W, 2, origin, base, lift, lambda P: phi_dual_point(d, P))
    return tau, tau_inv, phi, phi_dual


# ============================================================================
# COURBES D'EDWARDS TORDUES
# ============================================================================

def _check_twisted(a: FieldElement, d: FieldElement) -> None:
    make_curve(CurveKind.TWISTED_EDWARDS, (a, d), a.ctx)


def twisted_to_edwards(a: FieldElement, d: FieldElement, lift: Optional[Lift] = None) -> RationalMap:
    """E_{a,d} -> E_{d/a}, (x, y) -> (√a·x, y)."""
    _check_twisted(a, d)
    lift, defined_over = _prepare(a, [a], lift)
    r = lift.sqrt(a)

    def evaluate(P: Point) -> Optional[Point]:
        return Point(r * P.x, P.y) if P.is_affine else None

    domain = make_curve(CurveKind.TWISTED_EDWARDS, (a, d), a.ctx)
    return RationalMap("twisted-to-edwards", domain, _edwards(d / a), 1, (Point(lift.field.zero, lift.field.one),),
                       defined_over, lift, evaluate)


def psi_twisted(a: FieldElement, d: FieldElement, lift: Optional[Lift] = None) -> RationalMap:
    """ψ_{a,d}: E_{a,d} -> L_{d/a}, (x, y) -> (1/(ax²), y(d-a)/(a^{3/2}x(1-y²)))."""
    _check_twisted(a, d)
    lift, defined_over = _prepare(a, [a], lift)
    aw, dw = lift.embed(a), lift.embed(d)
    r = lift.sqrt(a)

    def evaluate(P: Point) -> Optional[Point]:
        if not P.is_affine:
            return None
        x, y = P.x, P.y
        if x.is_zero():
            return INFINITY
        return Point(1 / (aw * x * x), y * (dw - aw) / (r * aw * x * (1 - y * y)))

    domain = make_curve(CurveKind.TWISTED_EDWARDS, (a, d), a.ctx)
    return RationalMap("psi-twisted", domain, _legendre(d / a), 2, _edwards_kernel(lift.field),
                       defined_over, lift, evaluate)


def psi_twisted_dual(a: FieldElement, d: FieldElement, lift: Optional[Lift] = None) -> RationalMap:
    """ψ̂_{a,d}: L_{d/a} -> E_{a,d}, (x, y) -> (2√a·y/(d-ax²), (ay²-x²(a-d))/(ay²+x²(a-d)))."""
    _check_twisted(a, d)
    lift, defined_over = _prepare(a, [a], lift)
    aw, dw = lift.embed(a), lift.embed(d)
    r = lift.sqrt(a)
    delta = dw / aw

    def evaluate(P: Point) -> Optional[Point]:
        if P.is_infinity:
            return Point(lift.field.zero, lift.field.one)
        x, y = P.x, P.y
        x2, y2 = x * x, y * y
        den_x = dw - aw * x2
        den_y = aw * y2 + x2 * (aw - dw)
        if den_x.is_zero() or den_y.is_zero():
            # par ψ̂_{d/a} puis l'inverse de (x, y) -> (√a·x, y)
            image = psi_dual_point(delta, P)
            return Point(image.x / r, image.y) if image.is_affine else None
        return Point(2 * r * y / den_x, (aw * y2 - x2 * (aw - dw)) / den_y)

    zero = lift.field.zero
    codomain = make_curve(CurveKind.TWISTED_EDWARDS, (a, d), a.ctx)
    # les points à l'infini de E_{a,d} n'ont pas de représentation
    return RationalMap("psi-twisted-dual", _legendre(d / a), codomain, 2, (INFINITY, Point(zero, zero)),
                       defined_over, lift, evaluate, total=False)


# ============================================================================
# 4-ISOGÉNIES ω
# ============================================================================

def omega_four_isogeny(kind: str, d: FieldElement) -> RationalMap:
    """
    ⭐ 4-ISOGÉNIE ω_σ(d) = ψ̂_σ(d) ∘ σ ∘ ψ_d ⭐
    Le noyau contient (0, ±1) et les deux antécédents par ψ_d du point
    envoyé par σ sur (0,0): (±1, 0) pour s1/s21, Y± pour s2, X± pour s12/s121.
    """
    _check_param(d)
    target = _target(sigma_target(kind, d))
    sigma = sigma_map(kind, d)
    lift = sigma.lift
    first = psi(d, lift)
    last = psi_dual(target, lift)
    F = lift.field
    kernel = list(_edwards_kernel(F))
    complete = True
    if kind in ("s1", "s21"):
        kernel += [Point(F.one, F.zero), Point(-F.one, F.zero)]
    else:
        labels = ("Y+", "Y-") if kind == "s2" else ("X+", "X-")
        if lift.embed(d).chi2() == 1:
            kernel += [exceptional(label) for label in labels]
        else:
            complete = False

    def evaluate(P: Point) -> Optional[Point]:
        image = sigma.evaluator(first.evaluator(P))
        return None if image is None else last.evaluator(image)

    return RationalMap(f"omega-{kind}", _edwards(d), _edwards(target), 4, tuple(kernel),
                       sigma.defined_over, lift, evaluate, kernel_complete=complete)


# ============================================================================
# ISOMORPHISMES ρ ET MONTGOMERY
# ============================================================================

def rho_target(root: FieldElement, sign: int) -> FieldElement:
    """d̄^{±1} = ((1 ± √d)/(1 ∓ √d))²."""
    u = sign * root
    return _target(((1 + u) / (1 - u)) ** 2)


def _rho_scales(root: FieldElement, i: FieldElement, sign: int) -> Tuple[FieldElement, FieldElement, FieldElement]:
    """(D, α, β) with D = d̄^{±1} and τ_D ∘ ρ: (x, y) -> (α·x, β·y)."""
    u = sign * root
    target = rho_target(root, sign)
    return target, (1 - target) / u, 2 * (1 - target) / (i * u * (1 - u))


def _rho_evaluator(root: FieldElement, i: FieldElement, sign: int) -> Evaluator:
    """ρ with an explicit square root of the Legendre parameter."""
    F = root.ctx
    target, alpha, beta = _rho_scales(root, i, sign)

    def evaluate(P: Point) -> Optional[Point]:
        if P.is_infinity:
            return Point(F.zero, F.one)
        return tau_inv_point(target, Point(alpha * P.x, beta * P.y))

    return evaluate


def rho(d: FieldElement, sign: int = 1, lift: Optional[Lift] = None) -> RationalMap:
    """
    ⭐ ISOMORPHISME ρ_{d,±}: L_d -> E_{d̄^{±1}} ⭐
    (x, y) -> (√-1(1 ∓ √d)·x/y, (x ∓ √d)/(x ± √d)). τ ∘ ρ est linéaire en (x, y),
    on évalue donc ρ = τ⁻¹ ∘ (αx, βy): (1,0) et (d,0) vont sur Y±, les pôles
    x = ∓√d sur X±, et la carte est définie partout.
    """
    _check_param(d)
    ctx = d.ctx
    lift, defined_over = _prepare(d, [-ctx.one, d], lift)
    s = lift.sqrt(d)
    i = lift.sqrt(-ctx.one)
    codomain = _curve_over(CurveKind.EDWARDS, [rho_target(s, sign)], lift)
    name = "rho+" if sign > 0 else "rho-"
    return RationalMap(name, _legendre(d), codomain, 1, (INFINITY,), defined_over, lift,
                       _rho_evaluator(s, i, sign))


def rho_dual(d: FieldElement, sign: int = 1, lift: Optional[Lift] = None) -> RationalMap:
    """
    ρ̂_{d,±}: E_{d̄^{±1}} -> L_d, (x, y) -> (±√d(1+y)/(1-y), ±√-1√d(1 ∓ √d)(1+y)/(x(1-y))),
    soit τ suivi de (X/α, Y/β): les points exceptionnels ont aussi une image.
    """
    _check_param(d)
    ctx = d.ctx
    lift, defined_over = _prepare(d, [-ctx.one, d], lift)
    s = lift.sqrt(d)
    i = lift.sqrt(-ctx.one)
    F = lift.field
    target, alpha, beta = _rho_scales(s, i, sign)
    domain = _curve_over(CurveKind.EDWARDS, [target], lift)

    def evaluate(P: Point) -> Optional[Point]:
        W = tau_point(target, P)
        return W if W.is_infinity else Point(W.x / alpha, W.y / beta)

    name = "rho-dual+" if sign > 0 else "rho-dual-"
    return RationalMap(name, domain, _legendre(d), 1, (Point(F.zero, F.one),), defined_over, lift, evaluate)


def montgomery_from_legendre(d: FieldElement, lift: Optional[Lift] = None) -> Tuple[CurveModel, RationalMap]:
    """M_{A,B}: By² = x³ + Ax² + x, A = -(1+d)/√d, B = 1/(d√d), via (x, y) -> (x/√d, y)."""
    _check_param(d)
    lift, defined_over = _prepare(d, [d], lift)
    s = lift.sqrt(d)
    dw = lift.embed(d)
    curve = _curve_over(CurveKind.MONTGOMERY, [-(1 + dw) / s, 1 / (dw * s)], lift)

    def evaluate(P: Point) -> Optional[Point]:
        return P if P.is_infinity else Point(P.x / s, P.y)

    rmap = RationalMap("montgomery", _legendre(d), curve, 1, (INFINITY,), defined_over, lift, evaluate)
    return curve, rmap


# ============================================================================
# 2-ISOGÉNIES D'EDWARDS ε
# ============================================================================

def _epsilon_radicands(index: int, d: FieldElement) -> List[FieldElement]:
    ctx = d.ctx
    return {1: [-ctx.one, d], 2: [1 - d], 3: [d, d - 1]}[index]


def epsilon_isogeny(index: int, sign: int, d: FieldElement, lift: Optional[Lift] = None) -> RationalMap:
    """
    ⭐ 2-ISOGÉNIES ε: E_d -> E_{d̄ᵢ^{±1}} ⭐
    (a) i = 1: (√-1(1 ∓ √d)/(d-1)·(1-y²)/(xy), (1 ∓ √d·x²)/(1 ± √d·x²))
    (b) i = 2: ((1 ∓ √(1-d))·xy, (1 - (1 ∓ √(1-d))x²)/(1 - (1 ± √(1-d))x²))
    (c) i = 3: ((√(d-1) ∓ √d)·x/y, (1 - (d ± (1-d)r)x²)/(1 - (d ∓ (1-d)r)x²)),
        r = √d/√(d-1); la cible est ((1 ± r)/(1 ∓ r))².
    Noyau {(0, ±1)}. Là où la formule n'est pas définie (points exceptionnels,
    pôles, y = 0), on passe par ε = τ⁻¹ ∘ A ∘ ψ_d, où A est le changement
    affine de L_d vers W_D issu de ρ ∘ σ (σ = id, s1, s121).
    """
    if index not in (1, 2, 3) or sign not in (1, -1):
        raise UnsupportedModelError(f"Unknown epsilon isogeny {index}{'+' if sign > 0 else '-'}")
    _check_param(d)
    ctx = d.ctx
    lift, defined_over = _prepare(d, _epsilon_radicands(index, d), lift)
    F = lift.field
    dw = lift.embed(d)

    if index == 1:
        s = lift.sqrt(d)
        i = lift.sqrt(-ctx.one)
        u = sign * s
        target = rho_target(s, sign)
        scale = i * (1 - u) / (dw - 1)
        offset, slope = F.zero, F.one
        gamma = 2 * (1 - target) / (i * u * (1 - u))

        def formula(x: FieldElement, y: FieldElement) -> Optional[Point]:
            x2 = x * x
            den = 1 + u * x2
            if y.is_zero() or den.is_zero():
                return None
            return Point(scale * (1 - y * y) / (x * y), (1 - u * x2) / den)
    elif index == 2:
        w = lift.sqrt(1 - d)
        u = sign * w
        target = rho_target(w, sign)
        offset, slope = F.one, -F.one
        gamma = 2 * (1 - target) / (u * (1 - u))

        def formula(x: FieldElement, y: FieldElement) -> Optional[Point]:
            x2 = x * x
            den = 1 - (1 + u) * x2
            if den.is_zero():
                return None
            return Point((1 - u) * x * y, (1 - (1 - u) * x2) / den)
    else:
        s = lift.sqrt(d)
        v = lift.sqrt(d - 1)
        r = s / v
        u = sign * r
        target = rho_target(r, sign)
        scale = v - sign * s
        offset, slope = dw / (dw - 1), 1 / (1 - dw)
        # le √-1 de ρ se compense avec le signe [±1] entre ε_3 et ρ ∘ s121 ∘ ψ_d
        gamma = 2 * (1 - target) / (v * u * (1 - u) * (dw - 1))

        def formula(x: FieldElement, y: FieldElement) -> Optional[Point]:
            x2 = x * x
            den = 1 - (dw - (1 - dw) * u) * x2
            if y.is_zero() or den.is_zero():
                return None
            return Point(scale * x / y, (1 - (dw + (1 - dw) * u) * x2) / den)

    alpha = (1 - target) / u

    def through_w(P: Point) -> Point:
        L = psi_point(dw, P)
        if L.is_infinity:
            return Point(F.zero, F.one)
        return tau_inv_point(target, Point(alpha * (offset + slope * L.x), gamma * L.y))

    def evaluate(P: Point) -> Optional[Point]:
        if P.is_affine and P.x.is_zero():
            return Point(F.zero, F.one)
        image = formula(P.x, P.y) if P.is_affine else None
        return through_w(P) if image is None else image

    name = f"eps{index}{'+' if sign > 0 else '-'}"
    codomain = _curve_over(CurveKind.EDWARDS, [target], lift)
    return RationalMap(name, _edwards(d), codomain, 2, _edwards_kernel(F), defined_over, lift, evaluate)


def epsilon_consistency(index: int, sign: int, d: FieldElement) -> bool:
    """
    ε_i coincide avec ρ ∘ σ ∘ ψ_d au signe près ([1] ou [-1] sur tout le groupe),
    σ = id, s1, s121 pour i = 1, 2, 3. Vérifié sur chaque point de E_d sur le corps de travail.
    """
    ctx = d.ctx
    lift = minimal_lift(ctx, [-ctx.one, d, 1 - d, d - 1])
    eps = epsilon_isogeny(index, sign, d, lift)
    sigma_kind = {1: "id", 2: "s1", 3: "s121"}[index]
    sigma = sigma_map(sigma_kind, d, lift)
    i = lift.sqrt(-ctx.one)
    if index == 1:
        root = lift.sqrt(d)
    elif index == 2:
        root = lift.sqrt(1 - d)
    else:
        root = lift.sqrt(d) / lift.sqrt(d - 1)
    rho_eval = _rho_evaluator(root, i, sign)
    E_target = eps.working_codomain
    dw = lift.embed(d)

    same, opposite = True, True
    for P in points(base_change(_edwards(d), lift)):
        lhs = eps.evaluator(P)
        rhs = rho_eval(sigma.evaluator(psi_point(dw, P)))
        same = same and lhs == rhs
        opposite = opposite and lhs == negate(E_target, rhs)
        if not (same or opposite):
            return False
    return same or opposite


# ============================================================================
# CLASSE D'ISOMORPHISME DE E_d ET ISOMORPHISME E_d -> L_δ
# ============================================================================

def edwards_j_fiber(d: FieldElement) -> List[FieldElement]:
    """{d' in F_q minus {0,1} : j_E(d') = j_E(d)}, par balayage."""
    _check_param(d)
    j = j_edwards(d)
    return [v for v in d.ctx.parameters() if j_edwards(v) == j]


def _fourth_root_lift(d: FieldElement) -> Optional[Tuple[Lift, FieldElement, FieldElement]]:
    """Smallest lift containing √-1 and a fourth root of d."""
    ctx = d.ctx
    for k in (1, 2, 4):
        lift = lift_to_extension(ctx, k)
        i = lift.sqrt(-ctx.one) if lift.embed(-ctx.one).chi2() >= 0 else None
        s = lift.embed(d).sqrt()
        if i is None or s is None:
            continue
        t = s.sqrt() or (-s).sqrt()
        if t is not None:
            return lift, i, t
    return None


def edwards_iso_class(d: FieldElement) -> List[FieldElement]:
    """
    ⭐ CLASSE D'ISOMORPHISME DE E_d ⭐
    d' parmi {d, 1/d, ((1 ± d^{1/4})/(1 ∓ d^{1/4}))⁴, ((1 ± √-1·d^{1/4})/(1 ∓ √-1·d^{1/4}))⁴}
    qui tombent dans F_q; calcul dans l'extension (jusqu'au degré 4) puis
    intersection avec F_q. Repli sur la fibre de j_E si l'extension dépasse la borne.
    """
    _check_param(d)
    try:
        found = _fourth_root_lift(d)
    except FieldBoundError as exc:
        logger.warning("edwards_iso_class(%s): %s, falling back to the j_E fiber", d, exc)
        return edwards_j_fiber(d)
    if found is None:
        # impossible: F_{q^4} contient toujours ces racines
        raise NotRationalError(f"No fourth root of {d} found up to degree 4")
    lift, i, t = found
    candidates = [lift.embed(d), 1 / lift.embed(d)]
    for u in (t, i * t):
        ratio = (1 + u) / (1 - u)
        candidates += [ratio ** 4, ratio ** -4]
    members = {lift.preimage(v) for v in candidates}
    members.discard(None)
    return sorted(members, key=lambda v: v.index)


def edwards_to_legendre_iso(d: FieldElement, lift: Optional[Lift] = None) -> RationalMap:
    """
    E_d -> L_δ, δ = ((√d+1)/(√d-1))²:
    (x, y) -> ((√d+1)/(√d-1)·(1+y)/(1-y), 2√-1(1+√d)/(1-√d)²·(1+y)/(x(1-y))).
    Les deux coordonnées sont linéaires en τ(x, y): on passe par τ, ce qui rend la
    carte totale (points exceptionnels compris).
    """
    _check_param(d)
    ctx = d.ctx
    lift, defined_over = _prepare(d, [d, -ctx.one], lift)
    s = lift.sqrt(d)
    i = lift.sqrt(-ctx.one)
    dw = lift.embed(d)
    delta = _target(((s + 1) / (s - 1)) ** 2)
    scale_x = (s + 1) / ((s - 1) * (1 - dw))
    scale_y = i * (1 + s) / ((1 - s) * (1 - s) * (1 - dw))

    def evaluate(P: Point) -> Optional[Point]:
        W = tau_point(dw, P)
        return W if W.is_infinity else Point(scale_x * W.x, scale_y * W.y)

    codomain = _curve_over(CurveKind.LEGENDRE, [delta], lift)
    return RationalMap("edwards-to-legendre", _edwards(d), codomain, 1, (Point(lift.field.zero, lift.field.one),),
                       defined_over, lift, evaluate)


def huff_param(a: FieldElement, b: FieldElement) -> FieldElement:
    """H_{a,b} ≅ E_d avec d = ((a-b)/(a+b))²."""
    make_curve(CurveKind.HUFF, (a, b), a.ctx)
    return _target(((a - b) / (a + b)) ** 2)


# ============================================================================
# CATALOGUE (noms du CLI)
# ============================================================================

MAP_NAMES = (
    ("psi", "psi-dual", "tau", "tau-inv", "phi", "phi-dual")
    + SIGMA_KINDS
    + tuple(f"omega-{k}" for k in SIGMA_KINDS)
    + ("rho+", "rho-", "rho-dual+", "rho-dual-")
    + tuple(f"eps{i}{s}" for i in (1, 2, 3) for s in "+-")
    + ("psi-twisted", "psi-twisted-dual", "twisted-to-edwards", "montgomery", "edwards-to-legendre")
)


def catalog(name: str, d: FieldElement, a: Optional[FieldElement] = None) -> RationalMap:
    """RationalMap from its CLI name (a is the twisted Edwards coefficient)."""
    if name not in MAP_NAMES:
        raise UnsupportedModelError(f"Unknown map '{name}'")
    if name in ("psi-twisted", "psi-twisted-dual", "twisted-to-edwards"):
        if a is None:
            raise UnsupportedModelError(f"Map '{name}' needs the twisted coefficient a")
        builder = {"psi-twisted": psi_twisted, "psi-twisted-dual": psi_twisted_dual,
                   "twisted-to-edwards": twisted_to_edwards}[name]
        return builder(a, d)
    if name in ("tau", "tau-inv", "phi", "phi-dual"):
        return dict(zip(("tau", "tau-inv", "phi", "phi-dual"), tau_chain(d)))[name]
    if name == "psi":
        return psi(d)
    if name == "psi-dual":
        return psi_dual(d)
    if name in SIGMA_KINDS:
        return sigma_map(name, d)
    if name.startswith("omega-"):
        return omega_four_isogeny(name[len("omega-"):], d)
    if name.startswith("rho-dual"):
        return rho_dual(d, 1 if name.endswith("+") else -1)
    if name.startswith("rho"):
        return rho(d, 1 if name.endswith("+") else -1)
    if name.startswith("eps"):
        return epsilon_isogeny(int(name[3]), 1 if name.endswith("+") else -1, d)
    if name == "montgomery":
        return montgomery_from_legendre(d)[1]
    return edwards_to_legendre_iso(d)


# ============================================================================
# VÉRIFICATION
# ============================================================================

def verify_isogeny(f: RationalMap, samples: Optional[int] = None, seed: Optional[int] = None) -> IsogenyReport:
    """
    ⭐ HARNAIS DE VÉRIFICATION D'UNE ISOGÉNIE ⭐
    (a) image de chaque point du domaine sur le codomaine (un point sans image
    fait échouer une carte totale), (b) f(P+Q) = f(P)+f(Q)
    sur `samples` paires tirées au hasard, (c) égalité des cardinaux si f est
    définie sur F_q, (d) noyau envoyé sur l'identité et de taille = degré.
    Les échecs sont des données du rapport, jamais des exceptions.
    """
    settings = get_settings()
    samples = settings.homomorphism_samples if samples is None else samples
    rng = random.Random(settings.random_seed if seed is None else seed)
    domain = f.working_domain
    codomain = f.working_codomain
    counterexamples: List[str] = []

    # (a) appartenance
    images = []
    undefined = 0
    membership = True
    for P in points(domain):
        image = f.evaluator(P)
        if image is None:
            undefined += 1
            if f.total:
                membership = False
                counterexamples.append(f"membership: {P} has no image")
            continue
        images.append((P, image))
        if not is_on_curve(codomain, image):
            membership = False
            counterexamples.append(f"membership: {P} -> {image}")

    # (b) homomorphisme
    homomorphism: Optional[bool] = None
    has_law = (domain.kind not in (CurveKind.TWISTED_EDWARDS, CurveKind.HUFF)
               and codomain.kind not in (CurveKind.TWISTED_EDWARDS, CurveKind.HUFF))
    if has_law and images:
        homomorphism = True
        for _ in range(samples):
            (P, fP), (Q, fQ) = rng.choice(images), rng.choice(images)
            fPQ = f.evaluator(add_points(domain, P, Q))
            if fPQ is None:
                continue
            if fPQ != add_points(codomain, fP, fQ):
                homomorphism = False
                counterexamples.append(f"homomorphism: P={P}, Q={Q}")
                break

    # (c) cardinaux
    counts_equal: Optional[bool] = None
    if f.defined_over == DefinedOver.BASE and f.codomain.ctx == f.lift.base:
        counts_equal = count_points(f.domain) == count_points(f.codomain)
        if not counts_equal:
            counterexamples.append(f"counts: #{f.domain} != #{f.codomain}")

    # (d) noyau
    kernel_ok = True
    if has_law or codomain.kind in (CurveKind.EDWARDS, CurveKind.LEGENDRE):
        target = identity(codomain)
        for K in f.kernel:
            if f.evaluator(K) != target:
                kernel_ok = False
                counterexamples.append(f"kernel: {K} -> {f.evaluator(K)}")
    size = len(f.kernel)
    if f.kernel_complete:
        kernel_ok = kernel_ok and size == f.degree
    else:
        kernel_ok = kernel_ok and f.degree % size == 0
    if not kernel_ok and not any(c.startswith("kernel") for c in counterexamples):
        counterexamples.append(f"kernel: {size} point(s) for degree {f.degree}")

    report = IsogenyReport(
        map_name=f.name,
        domain=str(f.domain),
        codomain=str(f.codomain),
        degree=f.degree,
        defined_over=f.defined_over.value,
        working_field=format_field_ctx(f.lift.field),
        membership=membership,
        homomorphism=homomorphism,
        counts_equal=counts_equal,
        kernel_ok=kernel_ok,
        kernel_size=size,
        kernel_complete=f.kernel_complete,
        points_checked=len(images),
        undefined_points=undefined,
        samples=samples if homomorphism is not None else 0,
        counterexamples=counterexamples,
    )
    logger.info("verify %s on %s: ok=%s", f.name, f.domain, report.ok)
    return report
