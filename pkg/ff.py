#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Arithmétique exacte dans F_{p^m} (p impair).

FONCTIONS PRINCIPALES:
1. field_ctx() - Construction (et validation) d'un corps F_q, modulus irréductible déterministe
2. chi2() / sqrt_canonical() / fourth_power_class() - Caractères et racines canoniques
3. lift_to_extension() - Extensions F_{q^2}, F_{q^4} avec plongement explicite de F_q
4. williams_identity() - Identité de sommes de caractères (vérification exhaustive)

Les éléments sont des polynômes de degré < m à coefficients dans [0, p-1]
(coefficient i = coefficient de x^i). Pour m = 1 c'est simplement un entier mod p.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from math import gcd, isqrt
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import get_settings
from errors import FieldBoundError, FieldError, NotRationalError

logger = logging.getLogger(__name__)

Poly = Tuple[int, ...]


# ---- Polynômes sur F_p (tuples, degré faible en premier) ----

def _trim(poly: Sequence[int]) -> Poly:
    coeffs = list(poly)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> Poly:
    """Remainder of num modulo den over F_p (den nonzero)."""
    rem = [c % p for c in num]
    den = _trim([c % p for c in den])
    inv_lead = pow(den[-1], p - 2, p)
    for shift in range(len(rem) - len(den), -1, -1):
        coef = rem[shift + len(den) - 1] * inv_lead % p
        if coef:
            for i, c in enumerate(den):
                rem[shift + i] = (rem[shift + i] - coef * c) % p
    return _trim(rem[: len(den) - 1])


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of n by trial division."""
    factors = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            factors.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        factors.append(n)
    return factors


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """
    Test d'irréductibilité par recherche de facteurs (racines puis diviseurs
    unitaires de degré <= m/2). Suffisant à l'échelle du recensement.
    """
    poly = _trim([c % p for c in modulus])
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    # Racines dans F_p
    for a in range(p):
        if sum(c * pow(a, i, p) for i, c in enumerate(poly)) % p == 0:
            return False
    for k in range(2, m // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _poly_rem(poly, low + (1,), p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree m (low-degree-first)."""
    for low in itertools.product(range(p), repeat=m):
        # x divise tout candidat de terme constant nul
        if low[0] == 0 and m > 1:
            continue
        candidate = low + (1,)
        if is_irreducible(p, candidate):
            return candidate
    raise FieldError(f"No irreducible polynomial of degree {m} over F_{p}")


# ---- Corps et éléments ----

class PowerClass(str, Enum):
    ZERO = "zero"
    FOURTH = "fourth-power"
    SQUARE_NOT_FOURTH = "square-not-fourth"
    NONSQUARE = "nonsquare"


class FieldCtx:
    """Le corps F_q, q = p^m, muni de son polynôme modulus (x pour m = 1)."""

    def __init__(self, p: int, m: int, modulus: Poly, max_q: int):
        self.p = p
        self.m = m
        self.modulus = modulus
        self.q = p ** m
        self.max_q = max_q

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldCtx) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx({format_field_ctx(self)})"

    def __call__(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise FieldError("Element belongs to another field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.m - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.m:
            raise FieldError(f"Too many coefficients for a degree-{self.m} field")
        return FieldElement(self, tuple(coeffs) + (0,) * (self.m - len(coeffs)))

    @cached_property
    def zero(self) -> "FieldElement":
        return self(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self(1)

    @cached_property
    def gen(self) -> "FieldElement":
        """The class of x (equals the constant 0 when m = 1)."""
        return self((0, 1)) if self.m > 1 else self.zero

    def element_at(self, index: int) -> "FieldElement":
        coeffs = []
        for _ in range(self.m):
            index, c = divmod(index, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements in index order (0, 1, ..., p-1, x, x+1, ...)."""
        for index in range(self.q):
            yield self.element_at(index)

    def nonzero_elements(self) -> Iterator["FieldElement"]:
        for index in range(1, self.q):
            yield self.element_at(index)

    def parameters(self) -> Iterator["FieldElement"]:
        """F_q minus {0, 1}: the admissible Edwards/Legendre parameters."""
        for index in range(2, self.q):
            yield self.element_at(index)

    # -- tables (accélérations, construites à la demande) --

    @cached_property
    def square_root_counts(self) -> List[int]:
        """counts[index(v)] = number of y with y^2 = v."""
        counts = [0] * self.q
        for y in self.elements():
            counts[(y * y).index] += 1
        return counts

    @cached_property
    def chi2_vector(self) -> np.ndarray:
        """chi2 of every element, indexed like element_at."""
        counts = np.asarray(self.square_root_counts, dtype=np.int8)
        table = np.where(counts > 0, 1, -1).astype(np.int8)
        table[0] = 0
        return table

    @cached_property
    def digit_matrix(self) -> np.ndarray:
        """Coefficient digits of every element, shape (q, m)."""
        indices = np.arange(self.q, dtype=np.int64)
        return np.stack([(indices // self.p ** i) % self.p for i in range(self.m)], axis=1)

    @cached_property
    def digit_weights(self) -> np.ndarray:
        return np.array([self.p ** i for i in range(self.m)], dtype=np.int64)

    @cached_property
    def nonresidue(self) -> "FieldElement":
        for x in self.nonzero_elements():
            if x.chi2() == -1:
                return x
        raise FieldError("No quadratic non-residue found")  # impossible for odd q

    @cached_property
    def primitive_element(self) -> "FieldElement":
        order = self.q - 1
        factors = prime_factors(order)
        for g in self.nonzero_elements():
            if all(g ** (order // f) != self.one for f in factors):
                return g
        raise FieldError("No primitive element found")

    @cached_property
    def sqrt_minus_one(self) -> Optional["FieldElement"]:
        return sqrt_canonical(-self.one)


class FieldElement:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Poly):
        self.ctx = ctx
        self.coeffs = coeffs

    # -- utilitaires --

    def _coerce(self, other: Union[int, "FieldElement"]) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldError("Mixed field contexts")
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    @property
    def index(self) -> int:
        p = self.ctx.p
        value = 0
        for c in reversed(self.coeffs):
            value = value * p + c
        return value

    @property
    def value(self) -> int:
        """Integer representative (prime fields only)."""
        if self.ctx.m != 1:
            raise FieldError("value is only defined for prime fields")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.ctx(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.modulus, self.coeffs))

    def __repr__(self) -> str:
        return f"FieldElement({format_element(self)} in {format_field_ctx(self.ctx)})"

    def __str__(self) -> str:
        return format_element(self)

    # -- arithmétique --

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        p = self.ctx.p
        return FieldElement(self.ctx, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        p = ctx.p
        if ctx.m == 1:
            return FieldElement(ctx, (self.coeffs[0] * other.coeffs[0] % p,))
        m = ctx.m
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        modulus = ctx.modulus
        # réduction par le modulus unitaire
        for k in range(2 * m - 2, m - 1, -1):
            coef = prod[k] % p
            if coef:
                for i in range(m):
                    prod[k - m + i] -= coef * modulus[i]
        return FieldElement(ctx, tuple(c % p for c in prod[:m]))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise FieldError("Cannot invert zero")
        ctx = self.ctx
        if ctx.m == 1:
            return FieldElement(ctx, (pow(self.coeffs[0], ctx.p - 2, ctx.p),))
        return self ** (ctx.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        ctx = self.ctx
        if ctx.m == 1:
            return FieldElement(ctx, (pow(self.coeffs[0], exponent, ctx.p),))
        result = ctx.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- caractères --

    def chi2(self) -> int:
        if self.is_zero():
            return 0
        return 1 if self ** ((self.ctx.q - 1) // 2) == self.ctx.one else -1

    def is_square(self) -> bool:
        return self.chi2() >= 0

    def sqrt(self) -> Optional["FieldElement"]:
        return sqrt_canonical(self)


# ---- Construction ----

@lru_cache(maxsize=None)
def _build_ctx(p: int, m: int, modulus: Optional[Poly], max_q: int) -> FieldCtx:
    if p % 2 == 0:
        raise FieldError(f"Even characteristic p={p} is not supported")
    if p < 3 or not _is_prime(p):
        raise FieldError(f"p={p} is not prime (composite p)")
    if m < 1:
        raise FieldError(f"Extension degree m={m} must be >= 1")
    q = p ** m
    if q > max_q:
        raise FieldBoundError(q, max_q)
    if m == 1:
        return FieldCtx(p, 1, (0, 1), max_q)
    if modulus is None:
        modulus = smallest_irreducible(p, m)
        logger.debug("F_%d^%d: modulus %s", p, m, modulus)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"Modulus must be monic of degree {m}")
        if not is_irreducible(p, modulus):
            raise FieldError(f"Modulus {modulus} is reducible over F_{p}")
    return FieldCtx(p, m, modulus, max_q)


def field_ctx(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None,
              max_q: Optional[int] = None) -> FieldCtx:
    """
    ⭐ CONSTRUCTION D'UN CORPS FINI ⭐
    Valide p (premier impair), le modulus (unitaire, irréductible) et la borne q <= max_q.

    Args:
        p: Caractéristique (premier impair)
        m: Degré d'extension (>= 1)
        modulus: Coefficients du modulus, degré faible en premier (optionnel)
        max_q: Borne du recensement (par défaut get_settings().max_q)

    Returns:
        FieldCtx (mis en cache: deux appels identiques renvoient le même objet)
    """
    bound = max_q if max_q is not None else get_settings().max_q
    key = tuple(int(c) for c in modulus) if modulus is not None else None
    if m == 1:
        key = None
    return _build_ctx(int(p), int(m), key, int(bound))


# ---- Opérations de la bibliothèque ----

def arith(a: FieldElement, b: Union[FieldElement, int, None], op: str) -> FieldElement:
    """Dispatch table for the named field operations (add, sub, mul, div, pow, neg, inv)."""
    operations: Dict[str, Callable[[], FieldElement]] = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
        "pow": lambda: a ** int(b),
        "neg": lambda: -a,
        "inv": lambda: a.inverse(),
    }
    if op not in operations:
        raise FieldError(f"Unknown field operation '{op}'")
    return operations[op]()


def chi2(x: FieldElement) -> int:
    return x.chi2()


def _tonelli_shanks(x: FieldElement) -> FieldElement:
    ctx = x.ctx
    s, t = 0, ctx.q - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    z = ctx.nonresidue ** t
    root = x ** ((t + 1) // 2)
    b = x ** t
    e = s
    while b != ctx.one:
        # plus petit i avec b^(2^i) = 1
        i, b2 = 0, b
        while b2 != ctx.one:
            b2 = b2 * b2
            i += 1
        g = z ** (1 << (e - i - 1))
        root = root * g
        z = g * g
        b = b * z
        e = i
    return root


def sqrt_canonical(x: FieldElement) -> Optional[FieldElement]:
    """
    Racine carrée canonique: pour m = 1 le représentant dans [0, (p-1)/2],
    sinon la racine de plus petite suite de coefficients (degré faible en premier).
    Renvoie None si x n'est pas un carré.
    """
    if x.is_zero():
        return x
    if x.chi2() != 1:
        return None
    root = _tonelli_shanks(x)
    return min(root, -root, key=lambda r: r.coeffs)


def fourth_power_class(x: FieldElement) -> PowerClass:
    if x.is_zero():
        return PowerClass.ZERO
    if x.chi2() == -1:
        return PowerClass.NONSQUARE
    q = x.ctx.q
    if x ** ((q - 1) // gcd(4, q - 1)) == x.ctx.one:
        return PowerClass.FOURTH
    return PowerClass.SQUARE_NOT_FOURTH


# ---- Extensions ----

@dataclass(frozen=True)
class Lift:
    """F_q plongé dans un corps de travail F_{q^k} (k = 1, 2 ou 4)."""

    base: FieldCtx
    field: FieldCtx
    degree: int
    root: FieldElement  # image de la classe de x (inutilisée si base.m == 1)

    def embed(self, a: FieldElement) -> FieldElement:
        if a.ctx != self.base:
            raise FieldError("Element does not belong to the base field of this lift")
        if self.degree == 1:
            return a
        if self.base.m == 1:
            return self.field(a.coeffs[0])
        result = self.field.zero
        power = self.field.one
        for c in a.coeffs:
            if c:
                result = result + power * c
            power = power * self.root
        return result

    __call__ = embed

    def __iter__(self):
        # permet: F, embed = lift_to_extension(ctx, 2)
        return iter((self.field, self.embed))

    @cached_property
    def _preimages(self) -> Dict[FieldElement, FieldElement]:
        return {self.embed(a): a for a in self.base.elements()}

    def preimage(self, b: FieldElement) -> Optional[FieldElement]:
        """The base element mapping to b, or None when b is not in F_q."""
        if self.degree == 1:
            return b
        return self._preimages.get(b)

    def sqrt(self, a: FieldElement) -> FieldElement:
        """Canonical square root of a base element, computed in the working field."""
        root = sqrt_canonical(self.embed(a))
        if root is None:
            raise NotRationalError(f"{format_element(a)} has no square root in {format_field_ctx(self.field)}")
        return root


def identity_lift(ctx: FieldCtx) -> Lift:
    return Lift(ctx, ctx, 1, ctx.gen)


@lru_cache(maxsize=None)
def lift_to_extension(ctx: FieldCtx, k: int) -> Lift:
    """
    ⭐ EXTENSION F_q -> F_{q^k} ⭐
    Pour m = 1 le plongement envoie a sur le polynôme constant a; pour m > 1
    on cherche une racine du modulus de F_q dans le sous-corps d'ordre q de F_{q^k}.
    """
    if k == 1:
        return identity_lift(ctx)
    if k not in (2, 4):
        raise FieldError(f"Extension degree k={k} must be 2 or 4")
    if ctx.q ** k > ctx.max_q:
        raise FieldBoundError(ctx.q ** k, ctx.max_q)
    big = field_ctx(ctx.p, ctx.m * k, max_q=ctx.max_q)
    if ctx.m == 1:
        return Lift(ctx, big, k, big.zero)
    # le sous-corps F_q* de F_{q^k}* est engendré par g^((Q-1)/(q-1))
    zeta = big.primitive_element ** ((big.q - 1) // (ctx.q - 1))
    roots = []
    candidate = big.one
    for _ in range(ctx.q - 1):
        value = big.zero
        power = big.one
        for c in ctx.modulus:
            value = value + power * c
            power = power * candidate
        if value.is_zero():
            roots.append(candidate)
        candidate = candidate * zeta
    if not roots:
        raise FieldError("Embedding root not found")  # impossible: F_q sits inside F_{q^k}
    root = min(roots, key=lambda r: r.coeffs)
    logger.debug("lift %s -> %s via root %s", format_field_ctx(ctx), format_field_ctx(big), root)
    return Lift(ctx, big, k, root)


def minimal_lift(ctx: FieldCtx, radicands: Sequence[FieldElement]) -> Lift:
    """Smallest working field (base or quadratic) where every radicand has a square root."""
    if all(r.chi2() >= 0 for r in radicands):
        return identity_lift(ctx)
    return lift_to_extension(ctx, 2)


# ---- Sérialisation ----

def format_element(x: FieldElement) -> str:
    if x.ctx.m == 1:
        return str(x.coeffs[0])
    return ",".join(str(c) for c in x.coeffs)


def parse_element(text: str, ctx: FieldCtx) -> FieldElement:
    """Decimal integer (m = 1) or m comma-separated coefficients; values are reduced mod p."""
    parts = [part.strip() for part in text.strip().split(",")]
    if len(parts) != ctx.m:
        raise FieldError(f"Expected {ctx.m} coefficient(s), got '{text}'")
    try:
        return ctx([int(part) for part in parts])
    except ValueError as exc:
        raise FieldError(f"Malformed field element literal '{text}'") from exc


def format_field_ctx(ctx: FieldCtx) -> str:
    return f"{ctx.p}^{ctx.m}:" + ",".join(str(c) for c in ctx.modulus)


def parse_field_ctx(text: str, max_q: Optional[int] = None) -> FieldCtx:
    try:
        head, _, modulus = text.strip().partition(":")
        p_text, _, m_text = head.partition("^")
        p, m = int(p_text), int(m_text or 1)
        coeffs = tuple(int(c) for c in modulus.split(",")) if modulus else None
    except ValueError as exc:
        raise FieldError(f"Malformed field literal '{text}'") from exc
    return field_ctx(p, m, coeffs if m > 1 else None, max_q=max_q)


# ---- Identité de sommes de caractères ----

def williams_identity(ctx: FieldCtx, coeffs: Sequence[Union[int, FieldElement]],
                      func: Callable[[FieldElement], int]) -> Tuple[int, int]:
    """
    ⭐ IDENTITÉ DE SOMMES DE CARACTÈRES ⭐
    Évalue les deux membres de l'identité qui transforme une somme de F sur une
    fraction de deux trinômes en somme de chi2(Dx^2 + Δx + d)·F(x).

    Args:
        ctx: Corps de travail
        coeffs: (a1, b1, c1, a2, b2, c2)
        func: Fonction F: F_q -> Z (n'importe laquelle)

    Returns:
        (membre de gauche, membre de droite)
    """
    a1, b1, c1, a2, b2, c2 = (ctx(c) for c in coeffs)
    big_d = b2 * b2 - 4 * a2 * c2
    delta = 4 * a1 * c2 - 2 * b1 * b2 + 4 * a2 * c1
    small_d = b1 * b1 - 4 * a1 * c1
    if (delta * delta - 4 * small_d * big_d).is_zero():
        raise FieldError("Inadmissible coefficients: Δ² - 4dD = 0")
    lhs = 0
    rhs = 0
    for x in ctx.elements():
        den = (a2 * x + b2) * x + c2
        if not den.is_zero():
            lhs += func(((a1 * x + b1) * x + c1) / den)
        fx = func(x)
        rhs += ((big_d * x + delta) * x + small_d).chi2() * fx + fx
    if not a2.is_zero():
        rhs -= func(a1 / a2)
    return lhs, rhs
