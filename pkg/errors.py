#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Exceptions communes à tous les modules (ff, curves, maps, torsion, census).

Le CLI traduit ces exceptions en codes de sortie (voir cli/main.py), comme une
couche HTTP traduit les erreurs métier en codes de statut.
"""

from typing import Optional


class CensusError(Exception):
    """Base class for every error raised by this package."""


class FieldError(CensusError, ValueError):
    """Bad prime, reducible modulus, mixed contexts or division by zero."""


class FieldBoundError(FieldError):
    """The field (or a requested extension) is larger than the census bound."""

    def __init__(self, q: int, max_q: int):
        super().__init__(f"Field size q={q} exceeds the census bound {max_q}")
        self.q = q
        self.max_q = max_q


class DegenerateCurveError(CensusError, ValueError):
    """Curve parameters violate a nondegeneracy condition."""

    def __init__(self, condition: str, detail: Optional[str] = None):
        message = f"Degenerate parameters: {condition}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
        self.condition = condition


class UnsupportedModelError(CensusError, TypeError):
    """The operation is not available for this curve model kind."""


class NotRationalError(CensusError, ValueError):
    """A point or map needs a field extension the caller did not allow."""


class ResidueClassError(CensusError, ValueError):
    """The field is outside the residue class an operation or theorem requires."""


class CensusInvariantError(CensusError, AssertionError):
    """An internal consistency check failed (table invariants, Hasse bound, ...)."""
