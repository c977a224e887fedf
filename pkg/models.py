#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Modèles pydantic de tous les artefacts qui sortent du process
(tables de recensement, rapports de vérification, profils de torsion).

FONCTIONS PRINCIPALES:
1. table_to_csv() / table_from_csv() - Format CSV stable octet par octet
2. table_to_json() / table_from_json() - Variante JSON
"""

import csv
import io
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import CensusInvariantError, FieldError

FORMAT_VERSION = 1
CSV_COLUMNS = ["A", "N", "N_n2", "N_2n4", "N_4", "d"]


# Recensement
class CensusRecordBase(BaseModel):
    trace: int
    d_values: List[str]


class CensusRecord(CensusRecordBase):
    n: int
    n_n2: int
    n_2: int
    n_2n4: int
    n_4: int

    model_config = ConfigDict(from_attributes=True)

    @model_validator(mode="after")
    def check_partition(self) -> "CensusRecord":
        if self.n != len(self.d_values):
            raise ValueError(f"A={self.trace}: N={self.n} but {len(self.d_values)} parameters listed")
        if self.n != self.n_n2 + self.n_2n4 + self.n_4 or self.n_2 != self.n_2n4 + self.n_4:
            raise ValueError(f"A={self.trace}: refined counts do not partition N")
        return self


class CensusTable(BaseModel):
    format_version: int = FORMAT_VERSION
    field: str
    q: int
    records: List[CensusRecord]

    model_config = ConfigDict(from_attributes=True)

    @model_validator(mode="after")
    def check_invariants(self) -> "CensusTable":
        total = sum(r.n for r in self.records)
        if total != self.q - 2:
            raise ValueError(f"Census covers {total} parameters, expected q - 2 = {self.q - 2}")
        for r in self.records:
            if r.trace * r.trace > 4 * self.q or (self.q + 1 - r.trace) % 4:
                raise ValueError(f"Impossible trace A={r.trace} for q={self.q}")
        traces = [r.trace for r in self.records]
        if traces != sorted(set(traces)):
            raise ValueError("Records must be sorted by trace without duplicates")
        return self

    def by_trace(self) -> Dict[int, CensusRecord]:
        return {r.trace: r for r in self.records}

    def count(self, trace: int, column: str = "n") -> int:
        """Refined count for a trace; traces with no parameter count as 0."""
        record = self.by_trace().get(trace)
        return getattr(record, column) if record is not None else 0


# Rapports
class TraceCheck(BaseModel):
    trace: int
    expected: str
    observed: str
    ok: bool


class TheoremReport(BaseModel):
    theorem: str
    field: str
    status: Literal["verified", "failed"]
    details: List[TraceCheck] = Field(default_factory=list)
    counterexamples: List[str] = Field(default_factory=list)
    flags: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def failed_has_counterexample(self) -> "TheoremReport":
        if self.status == "failed" and not self.counterexamples:
            raise ValueError("A failed report must carry at least one counterexample")
        return self

    @property
    def ok(self) -> bool:
        return self.status == "verified"


class IsogenyReport(BaseModel):
    map_name: str
    domain: str
    codomain: str
    degree: int
    defined_over: str
    working_field: str
    membership: bool
    homomorphism: Optional[bool] = None
    counts_equal: Optional[bool] = None
    kernel_ok: bool
    kernel_size: int
    kernel_complete: bool = True
    points_checked: int
    undefined_points: int = 0
    samples: int = 0
    counterexamples: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        checks = (self.membership, self.homomorphism, self.counts_equal, self.kernel_ok)
        return all(check is not False for check in checks)


class TorsionProfileModel(BaseModel):
    chi_d: int
    chi_1md: int
    chi_m1: int
    four_torsion: str
    halvable: List[str]
    order8: bool


class DeuringPolyModel(BaseModel):
    p: int
    coefficients: List[int]
    roots: List[str] = Field(default_factory=list)
    s_p: int


class BijectionReport(BaseModel):
    field: str
    d: str
    lambdas: List[str]
    mus: List[str]
    lambdas_nonsquare: bool
    traces_preserved: bool
    mus_match: bool
    compositions_double: bool
    counterexamples: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lambdas_nonsquare and self.traces_preserved and self.mus_match and self.compositions_double


class Classification(BaseModel):
    field: str
    d: str
    trace: int
    order: int
    isogeny_class: int
    chi_d: int
    complete: bool
    fourth_power_class: str
    orbit: List[str]
    edwards_iso_class: List[str]
    torsion: TorsionProfileModel
    supersingular: bool
    original_isogenous: bool


# ============================================================================
# SÉRIALISATION DES TABLES
# ============================================================================

def table_to_csv(table: CensusTable) -> str:
    """En-tête "# census format=<v> field=<ctx>", puis une ligne par trace."""
    buffer = io.StringIO()
    buffer.write(f"# census format={table.format_version} field={table.field} q={table.q}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in table.records:
        writer.writerow([r.trace, r.n, r.n_n2, r.n_2n4, r.n_4, ";".join(r.d_values)])
    return buffer.getvalue()


def _parse_header(line: str) -> Dict[str, str]:
    if not line.startswith("# census"):
        raise FieldError("Missing census header line")
    return dict(item.split("=", 1) for item in line[len("# census"):].split())


def table_from_csv(text: str) -> CensusTable:
    lines = text.splitlines()
    if not lines:
        raise FieldError("Empty census file")
    header = _parse_header(lines[0])
    try:
        records = []
        for row in csv.DictReader(lines[1:]):
            d_values = row["d"].split(";") if row["d"] else []
            n_2n4, n_4 = int(row["N_2n4"]), int(row["N_4"])
            records.append(CensusRecord(
                trace=int(row["A"]),
                d_values=d_values,
                n=int(row["N"]),
                n_n2=int(row["N_n2"]),
                n_2=n_2n4 + n_4,
                n_2n4=n_2n4,
                n_4=n_4,
            ))
        return CensusTable(format_version=int(header["format"]), field=header["field"],
                           q=int(header["q"]), records=records)
    except ValueError as exc:
        raise CensusInvariantError(str(exc)) from exc


def table_to_json(table: CensusTable) -> str:
    return table.model_dump_json(indent=2) + "\n"


def table_from_json(text: str) -> CensusTable:
    return CensusTable.model_validate_json(text)
