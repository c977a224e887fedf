#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from pathlib import Path

import pytest

from config import get_settings
from ff import field_ctx

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Chaque test relit un environnement sans variables EDWARDS_CENSUS_*."""
    for name in ("MAX_Q", "THREADS", "OUTPUT_FORMAT", "HOMOMORPHISM_SAMPLES", "RANDOM_SEED", "LOG_LEVEL"):
        monkeypatch.delenv(f"EDWARDS_CENSUS_{name}", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def f3():
    return field_ctx(3)


@pytest.fixture
def f5():
    return field_ctx(5)


@pytest.fixture
def f7():
    return field_ctx(7)


@pytest.fixture
def f13():
    return field_ctx(13)


@pytest.fixture
def f9():
    return field_ctx(3, 2)


@pytest.fixture
def census_13_csv():
    return (FIXTURES / "census_13.csv").read_text(encoding="utf-8")


def odd_primes(limit):
    return [p for p in range(3, limit + 1) if all(p % k for k in range(2, int(p ** 0.5) + 1))]
