"""Exact slope, Donaldson-Futaki and CM invariants of polarized schemes."""

import json
from fractions import Fraction

from ._kstab import (
    BudgetExceeded,
    InputError,
    InvariantViolation,
    graded_dimension,
    hilbert_polynomial,
    job_kinds,
    power_compat,
)
from . import _kstab

__all__ = [
    "BudgetExceeded",
    "InputError",
    "InvariantViolation",
    "df",
    "graded_dimension",
    "hilbert_polynomial",
    "job_kinds",
    "power_compat",
    "run_job",
    "slope",
]


def run_job(job, seed=None):
    """Run a job given as a dict or JSON text. Returns (report dict, exit code)."""
    text = job if isinstance(job, str) else json.dumps(job)
    report, code = _kstab.run_job(text, seed)
    return json.loads(report), code


def slope(variables, ideal, d=1):
    return Fraction(_kstab.slope(variables, ideal, d))


def df(variables, variety, subscheme, c, d=1):
    values = _kstab.df(variables, variety, subscheme, str(Fraction(c)), d)
    return {k: Fraction(v) for k, v in values.items()}
