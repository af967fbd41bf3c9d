"""Zero distribution of polynomials on the unit circle.

Reports are the same JSON documents the ``zerodist analyze --json`` command
writes, returned here as dicts.
"""

import json

from ._core import (
    REPORT_SCHEMA_VERSION,
    RootFindError,
    discrepancy,
    family_coeffs,
    find_roots,
)
from . import _core

__all__ = [
    "REPORT_SCHEMA_VERSION",
    "RootFindError",
    "analyze",
    "analyze_family",
    "discrepancy",
    "family_coeffs",
    "find_roots",
    "render_svg",
]


def analyze(coeffs, label="python", tol=1e-13):
    """Full analysis of sum(coeffs[j] * z**j); coefficients are low to high."""
    return json.loads(_core.analyze_coeffs_json([complex(c) for c in coeffs], label, tol))


def analyze_family(kind, N=None, p=None, c=None, seed=None, tol=1e-13):
    """Full analysis of a built-in family member, e.g. analyze_family("fekete", p=163)."""
    return json.loads(_core.analyze_family_json(kind, N, p, c, seed, tol))


def render_svg(report, title=""):
    """Zero scatter plot for a report dict."""
    return _core.render_svg(json.dumps(report), title)
