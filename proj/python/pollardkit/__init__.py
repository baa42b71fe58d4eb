"""Multiplicity spectra and Pollard-type bounds over finite abelian groups.

Sets are plain lists of element indices; groups are ``Group`` objects built
from a literal such as ``"Z2xZ6"`` or a factor list.
"""

import json

from ._pollardkit import (
    Group,
    GroupMismatch,
    InvalidArgument,
    LimitExceeded,
    alpha,
    default_catalog,
    main_rhs,
    mu,
    period,
    subgroups,
    sumset,
    translate,
)
from . import _pollardkit as _native

__all__ = [
    "Group",
    "GroupMismatch",
    "InvalidArgument",
    "LimitExceeded",
    "alpha",
    "certify",
    "check",
    "default_catalog",
    "main_rhs",
    "mu",
    "period",
    "spectrum",
    "subgroups",
    "sumset",
    "sweep",
    "translate",
    "verify_certificate",
]


def _group(g):
    return g if isinstance(g, Group) else Group(g)


def spectrum(group, a, b):
    """{"r": [...], "partial_sums": [S_1, ...]} for the pair (A, B)."""
    return json.loads(_native._spectrum_json(_group(group), list(a), list(b)))


def check(group, a, b, t, bounds="all"):
    """Bound report for (A, B, t); A and B are normalized first."""
    return json.loads(_native._check_json(_group(group), list(a), list(b), t, bounds))


def certify(group, a, b, t):
    """Induction certificate for the normalized pair, as a nested dict."""
    return json.loads(_native._certify_json(_group(group), list(a), list(b), t))


def verify_certificate(cert):
    """Returns (ok, failing_path, message)."""
    text = cert if isinstance(cert, str) else json.dumps(cert)
    return _native._verify_json(text)


def sweep(config=""):
    """Runs a search; config uses the key = value file syntax.

    Returns (summary, witnesses) with witnesses as a list of dicts.
    """
    summary, lines = _native._sweep(config)
    return json.loads(summary), [json.loads(line) for line in lines.splitlines()]
