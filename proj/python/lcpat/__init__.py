"""Complements and quasi-reducibility for logically constrained rewrite systems."""

import json

from . import _core
from ._core import LcpatError, diagnostics

__all__ = ["LcpatError", "check", "complement", "diagnostics", "diff"]


def check(text, solver_cmd="", timeout_ms=5000, equiv="syntactic"):
    """Decide quasi-reducibility of an LCTRS given as text."""
    return json.loads(_core.check(text, solver_cmd, timeout_ms, equiv))


def complement(text, solver_cmd="", timeout_ms=5000, equiv="syntactic"):
    """Constrained patterns not covered by any rule left-hand side."""
    return json.loads(_core.complement(text, solver_cmd, timeout_ms, equiv))


def diff(sig_text, p_text, q_text, solver_cmd="", timeout_ms=5000, equiv="syntactic"):
    """Difference of two constrained pattern sets over the signature in sig_text."""
    return json.loads(_core.diff(sig_text, p_text, q_text, solver_cmd, timeout_ms, equiv))
