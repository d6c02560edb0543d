import os
import pathlib

import pytest

import lcpat

FIXTURES = pathlib.Path(
    os.environ.get("LCPAT_FIXTURES_DIR", pathlib.Path(__file__).resolve().parents[1] / "fixtures")
)


def read(name):
    return (FIXTURES / name).read_text()


def test_r1_is_not_quasi_reducible():
    v = lcpat.check(read("r1.lctrs"))
    assert v["verdict"] == "not-quasi-reducible"
    assert len(v["witnesses"]) == 3
    assert "reason" not in v


def test_r1prime_is_quasi_reducible():
    assert lcpat.check(read("r1prime.lctrs")) == {"verdict": "quasi-reducible", "witnesses": []}


def test_complement_of_r1prime_is_empty():
    out = lcpat.complement(read("r1prime.lctrs"))
    assert out["verdict"] == "exact"
    assert out["witnesses"] == []


def test_diff_matches_complement():
    out = lcpat.diff(read("r1.lctrs"), read("top.patterns"), read("r1_lhs.patterns"))
    assert out["verdict"] == "exact"
    terms = sorted(w["term"] for w in out["witnesses"])
    assert terms == sorted(w["term"] for w in lcpat.check(read("r1.lctrs"))["witnesses"])


def test_malformed_input_raises_with_diagnostics():
    with pytest.raises(ValueError, match="unknown-sort"):
        lcpat.check(read("malformed.lctrs"))
    assert any("unknown-sort" in d for d in lcpat.diagnostics(read("malformed.lctrs")))


def test_bad_equiv_mode():
    with pytest.raises(ValueError):
        lcpat.check(read("r1.lctrs"), equiv="fuzzy")
