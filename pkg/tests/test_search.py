"""Search engine: exact values, certificates, symmetry, budgets."""

from __future__ import annotations

import math

import pytest

import diam_ramsey.search as search_mod
from diam_ramsey import (
    Coloring,
    FormulaContradictedError,
    ProblemSpec,
    SearchBudgetError,
    SearchConfig,
    brute_force_exists,
    compute_f,
    enumerate_avoiding,
    exists_solution,
    formula_f_mmm2,
    known_value,
    parse_run_string,
)


def test_config_validation() -> None:
    with pytest.raises(ValueError):
        SearchConfig(n_cap=0)
    with pytest.raises(ValueError):
        SearchConfig(mode="everything")
    with pytest.raises(ValueError):
        SearchConfig(worker_count=0)
    with pytest.raises(ValueError):
        SearchConfig(max_nodes=0)


def test_formula_f_mmm2_values() -> None:
    # 8m-5+floor((2m-2)/3), one higher at m=2 and m=5
    assert [formula_f_mmm2(m) for m in range(2, 7)] == [12, 20, 29, 38, 46]
    with pytest.raises(ValueError):
        formula_f_mmm2(1)


def test_known_value_families() -> None:
    assert known_value(ProblemSpec((3, 3), 2)) == 12
    assert known_value(ProblemSpec((3, 3), 3)) == 20
    assert known_value(ProblemSpec((3, 3), 4)) == 27
    assert known_value(ProblemSpec((3, 3, 3), 2)) == 20
    assert known_value(ProblemSpec((2, 3), 2)) is None
    assert known_value(ProblemSpec((2, 2), 5)) is None
    assert known_value(ProblemSpec((2, 2), 2, strict=True)) is None


def test_compute_small_values() -> None:
    r = compute_f(ProblemSpec((2, 2), 2))
    assert r.f_value == 7 and not r.inconclusive
    assert compute_f(ProblemSpec((2, 2, 2), 2)).f_value == 12
    assert compute_f(ProblemSpec((2, 2), 3)).f_value == 11


def test_compute_strict_needs_explicit_cap() -> None:
    spec = ProblemSpec((2, 2), 2, strict=True)
    with pytest.raises(ValueError):
        compute_f(spec)  # no closed form to derive a cap from
    r = compute_f(spec, SearchConfig(n_cap=12))
    assert r.f_value == 9


def test_certificates_avoid_and_have_length_f_minus_1() -> None:
    spec = ProblemSpec((2, 2), 2)
    r = compute_f(spec, SearchConfig(mode="all_certificates"))
    assert r.certificates
    for c in r.certificates:
        assert c.length == r.f_value - 1
        assert exists_solution(c, spec) is None


def test_value_only_collects_nothing() -> None:
    r = compute_f(ProblemSpec((2, 2), 2), SearchConfig(mode="value_only"))
    assert r.certificates == ()


def test_one_certificate_is_lexicographic_minimum() -> None:
    spec = ProblemSpec((2, 2), 2)
    one = compute_f(spec, SearchConfig(mode="one_certificate"))
    all_ = compute_f(spec, SearchConfig(mode="all_certificates"))
    assert len(one.certificates) == 1
    assert one.certificates[0].digits == min(c.digits for c in all_.certificates)


def test_all_certificates_match_enumeration() -> None:
    """All maximal avoiding colorings, cross-checked against the oracle."""
    spec = ProblemSpec((2, 2), 2)
    r = compute_f(
        spec, SearchConfig(mode="all_certificates", symmetry_reduction=False)
    )
    n = r.f_value - 1
    ref = []
    for bits in range(1 << n):
        c = Coloring([(bits >> x) & 1 for x in range(n)], 2)
        if brute_force_exists(c, spec) is None:
            ref.append(c.digits)
    assert sorted(c.digits for c in r.certificates) == sorted(ref)


def test_symmetry_reduction_halves_two_color_certificates() -> None:
    spec = ProblemSpec((2, 2), 2)
    full = compute_f(
        spec, SearchConfig(mode="all_certificates", symmetry_reduction=False)
    )
    reduced = compute_f(spec, SearchConfig(mode="all_certificates"))
    assert full.f_value == reduced.f_value
    # every reduced certificate opens with color 0 and each orbit has size 2
    assert all(c.digits[0] == 0 for c in reduced.certificates)
    assert len(full.certificates) == 2 * len(reduced.certificates)


def test_inconclusive_at_cap() -> None:
    spec = ProblemSpec((3, 3), 2)  # true value 12
    r = compute_f(spec, SearchConfig(n_cap=8, mode="one_certificate"))
    assert r.inconclusive
    assert r.f_value is None
    assert r.n_cap == 8
    assert r.certificates and r.certificates[0].length == 8
    assert r.to_json()["inconclusive"] == {"f_greater_than": 8}


def test_stats_are_populated() -> None:
    r = compute_f(ProblemSpec((2, 2), 2))
    assert r.stats.nodes_expanded > 0
    assert r.stats.max_depth >= r.f_value - 1
    assert r.stats.wall_time >= 0
    assert r.stats.worker_count == 1


def test_budget_abort_carries_partial_stats() -> None:
    with pytest.raises(SearchBudgetError) as exc:
        compute_f(ProblemSpec((3, 3), 2), SearchConfig(max_nodes=50))
    assert exc.value.stats.nodes_expanded >= 50


def test_formula_contradicted_is_loud(monkeypatch) -> None:
    """Patch the closed-form table to a wrong value and expect the alarm."""
    spec = ProblemSpec((2, 2), 2)  # true f = 7: avoiding colorings reach 6
    monkeypatch.setattr(search_mod, "known_value", lambda s: 5)
    with pytest.raises(FormulaContradictedError) as exc:
        compute_f(spec, SearchConfig(n_cap=8))
    assert exc.value.expected == 5
    assert exc.value.coloring.length >= 5
    assert exists_solution(exc.value.coloring, spec) is None


def test_parallel_agrees_with_sequential() -> None:
    spec = ProblemSpec((2, 2, 2), 2)
    seq = compute_f(spec, SearchConfig(mode="all_certificates", worker_count=1))
    par = compute_f(spec, SearchConfig(mode="all_certificates", worker_count=3))
    assert seq.f_value == par.f_value
    assert [c.digits for c in seq.certificates] == [
        c.digits for c in par.certificates
    ]
    assert par.stats.worker_count == 3


def test_parallel_inconclusive_and_one_certificate() -> None:
    spec = ProblemSpec((3, 3), 2)
    seq = compute_f(spec, SearchConfig(n_cap=9, worker_count=1))
    par = compute_f(spec, SearchConfig(n_cap=9, worker_count=2))
    assert seq.inconclusive and par.inconclusive
    assert seq.certificates[0].digits == par.certificates[0].digits


# ======================================================================
# enumerate_avoiding
# ======================================================================

def test_enumerate_avoiding_lex_order_and_count() -> None:
    spec = ProblemSpec((2, 2), 2)
    found = enumerate_avoiding(spec, 6)
    ref = [
        Coloring([(bits >> x) & 1 for x in range(6)], 2).digits
        for bits in range(1 << 6)
    ]
    ref = [
        d for d in ref
        if brute_force_exists(Coloring(d, 2), spec) is None
    ]
    assert [c.digits for c in found] == sorted(ref)


def test_enumerate_avoiding_limit() -> None:
    spec = ProblemSpec((2, 2), 2)
    found = enumerate_avoiding(spec, 6, limit=3)
    assert len(found) == 3
    assert found == enumerate_avoiding(spec, 6)[:3]


def test_enumerate_avoiding_orbits() -> None:
    spec = ProblemSpec((2, 2), 2)
    plain = enumerate_avoiding(spec, 6)
    reduced = enumerate_avoiding(spec, 6, symmetry_reduction=True)
    # orbit sizes are r!/(r-u)! and sum back to the plain count
    assert sum(size for _, size in reduced) == len(plain)
    for rep, size in reduced:
        used = len(set(rep.digits))
        assert size == math.perm(2, used)
        assert rep.digits[0] == 0


def test_enumerate_avoiding_empty_when_forced() -> None:
    # every 2-coloring of [1, 7] contains a chain for (2,2;2)
    assert enumerate_avoiding(ProblemSpec((2, 2), 2), 7) == []


def test_enumerate_example_length_11() -> None:
    spec = ProblemSpec((2, 2, 2), 2)
    found = enumerate_avoiding(spec, 11)
    assert parse_run_string("10101101110", 2) in found  # the classic one
    assert len(found) == 2  # it and its color swap are the only two


def test_search_result_json_shape() -> None:
    r = compute_f(ProblemSpec((2, 2), 2))
    doc = r.to_json()
    assert doc["f_value"] == 7
    assert doc["spec"] == {"sizes": [2, 2], "num_colors": 2, "strict": False}
    assert isinstance(doc["certificates"], list)
    assert set(doc["stats"]) == {
        "nodes_expanded", "max_depth", "wall_time", "worker_count",
    }
    # certificates re-parse to the original colorings
    for s, c in zip(doc["certificates"], r.certificates):
        assert parse_run_string(s, 2) == c
