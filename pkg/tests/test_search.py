"""Trace-condition solver against exhaustive scans and counting formulas."""

import itertools
import random

import pytest

from arcflock.finite_field import make_field
from arcflock.mathon_arcs import DisjointnessError, arc_points, verify_maximal_arc
from arcflock.search import (
    GroupSpec,
    additive_subgroups_containing_one,
    base_denniston_arc,
    beta_of,
    build_trace_system,
    condition_value_squared,
    construct_extension_arc,
    enumerate_group_specs,
    guaranteed_degree,
    mu_solutions_linear,
    mu_solutions_scan,
    prefilter_rho,
    rank_analysis,
    search_field,
    search_group,
    solve_trace_system,
)


def _gauss2(n: int, k: int) -> int:
    """Gaussian binomial [n choose k]_2: number of k-dim subspaces of GF(2)^n."""
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (k - i)) - 1
    return num // den


# -- GroupSpec -----------------------------------------------------------------------


def test_group_spec_validation():
    gf = make_field(5)
    with pytest.raises(ValueError, match="sorted tuple"):
        GroupSpec(gf, (0, 2, 1, 3), 4)
    with pytest.raises(ValueError, match="contain 0"):
        GroupSpec(gf, (1, 2, 3), 4)
    with pytest.raises(ValueError, match="contain 1"):
        GroupSpec(gf, (0, 2, 4, 6), 1)
    with pytest.raises(ValueError, match="closed under addition"):
        GroupSpec(gf, (0, 1, 2, 4), 8)
    with pytest.raises(ValueError, match="outside the field"):
        GroupSpec(gf, (0, 1, 32, 33), 4)
    with pytest.raises(ValueError, match="outside H"):
        GroupSpec(gf, (0, 1, 2, 3), 2)
    with pytest.raises(ValueError, match="outside the field"):
        GroupSpec(gf, (0, 1, 2, 3), 99)


def test_group_spec_properties():
    gf = make_field(5)
    spec = GroupSpec(gf, (0, 1, 2, 3), 4)
    assert spec.d == 4
    assert spec.doubled == (0, 1, 2, 3, 4, 5, 6, 7)


# -- building the system -------------------------------------------------------------


def test_frozen_system_q32():
    # [DERIVED: multipliers recomputed from the defining quotient below]
    gf = make_field(5)
    spec = GroupSpec(gf, (0, 1, 2, 3), 4)
    system = build_trace_system(spec)
    assert system.epsilon == 0  # 1 + trace(1), odd-degree field
    assert [(c.lam, c.c) for c in system.conditions] == [(1, 1), (2, 3), (3, 14)]
    for cond in system.conditions:
        recomputed = gf.div(gf.mul(cond.lam, 4 ^ 1), 4 ^ cond.lam)
        assert cond.c == recomputed != 0


def test_epsilon_depends_on_field_parity():
    assert build_trace_system(GroupSpec(make_field(4), (0, 1), 2)).epsilon == 1
    assert build_trace_system(GroupSpec(make_field(5), (0, 1), 2)).epsilon == 0


def test_condition_count_is_d_minus_one():
    gf = make_field(5)
    for H in additive_subgroups_containing_one(gf, 8):
        ld = next(x for x in gf.elements() if x not in H)
        system = build_trace_system(GroupSpec(gf, H, ld))
        assert len(system.conditions) == 7
        assert [c.lam for c in system.conditions] == [x for x in H if x]


# -- linear algebra over GF(2) -------------------------------------------------------


def test_condition_rows_are_linear_functionals():
    from arcflock.search import _condition_row

    gf = make_field(4)
    for c in gf.nonzero_elements():
        row = _condition_row(gf, c)
        for mu in gf.elements():
            assert gf.trace(gf.mul(c, mu)) == (row & mu).bit_count() & 1


@pytest.mark.parametrize("h", (4, 5))
def test_scan_and_linear_solutions_agree(h):
    gf = make_field(h)
    for order in (2, 4):
        for spec in enumerate_group_specs(gf, order):
            system = build_trace_system(spec)
            assert mu_solutions_scan(system) == mu_solutions_linear(system)


@pytest.mark.parametrize("h", (4, 5))
def test_rank_analysis_counts_solutions(h):
    gf = make_field(h)
    for order in (2, 4):
        for spec in enumerate_group_specs(gf, order):
            system = build_trace_system(spec)
            analysis = rank_analysis(system)
            scan = mu_solutions_scan(system)
            assert analysis.solution_count == len(scan)
            if scan:
                assert len(scan) == 1 << (gf.h - analysis.rank)
            assert analysis.independent == (analysis.rank == len(system.conditions))


def test_condition_value_squared_is_equivalent():
    gf = make_field(5)
    spec = GroupSpec(gf, (0, 1, 2, 3), 4)
    system = build_trace_system(spec)
    for cond in system.conditions:
        for rho in gf.nonzero_elements():
            direct = gf.trace(gf.div(cond.c, rho)) == system.epsilon
            assert (condition_value_squared(gf, cond.c, rho) == 1) == direct


# -- solving and constructing --------------------------------------------------------


def test_frozen_solution_q32():
    gf = make_field(5)
    spec = GroupSpec(gf, (0, 1, 2, 3), 4)
    system = build_trace_system(spec)
    assert rank_analysis(system) == rank_analysis(system)  # deterministic
    assert rank_analysis(system).rank == 3
    assert prefilter_rho(system) == {16, 27, 30}
    assert solve_trace_system(system) == {16}
    assert beta_of(gf, 4, 16) == 3


def test_base_denniston_arc_lams_are_squares_of_H():
    gf = make_field(5)
    spec = GroupSpec(gf, (0, 1, 2, 3), 4)
    base = base_denniston_arc(spec)
    assert base.lam_values == tuple(sorted(gf.square(x) for x in (1, 2, 3)))
    assert base.lam_values == (1, 4, 5)
    assert base.degree == 4
    assert all(c.alpha == 1 and c.beta == 1 for c in base.conics)


def test_construct_extension_arc_frozen_q32():
    gf = make_field(5)
    spec = GroupSpec(gf, (0, 1, 2, 3), 4)
    arc = construct_extension_arc(spec, 16)
    assert [(c.alpha, c.beta, c.lam) for c in arc.conics] == [
        (1, 1, 1),
        (1, 1, 4),
        (1, 1, 5),
        (1, 5, 16),
        (1, 10, 17),
        (1, 19, 20),
        (1, 30, 21),
    ]
    assert len(arc_points(arc)) == 232
    assert verify_maximal_arc(gf, arc_points(arc), 8).verdict


def test_construct_extension_arc_rejects_bad_rho():
    gf = make_field(5)
    spec = GroupSpec(gf, (0, 1, 2, 3), 4)
    with pytest.raises(ValueError, match="nonzero field element"):
        construct_extension_arc(spec, 0)
    with pytest.raises(ValueError, match="nonzero field element"):
        construct_extension_arc(spec, 32)
    # rho in the prefilter but with a degenerate beta
    with pytest.raises(ValueError, match="degenerate conic"):
        construct_extension_arc(spec, 27)
    # rho failing the trace system: the new conic meets a base conic
    with pytest.raises(DisjointnessError):
        construct_extension_arc(spec, 2)


def test_search_group_record_and_example():
    gf = make_field(5)
    spec = GroupSpec(gf, (0, 1, 2, 3), 4)
    record = search_group(spec, example_rho=16)
    assert (record.q, record.H, record.lambda_d) == (32, (0, 1, 2, 3), 4)
    assert record.epsilon == 0
    assert record.rank == 3
    assert record.num_rho_prefilter == 3
    assert record.num_rho_valid == 1
    assert record.example_arc is not None and record.example_arc.degree == 8
    obj = record.to_json()
    assert obj["example_arc"]["degree"] == 8
    assert search_group(spec).example_arc is None
    with pytest.raises(ValueError, match="not a valid solution"):
        search_group(spec, example_rho=17)


# -- enumeration ---------------------------------------------------------------------


def test_subgroup_counts_match_gaussian_binomials():
    # subgroups of order 2^k containing the fixed element 1 correspond to
    # (k-1)-dim subspaces of the quotient GF(2)^h / <1>
    for h, order, expected in (
        (5, 2, _gauss2(4, 0)),
        (5, 4, _gauss2(4, 1)),
        (5, 8, _gauss2(4, 2)),
        (4, 4, _gauss2(3, 1)),
    ):
        subs = additive_subgroups_containing_one(make_field(h), order)
        assert len(subs) == expected
    assert _gauss2(4, 1) == 15 and _gauss2(4, 2) == 35 and _gauss2(3, 1) == 7


def test_subgroups_are_valid_and_deduplicated():
    gf = make_field(4)
    subs = additive_subgroups_containing_one(gf, 4)
    assert len(set(subs)) == len(subs) == 7
    assert list(subs) == sorted(subs)
    for H in subs:
        assert H[0] == 0 and 1 in H and len(H) == 4
        assert all(a ^ b in H for a, b in itertools.combinations(H, 2))


def test_subgroups_match_literal_brute_force_q16():
    gf = make_field(4)
    brute = []
    for rest in itertools.combinations(range(2, 16), 2):
        cand = (0, 1) + rest
        s = set(cand)
        if all(a ^ b in s for a, b in itertools.combinations(cand, 2)):
            brute.append(cand)
    assert tuple(sorted(brute)) == additive_subgroups_containing_one(gf, 4)


def test_subgroup_enumeration_validation():
    gf = make_field(3)
    with pytest.raises(ValueError, match="power of two"):
        additive_subgroups_containing_one(gf, 3)
    with pytest.raises(ValueError, match="exceeds the field size"):
        additive_subgroups_containing_one(gf, 16)


def test_enumerate_group_specs_counts_and_order():
    gf = make_field(4)
    specs = enumerate_group_specs(gf, 4)
    assert len(specs) == 7 * (16 - 4)
    assert all(s.lambda_d not in s.H for s in specs)
    keys = [(s.H, s.lambda_d) for s in specs]
    assert keys == sorted(keys)
    desc = enumerate_group_specs(gf, 4, descending=True)
    assert [(s.H, s.lambda_d) for s in desc] == list(reversed(keys))


# -- field-level search --------------------------------------------------------------


def test_search_field_q16_no_examples_in_even_degree():
    gf = make_field(4)
    records = search_field(gf, 4)
    assert len(records) == 84
    assert all(r.epsilon == 1 and r.rank == 3 for r in records)
    assert sum(1 for r in records if r.num_rho_valid > 0) == 66
    assert all(r.example_arc is None for r in records)
    first = records[0]
    assert (first.H, first.lambda_d) == ((0, 1, 2, 3), 4)
    assert first.num_rho_prefilter == 2 and first.num_rho_valid == 0


def test_search_field_q32_order2():
    gf = make_field(5)
    records = search_field(gf, 2, with_example=False)
    assert len(records) == 30
    assert all(r.H == (0, 1) for r in records)
    assert all(r.rank == 1 and r.num_rho_prefilter == 15 for r in records)
    assert all(r.num_rho_valid >= 1 for r in records)


def test_search_field_example_and_order_q8():
    gf = make_field(3)
    asc = search_field(gf, 2)
    desc = search_field(gf, 2, descending=True)
    assert [(r.H, r.lambda_d) for r in desc] == [
        (r.H, r.lambda_d) for r in reversed(asc)
    ]
    examples_asc = [r for r in asc if r.example_arc is not None]
    assert len(examples_asc) == 1
    arc = examples_asc[0].example_arc
    assert arc.degree == 4
    assert verify_maximal_arc(gf, arc_points(arc), 4).verdict
    examples_desc = [r for r in desc if r.example_arc is not None]
    assert len(examples_desc) == 1
    assert verify_maximal_arc(
        gf, arc_points(examples_desc[0].example_arc), 4
    ).verdict


def test_search_field_threaded_matches_serial():
    gf = make_field(4)
    serial = search_field(gf, 4, with_example=False)
    threaded = search_field(gf, 4, with_example=False, max_workers=4)
    assert [r.to_json() for r in serial] == [r.to_json() for r in threaded]


# -- guaranteed degree ---------------------------------------------------------------


def test_guaranteed_degree_frozen_and_oracle():
    frozen = {1: 2, 2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16, 9: 16, 15: 16, 16: 32}
    for h, expected in frozen.items():
        assert guaranteed_degree(h) == expected
    # independent doubling-chain oracle
    for h in range(1, 17):
        g = 2
        while g <= h:
            g *= 2
        assert guaranteed_degree(h) == g
    with pytest.raises(ValueError):
        guaranteed_degree(0)
