import math

import pytest

from app.analyser.arithmetic import sphere_from_spec
from app.analyser.coloring import ChromaticResult
from app.analyser.graph_core import cycle_graph, induced_subgraph
from app.core.errors import PseudomanifoldInputError
from app.service.bounds_service import (
    SphereDecomposition,
    check_bounds,
    is_close_dimension,
    subpseudomanifold_bound,
    table1_report,
    verify_sphere_prediction,
)
from app.service.corpus_service import pseudomanifold_corpus
from app.store.models import Coloring, SphereSpec


def _values(report):
    return [(b.relation, b.value) for b in report.applicable_bounds]


def test_square_join_pentagon_with_decomposition(c4_plus_c5):
    decomposition = SphereDecomposition(SphereSpec(cycle_lengths=[4]), cycle_graph(5))
    report = check_bounds(c4_plus_c5, decomposition=decomposition)
    assert report.dimension == 3
    assert report.chromatic.exact == 5
    assert _values(report) == [(">=", 4), ("<=", 8), ("<=", 7), ("<=", 6)]
    assert all(b.holds for b in report.applicable_bounds)
    assert report.all_hold
    assert report.decomposition.sphere_dimension == 1
    assert report.decomposition.remainder_dimension == 1


def test_two_pentagons_without_decomposition():
    report = check_bounds(sphere_from_spec(SphereSpec(cycle_lengths=[5, 5])))
    assert report.dimension == 3
    assert report.chromatic.exact == 6
    assert _values(report) == [(">=", 4), ("<=", 8)]
    assert report.all_hold
    # ceil(3 * 4 / 2) = 6
    assert [p.holds for p in report.conjecture_probes] == [True, True]


def test_octahedron_bounds(octahedron):
    report = check_bounds(octahedron)
    assert report.chromatic.exact == 3
    assert _values(report) == [(">=", 3), ("<=", 6)]
    assert report.decomposition is None


def test_odd_sphere_decomposition_skips_ceiling(c4_plus_c5):
    decomposition = SphereDecomposition(SphereSpec(cycle_lengths=[5]), cycle_graph(4))
    report = check_bounds(c4_plus_c5, decomposition=decomposition)
    assert [b.name for b in report.applicable_bounds][-1] == "sphere-join upper bound"


def test_decomposition_mismatch_is_input_error(c4_plus_c5):
    wrong = SphereDecomposition(SphereSpec(cycle_lengths=[5]), cycle_graph(5))
    with pytest.raises(PseudomanifoldInputError):
        check_bounds(c4_plus_c5, decomposition=wrong)


def test_bounds_need_certified_graph(k4):
    with pytest.raises(PseudomanifoldInputError):
        check_bounds(k4)


def test_undecided_bounds_on_interval(c4_plus_c5):
    interval = ChromaticResult(lower=4, upper=7, coloring=Coloring(palette_size=7, assignment={}), timed_out=True)
    report = check_bounds(c4_plus_c5, chromatic=interval)
    assert report.chromatic.exact is None
    assert [b.holds for b in report.applicable_bounds] == [True, True]
    assert [p.holds for p in report.conjecture_probes] == [True, None]


@pytest.mark.parametrize("d, k, expected", [(3, 1, True), (4, 1, True), (5, 2, True), (5, 1, False), (6, 2, True), (6, 3, False)])
def test_close_dimension(d, k, expected):
    assert is_close_dimension(d, k) == expected


def test_ceiling_never_exceeds_other_bounds():
    for entry in pseudomanifold_corpus():
        if entry.decomposition is None:
            continue
        d = entry.dimension
        spec = entry.decomposition.spec
        if spec.parity == "even" and is_close_dimension(d, spec.dimension):
            assert math.ceil(3 * (d + 1) / 2) <= 2 * d + 1 <= 2 * d + 2


def test_table1_printed_columns():
    report = table1_report(budget=5.0)
    assert len(report.rows) == 6
    first = report.rows[0]
    assert (first.d, first.k, first.sphere, first.sphere_chromatic) == (3, 1, "C5", 3)
    assert (first.remainder_chromatic_max, first.chromatic_max, first.ceiling) == (3, 6, 6)
    assert report.rows[-1].sphere == "C5+C5+C5"
    assert report.rows[-1].sphere_chromatic == 9

    assert report.caption_mismatch
    assert all(r.caption_mismatch for r in report.rows)
    assert [r.caption_remainder_max for r in report.rows] == [4, 8, 4, 12, 8, 4]
    assert all(r.remainder_chromatic_max == r.caption_remainder_max - 1 for r in report.rows)
    assert all(r.sum_consistent and r.ceiling_consistent for r in report.rows)
    assert [r.exceeds_ceiling for r in report.rows] == [False, True, False, True, True, False]
    assert any("caption" in note for note in report.notes)
    assert report.rows[0].recomputed_sphere_chromatic == 3


@pytest.mark.slow
def test_table1_sphere_values_recomputed():
    report = table1_report()
    assert [r.recomputed_sphere_chromatic for r in report.rows] == [3, 3, 6, 3, 6, 9]


def test_octahedron_prediction_is_flagged():
    prediction = verify_sphere_prediction(SphereSpec(cycle_lengths=[4], suspension_count=1))
    assert prediction.printed_value == 4
    assert prediction.exact_value == 3
    assert prediction.proof_trace_value == prediction.exact_value
    assert prediction.divergent


def test_pentagon_pair_prediction_matches_solver():
    prediction = verify_sphere_prediction(SphereSpec(cycle_lengths=[5, 5]))
    assert prediction.printed_value == prediction.exact_value == 6


def test_subpseudomanifold_bound(octahedron):
    equator = induced_subgraph(octahedron, ["c0a", "c0b", "c0c", "c0d"])
    checks = subpseudomanifold_bound(equator, octahedron)
    assert [c.holds for c in checks] == [True, True, True]
    assert [c.value for c in checks] == [3, 2, 4]


def test_subpseudomanifold_bound_rejects_foreign_graph(octahedron):
    with pytest.raises(PseudomanifoldInputError):
        subpseudomanifold_bound(cycle_graph(4, prefix="z"), octahedron)
