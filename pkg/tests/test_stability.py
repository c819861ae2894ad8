"""Tests for section gluing, reconstruction, and the seeded experiments."""

import re
from fractions import Fraction

import pytest

from mahlerlab.errors import (
    AmbiguousSectionError,
    ConsistencyError,
    PreconditionError,
    ResourceError,
)
from mahlerlab.graphs import (
    complete_graph,
    edges,
    empty_graph,
    enumerate_p4_free_labeled,
    from_edges,
    induced_subgraph,
    path_graph,
    polytope_from_graph,
)
from mahlerlab.polytope import (
    cross_polytope,
    cube,
    diagonal_image,
    from_vertices,
    gauge,
    hausdorff_distance_sq,
    interval,
    is_unconditional,
    normalize_unconditional,
    polar,
    scale,
    volume,
)
from mahlerlab.stability import (
    CASE_TAGS,
    EXPERIMENT_CSV_HEADER,
    PROBE_CSV_HEADER,
    ExperimentConfig,
    concordance_share,
    diagonal_boundary_point,
    diagonal_truncation_check,
    exact_median,
    glue_graphs,
    nearest_hanner_bruteforce,
    perturb_unconditional,
    probe_csv,
    random_unconditional_polytope,
    reconstruct_hanner,
    stability_experiment,
    symmetric_probe,
    trial_base_graphs,
)
from mahlerlab.volprod import mahler_bound

F = Fraction


# ---------------------------------------------------------------------------
# gluing


def test_glue_recovers_every_labeled_graph_on_4():
    for g in enumerate_p4_free_labeled(4) + [path_graph(4)]:
        sections = [induced_subgraph(g, [v for v in range(4) if v != j]) for j in range(4)]
        assert glue_graphs(sections) == g


def test_glue_conflict_names_the_witnesses():
    s0 = empty_graph(3)
    s1 = empty_graph(3)
    s2 = from_edges(3, [(0, 1)])  # says 0-1 is an edge
    s3 = empty_graph(3)  # says it is not
    with pytest.raises(ConsistencyError, match=re.escape("sections 2 and 3 disagree on pair (0, 1)")):
        glue_graphs([s0, s1, s2, s3])


def test_glue_preconditions():
    with pytest.raises(PreconditionError):
        glue_graphs([empty_graph(1), empty_graph(1)])
    with pytest.raises(PreconditionError):
        glue_graphs([empty_graph(2), empty_graph(2), empty_graph(3)])


# ---------------------------------------------------------------------------
# diagonal refinement


def test_diagonal_boundary_point_values():
    assert diagonal_boundary_point(cube(3)) == 1
    from mahlerlab.volprod import truncated_cube

    assert diagonal_boundary_point(truncated_cube(3, F(2, 3))) == F(2, 3)
    assert diagonal_boundary_point(truncated_cube(4, F(9, 10))) == F(9, 10)


def test_diagonal_boundary_point_warns_without_cube_sections():
    with pytest.warns(UserWarning):
        t = diagonal_boundary_point(cross_polytope(3))
    assert t == F(1, 3)


def test_diagonal_boundary_point_preconditions():
    with pytest.raises(PreconditionError):
        diagonal_boundary_point(scale(cube(3), 2))  # not normalized
    with pytest.raises(PreconditionError):
        diagonal_boundary_point(interval())
    tilted = from_vertices([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)])
    with pytest.raises(PreconditionError):
        diagonal_boundary_point(tilted)


def test_diagonal_truncation_check_on_cube_and_truncation():
    t, product, bound = diagonal_truncation_check(cube(3))
    assert (t, product, bound) == (1, F(32, 3), F(32, 3))
    from mahlerlab.volprod import truncated_cube

    t, product, bound = diagonal_truncation_check(truncated_cube(3, F(9, 10)))
    assert t == F(9, 10)
    assert product > bound > mahler_bound(3)
    with pytest.raises(PreconditionError):
        diagonal_truncation_check(cube(2))


# ---------------------------------------------------------------------------
# reconstruction


def test_reconstruct_cube_and_cross():
    rec = reconstruct_hanner(cube(3), body_id="c")
    assert rec.case_tag == "caseI-cube"
    assert rec.nearest_graph == empty_graph(3)
    assert rec.candidate == cube(3)
    assert rec.distance_sq == 0 and rec.product_excess == 0
    rec = reconstruct_hanner(cross_polytope(3))
    assert rec.case_tag == "caseI-cross"
    assert rec.candidate == cross_polytope(3)
    assert rec.distance_sq == 0 and rec.product_excess == 0


def test_reconstruct_normalizes_first():
    rec = reconstruct_hanner(diagonal_image(cube(3), (F(1, 2), F(3), F(7))))
    assert rec.case_tag == "caseI-cube" and rec.distance_sq == 0


def test_reconstruct_dimension_one():
    rec = reconstruct_hanner(interval(F(5)))
    assert rec.case_tag == "caseI-cube"
    assert rec.candidate == interval()
    assert rec.distance_sq == 0 and rec.product_excess == 0


def test_reconstruct_path_ball_is_case_two():
    body = polytope_from_graph(path_graph(4))
    rec = reconstruct_hanner(body, body_id="p4", seed=9)
    assert rec.case_tag == "caseII-path"
    assert rec.nearest_graph == path_graph(4)
    assert rec.candidate == body
    assert rec.distance_sq == 0
    assert rec.product_excess == F(4, 9)
    assert rec.seed == 9


def test_reconstruct_truncated_cube_lands_on_cube_case():
    from mahlerlab.volprod import truncated_cube

    body = truncated_cube(3, F(9, 10))
    rec = reconstruct_hanner(body)
    assert rec.case_tag == "caseI-cube"
    assert rec.distance_sq > 0 and rec.product_excess > 0
    polar_rec = reconstruct_hanner(polar(body))
    assert polar_rec.case_tag == "caseI-cross"
    assert polar_rec.product_excess > 0


def test_reconstruct_self_recovery_all_labeled_graphs():
    for n in (1, 2, 3):
        for g in enumerate_p4_free_labeled(n):
            rec = reconstruct_hanner(polytope_from_graph(g))
            assert rec.nearest_graph == g
            assert rec.distance_sq == 0 and rec.product_excess == 0
            assert rec.case_tag in CASE_TAGS


def test_reconstruct_perturbed_body_is_generic_with_positive_gap():
    base = polytope_from_graph(from_edges(3, [(0, 1)]))
    body = perturb_unconditional(base, F(1, 10), seed=4)
    rec = reconstruct_hanner(body, body_id="wobble")
    assert rec.case_tag == "generic"
    assert rec.distance_sq > 0
    assert rec.product_excess > 0


def test_reconstruct_rejects_non_unconditional():
    tilted = from_vertices([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)])
    with pytest.raises(PreconditionError):
        reconstruct_hanner(tilted)


def test_band_flags_margins_inside_it():
    # octagon with gauge(e0 + e1) = 41/40: margin 1/40 sits inside a 1/10 band
    a = F(40, 41)
    body = from_vertices([(1, 0), (-1, 0), (0, 1), (0, -1), (a, a), (a, -a), (-a, a), (-a, -a)])
    with pytest.raises(AmbiguousSectionError):
        reconstruct_hanner(body, band=F(1, 10))
    # without a band the margin is just a positive number: an edge
    assert reconstruct_hanner(body).nearest_graph == complete_graph(2)
    # an exact Hanner signature inside the band stays unambiguous
    assert reconstruct_hanner(cube(2), band=F(1, 10)).case_tag == "caseI-cube"
    assert reconstruct_hanner(cross_polytope(2), band=F(1, 10)).case_tag == "caseI-cross"


def test_bruteforce_nearest_frozen_and_consistency():
    from mahlerlab.volprod import truncated_cube

    g, d = nearest_hanner_bruteforce(truncated_cube(3, F(5, 6)))
    assert g == empty_graph(3)
    assert d == F(1, 12)
    g, d = nearest_hanner_bruteforce(cube(3))
    assert g == empty_graph(3) and d == 0
    body = perturb_unconditional(polytope_from_graph(from_edges(3, [(1, 2)])), F(1, 20), seed=2)
    rec = reconstruct_hanner(body)
    brute = nearest_hanner_bruteforce(body)
    assert brute[1] <= rec.distance_sq
    with pytest.raises(ResourceError):
        nearest_hanner_bruteforce(cube(5))


# ---------------------------------------------------------------------------
# perturbations


def test_perturb_identity_at_delta_zero():
    assert perturb_unconditional(cube(3), 0, seed=1) == cube(3)
    base = polytope_from_graph(path_graph(3))
    assert perturb_unconditional(base, 0, seed=7) == base


def test_perturb_outputs_are_normalized_unconditional():
    base = polytope_from_graph(from_edges(3, [(0, 1)]))
    for seed in range(30):
        body = perturb_unconditional(base, F(1, 10), seed=seed)
        assert is_unconditional(body)
        for i in range(3):
            e = [0, 0, 0]
            e[i] = 1
            assert gauge(body, e) == 1


def test_perturb_hausdorff_stays_within_distortion_budget():
    delta = F(1, 10)
    cap = 3 * (delta / (1 - delta)) ** 2
    for base in (cube(3), polytope_from_graph(from_edges(3, [(0, 1)]))):
        for seed in (0, 3, 11):
            body = perturb_unconditional(base, delta, seed=seed)
            assert hausdorff_distance_sq(body, base) <= cap


def test_perturb_is_deterministic_in_the_seed():
    base = polytope_from_graph(from_edges(3, [(0, 1)]))
    a = perturb_unconditional(base, F(1, 8), seed=5)
    b = perturb_unconditional(base, F(1, 8), seed=5)
    c = perturb_unconditional(base, F(1, 8), seed=6)
    assert a == b
    assert a != c


def test_perturb_preconditions():
    with pytest.raises(PreconditionError):
        perturb_unconditional(cube(2), 1, seed=0)
    with pytest.raises(PreconditionError):
        perturb_unconditional(cube(2), F(-1, 10), seed=0)
    tilted = from_vertices([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)])
    with pytest.raises(PreconditionError):
        perturb_unconditional(tilted, F(1, 10), seed=0)


def test_random_unconditional_polytope():
    body = random_unconditional_polytope(3, 7)
    assert is_unconditional(body)
    assert body == random_unconditional_polytope(3, 7)
    assert body != random_unconditional_polytope(3, 8)
    assert volume(body) >= volume(cross_polytope(3))  # contains the cross
    with pytest.raises(PreconditionError):
        random_unconditional_polytope(0, 1)


# ---------------------------------------------------------------------------
# experiments


def test_trial_base_graphs_drop_rescaling_absorbed_bases():
    at3 = trial_base_graphs(3)
    assert len(at3) == 3
    assert all(len(edges(g)) == 1 for g in at3)
    # nothing rich exists below dimension 3: fall back to the full list
    assert len(trial_base_graphs(2)) == 2
    assert len(trial_base_graphs(1)) == 1
    from mahlerlab.graphs import maximal_independent_sets

    for g in trial_base_graphs(4):
        mis = maximal_independent_sets(g)
        assert any(a & b for i, a in enumerate(mis) for b in mis[i + 1 :])


def test_exact_median():
    assert exact_median([F(3), F(1), F(2)]) == 2
    assert exact_median([F(1), F(2), F(3), F(10)]) == F(5, 2)
    with pytest.raises(PreconditionError):
        exact_median([])


def test_experiment_config_validation():
    with pytest.raises(PreconditionError):
        ExperimentConfig(n=0, trials=1, delta=F(1, 10), seed=0)
    with pytest.raises(PreconditionError):
        ExperimentConfig(n=3, trials=-1, delta=F(1, 10), seed=0)
    with pytest.raises(PreconditionError):
        ExperimentConfig(n=3, trials=1, delta=F(1), seed=0)


def test_experiment_zero_delta_rows_are_exact_zeros():
    records, csv_text, summary = stability_experiment(
        ExperimentConfig(n=3, trials=2, delta=F(0), seed=1)
    )
    assert all(r.distance_sq == 0 and r.product_excess == 0 for r in records)
    assert all(r.case_tag == "generic" for r in records)  # single-edge bases
    assert summary["zero_distance_trials"] == 2
    assert summary["min_excess"] == "0"


def test_experiment_runs_are_reproducible(tmp_path):
    out = tmp_path / "rows.csv"
    cfg = ExperimentConfig(n=3, trials=5, delta=F(1, 10), seed=3, out=str(out))
    records1, csv1, summary1 = stability_experiment(cfg)
    records2, csv2, summary2 = stability_experiment(cfg)
    assert csv1 == csv2
    assert summary1 == summary2
    assert records1 == records2
    assert out.read_text(encoding="utf-8") == csv1
    lines = csv1.strip().split("\n")
    assert lines[0] == EXPERIMENT_CSV_HEADER
    assert len(lines) == 6


def test_experiment_perturbed_trials_have_positive_gaps():
    _, _, summary = stability_experiment(ExperimentConfig(n=3, trials=5, delta=F(1, 10), seed=3))
    assert summary["zero_distance_trials"] == 0
    assert F(summary["min_excess"]) > 0
    assert summary["min_ratio"] > 0
    assert sum(summary["case_counts"].values()) == 5


# ---------------------------------------------------------------------------
# symmetric probe


def test_symmetric_probe_basics():
    rep = symmetric_probe(cube(2), F(1, 20), trials=5, seed=0)
    assert rep.trials == 5 and rep.n == 2
    assert rep.min_excess >= 0
    assert len(rep.records) == 5
    assert all(dist > 0 for _, dist, _ in rep.records)
    again = symmetric_probe(cube(2), F(1, 20), trials=5, seed=0)
    assert again == rep


def test_symmetric_probe_csv():
    rep = symmetric_probe(cube(2), F(1, 20), trials=3, seed=1)
    text = probe_csv(rep)
    lines = text.strip().split("\n")
    assert lines[0] == PROBE_CSV_HEADER
    assert len(lines) == 4
    assert all(line.count(",") == 4 for line in lines)


def test_symmetric_probe_preconditions():
    with pytest.raises(PreconditionError):
        symmetric_probe(cube(2), F(2, 3), trials=1, seed=0)
    with pytest.raises(PreconditionError):
        symmetric_probe(cube(2), F(-1, 20), trials=1, seed=0)
    tilted = from_vertices([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)])
    with pytest.raises(PreconditionError):
        symmetric_probe(tilted, F(1, 20), trials=1, seed=0)


def test_concordance_share():
    assert concordance_share([(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]) == 1.0
    assert concordance_share([(1.0, 2.0), (2.0, 1.0)]) == 0.0
    assert concordance_share([]) == 1.0
    assert concordance_share([(1.0, 5.0), (1.0, 7.0)]) == 1.0  # ties skipped
