"""Reconstruction of near-Hanner bodies and randomized stability experiments.

The pipeline mirrors how Hanner balls are determined by their coordinate
sections: recurse down to two dimensions, read off one bit per coordinate
pair (is e_i + e_j inside?), and glue the per-section graphs into one graph
on all coordinates.  For an exact Hanner ball this recovers its generator
graph on the nose; for perturbed bodies it yields the candidate the distance
is measured against.

Everything random is driven by explicit integer seeds and exact rational
scales, so experiment outputs are reproducible byte for byte.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    AmbiguousSectionError,
    ConsistencyError,
    FalsificationError,
    PreconditionError,
    ResourceError,
)
from .graphs import (
    Graph,
    complement,
    complete_graph,
    empty_graph,
    enumerate_p4_free_labeled,
    from_edges,
    induced_subgraph,
    is_p4_free,
    maximal_independent_sets,
    polytope_from_graph,
)
from .polytope import (
    Polytope,
    coordinate_section,
    cross_polytope,
    cube,
    from_halfspaces,
    from_vertices,
    gauge,
    hausdorff_distance_sq,
    interval,
    is_unconditional,
    normalize_unconditional,
    polar,
    volume,
)
from .ratlin import format_approx, format_exact, fr, unit_vec, vadd, vec
from .volprod import corner_bound_factor, mahler_bound, volume_product

CASE_TAGS = ("generic", "caseI-cube", "caseI-cross", "caseII-path")


@dataclass(frozen=True)
class StabilityRecord:
    body_id: str
    nearest_graph: Graph
    candidate: Polytope
    distance_sq: Fraction
    product_excess: Fraction
    case_tag: str
    seed: int


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    trials: int
    delta: Fraction
    seed: int
    out: Optional[str] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PreconditionError("dimension must be at least 1")
        if self.trials < 0:
            raise PreconditionError("trial count must be nonnegative")
        if not 0 <= self.delta < 1:
            raise PreconditionError("delta must satisfy 0 <= delta < 1")


# ---------------------------------------------------------------------------
# graph gluing


def glue_graphs(sections: Sequence[Graph]) -> Graph:
    """Union of n section graphs, section j living on coordinates != j.

    Vertex k of section j stands for original coordinate k if k < j, else
    k + 1.  Every pair (i, k) is seen by all sections j not in {i, k}; any
    disagreement between witnesses is an input inconsistency.  The result
    induces each section back (checked), which is the gluing's whole point.
    """
    n = len(sections)
    if n < 3:
        raise PreconditionError("gluing needs at least three sections")
    for j, g in enumerate(sections):
        if g.n != n - 1:
            raise PreconditionError(f"section {j} has {g.n} vertices, expected {n - 1}")
    es = []
    for i in range(n):
        for k in range(i + 1, n):
            votes = []
            for j in range(n):
                if j == i or j == k:
                    continue
                li = i if i < j else i - 1
                lk = k if k < j else k - 1
                votes.append((j, sections[j].adj[li] >> lk & 1))
            first_j, first = votes[0]
            for j, v in votes[1:]:
                if v != first:
                    raise ConsistencyError(
                        f"sections {first_j} and {j} disagree on pair ({i}, {k})"
                    )
            if first:
                es.append((i, k))
    glued = from_edges(n, es)
    for j, g in enumerate(sections):
        keep = [v for v in range(n) if v != j]
        assert induced_subgraph(glued, keep) == g
    return glued


# ---------------------------------------------------------------------------
# section-graph extraction


def _edge_bit(k: Polytope, i: int, j: int, band: Fraction) -> bool:
    m = gauge(k, vadd(unit_vec(k.dim, i), unit_vec(k.dim, j))) - 1
    if band == 0:
        return m > 0
    # exact boundary is the Hanner signature, never ambiguous
    if m == 0 or m < -band / 2:
        return False
    if m > band / 2:
        return True
    raise AmbiguousSectionError(
        f"gauge margin {format_exact(m)} at pair ({i}, {j}) is inside the +-{format_exact(band)}/2 band"
    )


def _graph_of(k: Polytope, band: Fraction) -> Graph:
    # sections of a normalized unconditional body stay normalized, so the
    # recursion never rescales
    n = k.dim
    if n == 1:
        return empty_graph(1)
    if n == 2:
        return from_edges(2, [(0, 1)] if _edge_bit(k, 0, 1, band) else [])
    return glue_graphs([_graph_of(coordinate_section(k, j), band) for j in range(n)])


# ---------------------------------------------------------------------------
# diagonal refinement (glued graph empty: compare against the cube)


def diagonal_boundary_point(k: Polytope) -> Fraction:
    """The exact t with (t, ..., t) on the boundary of a normalized body.

    When every coordinate section is the full subcube, t >= (n-1)/n is a
    theorem and is asserted; if that hypothesis fails the value is still
    returned, with a warning instead of an assertion.
    """
    n = k.dim
    if n < 2:
        raise PreconditionError("diagonal point needs dimension at least 2")
    if not is_unconditional(k):
        raise PreconditionError("diagonal point is defined for unconditional bodies")
    for i in range(n):
        if gauge(k, unit_vec(n, i)) != 1:
            raise PreconditionError("body is not normalized")
    t = 1 / gauge(k, vec([1] * n))
    sub = cube(n - 1)
    if all(coordinate_section(k, j) == sub for j in range(n)):
        if t < Fraction(n - 1, n):
            raise FalsificationError(
                f"diagonal point t = {format_exact(t)} below (n-1)/n with full cube sections"
            )
    else:
        warnings.warn("coordinate sections are not full subcubes; t lower bound not asserted", stacklevel=2)
    return t


def diagonal_truncation_check(k: Polytope) -> tuple[Fraction, Fraction, Fraction]:
    """Lower-bound check for a normalized body whose sections nearly fill the cube.

    Inflates the body just enough that every coordinate section contains the
    full subcube, caps it by the cube, and verifies the inflated body's
    volume product against the truncated-cube factor at its diagonal point.
    Returns (t, product, bound); a product below the bound is a falsification.
    """
    n = k.dim
    if n < 3:
        raise PreconditionError("the truncation bound needs dimension at least 3")
    corner = vec([1] * (n - 1))
    blow = max(gauge(coordinate_section(k, j), corner) for j in range(n))
    rows = [(a, b * blow) for a, b in k.facets]
    for i in range(n):
        rows.append((unit_vec(n, i), Fraction(1)))
        rows.append((vec(-x for x in unit_vec(n, i)), Fraction(1)))
    capped = from_halfspaces(rows, n)
    sub = cube(n - 1)
    for j in range(n):
        if coordinate_section(capped, j) != sub:
            raise ConsistencyError(f"inflated body's section {j} is not the full subcube")
    t = diagonal_boundary_point(capped)
    product = volume(capped) * volume(polar(capped))
    bound = corner_bound_factor(n, t) * mahler_bound(n)
    if product < bound:
        raise FalsificationError(
            f"diagonal truncation bound failed: product {format_exact(product)} "
            f"< bound {format_exact(bound)} at t = {format_exact(t)}"
        )
    return t, product, bound


# ---------------------------------------------------------------------------
# reconstruction


def reconstruct_hanner(
    k: Polytope, body_id: str = "", seed: int = 0, band: Fraction = Fraction(0)
) -> StabilityRecord:
    """Normalize, recover the glued section graph, and measure the distance.

    Case tags: an empty glued graph means the candidate is the cube and a
    complete one the cross polytope (both rechecked through the diagonal
    truncation bound); a 4-path on four coordinates is its own tag since its
    ball is the one non-Hanner candidate the gluing can produce there; all
    other graphs go through the plain independent-set ball.

    Two uniqueness facts are enforced exactly: for a Hanner candidate,
    distance zero and excess zero happen together; for a non-Hanner glued
    graph the excess must be strictly positive.
    """
    if not is_unconditional(k):
        raise PreconditionError("reconstruction is defined for unconditional bodies")
    kn = normalize_unconditional(k)
    n = kn.dim
    if n == 1:
        return StabilityRecord(body_id, empty_graph(1), interval(1), Fraction(0), Fraction(0), "caseI-cube", seed)
    g = _graph_of(kn, fr(band))
    if g == empty_graph(n):
        tag, candidate = "caseI-cube", cube(n)
        if n >= 3:
            diagonal_truncation_check(kn)
    elif g == complete_graph(n):
        tag, candidate = "caseI-cross", cross_polytope(n)
        if n >= 3:
            diagonal_truncation_check(polar(kn))
    elif n == 4 and not is_p4_free(g):
        tag, candidate = "caseII-path", polytope_from_graph(g)
    else:
        tag, candidate = "generic", polytope_from_graph(g)
    dist = hausdorff_distance_sq(kn, candidate)
    excess = volume_product(kn, body_id=body_id).excess
    if excess < 0:
        raise FalsificationError(
            f"unconditional body {body_id or ''} has product excess {format_exact(excess)} < 0"
        )
    if is_p4_free(g):
        if (dist == 0) != (excess == 0):
            raise FalsificationError(
                f"uniqueness violated for {body_id or 'body'}: distance_sq {format_exact(dist)}, "
                f"excess {format_exact(excess)}"
            )
    elif excess == 0:
        raise FalsificationError(
            f"{body_id or 'body'} attains the minimal product but its glued graph is not P4-free"
        )
    return StabilityRecord(body_id, g, candidate, dist, excess, tag, seed)


def nearest_hanner_bruteforce(k: Polytope) -> tuple[Graph, Fraction]:
    """Certified nearest standard Hanner ball by exhaustive search (n <= 4)."""
    if k.dim > 4:
        raise ResourceError("brute-force nearest Hanner is limited to n <= 4")
    kn = normalize_unconditional(k)
    best: tuple[Graph, Fraction] | None = None
    for g in enumerate_p4_free_labeled(kn.dim):
        d = hausdorff_distance_sq(kn, polytope_from_graph(g))
        if best is None or d < best[1]:
            best = (g, d)
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# perturbations


def perturb_unconditional(h: Polytope, delta, seed: int) -> Polytope:
    """Scale each positive-orthant vertex representative by a random factor.

    Factors are exact rationals in [1 - delta, 1], drawn per representative
    from a generator seeded with `seed`; the scaled representatives are
    replicated over all sign patterns and the hull re-normalized, so the
    result is unconditional by construction and in standard position.
    """
    delta = fr(delta)
    if not 0 <= delta < 1:
        raise PreconditionError("delta must satisfy 0 <= delta < 1")
    if not is_unconditional(h):
        raise PreconditionError("perturbation is defined for unconditional bodies")
    hn = normalize_unconditional(h)
    reps = sorted({tuple(abs(x) for x in v) for v in hn.vertices})
    rng = random.Random(seed)
    pts = []
    for r in reps:
        factor = 1 - delta * Fraction(rng.randrange(2**16 + 1), 2**16)
        support = [i for i, x in enumerate(r) if x]
        for signs in range(1 << len(support)):
            v = [x * factor for x in r]
            for bpos, i in enumerate(support):
                if signs >> bpos & 1:
                    v[i] = -v[i]
            pts.append(vec(v))
    return normalize_unconditional(from_vertices(pts))


def random_unconditional_polytope(n: int, seed: int) -> Polytope:
    """Seeded unconditional body: the cross polytope plus random sign orbits."""
    if n < 1:
        raise PreconditionError("dimension must be at least 1")
    rng = random.Random(seed)
    pts = []
    for i in range(n):
        e = unit_vec(n, i)
        pts.append(e)
        pts.append(vec(-x for x in e))
    for _ in range(rng.randint(1, 3)):
        r = [Fraction(rng.randint(12, 48), 48) for _ in range(n)]
        support = [i for i, x in enumerate(r) if x]
        for signs in range(1 << len(support)):
            v = list(r)
            for bpos, i in enumerate(support):
                if signs >> bpos & 1:
                    v[i] = -v[i]
            pts.append(vec(v))
    return from_vertices(pts)


# ---------------------------------------------------------------------------
# experiments


def _mis_pairwise_disjoint(g: Graph) -> bool:
    mis = maximal_independent_sets(g)
    return all(a & b == 0 for ai, a in enumerate(mis) for b in mis[ai + 1 :])


def trial_base_graphs(n: int) -> list[Graph]:
    """P4-free graphs whose balls respond to representative rescaling.

    When the maximal independent sets are pairwise disjoint, rescaling the
    positive-orthant representatives is a diagonal map and re-normalization
    undoes it exactly, so those bases would only ever produce zero rows.
    They are excluded unless nothing else exists (n <= 2).
    """
    gs = enumerate_p4_free_labeled(n)
    rich = [g for g in gs if not _mis_pairwise_disjoint(g)]
    return rich or gs


def exact_median(values: Sequence[Fraction]) -> Fraction:
    if not values:
        raise PreconditionError("median of an empty sequence")
    s = sorted(values)
    m = len(s) // 2
    if len(s) % 2:
        return s[m]
    return (s[m - 1] + s[m]) / 2


EXPERIMENT_CSV_HEADER = "trial,n,delta,distance_sq,distance_float,excess,excess_float,case_tag,seed"


def stability_experiment(cfg: ExperimentConfig) -> tuple[list[StabilityRecord], str, dict]:
    """Run seeded perturbation trials; returns (records, csv_text, summary).

    Each trial perturbs a random non-degenerate Hanner base and reconstructs;
    rows are exact, the summary carries the minimum and median excess plus
    the empirical excess/(bound * distance) floor.  Writes the CSV to
    cfg.out when set.
    """
    bases = trial_base_graphs(cfg.n)
    bound = mahler_bound(cfg.n)
    records: list[StabilityRecord] = []
    rows = [EXPERIMENT_CSV_HEADER]
    case_counts = {tag: 0 for tag in CASE_TAGS}
    min_ratio: Optional[float] = None
    for i in range(cfg.trials):
        tseed = cfg.seed * 1_000_003 + i
        trng = random.Random(tseed)
        base = bases[trng.randrange(len(bases))]
        body = perturb_unconditional(polytope_from_graph(base), cfg.delta, trng.randrange(2**31))
        rec = reconstruct_hanner(body, body_id=f"trial-{i}", seed=tseed)
        records.append(rec)
        case_counts[rec.case_tag] += 1
        dist_f = math.sqrt(float(rec.distance_sq))
        if rec.distance_sq > 0:
            ratio = float(rec.product_excess) / (float(bound) * dist_f)
            min_ratio = ratio if min_ratio is None else min(min_ratio, ratio)
        rows.append(
            ",".join(
                [
                    str(i),
                    str(cfg.n),
                    format_exact(cfg.delta),
                    format_exact(rec.distance_sq),
                    repr(dist_f),
                    format_exact(rec.product_excess),
                    repr(float(rec.product_excess)),
                    rec.case_tag,
                    str(tseed),
                ]
            )
        )
    csv_text = "\n".join(rows) + "\n"
    excesses = [r.product_excess for r in records]
    summary = {
        "n": cfg.n,
        "trials": cfg.trials,
        "delta": format_exact(cfg.delta),
        "seed": cfg.seed,
        "min_excess": format_exact(min(excesses)) if excesses else None,
        "median_excess": format_exact(exact_median(excesses)) if excesses else None,
        "median_excess_approx": format_approx(exact_median(excesses)) if excesses else None,
        "min_ratio": min_ratio,
        "zero_distance_trials": sum(1 for r in records if r.distance_sq == 0),
        "case_counts": case_counts,
    }
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    return records, csv_text, summary


# ---------------------------------------------------------------------------
# symmetric (non-unconditional) probe


@dataclass(frozen=True)
class SymmetricProbeReport:
    n: int
    delta: Fraction
    trials: int
    seed: int
    min_excess: Fraction
    records: tuple[tuple[int, Fraction, Fraction], ...]  # (trial, distance_sq, excess)


PROBE_CSV_HEADER = "trial,distance_sq,distance_float,excess,excess_float"


def symmetric_probe(h: Polytope, delta, trials: int, seed: int) -> SymmetricProbeReport:
    """Move antipodal vertex pairs together by exact random jitter.

    The result is centrally symmetric but generally not unconditional, which
    probes minimality outside the proven regime: any negative excess is a
    falsification event and raises immediately.
    """
    delta = fr(delta)
    if not 0 <= delta <= Fraction(1, 2):
        raise PreconditionError("probe delta must satisfy 0 <= delta <= 1/2")
    if trials < 0:
        raise PreconditionError("trial count must be nonnegative")
    if not is_unconditional(h):
        raise PreconditionError("the probe perturbs an unconditional base body")
    hn = normalize_unconditional(h)
    reps = [v for v in hn.vertices if next(x for x in v if x) > 0]
    records = []
    min_excess: Optional[Fraction] = None
    for t in range(trials):
        rng = random.Random(seed * 1_000_003 + t)
        pts = []
        for v in reps:
            w = vec(
                x + delta * Fraction(rng.randint(-(2**12), 2**12), 2**13) for x in v
            )
            pts.append(w)
            pts.append(vec(-x for x in w))
        body = from_vertices(pts)
        excess = volume_product(body, body_id=f"probe-{t}").excess
        if excess < 0:
            raise FalsificationError(
                f"symmetric probe trial {t} produced excess {format_exact(excess)} < 0"
            )
        dist = hausdorff_distance_sq(body, hn)
        records.append((t, dist, excess))
        min_excess = excess if min_excess is None else min(min_excess, excess)
    return SymmetricProbeReport(
        n=hn.dim,
        delta=delta,
        trials=trials,
        seed=seed,
        min_excess=min_excess if min_excess is not None else Fraction(0),
        records=tuple(records),
    )


def probe_csv(report: SymmetricProbeReport) -> str:
    rows = [PROBE_CSV_HEADER]
    for t, dist, excess in report.records:
        rows.append(
            ",".join(
                [
                    str(t),
                    format_exact(dist),
                    repr(math.sqrt(float(dist))),
                    format_exact(excess),
                    repr(float(excess)),
                ]
            )
        )
    return "\n".join(rows) + "\n"


def concordance_share(pairs: Sequence[tuple[float, float]]) -> float:
    """Share of pair comparisons where distance and excess move together."""
    agree = total = 0
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            dd = pairs[a][0] - pairs[b][0]
            de = pairs[a][1] - pairs[b][1]
            if dd == 0:
                continue
            total += 1
            if dd * de >= 0:
                agree += 1
    return agree / total if total else 1.0
