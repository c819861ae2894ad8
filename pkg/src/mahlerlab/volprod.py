"""Volume products, section inequalities, and the truncated-cube bound.

Everything here is exact rational arithmetic.  The one float-valued helper,
the Euclidean-ball sanity check at the bottom, says so loudly in its name.

Conventions used throughout: bodies are polytopes with the origin interior;
"section" means a coordinate-hyperplane section; for unconditional bodies the
polar of a section equals the section of the polar, which is what makes the
per-coordinate products on the right-hand sides below well defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product
from typing import Optional, Sequence

from .errors import FalsificationError, PreconditionError
from .polytope import (
    Polytope,
    contains_origin_interior,
    coordinate_section,
    cube,
    from_halfspaces,
    from_vertices,
    gauge,
    is_unconditional,
    membership,
    polar,
    volume,
)
from .ratlin import dot, format_approx, format_exact, fr, vec


def _rat_json(x: Fraction) -> dict:
    return {"exact": format_exact(x), "approx": format_approx(x)}


# ---------------------------------------------------------------------------
# volume product


@dataclass(frozen=True)
class VolumeProductReport:
    body_id: str
    n: int
    vol_body: Fraction
    vol_polar: Fraction
    product: Fraction
    bound: Fraction
    excess: Fraction
    verdict: bool

    def to_json_dict(self) -> dict:
        return {
            "body_id": self.body_id,
            "n": self.n,
            "vol_body": _rat_json(self.vol_body),
            "vol_polar": _rat_json(self.vol_polar),
            "product": _rat_json(self.product),
            "bound": _rat_json(self.bound),
            "excess": _rat_json(self.excess),
            "verdict": self.verdict,
        }


VOLPROD_CSV_HEADER = "body_id,n,vol_body,vol_polar,product,product_float,bound,excess,excess_float,verdict"


def volume_product_csv_row(r: VolumeProductReport) -> str:
    return ",".join(
        [
            r.body_id,
            str(r.n),
            format_exact(r.vol_body),
            format_exact(r.vol_polar),
            format_exact(r.product),
            format_approx(r.product),
            format_exact(r.bound),
            format_exact(r.excess),
            format_approx(r.excess),
            str(r.verdict).lower(),
        ]
    )


@lru_cache(maxsize=None)
def mahler_bound(n: int) -> Fraction:
    """Volume product of the cube, computed from its honest volumes.

    Equals 4^n/n!; deliberately not hardcoded, so the bound itself exercises
    the volume machinery it is later compared against.
    """
    if n < 1:
        raise PreconditionError("dimension must be at least 1")
    c = cube(n)
    return volume(c) * volume(polar(c))


def volume_product(k: Polytope, body_id: str = "") -> VolumeProductReport:
    """Exact |K| * |K polar| with comparison against the cube's product."""
    vol_k = volume(k)
    vol_p = volume(polar(k))
    prod = vol_k * vol_p
    bound = mahler_bound(k.dim)
    return VolumeProductReport(
        body_id=body_id,
        n=k.dim,
        vol_body=vol_k,
        vol_polar=vol_p,
        product=prod,
        bound=bound,
        excess=prod - bound,
        verdict=prod >= bound,
    )


# ---------------------------------------------------------------------------
# coordinate sections


def _section_volume(k: Polytope, j: int) -> Fraction:
    # 0-dimensional sections ({0} of an interval) carry counting measure 1
    if k.dim == 1:
        return Fraction(1)
    return volume(coordinate_section(k, j))


def section_volumes(k: Polytope) -> list[Fraction]:
    return [_section_volume(k, j) for j in range(k.dim)]


def section_products(k: Polytope) -> list[Fraction]:
    """Volume product of each coordinate section of an unconditional body."""
    if not is_unconditional(k):
        raise PreconditionError("section products need an unconditional body")
    kp = polar(k)
    return [_section_volume(k, j) * _section_volume(kp, j) for j in range(k.dim)]


def section_membership_vector(k: Polytope) -> tuple[Fraction, ...]:
    """The vector with coordinates 2|K cap e_i-perp| / (n |K|).

    For unconditional K this vector always lies in the polar body; that
    membership is asserted exactly and its failure raises, since it would
    contradict a proven inequality rather than indicate bad input.
    """
    if not is_unconditional(k):
        raise PreconditionError("membership vector needs an unconditional body")
    if not contains_origin_interior(k):
        raise PreconditionError("membership vector needs the origin interior")
    n = k.dim
    vol_k = volume(k)
    m = vec([2 * _section_volume(k, j) / (n * vol_k) for j in range(n)])
    if membership(polar(k), m) == "outside":
        raise FalsificationError(
            f"section membership vector {tuple(map(format_exact, m))} fell outside the polar body"
        )
    return m


@dataclass(frozen=True)
class MeyerReport:
    body_id: str
    n: int
    product: Fraction
    section_sum: Fraction  # (4/n^2) * sum of section volume products
    per_section: tuple[Fraction, ...]
    verdict: bool
    is_equality: bool

    def to_json_dict(self) -> dict:
        return {
            "body_id": self.body_id,
            "n": self.n,
            "product": _rat_json(self.product),
            "section_sum": _rat_json(self.section_sum),
            "per_section": [_rat_json(x) for x in self.per_section],
            "verdict": self.verdict,
            "is_equality": self.is_equality,
        }


def meyer_inequality_check(k: Polytope, body_id: str = "") -> MeyerReport:
    """P(K) >= (4/n^2) * sum_j P(K cap e_j-perp), exactly.

    Proven for unconditional bodies, so a violation raises FalsificationError
    instead of returning a false verdict; equality is flagged when exact.
    """
    if not is_unconditional(k):
        raise PreconditionError("the section inequality is stated for unconditional bodies")
    n = k.dim
    lhs = volume(k) * volume(polar(k))
    per = tuple(section_products(k))
    rhs = Fraction(4, n * n) * sum(per)
    if lhs < rhs:
        raise FalsificationError(
            f"section inequality failed for {body_id or 'body'}: "
            f"{format_exact(lhs)} < {format_exact(rhs)}"
        )
    return MeyerReport(
        body_id=body_id,
        n=n,
        product=lhs,
        section_sum=rhs,
        per_section=per,
        verdict=True,
        is_equality=lhs == rhs,
    )


@dataclass(frozen=True)
class SectionBoundReport:
    """Near-minimal product hypothesis vs per-section conclusions.

    hypothesis_holds records whether P(K) <= (1+eps) * bound(n); the margins
    are conclusion slack per coordinate, bound(n-1)*(1+n*eps) - P(section_j).
    A failed hypothesis is an ordinary report state; a failed conclusion
    under a true hypothesis raises, because that would be a falsification.
    """

    body_id: str
    n: int
    eps: Fraction
    product: Fraction
    hypothesis_bound: Fraction
    hypothesis_holds: bool
    conclusion_bound: Fraction
    per_section: tuple[Fraction, ...]
    margins: tuple[Fraction, ...]
    conclusion_holds: bool

    def to_json_dict(self) -> dict:
        return {
            "body_id": self.body_id,
            "n": self.n,
            "eps": _rat_json(self.eps),
            "product": _rat_json(self.product),
            "hypothesis_bound": _rat_json(self.hypothesis_bound),
            "hypothesis_holds": self.hypothesis_holds,
            "conclusion_bound": _rat_json(self.conclusion_bound),
            "per_section": [_rat_json(x) for x in self.per_section],
            "margins": [_rat_json(x) for x in self.margins],
            "conclusion_holds": self.conclusion_holds,
        }


def near_minimal_sections_check(k: Polytope, eps, body_id: str = "") -> SectionBoundReport:
    """If P(K) is within (1+eps) of minimal, every section is within (1+n*eps)."""
    eps = fr(eps)
    if eps < 0:
        raise PreconditionError("eps must be nonnegative")
    if not is_unconditional(k):
        raise PreconditionError("the section bound is stated for unconditional bodies")
    if k.dim < 2:
        raise PreconditionError("sections need dimension at least 2")
    n = k.dim
    product = volume(k) * volume(polar(k))
    hyp_bound = (1 + eps) * mahler_bound(n)
    hyp = product <= hyp_bound
    con_bound = (1 + n * eps) * mahler_bound(n - 1)
    per = tuple(section_products(k))
    margins = tuple(con_bound - x for x in per)
    con = all(m >= 0 for m in margins)
    if hyp and not con:
        worst = min(range(n), key=lambda j: margins[j])
        raise FalsificationError(
            f"section bound failed for {body_id or 'body'} at coordinate {worst}: "
            f"P(section) = {format_exact(per[worst])} exceeds {format_exact(con_bound)}"
        )
    return SectionBoundReport(
        body_id=body_id,
        n=n,
        eps=eps,
        product=product,
        hypothesis_bound=hyp_bound,
        hypothesis_holds=hyp,
        conclusion_bound=con_bound,
        per_section=per,
        margins=margins,
        conclusion_holds=con,
    )


# ---------------------------------------------------------------------------
# truncated cubes and the corner bound


def truncated_cube(n: int, t) -> Polytope:
    """B-inf^n cut by sum |x_i| <= n*t, for (n-1)/n <= t <= 1.

    In that t range every coordinate section is the full subcube and the
    diagonal point (t, ..., t) sits on the boundary; both are asserted.
    """
    t = fr(t)
    if n < 2:
        raise PreconditionError("truncated cubes need dimension at least 2")
    if not Fraction(n - 1, n) <= t <= 1:
        raise PreconditionError(f"t = {format_exact(t)} outside [(n-1)/n, 1]")
    rows: list[tuple] = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        rows.append((vec(e), Fraction(1)))
        rows.append((vec(-x for x in e), Fraction(1)))
    for signs in iter_product((1, -1), repeat=n):
        rows.append((vec(signs), n * t))
    k = from_halfspaces(rows, n)
    sub = cube(n - 1)
    assert all(coordinate_section(k, j) == sub for j in range(n))
    assert gauge(k, vec([t] * n)) == 1
    return k


def corner_bound_factor(n: int, t) -> Fraction:
    """Exact factor 1 + 2^(-n-1) * (1 - 1/(n-1)!) * (1 - t), for n >= 3."""
    t = fr(t)
    if n < 3:
        raise PreconditionError("the corner bound is positive only from dimension 3 on")
    if not Fraction(n - 1, n) <= t <= 1:
        raise PreconditionError(f"t = {format_exact(t)} outside [(n-1)/n, 1]")
    c = 1 - Fraction(1, math.factorial(n - 1))
    return 1 + Fraction(1, 2 ** (n + 1)) * c * (1 - t)


def _corner_pieces(n: int, t: Fraction, q: tuple[Fraction, ...]) -> tuple[Polytope, Polytope]:
    """Build both corner pieces and assert their closed-form volumes."""
    pts = [vec(map(Fraction, bits)) for bits in iter_product((0, 1), repeat=n) if sum(bits) < n]
    pts.append(vec([t] * n))
    body_piece = from_vertices(pts)
    want_p = 1 - (1 - t) / math.factorial(n - 1)
    got_p = volume(body_piece)
    if got_p != want_p:
        raise FalsificationError(
            f"corner piece volume {format_exact(got_p)} != closed form {format_exact(want_p)}"
        )
    qts = [vec([Fraction(0)] * n)]
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        qts.append(vec(e))
    qts.append(vec(q))
    polar_piece = from_vertices(qts)
    want_q = Fraction(1, math.factorial(n)) / t
    got_q = volume(polar_piece)
    if got_q != want_q:
        raise FalsificationError(
            f"polar corner piece volume {format_exact(got_q)} != closed form {format_exact(want_q)}"
        )
    return body_piece, polar_piece


@dataclass(frozen=True)
class CornerBoundInstance:
    """One truncated-cube corner configuration.

    boundary_point is the diagonal point (t, ..., t) on the body's boundary;
    polar_point is a positive vector with coordinate sum 1/t, so the two have
    inner product exactly 1.  The two pieces live in the positive orthant and
    their volumes were asserted against the closed forms at construction.
    """

    n: int
    t: Fraction
    boundary_point: tuple[Fraction, ...]
    polar_point: tuple[Fraction, ...]
    body_piece: Polytope
    polar_piece: Polytope
    corner_constant: Fraction  # 1 - 1/(n-1)!


def corner_bound_instance(n: int, t, q: Optional[Sequence] = None) -> CornerBoundInstance:
    t = fr(t)
    if n < 3:
        raise PreconditionError("corner instances need dimension at least 3")
    if not Fraction(n - 1, n) <= t <= 1:
        raise PreconditionError(f"t = {format_exact(t)} outside [(n-1)/n, 1]")
    if q is None:
        qv = vec([Fraction(1, n) / t] * n)
    else:
        qv = vec([fr(x) for x in q])
        if len(qv) != n:
            raise PreconditionError("q must have one coordinate per dimension")
        if any(x <= 0 for x in qv):
            raise PreconditionError("q must lie in the open positive orthant")
        if sum(qv) != Fraction(1) / t:
            raise PreconditionError(
                f"q coordinates must sum to 1/t = {format_exact(Fraction(1) / t)}"
            )
    p = vec([t] * n)
    assert dot(p, qv) == 1
    assert gauge(truncated_cube(n, t), p) == 1
    body_piece, polar_piece = _corner_pieces(n, t, qv)
    return CornerBoundInstance(
        n=n,
        t=t,
        boundary_point=p,
        polar_point=qv,
        body_piece=body_piece,
        polar_piece=polar_piece,
        corner_constant=1 - Fraction(1, math.factorial(n - 1)),
    )


def corner_pieces(inst: CornerBoundInstance) -> tuple[Polytope, Polytope]:
    """The two positive-orthant pieces; volume-checked when the instance was built."""
    return inst.body_piece, inst.polar_piece


@dataclass(frozen=True)
class TruncatedCubeReport:
    n: int
    t: Fraction
    product: Fraction
    factor: Fraction
    factor_bound: Fraction  # factor * mahler_bound(n)
    quadrant_bound: Fraction  # 4^n * |P| * |Q|
    slack_factor: Fraction
    slack_quadrant: Fraction
    verdict: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "t": _rat_json(self.t),
            "product": _rat_json(self.product),
            "factor": _rat_json(self.factor),
            "factor_bound": _rat_json(self.factor_bound),
            "quadrant_bound": _rat_json(self.quadrant_bound),
            "slack_factor": _rat_json(self.slack_factor),
            "slack_quadrant": _rat_json(self.slack_quadrant),
            "verdict": self.verdict,
        }


def verify_truncated_cube_bound(n: int, t, q: Optional[Sequence] = None) -> TruncatedCubeReport:
    """Check |K||K polar| against both corner-derived lower bounds, exactly.

    The quadrant bound 4^n |P| |Q| uses the symmetric case where all sign
    quadrants contribute the same piece; the factor bound multiplies the
    cube's product by corner_bound_factor.  Either failing raises, since both
    are proven inequalities for this family.
    """
    inst = corner_bound_instance(n, t, q)
    k = truncated_cube(n, inst.t)
    rep = volume_product(k, body_id=f"truncated_cube({n}, {format_exact(inst.t)})")
    factor = corner_bound_factor(n, inst.t)
    factor_bound = factor * mahler_bound(n)
    quadrant_bound = 4**n * volume(inst.body_piece) * volume(inst.polar_piece)
    ok = rep.product >= factor_bound and rep.product >= quadrant_bound
    if not ok:
        raise FalsificationError(
            f"truncated cube bound failed at n = {n}, t = {format_exact(inst.t)}: "
            f"product {format_exact(rep.product)}, factor bound {format_exact(factor_bound)}, "
            f"quadrant bound {format_exact(quadrant_bound)}"
        )
    return TruncatedCubeReport(
        n=n,
        t=inst.t,
        product=rep.product,
        factor=factor,
        factor_bound=factor_bound,
        quadrant_bound=quadrant_bound,
        slack_factor=rep.product - factor_bound,
        slack_quadrant=rep.product - quadrant_bound,
        verdict=True,
    )


# ---------------------------------------------------------------------------
# constant algebra and the float sanity bound


def combine_stability_constants(alpha, beta, gamma, n: int) -> tuple[Fraction, Fraction]:
    """eps = min(gamma/3, beta*gamma/(12n), 1/(2n)) and tau = min(alpha, n)."""
    a, b, g = fr(alpha), fr(beta), fr(gamma)
    if a <= 0 or b <= 0 or g <= 0 or n <= 0:
        raise PreconditionError("stability constants must be positive")
    eps = min(g / 3, b * g / (12 * n), Fraction(1, 2 * n))
    tau = min(a, Fraction(n))
    return eps, tau


def euclidean_ball_product_float(n: int) -> float:
    """Float volume product of the Euclidean ball, kappa_n squared."""
    kappa = math.pi ** (n / 2) / math.gamma(n / 2 + 1)
    return kappa * kappa


def santalo_upper_check(k: Polytope, body_id: str = "") -> tuple[float, float, bool]:
    """Float-only sanity bound: P(K) must not exceed the ball's product.

    Returns (product_float, ball_float, ok) with a 1e-9 relative slack; this
    is the one deliberately non-exact check in the module.
    """
    prod = float(volume(k) * volume(polar(k)))
    ball = euclidean_ball_product_float(k.dim)
    return prod, ball, prod <= ball * (1 + 1e-9)
