"""Exact convex polytopes with both vertex and facet descriptions.

A Polytope is a frozen pair of representations: the lexicographically sorted
vertex tuple and the canonically scaled facet tuple.  Both are exact, so two
polytopes are equal iff they are the same set of points, and instances can be
hashed and cached.  All constructors go through the double description
conversion in :mod:`.dd`, except for operations whose output representation
is known in closed form (polar, diagonal images, direct sums, products),
which build the result directly.

Facet canonical form:  a facet ``<a, x> <= b`` is scaled so that the offset
is +1, -1 or 0; in the 0 case the normal is reduced to a primitive integer
vector (only positive scalings preserve an inequality, so the sign of the
normal is kept as is).  For a bounded polytope with the origin interior every
offset canonicalizes to +1, which is what the polar swap requires.

Volume uses a pulling triangulation: cone from the first vertex over the
recursively triangulated facets that miss it.  Faces are recovered as
intersections of facet vertex sets, filtered by affine rank, and shared
across the recursion through a memo, so the triangulation stays near linear
in the number of faces actually touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import dd
from .errors import (
    ConsistencyError,
    DimensionError,
    FormatError,
    InvalidSumError,
    PolarityDomainError,
    PreconditionError,
)
from .ratlin import (
    Vec,
    affine_rank,
    common_denominator,
    determinant,
    dot,
    fr,
    parse_fraction,
    primitive_int_vec,
    rank,
    solve_linear,
    unit_vec,
    vec,
    vsub,
    zero_vec,
)

Facet = tuple[Vec, Fraction]


def canon_facet(normal: Vec, offset: Fraction) -> Facet:
    """Scale ``<normal, x> <= offset`` to offset in {+1, -1, 0}."""
    if all(x == 0 for x in normal):
        raise PreconditionError("facet normal must be nonzero")
    if offset > 0:
        return tuple(x / offset for x in normal), Fraction(1)
    if offset < 0:
        return tuple(x / -offset for x in normal), Fraction(-1)
    den = common_denominator(normal)
    prim = primitive_int_vec(tuple(int(x * den) for x in normal))
    return tuple(Fraction(x) for x in prim), Fraction(0)


@dataclass(frozen=True)
class Polytope:
    """Bounded full-dimensional polytope, exact V- and H-representation."""

    dim: int
    vertices: tuple[Vec, ...]
    facets: tuple[Facet, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DimensionError("dimension must be positive")
        if len(self.vertices) < self.dim + 1 or not self.facets:
            raise ConsistencyError("polytope needs at least dim+1 vertices and one facet")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"Polytope(dim={self.dim}, vertices={self.n_vertices}, facets={self.n_facets})"


def _make(dim: int, vertices: Iterable[Vec], facets: Iterable[Facet]) -> Polytope:
    vs = tuple(sorted(set(vertices)))
    fs = tuple(sorted(set(canon_facet(a, b) for a, b in facets)))
    return Polytope(dim, vs, fs)


def from_vertices(points: Sequence[Sequence[Fraction | int]]) -> Polytope:
    """Convex hull: keeps only the extreme points, derives all facets."""
    pts = [vec(p) for p in points]
    if not pts:
        raise DimensionError("empty point set")
    dim = len(pts[0])
    facets, flags = dd.hull_facets(pts, dim)
    verts = [p for p, f in zip(pts, flags) if f]
    return _make(dim, verts, facets)


def from_halfspaces(ineqs: Sequence[tuple[Sequence[Fraction | int], Fraction | int]], dim: int) -> Polytope:
    """Bounded intersection of halfspaces ``<a, x> <= b``; drops redundant ones."""
    rows = [(vec(a), fr(b)) for a, b in ineqs]
    verts, flags, _ = dd.polyhedron_vertices(rows, dim)
    facets = [row for row, f in zip(rows, flags) if f]
    return _make(dim, verts, facets)


def facet_enumeration(points: Sequence[Sequence[Fraction | int]]) -> tuple[Facet, ...]:
    """Irredundant facet description of conv(points), canonically scaled."""
    return from_vertices(points).facets


def vertex_enumeration(
    ineqs: Sequence[tuple[Sequence[Fraction | int], Fraction | int]], dim: int
) -> tuple[Vec, ...]:
    """Extreme points of a bounded halfspace intersection, lex sorted."""
    return from_halfspaces(ineqs, dim).vertices


def cube(n: int) -> Polytope:
    """[-1, 1]^n, built directly."""
    verts = []
    for m in range(1 << n):
        verts.append(tuple(Fraction(1 if m >> i & 1 else -1) for i in range(n)))
    facets = []
    for i in range(n):
        e = unit_vec(n, i)
        facets.append((e, Fraction(1)))
        facets.append((tuple(-x for x in e), Fraction(1)))
    return _make(n, verts, facets)


def cross_polytope(n: int) -> Polytope:
    """conv(+-e_i), the unit l1 ball, built directly."""
    verts = []
    for i in range(n):
        e = unit_vec(n, i)
        verts.append(e)
        verts.append(tuple(-x for x in e))
    facets = []
    for m in range(1 << n):
        s = tuple(Fraction(1 if m >> i & 1 else -1) for i in range(n))
        facets.append((s, Fraction(1)))
    return _make(n, verts, facets)


def interval(radius: Fraction | int = 1) -> Polytope:
    r = fr(radius)
    if r <= 0:
        raise PreconditionError("interval radius must be positive")
    return _make(1, [(-r,), (r,)], [((Fraction(1),), r), ((Fraction(-1),), r)])


# ---------------------------------------------------------------------------
# pointwise queries


def membership(p: Polytope, x: Sequence[Fraction | int]) -> str:
    """'interior', 'boundary' or 'outside', decided exactly."""
    v = vec(x)
    if len(v) != p.dim:
        raise DimensionError(f"point has dimension {len(v)}, polytope {p.dim}")
    on_boundary = False
    for a, b in p.facets:
        s = dot(a, v)
        if s > b:
            return "outside"
        if s == b:
            on_boundary = True
    return "boundary" if on_boundary else "interior"


def contains_origin_interior(p: Polytope) -> bool:
    return all(b == 1 for _, b in p.facets)


def gauge(p: Polytope, x: Sequence[Fraction | int]) -> Fraction:
    """Minkowski gauge: least t >= 0 with x in t*p.  Needs 0 interior."""
    if not contains_origin_interior(p):
        raise PreconditionError("gauge needs the origin in the interior")
    v = vec(x)
    if len(v) != p.dim:
        raise DimensionError(f"point has dimension {len(v)}, polytope {p.dim}")
    g = max(dot(a, v) for a, _ in p.facets)
    return g if g > 0 else Fraction(0)


def polar(p: Polytope) -> Polytope:
    """Polar dual.  Exact and free: vertices and facet normals swap roles."""
    if not contains_origin_interior(p):
        raise PolarityDomainError("polar needs the origin in the interior")
    verts = [a for a, _ in p.facets]
    facets = [(v, Fraction(1)) for v in p.vertices]
    return _make(p.dim, verts, facets)


def is_unconditional(p: Polytope) -> bool:
    """True when the vertex set is closed under coordinate sign flips."""
    vset = set(p.vertices)
    for v in p.vertices:
        for i in range(p.dim):
            w = v[:i] + (-v[i],) + v[i + 1 :]
            if w not in vset:
                return False
    return True


def diagonal_image(p: Polytope, scales: Sequence[Fraction | int]) -> Polytope:
    """Image under diag(scales); scales must be nonzero."""
    s = vec(scales)
    if len(s) != p.dim:
        raise DimensionError("one scale per coordinate")
    if any(x == 0 for x in s):
        raise PreconditionError("diagonal scales must be nonzero")
    verts = [tuple(si * vi for si, vi in zip(s, v)) for v in p.vertices]
    facets = [(tuple(ai / si for si, ai in zip(s, a)), b) for a, b in p.facets]
    return _make(p.dim, verts, facets)


def scale(p: Polytope, factor: Fraction | int) -> Polytope:
    return diagonal_image(p, [fr(factor)] * p.dim)


def normalize_unconditional(p: Polytope) -> Polytope:
    """Diagonal rescale putting every +-e_i on the boundary.

    For an unconditional body this lands it between the cross polytope and
    the cube, which is the reference position used by the reconstruction and
    stability code.
    """
    if not is_unconditional(p):
        raise PreconditionError("normalization is defined for unconditional polytopes")
    gs = [gauge(p, unit_vec(p.dim, i)) for i in range(p.dim)]
    return diagonal_image(p, gs)


# ---------------------------------------------------------------------------
# sums and products


def _embed(v: Vec, before: int, after: int) -> Vec:
    return zero_vec(before) + v + zero_vec(after)


def _check_sum_operands(p: Polytope, q: Polytope, what: str) -> None:
    if not (contains_origin_interior(p) and contains_origin_interior(q)):
        raise InvalidSumError(f"{what} needs the origin interior to both summands")


def linf_sum(p: Polytope, q: Polytope) -> Polytope:
    """Cartesian product p x q on block coordinates."""
    _check_sum_operands(p, q, "linf_sum")
    dim = p.dim + q.dim
    verts = [v + w for v in p.vertices for w in q.vertices]
    facets = [(_embed(a, 0, q.dim), b) for a, b in p.facets]
    facets += [(_embed(a, p.dim, 0), b) for a, b in q.facets]
    return _make(dim, verts, facets)


def l1_sum(p: Polytope, q: Polytope) -> Polytope:
    """conv(p x {0} union {0} x q) on block coordinates."""
    _check_sum_operands(p, q, "l1_sum")
    dim = p.dim + q.dim
    verts = [_embed(v, 0, q.dim) for v in p.vertices]
    verts += [_embed(w, p.dim, 0) for w in q.vertices]
    facets = [(a + c, Fraction(1)) for a, _ in p.facets for c, _ in q.facets]
    return _make(dim, verts, facets)


def coordinate_section(p: Polytope, j: int) -> Polytope:
    """Slice by the hyperplane x_j = 0, re-indexed to the remaining coordinates."""
    if not 0 <= j < p.dim:
        raise DimensionError(f"coordinate {j} out of range for dimension {p.dim}")
    if p.dim < 2:
        raise DimensionError("sections need ambient dimension at least 2")
    keep = [i for i in range(p.dim) if i != j]
    rows: list[tuple[Vec, Fraction]] = []
    for a, b in p.facets:
        a2 = tuple(a[i] for i in keep)
        if all(x == 0 for x in a2):
            if b < 0:
                raise DimensionError("section is empty")
            continue
        rows.append((a2, b))
    return from_halfspaces(rows, p.dim - 1)


def coordinate_projection(p: Polytope, j: int) -> Polytope:
    """Orthogonal projection onto the hyperplane x_j = 0, re-indexed likewise."""
    if not 0 <= j < p.dim:
        raise DimensionError(f"coordinate {j} out of range for dimension {p.dim}")
    if p.dim < 2:
        raise DimensionError("projections need ambient dimension at least 2")
    keep = [i for i in range(p.dim) if i != j]
    pts = {tuple(v[i] for i in keep) for v in p.vertices}
    return from_vertices(sorted(pts))


def permute_coordinates(p: Polytope, perm: Sequence[int]) -> Polytope:
    """Relabel coordinates: output coordinate i carries input coordinate perm[i]."""
    pi = list(perm)
    if sorted(pi) != list(range(p.dim)):
        raise DimensionError("perm must be a permutation of 0..dim-1")
    verts = [tuple(v[k] for k in pi) for v in p.vertices]
    facets = [(tuple(a[k] for k in pi), b) for a, b in p.facets]
    return _make(p.dim, verts, facets)


# ---------------------------------------------------------------------------
# volume


def _facet_vertex_sets(p: Polytope) -> list[frozenset[int]]:
    out = []
    for a, b in p.facets:
        out.append(frozenset(i for i, v in enumerate(p.vertices) if dot(a, v) == b))
    return out


def _facet_vertex_masks(p: Polytope) -> list[int]:
    masks = []
    for a, b in p.facets:
        m = 0
        for i, v in enumerate(p.vertices):
            if dot(a, v) == b:
                m |= 1 << i
        masks.append(m)
    return masks


def _pull_triangulation(s: int, facet_masks: list[int], memo: dict[int, list[tuple[int, ...]]]) -> list[tuple[int, ...]]:
    """Simplices (as vertex-id tuples) of the pulling triangulation of face s.

    Children of a face are the maximal proper intersections with facet vertex
    sets: every intersection is a face, all codimension-1 subfaces occur, and
    anything lower-dimensional is swallowed by one of them, so maximality
    alone identifies the codimension-1 children with no rank computations.
    """
    got = memo.get(s)
    if got is not None:
        return got
    if s & (s - 1) == 0:
        out = [(s.bit_length() - 1,)]
        memo[s] = out
        return out
    apex = (s & -s).bit_length() - 1
    cands: set[int] = set()
    for f in facet_masks:
        c = s & f
        if c and c != s:
            cands.add(c)
    out = []
    for c in cands:
        if any(c != o and c & o == c for o in cands):
            continue  # not maximal, hence lower-dimensional
        if c >> apex & 1:
            continue
        for t in _pull_triangulation(c, facet_masks, memo):
            out.append(t + (apex,))
    memo[s] = out
    return out


@lru_cache(maxsize=4096)
def volume(p: Polytope) -> Fraction:
    """Exact volume by a pulling triangulation from the first vertex."""
    d = p.dim
    verts = p.vertices
    if len(verts) == d + 1:
        rows = [vsub(verts[i], verts[0]) for i in range(1, d + 1)]
        return abs(determinant(rows)) / math.factorial(d)
    facet_masks = _facet_vertex_masks(p)
    memo: dict[int, list[tuple[int, ...]]] = {}
    total = Fraction(0)
    for fm in facet_masks:
        if fm & 1:  # facet contains the apex vertex 0, cone degenerates
            continue
        for t in _pull_triangulation(fm, facet_masks, memo):
            rows = [vsub(verts[i], verts[0]) for i in t]
            total += abs(determinant(rows))
    return total / math.factorial(d)


# ---------------------------------------------------------------------------
# distances


def face_vertex_sets(p: Polytope) -> list[frozenset[int]]:
    """All proper nonempty faces, as vertex index sets.

    Every proper face of a polytope is an intersection of facets, so the
    closure of the facet incidence sets under pairwise intersection is the
    whole face lattice minus the improper elements.
    """
    faces: set[frozenset[int]] = set(_facet_vertex_sets(p))
    frontier = set(faces)
    while frontier:
        fresh: set[frozenset[int]] = set()
        for f in frontier:
            for g in faces:
                c = f & g
                if c and c not in faces and c not in fresh:
                    fresh.add(c)
        faces |= fresh
        frontier = fresh
    return sorted(faces, key=lambda s: (len(s), sorted(s)))


def _project_affine(x: Vec, pts: list[Vec]) -> Vec:
    """Orthogonal projection of x onto the affine hull of pts."""
    p0 = pts[0]
    basis: list[Vec] = []
    for q in pts[1:]:
        w = vsub(q, p0)
        if rank(basis + [w]) > len(basis):
            basis.append(w)
    if not basis:
        return p0
    k = len(basis)
    gram = tuple(tuple(dot(basis[i], basis[j]) for j in range(k)) for i in range(k))
    rhs = tuple(dot(basis[i], vsub(x, p0)) for i in range(k))
    lam = _solve_pd(gram, rhs)
    out = list(p0)
    for coef, w in zip(lam, basis):
        for i in range(len(out)):
            out[i] += coef * w[i]
    return tuple(out)


def _solve_pd(gram: tuple[tuple[Fraction, ...], ...], rhs: Vec) -> Vec:
    sol = solve_linear(gram, rhs)
    assert sol is not None, "Gram matrix of an independent family is invertible"
    return sol


def point_distance_sq(p: Polytope, x: Sequence[Fraction | int]) -> Fraction:
    """Exact squared Euclidean distance from x to the polytope."""
    v = vec(x)
    if membership(p, v) != "outside":
        return Fraction(0)
    best: Fraction | None = None
    for s in face_vertex_sets(p):
        pts = [p.vertices[i] for i in s]
        proj = _project_affine(v, pts)
        if membership(p, proj) == "outside":
            continue
        d2 = dot(vsub(v, proj), vsub(v, proj))
        if best is None or d2 < best:
            best = d2
    assert best is not None, "nearest point lies on some face"
    return best


def hausdorff_distance_sq(p: Polytope, q: Polytope) -> Fraction:
    """Exact squared Hausdorff distance between two polytopes."""
    if p.dim != q.dim:
        raise DimensionError("polytopes live in different dimensions")
    if p == q:
        return Fraction(0)
    best = Fraction(0)
    for v in p.vertices:
        best = max(best, point_distance_sq(q, v))
    for w in q.vertices:
        best = max(best, point_distance_sq(p, w))
    return best


def banach_mazur_diag_upper(a: Polytope, b: Polytope, tol: Fraction = Fraction(1, 1000)) -> Fraction:
    """Upper bound on the Banach-Mazur distance restricted to diagonal maps.

    Minimizes ``lambda(t) * mu(t)`` over positive diagonal maps diag(t) by
    multiplicative coordinate descent with a halving step, where lambda is
    the smallest blowup with diag(t) a inside lambda b and mu the smallest
    with b inside mu diag(t) a.  The returned value is exact for the best
    grid point visited; it is an upper bound for the true diagonal optimum.
    """
    if a.dim != b.dim:
        raise DimensionError("polytopes live in different dimensions")
    if fr(tol) <= 0:
        raise PreconditionError("tol must be positive")
    a = normalize_unconditional(a)
    b = normalize_unconditional(b)
    if a == b:
        return Fraction(1)
    n = a.dim
    fa = [f for f, _ in a.facets]
    fb = [f for f, _ in b.facets]

    def cost(t: list[Fraction]) -> Fraction:
        lam = max(max(sum(bi * ti * vi for bi, ti, vi in zip(beta, t, v)) for beta in fb) for v in a.vertices)
        mu = max(max(sum(ai * wi / ti for ai, ti, wi in zip(alpha, t, w)) for alpha in fa) for w in b.vertices)
        return lam * mu

    t = [Fraction(1)] * n
    best = cost(t)
    step = Fraction(1, 2)
    floor = fr(tol) / 8
    while step >= floor and best > 1:
        improved = True
        while improved:
            improved = False
            for i in range(n):
                for f in (1 + step, 1 / (1 + step)):
                    cand = list(t)
                    cand[i] = t[i] * f
                    c = cost(cand)
                    if c < best:
                        best, t = c, cand
                        improved = True
        step /= 2
    return best


# ---------------------------------------------------------------------------
# serialization and checking


def to_json_dict(p: Polytope) -> dict:
    return {
        "dim": p.dim,
        "vertices": [[str(x) for x in v] for v in p.vertices],
        "halfspaces": [
            {"normal": [str(x) for x in a], "offset": str(b)} for a, b in p.facets
        ],
    }


def from_json_dict(data: dict) -> Polytope:
    """Parse a polytope; cross-checks the halfspace block when present.

    Every listed point must actually be a vertex, and a listed halfspace
    block must canonicalize to exactly the derived facet set.  Anything else
    raises FormatError, since a file that disagrees with itself should never
    be silently repaired.
    """
    try:
        dim = int(data["dim"])
        raw = data["vertices"]
        verts = [tuple(parse_fraction(s) for s in row) for row in raw]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad polytope payload: {exc}") from exc
    if any(len(v) != dim for v in verts):
        raise FormatError("vertex rows disagree with dim")
    try:
        p = from_vertices(verts)
    except DimensionError as exc:
        raise FormatError(str(exc)) from exc
    if set(verts) != set(p.vertices):
        extra = sorted(set(verts) - set(p.vertices))[0]
        raise FormatError(f"listed point {tuple(map(str, extra))} is not a vertex")
    if "halfspaces" in data:
        try:
            given = {
                canon_facet(tuple(parse_fraction(s) for s in h["normal"]), parse_fraction(h["offset"]))
                for h in data["halfspaces"]
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad halfspace payload: {exc}") from exc
        if given != set(p.facets):
            raise FormatError("halfspaces do not match the hull of the vertices")
    return p


def validate(p: Polytope) -> None:
    """Internal consistency: every vertex feasible, every facet honest."""
    for v in p.vertices:
        for a, b in p.facets:
            if dot(a, v) > b:
                raise ConsistencyError(f"vertex {v} violates a facet")
    facet_sets = _facet_vertex_sets(p)
    for (a, b), s in zip(p.facets, facet_sets):
        if affine_rank([p.vertices[i] for i in s]) != p.dim - 1:
            raise ConsistencyError(f"facet {a} <= {b} is not supported by a (dim-1)-face")
    for i, v in enumerate(p.vertices):
        tight = [a for a, b in p.facets if dot(a, v) == b]
        if rank(tight) != p.dim:
            raise ConsistencyError(f"vertex {v} is not an extreme point")
