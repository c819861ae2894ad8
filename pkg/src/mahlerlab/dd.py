"""Exact double-description engine for pointed polyhedral cones.

Everything here runs on plain Python integers.  The one algorithm is the
classic incremental double description method: maintain the extreme rays of
``{x : <row, x> <= 0}`` while inserting the rows one at a time, creating new
rays only from adjacent (inside, outside) pairs.  Adjacency uses the
Fukuda-Prodon combinatorial test on exact tight-row bitmasks, which is valid
because the cone stays pointed throughout.

Both directions of the polytope conversion reduce to this cone computation by
homogenization:

* vertices of ``{y : Ay <= b}``  <-  rays of ``{(y,t) : Ay - tb <= 0, -t <= 0}``
* facets of ``conv(points)``     <-  vertices of the polar of the centered
  point set, i.e. rays of the homogenized system ``<p - c, y> <= 1``.

A ray that survives with homogenizing coordinate t == 0 is a recession
direction, which is exactly how unbounded input announces itself.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, UnboundedError
from .ratlin import (
    Vec,
    affine_rank,
    common_denominator,
    dot,
    fr,
    int_rank,
    primitive_int_vec,
    solve_linear,
    unit_vec,
    vsub,
)

IntVec = tuple[int, ...]


def _idot(u: IntVec, v: IntVec) -> int:
    s = 0
    for a, b in zip(u, v):
        s += a * b
    return s


def extreme_rays(rows: Sequence[IntVec]) -> tuple[list[IntVec], list[int]]:
    """Extreme rays of the pointed cone ``{x : <row, x> <= 0 for every row}``.

    Returns (rays, tight) where ``tight[k]`` is a bitmask over row indices
    marking the rows satisfied with equality by ray k.  Rays are primitive
    integer vectors.  Raises DimensionError when the rows do not have full
    rank (the cone then contains a line and has no extreme rays).
    """
    if not rows:
        raise DimensionError("no rows")
    d = len(rows[0])

    basis: list[int] = []
    basis_rows: list[IntVec] = []
    for i, r in enumerate(rows):
        if int_rank(basis_rows + [r]) > len(basis):
            basis.append(i)
            basis_rows.append(r)
            if len(basis) == d:
                break
    if len(basis) < d:
        raise DimensionError("cone is not pointed (rows are rank deficient)")

    # Rays of the initial simplicial subcone: r_j solves  B r_j = -e_j.
    bmat = tuple(tuple(fr(x) for x in row) for row in basis_rows)
    rays: list[IntVec] = []
    for j in range(d):
        sol = solve_linear(bmat, unit_vec(d, j, Fraction(-1)))
        assert sol is not None  # basis rows are independent
        den = common_denominator(sol)
        rays.append(primitive_int_vec(tuple(int(x * den) for x in sol)))

    basis_set = set(basis)
    tight: list[int] = []
    for r in rays:
        m = 0
        for i in basis:
            if _idot(rows[i], r) == 0:
                m |= 1 << i
        tight.append(m)

    thresh = d - 2
    for i, row in enumerate(rows):
        if i in basis_set:
            continue
        scores = [_idot(row, r) for r in rays]
        if all(s <= 0 for s in scores):
            bit = 1 << i
            for k, s in enumerate(scores):
                if s == 0:
                    tight[k] |= bit
            continue

        keep_rays: list[IntVec] = []
        keep_tight: list[int] = []
        ins: list[int] = []
        outs: list[int] = []
        bit = 1 << i
        for k, s in enumerate(scores):
            if s < 0:
                ins.append(k)
                keep_rays.append(rays[k])
                keep_tight.append(tight[k])
            elif s == 0:
                keep_rays.append(rays[k])
                keep_tight.append(tight[k] | bit)
            else:
                outs.append(k)

        new_rays: list[IntVec] = []
        new_tight: list[int] = []
        for ku in ins:
            tu = tight[ku]
            su = scores[ku]
            ru = rays[ku]
            for kw in outs:
                common = tu & tight[kw]
                if common.bit_count() < thresh:
                    continue
                # adjacency: no third ray is tight on everything u and w share
                adjacent = True
                for k3 in range(len(rays)):
                    if k3 == ku or k3 == kw:
                        continue
                    if common & tight[k3] == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                sw = scores[kw]
                rw = rays[kw]
                new = tuple(sw * a - su * b for a, b in zip(ru, rw))
                new_rays.append(primitive_int_vec(new))
                new_tight.append(common | bit)

        rays = keep_rays + new_rays
        tight = keep_tight + new_tight
        if not rays:
            raise DimensionError("cone collapsed to the origin")

    return rays, tight


def _dedupe_rows(rows: list[IntVec]) -> tuple[list[IntVec], list[int]]:
    """Primitive-reduce rows and merge duplicates; returns (unique, orig->unique)."""
    uniq: list[IntVec] = []
    index: dict[IntVec, int] = {}
    mapping: list[int] = []
    for r in rows:
        p = primitive_int_vec(r)
        k = index.get(p)
        if k is None:
            k = len(uniq)
            index[p] = k
            uniq.append(p)
        mapping.append(k)
    return uniq, mapping


def _facet_flags(rays: list[IntVec], tight: list[int], n_rows: int, cone_dim: int) -> list[bool]:
    """Row i supports a facet iff its tight rays span a (cone_dim - 1)-face."""
    flags = []
    for i in range(n_rows):
        bit = 1 << i
        members = [rays[k] for k in range(len(rays)) if tight[k] & bit]
        flags.append(len(members) >= cone_dim - 1 and int_rank(members) == cone_dim - 1)
    return flags


def polyhedron_vertices(
    ineqs: Sequence[tuple[Vec, Fraction]], dim: int
) -> tuple[list[Vec], list[bool], list[list[int]]]:
    """Vertices of ``{y : <a,y> <= b}`` for the given (a, b) inequalities.

    Returns (vertices, facet_flag per inequality, tight vertex indices per
    inequality).  Raises UnboundedError if a recession direction survives and
    DimensionError when the feasible set is empty or not full-dimensional.
    """
    rows: list[IntVec] = []
    for a, b in ineqs:
        den = common_denominator(list(a) + [b])
        rows.append(tuple(int(x * den) for x in a) + (-int(b * den),))
    rows.append((0,) * dim + (-1,))  # t >= 0
    uniq, mapping = _dedupe_rows(rows)
    rays, tight = extreme_rays(uniq)

    verts: list[Vec] = []
    vert_tight: list[int] = []
    for r, m in zip(rays, tight):
        t = r[-1]
        if t == 0:
            raise UnboundedError("halfspace intersection is unbounded")
        verts.append(tuple(Fraction(c, t) for c in r[:-1]))
        vert_tight.append(m)

    if len(verts) < dim + 1:
        raise DimensionError("halfspace intersection is not full-dimensional")

    flags_u = _facet_flags(rays, tight, len(uniq), dim + 1)
    facet_flags = [flags_u[mapping[i]] for i in range(len(ineqs))]
    incidence = []
    for i in range(len(ineqs)):
        bit = 1 << mapping[i]
        incidence.append([k for k in range(len(verts)) if vert_tight[k] & bit])
    return verts, facet_flags, incidence


def hull_facets(points: Sequence[Vec], dim: int) -> tuple[list[tuple[Vec, Fraction]], list[bool]]:
    """Facets of ``conv(points)`` plus a flag marking which points are vertices.

    The points are centered on their centroid, the polar of the centered set
    is computed by double description, and each polar vertex u is unfolded to
    the facet ``<u, x> <= 1 + <u, c>`` of the original hull.  A point is a
    vertex exactly when its constraint supports a facet of the polar.
    """
    pts = list(dict.fromkeys(points))
    if affine_rank(pts) != dim:
        raise DimensionError("point set is not full-dimensional")
    k = len(pts)
    c = tuple(sum(p[i] for p in pts) / k for i in range(dim))

    rows: list[IntVec] = []
    for p in pts:
        w = vsub(p, c)
        den = common_denominator(w)
        rows.append(tuple(int(x * den) for x in w) + (-den,))
    rows.append((0,) * dim + (-1,))
    uniq, mapping = _dedupe_rows(rows)
    rays, tight = extreme_rays(uniq)

    facets: list[tuple[Vec, Fraction]] = []
    for r in rays:
        t = r[-1]
        assert t > 0, "polar of a centered full-dimensional hull is bounded"
        normal = tuple(Fraction(x, t) for x in r[:-1])
        facets.append((normal, 1 + dot(normal, c)))

    flags_u = _facet_flags(rays, tight, len(uniq), dim + 1)
    vertex_flags = [flags_u[mapping[i]] for i in range(len(pts))]

    # report per original input point (duplicates collapse onto the unique set)
    out_flags = []
    seen: dict[Vec, bool] = {p: f for p, f in zip(pts, vertex_flags)}
    for p in points:
        out_flags.append(seen[p])
    return facets, out_flags
