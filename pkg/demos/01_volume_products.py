"""Volume products of the standard unconditional bodies, from first principles.

Everything here is exact rational arithmetic: vertex enumeration, polarity,
and volume all run over Fraction, so the printed products are identities,
not floating-point near-misses.
"""

from fractions import Fraction

from mahlerlab import (
    cross_polytope,
    cube,
    from_vertices,
    mahler_bound,
    polar,
    volume,
    volume_product,
)
from mahlerlab.ratlin import format_approx, format_exact
from mahlerlab.volprod import VOLPROD_CSV_HEADER, volume_product_csv_row


def product_table(max_dim: int) -> None:
    print(f"{'n':>2}  {'|cube|':>8}  {'|polar|':>10}  {'product':>10}  {'4^n/n!':>10}  tight")
    for n in range(1, max_dim + 1):
        c = cube(n)
        vol_c = volume(c)
        vol_p = volume(polar(c))
        prod = vol_c * vol_p
        bound = mahler_bound(n)
        mark = "yes" if prod == bound else "NO"
        print(
            f"{n:>2}  {format_exact(vol_c):>8}  {format_exact(vol_p):>10}"
            f"  {format_exact(prod):>10}  {format_exact(bound):>10}  {mark}"
        )


def path_ball() -> None:
    # Independent-set ball of the path on 4 vertices: the smallest
    # unconditional body in this family whose product exceeds 4^n/n!.
    verts = []
    for mask in range(16):
        picked = [i for i in range(4) if mask >> i & 1]
        # maximal independent sets of the path 0-1-2-3
        if sorted(picked) in ([0, 2], [0, 3], [1, 3]):
            for signs in range(4):
                v = [Fraction(0)] * 4
                v[picked[0]] = Fraction(1 if signs & 1 else -1)
                v[picked[1]] = Fraction(1 if signs & 2 else -1)
                verts.append(tuple(v))
    ball = from_vertices(verts)
    report = volume_product(ball, body_id="p4-ball")
    print(f"vertices: {len(ball.vertices)}, facets: {len(ball.facets)}")
    print(f"product:  {format_exact(report.product)} ({format_approx(report.product)})")
    print(f"bound:    {format_exact(report.bound)} ({format_approx(report.bound)})")
    print(f"excess:   {format_exact(report.excess)}  verdict: {report.verdict}")
    print()
    print(VOLPROD_CSV_HEADER)
    print(volume_product_csv_row(report))


def main() -> None:
    print("== cube products match the conjectured minimum in every dimension ==")
    product_table(6)
    print()
    print("== cross polytopes give the same products, swapped factors ==")
    for n in (2, 3, 4):
        r = volume_product(cross_polytope(n), body_id=f"cross-{n}")
        print(
            f"n={n}: |K| = {format_exact(r.vol_body)}, |K°| = {format_exact(r.vol_polar)},"
            f" product = {format_exact(r.product)}"
        )
    print()
    print("== a non-Hanner unconditional body sits strictly above the bound ==")
    path_ball()


if __name__ == "__main__":
    main()
