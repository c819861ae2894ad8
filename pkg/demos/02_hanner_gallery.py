"""Gallery of Hanner polytopes built three ways.

A Hanner polytope is what you get from intervals by alternating l1 and linf
sums.  Equivalently: the independent-set ball of a P4-free graph, with the
graph complement matching polarity.  This script builds the low-dimensional
catalog and checks the dictionary both ways.
"""

from mahlerlab import (
    complement,
    cube,
    enumerate_p4_free_classes,
    enumerate_p4_free_labeled,
    enumerate_standard_hanner,
    graph_from_polytope,
    hanner_from_tree,
    interval,
    l1_sum,
    linf_sum,
    mahler_bound,
    polar,
    polytope_from_graph,
    volume,
)
from mahlerlab.graphs import edges
from mahlerlab.ratlin import format_exact


def census() -> None:
    print(f"{'n':>2}  {'labeled P4-free':>16}  {'up to relabeling':>17}")
    for n in range(1, 6):
        labeled = len(enumerate_p4_free_labeled(n))
        classes = len(enumerate_p4_free_classes(n))
        print(f"{n:>2}  {labeled:>16}  {classes:>17}")


def gallery(n: int) -> None:
    print(f"{'graph edges':>24}  {'verts':>5}  {'facets':>6}  {'product':>9}")
    for g in enumerate_p4_free_classes(n):
        p = polytope_from_graph(g)
        prod = volume(p) * volume(polar(p))
        assert prod == mahler_bound(n)
        label = str(edges(g)) if edges(g) else "(no edges: cube)"
        print(f"{label:>24}  {len(p.vertices):>5}  {len(p.facets):>6}  {format_exact(prod):>9}")


def duality_check(n: int) -> None:
    # polar of the ball of g is the ball of the complement of g
    count = 0
    for g in enumerate_p4_free_labeled(n):
        p = polytope_from_graph(g)
        assert graph_from_polytope(polar(p)) == complement(g)
        count += 1
    print(f"checked polar(ball(g)) = ball(complement g) for all {count} labeled graphs at n={n}")


def tree_route() -> None:
    # linf sum of two l1 pairs, written as a labeled cotree
    pair = lambda op, i, j: (op, (("leaf", i), ("leaf", j)))
    tree = ("linf", (pair("l1", 0, 1), pair("l1", 2, 3)))
    p = hanner_from_tree(tree)
    q = linf_sum(l1_sum(interval(1), interval(1)), l1_sum(interval(1), interval(1)))
    assert p == q
    print(f"tree {tree}")
    print(f"  -> {len(p.vertices)} vertices, {len(p.facets)} facets, volume {format_exact(volume(p))}")
    assert hanner_from_tree(("l1", (pair("linf", 0, 1), pair("linf", 2, 3)))) == polar(p)
    print("  polar equals the tree with l1 and linf swapped")


def main() -> None:
    print("== how many generating graphs ==")
    census()
    print()
    print("== every class at n=3 hits the bound exactly ==")
    gallery(3)
    print()
    print("== graph complement is polarity ==")
    duality_check(4)
    print()
    print("== the sum-tree route gives the same bodies ==")
    tree_route()
    print()
    std = enumerate_standard_hanner(3, dedup=True)
    assert any(p == cube(3) for _, p in std)
    print(f"standard models at n=3, one per class: {len(std)}")


if __name__ == "__main__":
    main()
