"""Array-backed union-find used by betti numbers and the connectivity sweeps."""

from __future__ import annotations


def uf_find(parent: list, x: int) -> int:
    # Path halving keeps trees shallow without recursion.
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def uf_union(parent: list, a: int, b: int) -> bool:
    ra, rb = uf_find(parent, a), uf_find(parent, b)
    if ra == rb:
        return False
    if ra > rb:
        ra, rb = rb, ra
    parent[rb] = ra
    return True


def uf_compress(parent: list) -> None:
    """Point every element directly at its root (cheap to copy afterwards)."""
    for x in range(len(parent)):
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            parent[x], x = r, parent[x]


def component_count(n: int, edge_iter) -> int:
    parent = list(range(n))
    comps = n
    for u, v in edge_iter:
        if uf_union(parent, u, v):
            comps -= 1
    return comps
