"""Canonical forms of labeled k-uniform families under vertex relabeling.

Iterated color refinement on the vertex/edge incidence structure, with
individualization on the first non-singleton cell.  The canonical form
is the minimum relabeled edge tuple over all refinement-consistent
orderings, which is a well-defined class representative: two families
have the same form exactly when some relabeling maps one to the other.
Isolated vertices never affect the edge tuple, so only the support is
ordered.  Intended for the small ground sets (n <= 9) the deduplicated
enumeration targets.
"""

from __future__ import annotations

from .masks import Mask, iter_bits, labels


def _refine(support: list[int], edges: list[tuple[int, ...]], colors: dict[int, int]) -> dict[int, int]:
    while True:
        ecols = {}
        for idx, e in enumerate(edges):
            ecols[idx] = tuple(sorted(colors[v] for v in e))
        new_keys = {}
        for v in support:
            incident = tuple(sorted(ecols[idx] for idx, e in enumerate(edges) if v in e))
            new_keys[v] = (colors[v], incident)
        ranked = {key: i for i, key in enumerate(sorted(set(new_keys.values())))}
        new_colors = {v: ranked[new_keys[v]] for v in support}
        if len(set(new_colors.values())) == len(set(colors.values())):
            return new_colors
        colors = new_colors


def _cells(support: list[int], colors: dict[int, int]) -> list[list[int]]:
    by_color: dict[int, list[int]] = {}
    for v in support:
        by_color.setdefault(colors[v], []).append(v)
    return [sorted(by_color[c]) for c in sorted(by_color)]


def canonical_form(n: int, edges: tuple[Mask, ...]) -> tuple[Mask, ...]:
    """Canonical edge tuple of a labeled family on [n]."""
    if not edges:
        return ()
    support_mask = 0
    for e in edges:
        support_mask |= e
    support = [b.bit_length() for b in iter_bits(support_mask)]
    edge_tuples = [labels(e) for e in edges]

    best: list[tuple[Mask, ...]] = []

    def descend(colors: dict[int, int]) -> None:
        colors = _refine(support, edge_tuples, colors)
        cells = _cells(support, colors)
        target = None
        for cell in cells:
            if len(cell) > 1:
                target = cell
                break
        if target is None:
            order = [v for cell in cells for v in cell]
            relabel = {v: i + 1 for i, v in enumerate(order)}
            form = tuple(
                sorted(sum(1 << (relabel[v] - 1) for v in e) for e in edge_tuples)
            )
            if not best or form < best[0]:
                best[:] = [form]
            return
        ncolors = max(colors.values()) + 1
        for u in target:
            child = dict(colors)
            child[u] = ncolors
            descend(child)

    descend({v: 0 for v in support})
    return best[0]


def are_isomorphic(n: int, edges_a: tuple[Mask, ...], edges_b: tuple[Mask, ...]) -> bool:
    return canonical_form(n, edges_a) == canonical_form(n, edges_b)
