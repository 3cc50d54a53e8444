"""Bitmask subsets of a ground set {1, ..., n}.

A subset is a plain ``int``: bit ``i`` set means vertex ``i + 1`` is a
member.  Python ints are arbitrary precision, so the same code covers
n <= 64 (single machine word under the hood) and the n ~ 232 ground sets
the certification procedures need.  Canonical order of subsets is the
numeric order of their masks, i.e. colexicographic order on the sets.
"""

from __future__ import annotations

from typing import Iterable, Iterator

Mask = int


def bit(vertex: int) -> Mask:
    """Mask of the single vertex (1-based label)."""
    return 1 << (vertex - 1)


def mask_of(vertices: Iterable[int]) -> Mask:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def labels(m: Mask) -> tuple[int, ...]:
    """Sorted 1-based labels of the mask's members."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length())
        m ^= low
    return tuple(out)


def full_mask(n: int) -> Mask:
    return (1 << n) - 1


def popcount(m: Mask) -> int:
    return m.bit_count()


def iter_bits(m: Mask) -> Iterator[Mask]:
    """Single-bit masks of ``m``, ascending."""
    while m:
        low = m & -m
        yield low
        m ^= low


def lowest_bit(m: Mask) -> Mask:
    return m & -m


def lowest_vertex(m: Mask) -> int:
    """Smallest 1-based label in a nonempty mask."""
    return (m & -m).bit_length()


def smallest_subset(m: Mask, r: int) -> Mask:
    """The ``r`` lowest members of ``m`` (requires popcount(m) >= r)."""
    out = 0
    for _ in range(r):
        low = m & -m
        out |= low
        m ^= low
    return out


def fill_to_size(base: Mask, size: int, pool: Mask) -> Mask:
    """Grow ``base`` to ``size`` members using the lowest bits of ``pool``."""
    need = size - base.bit_count()
    if need < 0:
        raise ValueError("base already larger than requested size")
    avail = pool & ~base
    return base | smallest_subset(avail, need)


def iter_ksubsets(n: int, k: int) -> Iterator[Mask]:
    """All k-subsets of {1..n} in canonical (numeric mask) order.

    Gosper's hack: same-popcount masks enumerate in increasing value,
    which is colex order on the underlying sets.
    """
    if k == 0:
        yield 0
        return
    if k > n:
        return
    limit = 1 << n
    c = (1 << k) - 1
    while c < limit:
        yield c
        u = c & -c
        v = c + u
        c = v + (((v ^ c) // u) >> 2)


def iter_subsets_within(pool: Mask, r: int) -> Iterator[Mask]:
    """All r-subsets of ``pool``'s members in canonical order."""
    positions = [low for low in iter_bits(pool)]
    p = len(positions)
    if r == 0:
        yield 0
        return
    if r > p:
        return
    for compact in iter_ksubsets(p, r):
        out = 0
        c = compact
        while c:
            i = (c & -c).bit_length() - 1
            out |= positions[i]
            c &= c - 1
        yield out


def count_subsets(pool: Mask, r: int) -> int:
    from math import comb

    return comb(pool.bit_count(), r)
