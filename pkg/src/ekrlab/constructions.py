"""Core-shrinking, cover reduction, and star-certification procedures.

Every procedure follows the same discipline: "arbitrary" choices resolve
to the canonically smallest valid option, every oracle answer is
validated at the boundary, and whenever a query that the degree
hypotheses guarantee comes back short, the procedure returns a
checkable violation witness instead of raising.  Witnesses re-verify
against the oracle via :meth:`Violation.verify`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .bounds import (
    ceil_cbrt_poly,
    certify_threshold_k1,
    certify_threshold_k2,
    ell_param,
    floor_triangular_root,
    shrink_threshold_k1,
    shrink_threshold_k2,
    shrink_vertex_bound_k1,
    shrink_vertex_bound_k2,
    sqrt_term,
    x_param,
)
from .family import Family, FamilyParams, covers_size2, is_complete_star_on
from .graphs import PairGraph, find_pattern, is_star_graph, is_subgraph_of_cherry, max_matching_upto
from .masks import (
    Mask,
    bit,
    iter_bits,
    labels,
    lowest_vertex,
    popcount,
    smallest_subset,
    fill_to_size,
)
from .oracles import ExplicitOracle, FamilyOracle

SAMPLE_BUDGET = 10_000  # seeded final-claim samples on non-explicit oracles
SPOT_BUDGET = 256  # per-window spot checks on non-explicit oracles


class InternalContradictionError(RuntimeError):
    """A state the underlying arguments rule out; indicates an inconsistent oracle or a bug."""


# ---------------------------------------------------------------------------
# violations


class Violation:
    def verify(self, oracle: FamilyOracle) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class DisjointEdges(Violation):
    """Two edges of the family with empty intersection."""

    first: Mask
    second: Mask

    def verify(self, oracle: FamilyOracle) -> bool:
        return (
            not self.first & self.second
            and oracle.contains(self.first)
            and oracle.contains(self.second)
        )


@dataclass(frozen=True)
class ZeroCodegree(Violation):
    """A (k-1)-set contained in no edge."""

    query_set: Mask

    def verify(self, oracle: FamilyOracle) -> bool:
        return oracle.degree(self.query_set) == 0


@dataclass(frozen=True)
class LowCodegree(Violation):
    """A query set whose degree falls short of the guaranteed value."""

    query_set: Mask
    observed: int
    required: int

    def verify(self, oracle: FamilyOracle) -> bool:
        deg = oracle.degree(self.query_set)
        return deg == self.observed and deg < self.required


@dataclass(frozen=True)
class NotStar(Violation):
    """Star claim refuted on an explicit family: a missing or offending edge."""

    missing: Optional[Mask]
    offending: Optional[Mask]

    def verify(self, oracle: FamilyOracle) -> bool:
        if self.missing is not None and oracle.contains(self.missing):
            return False
        if self.offending is not None and not oracle.contains(self.offending):
            return False
        return self.missing is not None or self.offending is not None


# ---------------------------------------------------------------------------
# traces and result carriers


@dataclass(frozen=True)
class TraceStep:
    phase: int
    query_set: Mask
    returned_edge: Optional[Mask]
    core: Mask
    core_size: int
    vertexset_size: int
    excess: int  # vertexset_size - k


@dataclass
class ConstructionTrace:
    steps: list[TraceStep] = field(default_factory=list)
    final_vertex_set: Mask = 0
    queries_used: int = 0
    parameters: dict = field(default_factory=dict)

    def record(self, phase: int, query_set: Mask, returned_edge: Optional[Mask],
               core: Mask, vertex_set: Mask, k: int) -> None:
        self.steps.append(
            TraceStep(
                phase=phase,
                query_set=query_set,
                returned_edge=returned_edge,
                core=core,
                core_size=popcount(core),
                vertexset_size=popcount(vertex_set),
                excess=popcount(vertex_set) - k,
            )
        )

    @property
    def excesses(self) -> list[int]:
        return [s.excess for s in self.steps]


@dataclass(frozen=True)
class TracedFamily:
    """A subfamily plus an explicit vertex set (may carry isolated vertices)."""

    params: FamilyParams
    edges: tuple[Mask, ...]
    vertex_set: Mask

    def __post_init__(self) -> None:
        union = 0
        for e in self.edges:
            union |= e
        if union & ~self.vertex_set:
            raise ValueError("vertex set must contain every edge")

    @property
    def family(self) -> Family:
        return Family(self.params, self.edges)

    @property
    def core(self) -> Mask:
        c = self.params.full
        for e in self.edges:
            c &= e
        return c

    def add(self, new_edges: Iterable[Mask], extra_vertices: Mask = 0) -> "TracedFamily":
        merged = set(self.edges)
        vs = self.vertex_set | extra_vertices
        for e in new_edges:
            merged.add(e)
            vs |= e
        return TracedFamily(self.params, tuple(sorted(merged)), vs)


@dataclass(frozen=True)
class ShrinkK1Result:
    subfamily: Optional[TracedFamily]
    violation: Optional[Violation]
    trace: ConstructionTrace

    @property
    def ok(self) -> bool:
        return self.violation is None


@dataclass(frozen=True)
class ShrinkK2Result:
    subfamily: Optional[TracedFamily]
    cover_vertex: Optional[int]
    violation: Optional[Violation]
    trace: ConstructionTrace

    @property
    def ok(self) -> bool:
        return self.violation is None


@dataclass(frozen=True)
class CherryReduceResult:
    star_center: Optional[int]
    reduced: Optional[TracedFamily]
    pattern: Optional[object]

    @property
    def is_star_link(self) -> bool:
        return self.star_center is not None


@dataclass(frozen=True)
class Certificate:
    center: Optional[int]
    violation: Optional[Violation]
    trace: ConstructionTrace

    @property
    def is_star(self) -> bool:
        return self.center is not None


# ---------------------------------------------------------------------------
# oracle plumbing


class CountingOracle(FamilyOracle):
    """Delegating oracle that counts queries and validates every answer."""

    def __init__(self, inner: FamilyOracle):
        self.inner = inner
        self.queries = 0

    @property
    def params(self) -> FamilyParams:
        return self.inner.params

    def contains(self, e: Mask) -> bool:
        self.queries += 1
        return self.inner.contains(e)

    def degree(self, s: Mask) -> int:
        self.queries += 1
        d = self.inner.degree(s)
        if d < 0:
            raise InternalContradictionError("oracle returned a negative degree")
        return d

    def extension(self, base: Mask, forbidden: Mask = 0) -> Optional[Mask]:
        self.queries += 1
        e = self.inner.extension(base, forbidden)
        if e is None:
            return None
        p = self.params
        if popcount(e) != p.k or e & ~p.full or e & base != base or (e & ~base) & forbidden:
            raise InternalContradictionError(
                f"oracle extension answer {labels(e)} violates the query contract"
            )
        return e

    def enumerate_extensions(self, base: Mask):
        self.queries += 1
        p = self.params
        for e in self.inner.enumerate_extensions(base):
            if popcount(e) != p.k or e & ~p.full or e & base != base:
                raise InternalContradictionError(
                    f"oracle enumeration answer {labels(e)} violates the query contract"
                )
            yield e


def _as_oracle(source: FamilyOracle | Family) -> FamilyOracle:
    return ExplicitOracle(source) if isinstance(source, Family) else source


def _and_edges(edges: Sequence[Mask], full: Mask) -> Mask:
    c = full
    for e in edges:
        c &= e
    return c


def _link_pairs(co: FamilyOracle, base: Mask) -> tuple[Mask, ...]:
    return tuple(sorted(e & ~base for e in co.enumerate_extensions(base)))


def _pool_bits(pool: Mask) -> list[Mask]:
    return list(iter_bits(pool))


def _sample_subset(rng: random.Random, pool_bits: list[Mask], r: int) -> Mask:
    """Uniform r-subset of the pool as a mask, by partial Fisher-Yates.

    Float-driven index draws keep the 10^4-sample verification loops
    cheap; the sampler only feeds spot checks, never proofs.
    """
    arr = pool_bits[:]
    n = len(arr)
    m = 0
    rand = rng.random
    for i in range(r):
        j = i + int(rand() * (n - i))
        arr[i], arr[j] = arr[j], arr[i]
        m |= arr[i]
    return m


# ---------------------------------------------------------------------------
# k-1 core shrinking


def shrink_core_k1(source: FamilyOracle | Family, e: Mask) -> ShrinkK1Result:
    """Shrink the common core around ``e`` to at most one vertex.

    Produces a subfamily H containing ``e`` with |core(H)| <= 1 on a
    bounded vertex set, or a ZeroCodegree witness when some queried
    (k-1)-set has no extension (which certifies the minimum
    (k-1)-degree is zero).  A DisjointEdges witness is returned when
    the k = 2 fallback exposes a non-intersecting input.
    """
    oracle = _as_oracle(source)
    p = oracle.params
    n, k = p.n, p.k
    if k < 2:
        raise ValueError("k >= 2 required")
    if n < shrink_threshold_k1(k):
        raise ValueError(f"n >= {shrink_threshold_k1(k)} required for k={k}, got n={n}")
    co = CountingOracle(oracle)
    if not co.contains(e):
        raise ValueError(f"edge {labels(e)} is not in the family")
    trace = ConstructionTrace()

    if k == 2:
        partner = None
        for vb in iter_bits(e):
            for f in co.enumerate_extensions(vb):
                if f != e:
                    partner = f if partner is None else min(partner, f)
                    break
        if partner is None:
            stray = co.extension(0, e)
            trace.queries_used = co.queries
            if stray is not None:
                return ShrinkK1Result(None, DisjointEdges(e, stray), trace)
            w = smallest_subset(p.full & ~e, 1)
            return ShrinkK1Result(None, ZeroCodegree(w), trace)
        sub = TracedFamily(p, tuple(sorted((e, partner))), e | partner)
        trace.record(1, smallest_subset(e, 1), partner, e & partner, e | partner, k)
        trace.final_vertex_set = sub.vertex_set
        trace.queries_used = co.queries
        trace.parameters["D"] = 1
        return ShrinkK1Result(sub, None, trace)

    extra = smallest_subset(p.full & ~e, 1)
    edges: list[Mask] = [e]
    vertex_set = e | extra
    core = e
    trace.record(1, 0, None, core, vertex_set, k)

    terminal_fired = False
    for _ in range(k + 2):
        if popcount(core) <= 1:
            break
        outside = vertex_set & ~core
        terminal = popcount(outside) >= k - 1
        if terminal:
            w = smallest_subset(outside, k - 1)
        else:
            w = outside | smallest_subset(core, k - 1 - popcount(outside))
        f = co.extension(w, 0)
        if f is None:
            trace.queries_used = co.queries
            return ShrinkK1Result(None, ZeroCodegree(w), trace)
        prev_core, prev_excess = core, popcount(vertex_set) - k
        if f not in edges:
            edges.append(f)
        core &= f
        vertex_set |= f
        trace.record(1, w, f, core, vertex_set, k)
        assert popcount(core) <= popcount(prev_core) - prev_excess or terminal
        assert trace.steps[-1].excess - prev_excess in (0, 1)
        if terminal:
            terminal_fired = True
            break
    assert popcount(core) <= 1

    # The stopping index of the underlying argument is the state just
    # before a terminal query (one that draws the whole query set from
    # outside the core), so the excess cap applies up to that state.
    d_seq = trace.excesses
    stop = len(d_seq) - 2 if terminal_fired else len(d_seq) - 1
    big_d = d_seq[stop - 1] if stop >= 1 else d_seq[-1]
    assert sum(d_seq[:stop]) <= k
    assert big_d * (big_d + 1) <= 2 * k
    assert big_d <= floor_triangular_root(k)
    assert popcount(vertex_set) <= k + big_d + 2 <= shrink_vertex_bound_k1(k)

    sub = TracedFamily(p, tuple(sorted(edges)), vertex_set)
    trace.final_vertex_set = vertex_set
    trace.queries_used = co.queries
    trace.parameters["D"] = big_d
    return ShrinkK1Result(sub, None, trace)


# ---------------------------------------------------------------------------
# cover reduction through link patterns


def cherry_reduce(
    source: FamilyOracle | Family, sub: TracedFamily, base: Mask, area: Mask
) -> CherryReduceResult:
    """Either the link of ``base`` is the complete star on the co-set, or
    a bounded extension of ``sub`` whose size-two covers inside ``area``
    form a subgraph of a cherry.

    The extension adds the edges base | {x,y} over the edges xy of a
    3-matching, Q, or K4 found in the link (at most six new vertices).
    """
    oracle = _as_oracle(source)
    co = CountingOracle(oracle)
    p = oracle.params
    n, k = p.n, p.k
    if popcount(base) != k - 2:
        raise ValueError(f"base must be a (k-2)-set, got {labels(base)}")
    if base & area:
        raise ValueError("base and area must be disjoint")
    if n < k + 5:
        raise ValueError(f"n >= k+5 = {k + 5} required")
    pairs = _link_pairs(co, base)
    required = n - k + 1
    if len(pairs) < required:
        raise ValueError(
            f"degree of {labels(base)} is {len(pairs)}, below the required {required}"
        )
    link_graph = PairGraph(p.full & ~base, pairs)
    star = is_star_graph(link_graph)
    if star.center is not None:
        return CherryReduceResult(star_center=star.center, reduced=None, pattern=None)
    witness = find_pattern(link_graph)
    if witness is None:
        raise InternalContradictionError(
            "link with >= 6 edges and no star center admits no 3-matching, Q, or K4"
        )
    new_edges = [base | xy for xy in witness.edges]
    reduced = sub.add(new_edges)
    assert popcount(reduced.vertex_set) <= popcount(sub.vertex_set) + 6
    cov = covers_size2(reduced.family, area)
    assert is_subgraph_of_cherry(cov.pairs)
    return CherryReduceResult(star_center=None, reduced=reduced, pattern=witness)


# ---------------------------------------------------------------------------
# k-2 core shrinking (two phases)


def _low_codegree_or_pairs(
    co: FamilyOracle, w: Mask, required: int
) -> tuple[Optional[LowCodegree], tuple[Mask, ...]]:
    pairs = _link_pairs(co, w)
    if len(pairs) < required:
        return LowCodegree(w, len(pairs), required), ()
    return None, pairs


def _refute_by_outside_query(
    co: FamilyOracle, ctx_edges: Sequence[Mask], ctx_vertex_set: Mask, required: int
) -> Violation:
    """Produce a witness from a (k-2)-set outside a small context family.

    Any extension of such a set must either be scarce (LowCodegree) or
    yield an edge disjoint from some context edge (DisjointEdges);
    callers invoke this only where the counting arguments make one of
    the two certain.
    """
    p = co.params
    avail = p.full & ~ctx_vertex_set
    if popcount(avail) < p.k - 2:
        raise InternalContradictionError("context vertex set too large for an outside query")
    w = smallest_subset(avail, p.k - 2)
    viol, pairs = _low_codegree_or_pairs(co, w, required)
    if viol is not None:
        return viol
    for t in pairs:
        g = w | t
        for h in ctx_edges:
            if not g & h:
                return DisjointEdges(g, h)
    raise InternalContradictionError(
        "every extension of an outside (k-2)-set covers the context family"
    )


def shrink_core_k2(source: FamilyOracle | Family, e: Mask) -> ShrinkK2Result:
    """Build a subfamily around ``e`` whose size-two covers share a vertex.

    Phase 1 drives the common core below two vertices with (k-2)-set
    extension queries through a width-x window; phase 2 eliminates
    stray size-two covers part-pair by part-pair through the link
    structure.  Success returns (subfamily, cover vertex); every
    queried set is degree-checked against n-k+1 and shortfalls come
    back as LowCodegree witnesses.  The cover property is re-verified
    exhaustively over all vertex pairs before returning.
    """
    oracle = _as_oracle(source)
    p = oracle.params
    n, k = p.n, p.k
    if k < 3:
        raise ValueError("k >= 3 required")
    if n < shrink_threshold_k2(k):
        raise ValueError(f"n >= {shrink_threshold_k2(k)} required for k={k}, got n={n}")
    co = CountingOracle(oracle)
    if not co.contains(e):
        raise ValueError(f"edge {labels(e)} is not in the family")
    required = n - k + 1
    x = x_param(k)
    assert x >= 10 and 4 * ((k + x - 1) // x) + 6 <= x
    trace = ConstructionTrace()
    trace.parameters["x"] = x

    # Phase 1: drive the core to at most one vertex.
    window = smallest_subset(p.full & ~e, x)
    base_vset = e | window  # k + x vertices
    edges: list[Mask] = [e]
    vertex_set = base_vset
    core = e
    trace.record(1, 0, None, core, vertex_set, k)
    steps_phase1 = 0
    while popcount(core) >= 3:
        if popcount(core) >= x + 2:
            carved = smallest_subset(core, x + 2)
        else:
            carved = core | smallest_subset(base_vset & ~core, x + 2 - popcount(core))
        w = base_vset & ~carved
        assert popcount(w) == k - 2
        viol, pairs = _low_codegree_or_pairs(co, w, required)
        if viol is not None:
            trace.queries_used = co.queries
            return ShrinkK2Result(None, None, viol, trace)
        f = w | pairs[0]
        if f not in edges:
            edges.append(f)
        prev = vertex_set
        core &= f
        vertex_set |= f
        steps_phase1 += 1
        trace.record(1, w, f, core, vertex_set, k)
        assert popcount(vertex_set) - popcount(prev) <= 2
        if steps_phase1 > (k + x - 1) // x + 1:
            raise InternalContradictionError("phase 1 exceeded its step budget")
    trace.parameters["ell"] = steps_phase1

    if popcount(core) == 2:
        w = smallest_subset(vertex_set & ~core, k - 2)
        viol, pairs = _low_codegree_or_pairs(co, w, required)
        if viol is not None:
            trace.queries_used = co.queries
            return ShrinkK2Result(None, None, viol, trace)
        link_graph = PairGraph(p.full & ~w, pairs)
        matching = max_matching_upto(link_graph, 2)
        if len(matching) == 2:
            f1, f2 = (w | matching[0], w | matching[1])
            for f in (f1, f2):
                if f not in edges:
                    edges.append(f)
            core &= f1 & f2
            vertex_set |= f1 | f2
            trace.record(1, w, f1, core, vertex_set, k)
        else:
            star = is_star_graph(link_graph)
            assert star.center is not None  # >= 6 pairwise-meeting pairs share a vertex
            cbit = bit(star.center)
            partner = None
            for t in pairs:
                if t & cbit and not (t & ~cbit) & core:
                    partner = t
                    break
            assert partner is not None  # complete star link leaves partners outside the 2-core
            f = w | partner
            if f not in edges:
                edges.append(f)
            core &= f
            vertex_set |= f
            trace.record(1, w, f, core, vertex_set, k)
    assert popcount(core) <= 1

    # Isolated-vertex padding: keeps every later (k-2)-selection inside the parts.
    part_size = (x + 3) // 4
    pad_target = max(k + x, (k - 2) + 4 * part_size + 1, popcount(vertex_set))
    vertex_set = fill_to_size(vertex_set, pad_target, p.full)
    phase1_cap = k + x + 2 * ((k + x - 1) // x) + 4
    assert popcount(vertex_set) <= phase1_cap
    phase1_vset = vertex_set

    # Phase 2: eliminate size-two covers missing the distinguished vertex.
    v = lowest_vertex(core) if core else lowest_vertex(e)
    others = vertex_set & ~bit(v)
    other_labels = labels(others)
    parts = [
        sum(bit(u) for u in other_labels[i : i + part_size])
        for i in range(0, len(other_labels), part_size)
    ]
    s = len(parts)
    trace.parameters["s"] = s
    cap3 = 4 * (k + x + 2 * ((k + x - 1) // x) + 3)
    assert s <= (cap3 + x - 1) // x  # s <= ceil(4(k+x+2*ceil(k/x)+3)/x)
    assert s * x <= 4 * k + 7 * x
    assert 2 * s + k - 1 < required  # the cover-count contradiction has room

    current = TracedFamily(p, tuple(sorted(edges)), vertex_set)
    cover_vertex: Optional[int] = None

    def entry_links(i: int, j: int) -> list[tuple[Mask, tuple[Mask, ...], Optional[int]]] | Violation:
        area = parts[i] | parts[j]
        out = []
        for r in range(s):
            if r in (i, j):
                continue
            for r2 in range(r + 1, s):
                if r2 in (i, j):
                    continue
                pool = others & ~(area | parts[r] | parts[r2])
                if popcount(pool) < k - 2:
                    raise InternalContradictionError("padding left no room for a base set")
                sel = smallest_subset(pool, k - 2)
                viol, pairs = _low_codegree_or_pairs(co, sel, required)
                if viol is not None:
                    return viol
                star = is_star_graph(PairGraph(p.full & ~sel, pairs))
                out.append((sel, pairs, star.center))
        return out

    done = False
    for i in range(s):
        if done:
            break
        for j in range(i + 1, s):
            area = parts[i] | parts[j]
            entries = entry_links(i, j)
            if isinstance(entries, Violation):
                trace.queries_used = co.queries
                return ShrinkK2Result(None, None, entries, trace)
            nonstar = [ent for ent in entries if ent[2] is None]
            if nonstar:
                sel, pairs, _ = nonstar[0]
                res = cherry_reduce(co, current, sel, area)
                assert not res.is_star_link
                assert res.reduced is not None
                current = res.reduced
                trace.record(2, sel, None, current.core, current.vertex_set, k)
                continue
            centers = [ent[2] for ent in entries]
            if len(set(centers)) > 1:
                first = entries[0]
                second = next(ent for ent in entries if ent[2] != first[2])
                added: list[Mask] = []
                for sel, pairs, w_center in (first, second):
                    wbit = bit(w_center)
                    pair_set = set(pairs)
                    for zbit in iter_bits(phase1_vset & ~(sel | wbit)):
                        pr = wbit | zbit
                        assert pr in pair_set  # complete star link carries every partner
                        added.append(sel | pr)
                current = current.add(added)
                trace.record(2, first[0], added[0], current.core, current.vertex_set, k)
                cov = covers_size2(current.family, area)
                allowed = bit(first[2]) | bit(second[2])
                assert all(pr == allowed for pr in cov.pairs)
                continue
            # all links are stars at one common vertex: finish globally
            w_center = centers[0]
            wbit = bit(w_center)
            added = []
            for sel, pairs, _ in entries:
                pair_set = set(pairs)
                for zbit in iter_bits(area & ~wbit):
                    pr = wbit | zbit
                    assert pr in pair_set
                    added.append(sel | pr)
            current = current.add(added)
            trace.record(2, entries[0][0], added[0], current.core, current.vertex_set, k)
            cover_vertex = w_center
            done = True
            break

    if cover_vertex is None:
        # Final consolidation: all part pairs reduced; one more query set
        # either hands every remaining cover the vertex v or refutes the input.
        cover_union = 0
        for i in range(s):
            for j in range(i + 1, s):
                cov = covers_size2(current.family, parts[i] | parts[j])
                assert is_subgraph_of_cherry(cov.pairs)
                for pr in cov.pairs:
                    cover_union |= pr
        assert popcount(cover_union) <= 3 * s * s
        pool = current.vertex_set & ~(cover_union | bit(v))
        if popcount(pool) < k - 2:
            grown = fill_to_size(current.vertex_set, popcount(current.vertex_set) + (k - 2 - popcount(pool)), p.full)
            current = TracedFamily(p, current.edges, grown)
            pool = current.vertex_set & ~(cover_union | bit(v))
        sel = smallest_subset(pool, k - 2)
        viol, pairs = _low_codegree_or_pairs(co, sel, required)
        if viol is not None:
            trace.queries_used = co.queries
            return ShrinkK2Result(None, None, viol, trace)
        star = is_star_graph(PairGraph(p.full & ~sel, pairs))
        if star.center == v:
            vbit = bit(v)
            pair_set = set(pairs)
            added = []
            for zbit in iter_bits(current.vertex_set & ~(sel | vbit)):
                pr = vbit | zbit
                assert pr in pair_set
                added.append(sel | pr)
            current = current.add(added)
            trace.record(2, sel, added[0], current.core, current.vertex_set, k)
            cover_vertex = v
        elif star.center is not None:
            # A star away from v caps the cover count below the degree floor.
            ubit = bit(star.center)
            pair_set = set(pairs)
            added = []
            for zbit in iter_bits(current.vertex_set & ~(sel | ubit)):
                pr = ubit | zbit
                if pr in pair_set:
                    added.append(sel | pr)
            ctx = current.add(added)
            trace.queries_used = co.queries
            return ShrinkK2Result(
                None, None, _refute_by_outside_query(co, ctx.edges, ctx.vertex_set, required), trace
            )
        else:
            res = cherry_reduce(co, current, sel, cover_union)
            assert res.reduced is not None
            current = res.reduced
            trace.record(2, sel, None, current.core, current.vertex_set, k)
            aux_union = 0
            if cover_union:
                for pr in covers_size2(current.family, cover_union).pairs:
                    aux_union |= pr
            pool2 = current.vertex_set & ~(aux_union | bit(v))
            if popcount(pool2) < k - 2:
                grown = fill_to_size(current.vertex_set, popcount(current.vertex_set) + (k - 2 - popcount(pool2)), p.full)
                current = TracedFamily(p, current.edges, grown)
                pool2 = current.vertex_set & ~(aux_union | bit(v))
            sel2 = smallest_subset(pool2, k - 2)
            viol, pairs2 = _low_codegree_or_pairs(co, sel2, required)
            if viol is not None:
                trace.queries_used = co.queries
                return ShrinkK2Result(None, None, viol, trace)
            off = next((t for t in pairs2 if not t & bit(v)), None)
            if off is not None:
                # An edge through sel2 avoiding v caps the covers at k + 2.
                ctx = current.add([sel2 | off])
                trace.queries_used = co.queries
                return ShrinkK2Result(
                    None, None, _refute_by_outside_query(co, ctx.edges, ctx.vertex_set, required), trace
                )
            if popcount(current.vertex_set & ~(sel2 | bit(v))) <= 3:
                raise InternalContradictionError(
                    "no room to extend past the consolidated query set"
                )
            vbit = bit(v)
            zbit = next(
                (zb for zb in iter_bits(p.full & ~(sel2 | vbit | aux_union)) if (vbit | zb) in set(pairs2)),
                None,
            )
            assert zbit is not None
            current = current.add([sel2 | vbit | zbit])
            trace.record(2, sel2, sel2 | vbit | zbit, current.core, current.vertex_set, k)
            cover_vertex = v

    # Lemma postconditions, re-verified exhaustively.
    assert popcount(current.vertex_set) <= shrink_vertex_bound_k2(k)
    cvbit = bit(cover_vertex)
    if current.core & ~cvbit:
        raise InternalContradictionError("construction left a stray core vertex")
    cov = covers_size2(current.family, current.vertex_set)
    for pr in cov.pairs:
        if not pr & cvbit:
            raise InternalContradictionError(
                f"size-two cover {labels(pr)} avoids the designated vertex {cover_vertex}"
            )
    if not e & cvbit:
        trace.queries_used = co.queries
        return ShrinkK2Result(
            None, None, _refute_by_outside_query(co, current.edges, current.vertex_set, required), trace
        )

    trace.final_vertex_set = current.vertex_set
    trace.queries_used = co.queries
    return ShrinkK2Result(current, cover_vertex, None, trace)


# ---------------------------------------------------------------------------
# star certification, codegree level k-1


def _gap_probe_k1(
    co: FamilyOracle, ctx_edges: Sequence[Mask], ctx_vset: Mask, window: Mask
) -> Violation:
    """Extract a witness from a context family with empty core.

    Any edge through a (k-1)-set outside window | V(ctx) meets the
    context in at most one vertex, which would have to cover all of it;
    an empty core forbids that, so the query either fails (ZeroCodegree)
    or hands back a disjoint edge pair.
    """
    p = co.params
    avail = p.full & ~(window | ctx_vset)
    if popcount(avail) < p.k - 1:
        raise InternalContradictionError("no room outside the window for a gap probe")
    w = smallest_subset(avail, p.k - 1)
    f = co.extension(w, 0)
    if f is None:
        return ZeroCodegree(w)
    hub = f & ~w
    for h in ctx_edges:
        if not h & hub:
            return DisjointEdges(h, f)
    raise InternalContradictionError("gap probe found a one-vertex cover of a coreless family")


def _missing_edge_probe_k1(
    co: FamilyOracle, ctx: TracedFamily, window: Mask, v: int, w: Mask
) -> Violation:
    """Witness from a (k-1)-set w in the window whose star edge is absent."""
    f = co.extension(w, 0)
    if f is None:
        return ZeroCodegree(w)
    if f & bit(v):
        raise InternalContradictionError(
            f"oracle returned the star edge {labels(f)} previously reported missing"
        )
    return _gap_probe_k1(co, tuple(ctx.edges) + (f,), ctx.vertex_set | f, window)


def _window_check_k1(
    co: FamilyOracle,
    ctx: TracedFamily,
    window: Mask,
    v: int,
    explicit: Optional[Family],
    rng: random.Random,
    spot: int,
) -> Optional[Violation]:
    """Verify the restriction to ``window`` is the complete star at ``v``.

    Exhaustive on explicit families; seeded spot checks on oracles.
    """
    if explicit is not None:
        sv = is_complete_star_on(explicit, window, v)
        if sv is None:
            return None
        if sv.kind == "offending":
            return _gap_probe_k1(co, tuple(ctx.edges) + (sv.edge,), ctx.vertex_set | sv.edge, window)
        return _missing_edge_probe_k1(co, ctx, window, v, sv.edge & ~bit(v))
    pool = _pool_bits(window & ~bit(v))
    k = co.params.k
    for _ in range(spot):
        w = _sample_subset(rng, pool, k - 1)
        if not co.contains(w | bit(v)):
            return _missing_edge_probe_k1(co, ctx, window, v, w)
    return None


def _distinct_centers_k1(
    co: FamilyOracle,
    ctx_x: TracedFamily,
    ctx_y: TracedFamily,
    window_x: Mask,
    window_y: Mask,
    v: int,
    v2: int,
) -> Violation:
    """Two windows certified with different centers force disjoint edges.

    If either claimed star edge turns out absent, that window's star
    claim was wrong and the missing-edge route applies instead.
    """
    p = co.params
    w1 = smallest_subset(window_x & ~(bit(v) | bit(v2)), p.k - 1)
    e1 = w1 | bit(v)
    w2 = smallest_subset(p.full & ~window_x & ~(bit(v) | bit(v2)), p.k - 1)
    e2 = w2 | bit(v2)
    assert not e1 & e2
    if not co.contains(e1):
        return _missing_edge_probe_k1(co, ctx_x, window_x, v, w1)
    if not co.contains(e2):
        return _missing_edge_probe_k1(co, ctx_y, window_y, v2, w2)
    return DisjointEdges(e1, e2)


def _final_check_k1(
    co: FamilyOracle,
    ctx: TracedFamily,
    window_x: Mask,
    window_y: Mask,
    v: int,
    explicit: Optional[Family],
    rng: random.Random,
    samples: int,
) -> Optional[Violation]:
    """Global star verification: exhaustive when explicit, sampled otherwise."""
    p = co.params
    vb = bit(v)

    def offending_violation(f: Mask) -> Violation:
        for window in (window_x, window_y):
            pool = window & ~(f | vb)
            if popcount(pool) >= p.k - 1:
                h = smallest_subset(pool, p.k - 1) | vb
                if co.contains(h):
                    return DisjointEdges(f, h)
        if explicit is not None:
            from .family import disjoint_pair
            from .oracles import min_degree

            pair = disjoint_pair(explicit)
            if pair is not None:
                return DisjointEdges(*pair)
            val, arg = min_degree(explicit, p.k - 1)
            if val == 0:
                return ZeroCodegree(arg)
        # the off-center edge itself is a checkable refutation of the star claim
        return NotStar(missing=None, offending=f)

    if explicit is not None:
        sv = is_complete_star_on(explicit, p.full, v)
        if sv is None:
            return None
        if sv.kind == "offending":
            return offending_violation(sv.edge)
        w = sv.edge & ~vb
        f = co.extension(w, 0)
        if f is None:
            return ZeroCodegree(w)
        return offending_violation(f)
    pool = _pool_bits(p.full & ~vb)
    for _ in range(samples):
        w = _sample_subset(rng, pool, p.k - 1)
        if co.contains(w | vb):
            continue
        f = co.extension(w, 0)
        if f is None:
            return ZeroCodegree(w)
        return offending_violation(f)
    return None


def certify_star_k1(
    source: FamilyOracle | Family,
    *,
    samples: int = SAMPLE_BUDGET,
    spot: int = SPOT_BUDGET,
    seed: int = 0,
) -> Certificate:
    """Certify that an intersecting family with minimum (k-1)-degree one
    is a complete star, or return a violation witness.

    Runs the two-window argument: shrink a core around a first edge,
    certify the restriction to a window of size n-k, repeat from an
    edge across the window, merge the two centers, then verify the
    star claim globally (exhaustively for explicit families, by seeded
    sampling for oracles).
    """
    oracle = _as_oracle(source)
    p = oracle.params
    n, k = p.n, p.k
    if k < 2:
        raise ValueError("k >= 2 required")
    need = certify_threshold_k1(k)
    if n < need:
        raise ValueError(f"certification at codegree k-1 requires n >= {need}, got n={n}")
    co = CountingOracle(oracle)
    explicit = oracle.family if isinstance(oracle, ExplicitOracle) else None
    rng = random.Random(seed)
    trace = ConstructionTrace()
    trace.parameters["seed"] = seed

    e0 = co.first_edge()
    if e0 is None:
        raise ValueError("the family is empty")

    def finish(center: Optional[int], violation: Optional[Violation]) -> Certificate:
        trace.queries_used = co.queries
        return Certificate(center, violation, trace)

    r1 = shrink_core_k1(co, e0)
    trace.steps.extend(r1.trace.steps)
    if not r1.ok:
        return finish(None, r1.violation)
    assert r1.subfamily is not None
    h1 = r1.subfamily
    window_x = fill_to_size(h1.vertex_set, n - k, p.full)
    core1 = h1.core
    if not core1:
        return finish(None, _gap_probe_k1(co, h1.edges, h1.vertex_set, window_x))
    v = lowest_vertex(core1)
    viol = _window_check_k1(co, h1, window_x, v, explicit, rng, spot)
    if viol is not None:
        return finish(None, viol)

    wb = smallest_subset(p.full & ~window_x, k - 1)
    g = wb | bit(v)
    if not co.contains(g):
        # Any extension of wb misses v, so it is disjoint from a window
        # star edge steered away from it.
        f = co.extension(wb, 0)
        if f is None:
            return finish(None, ZeroCodegree(wb))
        h = smallest_subset(window_x & ~(f | bit(v)), k - 1) | bit(v)
        assert not h & f
        if co.contains(h):
            return finish(None, DisjointEdges(f, h))
        return finish(None, _missing_edge_probe_k1(co, h1, window_x, v, h & ~bit(v)))
    r2 = shrink_core_k1(co, g)
    trace.steps.extend(r2.trace.steps)
    if not r2.ok:
        return finish(None, r2.violation)
    assert r2.subfamily is not None
    h2 = r2.subfamily
    stray = p.full & ~(window_x | h2.vertex_set)
    h2 = TracedFamily(p, h2.edges, h2.vertex_set | (stray & -stray if stray else 0))
    window_y = fill_to_size((p.full & ~window_x) | h2.vertex_set, n - k, p.full)
    assert window_x | window_y == p.full
    core2 = h2.core
    if not core2:
        return finish(None, _gap_probe_k1(co, h2.edges, h2.vertex_set, window_y))
    v2 = lowest_vertex(core2)
    viol = _window_check_k1(co, h2, window_y, v2, explicit, rng, spot)
    if viol is not None:
        return finish(None, viol)
    if v2 != v:
        return finish(None, _distinct_centers_k1(co, h1, h2, window_x, window_y, v, v2))

    # Propagation bookkeeping: the disjoint split of the window overlap
    # carries the star property across the whole ground set.
    ell = sqrt_term(k) - 1
    overlap = (window_x & window_y) & ~bit(v)
    assert popcount(overlap) == n - 2 * k - 1 and n - 2 * k >= ell + 3
    half = (popcount(overlap) + 1) // 2
    z1 = smallest_subset(overlap, half)
    z2 = overlap & ~z1
    x0 = (window_x & ~window_y) | z1
    y0 = (window_y & ~window_x) | z2
    assert not x0 & y0
    assert min(popcount(z1), popcount(z2)) >= (ell + 1) // 2 + 1
    assert min(popcount(x0), popcount(y0)) >= k + (ell + 1) // 2 + 1
    trace.parameters.update({"ell": ell, "Z1": z1, "Z2": z2, "X0": x0, "Y0": y0})

    viol = _final_check_k1(co, h1, window_x, window_y, v, explicit, rng, samples)
    if viol is not None:
        return finish(None, viol)
    trace.final_vertex_set = p.full
    return finish(v, None)


# ---------------------------------------------------------------------------
# star certification, codegree level k-2


def _offending_probe_k2(
    co: FamilyOracle, ctx: TracedFamily, f: Mask, v: int, required: int
) -> Violation:
    """Witness from an edge ``f`` avoiding the designated cover vertex.

    A (k-2)-set disjoint from both the context and ``f`` can only reach
    its guaranteed degree if some extension misses the context or
    misses ``f``; either miss is a disjoint edge pair.
    """
    p = co.params
    avail = p.full & ~(ctx.vertex_set | f | bit(v))
    if popcount(avail) < p.k - 2:
        from .family import disjoint_pair
        from .oracles import min_degree

        if isinstance(co, CountingOracle) and isinstance(co.inner, ExplicitOracle):
            fam = co.inner.family
            pair = disjoint_pair(fam)
            if pair is not None:
                return DisjointEdges(*pair)
            val, arg = min_degree(fam, p.k - 2)
            if val < required:
                return LowCodegree(arg, val, required)
        raise InternalContradictionError("no room for an outside probe against the off-center edge")
    w = smallest_subset(avail, p.k - 2)
    viol, pairs = _low_codegree_or_pairs(co, w, required)
    if viol is not None:
        return viol
    for t in pairs:
        g = w | t
        if not g & f:
            return DisjointEdges(g, f)
        for h in ctx.edges:
            if not g & h:
                return DisjointEdges(g, h)
    # the off-center edge itself is a checkable refutation of the star claim
    return NotStar(missing=None, offending=f)


def _missing_edge_probe_k2(
    co: FamilyOracle, ctx: TracedFamily, m: Mask, v: int, required: int
) -> Violation:
    """Witness from a star edge ``m`` (through v) reported absent."""
    sel = smallest_subset(m & ~bit(v), co.params.k - 2)
    viol, pairs = _low_codegree_or_pairs(co, sel, required)
    if viol is not None:
        return viol
    off = next((t for t in pairs if not t & bit(v)), None)
    if off is not None:
        return _offending_probe_k2(co, ctx, sel | off, v, required)
    raise InternalContradictionError(
        f"complete star link at {v} contradicts the missing edge {labels(m)}"
    )


def _window_check_k2(
    co: FamilyOracle,
    ctx: TracedFamily,
    window: Mask,
    v: int,
    explicit: Optional[Family],
    rng: random.Random,
    spot: int,
    required: int,
) -> Optional[Violation]:
    if explicit is not None:
        sv = is_complete_star_on(explicit, window, v)
        if sv is None:
            return None
        if sv.kind == "offending":
            return _offending_probe_k2(co, ctx, sv.edge, v, required)
        return _missing_edge_probe_k2(co, ctx, sv.edge, v, required)
    pool = _pool_bits(window & ~bit(v))
    k = co.params.k
    for _ in range(spot):
        w = _sample_subset(rng, pool, k - 1)
        if not co.contains(w | bit(v)):
            return _missing_edge_probe_k2(co, ctx, w | bit(v), v, required)
    return None


def _final_check_k2(
    co: FamilyOracle,
    ctx: TracedFamily,
    v: int,
    explicit: Optional[Family],
    rng: random.Random,
    samples: int,
    required: int,
) -> Optional[Violation]:
    p = co.params
    vb = bit(v)
    if explicit is not None:
        sv = is_complete_star_on(explicit, p.full, v)
        if sv is None:
            return None
        if sv.kind == "offending":
            return _offending_probe_k2(co, ctx, sv.edge, v, required)
        return _missing_edge_probe_k2(co, ctx, sv.edge, v, required)
    pool = _pool_bits(p.full & ~vb)
    zchoices = None
    for _ in range(samples):
        w = _sample_subset(rng, pool, p.k - 2)
        deg = co.degree(w)
        if deg < required:
            return LowCodegree(w, deg, required)
        if zchoices is None:
            zchoices = pool
        zb = rng.choice(zchoices)
        while zb & w:
            zb = rng.choice(zchoices)
        if not co.contains(w | vb | zb):
            return _missing_edge_probe_k2(co, ctx, w | vb | zb, v, required)
    return None


def certify_star_k2(
    source: FamilyOracle | Family,
    *,
    samples: int = SAMPLE_BUDGET,
    spot: int = SPOT_BUDGET,
    seed: int = 0,
) -> Certificate:
    """Certify that an intersecting family with minimum (k-2)-degree
    n-k+1 is a complete star, or return a violation witness.

    Shrinks a cover-concentrated subfamily around a first edge,
    certifies the window of size n-k around it, crosses to a second
    window through the leftover k vertices, merges the centers, and
    verifies the global star claim (exhaustive on explicit input,
    seeded sampling on oracles).
    """
    oracle = _as_oracle(source)
    p = oracle.params
    n, k = p.n, p.k
    if k < 3:
        raise ValueError("k >= 3 required")
    need = certify_threshold_k2(k)
    if n < need:
        raise ValueError(f"certification at codegree k-2 requires n >= {need}, got n={n}")
    assert certify_threshold_k2(k) - shrink_threshold_k2(k) == 2
    required = n - k + 1
    co = CountingOracle(oracle)
    explicit = oracle.family if isinstance(oracle, ExplicitOracle) else None
    rng = random.Random(seed)
    trace = ConstructionTrace()
    trace.parameters["seed"] = seed

    e0 = co.first_edge()
    if e0 is None:
        raise ValueError("the family is empty")

    def finish(center: Optional[int], violation: Optional[Violation]) -> Certificate:
        trace.queries_used = co.queries
        return Certificate(center, violation, trace)

    r1 = shrink_core_k2(co, e0)
    trace.steps.extend(r1.trace.steps)
    trace.parameters.update({k_: r1.trace.parameters[k_] for k_ in ("x", "s", "ell") if k_ in r1.trace.parameters})
    if not r1.ok:
        return finish(None, r1.violation)
    assert r1.subfamily is not None and r1.cover_vertex is not None
    f1, v = r1.subfamily, r1.cover_vertex
    assert popcount(f1.vertex_set) <= n - k - 2
    window_x = fill_to_size(f1.vertex_set, n - k, p.full)
    viol = _window_check_k2(co, f1, window_x, v, explicit, rng, spot, required)
    if viol is not None:
        return finish(None, viol)

    outside = p.full & ~window_x  # exactly k vertices
    w0 = smallest_subset(outside, k - 2)
    viol, pairs0 = _low_codegree_or_pairs(co, w0, required)
    if viol is not None:
        return finish(None, viol)
    vb = bit(v)
    for t in pairs0:
        if not t & vb:
            g = w0 | t
            partner = next((h for h in f1.edges if not h & g), None)
            if partner is None:
                raise InternalContradictionError(
                    "an off-center extension of the outside set covers the shrunken family"
                )
            return finish(None, DisjointEdges(g, partner))
    ubit = min(t & ~vb for t in pairs0)
    g = w0 | vb | ubit

    r2 = shrink_core_k2(co, g)
    trace.steps.extend(r2.trace.steps)
    if not r2.ok:
        return finish(None, r2.violation)
    assert r2.subfamily is not None and r2.cover_vertex is not None
    f2, v2 = r2.subfamily, r2.cover_vertex
    window_y = fill_to_size(outside | f2.vertex_set, n - k, p.full)
    assert window_x | window_y == p.full
    viol = _window_check_k2(co, f2, window_y, v2, explicit, rng, spot, required)
    if viol is not None:
        return finish(None, viol)
    if v2 != v:
        # Every extension of w0 goes through v, so a second window
        # centered elsewhere yields an explicit disjoint pair; an absent
        # star edge instead reopens that window's missing-edge route.
        e1 = smallest_subset(window_x & ~(vb | bit(v2)), k - 1) | vb
        e2pool = outside & ~bit(v2)
        e2 = smallest_subset(e2pool, k - 1) | bit(v2)
        assert not e1 & e2
        if not co.contains(e1):
            return finish(None, _missing_edge_probe_k2(co, f1, e1, v, required))
        if not co.contains(e2):
            return finish(None, _missing_edge_probe_k2(co, f2, e2, v2, required))
        return finish(None, DisjointEdges(e1, e2))

    ell = ell_param(k)
    overlap = (window_x & window_y) & ~vb
    assert popcount(overlap) == n - 2 * k - 1
    half = (popcount(overlap) + 1) // 2
    z1 = smallest_subset(overlap, half)
    z2 = overlap & ~z1
    x0 = (p.full & ~window_y) | z1
    y0 = (p.full & ~window_x) | z2
    c23 = ceil_cbrt_poly(1, 0, k)
    assert min(popcount(z1), popcount(z2)) >= c23
    assert min(popcount(x0), popcount(y0)) >= k + ell + 2
    assert not x0 & y0
    trace.parameters.update({"ell_cert": ell, "Z1": z1, "Z2": z2, "X0": x0, "Y0": y0})

    viol = _final_check_k2(co, f1, v, explicit, rng, samples, required)
    if viol is not None:
        return finish(None, viol)
    trace.final_vertex_set = p.full
    return finish(v, None)
