"""Combinatorial types of arrangements as canonical graph certificates.

Two arrangements have the same combinatorial type when some bijection of
their lines preserves the intersection form. With all self-intersections
fixed at -1 and no triple points, that is exactly isomorphism of the 0/1
intersection graph, so each type gets a canonical certificate string and
types compare by string equality.

The certificate comes from a small individualization-refinement search:
refine an ordered partition to equitability, branch on the first
non-singleton cell, and keep the lexicographically smallest adjacency
bitstring over the discrete partitions reached. Partial prefixes are pruned
against the current best, and discovered automorphisms prune sibling
branches. Graphs here have at most 27 vertices, which this handles in
milliseconds for typical cells and comfortably even for the full 27-line
graph with its 51840 automorphisms.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import invariants as _invariants
from .lines import LineSystem, build_line_system
from .orbits import OrbitRecord, lines_of_mask


@dataclass(frozen=True)
class IntersectionGraph:
    """Simple undirected graph; adjacency stored as per-vertex bitmasks."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal vertex count")
        for v, row in enumerate(self.adj):
            if row >> self.n:
                raise ValueError("adjacency bits out of range")
            if (row >> v) & 1:
                raise ValueError("no loops allowed")
        for v in range(self.n):
            for u in range(v):
                if ((self.adj[v] >> u) & 1) != ((self.adj[u] >> v) & 1):
                    raise ValueError("adjacency must be symmetric")


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> IntersectionGraph:
    adj = [0] * n
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"bad edge: {(a, b)}")
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return IntersectionGraph(n=n, adj=tuple(adj))


def intersection_graph(mask: int, ls: LineSystem | None = None) -> IntersectionGraph:
    """Graph on the lines of the arrangement, edge iff the lines meet.

    Vertex k is the k-th line of the arrangement in increasing number order.
    """
    ls = ls or build_line_system()
    lines = lines_of_mask(mask)
    n = len(lines)
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if ls.meet(lines[a], lines[b]) == 1:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return IntersectionGraph(n=n, adj=tuple(adj))


def relabel(g: IntersectionGraph, perm: Sequence[int]) -> IntersectionGraph:
    """Copy of g with vertex v renamed perm[v]."""
    adj = [0] * g.n
    for v in range(g.n):
        row = 0
        m = g.adj[v]
        while m:
            low = m & -m
            m ^= low
            row |= 1 << perm[low.bit_length() - 1]
        adj[perm[v]] = row
    return IntersectionGraph(n=g.n, adj=tuple(adj))


def _mask_of(cell: Iterable[int]) -> int:
    mask = 0
    for v in cell:
        mask |= 1 << v
    return mask


def _refine(adj: Sequence[int], cells: list[list[int]], seeds: Iterable[int]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Splits cells by neighbor counts against splitter masks, subcells ordered
    by count; a final sweep re-queues any splitter that still separates, so
    the result is equitable no matter which seeds started the queue. Only
    counts and cell positions drive the process, which keeps it equivariant
    under relabeling.
    """
    pending = deque(seeds)
    while True:
        while pending:
            s = pending.popleft()
            out: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                buckets: dict[int, list[int]] = {}
                for v in cell:
                    buckets.setdefault((adj[v] & s).bit_count(), []).append(v)
                if len(buckets) == 1:
                    out.append(cell)
                else:
                    for key in sorted(buckets):
                        part = buckets[key]
                        out.append(part)
                        pending.append(_mask_of(part))
            cells = out
        for splitter in cells:
            s = _mask_of(splitter)
            for cell in cells:
                if len(cell) > 1:
                    c0 = (adj[cell[0]] & s).bit_count()
                    if any((adj[v] & s).bit_count() != c0 for v in cell[1:]):
                        pending.append(s)
                        break
            if pending:
                break
        if not pending:
            return cells


def _is_automorphism(adj: Sequence[int], perm: Sequence[int]) -> bool:
    for v, row in enumerate(adj):
        image = 0
        m = row
        while m:
            low = m & -m
            m ^= low
            image |= 1 << perm[low.bit_length() - 1]
        if image != adj[perm[v]]:
            return False
    return True


def canonical_order(g: IntersectionGraph) -> tuple[int, ...]:
    """Vertex order realizing the lexicographically smallest adjacency string."""
    n, adj = g.n, g.adj
    if n == 0:
        return ()

    best_chunks: list[int] | None = None
    best_order: list[int] = []
    autos: list[tuple[int, ...]] = []

    def chunk_of(prefix: list[int], v: int) -> int:
        c = 0
        for u in prefix:
            c = (c << 1) | ((adj[v] >> u) & 1)
        return c

    def cmp_prefix(chunks: list[int]) -> int:
        if best_chunks is None:
            return -1
        for a, b in zip(chunks, best_chunks):
            if a != b:
                return -1 if a < b else 1
        return 0

    def same_orbit(v: int, explored: list[int], prefix: list[int]) -> bool:
        gens = [a for a in autos if all(a[x] == x for x in prefix)]
        if not gens:
            return False
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for a in gens:
                y = a[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return any(u in seen for u in explored)

    def search(cells: list[list[int]], order: list[int], chunks: list[int]) -> None:
        nonlocal best_chunks, best_order
        k = len(order)
        while k < len(cells) and len(cells[k]) == 1:
            v = cells[k][0]
            chunks = chunks + [chunk_of(order, v)]
            order = order + [v]
            k += 1
        c = cmp_prefix(chunks)
        if c > 0:
            return
        if k == len(cells):
            if c < 0:
                best_chunks = list(chunks)
                best_order = list(order)
            elif order != best_order:
                perm = [0] * n
                for pos in range(n):
                    perm[best_order[pos]] = order[pos]
                if not _is_automorphism(adj, perm):
                    raise AssertionError("equal leaf strings must give an automorphism")
                autos.append(tuple(perm))
            return
        target = cells[k]
        explored: list[int] = []
        for v in target:
            if cmp_prefix(chunks) > 0:
                return  # best improved under a sibling; this prefix is now dead
            if same_orbit(v, explored, order):
                continue
            rest = [x for x in target if x != v]
            child = cells[:k] + [[v], rest] + cells[k + 1 :]
            search(_refine(adj, child, [1 << v]), order, chunks)
            explored.append(v)

    initial = _refine(adj, [list(range(n))], [(1 << n) - 1])
    search(initial, [], [])
    return tuple(best_order)


def _packed_hex(adj: Sequence[int], order: Sequence[int]) -> str:
    """Upper-triangular adjacency bits in column-major order, packed MSB-first."""
    n = len(order)
    buf = bytearray((n * (n - 1) // 2 + 7) // 8)
    pos = 0
    for k in range(1, n):
        vk = order[k]
        for i in range(k):
            if (adj[order[i]] >> vk) & 1:
                buf[pos >> 3] |= 0x80 >> (pos & 7)
            pos += 1
    return buf.hex()


def canonical_certificate(g: IntersectionGraph) -> str:
    """Certificate string "<n>:<hex>"; equal certificates iff isomorphic graphs."""
    return f"{g.n}:{_packed_hex(g.adj, canonical_order(g))}"


@dataclass(frozen=True)
class TypeFiber:
    """Orbits sharing one combinatorial type, with their lattice invariants."""

    certificate: str
    members: tuple[OrbitRecord, ...]
    reports: tuple[_invariants.InvariantReport, ...]
    distinguished_by: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "certificate": self.certificate,
            "members": [list(r.min_rep) for r in self.members],
            "orbit_sizes": [r.orbit_size for r in self.members],
            "reports": [rep.as_dict() for rep in self.reports],
            "distinguished_by": list(self.distinguished_by),
            "is_zariski_tuple": len(self.members) > 1,
        }


def classify_types(
    records: Sequence[OrbitRecord],
    ls: LineSystem | None = None,
    certificates: Sequence[str] | None = None,
) -> dict[str, list[OrbitRecord]]:
    """Group orbits by combinatorial type, preserving record order.

    Precomputed certificates (aligned with records) can be passed to avoid
    recomputation when the caller already has them.
    """
    ls = ls or build_line_system()
    if certificates is None:
        certificates = [
            canonical_certificate(intersection_graph(r.mask, ls)) for r in records
        ]
    fibers: dict[str, list[OrbitRecord]] = {}
    for record, cert in zip(records, certificates):
        fibers.setdefault(cert, []).append(record)
    return fibers


_REPORT_FIELDS = ("span_rank", "perp_rank", "perp_parity", "h1_torsion", "h1_free_rank")


def find_zariski_pairs(
    records: Sequence[OrbitRecord],
    ls: LineSystem | None = None,
    certificates: Sequence[str] | None = None,
) -> list[TypeFiber]:
    """Fibers of size > 1 of the type map, with the invariants separating them.

    distinguished_by lists every report field that is not constant across the
    fiber; a genuine pair of distinct embeddings must have at least one.
    """
    ls = ls or build_line_system()
    fibers = classify_types(records, ls, certificates)
    out: list[TypeFiber] = []
    for cert, members in fibers.items():
        if len(members) < 2:
            continue
        reports = tuple(_invariants.invariant_report(r.mask, ls) for r in members)
        differing = tuple(
            name
            for name in _REPORT_FIELDS
            if len({getattr(rep, name) for rep in reports}) > 1
        )
        out.append(
            TypeFiber(
                certificate=cert,
                members=tuple(members),
                reports=reports,
                distinguished_by=differing,
            )
        )
    return out
