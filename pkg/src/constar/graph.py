"""Immutable undirected simple graphs.

Vertices are dense integers ``0..n-1``; adjacency is stored in CSR form
(per-vertex sorted neighbor lists) so the simulation hot path can index flat
arrays.  Graphs are immutable after construction and safe to share across
threads.  Any role a vertex plays (star center, leaf, ...) is carried by side
structures, never by the graph itself.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with CSR adjacency.

    Attributes:
        n: vertex count.
        edge_array: canonical ``(m, 2)`` int64 array, ``u < v`` per row, rows
            sorted lexicographically.
        indptr / indices: CSR adjacency; ``indices[indptr[v]:indptr[v+1]]``
            is the sorted neighbor list of ``v``.
    """

    n: int
    edge_array: np.ndarray
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edge_array)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        """Number of neighbors of ``v``."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor array of ``v`` (a read-only view)."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edge_array, other.edge_array)

    def __hash__(self) -> int:  # frozen dataclass would use fields; arrays aren't hashable
        return hash((self.n, self.m))


def build_graph(n: int, edges: Iterable[Sequence[int]] | np.ndarray) -> Graph:
    """Construct a validated Graph from ``n`` and an edge list.

    Rejects out-of-range endpoints, self-loops, and duplicate edges
    (regardless of orientation); the error message names the offending pair.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                   dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise ValueError("edges must be pairs of vertices")

    bad = (e < 0) | (e >= n)
    if bad.any():
        i = int(np.flatnonzero(bad.any(axis=1))[0])
        raise ValueError(f"edge ({e[i, 0]}, {e[i, 1]}): endpoint out of range for n={n}")
    loops = e[:, 0] == e[:, 1]
    if loops.any():
        i = int(np.flatnonzero(loops)[0])
        raise ValueError(f"edge ({e[i, 0]}, {e[i, 1]}): self-loop")

    canon = np.sort(e, axis=1)
    order = np.lexsort((canon[:, 1], canon[:, 0]))
    canon = canon[order]
    if len(canon) > 1:
        dup = (canon[1:] == canon[:-1]).all(axis=1)
        if dup.any():
            i = int(np.flatnonzero(dup)[0])
            raise ValueError(f"edge ({canon[i, 0]}, {canon[i, 1]}): duplicate edge")

    return _from_canonical(n, canon)


def _from_canonical(n: int, canon: np.ndarray) -> Graph:
    """Build CSR from a canonical (validated, u<v, sorted) edge array."""
    both = np.concatenate([canon, canon[:, ::-1]]) if len(canon) else canon.reshape(0, 2)
    deg = np.bincount(both[:, 0], minlength=n).astype(np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    order = np.lexsort((both[:, 1], both[:, 0]))
    indices = np.ascontiguousarray(both[order, 1], dtype=np.int32)
    for a in (canon, indptr, indices):
        a.setflags(write=False)
    return Graph(n=n, edge_array=canon, indptr=indptr, indices=indices)


def is_connected_subset(g: Graph, vs: Iterable[int]) -> bool:
    """True iff the subgraph induced by ``vs`` is connected.

    Singletons are connected; an empty set is an error.
    """
    vset = set(int(v) for v in vs)
    if not vset:
        raise ValueError("connectivity of the empty vertex set is undefined")
    for v in vset:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    start = next(iter(vset))
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in g.neighbors(v):
            w = int(w)
            if w in vset and w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == len(vset)


def save_edge_list(g: Graph, stream: TextIO | None = None) -> str:
    """Write the canonical edge-list text format; return it as a string.

    Format: first line ``"n m"``, then exactly m lines ``"u v"`` with
    ``u < v``, rows sorted, 0-indexed, newline-terminated ASCII.
    """
    parts = [f"{g.n} {g.m}\n"]
    parts.extend(f"{u} {v}\n" for u, v in g.edge_array)
    text = "".join(parts)
    if stream is not None:
        stream.write(text)
    return text


def load_edge_list(source: str | TextIO) -> Graph:
    """Parse the edge-list text format back into a Graph.

    Accepts edges in any orientation/order; construction canonicalizes.
    Raises ValueError on malformed lines, count mismatches, or any
    graph-invariant violation.
    """
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = stream.readline()
    fields = header.split()
    if len(fields) != 2:
        raise ValueError(f"malformed header line: {header!r}")
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise ValueError(f"malformed header line: {header!r}") from None
    edges = np.empty((m, 2), dtype=np.int64)
    for i in range(m):
        line = stream.readline()
        if not line:
            raise ValueError(f"edge count mismatch: expected {m} edges, file ended at {i}")
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"malformed edge line {i + 2}: {line!r}")
        try:
            edges[i, 0], edges[i, 1] = int(fields[0]), int(fields[1])
        except ValueError:
            raise ValueError(f"malformed edge line {i + 2}: {line!r}") from None
    extra = stream.readline()
    if extra.strip():
        raise ValueError(f"edge count mismatch: trailing content {extra!r}")
    return build_graph(n, edges)
