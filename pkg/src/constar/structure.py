"""Star-substructure detection and extraction.

A (k x l)-star family is k vertex-disjoint stars with l leaves each; it is a
connected star family when the centers induce a connected subgraph.  The
extractor implements the greedy construction whose guarantee is: if a graph
has k vertices of degree at least d, extraction with l = floor(d/k) - 1
succeeds.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, is_connected_subset


@dataclass(frozen=True)
class StarFamily:
    """k disjoint stars: ordered centers, per-center leaf lists, and a
    verified centers-connected flag."""

    centers: tuple[int, ...]
    leaves: tuple[tuple[int, ...], ...]
    centers_connected: bool

    def __post_init__(self):
        if len(self.centers) != len(self.leaves):
            raise ValueError("centers and leaf lists must have equal length")

    @property
    def k(self) -> int:
        return len(self.centers)

    @property
    def ell(self) -> int:
        return len(self.leaves[0]) if self.leaves else 0

    def vertices(self) -> list[int]:
        out = list(self.centers)
        for ls in self.leaves:
            out.extend(ls)
        return out

    def to_json(self) -> str:
        return json.dumps({"centers": list(self.centers),
                           "leaves": [list(ls) for ls in self.leaves],
                           "centers_connected": self.centers_connected})

    @classmethod
    def from_json(cls, text: str) -> "StarFamily":
        d = json.loads(text)
        return cls(centers=tuple(int(c) for c in d["centers"]),
                   leaves=tuple(tuple(int(x) for x in ls) for ls in d["leaves"]),
                   centers_connected=bool(d["centers_connected"]))


@dataclass(frozen=True)
class FamilyReport:
    """verify_star_family result; the family is a valid connected-star
    family iff all four flags hold."""

    vertices_distinct: bool
    leaves_adjacent: bool
    sizes_match: bool
    centers_connected: bool

    @property
    def valid_constar(self) -> bool:
        return (self.vertices_distinct and self.leaves_adjacent
                and self.sizes_match and self.centers_connected)


@dataclass(frozen=True)
class ExtractionResult:
    """Greedy extraction outcome: a family, or the first center that ran out
    of free neighbors."""

    family: StarFamily | None
    failed_center: int | None = None

    @property
    def ok(self) -> bool:
        return self.family is not None


def count_high_degree(g: Graph, d: int) -> int:
    """Number of vertices with degree at least ``d``."""
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    return int((g.degrees >= d).sum())


def extract_disjointed_star(g: Graph, k: int, ell: int) -> ExtractionResult:
    """Greedily extract k disjoint stars with ell leaves each.

    Centers are the k highest-degree vertices (ties by ascending id).  In
    center order, each center claims its ell smallest-id neighbors that are
    not centers and not already claimed.  Failure (not an exception) reports
    the first center without enough free neighbors.
    """
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be at least 1")
    if k > g.n:
        return ExtractionResult(family=None, failed_center=None)
    deg = g.degrees
    order = np.lexsort((np.arange(g.n), -deg))
    centers = [int(v) for v in order[:k]]
    used = set(centers)
    leaves: list[tuple[int, ...]] = []
    for c in centers:
        mine = []
        for w in g.neighbors(c):
            w = int(w)
            if w not in used:
                mine.append(w)
                if len(mine) == ell:
                    break
        if len(mine) < ell:
            return ExtractionResult(family=None, failed_center=c)
        used.update(mine)
        leaves.append(tuple(mine))
    connected = is_connected_subset(g, centers) if centers else False
    family = StarFamily(centers=tuple(centers), leaves=tuple(leaves),
                        centers_connected=connected)
    return ExtractionResult(family=family)


def verify_star_family(g: Graph, family: StarFamily) -> FamilyReport:
    """Check distinctness, adjacency, rectangular sizes, and center
    connectivity of a family against its host graph."""
    verts = family.vertices()
    vertices_distinct = len(verts) == len(set(verts)) and all(
        0 <= v < g.n for v in verts)
    sizes_match = len({len(ls) for ls in family.leaves}) <= 1
    leaves_adjacent = all(
        g.has_edge(c, int(w))
        for c, ls in zip(family.centers, family.leaves) for w in ls
    ) if vertices_distinct else False
    centers_connected = (len(family.centers) > 0
                         and all(0 <= c < g.n for c in family.centers)
                         and is_connected_subset(g, family.centers))
    return FamilyReport(vertices_distinct=vertices_distinct,
                        leaves_adjacent=leaves_adjacent,
                        sizes_match=sizes_match,
                        centers_connected=centers_connected)


def predicted_star_size(n: int, gamma: float, c: float = 1.0) -> tuple[int, int]:
    """Asymptotic family size for scale-free graphs.

    k = floor(ln(n)^2), ell = floor((c*n / ln(n)^(2*gamma))^(1/(gamma-1))).
    The constant ``c`` is a calibration parameter (the asymptotic statement
    fixes none); at desk scale the formula mostly documents how small the
    guaranteed ell is.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if not gamma > 2:
        raise ValueError("power-law exponent must exceed 2")
    if not c > 0:
        raise ValueError("calibration constant must be positive")
    ln = math.log(n)
    k = int(ln * ln)
    ell = int((c * n / ln ** (2 * gamma)) ** (1.0 / (gamma - 1)))
    return k, ell
