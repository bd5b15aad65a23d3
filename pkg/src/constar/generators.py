"""Seeded generators for every graph class used by the toolkit.

Deterministic constructions (stars, connected stars) and three scale-free
random models: Chung-Lu, threshold hyperbolic random graphs (HRG), and
threshold geometric inhomogeneous random graphs (GIRG).

Random models share the power-law weight kernel ``w_i = (n/i)^(1/(gamma-1))``
for ranks ``i = 1..n`` (vertex id ``v`` has rank ``v+1``, so low ids are
heavy).  All sampling is a pure function of ``(spec, seed)``: vertex
coordinates come from PCG64 substream 0 and edge coin flips from substream 1
(see ``rng.pcg_stream``), so edge decisions do not depend on iteration order.

The samplers avoid quadratic pair enumeration:

* Chung-Lu groups vertices into weight octaves and, per octave pair, draws
  candidate pair indices by geometric skips at the octave's maximum
  connection probability, then thins to the exact per-pair probability
  (within an octave weights differ by at most 2x, so at most ~4x of the
  expected edge count is ever touched).
* HRG buckets vertices into radial bands (width 1 outside the inner disk of
  radius R/2) and scans, per band pair, only the angular window that can
  possibly contain neighbors, using the monotonicity of the hyperbolic
  distance in the partner's radius.
* GIRG with dim=1 does the same with positional windows per weight octave;
  higher dimensions fall back to a chunked all-pairs scan (quadratic; fine at
  test scale, not meant for huge graphs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph, build_graph, _from_canonical
from .rng import pcg_stream
from .structure import StarFamily

_TWO_PI = 2.0 * math.pi

#: substream purposes
_COORDS = 0
_COINS = 1


@dataclass(frozen=True)
class GenSpec:
    """Generator configuration.

    model: star | disjointed-star | constar | chung-lu | hrg | girg.
    Deterministic models use (k, ell) and topology; random models use
    n, gamma (power-law exponent), avg_degree (hrg/girg), dim (girg), seed.
    """

    model: str
    n: int | None = None
    k: int | None = None
    ell: int | None = None
    gamma: float | None = None
    topology: str = "path"
    avg_degree: float = 10.0
    dim: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.model not in ("star", "disjointed-star", "constar",
                              "chung-lu", "hrg", "girg"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model in ("star", "disjointed-star", "constar"):
            if self.ell is None or self.ell < 1:
                raise ValueError("ell must be at least 1")
            if self.model != "star" and (self.k is None or self.k < 1):
                raise ValueError("k must be at least 1")
            if self.topology not in ("path", "clique"):
                raise ValueError(f"unknown center topology {self.topology!r}")
        else:
            if self.n is None or self.n < 2:
                raise ValueError("n must be at least 2")
            if self.gamma is None or not self.gamma > 2:
                raise ValueError("power-law exponent must exceed 2")
            if self.dim < 1:
                raise ValueError("torus dimension must be at least 1")


@dataclass(frozen=True)
class HrgCoords:
    """HRG side output: per-vertex polar coordinates and the disk geometry."""

    radii: np.ndarray
    angles: np.ndarray
    disk_radius: float
    alpha: float


@dataclass(frozen=True)
class GenResult:
    """A generated graph plus whatever side structures its model produces."""

    graph: Graph
    family: StarFamily | None = None
    center: int | None = None
    coords: HrgCoords | None = None
    weights: np.ndarray | None = None
    positions: np.ndarray | None = None


# ---------------------------------------------------------------------------
# deterministic constructions


def gen_star(ell: int) -> tuple[Graph, int]:
    """Star with ``ell`` leaves; returns (graph, center).  Center is vertex 0,
    leaves are 1..ell."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    edges = [(0, j) for j in range(1, ell + 1)]
    return build_graph(ell + 1, edges), 0


def gen_constar(k: int, ell: int, topology: str = "path") -> tuple[Graph, StarFamily]:
    """k disjoint stars with ell leaves each, centers wired as a path or
    clique.  Centers are vertices 0..k-1; leaves of star i are
    k + i*ell .. k + (i+1)*ell - 1."""
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be at least 1")
    if topology not in ("path", "clique"):
        raise ValueError(f"unknown center topology {topology!r}")
    edges = []
    leaves = []
    for i in range(k):
        first = k + i * ell
        mine = tuple(range(first, first + ell))
        leaves.append(mine)
        edges.extend((i, w) for w in mine)
    if topology == "path":
        edges.extend((i, i + 1) for i in range(k - 1))
    else:
        edges.extend((i, j) for i in range(k) for j in range(i + 1, k))
    g = build_graph(k * (ell + 1), edges)
    family = StarFamily(centers=tuple(range(k)), leaves=tuple(leaves),
                        centers_connected=k >= 1)
    return g, family


def gen_disjointed_star(k: int, ell: int) -> tuple[Graph, StarFamily]:
    """k disjoint stars with no center edges (centers_connected False for
    k > 1)."""
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be at least 1")
    edges = []
    leaves = []
    for i in range(k):
        first = k + i * ell
        mine = tuple(range(first, first + ell))
        leaves.append(mine)
        edges.extend((i, w) for w in mine)
    g = build_graph(k * (ell + 1), edges)
    family = StarFamily(centers=tuple(range(k)), leaves=tuple(leaves),
                        centers_connected=k == 1)
    return g, family


# ---------------------------------------------------------------------------
# shared power-law weight machinery


def chung_lu_weights(n: int, gamma: float) -> np.ndarray:
    """Power-law weight kernel w_i = (n/i)^(1/(gamma-1)), i = 1..n,
    assigned to vertex ids 0..n-1 (descending)."""
    i = np.arange(1, n + 1, dtype=np.float64)
    return (n / i) ** (1.0 / (gamma - 1.0))


def chung_lu_expected_degrees(weights: np.ndarray, scale: float) -> np.ndarray:
    """Exact min-capped expected degrees: for each u,
    sum over v != u of min(1, scale * w_u * w_v).

    O(n log n) via sorting and prefix sums.  ``scale`` is 1/W for Chung-Lu
    and 2^dim * tau / W for threshold GIRGs.
    """
    w = np.asarray(weights, dtype=np.float64)
    n = len(w)
    asc = np.sort(w)
    prefix = np.concatenate([[0.0], np.cumsum(asc)])
    total = prefix[-1]
    thresh = 1.0 / (scale * w)
    split = np.searchsorted(asc, thresh, side="left")
    n_capped = n - split
    sum_uncapped = prefix[split]
    self_capped = w >= thresh
    capped = n_capped - self_capped.astype(np.int64)
    uncapped = sum_uncapped - np.where(self_capped, 0.0, w)
    return capped + scale * w * uncapped


def _weight_octaves(w: np.ndarray) -> list[tuple[int, int]]:
    """Contiguous (start, end) ranges grouping a descending weight array by
    octave (factor-2 bands of weight)."""
    j = np.floor(np.log2(w[0] / w)).astype(np.int64)
    j = np.maximum(j, 0)
    bounds = np.flatnonzero(np.diff(j)) + 1
    starts = np.concatenate([[0], bounds])
    ends = np.concatenate([bounds, [len(w)]])
    return list(zip(starts.tolist(), ends.tolist()))


def _skip_indices(n_pairs: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Indices in [0, n_pairs) selected independently with probability p,
    via geometric gap sampling (never enumerates the index space)."""
    if n_pairs <= 0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(n_pairs, dtype=np.int64)
    if p <= 0.0:
        return np.empty(0, dtype=np.int64)
    ln_q = math.log1p(-p)
    chunks = []
    t = -1
    while True:
        m = int((n_pairs - 1 - t) * p * 1.2) + 16
        u = np.maximum(rng.random(m), 1e-300)
        gaps = np.floor(np.log(u) / ln_q).astype(np.int64) + 1
        pos = t + np.cumsum(gaps)
        inside = pos[pos < n_pairs]
        chunks.append(inside)
        if len(inside) < len(pos):
            break
        t = int(pos[-1])
        if t >= n_pairs - 1:
            break
    return np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)


def _tri_unflatten(t: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Map flat indices to (i, j) pairs, i < j < n, in lexicographic order."""
    rows = np.arange(n, dtype=np.int64)
    offsets = rows * n - rows * (rows + 1) // 2
    i = np.searchsorted(offsets, t, side="right") - 1
    j = t - offsets[i] + i + 1
    return i, j


def _pair_edges_for_octaves(w: np.ndarray, scale: float,
                            rng: np.random.Generator) -> np.ndarray:
    """All edges of the inhomogeneous Bernoulli model
    P(u~v) = min(1, scale * w_u * w_v), with w descending."""
    octaves = _weight_octaves(w)
    parts = []
    for ai, (a0, a1) in enumerate(octaves):
        for b0, b1 in octaves[ai:]:
            same = a0 == b0
            na, nb = a1 - a0, b1 - b0
            n_pairs = na * (na - 1) // 2 if same else na * nb
            if n_pairs == 0:
                continue
            p_max = min(1.0, scale * w[a0] * w[b0])
            idx = _skip_indices(n_pairs, p_max, rng)
            if len(idx) == 0:
                continue
            if same:
                i, j = _tri_unflatten(idx, na)
                uu, vv = a0 + i, a0 + j
            else:
                uu = a0 + idx // nb
                vv = b0 + idx % nb
            if p_max < 1.0:
                p = scale * w[uu] * w[vv]
                keep = rng.random(len(idx)) * p_max < p
            else:
                p = np.minimum(1.0, scale * w[uu] * w[vv])
                keep = rng.random(len(idx)) < p
            parts.append(np.stack([uu[keep], vv[keep]], axis=1))
    if not parts:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(parts)


def gen_chung_lu(n: int, gamma: float, seed: int) -> Graph:
    """Chung-Lu graph: each pair {u, v} is an edge independently with
    probability min(1, w_u * w_v / W), W the total weight.  Pairs whose
    weight product reaches W are connected with probability 1."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 2.0 < gamma <= 3.0:
        raise ValueError(f"power-law exponent {gamma} outside (2, 3]")
    w = chung_lu_weights(n, gamma)
    scale = 1.0 / w.sum()
    rng = pcg_stream(seed, _COINS)
    edges = _pair_edges_for_octaves(w, scale, rng)
    return _canonical_graph(n, edges)


def _canonical_graph(n: int, edges: np.ndarray) -> Graph:
    """Canonicalize (u<v, sorted, deduped) and build without re-validation.

    Duplicates can only arise from measure-zero coordinate ties in the
    window samplers, but unique() also produces the canonical order."""
    if len(edges) == 0:
        return build_graph(n, edges.reshape(0, 2))
    canon = np.unique(np.sort(edges, axis=1), axis=0)
    return _from_canonical(n, canon.astype(np.int64))


# ---------------------------------------------------------------------------
# circular window scans (shared by HRG and 1-d GIRG)


def _window_pairs(x_a: np.ndarray, ids_a: np.ndarray,
                  x_b: np.ndarray, ids_b: np.ndarray,
                  half_width: np.ndarray, period: float,
                  one_sided: bool) -> tuple[np.ndarray, np.ndarray]:
    """Candidate pairs (u from A, v from B) whose circular coordinate
    difference can be within ``half_width[u]``.

    ``x_b``/``ids_b`` must be sorted by coordinate.  With ``one_sided`` (for
    A == B) only partners at strictly larger coordinate are returned, so each
    unordered pair appears once.  Window edges are superset-safe: the caller
    applies the exact predicate afterwards.
    """
    nb = len(x_b)
    if nb == 0 or len(x_a) == 0:
        return (np.empty(0, dtype=np.int64),) * 2
    ext = np.concatenate([x_b, x_b + period])
    if one_sided:
        lo_q = x_a
        width = np.minimum(half_width, period)
        left = np.searchsorted(ext, lo_q, side="right")
    else:
        width = np.minimum(2.0 * half_width, period)
        lo_q = np.mod(x_a - half_width, period)
        left = np.searchsorted(ext, lo_q, side="left")
    right = np.searchsorted(ext, lo_q + width, side="left")
    counts = right - left
    total = int(counts.sum())
    if total == 0:
        return (np.empty(0, dtype=np.int64),) * 2
    start = np.repeat(np.cumsum(counts) - counts, counts)
    pos = np.arange(total) - start + np.repeat(left, counts)
    vv = ids_b[pos % nb]
    uu = np.repeat(ids_a, counts)
    return uu, vv


# ---------------------------------------------------------------------------
# hyperbolic random graphs


def hrg_disk_radius(n: int, gamma: float, avg_degree: float) -> tuple[float, float]:
    """(R, alpha) for a threshold HRG targeting the given average degree.

    alpha = (gamma-1)/2 and R = 2 ln n + C with C from the asymptotic mean
    degree of the model, avg_degree = (2 alpha^2 / (pi (alpha-1/2)^2)) e^(-C/2).
    Finite-size mean degrees run somewhat above the target; downstream checks
    use empirical counts.
    """
    if not 2.0 < gamma < 3.0:
        raise ValueError(f"power-law exponent {gamma} outside (2, 3)")
    if not avg_degree > 0:
        raise ValueError("average degree target must be positive")
    alpha = (gamma - 1.0) / 2.0
    coef = 2.0 * alpha ** 2 / (math.pi * (alpha - 0.5) ** 2)
    c_const = -2.0 * math.log(avg_degree / coef)
    return 2.0 * math.log(n) + c_const, alpha


def hyperbolic_cosh_distance(r1, theta1, r2, theta2):
    """cosh of the hyperbolic distance between polar points (vectorized)."""
    return (np.cosh(r1) * np.cosh(r2)
            - np.sinh(r1) * np.sinh(r2) * np.cos(theta1 - theta2))


def _hrg_angle_bound(r_u: np.ndarray, lo: float, cosh_r: float) -> np.ndarray:
    """Largest angle difference at which a vertex of radius >= lo can still
    be within hyperbolic distance R of each u (pi when unconstrained)."""
    denom = np.sinh(r_u) * math.sinh(lo)
    with np.errstate(divide="ignore", invalid="ignore"):
        k = (np.cosh(r_u) * math.cosh(lo) - cosh_r) / denom
    k = np.where(denom <= 0.0, -1.0, k)
    return np.arccos(np.clip(k, -1.0, 1.0))


def gen_hrg(n: int, gamma: float, avg_degree: float,
            seed: int) -> tuple[Graph, HrgCoords]:
    """Threshold hyperbolic random graph.

    Vertices get angles uniform on [0, 2 pi) and radii with density
    proportional to alpha * e^(alpha r) on [0, R] (inverse-CDF sampling);
    u ~ v iff their hyperbolic distance is at most R.  Vertices within
    radius R/2 of the origin are pairwise within distance R (central clique).
    Returns the graph and the coordinates as a side output.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    disk_r, alpha = hrg_disk_radius(n, gamma, avg_degree)
    if not disk_r > 0:
        raise ValueError("average degree target too large for this n")
    rng = pcg_stream(seed, _COORDS)
    angles = rng.random(n) * _TWO_PI
    u = rng.random(n)
    radii = np.log1p(u * math.expm1(alpha * disk_r)) / alpha

    cosh_r = math.cosh(disk_r)
    cosh_rad = np.cosh(radii)
    sinh_rad = np.sinh(radii)

    band_edges = [0.0, disk_r / 2.0]
    while band_edges[-1] + 1.0 < disk_r:
        band_edges.append(band_edges[-1] + 1.0)
    band_edges.append(np.inf)
    band_of = np.digitize(radii, band_edges) - 1
    n_bands = len(band_edges) - 1

    by_band: list[np.ndarray] = []
    for b in range(n_bands):
        ids = np.flatnonzero(band_of == b)
        ids = ids[np.argsort(angles[ids], kind="stable")]
        by_band.append(ids)

    parts = []
    for bi in range(n_bands):
        ids_a = by_band[bi]
        if len(ids_a) == 0:
            continue
        for bj in range(bi, n_bands):
            ids_b = by_band[bj]
            if len(ids_b) == 0:
                continue
            lo = band_edges[bj]
            theta_max = _hrg_angle_bound(radii[ids_a], lo, cosh_r)
            uu, vv = _window_pairs(angles[ids_a], ids_a,
                                   angles[ids_b], ids_b,
                                   theta_max, _TWO_PI, one_sided=bi == bj)
            if len(uu) == 0:
                continue
            d = (cosh_rad[uu] * cosh_rad[vv]
                 - sinh_rad[uu] * sinh_rad[vv] * np.cos(angles[uu] - angles[vv]))
            keep = d <= cosh_r
            parts.append(np.stack([uu[keep], vv[keep]], axis=1))
    edges = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    g = _canonical_graph(n, edges)
    return g, HrgCoords(radii=radii, angles=angles, disk_radius=disk_r, alpha=alpha)


# ---------------------------------------------------------------------------
# geometric inhomogeneous random graphs


@lru_cache(maxsize=8)
def girg_threshold(n: int, gamma: float, dim: int, avg_degree: float
                   ) -> tuple[np.ndarray, float]:
    """(weights, tau) with tau calibrated so the expected mean degree of the
    threshold GIRG matches the target.

    Connection rule: u ~ v iff max-norm torus distance^dim <= tau w_u w_v / W.
    Integrating out uniform positions gives the pair probability
    min(1, 2^dim tau w_u w_v / W), so tau solves a capped-sum equation
    (monotone; solved by bisection).
    """
    if not 2.0 < gamma < 3.0:
        raise ValueError(f"power-law exponent {gamma} outside (2, 3)")
    if not avg_degree > 0:
        raise ValueError("average degree target must be positive")
    if avg_degree >= n - 1:
        raise ValueError("average degree target must be below n-1")
    w = chung_lu_weights(n, gamma)
    asc = np.sort(w)
    prefix = np.concatenate([[0.0], np.cumsum(asc)])
    target = avg_degree * n

    def total(scale: float) -> float:
        thresh = 1.0 / (scale * w)
        split = np.searchsorted(asc, thresh, side="left")
        self_capped = w >= thresh
        capped = (len(w) - split) - self_capped.astype(np.int64)
        uncapped = prefix[split] - np.where(self_capped, 0.0, w)
        return float(capped.sum() + scale * (w * uncapped).sum())

    lo, hi = 0.0, 1.0
    while total(hi) < target:
        hi *= 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if total(mid) < target:
            lo = mid
        else:
            hi = mid
    scale = 0.5 * (lo + hi)
    tau = scale * w.sum() / 2.0 ** dim
    w.setflags(write=False)
    return w, tau


def _torus_dist_max(pos_a: np.ndarray, pos_b: np.ndarray) -> np.ndarray:
    """Max-norm torus distance between rows of pos_a and pos_b."""
    d = np.abs(pos_a - pos_b)
    return np.minimum(d, 1.0 - d).max(axis=-1)


def gen_girg(n: int, gamma: float, dim: int, avg_degree: float, seed: int) -> Graph:
    """Threshold GIRG: Chung-Lu weights, uniform positions on the
    dim-dimensional unit torus, edge iff dist^dim <= tau w_u w_v / W.

    Pairs with w_u w_v >= W / tau are adjacent regardless of position.  The
    edge set is deterministic given the sampled positions (threshold model);
    only substream 0 (coordinates) is consumed.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if dim < 1:
        raise ValueError("torus dimension must be at least 1")
    w, tau = girg_threshold(n, gamma, dim, avg_degree)
    big_w = w.sum()
    rng = pcg_stream(seed, _COORDS)
    positions = rng.random((n, dim))

    if dim == 1:
        edges = _girg_edges_1d(w, tau / big_w, positions[:, 0])
    else:
        edges = _girg_edges_bruteforce(w, tau / big_w, positions, dim)
    return _canonical_graph(n, edges)


def _girg_edges_1d(w: np.ndarray, coef: float, x: np.ndarray) -> np.ndarray:
    """Window scan per weight-octave pair (edge iff circular distance
    <= coef * w_u * w_v)."""
    octaves = _weight_octaves(w)
    parts = []
    for ai, (a0, a1) in enumerate(octaves):
        ids_a_all = np.arange(a0, a1)
        for b0, b1 in octaves[ai:]:
            ids_b = np.arange(b0, b1)
            order = np.argsort(x[ids_b], kind="stable")
            ids_b = ids_b[order]
            radius = np.minimum(coef * w[ids_a_all] * w[b0], 0.5)
            uu, vv = _window_pairs(x[ids_a_all], ids_a_all, x[ids_b], ids_b,
                                   radius, 1.0, one_sided=a0 == b0)
            if len(uu) == 0:
                continue
            d = np.abs(x[uu] - x[vv])
            d = np.minimum(d, 1.0 - d)
            keep = d <= coef * w[uu] * w[vv]
            parts.append(np.stack([uu[keep], vv[keep]], axis=1))
    if not parts:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(parts)


def _girg_edges_bruteforce(w: np.ndarray, coef: float, positions: np.ndarray,
                           dim: int, chunk: int = 256) -> np.ndarray:
    """Chunked all-pairs scan for dim >= 2 (quadratic; test-scale graphs)."""
    n = len(w)
    cols = np.arange(n)
    parts = []
    for s in range(0, n, chunk):
        e = min(s + chunk, n)
        rows = np.arange(s, e)
        dist = _torus_dist_max(positions[rows, None, :], positions[None, :, :])
        thresh = (coef * w[rows, None] * w[None, :]) ** (1.0 / dim)
        mask = (dist <= thresh) & (cols[None, :] > rows[:, None])
        uu, vv = np.nonzero(mask)
        parts.append(np.stack([rows[uu], cols[vv]], axis=1))
    if not parts:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(parts)


# ---------------------------------------------------------------------------
# dispatch


def generate(spec: GenSpec) -> GenResult:
    """Generate a graph (plus side structures) from a GenSpec."""
    if spec.model == "star":
        g, center = gen_star(spec.ell)
        family = StarFamily(centers=(center,),
                            leaves=(tuple(range(1, spec.ell + 1)),),
                            centers_connected=True)
        return GenResult(graph=g, family=family, center=center)
    if spec.model == "constar":
        g, family = gen_constar(spec.k, spec.ell, spec.topology)
        return GenResult(graph=g, family=family, center=family.centers[0])
    if spec.model == "disjointed-star":
        g, family = gen_disjointed_star(spec.k, spec.ell)
        return GenResult(graph=g, family=family, center=family.centers[0])
    if spec.model == "chung-lu":
        g = gen_chung_lu(spec.n, spec.gamma, spec.seed)
        return GenResult(graph=g, weights=chung_lu_weights(spec.n, spec.gamma))
    if spec.model == "hrg":
        g, coords = gen_hrg(spec.n, spec.gamma, spec.avg_degree, spec.seed)
        return GenResult(graph=g, coords=coords)
    g = gen_girg(spec.n, spec.gamma, spec.dim, spec.avg_degree, spec.seed)
    w, _ = girg_threshold(spec.n, spec.gamma, spec.dim, spec.avg_degree)
    return GenResult(graph=g, weights=w)
