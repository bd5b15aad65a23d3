"""Batch experiment harness: survival estimation, probes, sweeps, CSV I/O.

Censoring: a replica that reaches the time cap reports the cap as its
survival time and is flagged; means/medians of uncensored values exclude
such rows, and medians "with censoring" treat them as lower bounds at the
cap.  Replica seeds are ``mix64(base_seed, arm_id, replica_index)``
(SplitMix64 chain, see ``rng``) and are recorded per row, so any single
replica can be reproduced in isolation.  Outputs are byte-deterministic
functions of the configuration: replicas may run on a thread pool, but rows
are emitted in replica order and each replica owns its seed.
"""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence, TextIO

import numpy as np

from . import engine
from .activity import ActivationConstants, activation_constants, meta_summary, track
from .engine import SirsParams, SirsState, SirsTrace
from .generators import GenSpec, GenResult, gen_constar, generate
from .graph import Graph, load_edge_list
from .rng import mix64
from .structure import StarFamily

#: arm ids for seed mixing
ARM_DEFAULT = 0


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class InitRule:
    """Initial-state rule: one vertex starts infected, everything else
    susceptible.  kind: highest-degree | vertex | star-center."""

    kind: str
    vertex: int | None = None

    def __post_init__(self):
        if self.kind not in ("highest-degree", "vertex", "star-center"):
            raise ValueError(f"unknown init rule {self.kind!r}")
        if self.kind == "vertex" and self.vertex is None:
            raise ValueError("vertex init rule needs a vertex id")

    def resolve(self, g: Graph, family: StarFamily | None) -> SirsState:
        if self.kind == "highest-degree":
            order = np.lexsort((np.arange(g.n), -g.degrees))
            v = int(order[0])
        elif self.kind == "vertex":
            if not 0 <= self.vertex < g.n:
                raise ValueError(f"init vertex {self.vertex} out of range")
            v = self.vertex
        else:
            if family is None:
                raise ValueError("star-center init rule needs a star family")
            v = int(family.centers[0])
        return SirsState(n=g.n, infected=frozenset([v]))


@dataclass(frozen=True)
class ExperimentConfig:
    """Survival-estimation / sweep configuration (mirrors the JSON schema)."""

    params: SirsParams
    init: InitRule
    replicas: int
    cap: float
    seed: int
    graph_path: str | None = None
    genspec: GenSpec | None = None
    family_path: str | None = None
    lambda_grid: tuple[float, ...] | None = None
    workers: int = 1
    out_prefix: str | None = None

    def __post_init__(self):
        if self.replicas < 1:
            raise ValueError("replicas must be at least 1")
        if not self.cap > 0:
            raise ValueError("cap must be positive")
        if (self.graph_path is None) == (self.genspec is None):
            raise ValueError("exactly one of graph_path and genspec is required")
        if self.lambda_grid is not None:
            grid = tuple(self.lambda_grid)
            if list(grid) != sorted(grid):
                raise ValueError("lambda grid must be sorted ascending")
            object.__setattr__(self, "lambda_grid", grid)

    def to_json(self) -> str:
        d: dict = {
            "lambda": self.params.lam, "rho": self.params.rho,
            "mode": self.params.mode,
            "init": ({"vertex": self.init.vertex} if self.init.kind == "vertex"
                     else self.init.kind),
            "replicas": self.replicas, "cap": self.cap, "seed": self.seed,
            "workers": self.workers,
        }
        if self.graph_path is not None:
            d["graph"] = self.graph_path
        if self.genspec is not None:
            spec = {k: v for k, v in vars(self.genspec).items() if v is not None}
            d["generator"] = spec
        if self.family_path is not None:
            d["family"] = self.family_path
        if self.lambda_grid is not None:
            d["lambda_grid"] = list(self.lambda_grid)
        if self.out_prefix is not None:
            d["out"] = self.out_prefix
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        d = json.loads(text)
        init_raw = d.get("init", "highest-degree")
        if isinstance(init_raw, dict):
            init = InitRule(kind="vertex", vertex=int(init_raw["vertex"]))
        else:
            init = InitRule(kind=init_raw)
        genspec = GenSpec(**d["generator"]) if "generator" in d else None
        grid = tuple(d["lambda_grid"]) if "lambda_grid" in d else None
        return cls(
            params=SirsParams(lam=d["lambda"], rho=d.get("rho", 1.0),
                              mode=d.get("mode", "SIRS")),
            init=init, replicas=int(d["replicas"]), cap=float(d["cap"]),
            seed=int(d["seed"]), graph_path=d.get("graph"), genspec=genspec,
            family_path=d.get("family"), lambda_grid=grid,
            workers=int(d.get("workers", 1)), out_prefix=d.get("out"))


def resolve_graph(cfg: ExperimentConfig) -> tuple[Graph, StarFamily | None]:
    """Materialize the config's graph and star family (if any)."""
    if cfg.graph_path is not None:
        with open(cfg.graph_path) as fh:
            g = load_edge_list(fh)
        family = None
    else:
        result: GenResult = generate(cfg.genspec)
        g, family = result.graph, result.family
    if cfg.family_path is not None:
        with open(cfg.family_path) as fh:
            family = StarFamily.from_json(fh.read())
    return g, family


# ---------------------------------------------------------------------------
# survival estimation


@dataclass(frozen=True)
class SurvivalRow:
    replica: int
    seed: int
    time: float
    censored: bool
    events: int
    activations: int | None = None
    max_active: int | None = None


@dataclass(frozen=True)
class SurvivalStats:
    """Per-replica rows plus the cap they were censored at.  Aggregates are
    recomputed from rows (censored rows never enter means/medians of
    uncensored values but count toward the censoring fraction)."""

    rows: tuple[SurvivalRow, ...]
    cap: float

    @property
    def times(self) -> np.ndarray:
        return np.array([r.time for r in self.rows])

    @property
    def censored_mask(self) -> np.ndarray:
        return np.array([r.censored for r in self.rows], dtype=bool)

    @property
    def censored_fraction(self) -> float:
        return float(self.censored_mask.mean())

    @property
    def mean_uncensored(self) -> float:
        t = self.times[~self.censored_mask]
        return float(t.mean()) if len(t) else math.nan

    @property
    def median_uncensored(self) -> float:
        t = self.times[~self.censored_mask]
        return float(np.median(t)) if len(t) else math.nan

    @property
    def stderr_uncensored(self) -> float:
        t = self.times[~self.censored_mask]
        return float(t.std(ddof=1) / math.sqrt(len(t))) if len(t) > 1 else math.nan

    @property
    def median_with_censoring(self) -> float:
        """Median over all rows with censored rows at the cap; a lower bound
        on the true median whenever it equals the cap."""
        return float(np.median(self.times))


def replica_seeds(base_seed: int, arm: int, replicas: int) -> np.ndarray:
    """uint64 seeds mix64(base, arm, i) for i in 0..replicas-1."""
    return np.array([mix64(base_seed, arm, i) for i in range(replicas)],
                    dtype=np.uint64)


def _run_batches(g: Graph, params: SirsParams, init_state: SirsState,
                 cap: float, seeds: np.ndarray, workers: int):
    """sample_survival_times over a thread pool, rows in seed order."""
    if workers <= 1 or len(seeds) < 2 * workers:
        return engine.sample_survival_times(g, params, init_state, cap, seeds)
    chunks = np.array_split(seeds, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(
            lambda s: engine.sample_survival_times(g, params, init_state, cap, s),
            chunks))
    times = np.concatenate([r[0] for r in results])
    cens = np.concatenate([r[1] for r in results])
    events = np.concatenate([r[2] for r in results])
    return times, cens, events


def _run_with_meta(g: Graph, params: SirsParams, init_state: SirsState,
                   cap: float, seeds: np.ndarray, family: StarFamily,
                   consts: ActivationConstants, workers: int
                   ) -> list[SurvivalRow]:
    def one(args):
        i, seed = args
        trace = engine.simulate(g, params, init_state, cap, int(seed))
        summary = meta_summary(track(trace, family, consts))
        return SurvivalRow(replica=i, seed=int(seed),
                           time=trace.outcome.time,
                           censored=not trace.outcome.extinct,
                           events=trace.event_count,
                           activations=summary.activation_count,
                           max_active=summary.max_active)

    items = list(enumerate(int(s) for s in seeds))
    if workers <= 1:
        return [one(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, items))


def estimate_survival(cfg: ExperimentConfig, arm: int = ARM_DEFAULT) -> SurvivalStats:
    """Monte-Carlo survival estimate for one configuration."""
    g, family = resolve_graph(cfg)
    init_state = cfg.init.resolve(g, family)
    seeds = replica_seeds(cfg.seed, arm, cfg.replicas)
    if family is not None:
        rho = 1.0 if cfg.params.sis else cfg.params.rho
        consts = activation_constants(max(family.ell, 1), cfg.params.lam, rho)
        rows = _run_with_meta(g, cfg.params, init_state, cfg.cap, seeds,
                              family, consts, cfg.workers)
    else:
        times, cens, events = _run_batches(g, cfg.params, init_state, cfg.cap,
                                           seeds, cfg.workers)
        rows = [SurvivalRow(replica=i, seed=int(seeds[i]), time=float(times[i]),
                            censored=bool(cens[i]), events=int(events[i]))
                for i in range(cfg.replicas)]
    return SurvivalStats(rows=tuple(rows), cap=cfg.cap)


def stats_to_csv(stats: SurvivalStats, stream: TextIO | None = None) -> str:
    """Experiment CSV: replica,seed,survival_time,censored,events,activations,max_active."""
    out = ["replica,seed,survival_time,censored,events,activations,max_active\n"]
    for r in stats.rows:
        act = "" if r.activations is None else str(r.activations)
        mx = "" if r.max_active is None else str(r.max_active)
        out.append(f"{r.replica},{r.seed},{r.time!r},{int(r.censored)},"
                   f"{r.events},{act},{mx}\n")
    text = "".join(out)
    if stream is not None:
        stream.write(text)
    return text


def stats_from_csv(source: str | TextIO, cap: float) -> SurvivalStats:
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = stream.readline().strip()
    if header != "replica,seed,survival_time,censored,events,activations,max_active":
        raise ValueError(f"unexpected header: {header!r}")
    rows = []
    for line in stream:
        line = line.strip()
        if not line:
            continue
        rep, seed, t, cens, ev, act, mx = line.split(",")
        rows.append(SurvivalRow(
            replica=int(rep), seed=int(seed), time=float(t),
            censored=bool(int(cens)), events=int(ev),
            activations=int(act) if act else None,
            max_active=int(mx) if mx else None))
    return SurvivalStats(rows=tuple(rows), cap=cap)


# ---------------------------------------------------------------------------
# lambda sweep


@dataclass(frozen=True)
class SweepResult:
    """Raw per-lambda stats plus the censoring-threshold crossing: the
    smallest grid lambda whose censoring fraction exceeds 1/2 at the fixed
    cap (a finite-size proxy: the epidemic threshold itself is an
    asymptotic object).  None when the grid never crosses."""

    lambdas: tuple[float, ...]
    stats: tuple[SurvivalStats, ...]
    crossing: float | None


def lambda_sweep(cfg: ExperimentConfig) -> SweepResult:
    """Survival stats per grid lambda (shared replica seeds across the grid,
    arm 0), with the empirical-threshold crossing estimate."""
    if not cfg.lambda_grid:
        raise ValueError("sweep needs a lambda grid")
    all_stats = []
    crossing = None
    for lam in cfg.lambda_grid:
        sub = replace(cfg, params=replace(cfg.params, lam=lam), lambda_grid=None)
        st = estimate_survival(sub)
        all_stats.append(st)
        if crossing is None and st.censored_fraction > 0.5:
            crossing = lam
    return SweepResult(lambdas=tuple(cfg.lambda_grid), stats=tuple(all_stats),
                       crossing=crossing)


# ---------------------------------------------------------------------------
# probe: phase extinction scaling


@dataclass(frozen=True)
class PhaseRow:
    ell: int
    lam: float
    replicas: int
    phases: int
    extinctions: int

    @property
    def p_hat(self) -> float:
        return self.extinctions / self.phases


@dataclass(frozen=True)
class PhaseProbeResult:
    rows: tuple[PhaseRow, ...]
    slope: float  # of ln p_hat against ln(lam^2 ell)


def count_phases(trace: SirsTrace, center: int, leaves: Sequence[int],
                 threshold: float) -> int:
    """Number of phases in a single-star run.

    A phase starts whenever no phase is ongoing and the infected-leaf count
    is below ``threshold``; it ends at the first center recovery after the
    count exceeded ``threshold`` within the phase.  Extinction during a
    phase ends it (counted).
    """
    leaf_mask = np.zeros(trace.n, dtype=bool)
    leaf_mask[np.asarray(leaves, dtype=np.int64)] = True
    ev_leaf = leaf_mask[trace.vertices]
    delta = np.where(trace.kinds == engine.KIND_INFECT, 1,
                     np.where(trace.kinds == engine.KIND_RECOVER, -1, 0))
    init_count = int((trace.initial[leaf_mask] == 1).sum())
    counts = init_count + np.cumsum(np.where(ev_leaf, delta, 0))
    below0 = init_count < threshold
    above0 = init_count > threshold
    below = counts < threshold
    above = counts > threshold
    center_rec = ((trace.kinds == engine.KIND_RECOVER)
                  & (trace.vertices == center))
    interesting = center_rec.copy()
    if len(below) > 1:
        interesting[1:] |= below[1:] != below[:-1]
        interesting[1:] |= above[1:] != above[:-1]
    if len(below) > 0:
        interesting[0] |= (below[0] != below0) | (above[0] != above0)

    phases = 0
    in_phase = bool(below0)
    exceeded = False
    for i in np.flatnonzero(interesting):
        if center_rec[i] and in_phase and exceeded:
            phases += 1
            in_phase = False
            exceeded = False
        if not in_phase and below[i]:
            in_phase = True
            exceeded = False
        if in_phase and above[i]:
            exceeded = True
    if trace.outcome.extinct and in_phase:
        phases += 1
    return phases


def check_lambda_regime(ells: Sequence[int], lams: Sequence[float]) -> None:
    """Reject grids outside the single-star survival regime: every lambda in
    (0, 1], ell >= 2, and lambda * sqrt(ell) nondecreasing along the grid
    (the rule must dominate ell^(-1/2))."""
    if len(ells) != len(lams):
        raise ValueError("ell grid and lambda grid must have equal length")
    prev = 0.0
    for ell, lam in zip(ells, lams):
        if ell < 2:
            raise ValueError(f"ell={ell} is degenerate for a star probe")
        if not 0 < lam <= 1:
            raise ValueError(f"lambda={lam} outside (0, 1] at ell={ell}")
        scaled = lam * math.sqrt(ell)
        if scaled < prev:
            raise ValueError("lambda rule decays faster than ell^(-1/2)")
        prev = scaled


def probe_phase_extinction(ells: Sequence[int],
                           lam_rule: Callable[[int], float] | Sequence[float],
                           rho: float, eps: float, replicas: int, seed: int,
                           cap: float = 1e6, workers: int = 1) -> PhaseProbeResult:
    """Estimate the per-phase extinction probability on single stars.

    Each replica starts activated (center plus m* leaves infected) and runs
    to extinction; p_hat per ell is extinctions/total phases.  Returns the
    log-log regression slope of p_hat against lam^2 ell.
    """
    ells = [int(e) for e in ells]
    lams = ([float(lam_rule(e)) for e in ells] if callable(lam_rule)
            else [float(x) for x in lam_rule])
    check_lambda_regime(ells, lams)
    if len(ells) < 3:
        raise ValueError("need at least 3 grid points for a regression")

    rows = []
    for arm, (ell, lam) in enumerate(zip(ells, lams)):
        g, center = _star_graph(ell)
        consts = activation_constants(ell, lam, rho, eps)
        infected = frozenset([center] + list(range(1, consts.m_star + 1)))
        init = SirsState(n=ell + 1, infected=infected)
        params = SirsParams(lam=lam, rho=rho)
        seeds = replica_seeds(seed, arm, replicas)

        def one(s: int) -> tuple[int, bool]:
            trace = engine.simulate(g, params, init, cap, s)
            ph = count_phases(trace, center, range(1, ell + 1),
                              consts.raw_threshold)
            return ph, trace.outcome.extinct

        if workers <= 1:
            results = [one(int(s)) for s in seeds]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(one, [int(s) for s in seeds]))
        phases = sum(ph for ph, _ in results)
        ext = sum(1 for _, e in results if e)
        rows.append(PhaseRow(ell=ell, lam=lam, replicas=replicas,
                             phases=phases, extinctions=ext))
    xs = np.log([r.lam ** 2 * r.ell for r in rows])
    ys = np.log([r.p_hat for r in rows])
    slope = float(np.polyfit(xs, ys, 1)[0])
    return PhaseProbeResult(rows=tuple(rows), slope=slope)


def _star_graph(ell: int):
    from .generators import gen_star
    return gen_star(ell)


def phase_rows_to_csv(result: PhaseProbeResult, stream: TextIO | None = None) -> str:
    out = ["ell,lambda,replicas,phases,extinctions,p_hat\n"]
    for r in result.rows:
        out.append(f"{r.ell},{r.lam!r},{r.replicas},{r.phases},"
                   f"{r.extinctions},{r.p_hat!r}\n")
    out.append(f"# slope,{result.slope!r}\n")
    text = "".join(out)
    if stream is not None:
        stream.write(text)
    return text


def phase_rows_from_csv(source: str | TextIO) -> PhaseProbeResult:
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = stream.readline().strip()
    if header != "ell,lambda,replicas,phases,extinctions,p_hat":
        raise ValueError(f"unexpected header: {header!r}")
    rows = []
    slope = math.nan
    for line in stream:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            slope = float(line.split(",")[1])
            continue
        ell, lam, rep, ph, ext, _ = line.split(",")
        rows.append(PhaseRow(ell=int(ell), lam=float(lam), replicas=int(rep),
                             phases=int(ph), extinctions=int(ext)))
    return PhaseProbeResult(rows=tuple(rows), slope=slope)


# ---------------------------------------------------------------------------
# probe: activation probability


@dataclass(frozen=True)
class ActivationRow:
    lam: float
    window: int
    replicas: int
    activations: int

    @property
    def q_hat(self) -> float:
        return self.activations / self.replicas

    @property
    def ratio(self) -> float:
        return self.q_hat / self.lam


@dataclass(frozen=True)
class ActivationProbeResult:
    rows: tuple[ActivationRow, ...]


def activation_window(lam: float, rho: float) -> int:
    """Window length ceil(2 (1 + 1/rho + 1/(1+lam))) within which an active
    star should infect an adjacent inactive one with probability Omega(lam)."""
    return math.ceil(2.0 * (1.0 + 1.0 / rho + 1.0 / (1.0 + lam)))


def probe_activation_prob(ell: int, lams: Sequence[float], rho: float,
                          eps: float, replicas: int, seed: int,
                          workers: int = 1) -> ActivationProbeResult:
    """Estimate the neighbor-activation probability on a two-star instance.

    Star 1 starts active (center plus m* leaves infected); star 2 starts
    all-susceptible except its recovered center (the worst case of the
    activation chain).  q_hat is the fraction of replicas in which star 2
    reaches m* infected vertices within the window.
    """
    if not lams:
        raise ValueError("lambda grid must not be empty")
    g, family = gen_constar(2, ell, "path")
    rows = []
    for arm, lam in enumerate(float(x) for x in lams):
        if not lam > 0:
            raise ValueError("infection rate must be positive")
        consts = activation_constants(ell, lam, rho, eps)
        window = activation_window(lam, rho)
        c1, c2 = family.centers
        infected = frozenset([c1] + list(family.leaves[0][:consts.m_star]))
        init = SirsState(n=g.n, infected=infected, recovered=frozenset([c2]))
        params = SirsParams(lam=lam, rho=rho)
        seeds = replica_seeds(seed, arm, replicas)

        def one(s: int) -> bool:
            trace = engine.simulate(g, params, init, float(window), s)
            meta = track(trace, family, consts)
            return len(meta.intervals[1]) > 0

        if workers <= 1:
            results = [one(int(s)) for s in seeds]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(one, [int(s) for s in seeds]))
        rows.append(ActivationRow(lam=lam, window=window, replicas=replicas,
                                  activations=sum(results)))
    return ActivationProbeResult(rows=tuple(rows))


def activation_rows_to_csv(result: ActivationProbeResult,
                           stream: TextIO | None = None) -> str:
    out = ["lambda,window,replicas,activations,q_hat,q_hat_over_lambda\n"]
    for r in result.rows:
        out.append(f"{r.lam!r},{r.window},{r.replicas},{r.activations},"
                   f"{r.q_hat!r},{r.ratio!r}\n")
    text = "".join(out)
    if stream is not None:
        stream.write(text)
    return text


def activation_rows_from_csv(source: str | TextIO) -> ActivationProbeResult:
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = stream.readline().strip()
    if header != "lambda,window,replicas,activations,q_hat,q_hat_over_lambda":
        raise ValueError(f"unexpected header: {header!r}")
    rows = []
    for line in stream:
        line = line.strip()
        if not line:
            continue
        lam, window, rep, act, _, _ = line.split(",")
        rows.append(ActivationRow(lam=float(lam), window=int(window),
                                  replicas=int(rep), activations=int(act)))
    return ActivationProbeResult(rows=tuple(rows))


# ---------------------------------------------------------------------------
# connected-star vs single-star comparison


@dataclass(frozen=True)
class CompareResult:
    """Paired-seed comparison of a k-star connected family against one star
    of the same leaf count (identical rates, shared replica seeds)."""

    k: int
    ell: int
    lam: float
    rho: float
    cap: float
    multi: SurvivalStats
    single: SurvivalStats

    @property
    def median_ratio(self) -> float:
        return self.multi.median_with_censoring / self.single.median_with_censoring


def compare_constar_vs_star(ell: int, k: int, lam: float, rho: float,
                            replicas: int, cap: float, seed: int,
                            topology: str = "path",
                            workers: int = 1) -> CompareResult:
    """Median survival of a k-star path-connected family vs a single star.

    Both arms start with one star center infected; replica seeds are shared
    across arms (variance-reduced, reproducible ratios).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    seeds = replica_seeds(seed, ARM_DEFAULT, replicas)
    arms = []
    for arm_k in (k, 1):
        g, family = gen_constar(arm_k, ell, topology if arm_k > 1 else "path")
        init = SirsState(n=g.n, infected=frozenset([family.centers[0]]))
        params = SirsParams(lam=lam, rho=rho)
        times, cens, events = _run_batches(g, params, init, cap, seeds, workers)
        rows = tuple(SurvivalRow(replica=i, seed=int(seeds[i]),
                                 time=float(times[i]), censored=bool(cens[i]),
                                 events=int(events[i]))
                     for i in range(replicas))
        arms.append(SurvivalStats(rows=rows, cap=cap))
    return CompareResult(k=k, ell=ell, lam=lam, rho=rho, cap=cap,
                         multi=arms[0], single=arms[1])


# ---------------------------------------------------------------------------
# degree census helpers


def degree_ccdf(degrees: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(d, P(degree >= d)) for every integer d from 1 to max degree."""
    degrees = np.asarray(degrees)
    dmax = int(degrees.max()) if len(degrees) else 0
    counts = np.bincount(degrees, minlength=dmax + 1)
    geq = np.cumsum(counts[::-1])[::-1]
    d = np.arange(1, dmax + 1)
    return d, geq[1:] / len(degrees)


def ccdf_loglog_slope(degrees: np.ndarray, d_lo: int, d_hi: int) -> float:
    """Least-squares slope of ln CCDF against ln d over integer degrees in
    [d_lo, d_hi] (rows with empty tail are dropped)."""
    d, ccdf = degree_ccdf(degrees)
    mask = (d >= d_lo) & (d <= d_hi) & (ccdf > 0)
    if mask.sum() < 2:
        raise ValueError("not enough populated degrees for a slope")
    return float(np.polyfit(np.log(d[mask]), np.log(ccdf[mask]), 1)[0])


def census_star_size(g: Graph, k: int) -> int:
    """Empirical leaf count floor(d_(k)/k) - 1 from the k-th largest degree."""
    if k < 1 or k > g.n:
        raise ValueError("k out of range")
    dk = int(np.sort(g.degrees)[::-1][k - 1])
    return dk // k - 1
