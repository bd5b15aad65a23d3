"""Event-driven SIRS/SIS simulation plus an exact CTMC oracle for tiny graphs.

Process semantics: each susceptible-infected edge carries an exponential
infection clock of rate ``lam``, each infected vertex a recovery clock of
rate 1, each recovered vertex a deimmunization clock of rate ``rho``.  In SIS
mode recovery returns a vertex directly to susceptible.  The simulation stops
when no vertex is infected (extinct at time T) or at the time cap (censored).

The engine draws aggregated rates (see ``_kernels``), which is exact in
distribution; the literal per-clock construction lives in ``per_clock`` as a
small test oracle.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from . import _kernels
from .graph import Graph

KIND_INFECT = 0
KIND_RECOVER = 1
KIND_DEIMMUNIZE = 2
_KIND_TOKEN = {KIND_INFECT: "I", KIND_RECOVER: "Rc", KIND_DEIMMUNIZE: "D"}
_TOKEN_KIND = {v: k for k, v in _KIND_TOKEN.items()}

#: default cap on CTMC state-space size for the exact oracle (3**8)
DEFAULT_STATE_LIMIT = 6561


@dataclass(frozen=True)
class SirsParams:
    """Process rates: infection ``lam``, deimmunization ``rho``, and mode.

    The recovery rate is fixed to 1.  ``lam > 1`` is accepted.  In SIS mode
    ``rho`` is irrelevant (no recovered state).
    """

    lam: float
    rho: float = 1.0
    mode: str = "SIRS"

    def __post_init__(self):
        if self.mode not in ("SIRS", "SIS"):
            raise ValueError(f"mode must be SIRS or SIS, got {self.mode!r}")
        if not self.lam > 0:
            raise ValueError("infection rate must be positive")
        if self.mode == "SIRS" and not self.rho > 0:
            raise ValueError("deimmunization rate must be positive in SIRS mode")

    @property
    def sis(self) -> bool:
        return self.mode == "SIS"


@dataclass(frozen=True)
class SirsState:
    """Partition of vertices into susceptible / infected / recovered.

    Susceptible is implicit: every vertex not listed in ``infected`` or
    ``recovered``.
    """

    n: int
    infected: frozenset[int] = frozenset()
    recovered: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "infected", frozenset(self.infected))
        object.__setattr__(self, "recovered", frozenset(self.recovered))
        for v in self.infected | self.recovered:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range for n={self.n}")
        if self.infected & self.recovered:
            v = next(iter(self.infected & self.recovered))
            raise ValueError(f"vertex {v} is both infected and recovered")

    def to_array(self) -> np.ndarray:
        a = np.zeros(self.n, dtype=np.int8)
        if self.infected:
            a[list(self.infected)] = 1
        if self.recovered:
            a[list(self.recovered)] = 2
        return a

    @classmethod
    def from_array(cls, a: np.ndarray) -> "SirsState":
        return cls(n=len(a),
                   infected=frozenset(np.flatnonzero(a == 1).tolist()),
                   recovered=frozenset(np.flatnonzero(a == 2).tolist()))


@dataclass(frozen=True)
class Outcome:
    kind: str  # "extinct" | "censored"
    time: float

    @property
    def extinct(self) -> bool:
        return self.kind == "extinct"


@dataclass(frozen=True)
class SirsTrace:
    """One realization: initial state, ordered events, and the outcome.

    Events are parallel arrays (time, kind, vertex, source); ``source`` is the
    infecting neighbor for infection events and -1 otherwise.
    """

    n: int
    initial: np.ndarray = field(repr=False)
    times: np.ndarray = field(repr=False)
    kinds: np.ndarray = field(repr=False)
    vertices: np.ndarray = field(repr=False)
    sources: np.ndarray = field(repr=False)
    outcome: Outcome

    @property
    def event_count(self) -> int:
        return len(self.times)

    def validate(self, g: Graph, params: SirsParams) -> None:
        """Replay the trace and check every event is a legal transition."""
        if g.n != self.n:
            raise ValueError("graph size does not match trace")
        state = self.initial.copy()
        prev_t = 0.0
        for t, k, v, s in zip(self.times, self.kinds, self.vertices, self.sources):
            if not t > prev_t:
                raise ValueError(f"event times not strictly increasing at t={t}")
            prev_t = t
            if k == KIND_INFECT:
                if state[v] != 0:
                    raise ValueError(f"infect target {v} not susceptible at t={t}")
                if s < 0 or state[s] != 1:
                    raise ValueError(f"infection source {s} not infected at t={t}")
                if not g.has_edge(int(s), int(v)):
                    raise ValueError(f"infection along non-edge ({s}, {v})")
                state[v] = 1
            elif k == KIND_RECOVER:
                if state[v] != 1:
                    raise ValueError(f"recovering vertex {v} not infected at t={t}")
                state[v] = 0 if params.sis else 2
            elif k == KIND_DEIMMUNIZE:
                if state[v] != 2:
                    raise ValueError(f"deimmunizing vertex {v} not recovered at t={t}")
                state[v] = 0
            else:
                raise ValueError(f"unknown event kind {k}")
        infected_left = int((state == 1).sum())
        if self.outcome.extinct and infected_left != 0:
            raise ValueError("trace claims extinction but infected vertices remain")
        if not self.outcome.extinct and infected_left == 0:
            raise ValueError("trace claims censoring but the infection is extinct")

    def to_csv(self, stream: TextIO | None = None) -> str:
        """Trace CSV: header ``time,kind,vertex,source``; kind in {I,Rc,D};
        final comment line ``# outcome,extinct|censored,<time>``."""
        out = ["time,kind,vertex,source\n"]
        for t, k, v, s in zip(self.times, self.kinds, self.vertices, self.sources):
            src = str(int(s)) if k == KIND_INFECT else ""
            out.append(f"{float(t)!r},{_KIND_TOKEN[int(k)]},{int(v)},{src}\n")
        out.append(f"# outcome,{self.outcome.kind},{float(self.outcome.time)!r}\n")
        text = "".join(out)
        if stream is not None:
            stream.write(text)
        return text

    @classmethod
    def from_csv(cls, source: str | TextIO, n: int, initial: np.ndarray) -> "SirsTrace":
        """Parse a trace CSV (the initial state is not part of the format)."""
        stream = io.StringIO(source) if isinstance(source, str) else source
        header = stream.readline().strip()
        if header != "time,kind,vertex,source":
            raise ValueError(f"unexpected trace header: {header!r}")
        times, kinds, verts, srcs = [], [], [], []
        outcome = None
        for line in stream:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                _, okind, otime = line.lstrip("# ").split(",")
                outcome = Outcome(okind, float(otime))
                break
            t, k, v, s = line.split(",")
            times.append(float(t))
            kinds.append(_TOKEN_KIND[k])
            verts.append(int(v))
            srcs.append(int(s) if s else -1)
        if outcome is None:
            raise ValueError("trace CSV missing outcome line")
        return cls(n=n, initial=np.asarray(initial, dtype=np.int8),
                   times=np.array(times, dtype=np.float64),
                   kinds=np.array(kinds, dtype=np.int8),
                   vertices=np.array(verts, dtype=np.int32),
                   sources=np.array(srcs, dtype=np.int32),
                   outcome=outcome)


def _check_init(g: Graph, params: SirsParams, init: SirsState) -> np.ndarray:
    if init.n != g.n:
        raise ValueError(f"initial state has n={init.n}, graph has n={g.n}")
    if params.sis and init.recovered:
        raise ValueError("SIS mode admits no recovered vertices")
    return init.to_array()


def simulate(g: Graph, params: SirsParams, init: SirsState, cap: float,
             seed: int, max_events: int = -1) -> SirsTrace:
    """Simulate one SIRS/SIS realization and record its trace.

    Deterministic: identical ``(g, params, init, cap, seed)`` give identical
    traces, bit for bit.  ``max_events`` > 0 stops the run early (censored at
    the last event time); used by tests that only need the first events.
    """
    state0 = _check_init(g, params, init)
    if not cap > 0:
        raise ValueError("cap must be positive")
    times, kinds, verts, srcs, n_ev, t_end, extinct = _kernels._run(
        g.indptr, g.indices, params.lam, params.rho, params.sis,
        state0, float(cap), np.uint64(seed & ((1 << 64) - 1)), max_events, True)
    return SirsTrace(
        n=g.n, initial=state0,
        times=times[:n_ev].copy(), kinds=kinds[:n_ev].copy(),
        vertices=verts[:n_ev].copy(), sources=srcs[:n_ev].copy(),
        outcome=Outcome("extinct" if extinct else "censored", t_end))


def sample_survival_times(g: Graph, params: SirsParams, init: SirsState,
                          cap: float, seeds: np.ndarray
                          ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Survival times for many seeds without trace recording.

    Returns ``(times, censored, event_counts)``.  Each seed reproduces the
    exact run that ``simulate`` would produce (same kernel, same draws).
    """
    state0 = _check_init(g, params, init)
    if not cap > 0:
        raise ValueError("cap must be positive")
    seeds = np.asarray(seeds, dtype=np.uint64)
    return _kernels._survival_batch(g.indptr, g.indices, params.lam, params.rho,
                                    params.sis, state0, float(cap), seeds)


def _state_rates(g: Graph, params: SirsParams, state: np.ndarray):
    """Yield (kind, vertex, rate) for every legal transition from ``state``."""
    inf = np.flatnonzero(state == 1)
    inf_set = set(inf.tolist())
    for v in inf:
        yield KIND_RECOVER, int(v), 1.0
    if not params.sis:
        for v in np.flatnonzero(state == 2):
            yield KIND_DEIMMUNIZE, int(v), params.rho
    for v in np.flatnonzero(state == 0):
        k = sum(1 for w in g.neighbors(int(v)) if int(w) in inf_set)
        if k:
            yield KIND_INFECT, int(v), params.lam * k


@dataclass(frozen=True)
class TransitionDistribution:
    """All legal first transitions from a state, with probabilities."""

    entries: tuple[tuple[int, int, float, float], ...]  # (kind, vertex, rate, prob)
    total_rate: float


def first_transition_distribution(g: Graph, params: SirsParams,
                                  state: SirsState) -> TransitionDistribution:
    """Distribution of the first event from ``state``.

    Each entry is ``(kind, vertex, rate, probability)`` with probability
    rate/total; probabilities sum to 1.  A fully susceptible state has no
    transitions and is an error.
    """
    arr = _check_init(g, params, state)
    rates = list(_state_rates(g, params, arr))
    if not rates:
        raise ValueError("fully susceptible state has no transitions")
    total = sum(r for _, _, r in rates)
    entries = tuple((k, v, r, r / total) for k, v, r in rates)
    return TransitionDistribution(entries=entries, total_rate=total)


def exact_expected_survival(g: Graph, params: SirsParams, init: SirsState,
                            state_limit: int = DEFAULT_STATE_LIMIT) -> float:
    """Expected survival time by linear solve over the full CTMC state space.

    The state space is 3^n (SIRS) or 2^n (SIS); states with no infected
    vertex are absorbing for the survival functional.  Guarded by
    ``state_limit`` (default 3^8 states).
    """
    arr = _check_init(g, params, init)
    n = g.n
    base = 2 if params.sis else 3
    n_states = base ** n
    if n_states > state_limit:
        raise ValueError(f"state space {base}^{n} = {n_states} exceeds limit {state_limit}")
    if not (arr == 1).any():
        return 0.0

    powers = base ** np.arange(n)

    def encode(s: np.ndarray) -> int:
        return int((s * powers).sum())

    digits = np.empty((n_states, n), dtype=np.int8)
    rem = np.arange(n_states)
    for v in range(n):
        digits[:, v] = rem % base
        rem //= base

    transient = np.flatnonzero((digits == 1).any(axis=1))
    index_of = -np.ones(n_states, dtype=np.int64)
    index_of[transient] = np.arange(len(transient))

    rows, cols, vals = [], [], []
    out_rate = np.zeros(len(transient))
    for si, s_code in enumerate(transient):
        s = digits[s_code]
        for kind, v, rate in _state_rates(g, params, s):
            if kind == KIND_RECOVER:
                delta = (0 if params.sis else 2) - 1
            elif kind == KIND_DEIMMUNIZE:
                delta = -2
            else:
                delta = 1
            s2_code = s_code + delta * int(powers[v])
            out_rate[si] += rate
            ti = index_of[s2_code]
            if ti >= 0:
                rows.append(si)
                cols.append(int(ti))
                vals.append(rate)

    a = scipy.sparse.coo_matrix(
        (np.concatenate([out_rate, -np.asarray(vals, dtype=np.float64)]),
         (np.concatenate([np.arange(len(transient)), np.asarray(rows)]),
          np.concatenate([np.arange(len(transient)), np.asarray(cols)]))),
        shape=(len(transient), len(transient))).tocsr()
    h = scipy.sparse.linalg.spsolve(a, np.ones(len(transient)))
    if not np.all(np.isfinite(h)):
        raise RuntimeError("hitting-time system is singular: absorption unreachable")
    return float(h[index_of[encode(arr)]])
