"""Star-activation tracking: replay a trace against a star family.

A star is active from the first moment its infected vertex count (center
included) reaches the activation count m*, and stays active until no vertex
in it is infected.  The activity indicator per star, and the count X of
active stars over time, form the meta process of a run.

Activation constants: with deimmunization rate rho and accuracy constant
eps in (0, 2),

    c  = rho / (4 (2 + rho))
    d  = min(c/7, (c/2) ln(1/(1 - eps/2)))
    m* = max(1, ceil(lam * d * ell))

d is the exact closed-form solution of "largest d with d <= c/7 and
e^(-2d/c) >= 1 - eps/2" (both constraints are monotone in d).  The raw
threshold lam*d*ell need not be an integer and can fall below 1; the ceiling
and the floor at one keep activation meaningful (an active star must contain
an infected vertex).
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .engine import KIND_INFECT, KIND_RECOVER, SirsTrace
from .structure import StarFamily


@dataclass(frozen=True)
class ActivationConstants:
    """Constants of the activation rule for one (ell, lam, rho, eps)."""

    eps: float
    c: float
    d: float
    m_star: int
    raw_threshold: float  # lam * d * ell before rounding

    def __post_init__(self):
        if self.m_star < 1:
            raise ValueError("activation count must be at least 1")


def activation_constants(ell: int, lam: float, rho: float,
                         eps: float = 0.5) -> ActivationConstants:
    """Compute (c, d, m*) for a star with ``ell`` leaves."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if not lam > 0:
        raise ValueError("infection rate must be positive")
    if not rho > 0:
        raise ValueError("deimmunization rate must be positive")
    if not 0 < eps < 2:
        raise ValueError("eps must lie in (0, 2)")
    c = rho / (4.0 * (2.0 + rho))
    d = min(c / 7.0, (c / 2.0) * math.log(1.0 / (1.0 - eps / 2.0)))
    raw = lam * d * ell
    m_star = max(1, math.ceil(raw))
    return ActivationConstants(eps=eps, c=c, d=d, m_star=m_star, raw_threshold=raw)


@dataclass(frozen=True)
class MetaTrace:
    """Activity structure of one trace against one family.

    intervals[s] lists (t_activate, t_deactivate) per star; a deactivation of
    None means the star was still active when the trace ended (censored
    runs).  x_times/x_values hold the step sequence of the active-star count,
    starting with (0, X_0).  crossings[s] lists every time the star's
    infected count reached m* from below, active or not.
    """

    k: int
    end_time: float
    intervals: tuple[tuple[tuple[float, float | None], ...], ...]
    x_times: np.ndarray = field(repr=False)
    x_values: np.ndarray = field(repr=False)
    crossings: tuple[tuple[float, ...], ...] = ()

    def x_at(self, t: float) -> int:
        """Number of active stars at time t (right-continuous steps)."""
        i = int(np.searchsorted(self.x_times, t, side="right")) - 1
        return int(self.x_values[max(i, 0)])


@dataclass(frozen=True)
class MetaSummary:
    activation_count: int
    max_active: int
    active_time: tuple[float, ...]  # per star


def track(trace: SirsTrace, family: StarFamily,
          consts: ActivationConstants) -> MetaTrace:
    """Replay a trace and emit the activity process of the family.

    Pure function of its inputs.  Counts every infected vertex of a star
    toward its activation regardless of where the infection came from.  A
    star that already has m* infected vertices in the initial state is
    active from time 0.
    """
    verts = family.vertices()
    if len(verts) != len(set(verts)):
        raise ValueError("family stars must be vertex-disjoint")
    star_of = {}
    for s, c in enumerate(family.centers):
        star_of[c] = s
        for w in family.leaves[s]:
            star_of[w] = s
    for v in star_of:
        if not 0 <= v < trace.n:
            raise ValueError(f"family vertex {v} not in the trace's graph")

    k = family.k
    counts = [0] * k
    for v, state in enumerate(trace.initial):
        if state == 1 and v in star_of:
            counts[star_of[v]] += 1

    active = [False] * k
    open_t = [0.0] * k
    intervals: list[list[tuple[float, float | None]]] = [[] for _ in range(k)]
    crossings: list[list[float]] = [[] for _ in range(k)]
    x = 0
    for s in range(k):
        if counts[s] >= consts.m_star:
            active[s] = True
            crossings[s].append(0.0)
            x += 1
    x_times = [0.0]
    x_values = [x]

    for t, kind, v in zip(trace.times, trace.kinds, trace.vertices):
        s = star_of.get(int(v))
        if s is None:
            continue
        if kind == KIND_INFECT:
            counts[s] += 1
            if counts[s] == consts.m_star:
                crossings[s].append(float(t))
            if not active[s] and counts[s] >= consts.m_star:
                active[s] = True
                open_t[s] = float(t)
                x += 1
                x_times.append(float(t))
                x_values.append(x)
        elif kind == KIND_RECOVER:
            counts[s] -= 1
            if active[s] and counts[s] == 0:
                active[s] = False
                intervals[s].append((open_t[s], float(t)))
                x -= 1
                x_times.append(float(t))
                x_values.append(x)
        # deimmunization does not change infected counts

    end = trace.outcome.time
    for s in range(k):
        if active[s]:
            intervals[s].append((open_t[s], None))

    return MetaTrace(k=k, end_time=end,
                     intervals=tuple(tuple(iv) for iv in intervals),
                     x_times=np.asarray(x_times, dtype=np.float64),
                     x_values=np.asarray(x_values, dtype=np.int64),
                     crossings=tuple(tuple(cs) for cs in crossings))


def meta_summary(meta: MetaTrace) -> MetaSummary:
    """Aggregate a MetaTrace: total activations, max simultaneous count, and
    per-star total active time (open intervals closed at the trace end)."""
    activation_count = sum(len(iv) for iv in meta.intervals)
    max_active = int(meta.x_values.max()) if len(meta.x_values) else 0
    active_time = tuple(
        sum((meta.end_time if e is None else e) - s for s, e in iv)
        for iv in meta.intervals)
    return MetaSummary(activation_count=activation_count,
                       max_active=max_active,
                       active_time=active_time)


def intervals_to_csv(meta: MetaTrace, stream: TextIO | None = None) -> str:
    """Meta CSV: ``star_id,t_activate,t_deactivate`` (blank deactivation for
    intervals still open at the trace end)."""
    out = ["star_id,t_activate,t_deactivate\n"]
    for s, iv in enumerate(meta.intervals):
        for a, b in iv:
            out.append(f"{s},{float(a)!r},{'' if b is None else repr(float(b))}\n")
    text = "".join(out)
    if stream is not None:
        stream.write(text)
    return text


def intervals_from_csv(source: str | TextIO) -> list[tuple[int, float, float | None]]:
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = stream.readline().strip()
    if header != "star_id,t_activate,t_deactivate":
        raise ValueError(f"unexpected header: {header!r}")
    rows = []
    for line in stream:
        line = line.strip()
        if not line:
            continue
        s, a, b = line.split(",")
        rows.append((int(s), float(a), float(b) if b else None))
    return rows


def x_steps_to_csv(meta: MetaTrace, stream: TextIO | None = None) -> str:
    """X step CSV: ``time,X``."""
    out = ["time,X\n"]
    for t, x in zip(meta.x_times, meta.x_values):
        out.append(f"{float(t)!r},{int(x)}\n")
    text = "".join(out)
    if stream is not None:
        stream.write(text)
    return text


def x_steps_from_csv(source: str | TextIO) -> tuple[np.ndarray, np.ndarray]:
    stream = io.StringIO(source) if isinstance(source, str) else source
    header = stream.readline().strip()
    if header != "time,X":
        raise ValueError(f"unexpected header: {header!r}")
    ts, xs = [], []
    for line in stream:
        line = line.strip()
        if not line:
            continue
        t, x = line.split(",")
        ts.append(float(t))
        xs.append(int(x))
    return np.asarray(ts), np.asarray(xs, dtype=np.int64)
