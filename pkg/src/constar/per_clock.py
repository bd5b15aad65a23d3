"""Literal per-clock SIRS/SIS simulation (test oracle).

Simulates the clock construction directly: an independent exponential clock
per edge (rate lam) and two per vertex (recovery rate 1, deimmunization rate
rho).  Clocks trigger whether or not the trigger changes the state; only
state-changing triggers are recorded.  Distribution-identical to the
aggregated-rate engine; kept for cross-checking on graphs with at most a few
vertices (it is O(edges + vertices) work per trigger and not meant for
production use).
"""

from __future__ import annotations

import heapq

import numpy as np

from .graph import Graph
from .engine import SirsParams, SirsState


def simulate_per_clock(g: Graph, params: SirsParams, init: SirsState,
                       cap: float, seed: int) -> tuple[float, bool, int]:
    """Run one realization; return (survival time, censored, event count).

    The event count includes only state-changing triggers.
    """
    if init.n != g.n:
        raise ValueError("initial state does not match graph")
    if params.sis and init.recovered:
        raise ValueError("SIS mode admits no recovered vertices")
    rng = np.random.default_rng(seed)
    state = init.to_array()
    n_inf = int((state == 1).sum())

    # clock ids: edge i -> ("e", i); vertex recovery -> ("r", v); deimmunization -> ("d", v)
    heap: list[tuple[float, int, tuple[str, int]]] = []
    counter = 0

    def schedule(clock: tuple[str, int], now: float, rate: float) -> None:
        nonlocal counter
        heapq.heappush(heap, (now + rng.exponential(1.0 / rate), counter, clock))
        counter += 1

    for i in range(g.m):
        schedule(("e", i), 0.0, params.lam)
    for v in range(g.n):
        schedule(("r", v), 0.0, 1.0)
        if not params.sis:
            schedule(("d", v), 0.0, params.rho)

    t = 0.0
    events = 0
    while n_inf > 0:
        t, _, clock = heapq.heappop(heap)
        if t >= cap:
            return cap, True, events
        kind, idx = clock
        if kind == "e":
            u, v = g.edge_array[idx]
            if state[u] == 1 and state[v] == 0:
                state[v] = 1
                n_inf += 1
                events += 1
            elif state[v] == 1 and state[u] == 0:
                state[u] = 1
                n_inf += 1
                events += 1
            schedule(clock, t, params.lam)
        elif kind == "r":
            if state[idx] == 1:
                state[idx] = 0 if params.sis else 2
                n_inf -= 1
                events += 1
            schedule(clock, t, 1.0)
        else:
            if state[idx] == 2:
                state[idx] = 0
                events += 1
            schedule(clock, t, params.rho)
    return t, False, events
