import math

import numpy as np
import pytest

from constar import (SirsParams, SirsState, activation_constants, gen_constar,
                     meta_summary, simulate, track)
from constar.activity import (MetaTrace, intervals_from_csv, intervals_to_csv,
                              x_steps_from_csv, x_steps_to_csv)
from constar.engine import KIND_INFECT, KIND_RECOVER, Outcome, SirsTrace
from constar.structure import StarFamily


def make_trace(n, initial_infected, events, outcome):
    """events: list of (t, kind, vertex)."""
    init = np.zeros(n, dtype=np.int8)
    init[list(initial_infected)] = 1
    return SirsTrace(
        n=n, initial=init,
        times=np.array([e[0] for e in events], dtype=np.float64),
        kinds=np.array([e[1] for e in events], dtype=np.int8),
        vertices=np.array([e[2] for e in events], dtype=np.int32),
        sources=np.array([-1] * len(events), dtype=np.int32),
        outcome=outcome)


TWO_STARS = StarFamily(centers=(0, 1), leaves=((2, 3, 4), (5, 6, 7)),
                       centers_connected=True)


def consts_with_mstar(m):
    # synthetic constants carrier; only m_star matters for track()
    from constar.activity import ActivationConstants
    return ActivationConstants(eps=0.5, c=1 / 12, d=1 / 84, m_star=m,
                               raw_threshold=float(m))


def test_activation_constants_paper_values():
    c = activation_constants(10000, 0.5, rho=1.0, eps=0.5)
    assert c.c == pytest.approx(1.0 / 12.0, rel=1e-12)
    assert c.d == pytest.approx(1.0 / 84.0, rel=1e-12)
    assert c.m_star == 60  # ceil(0.5 * (1/84) * 10000) = ceil(59.52)


def test_activation_constants_d_is_binding_minimum():
    # with eps small the log constraint binds instead of c/7
    c = activation_constants(100, 0.5, rho=1.0, eps=0.01)
    log_term = (c.c / 2) * math.log(1 / (1 - 0.005))
    assert c.d == pytest.approx(log_term, rel=1e-12)
    assert c.d < c.c / 7
    # invariants from the definition
    assert c.d <= c.c / 7 + 1e-15
    assert math.exp(-2 * c.d / c.c) >= 1 - 0.01 / 2 - 1e-12


def test_activation_constants_domain():
    with pytest.raises(ValueError):
        activation_constants(100, 0.5, 1.0, eps=2.0)
    with pytest.raises(ValueError):
        activation_constants(100, 0.5, 0.0)
    with pytest.raises(ValueError):
        activation_constants(0, 0.5, 1.0)


def test_m_star_floor_at_one():
    c = activation_constants(10, 0.01, 1.0, 0.5)
    assert c.m_star == 1
    assert c.raw_threshold < 1


def test_m_star_monotone():
    prev = 0
    for lam in (0.05, 0.1, 0.2, 0.4, 0.8):
        m = activation_constants(5000, lam, 1.0, 0.5).m_star
        assert m >= prev
        prev = m
    prev = 0
    for ell in (100, 1000, 5000, 20000):
        m = activation_constants(ell, 0.3, 1.0, 0.5).m_star
        assert m >= prev
        prev = m


def test_track_single_interval():
    consts = consts_with_mstar(2)
    assert consts.m_star == 2
    events = [
        (1.0, KIND_INFECT, 2),   # star 0: center + leaf = 2 -> activate
        (2.0, KIND_RECOVER, 2),
        (3.0, KIND_RECOVER, 0),  # star 0 count 0 -> deactivate
    ]
    tr = make_trace(8, [0], events, Outcome("extinct", 3.0))
    meta = track(tr, TWO_STARS, consts)
    assert meta.intervals[0] == ((1.0, 3.0),)
    assert meta.intervals[1] == ()
    assert list(meta.x_times) == [0.0, 1.0, 3.0]
    assert list(meta.x_values) == [0, 1, 0]


def test_track_never_reaching_threshold():
    consts = consts_with_mstar(3)
    events = [(1.0, KIND_INFECT, 2), (2.0, KIND_RECOVER, 2),
              (2.5, KIND_RECOVER, 0)]
    tr = make_trace(8, [0], events, Outcome("extinct", 2.5))
    meta = track(tr, TWO_STARS, consts)
    assert meta.intervals[0] == ()
    assert meta_summary(meta).activation_count == 0


def test_track_hysteresis_single_interval():
    # dips to 1 infected (not 0) after activation, then regrows: one interval
    consts = consts_with_mstar(2)
    events = [
        (1.0, KIND_INFECT, 2),    # 2 infected -> active
        (2.0, KIND_RECOVER, 2),   # down to 1 (center)
        (3.0, KIND_INFECT, 3),    # back to 2
        (4.0, KIND_RECOVER, 3),
        (5.0, KIND_RECOVER, 0),   # 0 -> deactivate
    ]
    tr = make_trace(8, [0], events, Outcome("extinct", 5.0))
    meta = track(tr, TWO_STARS, consts)
    assert meta.intervals[0] == ((1.0, 5.0),)
    assert meta_summary(meta).activation_count == 1


def test_track_active_at_time_zero():
    consts = consts_with_mstar(2)
    tr = make_trace(8, [0, 2], [(1.0, KIND_RECOVER, 0), (2.0, KIND_RECOVER, 2)],
                    Outcome("extinct", 2.0))
    meta = track(tr, TWO_STARS, consts)
    assert meta.intervals[0] == ((0.0, 2.0),)
    assert meta.x_values[0] == 1


def test_track_counts_outside_infections():
    # infections of star vertices count regardless of source; vertices outside
    # the family are ignored
    consts = consts_with_mstar(2)
    events = [
        (0.5, KIND_INFECT, 8),   # not in family
        (1.0, KIND_INFECT, 5),   # star 1 leaf
        (1.5, KIND_INFECT, 1),   # star 1 center -> 2 infected -> active
        (2.0, KIND_RECOVER, 5),
        (2.5, KIND_RECOVER, 1),  # star 1 at 0 -> inactive
        (3.0, KIND_RECOVER, 8),
    ]
    tr = make_trace(9, [], events, Outcome("extinct", 3.0))
    meta = track(tr, TWO_STARS, consts)
    assert meta.intervals[1] == ((1.5, 2.5),)
    assert meta.intervals[0] == ()


def test_track_open_interval_when_censored():
    consts = consts_with_mstar(1)
    tr = make_trace(8, [2], [], Outcome("censored", 10.0))
    meta = track(tr, TWO_STARS, consts)
    assert meta.intervals[0] == ((0.0, None),)
    s = meta_summary(meta)
    assert s.active_time[0] == pytest.approx(10.0)


def test_track_rejects_overlapping_family():
    fam = StarFamily(centers=(0, 1), leaves=((2, 3), (3, 4)),
                     centers_connected=True)
    tr = make_trace(5, [0], [], Outcome("extinct", 0.0))
    with pytest.raises(ValueError, match="disjoint"):
        track(tr, fam, consts_with_mstar(1))


def test_track_rejects_vertex_mismatch():
    fam = StarFamily(centers=(0,), leaves=((9,),), centers_connected=True)
    tr = make_trace(5, [0], [], Outcome("extinct", 0.0))
    with pytest.raises(ValueError, match="not in the trace"):
        track(tr, fam, consts_with_mstar(1))


def test_meta_summary_examples():
    empty = MetaTrace(k=2, end_time=0.0, intervals=((), ()),
                      x_times=np.array([0.0]), x_values=np.array([0]))
    s = meta_summary(empty)
    assert (s.activation_count, s.max_active) == (0, 0)
    assert s.active_time == (0.0, 0.0)

    one = MetaTrace(k=1, end_time=5.0, intervals=(((1.0, 3.5),),),
                    x_times=np.array([0.0, 1.0, 3.5]),
                    x_values=np.array([0, 1, 0]))
    assert meta_summary(one).active_time[0] == pytest.approx(2.5)


def test_overlapping_intervals_max_x():
    consts = consts_with_mstar(1)
    events = [
        (1.0, KIND_INFECT, 2),  # star 0 active
        (2.0, KIND_INFECT, 5),  # star 1 active, X = 2
        (3.0, KIND_RECOVER, 2),
        (4.0, KIND_RECOVER, 5),
    ]
    tr = make_trace(8, [], events, Outcome("extinct", 4.0))
    meta = track(tr, TWO_STARS, consts)
    assert meta_summary(meta).max_active == 2
    assert meta.x_at(2.5) == 2
    assert meta.x_at(0.5) == 0


def test_track_on_real_simulation_consistency():
    # X reconstructed from intervals matches the emitted step sequence;
    # intervals close at or before extinction
    g, fam = gen_constar(3, 40, "path")
    params = SirsParams(lam=0.4, rho=1.0)
    consts = activation_constants(40, 0.4, 1.0, 0.5)
    init = SirsState(n=g.n, infected=frozenset([fam.centers[0]]))
    for seed in range(25):
        trace = simulate(g, params, init, cap=200.0, seed=seed)
        meta = track(trace, fam, consts)
        meta2 = track(trace, fam, consts)  # replay idempotent
        assert meta.intervals == meta2.intervals
        assert np.array_equal(meta.x_times, meta2.x_times)
        # X changes by exactly +-1
        diffs = np.diff(meta.x_values)
        assert np.all(np.abs(diffs) == 1)
        # reconstruct X from intervals at each step time
        for t, x in zip(meta.x_times, meta.x_values):
            from_intervals = sum(
                1 for iv in meta.intervals for a, b in iv
                if a <= t and (b is None or t < b))
            assert from_intervals == x
        # intervals ordered, disjoint, closed by extinction
        for iv in meta.intervals:
            for (a1, b1), (a2, b2) in zip(iv, iv[1:]):
                assert b1 is not None and b1 <= a2
            if trace.outcome.extinct:
                assert all(b is not None and b <= trace.outcome.time
                           for _, b in iv)


def test_csv_round_trips():
    meta = MetaTrace(k=2, end_time=9.0,
                     intervals=(((1.0, 3.5), (4.0, None)), ()),
                     x_times=np.array([0.0, 1.0, 3.5, 4.0]),
                     x_values=np.array([0, 1, 0, 1]))
    rows = intervals_from_csv(intervals_to_csv(meta))
    assert rows == [(0, 1.0, 3.5), (0, 4.0, None)]
    ts, xs = x_steps_from_csv(x_steps_to_csv(meta))
    assert np.array_equal(ts, meta.x_times)
    assert np.array_equal(xs, meta.x_values)
