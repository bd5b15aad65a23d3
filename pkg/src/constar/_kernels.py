"""Numba kernels for the event-driven SIRS/SIS engine.

The simulation uses aggregated exponential rates (total rate
``|I| + rho*|R| + lambda*cut`` where ``cut`` is the number of susceptible-
infected adjacent ordered pairs), which is equivalent in distribution to
per-edge/per-vertex clocks by superposition and memorylessness.

Randomness: xoshiro256++ (Blackman & Vigna), state seeded from a 64-bit value
via SplitMix64 (the same SplitMix64 as ``rng.splitmix64``).  One stream per
run; all draws happen in a fixed order, so a run is bit-reproducible from
``(graph, params, init, cap, seed)``.

Per-event work is O(degree of the affected vertex) plus O(log n) for the
weighted source draw:

* ``inf_nbrs[v]`` (infected-neighbor counts) and ``cut`` are maintained
  incrementally.
* Recovery / deimmunization targets are drawn uniformly from swap-removal
  lists of infected / recovered vertices.
* Infection events sample a uniformly random susceptible-infected directed
  pair: draw an infected source proportional to its degree (Fenwick tree),
  then a uniform neighbor, and reject if the neighbor is not susceptible.
  Acceptance is exact; after a bounded number of rejections a linear-scan
  fallback draws the pair index directly from ``cut``.  The accepted source
  doubles as the recorded infection source (uniform among the target's
  infected neighbors, matching the per-edge-clock race).

State codes: 0 = S, 1 = I, 2 = R.  Event kinds: 0 = infect, 1 = recover,
2 = deimmunize.
"""

import numpy as np
from numba import njit, uint64

_M64 = uint64(0xFFFFFFFFFFFFFFFF)
_REJECT_CAP = 128


@njit(cache=True, nogil=True)
def _splitmix64(x):
    x = (x + uint64(0x9E3779B97F4A7C15)) & _M64
    z = x
    z = (z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB)
    z = z ^ (z >> uint64(31))
    return x, z


@njit(cache=True, nogil=True)
def _seed_state(seed):
    s = np.empty(4, dtype=np.uint64)
    x = uint64(seed)
    for i in range(4):
        x, out = _splitmix64(x)
        s[i] = out
    return s


@njit(cache=True, nogil=True, inline="always")
def _rotl(x, k):
    return ((x << k) | (x >> (uint64(64) - k))) & _M64


@njit(cache=True, nogil=True)
def _next_u64(s):
    result = (_rotl((s[0] + s[3]) & _M64, uint64(23)) + s[0]) & _M64
    t = (s[1] << uint64(17)) & _M64
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], uint64(45))
    return result


@njit(cache=True, nogil=True, inline="always")
def _uniform(s):
    # 53-bit mantissa in [0, 1)
    return (_next_u64(s) >> uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True, nogil=True, inline="always")
def _fen_add(fen, n, v, w):
    i = v + 1
    while i <= n:
        fen[i] += w
        i += i & (-i)


@njit(cache=True, nogil=True)
def _fen_sample(fen, n, top_bit, r):
    """Smallest 0-based index whose prefix sum exceeds r."""
    pos = 0
    rem = r
    bit = top_bit
    while bit > 0:
        nxt = pos + bit
        if nxt <= n and fen[nxt] < rem:
            rem -= fen[nxt]
            pos = nxt
        bit >>= 1
    if pos >= n:
        pos = n - 1
    return pos


@njit(cache=True, nogil=True)
def _run(indptr, indices, lam, rho, sis, state0, cap, seed, max_events, record):
    """Run one SIRS/SIS realization.

    Returns (times, kinds, vertices, sources, n_events, end_time, extinct).
    With record=False the four event arrays stay empty (same RNG consumption,
    so recorded and unrecorded runs of one seed agree bit for bit).
    """
    n = len(indptr) - 1
    rs = _seed_state(seed)
    state = state0.copy()

    inf_nbrs = np.zeros(n, dtype=np.int32)
    inf_list = np.empty(n, dtype=np.int32)
    inf_pos = np.full(n, -1, dtype=np.int32)
    rec_list = np.empty(n, dtype=np.int32)
    rec_pos = np.full(n, -1, dtype=np.int32)
    fen = np.zeros(n + 1, dtype=np.float64)
    top_bit = 1
    while top_bit * 2 <= n:
        top_bit *= 2

    n_inf = 0
    n_rec = 0
    cut = 0
    sumdeg = 0.0
    for v in range(n):
        if state[v] == 1:
            inf_list[n_inf] = v
            inf_pos[v] = n_inf
            n_inf += 1
            d = indptr[v + 1] - indptr[v]
            _fen_add(fen, n, v, float(d))
            sumdeg += d
            for j in range(indptr[v], indptr[v + 1]):
                inf_nbrs[indices[j]] += 1
        elif state[v] == 2:
            rec_list[n_rec] = v
            rec_pos[v] = n_rec
            n_rec += 1
    for v in range(n):
        if state[v] == 0:
            cut += inf_nbrs[v]

    buf = 1024 if record else 0
    times = np.empty(buf, dtype=np.float64)
    kinds = np.empty(buf, dtype=np.int8)
    verts = np.empty(buf, dtype=np.int32)
    srcs = np.empty(buf, dtype=np.int32)

    t = 0.0
    n_ev = 0
    while n_inf > 0:
        total = n_inf + rho * n_rec + lam * cut
        t_next = t + (-np.log(1.0 - _uniform(rs)) / total)
        if t_next >= cap:
            return times, kinds, verts, srcs, n_ev, cap, False
        t = t_next

        r = _uniform(rs) * total
        kind = np.int8(0)
        v = -1
        src = -1
        if r < n_inf:
            # recovery: uniform infected vertex
            kind = 1
            idx = int(_uniform(rs) * n_inf)
            if idx >= n_inf:
                idx = n_inf - 1
            v = inf_list[idx]
            last = inf_list[n_inf - 1]
            inf_list[idx] = last
            inf_pos[last] = idx
            inf_pos[v] = -1
            n_inf -= 1
            d = indptr[v + 1] - indptr[v]
            _fen_add(fen, n, v, -float(d))
            sumdeg -= d
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                inf_nbrs[w] -= 1
                if state[w] == 0:
                    cut -= 1
            if sis:
                state[v] = 0
                cut += inf_nbrs[v]
            else:
                state[v] = 2
                rec_list[n_rec] = v
                rec_pos[v] = n_rec
                n_rec += 1
        elif r < n_inf + rho * n_rec:
            # deimmunization: uniform recovered vertex
            kind = 2
            idx = int(_uniform(rs) * n_rec)
            if idx >= n_rec:
                idx = n_rec - 1
            v = rec_list[idx]
            last = rec_list[n_rec - 1]
            rec_list[idx] = last
            rec_pos[last] = idx
            rec_pos[v] = -1
            n_rec -= 1
            state[v] = 0
            cut += inf_nbrs[v]
        else:
            # infection: uniform susceptible-infected directed pair
            kind = 0
            for _ in range(_REJECT_CAP):
                u = _fen_sample(fen, n, top_bit, _uniform(rs) * sumdeg)
                du = indptr[u + 1] - indptr[u]
                j = int(_uniform(rs) * du)
                if j >= du:
                    j = du - 1
                cand = indices[indptr[u] + j]
                if state[cand] == 0:
                    v = cand
                    src = u
                    break
            if v < 0:
                # exact fallback: index directly into the S-I pair count
                target = int(_uniform(rs) * cut)
                if target >= cut:
                    target = cut - 1
                acc = 0
                for ii in range(n_inf):
                    uu = inf_list[ii]
                    for j in range(indptr[uu], indptr[uu + 1]):
                        w = indices[j]
                        if state[w] == 0:
                            if acc == target:
                                v = w
                                src = uu
                                break
                            acc += 1
                    if v >= 0:
                        break
            state[v] = 1
            cut -= inf_nbrs[v]
            inf_list[n_inf] = v
            inf_pos[v] = n_inf
            n_inf += 1
            d = indptr[v + 1] - indptr[v]
            _fen_add(fen, n, v, float(d))
            sumdeg += d
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                inf_nbrs[w] += 1
                if state[w] == 0:
                    cut += 1

        if record:
            if n_ev >= buf:
                buf *= 2
                times = np.concatenate((times, np.empty(buf - len(times), dtype=np.float64)))
                kinds = np.concatenate((kinds, np.empty(buf - len(kinds), dtype=np.int8)))
                verts = np.concatenate((verts, np.empty(buf - len(verts), dtype=np.int32)))
                srcs = np.concatenate((srcs, np.empty(buf - len(srcs), dtype=np.int32)))
            times[n_ev] = t
            kinds[n_ev] = kind
            verts[n_ev] = v
            srcs[n_ev] = src
        n_ev += 1
        if n_ev == max_events and n_inf > 0:
            return times, kinds, verts, srcs, n_ev, t, False

    return times, kinds, verts, srcs, n_ev, t, True


@njit(cache=True, nogil=True)
def _survival_batch(indptr, indices, lam, rho, sis, state0, cap, seeds):
    """Survival time, censoring flag, and event count for each seed."""
    r = len(seeds)
    out_t = np.empty(r, dtype=np.float64)
    out_cens = np.empty(r, dtype=np.bool_)
    out_ev = np.empty(r, dtype=np.int64)
    for i in range(r):
        _, _, _, _, n_ev, t_end, extinct = _run(
            indptr, indices, lam, rho, sis, state0, cap, seeds[i], -1, False)
        out_t[i] = t_end
        out_cens[i] = not extinct
        out_ev[i] = n_ev
    return out_t, out_cens, out_ev
