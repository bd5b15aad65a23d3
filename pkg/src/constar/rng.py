"""Seed derivation for reproducible randomness.

Every random procedure in this package is a pure function of 64-bit integer
seeds.  Two generator families are used:

* numpy's PCG64 (``numpy.random.Generator``) for vectorized sampling in the
  graph generators.  Independent substreams (e.g. one for vertex coordinates,
  one for edge coin flips) are derived with ``numpy.random.SeedSequence``
  spawn keys via :func:`pcg_stream`.
* xoshiro256++ inside the simulation kernels (see ``_kernels``), seeded from a
  single 64-bit value through SplitMix64.

Replica and arm seeds are derived with :func:`mix64`, a SplitMix64 chain:
``mix64(base, a, b, ...)`` advances a SplitMix64 state once per argument,
xor-ing each argument into the state before mixing.  The same constants are
used by the kernel-side seeder, so a recorded row seed fully reproduces a run.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state once; return ``(new_state, output)``."""
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z = z ^ (z >> 31)
    return state, z


def mix64(base: int, *parts: int) -> int:
    """Hash ``base`` and any number of integer parts into one 64-bit seed.

    Used to derive per-replica seeds: ``mix64(base_seed, arm_id, replica)``.
    Deterministic, order-sensitive, and collision-resistant for simulation
    purposes (one SplitMix64 step per absorbed part).
    """
    state, out = splitmix64(base & _MASK64)
    for p in parts:
        state, out = splitmix64(state ^ (p & _MASK64))
    return out


def pcg_stream(seed: int, purpose: int) -> np.random.Generator:
    """PCG64 generator for substream ``purpose`` of ``seed``.

    Distinct purposes give statistically independent streams
    (``SeedSequence(seed, spawn_key=(purpose,))``).
    """
    ss = np.random.SeedSequence(entropy=seed & _MASK64, spawn_key=(purpose,))
    return np.random.Generator(np.random.PCG64(ss))
