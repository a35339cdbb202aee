"""Portable deterministic random numbers.

All randomness in this package flows through :class:`SplitMix64`, a tiny
64-bit generator with a public-domain reference implementation.  The point
is reproducibility: given the same seed, the generated synthetic datasets
and K-means runs are identical on every platform, and a port to another
language can reproduce the exact integer stream from the three-line core.

Derived values are pinned to explicit formulas so they are part of the
contract:

* ``uniform``: take the top 53 bits of the next output,
  ``(x >> 11) * 2.0**-53`` -> float in [0, 1).
* ``normal``: Box-Muller on two uniforms, ``sqrt(-2 ln u1) * cos(2 pi u2)``
  and the matching ``sin`` partner (the pair is consumed in order).
  ``u1`` is shifted into (0, 1] to avoid ``log(0)``.
* ``randint``: ``next_u64() % bound`` (modulo bias is negligible for the
  small bounds used here and keeps the mapping trivially portable).

The integer stream is bit-exact everywhere; the derived floats match
across platforms up to libm rounding of ``log``/``cos``/``sin``, which in
practice means bit-identical results on IEEE-754 systems with correctly
rounded libraries.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 pseudo-random generator (Steele, Lea & Flood 2014)."""

    __slots__ = ("_state", "_spare_normal")

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._spare_normal: float | None = None

    def next_u64(self) -> int:
        """Advance the state and return the next 64-bit output."""
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Next float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self, std: float = 1.0, mean: float = 0.0) -> float:
        """Next Gaussian draw via Box-Muller (pairs are cached)."""
        if self._spare_normal is not None:
            z = self._spare_normal
            self._spare_normal = None
        else:
            # u1 in (0, 1] so log() is finite.
            u1 = ((self.next_u64() >> 11) + 1) * 2.0**-53
            u2 = self.uniform()
            r = math.sqrt(-2.0 * math.log(u1))
            z = r * math.cos(2.0 * math.pi * u2)
            self._spare_normal = r * math.sin(2.0 * math.pi * u2)
        return mean + std * z

    def randint(self, bound: int) -> int:
        """Next integer in {0, ..., bound-1}."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def spawn(self) -> "SplitMix64":
        """Derive an independent child generator (consumes one output)."""
        return SplitMix64(self.next_u64())
