"""Fixed, documented pseudo-random generator.

All randomness in the experiment harness flows from :class:`XorShift64Star`
(algorithm id ``xorshift64star-v1``): Vigna's xorshift64* with shifts
(12, 25, 27) and output multiplier 0x2545F4914F6CDD1D. The 64-bit seed is
first passed through one round of splitmix64 so that small or zero seeds give
a well-mixed, non-zero state. The sequence is identical on every platform and
reproducible from any language with 64-bit unsigned arithmetic.
"""

from __future__ import annotations

ALGORITHM_ID = "xorshift64star-v1"

_MASK = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class XorShift64Star:
    """xorshift64* generator with rejection-sampled integer ranges."""

    algorithm = ALGORITHM_ID

    def __init__(self, seed: int):
        state = splitmix64(seed & _MASK)
        self.state = state or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * _MULT) & _MASK

    def randbelow(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` without modulo bias."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.randbelow(hi - lo + 1)

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))
