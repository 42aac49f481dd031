"""Deterministic, platform-independent randomness.

Results must be bit-identical for a fixed seed on every platform, so no
standard-library or numpy generator is used anywhere that affects output.
All streams are splitmix64: state advances by a fixed odd constant and is
scrambled by two xor-multiply rounds.  ``derive_seed`` folds integers into
a child seed so independent work units (sweep cells, trial indices) get
decorrelated streams without sharing state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """splitmix64 stream over 64-bit states."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix64(self._state)

    def uniform01(self) -> float:
        """Float in [0, 1) with 53 random mantissa bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi]; modulo draw, bias ~range/2**64 is irrelevant here."""
        if hi < lo:
            raise DomainError(f"empty integer range [{lo}, {hi}]")
        return lo + self.next_u64() % (hi - lo + 1)


def derive_seed(*parts: int) -> int:
    """Fold integers into a 64-bit child seed; order-sensitive."""
    acc = 0
    for part in parts:
        acc = _mix64((acc ^ (part & _MASK64)) + _GAMMA & _MASK64)
    return acc


@dataclass(frozen=True)
class Uniform01:
    """Entries drawn i.i.d. uniform on [0, 1)."""

    def sample(self, rng: SplitMix64) -> float:
        return rng.uniform01()


@dataclass(frozen=True)
class IntegerRange:
    """Entries drawn i.i.d. uniform on the integers {lo..hi}."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.hi < self.lo:
            raise DomainError(f"empty integer range [{self.lo}, {self.hi}]")

    def sample(self, rng: SplitMix64) -> float:
        return float(rng.randint(self.lo, self.hi))


Distribution = Uniform01 | IntegerRange
