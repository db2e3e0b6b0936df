"""Cyclic degree sequences on a cycle of s projective lines.

A sequence of multiplicity r assigns one integer to each of the r*s
positions obtained by walking the cycle r times.  Positions are cyclic
(position i + r*s is position i), and the only relabelings that preserve
the underlying geometry are rotations by whole copies of the cycle, i.e.
by multiples of s.  This module provides that rotation, the aperiodicity
test, the canonical (lexicographically least) representative, and bounded
enumeration of canonical representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

__all__ = [
    "SSeq",
    "shift_by",
    "is_aperiodic",
    "canonical_form",
    "enumerate_canonical",
]


@dataclass(frozen=True)
class SSeq:
    """An integer sequence of length r*s, considered up to rotation by s.

    Attributes:
        s: number of components of the cycle (positive).
        entries: the degrees, one per walk position; the length must be a
            positive multiple of s.
    """

    s: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.s < 1:
            raise ValueError(f"component count must be positive, got {self.s}")
        entries = tuple(self.entries)
        if not entries:
            raise ValueError("sequence must be nonempty")
        if any(not isinstance(e, int) for e in entries):
            raise ValueError("sequence entries must be integers")
        if len(entries) % self.s:
            raise ValueError(
                f"sequence length {len(entries)} is not a multiple of s={self.s}"
            )
        object.__setattr__(self, "entries", entries)

    @property
    def r(self) -> int:
        """How many times the sequence walks around the cycle."""
        return len(self.entries) // self.s

    def __str__(self) -> str:
        return "[" + ",".join(str(e) for e in self.entries) + "]"


def shift_by(seq: SSeq, k: int) -> SSeq:
    """Rotate by k copies of the cycle; entry i of the result is entry i + k*s."""
    cut = (k % seq.r) * seq.s
    return SSeq(seq.s, seq.entries[cut:] + seq.entries[:cut])


def is_aperiodic(seq: SSeq) -> bool:
    """True unless the sequence is a repetition of a strictly shorter s-sequence."""
    e = seq.entries
    n = len(e)
    for cut in range(seq.s, n, seq.s):
        if n % cut == 0 and e == e[:cut] * (n // cut):
            return False
    return True


def canonical_form(seq: SSeq) -> SSeq:
    """The lexicographically least among the r rotations of the sequence."""
    e = seq.entries
    best = e
    for cut in range(seq.s, len(e), seq.s):
        rot = e[cut:] + e[:cut]
        if rot < best:
            best = rot
    return SSeq(seq.s, best)


def enumerate_canonical(s: int, max_r: int, lo: int, hi: int) -> list[SSeq]:
    """All aperiodic canonical sequences with r <= max_r and entries in [lo, hi].

    Canonical means equal to its own canonical form, so each rotation class
    appears exactly once.  The result is ordered by (length, entries).

    Raises:
        ValueError: for an empty entry range (lo > hi) or max_r < 1.
    """
    if s < 1:
        raise ValueError(f"component count must be positive, got {s}")
    if max_r < 1:
        raise ValueError(f"max_r must be positive, got {max_r}")
    if lo > hi:
        raise ValueError(f"empty entry range: lo={lo} is greater than hi={hi}")
    found: list[SSeq] = []
    values = range(lo, hi + 1)
    for r in range(1, max_r + 1):
        for entries in product(values, repeat=r * s):
            seq = SSeq(s, entries)
            if is_aperiodic(seq) and canonical_form(seq).entries == entries:
                found.append(seq)
    return found
