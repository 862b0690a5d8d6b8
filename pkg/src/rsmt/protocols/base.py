"""Common protocol interface.

A protocol instance is a fixed configuration (n, field, lengths, thresholds).
`run` drives one execution through a transport engine; everything else is a
pure helper so rounds can be unit-tested without a transport.
"""

from __future__ import annotations

import random
from typing import Any


class ProtocolError(ValueError):
    pass


class Protocol:
    """Interface shared by every transmission protocol variant."""

    variant: str
    n: int
    uses_public: bool

    def message_space_size(self) -> int:
        raise NotImplementedError

    def sample_message(self, rng: random.Random):
        raise NotImplementedError

    def run(self, engine, m) -> Any:
        """Execute on message m; returns the receiver's output (or FAIL)."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def int_in_range(v, width_bits: int) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and 0 <= v < (1 << width_bits)


def vector_in_field(v, q: int, length: int) -> bool:
    return (
        isinstance(v, tuple)
        and len(v) == length
        and all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < q for x in v)
    )
