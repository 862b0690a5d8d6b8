"""Three-round transmission over n channels plus an authenticated public
channel, with per-channel key pairs and hash-based tamper flags.

Round 1 (channels, S->R): fresh (r_i, R_i) per channel.
Round 2 (public, R->S):   length flags B and, per surviving channel, a hash
                          function h_i with offset T'_i = r'_i xor h_i(R'_i).
Round 3 (public, S->R):   flags V marking channels whose offset disagrees with
                          the sender's own T_i = r_i xor h_i(R_i), plus the
                          ciphertext c = m xor XOR of the surviving R_i.
The receiver unmasks with its stored R'_i on channels with b_i = v_i = 0.

Channels flagged in B or V raise detection events; an undetected wrong output
requires a hash collision on some tampered channel, which happens with
probability at most (n-1) * 2^(1-l).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..hashing import HashFamilySpec, HashFunction
from ..transport import RECEIVER_TO_SENDER, SENDER_TO_RECEIVER
from .base import Protocol, ProtocolError, int_in_range


@dataclass
class SjstSenderState:
    keys: dict[int, tuple[int, int]]  # i -> (r_i, R_i)


@dataclass
class SjstReceiverState:
    b: tuple[int, ...]
    received: dict[int, tuple[int, int]]  # i -> (r'_i, R'_i) for b_i = 0
    hashes: dict[int, HashFunction]


class SjstProtocol(Protocol):
    """Configuration: n channels, l tag bits, k key/message bits."""

    variant = "SJST"
    uses_public = True

    __slots__ = ("n", "ell", "k", "family")

    def __init__(self, n: int, ell: int, k: int):
        if n < 1:
            raise ProtocolError("need n >= 1 channels")
        if not 1 <= ell <= k:
            raise ProtocolError(f"need 1 <= ell <= k, got ell={ell}, k={k}")
        self.n = n
        self.ell = ell
        self.k = k
        self.family = HashFamilySpec(k, ell)

    def message_space_size(self) -> int:
        return 1 << self.k

    def sample_message(self, rng: random.Random) -> int:
        return rng.getrandbits(self.k)

    def run(self, engine, m: int):
        if not int_in_range(m, self.k):
            raise ProtocolError(f"message must be a {self.k}-bit integer")
        state_s, payloads = sjst_round1_sender(self, engine.sender_rng)
        delivered = engine.send_round(SENDER_TO_RECEIVER, payloads)
        pub2, state_r, detects2 = sjst_round2_receiver(self, delivered, engine.receiver_rng)
        engine.send_public(RECEIVER_TO_SENDER, pub2)
        for i in detects2:
            engine.emit_detect(i)
        pub3, detects3 = sjst_round3_sender(self, state_s, pub2, m)
        engine.send_public(SENDER_TO_RECEIVER, pub3)
        for i in detects3:
            engine.emit_detect(i)
        return sjst_finalize_receiver(self, state_r, pub3)

    def to_json(self) -> dict:
        return {"variant": "SJST", "n": self.n, "ell": self.ell, "k": self.k}


def sjst_round1_sender(spec: SjstProtocol, rng: random.Random):
    """Fresh uniform key pair (r_i, R_i) on every channel."""
    keys = {
        i: (rng.getrandbits(spec.ell), rng.getrandbits(spec.k))
        for i in range(1, spec.n + 1)
    }
    return SjstSenderState(keys), dict(keys)


def _well_formed_round1(spec: SjstProtocol, payload) -> bool:
    return (
        isinstance(payload, tuple)
        and len(payload) == 2
        and int_in_range(payload[0], spec.ell)
        and int_in_range(payload[1], spec.k)
    )


def sjst_round2_receiver(spec: SjstProtocol, payloads, rng: random.Random):
    """Flag malformed channels, commit hash offsets for the rest.

    Returns (public payload (B, H), retained state, detected channels).
    """
    b = []
    received = {}
    hashes = {}
    h_entries = []
    detects = []
    for i in range(1, spec.n + 1):
        payload = payloads[i]
        if not _well_formed_round1(spec, payload):
            b.append(1)
            h_entries.append(None)  # ABSENT
            detects.append(i)
            continue
        r_i, big_r_i = payload
        b.append(0)
        received[i] = (r_i, big_r_i)
        h = spec.family.sample(rng)
        hashes[i] = h
        h_entries.append((h.a, h.b, r_i ^ h.evaluate(big_r_i)))
    public = (tuple(b), tuple(h_entries))
    return public, SjstReceiverState(tuple(b), received, hashes), detects


def sjst_round3_sender(spec: SjstProtocol, state: SjstSenderState, public, m: int):
    """Compare offsets, flag disagreements, mask the message.

    Returns (public payload (V, c), detected channels).
    """
    b, h_entries = public
    v = []
    detects = []
    mask = 0
    for i in range(1, spec.n + 1):
        if b[i - 1] == 1:
            v.append(0)  # already flagged; V covers only surviving channels
            continue
        a, hb, t_prime = h_entries[i - 1]
        r_i, big_r_i = state.keys[i]
        h = HashFunction(spec.family, a, hb)
        t_i = r_i ^ h.evaluate(big_r_i)
        if t_i != t_prime:
            v.append(1)
            detects.append(i)
        else:
            v.append(0)
            mask ^= big_r_i
    return (tuple(v), m ^ mask), detects


def sjst_finalize_receiver(spec: SjstProtocol, state: SjstReceiverState, public) -> int:
    """Unmask with the stored R'_i of channels with b_i = v_i = 0."""
    v, c = public
    mask = 0
    for i in range(1, spec.n + 1):
        if state.b[i - 1] == 0 and v[i - 1] == 0:
            mask ^= state.received[i][1]
    return c ^ mask
