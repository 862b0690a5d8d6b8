"""Rational secure message transmission: finite-field primitives, threshold
and tamper-evident sharing, a deterministic multi-channel simulator, five
transmission protocols, and a game-theoretic evaluation harness.
"""

from .field import DEFAULT_BINARY_POLYS, FieldElement, FieldError, FieldSpec, Polynomial, interpolate
from .hashing import HashFamilySpec, HashFunction, offset_collision_prob_exhaustive
from .sharing import (
    FAIL,
    AmdCodeword,
    AmdSpec,
    RobustSharingSpec,
    SharingError,
    SharingSpec,
    ThresholdError,
    amd_decode,
    amd_encode,
    robust_reconstruct,
    robust_share,
    rs_reconstruct,
    rs_reconstruct_bruteforce,
    shamir_reconstruct,
    shamir_share,
)
from .transport import (
    EMPTY,
    AdversaryStrategy,
    AdversaryView,
    CorruptionProfile,
    Engine,
    PassiveStrategy,
    SimulationFault,
    Transcript,
    derive_rng,
    execute,
    view_of,
)

__version__ = "0.1.0"
