import itertools
import random
from collections import Counter

import pytest

from rsmt.field import FieldSpec
from rsmt.sharing import (
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

GF7 = FieldSpec.prime(7)
GF5 = FieldSpec.prime(5)
GF16 = FieldSpec.binary(4)


def test_fail_is_falsy_singleton():
    assert not FAIL
    assert repr(FAIL) == "FAIL"
    assert FAIL is type(FAIL)()


def test_spec_validation():
    with pytest.raises(SharingError):
        SharingSpec(t=3, n=3, field=GF7)
    with pytest.raises(SharingError):
        SharingSpec(t=0, n=3, field=GF7)
    with pytest.raises(SharingError):
        SharingSpec(t=1, n=7, field=GF7)  # only 6 nonzero points
    with pytest.raises(SharingError):
        SharingSpec(t=1, n=3, field=GF7, eval_points=(1, 1, 2))
    with pytest.raises(SharingError):
        SharingSpec(t=1, n=3, field=GF7, eval_points=(0, 1, 2))


def test_default_eval_points():
    spec = SharingSpec(t=1, n=3, field=GF7)
    assert spec.eval_points == (1, 2, 3)
    assert spec.point(2) == 2


def test_shamir_share_frozen_example():
    # f(x) = 5 + 3x over GF(7): f(1)=1, f(2)=4, f(3)=0
    spec = SharingSpec(t=1, n=3, field=GF7)
    shares = shamir_share(spec, GF7.element(5), random.Random(0), coeffs=[GF7.element(3)])
    assert {i: s.value for i, s in shares.items()} == {1: 1, 2: 4, 3: 0}


def test_shamir_reconstruct_from_any_pair():
    spec = SharingSpec(t=1, n=3, field=GF7)
    shares = shamir_share(spec, GF7.element(5), random.Random(0), coeffs=[GF7.element(3)])
    for pair in itertools.combinations(shares, 2):
        subset = {i: shares[i] for i in pair}
        assert shamir_reconstruct(spec, subset).value == 5


def test_shamir_reconstruct_needs_t_plus_one():
    spec = SharingSpec(t=1, n=3, field=GF7)
    shares = shamir_share(spec, GF7.element(5), random.Random(0))
    with pytest.raises(ThresholdError):
        shamir_reconstruct(spec, {1: shares[1]})


def test_shamir_roundtrip_random():
    rng = random.Random(2)
    for f in (GF7, GF16, FieldSpec.binary(8)):
        for _ in range(50):
            n = rng.randrange(3, min(9, f.q))
            t = rng.randrange(1, n)
            spec = SharingSpec(t=t, n=n, field=f)
            secret = f.random_element(rng)
            shares = shamir_share(spec, secret, rng)
            picked = rng.sample(sorted(shares), t + 1)
            assert shamir_reconstruct(spec, {i: shares[i] for i in picked}) == secret


def test_shamir_privacy_exhaustive():
    # t=1 over GF(5): any single share is uniform regardless of the secret.
    spec = SharingSpec(t=1, n=3, field=GF5)
    for i in (1, 2, 3):
        dists = []
        for secret in range(5):
            c = Counter(
                shamir_share(
                    spec, GF5.element(secret), random.Random(0), coeffs=[GF5.element(r)]
                )[i].value
                for r in range(5)
            )
            dists.append(c)
        assert all(d == dists[0] for d in dists)
        assert set(dists[0].values()) == {1}


def test_shamir_pair_leaks_with_t1():
    # Sanity check on the harness: t+1 shares together DO determine the secret.
    spec = SharingSpec(t=1, n=3, field=GF5)
    seen = {
        (
            shamir_share(spec, GF5.element(s), random.Random(0), coeffs=[GF5.element(r)])[1].value,
            shamir_share(spec, GF5.element(s), random.Random(0), coeffs=[GF5.element(r)])[2].value,
        ): s
        for s in range(5)
        for r in range(5)
    }
    assert len(seen) == 25  # distinct secrets never produce the same share pair


def test_rs_reconstruct_frozen_example():
    # f(x) = 5 + 3x over GF(7), n=4: shares (1, 4, 0, 3); corrupt share 3.
    spec = SharingSpec(t=1, n=4, field=GF7)
    shares = {1: GF7.element(1), 2: GF7.element(4), 3: GF7.element(6), 4: GF7.element(3)}
    assert rs_reconstruct(spec, shares, max_errors=1).value == 5
    assert rs_reconstruct_bruteforce(spec, shares, max_errors=1).value == 5


def test_rs_reconstruct_zero_errors():
    spec = SharingSpec(t=1, n=3, field=GF7)
    shares = shamir_share(spec, GF7.element(2), random.Random(1))
    assert rs_reconstruct(spec, shares, max_errors=0).value == 2
    shares[2] = GF7.element((shares[2].value + 1) % 7)
    assert rs_reconstruct(spec, shares, max_errors=0) is FAIL


def test_rs_reconstruct_requires_capacity():
    spec = SharingSpec(t=2, n=4, field=GF7)
    shares = shamir_share(spec, GF7.element(1), random.Random(0))
    with pytest.raises(SharingError):
        rs_reconstruct(spec, shares, max_errors=1)  # needs n >= t+1+2e = 5
    with pytest.raises(SharingError):
        rs_reconstruct(spec, {1: shares[1]}, max_errors=0)


def test_rs_reconstruct_corrects_up_to_e_errors():
    rng = random.Random(3)
    spec = SharingSpec(t=2, n=8, field=GF16)
    for _ in range(200):
        secret = GF16.random_element(rng)
        shares = shamir_share(spec, secret, rng)
        bad = rng.sample(sorted(shares), rng.randrange(0, 3))  # e <= 2
        for i in bad:
            shares[i] = GF16.element((shares[i].value + rng.randrange(1, 16)) % 16)
        assert rs_reconstruct(spec, shares, max_errors=2) == secret


def test_rs_reconstruct_matches_bruteforce_on_garbage():
    # Arbitrary share vectors: both decoders must agree exactly, incl. FAIL.
    rng = random.Random(4)
    spec = SharingSpec(t=1, n=5, field=GF7)
    for _ in range(300):
        shares = {i: GF7.random_element(rng) for i in range(1, 6)}
        got = rs_reconstruct(spec, shares, max_errors=1)
        want = rs_reconstruct_bruteforce(spec, shares, max_errors=1)
        assert got is want or got == want


def test_rs_reconstruct_matches_bruteforce_exhaustive_tiny():
    # GF(5), t=1, n=4, e=1: all 5^4 share vectors.
    spec = SharingSpec(t=1, n=4, field=GF5)
    for vals in itertools.product(range(5), repeat=4):
        shares = {i + 1: GF5.element(v) for i, v in enumerate(vals)}
        got = rs_reconstruct(spec, shares, max_errors=1)
        want = rs_reconstruct_bruteforce(spec, shares, max_errors=1)
        assert got is want or got == want


# --- AMD code ---------------------------------------------------------------


def test_amd_spec_validation():
    with pytest.raises(SharingError):
        AmdSpec(GF7, 0)
    with pytest.raises(SharingError):
        AmdSpec(GF5, 3)  # d+2 = 5 vanishes in characteristic 5


def test_amd_delta_values():
    assert AmdSpec(GF5, 1).delta == 2 / 5
    assert AmdSpec(GF7, 1).delta == 2 / 7
    assert AmdSpec(FieldSpec.binary(2), 1).delta == 2 / 4


def test_amd_encode_frozen_example():
    # tag = x^3 + s1*x with s = (3,), x = 2 over GF(7): 8 + 6 = 0
    spec = AmdSpec(GF7, 1)
    cw = amd_encode(spec, [GF7.element(3)], random.Random(0), x=GF7.element(2))
    assert cw.tag.value == 0
    assert amd_decode(spec, cw) == (GF7.element(3),)


def test_amd_roundtrip_random():
    rng = random.Random(5)
    for f, d in ((GF7, 1), (GF16, 3), (FieldSpec.prime(11), 3)):
        spec = AmdSpec(f, d)
        for _ in range(100):
            s = [f.random_element(rng) for _ in range(d)]
            assert amd_decode(spec, amd_encode(spec, s, rng)) == tuple(s)


def test_amd_wrong_length_rejected():
    with pytest.raises(SharingError):
        amd_encode(AmdSpec(GF7, 2), [GF7.element(1)], random.Random(0))


def test_amd_manipulation_bound_exhaustive():
    # For every message and every nonzero additive offset, the fraction of
    # encoding randomness x that leaves the tampered word valid is <= (d+1)/q.
    spec = AmdSpec(GF5, 1)
    for s in range(5):
        msg = [GF5.element(s)]
        for ds, dx, dt in itertools.product(range(5), repeat=3):
            if (ds, dx, dt) == (0, 0, 0):
                continue
            accepted = 0
            for x in range(5):
                cw = amd_encode(spec, msg, random.Random(0), x=GF5.element(x))
                tampered = AmdCodeword(
                    (GF5.element((s + ds) % 5),),
                    GF5.element((x + dx) % 5),
                    GF5.element((cw.tag.value + dt) % 5),
                )
                if amd_decode(spec, tampered) is not FAIL:
                    accepted += 1
            assert accepted / 5 <= spec.delta


# --- Robust sharing ---------------------------------------------------------

RSPEC = RobustSharingSpec(AmdSpec(GF7, 1), SharingSpec(t=1, n=3, field=GF7))


def test_robust_spec_validation():
    with pytest.raises(SharingError):
        RobustSharingSpec(AmdSpec(GF7, 1), SharingSpec(t=1, n=3, field=GF5))
    assert RSPEC.share_len == 3
    assert RSPEC.delta == 2 / 7


def test_robust_roundtrip():
    rng = random.Random(6)
    for _ in range(100):
        secret = [GF7.random_element(rng)]
        shares = robust_share(RSPEC, secret, rng)
        assert all(len(v) == 3 for v in shares.values())
        picked = rng.sample(sorted(shares), 2)
        assert robust_reconstruct(RSPEC, {i: shares[i] for i in picked}) == tuple(secret)


def test_robust_reconstruct_needs_t_plus_one():
    shares = robust_share(RSPEC, [GF7.element(1)], random.Random(0))
    with pytest.raises(ThresholdError):
        robust_reconstruct(RSPEC, {1: shares[1]})


def test_robust_privacy_exhaustive():
    # t=1: the distribution of any single share vector is identical for all
    # secrets.  Enumerate all randomness: x and one coefficient per coordinate.
    dists = []
    for secret in range(7):
        c = Counter()
        for x in range(7):
            for r0 in range(7):
                for r1 in range(7):
                    for r2 in range(7):
                        coeffs = [[GF7.element(r0)], [GF7.element(r1)], [GF7.element(r2)]]
                        shares = robust_share(
                            RSPEC,
                            [GF7.element(secret)],
                            random.Random(0),
                            coeff_matrix=coeffs,
                            x=GF7.element(x),
                        )
                        c[tuple(e.value for e in shares[2])] += 1
        dists.append(c)
    assert all(d == dists[0] for d in dists)


def test_robust_tamper_detection_rate():
    # One tampered share vector inside the reconstruction subset: accepting a
    # secret different from the original must stay within delta = 2/7 (plus
    # sampling slack).  Decoding back to the original secret is harmless.
    rng = random.Random(7)
    trials = 2000
    wrong = 0
    for _ in range(trials):
        secret = [GF7.random_element(rng)]
        shares = robust_share(RSPEC, secret, rng)
        offset = [rng.randrange(7) for _ in range(3)]
        if all(o == 0 for o in offset):
            offset[0] = 1 + rng.randrange(6)
        tampered = tuple(
            GF7.element((v.value + o) % 7) for v, o in zip(shares[2], offset)
        )
        out = robust_reconstruct(RSPEC, {1: shares[1], 2: tampered})
        if out is not FAIL and out != tuple(secret):
            wrong += 1
    assert wrong / trials <= RSPEC.delta + 0.03
