"""Threshold secret sharing and tamper-evident encodings.

Three layers:
  * Shamir sharing with plain and error-correcting reconstruction
    (Berlekamp-Welch, cross-checked by an exhaustive subset oracle),
  * an algebraic manipulation detection code (s, x, x^(d+2) + sum s_i x^i),
  * their composition: coordinate-wise Shamir sharing of the AMD codeword,
    which rejects any tampered reconstruction except with probability (d+1)/q.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .field import FieldElement, FieldSpec, Polynomial, interpolate


class SharingError(ValueError):
    pass


class ThresholdError(SharingError):
    pass


class _Fail:
    """Singleton failure symbol returned by detecting reconstructors."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "FAIL"

    def __bool__(self):
        return False


FAIL = _Fail()


@dataclass(frozen=True)
class SharingSpec:
    """(t, n) Shamir sharing over a field with fixed nonzero evaluation points."""

    t: int
    n: int
    field: FieldSpec
    eval_points: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        if not 0 < self.t < self.n:
            raise SharingError(f"need 0 < t < n, got t={self.t}, n={self.n}")
        if self.n > self.field.q - 1:
            raise SharingError(f"n={self.n} exceeds nonzero elements of {self.field}")
        pts = self.eval_points or tuple(range(1, self.n + 1))
        if len(pts) != self.n:
            raise SharingError("need one evaluation point per share")
        if len(set(pts)) != self.n or any(not 0 < p < self.field.q for p in pts):
            raise SharingError("evaluation points must be distinct and nonzero")
        object.__setattr__(self, "eval_points", tuple(pts))

    def point(self, index: int) -> int:
        """Evaluation point of channel `index` (1-based)."""
        return self.eval_points[index - 1]


def shamir_share(
    spec: SharingSpec,
    secret: FieldElement,
    rng: random.Random,
    coeffs: Sequence[FieldElement] | None = None,
) -> dict[int, FieldElement]:
    """Shares f(a_i) of f(x) = secret + r_1 x + ... + r_t x^t.

    `coeffs` forces the t random coefficients; used by tests and enumeration.
    """
    f = spec.field
    if secret.spec is not f:
        raise SharingError("secret from wrong field")
    if coeffs is None:
        coeffs = [f.random_element(rng) for _ in range(spec.t)]
    elif len(coeffs) != spec.t:
        raise SharingError(f"expected {spec.t} forced coefficients")
    poly = Polynomial(f, [secret, *coeffs])
    return {i: f.element(poly.eval_int(spec.point(i))) for i in range(1, spec.n + 1)}


def shamir_reconstruct(spec: SharingSpec, subset: Mapping[int, FieldElement]) -> FieldElement:
    if len(subset) < spec.t + 1:
        raise ThresholdError(f"need at least {spec.t + 1} shares, got {len(subset)}")
    f = spec.field
    points = [(f.element(spec.point(i)), s) for i, s in subset.items()]
    return interpolate(points)(f.zero)


def rs_reconstruct(spec: SharingSpec, shares: Mapping[int, FieldElement], max_errors: int):
    """Error-correcting reconstruction tolerating up to `max_errors` bad shares.

    Returns the unique secret whose degree-<=t sharing agrees with at least
    n - max_errors of the given shares, or FAIL if none exists.  Uses
    Berlekamp-Welch with an exhaustive-subset fallback on singular systems.
    """
    e = max_errors
    n = spec.n
    if len(shares) != n:
        raise SharingError("error-correcting reconstruction needs all n shares")
    if n < (spec.t + 1) + 2 * e:
        raise SharingError(f"n={n} too small for t={spec.t}, e={e}")

    f = spec.field
    xs = [spec.point(i) for i in sorted(shares)]
    ys = [shares[i].value for i in sorted(shares)]

    # Fast path: no errors among the first t+1 shares.  Also covers the
    # zero-error case where the Berlekamp-Welch system is underdetermined.
    head = interpolate(
        [(f.element(x), f.element(y)) for x, y in zip(xs[: spec.t + 1], ys[: spec.t + 1])]
    )
    if _agreement_int(f, xs, ys, head) >= n - e:
        return f.element(head.eval_int(0))
    if e == 0:
        return FAIL

    solution = _berlekamp_welch(f, xs, ys, spec.t, e)
    if solution is None:
        if n <= 12:
            return rs_reconstruct_bruteforce(spec, shares, e)
        return FAIL
    poly = solution
    if _agreement_int(f, xs, ys, poly) >= n - e:
        return f.element(poly.eval_int(0))
    return FAIL


def rs_reconstruct_bruteforce(
    spec: SharingSpec, shares: Mapping[int, FieldElement], max_errors: int
):
    """Independent oracle: try every (t+1)-subset and look for a polynomial
    consistent with at least n - max_errors shares.  Any two such polynomials
    agree on >= t+1 points and are therefore equal, so the answer is unique."""
    f = spec.field
    n = spec.n
    indices = sorted(shares)
    xs = [spec.point(i) for i in indices]
    ys = [shares[i].value for i in indices]
    for subset in itertools.combinations(range(n), spec.t + 1):
        points = [(f.element(xs[i]), f.element(ys[i])) for i in subset]
        poly = interpolate(points)
        if _agreement_int(f, xs, ys, poly) >= n - max_errors:
            return f.element(poly.eval_int(0))
    return FAIL


def _agreement_int(f: FieldSpec, xs, ys, poly: Polynomial) -> int:
    return sum(1 for x, y in zip(xs, ys) if poly.eval_int(x) == y)


def _berlekamp_welch(f: FieldSpec, xs, ys, t: int, e: int) -> Polynomial | None:
    """Solve Q(x_i) = y_i * E(x_i) with deg Q <= e + t, E monic of degree e.

    Returns Q/E if the system is solvable and division is exact, else None.
    """
    n = len(xs)
    nq = e + t + 1  # unknown coefficients of Q
    ne = e  # unknown non-leading coefficients of E
    rows = []
    for x, y in zip(xs, ys):
        row = []
        xp = 1
        for _ in range(nq):
            row.append(xp)
            xp = f.mul_int(xp, x)
        xp = 1
        for _ in range(ne):
            row.append(f.neg_int(f.mul_int(y, xp)))
            xp = f.mul_int(xp, x)
        # Move the monic x^e term of E to the right-hand side.
        rhs = f.mul_int(y, f.pow_int(x, e))
        rows.append((row, rhs))
    sol = _solve_linear(f, rows, nq + ne)
    if sol is None:
        return None
    q_coeffs = sol[:nq]
    e_coeffs = sol[nq:] + [1]  # monic
    quot = _poly_divide_exact(f, q_coeffs, e_coeffs)
    if quot is None:
        return None
    return Polynomial(f, [f.element(c) for c in quot])


def _solve_linear(f: FieldSpec, rows, ncols: int):
    """Gaussian elimination; returns one solution or None if inconsistent or
    underdetermined in a way that leaves no pivot solution."""
    mat = [list(row) + [rhs] for row, rhs in rows]
    nrows = len(mat)
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = f.inv_int(mat[r][c])
        mat[r] = [f.mul_int(v, inv) for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [f.sub_int(v, f.mul_int(factor, w)) for v, w in zip(mat[i], mat[r])]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if mat[i][ncols] != 0:
            return None  # inconsistent
    sol = [0] * ncols
    for row_idx, c in enumerate(pivot_cols):
        sol[c] = mat[row_idx][ncols]
    if len(pivot_cols) < ncols:
        return None  # underdetermined: caller falls back to the subset oracle
    return sol


def _poly_divide_exact(f: FieldSpec, num, den):
    """Exact polynomial division num/den, or None on nonzero remainder."""
    num = list(num)
    dd = len(den) - 1
    while dd > 0 and den[dd] == 0:
        dd -= 1
    nd = len(num) - 1
    while nd > 0 and num[nd] == 0:
        nd -= 1
    if nd < dd:
        return None if any(c != 0 for c in num) else [0]
    quot = [0] * (nd - dd + 1)
    lead_inv = f.inv_int(den[dd])
    for k in range(nd - dd, -1, -1):
        coef = f.mul_int(num[k + dd], lead_inv)
        quot[k] = coef
        for j in range(dd + 1):
            num[k + j] = f.sub_int(num[k + j], f.mul_int(coef, den[j]))
    if any(c != 0 for c in num):
        return None
    return quot


# --- AMD code ---------------------------------------------------------------


@dataclass(frozen=True)
class AmdSpec:
    """Message length d over a field; tag is x^(d+2) + sum_i s_i x^i."""

    field: FieldSpec
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise SharingError("d must be >= 1")
        if (self.d + 2) % self.field.char == 0:
            raise SharingError(
                f"d+2={self.d + 2} divisible by field characteristic {self.field.char}"
            )

    @property
    def delta(self) -> float:
        """Undetected-manipulation probability bound (d+1)/q."""
        return (self.d + 1) / self.field.q


@dataclass(frozen=True)
class AmdCodeword:
    s: tuple[FieldElement, ...]
    x: FieldElement
    tag: FieldElement


def _amd_tag(spec: AmdSpec, s: Sequence[FieldElement], x: int) -> int:
    f = spec.field
    tag = f.pow_int(x, spec.d + 2)
    xp = x
    for si in s:
        tag = f.add_int(tag, f.mul_int(si.value, xp))
        xp = f.mul_int(xp, x)
    return tag


def amd_encode(
    spec: AmdSpec,
    s: Sequence[FieldElement],
    rng: random.Random,
    x: FieldElement | None = None,
) -> AmdCodeword:
    if len(s) != spec.d:
        raise SharingError(f"message must have {spec.d} elements")
    if x is None:
        x = spec.field.random_element(rng)
    return AmdCodeword(tuple(s), x, spec.field.element(_amd_tag(spec, s, x.value)))


def amd_decode(spec: AmdSpec, c: AmdCodeword):
    if _amd_tag(spec, c.s, c.x.value) == c.tag.value:
        return c.s
    return FAIL


# --- Robust sharing: Shamir of the AMD codeword -----------------------------


@dataclass(frozen=True)
class RobustSharingSpec:
    amd: AmdSpec
    inner: SharingSpec

    def __post_init__(self):
        if self.amd.field is not self.inner.field:
            raise SharingError("AMD code and inner sharing must share one field")

    @property
    def delta(self) -> float:
        return self.amd.delta

    @property
    def share_len(self) -> int:
        return self.amd.d + 2


def robust_share(
    spec: RobustSharingSpec,
    secret: Sequence[FieldElement],
    rng: random.Random,
    coeff_matrix: Sequence[Sequence[FieldElement]] | None = None,
    x: FieldElement | None = None,
) -> dict[int, tuple[FieldElement, ...]]:
    """AMD-encode, then Shamir-share each of the d+2 codeword coordinates
    with an independent polynomial.  Share i is a (d+2)-vector."""
    cw = amd_encode(spec.amd, secret, rng, x=x)
    coords = [*cw.s, cw.x, cw.tag]
    per_coord = []
    for k, coord in enumerate(coords):
        forced = coeff_matrix[k] if coeff_matrix is not None else None
        per_coord.append(shamir_share(spec.inner, coord, rng, coeffs=forced))
    return {
        i: tuple(per_coord[k][i] for k in range(len(coords)))
        for i in range(1, spec.inner.n + 1)
    }


def robust_reconstruct(spec: RobustSharingSpec, subset: Mapping[int, Sequence[FieldElement]]):
    if len(subset) < spec.inner.t + 1:
        raise ThresholdError(f"need at least {spec.inner.t + 1} shares")
    width = spec.share_len
    coords = []
    for k in range(width):
        coords.append(
            shamir_reconstruct(spec.inner, {i: vec[k] for i, vec in subset.items()})
        )
    cw = AmdCodeword(tuple(coords[: spec.amd.d]), coords[-2], coords[-1])
    return amd_decode(spec.amd, cw)
