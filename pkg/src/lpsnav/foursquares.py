"""Sum-of-four-squares solver under linear congruence constraints.

Solves x² + y² + z² + w² = N with x ≡ r1, y ≡ r2, z ≡ w ≡ 0 (mod M).
Writing x = M*t1 + r1, y = M*t2 + r2 reduces the problem to making
F(t1, t2) = (N - x² - y²) / M² a sum of two squares, where (t1, t2) ranges
over the affine lattice of solutions of 2*r1*t1 + 2*r2*t2 ≡ k (mod M),
k = (N - r1² - r2²)/M.  Parametrizing that lattice by a Gauss-reduced basis
turns F into an integer quadratic that is nonnegative exactly on an ellipse;
candidates are enumerated in order of increasing parameter norm and each
F-value is certified (or rejected) as a sum of two squares.

Two admission policies: "exact" fully factors every candidate, so the final
verdict distinguishes certified absence from a factoring-budget failure;
"fast" only accepts candidates of the form 2^s, 2^s * prime ≡ 1 (mod 4),
rejects values ≡ 3 (mod 4) outright (never sums of two squares), and skips
whatever it cannot certify cheaply.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import InfeasibleCongruence, ParameterError
from .lattice2 import (
    Vec2,
    congruence_lattice,
    dot,
    gauss_reduce,
    norm_sq,
    particular_solution,
    shortest_coset_vector,
)
from .ntheory import (
    DEFAULT_RHO_BUDGET,
    TwoSquares,
    is_prime,
    two_squares,
    two_squares_prime,
)

__all__ = [
    "FourSquaresInstance",
    "CandidateForm",
    "SolveResult",
    "FAST_MODE_THRESHOLD",
    "build_form",
    "enumerate_candidates",
    "solve",
]

FAST_MODE_THRESHOLD = 10**18


@dataclass(frozen=True)
class FourSquaresInstance:
    """x² + y² + z² + w² = n with x ≡ r1, y ≡ r2, z ≡ w ≡ 0 (mod modulus)."""

    n: int
    modulus: int
    r1: int
    r2: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ParameterError("n must be nonnegative")
        if self.modulus < 1:
            raise ParameterError("modulus must be positive")
        if (self.r1 * self.r1 + self.r2 * self.r2 - self.n) % self.modulus != 0:
            raise ParameterError("instance needs r1² + r2² ≡ n (mod modulus)")


@dataclass(frozen=True)
class CandidateForm:
    """The quadratic F plus everything needed to enumerate and assemble solutions."""

    n: int
    modulus: int
    k: int
    r1: int
    r2: int
    u0: Vec2
    u1: Vec2
    u2: Vec2
    u0p: int
    u1p: int
    u2p: int
    d1sq: int  # (2*M*|u1|)²  — box predicates stay in integers
    d2sq: int  # (2*M*|u2|)²

    def point(self, x1: int, x2: int) -> Vec2:
        return (
            self.u0[0] + x1 * self.u1[0] + x2 * self.u2[0],
            self.u0[1] + x1 * self.u1[1] + x2 * self.u2[1],
        )

    def f_value(self, x1: int, x2: int) -> int:
        t1, t2 = self.point(x1, x2)
        return self.u0p - x1 * self.u1p - x2 * self.u2p - t1 * t1 - t2 * t2

    def in_box(self, x1: int, x2: int, scale: int = 1) -> bool:
        """Membership in scale*C, where C = [-A, A] x [-B, B] (exact integer test)."""
        s2n = scale * scale * self.n
        if x1 * x1 * self.d1sq > s2n:
            return False
        m = abs(x2) + scale
        return m * m * self.d2sq <= s2n

    def box_a(self) -> float:
        """A = sqrt(n)/(2*M*|u1|) as a float, for reporting only."""
        return math.sqrt(float(Fraction(4 * self.n, self.d1sq))) / 2

    def box_b(self) -> float:
        """B = sqrt(n)/(2*M*|u2|) - 1 as a float, for reporting only."""
        return math.sqrt(float(Fraction(4 * self.n, self.d2sq))) / 2 - 1


@dataclass(frozen=True)
class SolveResult:
    """status: "found" (solution set), "absent" (certified), or "unknown" (budget)."""

    status: str
    solution: Optional[tuple[int, int, int, int]] = None
    tried: int = 0


def build_form(inst: FourSquaresInstance) -> CandidateForm:
    """Reduce an instance to its candidate quadratic F.

    Raises InfeasibleCongruence when gcd(2*r1, 2*r2, M) does not divide k —
    then the congruence has no solutions at all and the instance is certified
    unsolvable.
    """
    m = inst.modulus
    r1, r2 = inst.r1 % m, inst.r2 % m
    k = (inst.n - r1 * r1 - r2 * r2) // m
    u1, u2 = gauss_reduce(*congruence_lattice(2 * r1 % m, 2 * r2 % m, m))
    t_part = particular_solution(2 * r1 % m, 2 * r2 % m, k % m, m)
    u0 = shortest_coset_vector((u1, u2), t_part)

    def scalar(v: Vec2, shift: int) -> int:
        num = shift - 2 * (r1 * v[0] + r2 * v[1]) if shift else -2 * (r1 * v[0] + r2 * v[1])
        assert num % m == 0
        return num // m

    u0p = scalar(u0, k)
    u1p = -scalar(u1, 0)
    u2p = -scalar(u2, 0)
    return CandidateForm(
        n=inst.n,
        modulus=m,
        k=k,
        r1=r1,
        r2=r2,
        u0=u0,
        u1=u1,
        u2=u2,
        u0p=u0p,
        u1p=u1p,
        u2p=u2p,
        d1sq=4 * m * m * norm_sq(u1),
        d2sq=4 * m * m * norm_sq(u2),
    )


def _quadratic_interval(a: int, b: int, c: int, poly) -> Optional[tuple[int, int]]:
    """Integer interval {x : a*x² + b*x + c >= 0} for a < 0; None when empty.

    `poly` must evaluate the same quadratic exactly; endpoints from the
    integer square root are corrected by direct evaluation.
    """
    assert a < 0
    disc = b * b - 4 * a * c
    if disc < 0:
        return None
    s = math.isqrt(disc)
    lo = (-b + s) // (2 * a) - 1  # floor division by negative: rounds toward -inf
    hi = (-b - s) // (2 * a) + 1
    for _ in range(8):
        if poly(lo) >= 0:
            break
        lo += 1
    for _ in range(8):
        if poly(hi) >= 0:
            break
        hi -= 1
    if lo > hi:
        return None
    assert poly(lo) >= 0 and poly(hi) >= 0
    assert poly(lo - 1) < 0 and poly(hi + 1) < 0
    return (lo, hi)


def _row_points(lo: int, hi: int) -> Iterator[int]:
    """Integers of [lo, hi] ordered by (x², x): outward from 0, negative first."""
    anchor = min(max(0, lo), hi)
    yield anchor
    left, right = anchor - 1, anchor + 1
    while left >= lo or right <= hi:
        if left >= lo and (right > hi or (left * left, left) < (right * right, right)):
            yield left
            left -= 1
        else:
            yield right
            right += 1


def _f_coeffs(form: CandidateForm, x2: int) -> tuple[int, int, int]:
    """F(x1, x2) = a*x1² + b*x1 + c for fixed x2 (a = -|u1|² < 0)."""
    p1 = form.u0[0] + x2 * form.u2[0]
    p2 = form.u0[1] + x2 * form.u2[1]
    a = -norm_sq(form.u1)
    b = -form.u1p - 2 * (p1 * form.u1[0] + p2 * form.u1[1])
    c = form.u0p - x2 * form.u2p - p1 * p1 - p2 * p2
    return a, b, c


def _row_range(form: CandidateForm) -> Optional[tuple[int, int]]:
    """Exact x2-projection of the ellipse {F >= 0}: integers with max_x1 F(x1, x2) >= 0."""
    alpha = norm_sq(form.u1)
    b0 = -form.u1p - 2 * dot(form.u0, form.u1)
    b1 = -2 * dot(form.u2, form.u1)
    g0 = form.u0p - norm_sq(form.u0)
    g1 = -form.u2p - 2 * dot(form.u0, form.u2)
    g2 = -norm_sq(form.u2)
    # Discriminant of F in x1, as a quadratic in x2; leading coefficient is
    # -4*(det u1,u2)² < 0, so the row range is a bounded interval.
    a2 = b1 * b1 + 4 * alpha * g2
    b2 = 2 * b0 * b1 + 4 * alpha * g1
    c2 = b0 * b0 + 4 * alpha * g0
    assert a2 < 0
    return _quadratic_interval(a2, b2, c2, lambda x: (a2 * x + b2) * x + c2)


def enumerate_candidates(
    form: CandidateForm, region: str = "5C"
) -> Iterator[tuple[tuple[int, int], int]]:
    """Stream ((x1, x2), F) with F >= 0, ordered by (x1² + x2², x1, x2).

    region "5C" scans the entire nonnegativity ellipse of F — computed exactly
    from integer quadratics, and a superset of the 5C box intersected with
    {F >= 0} — so exhausting it is a completeness certificate.  region "C"
    restricts the stream to the inner box C where the form is provably
    positive in the solver's operating regime.
    """
    if region not in ("C", "5C"):
        raise ValueError("region must be 'C' or '5C'")
    rows = _row_range(form)
    if rows is None:
        return
    x2_lo, x2_hi = rows
    if region == "C":
        b_int = math.isqrt(form.n // form.d2sq) - 1 if form.d2sq <= form.n else -1
        x2_lo = max(x2_lo, -b_int)
        x2_hi = min(x2_hi, b_int)
        a_int = math.isqrt(form.n // form.d1sq) if form.d1sq <= form.n else 0
    heap: list[tuple[tuple[int, int, int], int, Iterator[int]]] = []
    for x2 in range(x2_lo, x2_hi + 1):
        a, b, c = _f_coeffs(form, x2)
        iv = _quadratic_interval(a, b, c, lambda x, _a=a, _b=b, _c=c: (_a * x + _b) * x + _c)
        if iv is None:
            continue
        lo, hi = iv
        if region == "C":
            lo, hi = max(lo, -a_int), min(hi, a_int)
            if lo > hi:
                continue
        it = _row_points(lo, hi)
        x1 = next(it)
        heapq.heappush(heap, ((x1 * x1 + x2 * x2, x1, x2), x1, it))
    while heap:
        (key, x1, it) = heap[0]
        x2 = key[2]
        yield ((x1, x2), form.f_value(x1, x2))
        nxt = next(it, None)
        if nxt is None:
            heapq.heappop(heap)
        else:
            heapq.heapreplace(heap, ((nxt * nxt + x2 * x2, nxt, x2), nxt, it))


def _power_of_two_pair(s: int) -> tuple[int, int]:
    """2^s as an (ordered) sum of two squares."""
    if s % 2 == 0:
        return (0, 1 << (s // 2))
    h = 1 << ((s - 1) // 2)
    return (h, h)


def _gauss_mul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _fast_certify(v: int) -> TwoSquares:
    """Prime-power fast path: certify v = x² + y² without factoring.

    Accepts v = 2^s * m with m = 1 or m prime ≡ 1 (mod 4); certifies absence
    for any m ≡ 3 (mod 4) (such v is never a sum of two squares); reports
    "unknown" for the composite m ≡ 1 (mod 4) it declines to factor.
    """
    if v == 0:
        return TwoSquares("found", (0, 0))
    s = (v & -v).bit_length() - 1
    m = v >> s
    if m == 1:
        return TwoSquares("found", _power_of_two_pair(s))
    if m % 4 == 3:
        return TwoSquares("absent")
    if is_prime(m):
        pair = _gauss_mul(_power_of_two_pair(s), two_squares_prime(m))
        x, y = abs(pair[0]), abs(pair[1])
        return TwoSquares("found", (min(x, y), max(x, y)))
    return TwoSquares("unknown")


def solve(
    inst: FourSquaresInstance,
    mode: str = "auto",
    budget_rho: int = DEFAULT_RHO_BUDGET,
) -> SolveResult:
    """Find x² + y² + z² + w² = n with the instance congruences, or certify.

    mode "exact" fully factors each candidate F-value (verdict "absent" is a
    certificate; "unknown" only on factoring-budget exhaustion); mode "fast"
    certifies candidates cheaply and may answer "unknown" where "absent" is
    the truth; "auto" picks exact below 10^18 and fast above.

    Determinism: identical instance, mode and budget give identical output —
    the candidate stream and all certifications are deterministic.
    """
    if mode == "auto":
        mode = "exact" if inst.n <= FAST_MODE_THRESHOLD else "fast"
    if mode not in ("exact", "fast"):
        raise ParameterError(f"unknown mode {mode!r}")
    m = inst.modulus
    zero_residues = inst.r1 % m == 0 and inst.r2 % m == 0
    try:
        form = build_form(inst)
    except InfeasibleCongruence:
        return SolveResult("absent")
    tainted = False
    tried = 0
    for (x1, x2), fv in enumerate_candidates(form, "5C"):
        tried += 1
        if mode == "exact":
            ts = two_squares(fv, budget_rho)
        else:
            ts = _fast_certify(fv)
        if ts.status == "found":
            t1, t2 = form.point(x1, x2)
            e, f = ts.pair
            if zero_residues:
                # Classical presentation for the unconstrained case: the
                # two-squares part first, the scan pair last.
                sol = (m * e, m * f, m * t1, m * t2)
            else:
                sol = (m * t1 + form.r1, m * t2 + form.r2, m * e, m * f)
            assert sum(v * v for v in sol) == inst.n
            assert (sol[0] - inst.r1) % m == 0 and (sol[1] - inst.r2) % m == 0
            assert sol[2] % m == 0 and sol[3] % m == 0
            return SolveResult("found", sol, tried)
        if ts.status == "unknown":
            tainted = True
    return SolveResult("unknown" if tainted else "absent", None, tried)
