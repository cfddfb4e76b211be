"""Shortest-path navigation on X_{p,q} through quaternion congruences.

A diagonal vertex diag(a+ib, a-ib) is reachable in h steps exactly when
x² + y² + z² + w² = p^h has a solution with (x, y) ≡ λ(a, b) (mod q),
z ≡ w ≡ 0 (mod q), x odd and y, z, w even — one four-squares instance with
modulus 2q per height.  Scanning h upward and certifying the first solvable
height therefore yields the graph distance (with a full-factoring certificate)
or a short path (with the cheap prime-power certificate).  General elements
are reduced to three diagonal-type factors via the (1+ix)(1+jy)(1+kz)
decomposition after a short correcting word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import BudgetExhausted, HMaxExceeded, ParameterError
from .foursquares import FAST_MODE_THRESHOLD, FourSquaresInstance, solve
from .ntheory import DEFAULT_RHO_BUDGET, legendre, sqrt_mod
from .lattice2 import Vec2, congruence_lattice, gauss_reduce, norm_sq
from .quaternion import (
    GraphParams,
    PslElement,
    Quat,
    evaluate_word,
    factor_into_generators,
    free_reduce,
    inverse_word,
    psl_to_quat_class,
    quat_to_psl,
)

__all__ = [
    "NavConfig",
    "DiagonalVertex",
    "NavResult",
    "BoundsReport",
    "GeneralNavResult",
    "diagonal_distance",
    "predicted_bounds",
    "typical_height_bound",
    "decompose_xyz",
    "general_navigate",
    "density_bound",
]


@dataclass(frozen=True)
class NavConfig:
    """Tunables shared by the navigation entry points.

    mode: "exact" certifies minimality, "fast" trades certificates for speed,
    "auto" switches on instance size (the four-squares solver's threshold).
    gamma/c_gamma parametrize the lattice-balance predicate; h_max_slack pads
    the height cap; s_cap bounds the correcting words tried by
    general_navigate.
    """

    mode: str = "auto"
    gamma: float = 0.75
    c_gamma: float = 4.0
    h_max_slack: int = 4
    budget_rho: int = DEFAULT_RHO_BUDGET
    s_cap: int = 4096


@dataclass(frozen=True)
class DiagonalVertex:
    """The class of diag(a + i*b, a - i*b) in PGL2(F_q), stored as raw (a, b)."""

    q: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if (self.a % self.q, self.b % self.q) == (0, 0):
            raise ParameterError("(a, b) must be nonzero mod q")

    def norm_sq(self) -> int:
        return (self.a * self.a + self.b * self.b) % self.q

    def on_graph(self) -> bool:
        """In PSL2 (and invertible): a² + b² a nonzero quadratic residue."""
        n = self.norm_sq()
        return n != 0 and legendre(n, self.q) == 1

    def is_identity(self) -> bool:
        return self.b % self.q == 0

    def normalized(self) -> "DiagonalVertex":
        """Scale so a² + b² ≡ 1 when possible (lex-least of the two scalings)."""
        n = self.norm_sq()
        if n == 0 or legendre(n, self.q) != 1:
            return DiagonalVertex(self.q, self.a % self.q, self.b % self.q)
        mu = sqrt_mod(pow(n, -1, self.q), self.q)
        c1 = (self.a * mu % self.q, self.b * mu % self.q)
        c2 = (-c1[0] % self.q, -c1[1] % self.q)
        a, b = min(c1, c2)
        return DiagonalVertex(self.q, a, b)

    def psl(self, sqrt_m1: int) -> PslElement:
        i = sqrt_m1
        n = self.norm_sq()
        if n == 0:
            raise ParameterError("vertex matrix is singular (a² + b² ≡ 0)")
        return PslElement.canonical(
            self.q, ((self.a + i * self.b), 0, 0, (self.a - i * self.b))
        )


@dataclass(frozen=True)
class NavResult:
    h: int
    word: tuple[int, ...]
    solution: tuple[int, int, int, int]

    def names(self, params: GraphParams) -> list[str]:
        return [params.gens.names[i] for i in self.word]


@dataclass(frozen=True)
class BoundsReport:
    u1: Vec2
    u2: Vec2
    regime: str  # "hole" | "typical"
    hole_bound: int
    typical_bound: int
    h_max: int


@dataclass(frozen=True)
class GeneralNavResult:
    word: tuple[int, ...]
    s_index: int
    s_word: tuple[int, ...]
    xyz: tuple[int, int, int]
    factor_heights: tuple[int, int, int]

    def names(self, params: GraphParams) -> list[str]:
        return [params.gens.names[i] for i in self.word]


def _parity_lift(x: int, parity: int, q: int) -> int:
    """The residue mod 2q that is ≡ x (mod q) and ≡ parity (mod 2)."""
    v = x % q
    return v if v % 2 == parity else v + q


def _h_cap(p: int, q: int, slack: int) -> int:
    """ceil(log_p(89 q⁴)) + slack, in exact integer arithmetic."""
    target = 89 * q**4
    h, val = 0, 1
    while val < target:
        val *= p
        h += 1
    return h + slack


def _vertex_checked(vertex: DiagonalVertex, params: GraphParams) -> None:
    if vertex.q != params.q:
        raise ParameterError("vertex and graph moduli differ")
    n = vertex.norm_sq()
    if n == 0:
        raise ParameterError("a² + b² ≡ 0 (mod q): not an invertible class")
    if legendre(n, params.q) != 1:
        raise ParameterError(
            "a² + b² is a non-residue mod q: the vertex lies outside PSL2(F_q)"
        )


def _solve_heights(
    params: GraphParams, a: int, b: int, cfg: NavConfig
) -> tuple[int, tuple[int, int, int, int]]:
    """First height h with a certified solution of the vertex congruence.

    Returns (h, (x, y, z, w)).  One λ sign suffices: negating (x, y) swaps the
    two λ-lifts bijectively, so the solution sets at every height agree.
    """
    q, p = params.q, params.p
    nsq = (a * a + b * b) % q
    mu0 = sqrt_mod(pow(nsq, -1, q), q)
    n = 1
    for h in range(_h_cap(p, q, cfg.h_max_slack) + 1):
        lam = mu0 * pow(params.sqrt_p, h, q) % q
        r1 = _parity_lift(lam * a, 1, q)
        r2 = _parity_lift(lam * b, 0, q)
        res = solve(
            FourSquaresInstance(n, 2 * q, r1, r2),
            mode=cfg.mode,
            budget_rho=cfg.budget_rho,
        )
        if res.status == "found":
            assert res.solution is not None
            return h, res.solution
        if res.status == "unknown":
            # "unknown" breaks the minimality certificate only when the caller
            # asked for one (exact, or auto below the exact/fast threshold).
            certifying = cfg.mode == "exact" or (
                cfg.mode == "auto" and n <= FAST_MODE_THRESHOLD
            )
            if certifying:
                raise BudgetExhausted(
                    f"factoring budget exhausted at height {h}; "
                    "minimality not certified"
                )
        n *= p
    raise HMaxExceeded(f"no path found up to the height cap for ({a}, {b})")


def _strip_p_content(alpha: Quat, p: int) -> tuple[Quat, int]:
    """Divide out p-powers from the coordinates; returns (primitive part, t)."""
    t = 0
    while all(x % p == 0 for x in alpha.coords()):
        alpha = alpha.divexact(p)
        t += 1
    return alpha, t


# Coordinate sources for rebuilding the solved congruence (x, y, z, w) as a
# quaternion congruent to λ(1 + i*v), λ(1 + j*v) or λ(1 + k*v) mod q: the
# y-slot (≡ λv) moves to the imaginary axis being navigated, the zero slots
# fill the rest.  The real slot stays odd and the rest even, as the
# factorization step requires.
_AXIS_SHUFFLE = {
    1: (0, 1, 2, 3),  # (x, y, z, w)
    2: (0, 2, 1, 3),  # (x, z, y, w)
    3: (0, 2, 3, 1),  # (x, z, w, y)
}


def _navigate_axis(
    params: GraphParams, value: int, axis: int, cfg: NavConfig
) -> tuple[int, list[int], Quat]:
    """Shortest-word navigation to the class of (1 + i_axis * value)."""
    h, sol = _solve_heights(params, 1, value, cfg)
    alpha = Quat(*(sol[j] for j in _AXIS_SHUFFLE[axis]))
    alpha, t = _strip_p_content(alpha, params.p)
    word = factor_into_generators(alpha, params.gens)
    return h - 2 * t, word, alpha


def diagonal_distance(
    params: GraphParams, vertex: DiagonalVertex, cfg: Optional[NavConfig] = None
) -> NavResult:
    """Distance and a realizing word from the identity to a diagonal vertex.

    In exact mode the returned h is the graph distance: every smaller height
    was certified unsolvable, and a height-h solution exists.  In fast mode h
    is an upper bound (the first height the cheap certificate could decide).
    The word is non-backtracking, has length exactly h, and evaluates to the
    vertex.
    """
    cfg = cfg or NavConfig()
    _vertex_checked(vertex, params)
    h, sol = _solve_heights(params, vertex.a % params.q, vertex.b % params.q, cfg)
    alpha = Quat(*sol)
    alpha, t = _strip_p_content(alpha, params.p)
    if cfg.mode == "exact":
        assert t == 0, "minimal-height solution must be primitive"
    word = factor_into_generators(alpha, params.gens)
    h -= 2 * t
    assert len(word) == h
    got = evaluate_word(word, params.gens, params.q, params.sqrt_m1)
    assert got == vertex.psl(params.sqrt_m1), "word does not evaluate to the vertex"
    return NavResult(h, tuple(word), tuple(sol))


def _vertex_lattice(q: int, a: int, b: int) -> tuple[Vec2, Vec2]:
    """Reduced basis of {(x, y): b*x - a*y ≡ 0 (mod q)} (covolume q)."""
    basis = congruence_lattice(b % q, -a % q, q)
    return gauss_reduce(*basis)


def density_bound(params: GraphParams, h: int) -> Fraction:
    """89 q⁴ / p^(h-1): bound on diagonal vertices at distance >= h (h past the
    typical-regime threshold).  Exact, so callers can compare without rounding."""
    if h < 1:
        raise ParameterError("density bound is defined for h >= 1")
    return Fraction(89 * params.q**4, params.p ** (h - 1))


def typical_height_bound(params: GraphParams, cfg: Optional[NavConfig] = None) -> int:
    """ceil(3 log_p q + γ log_p log q + log_p C_γ + log_p 89): the height at
    which balanced vertex lattices are guaranteed a solution."""
    cfg = cfg or NavConfig()
    p, q = params.p, params.q
    t = 3 * math.log(q, p)
    t += cfg.gamma * math.log(math.log(q), p)
    t += math.log(cfg.c_gamma, p) + math.log(89, p)
    return math.ceil(t)


def predicted_bounds(
    params: GraphParams, vertex: DiagonalVertex, cfg: Optional[NavConfig] = None
) -> BoundsReport:
    """Height bounds from the geometry of the vertex lattice.

    The hole bound is the least h with |u1|² p^h >= 89 q⁴ (exact integers);
    the typical bound is ceil(3 log_p q + γ log_p log q + log_p C_γ + log_p 89).
    The regime is "hole" when |u2| >= C_γ log(2q)^γ |u1|, else "typical".
    """
    cfg = cfg or NavConfig()
    _vertex_checked(vertex, params)
    p, q = params.p, params.q
    u1, u2 = _vertex_lattice(q, vertex.a, vertex.b)

    target = 89 * q**4
    h, val = 0, norm_sq(u1)
    while val < target:
        val *= p
        h += 1
    hole_bound = h

    typical_bound = typical_height_bound(params, cfg)

    threshold = (cfg.c_gamma * math.log(2 * q) ** cfg.gamma) ** 2
    regime = "hole" if norm_sq(u2) >= threshold * norm_sq(u1) else "typical"
    return BoundsReport(
        u1=u1,
        u2=u2,
        regime=regime,
        hole_bound=hole_bound,
        typical_bound=typical_bound,
        h_max=_h_cap(p, q, cfg.h_max_slack),
    )


def decompose_xyz(g: PslElement, sqrt_m1: int) -> list[tuple[int, int, int]]:
    """Solve class(g) = (1 + ix)(1 + jy)(1 + kz) over F_q; all valid triples.

    The k-consistency condition is a quadratic in z whose discriminant must be
    a square; each usable root (A + Dz invertible, 1 + z² nonzero) gives one
    triple.  Returns [] when the element is not decomposable.
    """
    q = g.q
    A, B, C, D = psl_to_quat_class(g, sqrt_m1)
    lead = (A * D - B * C) % q
    lin = (A * A + B * B - C * C - D * D) % q
    if lead != 0:
        disc = (lin * lin + 4 * lead * lead) % q
        if legendre(disc, q) == -1:
            return []
        s = sqrt_mod(disc, q)
        inv = pow(2 * lead, -1, q)
        roots = sorted({(-lin + s) * inv % q, (-lin - s) * inv % q})
    elif lin != 0:
        roots = [0]
    else:
        # Every z satisfies the consistency equation; a handful of candidates
        # is plenty since only A + Dz ≡ 0 or 1 + z² ≡ 0 can disqualify one.
        roots = list(range(min(q, 8)))
    out: list[tuple[int, int, int]] = []
    for z in roots:
        den = (A + D * z) % q
        if den == 0 or (1 + z * z) % q == 0:
            continue
        inv_den = pow(den, -1, q)
        x = (B - C * z) * inv_den % q
        y = (C + B * z) * inv_den % q
        assert (D - A * z) % q == x * y * den % q, "k-coefficient mismatch"
        out.append((x, y, z))
    return out


def _correcting_words(params: GraphParams) -> Iterator[list[int]]:
    """Non-backtracking words ordered by length then lexicographically."""
    gens = params.gens
    frontier: list[list[int]] = [[]]
    while True:
        yield from frontier
        nxt = []
        for w in frontier:
            for j in range(len(gens)):
                if not w or j != gens.conj[w[-1]]:
                    nxt.append(w + [j])
        frontier = nxt


def _balanced(q: int, v: int, cfg: NavConfig) -> bool:
    """Step-3 predicate: the lattice of (1, v) is not too skew.

    v == 0 is the identity factor — nothing to solve, so it always passes.
    """
    if v % q == 0:
        return True
    u1, u2 = _vertex_lattice(q, 1, v)
    limit = (cfg.c_gamma * math.log(q) ** cfg.gamma) ** 2
    return norm_sq(u2) <= limit * norm_sq(u1)


def general_navigate(
    params: GraphParams, g: PslElement, cfg: Optional[NavConfig] = None
) -> GeneralNavResult:
    """Navigate to an arbitrary element of PSL2(F_q).

    Tries correcting words s in length-lex order until s·g decomposes as
    (1+ix)(1+jy)(1+kz) with all three factors on the graph and all three
    vertex lattices balanced, then navigates each factor and concatenates
    word(s⁻¹) with the three factor words.
    """
    cfg = cfg or NavConfig()
    if g.q != params.q:
        raise ParameterError("element and graph moduli differ")
    if not g.in_psl():
        raise ParameterError("element lies outside PSL2(F_q)")
    q = params.q
    g_quat = Quat(*psl_to_quat_class(g, params.sqrt_m1))
    target = PslElement.canonical(q, g.m)
    for s_index, s_word in enumerate(_correcting_words(params)):
        if s_index >= cfg.s_cap:
            raise BudgetExhausted("correcting-word budget exhausted")
        acc = Quat(1, 0, 0, 0)
        for i in s_word:
            acc = (acc * params.gens.quats[i]).reduced(q)
        shifted = (acc * g_quat).reduced(q)
        shifted_psl = quat_to_psl(shifted, q, params.sqrt_m1)
        for x, y, z in decompose_xyz(shifted_psl, params.sqrt_m1):
            values = (x, y, z)
            if not all(
                (n := (1 + v * v) % q) != 0 and legendre(n, q) == 1 for v in values
            ):
                continue
            if not all(_balanced(q, v, cfg) for v in values):
                continue
            parts = [
                _navigate_axis(params, v, axis, cfg)
                for axis, v in zip((1, 2, 3), values)
            ]
            word = inverse_word(s_word, params.gens)
            for _h, w, _alpha in parts:
                word += w
            word = free_reduce(word, params.gens)
            got = evaluate_word(word, params.gens, q, params.sqrt_m1)
            assert got == target, "navigation word does not evaluate to the target"
            return GeneralNavResult(
                word=tuple(word),
                s_index=s_index,
                s_word=tuple(s_word),
                xyz=values,
                factor_heights=tuple(h for h, _w, _a in parts),
            )
    raise BudgetExhausted("correcting-word budget exhausted")
