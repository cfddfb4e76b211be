"""Integral quaternions, LPS generator sets, and their PSL2(F_q) images.

For a prime p ≡ 1 (mod 4) the p+1 integral quaternions of norm p with odd
positive real part and even imaginary parts generate a free group (modulo
center); reducing mod q through a square root of -1 turns them into the
generators of the Lubotzky-Phillips-Sarnak graph X_{p,q}.  This module owns
that dictionary: quaternion arithmetic, the projective matrix image, and the
peeling algorithm that factors a norm-p^h quaternion back into a generator
word.

Reference: Lubotzky, Phillips, Sarnak, "Ramanujan graphs", Combinatorica 8
(1988); Davidoff, Sarnak, Valette, "Elementary Number Theory, Group Theory
and Ramanujan Graphs" (2003), ch. 2 and 4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParameterError
from .ntheory import is_prime, legendre, sqrt_mod

__all__ = [
    "Quat",
    "PslElement",
    "GeneratorSet",
    "GraphParams",
    "FactorizationError",
    "lps_generators",
    "quat_to_psl",
    "psl_to_quat_class",
    "factor_into_generators",
    "evaluate_word",
    "inverse_word",
    "free_reduce",
    "is_nonbacktracking",
]


class FactorizationError(ValueError):
    """A quaternion failed to peel into generators (not primitive, or no/ambiguous step)."""


class Quat:
    """Quaternion a + b*i + c*j + d*k with integer coordinates."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int) -> None:
        self.a, self.b, self.c, self.d = a, b, c, d

    def __mul__(self, other: "Quat") -> "Quat":
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return Quat(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __neg__(self) -> "Quat":
        return Quat(-self.a, -self.b, -self.c, -self.d)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Quat)
            and (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self) -> str:
        return f"Quat({self.a}, {self.b}, {self.c}, {self.d})"

    def coords(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def conjugate(self) -> "Quat":
        return Quat(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def content(self) -> int:
        return math.gcd(math.gcd(abs(self.a), abs(self.b)), math.gcd(abs(self.c), abs(self.d)))

    def divexact(self, n: int) -> "Quat":
        assert all(x % n == 0 for x in self.coords())
        return Quat(self.a // n, self.b // n, self.c // n, self.d // n)

    def reduced(self, q: int) -> "Quat":
        return Quat(self.a % q, self.b % q, self.c % q, self.d % q)


@dataclass(frozen=True)
class PslElement:
    """Canonical projective representative of an invertible 2x2 matrix over F_q.

    Entries are stored row-major, scaled so the first nonzero entry is 1 —
    the unique such representative of the projective class.
    """

    q: int
    m: tuple[int, int, int, int]

    @staticmethod
    def canonical(q: int, m: Iterable[int]) -> "PslElement":
        e = tuple(x % q for x in m)
        if len(e) != 4:
            raise ValueError("need exactly 4 matrix entries")
        det = (e[0] * e[3] - e[1] * e[2]) % q
        if det == 0:
            raise ParameterError("matrix is singular mod q")
        lead = next(x for x in e if x)
        inv = pow(lead, -1, q)
        return PslElement(q, tuple(x * inv % q for x in e))

    @staticmethod
    def identity(q: int) -> "PslElement":
        return PslElement(q, (1, 0, 0, 1))

    def det(self) -> int:
        return (self.m[0] * self.m[3] - self.m[1] * self.m[2]) % self.q

    def in_psl(self) -> bool:
        """True when the class lies in PSL2 (det of any representative is a square)."""
        return legendre(self.det(), self.q) == 1

    def __matmul__(self, other: "PslElement") -> "PslElement":
        if self.q != other.q:
            raise ValueError("mixed moduli")
        a, b, c, d = self.m
        e, f, g, h = other.m
        return PslElement.canonical(
            self.q, (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        )

    def inverse(self) -> "PslElement":
        a, b, c, d = self.m
        return PslElement.canonical(self.q, (d, -b, -c, a))


@dataclass(frozen=True)
class GeneratorSet:
    """The p+1 norm-p generators, lexicographically ordered.

    `conj` maps a generator index to the index of its conjugate (= inverse in
    the projective image); `names` holds the print names, with the classical
    Vx/Vy/Vz aliases at p = 5.
    """

    p: int
    quats: tuple[Quat, ...]
    conj: tuple[int, ...]
    names: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.quats)


def lps_generators(p: int) -> GeneratorSet:
    """Enumerate the generator quaternions for prime p ≡ 1 (mod 4)."""
    if not is_prime(p) or p % 4 != 1:
        raise ParameterError("p must be a prime ≡ 1 (mod 4)")
    quats: list[Quat] = []
    a = 1
    while a * a <= p:
        rem_a = p - a * a
        b0 = math.isqrt(rem_a)
        b0 -= b0 & 1
        for bb in range(-b0, b0 + 1, 2):
            rem_b = rem_a - bb * bb
            c0 = math.isqrt(rem_b)
            c0 -= c0 & 1
            for cc in range(-c0, c0 + 1, 2):
                rem_c = rem_b - cc * cc
                dd = math.isqrt(rem_c)
                if dd * dd == rem_c and dd % 2 == 0:
                    quats.append(Quat(a, bb, cc, dd))
                    if dd != 0:
                        quats.append(Quat(a, bb, cc, -dd))
        a += 2
    quats.sort(key=Quat.coords)
    if len(quats) != p + 1:
        raise AssertionError(f"expected {p + 1} generators, found {len(quats)}")
    index = {g.coords(): i for i, g in enumerate(quats)}
    conj = tuple(index[g.conjugate().coords()] for g in quats)
    # Name conjugate pairs by their lexicographically larger member.
    names = [""] * len(quats)
    pair_no = 0
    axis = {3: "Vx", 2: "Vy", 1: "Vz"}  # nonzero coordinate position at p = 5
    for i, g in enumerate(quats):
        if names[i]:
            continue
        j = conj[i]
        pos, neg = (i, j) if g.coords() > quats[j].coords() else (j, i)
        pair_no += 1
        if p == 5:
            nz = next(t for t in (1, 2, 3) if quats[pos].coords()[t])
            base = axis[nz]
        else:
            base = f"g{pair_no}"
        names[pos] = base
        names[neg] = base + "^{-1}"
    return GeneratorSet(p, tuple(quats), conj, tuple(names))


def quat_to_psl(alpha: Quat, q: int, sqrt_m1: int) -> PslElement:
    """Projective image of a quaternion: [[x0+i*x1, x2+i*x3], [-x2+i*x3, x0-i*x1]] mod q."""
    i = sqrt_m1
    x0, x1, x2, x3 = (x % q for x in alpha.coords())
    return PslElement.canonical(
        q,
        (
            x0 + i * x1,
            x2 + i * x3,
            -x2 + i * x3,
            x0 - i * x1,
        ),
    )


def psl_to_quat_class(g: PslElement, sqrt_m1: int) -> tuple[int, int, int, int]:
    """Inverse of quat_to_psl on classes: residues (A, B, C, D) mod q, up to scalars."""
    q = g.q
    a, b, c, d = g.m
    inv2 = pow(2, -1, q)
    inv_i = q - sqrt_m1  # (sqrt_m1)^-1 = -sqrt_m1
    A = (a + d) * inv2 % q
    B = (a - d) * inv2 * inv_i % q
    C = (b - c) * inv2 % q
    D = (b + c) * inv2 * inv_i % q
    return (A, B, C, D)


class GraphParams:
    """Validated parameters of X_{p,q} plus the derived arithmetic data.

    Requires distinct primes p, q ≡ 1 (mod 4) with p a quadratic residue mod q
    (the non-bipartite case where the generators land in PSL2(F_q)).
    """

    def __init__(self, p: int, q: int) -> None:
        if not (is_prime(p) and p % 4 == 1):
            raise ParameterError(f"p = {p} must be a prime ≡ 1 (mod 4)")
        if not (is_prime(q) and q % 4 == 1):
            raise ParameterError(f"q = {q} must be a prime ≡ 1 (mod 4)")
        if p == q:
            raise ParameterError("p and q must be distinct")
        if legendre(p % q, q) != 1:
            raise ParameterError(
                f"p = {p} must be a quadratic residue mod q = {q}; "
                "otherwise the generators fall outside PSL2(F_q)"
            )
        self.p = p
        self.q = q
        self.sqrt_m1 = sqrt_mod(q - 1, q)
        self.sqrt_p = sqrt_mod(p % q, q)
        self.gens = lps_generators(p)
        self.gen_images = tuple(quat_to_psl(g, q, self.sqrt_m1) for g in self.gens.quats)
        if len(set(self.gen_images)) != len(self.gen_images):
            raise ParameterError("generator images collide mod q; parameters degenerate")

    def __repr__(self) -> str:
        return f"GraphParams(p={self.p}, q={self.q})"

    @property
    def vertex_count(self) -> int:
        return self.q * (self.q * self.q - 1) // 2


def factor_into_generators(alpha: Quat, gens: GeneratorSet) -> list[int]:
    """Peel a primitive quaternion of norm p^h into its unique generator word.

    Returns indices [s_h, ..., s_1] whose quaternion product equals alpha up
    to sign.  Raises FactorizationError when alpha is not primitive, when no
    generator divides at some step, or when the division is ambiguous.
    """
    p = gens.p
    n = alpha.norm()
    h = 0
    while n % p == 0:
        n //= p
        h += 1
    if n != 1:
        raise FactorizationError("norm is not a power of p")
    if alpha.content() % p == 0:
        raise FactorizationError("not primitive: every coordinate divisible by p")
    word: list[int] = []
    cur = alpha
    for _ in range(h):
        hits = [
            i
            for i, g in enumerate(gens.quats)
            if all(x % p == 0 for x in (g.conjugate() * cur).coords())
        ]
        if not hits:
            raise FactorizationError("no generator divides at this step")
        if len(hits) > 1:
            raise FactorizationError("ambiguous peeling step")
        i = hits[0]
        word.append(i)
        cur = (gens.quats[i].conjugate() * cur).divexact(p)
    if cur.coords() not in ((1, 0, 0, 0), (-1, 0, 0, 0)):
        raise FactorizationError("residual unit is not ±1")
    return word


def evaluate_word(
    word: Sequence[int], gens: GeneratorSet, q: int, sqrt_m1: int
) -> PslElement:
    """Projective image of the word product (letters multiplied left to right)."""
    acc = Quat(1, 0, 0, 0)
    for i in word:
        acc = (acc * gens.quats[i]).reduced(q)
    return quat_to_psl(acc, q, sqrt_m1)


def inverse_word(word: Sequence[int], gens: GeneratorSet) -> list[int]:
    return [gens.conj[i] for i in reversed(word)]


def free_reduce(word: Sequence[int], gens: GeneratorSet) -> list[int]:
    """Cancel adjacent inverse pairs until the word is non-backtracking."""
    out: list[int] = []
    for i in word:
        if out and out[-1] == gens.conj[i]:
            out.pop()
        else:
            out.append(i)
    return out


def is_nonbacktracking(word: Sequence[int], gens: GeneratorSet) -> bool:
    return all(word[t + 1] != gens.conj[word[t]] for t in range(len(word) - 1))
