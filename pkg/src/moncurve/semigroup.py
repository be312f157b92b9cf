"""Exponent-set model of the coordinate ring K[M] of a projective monomial curve.

A curve of degree ``d`` is fixed by its exponent set ``G`` (the t-exponents of
the degree-one generators ``s^(d-g) t^g``).  The degree-n piece of the ring is
spanned by ``s^(nd-a) t^a`` with ``a`` in the n-fold sumset ``nG``, so every
question about monomials reduces to integer sumsets.

Sets of integers are stored as Python ints used as bitsets (bit ``a`` set
means ``a`` is a member); shifting a bitset left by ``g`` adds ``g`` to every
element.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import (
    BoundExceeded,
    DegenerateDegree,
    NonCoprime,
    NotGraded,
    OutOfRange,
    ParseError,
)


# ---------------------------------------------------------------------------
# bitset helpers
# ---------------------------------------------------------------------------

def to_bits(values: Iterable[int]) -> int:
    bits = 0
    for v in values:
        bits |= 1 << v
    return bits


def from_bits(bits: int) -> list[int]:
    """Members of a bitset in increasing order."""
    digits = bin(bits)[:1:-1]
    return [i for i, c in enumerate(digits) if c == "1"]


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def shift_sum(bits: int, shifts: Iterable[int]) -> int:
    """Sumset of ``bits`` with a small explicit set of shifts."""
    out = 0
    for g in shifts:
        out |= bits << g
    return out


def sumset_bits(a: int, b: int) -> int:
    """Sumset of two bitsets; iterates over the sparser operand."""
    if popcount(a) > popcount(b):
        a, b = b, a
    return shift_sum(b, from_bits(a))


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

class Monomial(NamedTuple):
    """``s^s_exp t^t_exp``; tuple ordering is (s_exp, t_exp)."""

    s_exp: int
    t_exp: int

    def degree(self, d: int) -> int:
        total = self.s_exp + self.t_exp
        if total % d:
            raise NotGraded(f"s^{self.s_exp} t^{self.t_exp} has total degree {total}, not a multiple of {d}")
        return total // d

    def __str__(self) -> str:
        return f"s^{self.s_exp} t^{self.t_exp}"


ONE = Monomial(0, 0)


class SumsetTable:
    """Memoized levels ``nG`` as bitsets; level n has bit width n*d + 1.

    Filling is guarded by a lock, and levels are only ever appended, so
    concurrent readers see a consistent prefix.
    """

    def __init__(self, exponents: tuple[int, ...]):
        self._exponents = exponents
        self._levels = [1]
        self._lock = threading.Lock()

    def level(self, n: int) -> int:
        if n < 0:
            raise ValueError("level index must be non-negative")
        levels = self._levels
        if n < len(levels):
            return levels[n]
        with self._lock:
            levels = self._levels
            while len(levels) <= n:
                levels.append(shift_sum(levels[-1], self._exponents))
            return levels[n]

    def __len__(self) -> int:
        return len(self._levels)

    def __getstate__(self):
        return self._exponents, list(self._levels)

    def __setstate__(self, state) -> None:
        self._exponents, self._levels = state
        self._lock = threading.Lock()


@dataclass(frozen=True)
class CurveSpec:
    d: int
    G: tuple[int, ...]
    _table: SumsetTable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_table", SumsetTable(self.G))

    @property
    def mid_count(self) -> int:
        return len(self.G) - 2

    @property
    def generators(self) -> tuple[Monomial, ...]:
        """Degree-one generators of the ring, by increasing t-exponent."""
        return tuple(Monomial(self.d - g, g) for g in self.G)

    @property
    def is_smooth(self) -> bool:
        return 1 in self.G and (self.d - 1) in self.G

    @property
    def gmask(self) -> int:
        return to_bits(self.G)

    def level_bits(self, n: int) -> int:
        return self._table.level(n)

    def __str__(self) -> str:
        return format_curve(self)


def make_curve(d: int, exponents: Iterable[int], *, add_endpoints: bool = False) -> CurveSpec:
    """Validate raw curve data.

    With ``add_endpoints`` the caller may pass only the intermediate
    exponents; 0 and d are inserted.  Otherwise both must be present.
    """
    if d < 1:
        raise DegenerateDegree(f"degree must be at least 1, got {d}")
    values = set(int(e) for e in exponents)
    bad = sorted(e for e in values if e < 0 or e > d)
    if bad:
        raise OutOfRange(f"exponent {bad[0]} outside [0, {d}]")
    if add_endpoints:
        values |= {0, d}
    elif 0 not in values or d not in values:
        raise OutOfRange(f"exponent set must contain 0 and {d}")
    G = tuple(sorted(values))
    g = 0
    for e in G:
        g = math.gcd(g, e)
    if g != 1:
        raise NonCoprime(f"gcd of nonzero exponents is {g}, expected 1")
    return CurveSpec(d, G)


def parse_curve(text: str) -> CurveSpec:
    """Parse ``d:g1,g2,...`` (e.g. ``21:0,10,18,19,21``)."""
    head, sep, tail = text.strip().partition(":")
    if not sep:
        raise ParseError(f"missing ':' in curve {text!r}")
    try:
        d = int(head)
    except ValueError:
        raise ParseError(f"bad degree token {head!r}") from None
    exps = []
    for tok in tail.split(","):
        try:
            exps.append(int(tok))
        except ValueError:
            raise ParseError(f"bad exponent token {tok!r}") from None
    return make_curve(d, exps)


def format_curve(curve: CurveSpec) -> str:
    return f"{curve.d}:" + ",".join(str(g) for g in curve.G)


# ---------------------------------------------------------------------------
# graded pieces and membership
# ---------------------------------------------------------------------------

def sumset_level(curve: CurveSpec, n: int) -> frozenset[int]:
    """The n-fold sumset nG."""
    return frozenset(from_bits(curve.level_bits(n)))


def graded_piece(curve: CurveSpec, n: int) -> frozenset[Monomial]:
    nd = n * curve.d
    return frozenset(Monomial(nd - a, a) for a in from_bits(curve.level_bits(n)))


def _check_graded(curve: CurveSpec, m: Monomial) -> int:
    if m.s_exp < 0 or m.t_exp < 0:
        raise NotGraded(f"negative exponent in {m}")
    return m.degree(curve.d)


def is_in_ring(curve: CurveSpec, m: Monomial) -> bool:
    n = _check_graded(curve, m)
    return bool(curve.level_bits(n) >> m.t_exp & 1)


def ring_witness(curve: CurveSpec, m: Monomial) -> list[Monomial] | None:
    """A multiset of degree-one generators whose product is ``m``.

    Walks back through the sumset levels taking the smallest usable exponent
    at each step.  The choice of witness is not canonical.
    """
    n = _check_graded(curve, m)
    a = m.t_exp
    if not curve.level_bits(n) >> a & 1:
        return None
    picked = []
    for j in range(n, 0, -1):
        prev = curve.level_bits(j - 1)
        for g in curve.G:
            if g <= a and prev >> (a - g) & 1:
                picked.append(g)
                a -= g
                break
        else:  # pragma: no cover - level j is built from level j-1
            raise AssertionError("sumset table inconsistent")
    return [Monomial(curve.d - g, g) for g in picked]


# ---------------------------------------------------------------------------
# affine coordinate semigroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineSemigroup:
    generators: tuple[int, ...]
    bound: int
    membership: bytes = field(repr=False)


def affine_semigroup(generators: Iterable[int], bound: int) -> AffineSemigroup:
    """Coin-problem table of the semigroup generated by ``generators`` on [0, bound]."""
    gens = tuple(sorted({g for g in generators if g > 0}))
    member = bytearray(bound + 1)
    member[0] = 1
    for x in range(1, bound + 1):
        for g in gens:
            if g > x:
                break
            if member[x - g]:
                member[x] = 1
                break
    return AffineSemigroup(gens, bound, bytes(member))


def semigroup_member(sg: AffineSemigroup, x: int) -> bool:
    if x < 0:
        return False
    if x > sg.bound:
        raise BoundExceeded(f"{x} exceeds semigroup table bound {sg.bound}")
    return bool(sg.membership[x])


def min_lengths(generators: Iterable[int], bound: int) -> list[int | None]:
    """Fewest generators summing to each x in [0, bound]; None for non-members.

    A degree-N monomial ``s^(Nd-y) t^y`` lies in the ring exactly when
    ``y`` is a sum of at most N nonzero exponents, so with ``G`` as the
    generators this table answers membership in every degree at once.
    """
    gens = sorted({g for g in generators if g > 0})
    best: list[int | None] = [None] * (bound + 1)
    best[0] = 0
    for x in range(1, bound + 1):
        cands = [best[x - g] for g in gens if g <= x and best[x - g] is not None]
        if cands:
            best[x] = min(cands) + 1
    return best


def t_semigroup(curve: CurveSpec, bound: int) -> AffineSemigroup:
    """Semigroup of t-exponents of the affine chart s = 1."""
    return affine_semigroup(curve.G, bound)


def s_semigroup(curve: CurveSpec, bound: int) -> AffineSemigroup:
    """Semigroup of s-exponents of the affine chart t = 1."""
    return affine_semigroup((curve.d - g for g in curve.G), bound)
