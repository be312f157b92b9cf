"""Monomial ideals of K[M]: membership, colon, saturation, intersection.

Membership is exact.  Everything that produces a new ideal or a verdict works
degree by degree up to an explicit bound and says so in its result.

Internally an ideal is read as a table of bitsets: entry ``m`` holds the
t-exponents of the ideal's monomials of degree ``m``.  For a generator ``v``
of degree ``e`` the degree-m multiples are ``t_exp(v) + (m - e)G``, and the
s-exponent condition for divisibility then holds automatically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BoundTooSmall, CurveMismatch, NotGraded, ParseError
from .semigroup import (
    ONE,
    CurveSpec,
    Monomial,
    format_curve,
    from_bits,
    is_in_ring,
    min_lengths,
    parse_curve,
)


@dataclass(frozen=True)
class MonomialIdeal:
    curve: CurveSpec
    gens: tuple[Monomial, ...]
    normalized: bool = True
    bound: int | None = None  # set on results of bounded operations

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree(self.curve.d) for g in self.gens)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def __str__(self) -> str:
        return format_ideal(self)


@dataclass(frozen=True)
class BoundedVerdict:
    holds: bool
    bound: int
    counterexample: tuple[Monomial, ...] | None = None
    note: str = ""

    @property
    def status(self) -> str:
        return "holds" if self.holds else "fails"


def default_bound(curve: CurveSpec) -> int:
    # slack above the Gruson-Lazarsfeld-Peskine regularity estimate d - n
    return max(8, curve.d - curve.mid_count + 3)


def _order_key(curve: CurveSpec, m: Monomial) -> tuple[int, int]:
    return (m.degree(curve.d), m.t_exp)


def make_ideal(curve: CurveSpec, gens: Iterable[Monomial], *, normalize: bool = True) -> MonomialIdeal:
    gens = [Monomial(*g) for g in gens]
    for g in gens:
        if not is_in_ring(curve, g):
            raise NotGraded(f"generator {g} is not a monomial of the ring {format_curve(curve)}")
    gens = sorted(set(gens), key=lambda g: _order_key(curve, g))
    if normalize:
        kept: list[Monomial] = []
        for g in gens:
            if not _divisible_by_any(curve, g, kept):
                kept.append(g)
        gens = kept
    return MonomialIdeal(curve, tuple(gens), normalized=normalize)


def _divisible_by_any(curve: CurveSpec, m: Monomial, gens: Sequence[Monomial]) -> bool:
    d = curve.d
    n = (m.s_exp + m.t_exp) // d
    for v in gens:
        if m.s_exp < v.s_exp or m.t_exp < v.t_exp:
            continue
        e = (v.s_exp + v.t_exp) // d
        if curve.level_bits(n - e) >> (m.t_exp - v.t_exp) & 1:
            return True
    return False


def ideal_member(I: MonomialIdeal, m: Monomial) -> bool:
    """Exact: some generator divides ``m`` with quotient in the ring."""
    if m.s_exp < 0 or m.t_exp < 0:
        raise NotGraded(f"negative exponent in {m}")
    m.degree(I.curve.d)
    return _divisible_by_any(I.curve, m, I.gens)


def members_bits(I: MonomialIdeal, m: int) -> int:
    """t-exponents of the degree-m monomials of ``I``."""
    curve = I.curve
    d = curve.d
    out = 0
    for v in I.gens:
        e = (v.s_exp + v.t_exp) // d
        if e <= m:
            out |= curve.level_bits(m - e) << v.t_exp
    return out


def member_table(I: MonomialIdeal, upto: int) -> list[int]:
    return [members_bits(I, m) for m in range(upto + 1)]


def minimal_generators(curve: CurveSpec, table: Sequence[int]) -> tuple[Monomial, ...]:
    """Minimal generators of the ideal whose degreewise members are ``table``.

    ``table`` must be closed under multiplication by the ring within its
    degree range.  Output is ordered by (degree, t-exponent).
    """
    d = curve.d
    gens: list[tuple[int, int]] = []  # (degree, t_exp)
    out: list[Monomial] = []
    for m, bits in enumerate(table):
        covered = 0
        for e, t in gens:
            covered |= curve.level_bits(m - e) << t
        fresh = bits & ~covered
        for a in from_bits(fresh):
            gens.append((m, a))
            out.append(Monomial(m * d - a, a))
    return tuple(out)


def _from_table(curve: CurveSpec, table: Sequence[int], bound: int) -> MonomialIdeal:
    return MonomialIdeal(curve, minimal_generators(curve, table), True, bound)


def _check_bound(I: MonomialIdeal, bound: int) -> None:
    if bound < I.max_degree:
        raise BoundTooSmall(f"bound {bound} below generator degree {I.max_degree}")


def _colon_table(I: MonomialIdeal, f: Monomial, power: int, bound: int) -> list[int]:
    curve = I.curve
    e = f.degree(curve.d) * power
    shift = f.t_exp * power
    return [
        curve.level_bits(m) & (members_bits(I, m + e) >> shift)
        for m in range(bound + 1)
    ]


def colon(I: MonomialIdeal, f: Monomial, degree_bound: int) -> MonomialIdeal:
    """Generators of degree at most ``degree_bound`` of ``{u : u f in I}``."""
    if not is_in_ring(I.curve, f):
        raise NotGraded(f"{f} is not a monomial of the ring")
    _check_bound(I, degree_bound)
    return _from_table(I.curve, _colon_table(I, f, 1, degree_bound), degree_bound)


def _stable_power(I: MonomialIdeal, f: Monomial, degree_bound: int) -> int:
    """A power q with ``I : f^q = I : f^inf`` in degrees up to ``degree_bound``.

    For ``u`` of degree n and a generator ``v``, ``u f^q / v`` has degree
    ``n - deg v + q deg f`` and lies in the ring once that degree reaches the
    fewest chart generators needed for its fixed exponent.  When f is a pure
    power of t the s-exponent stays fixed, and symmetrically for s.
    """
    curve = I.curve
    d = curve.d
    e = f.degree(d)
    top = I.max_degree
    if f.s_exp == 0:
        lengths = min_lengths((d - g for g in curve.G), degree_bound * d)
    else:
        lengths = min_lengths(curve.G, degree_bound * d)
    longest = max(x for x in lengths if x is not None)
    return max(1, -(-(longest + top) // e))


def saturate(I: MonomialIdeal, f: Monomial, degree_bound: int) -> MonomialIdeal:
    """``(I : f^inf)`` up to ``degree_bound``.

    The chain ``I : f^i`` can stay flat for several steps and then grow, so
    no finite window of agreement proves it has stopped.  Instead the colon
    is taken once, exactly, at a power past which it provably cannot grow.
    If f involves both s and t, every monomial times a large power of f lands
    in high degree far from both axes, where R~/R has no room, so a nonzero
    ideal saturates to the unit ideal.
    """
    if not is_in_ring(I.curve, f):
        raise NotGraded(f"{f} is not a monomial of the ring")
    _check_bound(I, degree_bound)
    curve = I.curve
    if f == ONE or not I.gens:
        return _from_table(curve, member_table(I, degree_bound), degree_bound)
    if f.s_exp and f.t_exp:
        return MonomialIdeal(curve, (ONE,), True, degree_bound)
    q = _stable_power(I, f, degree_bound)
    return _from_table(curve, _colon_table(I, f, q, degree_bound), degree_bound)


def intersect(I: MonomialIdeal, J: MonomialIdeal, degree_bound: int) -> MonomialIdeal:
    if I.curve != J.curve:
        raise CurveMismatch("ideals live in different rings")
    _check_bound(I, degree_bound)
    _check_bound(J, degree_bound)
    table = [members_bits(I, m) & members_bits(J, m) for m in range(degree_bound + 1)]
    return _from_table(I.curve, table, degree_bound)


def ideal_equal(I: MonomialIdeal, J: MonomialIdeal, degree_bound: int) -> BoundedVerdict:
    """Compare members degree by degree; on failure report the first separating monomial."""
    if I.curve != J.curve:
        raise CurveMismatch("ideals live in different rings")
    d = I.curve.d
    for m in range(degree_bound + 1):
        diff = members_bits(I, m) ^ members_bits(J, m)
        if diff:
            a = (diff & -diff).bit_length() - 1
            return BoundedVerdict(False, degree_bound, (Monomial(m * d - a, a),))
    return BoundedVerdict(True, degree_bound)


def has_power_in(I: MonomialIdeal, g: Monomial, cap: int) -> bool | None:
    """True if ``g^k`` lies in ``I`` for some ``1 <= k <= cap``, None if the cap ran out."""
    for k in range(1, cap + 1):
        if _divisible_by_any(I.curve, Monomial(k * g.s_exp, k * g.t_exp), I.gens):
            return True
    return None


def is_primary(I: MonomialIdeal, degree_bound: int) -> BoundedVerdict:
    """Monomial pair test: ``fg in I`` and ``f not in I`` force a power of ``g`` into I.

    All pairs with ``deg f + deg g <= degree_bound`` are examined, ``f`` then
    ``g`` in (degree, t-exponent) order.  Powers are searched up to
    ``k <= degree_bound * d``; a ``g`` whose search runs out counts as having
    no power in I and the verdict carries a note.
    """
    curve = I.curve
    d = curve.d
    cap = max(1, degree_bound * d)
    table = member_table(I, degree_bound)
    # degreewise bitsets of monomials with no power in I (up to the cap)
    nonradical: list[int] = []
    capped = 0
    for j in range(degree_bound + 1):
        bits = 0
        for a in from_bits(curve.level_bits(j)):
            g = Monomial(j * d - a, a)
            if g == ONE or has_power_in(I, g, cap) is None:
                bits |= 1 << a
                if g != ONE:
                    capped += 1
        nonradical.append(bits)
    note = f"power search capped at k <= {cap} for {capped} monomials" if capped else ""
    for i in range(degree_bound + 1):
        outside = curve.level_bits(i) & ~table[i]
        for a in from_bits(outside):
            for j in range(degree_bound - i + 1):
                hits = nonradical[j] & (table[i + j] >> a)
                if hits:
                    b = (hits & -hits).bit_length() - 1
                    pair = (Monomial(i * d - a, a), Monomial(j * d - b, b))
                    return BoundedVerdict(False, degree_bound, pair, note)
    return BoundedVerdict(True, degree_bound, None, note)


# ---------------------------------------------------------------------------
# text format  ``d:g1,...,gk|A,B;A,B``
# ---------------------------------------------------------------------------

def parse_monomial(text: str) -> Monomial:
    parts = text.strip().split(",")
    if len(parts) != 2:
        raise ParseError(f"bad monomial token {text!r}, expected 'A,B'")
    try:
        return Monomial(int(parts[0]), int(parts[1]))
    except ValueError:
        raise ParseError(f"bad monomial token {text!r}") from None


def parse_ideal(text: str, curve: CurveSpec | None = None) -> MonomialIdeal:
    head, sep, tail = text.strip().partition("|")
    if sep:
        curve = parse_curve(head)
    elif curve is None:
        raise ParseError(f"missing '|' in ideal {text!r}")
    else:
        tail = head
    gens = [parse_monomial(tok) for tok in tail.split(";") if tok.strip()]
    return make_ideal(curve, gens)


def format_gens(gens: Iterable[Monomial]) -> str:
    return ";".join(f"{g.s_exp},{g.t_exp}" for g in gens)


def format_ideal(I: MonomialIdeal) -> str:
    return f"{format_curve(I.curve)}|{format_gens(I.gens)}"
