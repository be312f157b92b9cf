"""Macaulayfication, Buchsbaum level, Rao module, reduction numbers, regularity.

The Macaulayfication R~ of K[M] is again a monomial algebra.  A monomial
``s^(nd-a) t^a`` belongs to it exactly when ``a`` lies in the t-side
semigroup and ``nd - a`` in the s-side semigroup (it lands in R after
multiplying by a power of ``s^d`` and by a power of ``t^d``).  The Rao module
R~/R is then the finite family of exponent sets ``T(n) = R~_n \\ nG``.

Two independent constructions are provided: one reads R~ off the two affine
semigroups, the other goes through the saturation ``((s^d)^p : (t^d)^inf)``
computed in :mod:`moncurve.ideals`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from . import ideals
from .errors import (
    BoundTooSmall,
    HypothesisNotVerified,
    InvariantViolation,
    LUndefined,
    NotStabilized,
    StabilizationViolated,
)
from .semigroup import (
    CurveSpec,
    Monomial,
    format_curve,
    from_bits,
    min_lengths,
    s_semigroup,
    shift_sum,
    sumset_bits,
    t_semigroup,
    to_bits,
)


@dataclass(frozen=True)
class Macaulayfication:
    curve: CurveSpec
    bound: int
    rtilde: tuple[int, ...] = field(repr=False)  # bitset of R~_n exponents, n = 0..bound
    T: dict[int, tuple[int, ...]]  # nonempty R~_n \ nG only
    new_gens: tuple[Monomial, ...]
    l: int | None
    G_tilde: frozenset[int] | None
    a_invariant: int | None  # None stands for -infinity (R~ = R)

    @property
    def is_trivial(self) -> bool:
        return not self.T

    def t_bits(self, n: int) -> int:
        return to_bits(self.T.get(n, ()))

    def level(self, n: int) -> int:
        """Exponents of R~_n for any n >= 0; above the bound R~ agrees with R."""
        if n <= self.bound:
            return self.rtilde[n]
        return self.curve.level_bits(n)

    @property
    def new_gen_exponents(self) -> tuple[int, ...]:
        return tuple(g.t_exp for g in self.new_gens)


def stabilization_degree(curve: CurveSpec) -> int:
    """Degree above which R~/R vanishes: reg(R) <= d - n (Gruson-Lazarsfeld-Peskine)."""
    return curve.d - curve.mid_count


def _check_n(curve: CurveSpec, N: int | None) -> int:
    if N is None:
        N = curve.d
    if N < stabilization_degree(curve):
        raise BoundTooSmall(f"degree bound {N} below stabilization degree {stabilization_degree(curve)}")
    return N


def _finish(curve: CurveSpec, rtilde: list[int], N: int) -> Macaulayfication:
    d = curve.d
    top = stabilization_degree(curve)
    T: dict[int, tuple[int, ...]] = {}
    for n, bits in enumerate(rtilde):
        level = curve.level_bits(n)
        if level & ~bits:
            raise InvariantViolation(f"R_{n} not contained in the Macaulayfication")
        extra = bits & ~level
        if extra:
            if n > top:
                raise StabilizationViolated(
                    f"R~/R nonzero in degree {n} > d - n = {top} for {format_curve(curve)}"
                )
            T[n] = tuple(from_bits(extra))

    # greedy minimal algebra generators, degree by degree
    new_gens: list[Monomial] = []
    for n in sorted(T):
        decomposable = shift_sum(rtilde[n - 1], curve.G)
        for i in range(1, n // 2 + 1):
            if i in T and (n - i) in T:
                decomposable |= sumset_bits(to_bits(T[i]), to_bits(T[n - i]))
        for a in T[n]:
            if not decomposable >> a & 1:
                new_gens.append(Monomial(n * d - a, a))

    degrees = {g.degree(d) for g in new_gens}
    l = degrees.pop() if len(degrees) == 1 else None
    G_tilde = None
    if l is not None:
        G_tilde = frozenset(from_bits(curve.level_bits(l))) | {g.t_exp for g in new_gens}
    a_inv = max(T) if T else None
    return Macaulayfication(curve, N, tuple(rtilde), T, tuple(new_gens), l, G_tilde, a_inv)


def macaulayfication_sections(curve: CurveSpec, N: int | None = None) -> Macaulayfication:
    """R~ from the two affine semigroups: ``a`` in the t-side one, ``nd - a`` in the s-side one."""
    N = _check_n(curve, N)
    d = curve.d
    B = (N + 1) * d
    gt = t_semigroup(curve, B).membership
    gs = s_semigroup(curve, B).membership
    rtilde = []
    for n in range(N + 1):
        nd = n * d
        rtilde.append(to_bits(a for a in range(nd + 1) if gt[a] and gs[nd - a]))
    return _finish(curve, rtilde, N)


def macaulayfication_colon(curve: CurveSpec, N: int | None = None) -> Macaulayfication:
    """R~ as ``a^-1 C(a)`` with ``a = (s^d)^p`` and ``C(a) = (a : (t^d)^inf)``.

    A section ``x`` of degree n with t-exponent y satisfies ``x a`` in R as
    soon as ``n + p`` reaches the fewest exponents summing to y, so p is
    taken as the largest such count over the degrees in range.  Agreement of
    two consecutive p would not prove anything: the quotient can stall.
    """
    N = _check_n(curve, N)
    d = curve.d
    lengths = min_lengths(curve.G, N * d)
    p = max(1, max(x for x in lengths if x is not None))
    sat = ideals.saturate(ideals.make_ideal(curve, [Monomial(p * d, 0)]), Monomial(0, d), N + p)
    rtilde = [ideals.members_bits(sat, n + p) for n in range(N + 1)]
    return _finish(curve, rtilde, N)


# ---------------------------------------------------------------------------
# Buchsbaum level and the numerical criterion
# ---------------------------------------------------------------------------

def _kills(curve: CurveSpec, mac: Macaulayfication, k: int) -> bool:
    """Whether the k-th power of the maximal ideal maps R~ into R."""
    kG = curve.level_bits(k)
    for n in mac.T:
        if sumset_bits(kG, mac.t_bits(n)) & ~curve.level_bits(n + k):
            return False
    return True


def buchsbaum_level(curve: CurveSpec, mac: Macaulayfication) -> int:
    """Least k with ``kG + T(n) ⊆ (n+k)G`` for every n."""
    if mac.is_trivial:
        return 0
    cap = mac.a_invariant + 1
    for k in range(cap + 1):
        if _kills(curve, mac, k):
            if not _kills(curve, mac, k + 1):
                raise InvariantViolation(f"annihilation not monotone at k = {k}")
            return k
    raise InvariantViolation(f"no annihilating power up to a + 1 = {cap}")


class CriterionResult(NamedTuple):
    holds: bool
    witness: int | None


def check_level_hypothesis(curve: CurveSpec, mac: Macaulayfication) -> bool:
    """``H + H ⊆ 2lG`` or ``H + H ⊆ lG + H`` for H the new generator exponents."""
    if not mac.new_gens:
        return True
    if mac.l is None:
        raise LUndefined("new generators occupy several degrees")
    H = to_bits(mac.new_gen_exponents)
    HH = sumset_bits(H, H)
    l = mac.l
    if not HH & ~curve.level_bits(2 * l):
        return True
    return not HH & ~sumset_bits(curve.level_bits(l), H)


def check_strict_k_criterion(
    curve: CurveSpec, mac: Macaulayfication, k: int, *, require_hypothesis: bool = True
) -> CriterionResult:
    """``kG + G~ ⊆ (k+l)G``; on failure the smallest offending exponent is returned."""
    if not mac.new_gens:
        return CriterionResult(True, None)
    if mac.l is None:
        raise LUndefined("new generators occupy several degrees")
    if require_hypothesis and not check_level_hypothesis(curve, mac):
        raise HypothesisNotVerified("level hypothesis fails for this curve")
    lhs = sumset_bits(curve.level_bits(k), to_bits(mac.G_tilde))
    rhs = curve.level_bits(k + mac.l)
    if rhs & ~lhs:
        raise InvariantViolation("(k+l)G not contained in kG + G~")
    bad = lhs & ~rhs
    if bad:
        return CriterionResult(False, (bad & -bad).bit_length() - 1)
    return CriterionResult(True, None)


# ---------------------------------------------------------------------------
# Rao module, reduction number, regularity
# ---------------------------------------------------------------------------

class RaoModule(NamedTuple):
    hilbert: tuple[int, ...]  # dimension of (R~/R)_n for n = 0..a
    a_invariant: int | None


def rao_module(curve: CurveSpec, mac: Macaulayfication) -> RaoModule:
    if mac.a_invariant is None:
        return RaoModule((), None)
    return RaoModule(tuple(len(mac.T.get(n, ())) for n in range(mac.a_invariant + 1)), mac.a_invariant)


def reduction_number(levels: Sequence[int], d: int) -> int:
    """Least n with ``W_{n+1} = W_n ∪ (W_n + d)``, for degreewise exponent bitsets W."""
    for n in range(len(levels) - 1):
        w = levels[n]
        if levels[n + 1] == w | (w << d):
            for m in range(n + 1, min(n + 3, len(levels) - 1)):
                if levels[m + 1] != levels[m] | (levels[m] << d):
                    raise InvariantViolation(f"reduction equality at {n} fails again at {m}")
            return n
    raise NotStabilized(f"no reduction equality within {len(levels)} degrees")


def reduction_number_ring(curve: CurveSpec, upto: int | None = None) -> int:
    upto = curve.d + 3 if upto is None else upto
    return reduction_number([curve.level_bits(n) for n in range(upto + 1)], curve.d)


def reduction_number_rtilde(curve: CurveSpec, mac: Macaulayfication) -> int:
    return reduction_number([mac.level(n) for n in range(mac.bound + 4)], curve.d)


class Regularity(NamedTuple):
    value: int
    branch: str  # "k+l", "a+1" or "cm"


def regularity(
    curve: CurveSpec, mac: Macaulayfication, k: int, *, force_kl: bool = False,
    r_q_tilde: int | None = None,
) -> Regularity:
    """reg(R) = max{a(R~/R) + 1, r_Q(R~)}; the max{k + l, r_Q(R~)} form when it applies."""
    if r_q_tilde is None:
        r_q_tilde = reduction_number_rtilde(curve, mac)
    hyp = mac.l is not None and check_level_hypothesis(curve, mac)
    if force_kl and not (k >= 1 and hyp):
        raise HypothesisNotVerified("k + l formula needs k >= 1, one new-generator degree and the level hypothesis")
    if mac.a_invariant is None:
        return Regularity(r_q_tilde, "cm")
    general = max(mac.a_invariant + 1, r_q_tilde)
    if k >= 1 and hyp:
        value = max(k + mac.l, r_q_tilde)
        if value != general:
            raise InvariantViolation(f"k + l form gives {value}, a + 1 form gives {general}")
        return Regularity(value, "k+l")
    return Regularity(general, "a+1")


# ---------------------------------------------------------------------------
# full report
# ---------------------------------------------------------------------------

REPORT_KEYS = (
    "curve", "d", "G", "k", "l", "a_invariant", "rao_hilbert", "r_Q_R", "r_Q_Rtilde",
    "reg", "is_CM", "new_generators", "formula_branch", "hypothesis_holds", "criterion_checked",
)


@dataclass(frozen=True)
class InvariantReport:
    curve: CurveSpec
    k: int
    is_CM: bool
    l: int | None
    a_invariant: int | None
    rao_hilbert: tuple[int, ...]
    r_Q_R: int
    r_Q_Rtilde: int
    reg: int
    formula_branch: str
    new_generators: tuple[Monomial, ...]
    hypothesis_holds: bool | None
    criterion_checked: bool | None

    def to_dict(self) -> dict:
        values = {
            "curve": format_curve(self.curve),
            "d": self.curve.d,
            "G": list(self.curve.G),
            "k": self.k,
            "l": self.l,
            "a_invariant": self.a_invariant,
            "rao_hilbert": list(self.rao_hilbert),
            "r_Q_R": self.r_Q_R,
            "r_Q_Rtilde": self.r_Q_Rtilde,
            "reg": self.reg,
            "is_CM": self.is_CM,
            "new_generators": [[g.s_exp, g.t_exp] for g in self.new_generators],
            "formula_branch": self.formula_branch,
            "hypothesis_holds": self.hypothesis_holds,
            "criterion_checked": self.criterion_checked,
        }
        return {key: values[key] for key in REPORT_KEYS}


def check_report(report: InvariantReport) -> None:
    """Raise InvariantViolation if a structural property fails."""
    curve = report.curve
    if not report.r_Q_Rtilde <= report.r_Q_R <= report.reg:
        raise InvariantViolation(
            f"r_Q(R~) = {report.r_Q_Rtilde}, r_Q(R) = {report.r_Q_R}, reg = {report.reg} out of order"
        )
    if report.reg > stabilization_degree(curve):
        raise InvariantViolation(f"reg = {report.reg} exceeds d - n = {stabilization_degree(curve)}")
    if report.is_CM != (report.a_invariant is None) or report.is_CM != (report.k == 0):
        raise InvariantViolation("CM flag, Rao module and Buchsbaum level disagree")
    if report.hypothesis_holds and report.k >= 1 and report.l is not None:
        if report.a_invariant != report.k + report.l - 1:
            raise InvariantViolation(f"a(R~/R) = {report.a_invariant} != k + l - 1")
    if curve.is_smooth and curve.d >= 2 and report.reg != report.k + 1:
        raise InvariantViolation(f"smooth curve with reg = {report.reg}, k = {report.k}")


def classify(curve: CurveSpec, N: int | None = None) -> InvariantReport:
    mac = macaulayfication_sections(curve, N)
    k = buchsbaum_level(curve, mac)
    rao = rao_module(curve, mac)
    r_q = reduction_number_ring(curve)
    r_q_tilde = reduction_number_rtilde(curve, mac)
    hyp = None
    criterion = None
    if mac.new_gens and mac.l is not None:
        hyp = check_level_hypothesis(curve, mac)
        if hyp:
            at_k = check_strict_k_criterion(curve, mac, k).holds
            below = check_strict_k_criterion(curve, mac, k - 1).holds if k >= 1 else False
            criterion = at_k and not below
    elif not mac.new_gens:
        hyp = True
    reg = regularity(curve, mac, k, r_q_tilde=r_q_tilde)
    report = InvariantReport(
        curve=curve,
        k=k,
        is_CM=k == 0,
        l=mac.l,
        a_invariant=rao.a_invariant,
        rao_hilbert=rao.hilbert,
        r_Q_R=r_q,
        r_Q_Rtilde=r_q_tilde,
        reg=reg.value,
        formula_branch=reg.branch,
        new_generators=mac.new_gens,
        hypothesis_holds=hyp,
        criterion_checked=criterion,
    )
    check_report(report)
    return report
