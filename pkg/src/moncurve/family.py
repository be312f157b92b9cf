"""The two-parameter family M_r^n and its predicted invariants.

For ``r >= 5`` and ``n >= 1`` the curve has degree ``d = 2r + 2n - 1`` and
exponents ``0, r, 2r-2, 2r-1, 2r+1, 2r+3, ..., 2r+2n-1``.  The exponent
``2r - 1`` (index 0 of the odd run) is inferred, not stated outright, in the
construction; it is the only value consistent with the worked
examples and with ``a_n - a_0 = 2n``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .errors import MoncurveError, ParamsOutOfRange
from .invariants import InvariantReport, classify
from .semigroup import CurveSpec, Monomial, make_curve

CM = "CM"
BUCHSBAUM_1 = "Buchsbaum_1"
STRICT_2 = "strictly_2_Buchsbaum"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class FamilyParams:
    r: int
    n: int

    def __post_init__(self) -> None:
        if self.r < 5:
            raise ParamsOutOfRange(f"r must be at least 5, got {self.r}")
        if self.n < 1:
            raise ParamsOutOfRange(f"n must be at least 1, got {self.n}")

    @property
    def b1(self) -> int:
        return self.r

    @property
    def b2(self) -> int:
        return 2 * self.r - 2

    def a(self, i: int) -> int:
        return 2 * self.r + 2 * i - 1

    @property
    def d(self) -> int:
        return self.a(self.n)

    @property
    def exponents(self) -> tuple[int, ...]:
        return (0, self.b1, self.b2) + tuple(self.a(i) for i in range(self.n + 1))

    @property
    def extra_generator(self) -> Monomial:
        """The extra Macaulayfication generator ``s^(2a_n - 3b_1) t^(3b_1)``."""
        return Monomial(2 * self.d - 3 * self.b1, 3 * self.b1)


def family_curve(r: int, n: int) -> CurveSpec:
    p = FamilyParams(r, n)
    ex = p.exponents
    if any(x >= y for x, y in zip(ex, ex[1:])):
        raise ParamsOutOfRange(f"exponents not strictly increasing for r={r}, n={n}")
    if math.gcd(*ex[1:]) != 1:
        raise ParamsOutOfRange(f"exponents not coprime for r={r}, n={n}")
    return make_curve(p.d, ex)


@dataclass(frozen=True)
class Prediction:
    classification: str
    source: str
    predicted_new_gen: Monomial | None
    predicted_reg_eq_rQ: bool = True


def predict(r: int, n: int) -> Prediction:
    p = FamilyParams(r, n)
    if 2 * n >= r - 5:
        if r % 2 == 1 and 2 * n >= r + 1:
            cls, src = CM, "XY(i)"
        elif r % 2 == 1:
            cls, src = BUCHSBAUM_1, "XY(ii)"
        else:
            cls, src = BUCHSBAUM_1, "XY(iii)"
    elif r == 2 * n + 8:
        cls, src = STRICT_2, "XZ"
    else:
        cls, src = UNKNOWN, "none"
    gen = None if cls == CM else p.extra_generator
    return Prediction(cls, src, gen, True)


@dataclass(frozen=True)
class VerificationRow:
    r: int
    n: int
    curve: CurveSpec | None
    report: InvariantReport | None
    prediction: Prediction
    mismatches: tuple[str, ...]
    error: str | None = None

    @property
    def matched(self) -> bool:
        return self.error is None and not self.mismatches

    @property
    def match_label(self) -> str:
        if self.error is not None:
            return "error"
        return "yes" if not self.mismatches else "no:" + "+".join(self.mismatches)

    @property
    def question_residual(self) -> int | None:
        """reg - (k + 2) for non-CM rows; the open question asks whether this is always 0."""
        if self.report is None or self.report.k < 1:
            return None
        return self.report.reg - (self.report.k + 2)

    def csv_row(self) -> dict:
        rep = self.report
        d = self.curve.d if self.curve else FamilyParams(self.r, self.n).d
        G = " ".join(str(g) for g in self.curve.G) if self.curve else ""

        def opt(v):
            return "" if v is None else v

        return {
            "r": self.r,
            "n": self.n,
            "d": d,
            "G": G,
            "k": opt(rep and rep.k),
            "l": opt(rep and rep.l),
            "a_invariant": opt(rep and rep.a_invariant),
            "r_Q_R": opt(rep and rep.r_Q_R),
            "r_Q_Rtilde": opt(rep and rep.r_Q_Rtilde),
            "reg": opt(rep and rep.reg),
            "is_CM": "" if rep is None else str(rep.is_CM).lower(),
            "new_gens": "" if rep is None else " ".join(f"{g.s_exp},{g.t_exp}" for g in rep.new_generators),
            "prediction": self.prediction.classification,
            "prediction_source": self.prediction.source,
            "match": self.match_label,
            "question_residual": opt(self.question_residual),
        }


CSV_COLUMNS = (
    "r", "n", "d", "G", "k", "l", "a_invariant", "r_Q_R", "r_Q_Rtilde", "reg", "is_CM",
    "new_gens", "prediction", "prediction_source", "match", "question_residual",
)


def compare(pred: Prediction, report: InvariantReport) -> tuple[str, ...]:
    bad = []
    if pred.classification == CM and not report.is_CM:
        bad.append("cm")
    elif pred.classification == BUCHSBAUM_1 and report.k != 1:
        bad.append("k")
    elif pred.classification == STRICT_2 and report.k != 2:
        bad.append("k")
    if pred.predicted_new_gen is not None and report.new_generators != (pred.predicted_new_gen,):
        bad.append("new_gen")
    if pred.predicted_reg_eq_rQ and report.reg != report.r_Q_R:
        bad.append("reg")
    return tuple(dict.fromkeys(bad))


def verify_one(r: int, n: int) -> VerificationRow:
    pred = predict(r, n)
    try:
        curve = family_curve(r, n)
        report = classify(curve)
    except MoncurveError as exc:
        return VerificationRow(r, n, None, None, pred, (), f"{type(exc).__name__}: {exc}")
    return VerificationRow(r, n, curve, report, pred, compare(pred, report))


def _verify_pair(pair: tuple[int, int]) -> VerificationRow:
    return verify_one(*pair)


def verify_family(
    r_range: Iterable[int], n_range: Iterable[int], *, jobs: int = 1
) -> list[VerificationRow]:
    """Classify every (r, n) and compare with the predictions; rows in (r, n) order.

    A failing row is recorded with its error and does not stop the sweep.
    """
    pairs = [(r, n) for r in r_range for n in n_range]
    for r, n in pairs:
        FamilyParams(r, n)
    if jobs <= 1 or len(pairs) <= 1:
        return [verify_one(r, n) for r, n in pairs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_pair, pairs, chunksize=4))

