import pytest

from moncurve.errors import ParamsOutOfRange
from moncurve.family import (
    BUCHSBAUM_1,
    CM,
    CSV_COLUMNS,
    STRICT_2,
    UNKNOWN,
    FamilyParams,
    compare,
    family_curve,
    predict,
    verify_family,
    verify_one,
)
from moncurve.invariants import classify
from moncurve.semigroup import Monomial

M = Monomial


@pytest.mark.parametrize("r, n, d, G", [
    (10, 1, 21, (0, 10, 18, 19, 21)),
    (5, 2, 13, (0, 5, 8, 9, 11, 13)),
    (5, 3, 15, (0, 5, 8, 9, 11, 13, 15)),
])
def test_family_curve(r, n, d, G):
    c = family_curve(r, n)
    assert (c.d, c.G) == (d, G)


def test_params():
    p = FamilyParams(7, 2)
    assert (p.b1, p.b2, p.a(0), p.d) == (7, 12, 13, 17)
    assert p.extra_generator == M(13, 21)
    for r, n in ((4, 1), (5, 0)):
        with pytest.raises(ParamsOutOfRange):
            FamilyParams(r, n)


def test_exponents_strictly_increasing_and_odd_top():
    for r in range(5, 30):
        for n in range(1, 10):
            ex = FamilyParams(r, n).exponents
            assert list(ex) == sorted(set(ex))
            assert ex[-1] % 2 == 1


@pytest.mark.parametrize("r, n, cls, src", [
    (5, 2, BUCHSBAUM_1, "XY(ii)"),
    (5, 3, CM, "XY(i)"),
    (10, 1, STRICT_2, "XZ"),
    (6, 1, BUCHSBAUM_1, "XY(iii)"),
    (13, 1, UNKNOWN, "none"),
])
def test_predict(r, n, cls, src):
    p = predict(r, n)
    assert (p.classification, p.source) == (cls, src)
    assert p.predicted_reg_eq_rQ
    assert (p.predicted_new_gen is None) == (cls == CM)


def test_predicted_generator_examples():
    assert predict(10, 1).predicted_new_gen == M(12, 30)
    assert predict(5, 2).predicted_new_gen == M(11, 15)


def test_verify_small_ranges():
    rows = verify_family(range(5, 6), range(2, 4))
    assert [(r.r, r.n) for r in rows] == [(5, 2), (5, 3)]
    assert all(r.matched for r in rows)
    assert rows[0].report.k == 1 and rows[1].report.is_CM


def test_example_one_residual():
    (row,) = verify_family([10], [1])
    assert row.matched
    assert row.report.k == 2 and row.report.reg == 4
    assert row.question_residual == 0


def test_even_r_row():
    row = verify_one(6, 1)
    assert row.prediction.source == "XY(iii)"
    assert row.matched and row.report.k == 1 and not row.report.is_CM


def test_compare_flags_mismatches():
    rep = classify(family_curve(5, 2))
    assert compare(predict(5, 3), rep) == ("cm",)
    assert compare(predict(10, 1), rep) == ("k", "new_gen")
    assert compare(predict(10, 1), classify(family_curve(10, 1))) == ()


def test_csv_row_columns():
    row = verify_one(10, 1)
    data = row.csv_row()
    assert tuple(data) == CSV_COLUMNS
    assert data["G"] == "0 10 18 19 21"
    assert data["new_gens"] == "12,30"
    assert data["match"] == "yes" and data["is_CM"] == "false"


def test_parallel_sweep_matches_serial():
    serial = verify_family(range(5, 9), range(1, 4))
    parallel = verify_family(range(5, 9), range(1, 4), jobs=3)
    assert [r.csv_row() for r in serial] == [r.csv_row() for r in parallel]


def test_gap_region_rows_have_one_new_generator():
    for r, n in ((13, 1), (15, 2), (20, 3)):
        row = verify_one(r, n)
        assert row.prediction.classification == UNKNOWN
        assert row.report.new_generators == (FamilyParams(r, n).extra_generator,)
