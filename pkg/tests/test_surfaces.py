import pytest

from toricsss.errors import ConstraintViolated
from toricsss.lattice import Hirzebruch, Trapezoid
from toricsss.surfaces import (
    MATCHES,
    SKIPPED,
    VIOLATION,
    hirzebruch_params,
    reports_to_csv,
    trapezoid_params,
    valid_hirzebruch,
    valid_trapezoids,
    validate_family,
)


def test_hirzebruch_formula():
    fp = hirzebruch_params(5, 1, 1, 1)
    assert fp.count_U == 5
    assert fp.max_zeros.value == max(1 * 4 + 3 * 1, 4 * 2) == 8
    assert fp.r_threshold.value == 9
    with pytest.raises(ConstraintViolated):
        hirzebruch_params(5, 2, 2, 1)


def test_trapezoid_formula():
    fp = trapezoid_params(5, 1, 1)
    assert fp.max_zeros.value == 13 and fp.max_zeros.kind == "upper-bound"
    assert fp.r_threshold.value == 14
    assert fp.t_threshold_lb.value == 0
    assert fp.strong_t.value == 0
    assert trapezoid_params(8, 2, 2).strong_t.value == 1
    assert trapezoid_params(5, 2, 0).strong_t.kind == "undefined"
    assert trapezoid_params(5, 0, 0).t_threshold_lb.kind == "vacuous"
    with pytest.raises(ConstraintViolated):
        trapezoid_params(5, 1, 2)


def test_enumerators():
    hs = list(valid_hirzebruch(5))
    assert Hirzebruch(1, 1, 1) in hs and all(h.e + h.twist * h.d <= 3 for h in hs)
    assert len(list(valid_trapezoids(5))) == 10


def test_validate_hirzebruch_matches():
    rep = validate_family(5, Hirzebruch(1, 1, 1))
    status = {r.quantity: r.status for r in rep.rows}
    assert status["max_zeros"] == MATCHES and status["r_threshold"] == MATCHES
    assert not rep.violations


def test_validate_trapezoid_and_csv():
    rep = validate_family(5, Trapezoid(1, 1, 5))
    rows = {r.quantity: r for r in rep.rows}
    assert rows["max_zeros"].measured == 13
    assert rows["t_threshold"].measured == 1
    assert rows["strong_t"].measured is True
    text = reports_to_csv([rep])
    assert text.splitlines()[0] == "q,family,params,quantity,predicted,measured,method,status"
    deg = validate_family(4, Trapezoid(2, 2, 4))
    assert deg.rows[-1].status == SKIPPED


def test_wrong_formula_is_flagged(monkeypatch):
    import toricsss.surfaces as s
    from toricsss.surfaces import FamilyParams, Predicted

    real = s.hirzebruch_params

    def off_by_one(q, d, e, t):
        fp = real(q, d, e, t)
        return FamilyParams(fp.family, q, fp.count_U, Predicted(fp.max_zeros.value + 1, "exact"),
                            fp.r_threshold, fp.t_threshold_lb, fp.strong_t)

    monkeypatch.setattr(s, "hirzebruch_params", off_by_one)
    rep = validate_family(5, Hirzebruch(1, 1, 1))
    assert [r.quantity for r in rep.violations] == ["max_zeros"]
    assert rep.violations[0].status == VIOLATION


def test_hirzebruch_q7_exhaustive():
    rep = validate_family(7, Hirzebruch(2, 1, 1))
    rows = {r.quantity: r for r in rep.rows}
    assert rows["count_U"].measured == 9
    assert rows["max_zeros"].measured == 18 and rows["max_zeros"].method == "exhaustive"
    assert rows["r_threshold"].measured == 19
    assert not rep.violations
