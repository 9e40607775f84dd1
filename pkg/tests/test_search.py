import pytest

from fatpoints.core import MultiplicitySequence
from fatpoints.search import (
    crosscheck_reduction_vs_oracle,
    drugie_cells,
    hopefullylast_b_cells,
    nowa2_cells,
    parse_grid,
    scan_zastosowanie_failures,
    verify_comb1,
    verify_drugie,
    verify_finite_cases,
    verify_hopefullylast,
    verify_nowa2,
)

EXCEPTIONAL = ["8^9,1^103", "9^11,1^80", "20^12,2^90", "30^11,3^130", "60^11,5^224", "130^12,12^101"]


def test_parse_grid():
    assert parse_grid("a=2..4, p=9") == {"a": range(2, 5), "p": range(9, 10)}
    with pytest.raises(ValueError):
        parse_grid("a=4..2")
    with pytest.raises(ValueError):
        parse_grid("a:2")


def test_scan_finds_exceptional_sequences():
    found = scan_zastosowanie_failures("a=8..9,p=9..11,b=1..1,q=80..103")
    names = {ms.compressed() for ms in found}
    assert {"8^9,1^103", "9^11,1^80"} <= names
    for text in EXCEPTIONAL[2:]:
        (a, p), (b, q) = MultiplicitySequence.parse(text).counts()
        hit = scan_zastosowanie_failures(f"a={a},p={p},b={b},q={q}")
        assert [ms.compressed() for ms in hit] == [text]


def test_scan_two_and_one_is_empty():
    assert scan_zastosowanie_failures("a=2,p=1..29,b=1,q=1..29") == []


def test_scan_is_order_and_parallelism_independent():
    family = "a=6..12,p=9..10,b=1..2,q=60..120"
    assert scan_zastosowanie_failures(family) == scan_zastosowanie_failures(family, threads=2)


def test_scan_cap_and_family_validation():
    with pytest.raises(ValueError, match="cap"):
        scan_zastosowanie_failures("a=2..10,p=9..10,b=1..2,q=1..10", cap=10)
    with pytest.raises(ValueError, match="missing"):
        scan_zastosowanie_failures("a=2..10")


def test_finite_grids():
    assert len(drugie_cells()) == 133
    assert (5, 25) in drugie_cells()
    assert (2, 2, 8) in hopefullylast_b_cells()
    reports = verify_finite_cases()
    assert all(r.passed for r in reports.values())
    assert verify_nowa2([(4, 2, 9, 4)]).cells[0]["value"] == 160
    assert verify_hopefullylast([(2, 2, 8)]).passed
    assert verify_drugie([(5, 25)]).passed


def test_nowa2_cells_respect_constraints():
    for x, y, s, t in nowa2_cells():
        assert x >= y and 2 * y >= x and s >= t >= 4 and s >= 9


def test_comb1_grid_only_fails_on_two_one_eight():
    rep = verify_comb1(range(2, 5), range(9, 11))
    assert [c["mults"] for c in rep.failures] == ["2,1^8"]


def test_crosscheck_small():
    rep = crosscheck_reduction_vs_oracle(6, 5, 3)
    assert rep.cases > 0 and rep.proven > 0 and rep.violations == []
    assert rep.to_dict()["limits"]["d_max"] == 6
