import pytest
from hypothesis import given
from hypothesis import strategies as st

from fatpoints.core import HypothesisNotMet, vdim
from fatpoints.speciality import (
    OrderStrategy,
    Status,
    criterion_kryterium,
    decide,
    kryterium_threshold,
    order_kryterium,
    prove_h1_regular,
    reg_upper_bound,
    staircase,
)

P, U, REF = Status.PROVEN, Status.UNKNOWN, Status.REFUTED_BY_VDIM

mult_lists = st.lists(st.integers(1, 6), min_size=4, max_size=12)


def test_staircase():
    assert staircase(0) == (1,)
    assert staircase(9) == tuple(range(1, 11))
    with pytest.raises(ValueError):
        staircase(-1)


def test_chain_prover_examples():
    v = prove_h1_regular(9, (4, 4, 4, 3, 3, 3, 3))
    assert (v.nonspecial, v.effective, v.h1_regular) == (P, P, P)
    assert v.certificate.final_size == 1 and v.vdim == 0
    for order in ("as-given", "descending", "kryterium", "backtrack=100"):
        assert prove_h1_regular(4, (2,) * 5, order).nonspecial is U
    v = prove_h1_regular(2, (1,) * 5)
    assert v.h1_regular is P and v.certificate.final_size == 1


def test_chain_final_size_zero_means_empty():
    v = prove_h1_regular(1, (1, 1, 1))
    assert v.certificate.final_size == 0
    assert (v.nonspecial, v.effective, v.h1_regular) == (P, REF, U)


def test_order_matters_and_backtracking_recovers():
    assert prove_h1_regular(9, (3, 3, 3, 3, 4, 4, 4)).h1_regular is U
    v = prove_h1_regular(9, (3, 3, 3, 3, 4, 4, 4), "backtrack=50")
    assert v.h1_regular is P


def test_order_strategy_parse():
    assert OrderStrategy.parse("backtrack=7") == OrderStrategy("backtrack", 7)
    assert str(OrderStrategy.parse("kryterium")) == "kryterium"
    with pytest.raises(ValueError):
        OrderStrategy.parse("random")
    with pytest.raises(ValueError):
        OrderStrategy.parse("backtrack=0")


def test_order_kryterium():
    assert order_kryterium((5, 4, 3, 2, 1)) == (5, 4, 3, 1, 2)
    assert order_kryterium((9, 8, 7, 6)) == (9, 8, 7, 6)
    assert order_kryterium((4, 4, 4, 3, 3)) == (4, 4, 4, 3, 3)
    with pytest.raises(HypothesisNotMet):
        order_kryterium((1, 1, 1))


def test_threshold_values():
    assert [kryterium_threshold(m) for m in (1, 2, 3, 4, 5)] == [0, 1, 5, 12, 22]
    for m in range(1, 40):
        assert 2 * kryterium_threshold(m) == (2 * m - 1) * (m - 1) * 2 + 2 - m * (m + 1)


def test_criterion_examples():
    v = criterion_kryterium(9, (4, 4, 4, 3, 3))
    assert v.h1_regular is P and v.details["L"] == 13 and v.details["R"] == 5
    v = criterion_kryterium(9, (4, 4, 4, 3, 3, 3, 3))
    assert v.nonspecial is U and v.details["L"] == 1
    v = criterion_kryterium(4, (2,) * 5)
    assert v.nonspecial is U and (v.details["L"], v.details["R"]) == (0, 1)
    with pytest.raises(HypothesisNotMet):
        criterion_kryterium(5, (1, 1, 1))


def test_criterion_boundary_l_zero():
    # L = 0 >= R = 0 with d >= m1+m2: non-special and empty
    v = criterion_kryterium(2, (1,) * 6)
    assert v.details["L"] == 0
    assert (v.nonspecial, v.effective, v.h1_regular) == (P, REF, U)


def test_reg_upper_bound():
    assert reg_upper_bound((4, 4, 4, 3, 3)) == 10
    assert reg_upper_bound((1, 1, 1, 1)) == 3
    for m in range(2, 15):
        assert reg_upper_bound((m, m, 1, 1)) <= 2 * m + 1
    with pytest.raises(HypothesisNotMet):
        reg_upper_bound((3, 2))


def test_decide_prefers_proofs():
    assert decide(9, (4, 4, 4, 3, 3, 3, 3)).h1_regular is P
    assert decide(4, (2,) * 5).nonspecial is U


@given(st.integers(0, 20), mult_lists)
def test_criterion_implies_chain_in_criterion_order(d, mults):
    if criterion_kryterium(d, mults).h1_regular is P:
        assert prove_h1_regular(d, mults, "kryterium").h1_regular is P


@given(st.integers(0, 20), st.lists(st.integers(1, 6), min_size=1, max_size=10))
def test_never_claims_special(d, mults):
    for v in [prove_h1_regular(d, mults, "descending")] + ([criterion_kryterium(d, mults)] if len(mults) >= 4 else []):
        assert {v.nonspecial, v.effective, v.h1_regular} <= {P, U, REF}
        if v.effective is REF:
            assert vdim(2, d, mults) == -1
        if v.h1_regular is P:
            assert vdim(2, d, mults) >= 0


@given(st.integers(0, 20), st.lists(st.integers(1, 6), min_size=1, max_size=10))
def test_chain_final_size_is_vdim_plus_one(d, mults):
    v = prove_h1_regular(d, mults, "descending")
    if v.certificate is not None:
        assert v.certificate.final_size == vdim(2, d, mults) + 1


@given(st.integers(0, 14), st.lists(st.integers(1, 5), min_size=1, max_size=7), st.integers(1, 20))
def test_backtracking_never_loses_descending_proofs(d, mults, budget):
    if prove_h1_regular(d, mults, "descending").nonspecial is P:
        assert prove_h1_regular(d, mults, f"backtrack={budget}").nonspecial is P


def test_verdict_serialises():
    d = prove_h1_regular(9, (4, 4, 4, 3, 3, 3, 3)).to_dict()
    assert d["h1_regular"] == "proven" and d["certificate"]["final"] == [1]
    assert d["route"] == "reduction-chain"
