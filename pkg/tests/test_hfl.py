import pytest

import goldens as G
from helpers import parse
from motivic_poincare.engine import semigroup_series
from motivic_poincare.hfl import (
    T1H,
    T2H,
    BadCoefficient,
    BadShape,
    HFLTable,
    a2n1_shifted,
    alexander_from_pbar,
    at_maslov_minus_one,
    delta_sequence,
    hfl_a2n1_closed,
    hfl_from_pbar,
    symmetrize,
    transform_pbar,
)
from motivic_poincare.poly import MASLOV, ONE, Q, Var, tvar

TU = {"t": tvar(0), "u": MASLOV, "q": Q}
HALF = {"t1": T1H, "t2": T2H, "u": MASLOV}

SEMIGROUPS = [[2, 3], [3, 5], [2, 5], [2, 7], [2, 9], [3, 4], [3, 7], [4, 5], [4, 6, 13]]


def p(text):
    return parse(text, TU)


def test_torus_3_5_table():
    delta = p("1-t+t^3-t^4+t^5-t^7+t^8")
    table = delta_sequence(delta)
    assert table.entries == ((-4, -8), (-3, -7), (-1, -4), (0, -3), (1, -2), (3, -1), (4, 0))
    assert table.to_poly() == p(G.TORUS_3_5_HFL)


def test_unknot_table():
    assert delta_sequence(ONE).entries == ((0, 0),)


def test_trefoil_table():
    table = delta_sequence(p("1-t+t^2"))
    assert table.entries == ((-1, -2), (0, -1), (1, 0))


def test_bad_shapes():
    with pytest.raises(BadShape):
        delta_sequence(p("1-2*t+t^2"))
    with pytest.raises(BadShape):
        delta_sequence(p("1+t+t^2"))
    with pytest.raises(BadShape):
        delta_sequence(p("1-t"))
    with pytest.raises(BadShape):
        delta_sequence(p("1-q*t+t^2"))
    with pytest.raises(BadShape):
        symmetrize(p("0"))


def test_transform_examples():
    assert transform_pbar(p(G.TORUS_3_5)) == p(G.TORUS_3_5_TRANSFORMED)
    assert transform_pbar(ONE) == ONE
    assert transform_pbar(p("1-q*t+q*t^2")) == p("1+u^-1*t+u^-2*t^2")


def test_transform_rejects_coefficients():
    with pytest.raises(BadCoefficient):
        transform_pbar(p("1-2*q*t"))


def test_hfl_from_pbar_examples():
    assert hfl_from_pbar(p(G.TORUS_3_5)) == p(G.TORUS_3_5_HFL)
    assert hfl_from_pbar(ONE) == ONE
    assert hfl_from_pbar(p("1-q*t+q*t^2")) == p("t+u^-1+u^-2*t^-1")


@pytest.mark.parametrize("gens", SEMIGROUPS)
def test_two_derivations_agree(gens):
    pbar = semigroup_series(gens).pbar
    table = delta_sequence(alexander_from_pbar(pbar))
    assert hfl_from_pbar(pbar) == table.to_poly()


@pytest.mark.parametrize("gens", SEMIGROUPS)
def test_table_invariants(gens):
    delta = alexander_from_pbar(semigroup_series(gens).pbar)
    table = delta_sequence(delta)
    ns = [n for n, _ in table.entries]
    ds = [d for _, d in table.entries]
    assert ns == sorted(set(ns)) and ns == [-n for n in reversed(ns)]
    assert ds[-1] == 0
    assert all((a - b) % 2 for a, b in zip(ds, ds[1:]))
    assert table.euler_characteristic() == symmetrize(delta)
    # u = -1 recovers t^(-deg/2) * Delta
    assert at_maslov_minus_one(table.to_poly()) == symmetrize(delta)


def test_euler_characteristic_of_table():
    table = HFLTable(((-1, -2), (0, -1), (1, 0)))
    assert table.euler_characteristic() == p("t^-1 - 1 + t")


# -- A_{2n-1} ------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_a2n1_simplified_form(n):
    assert hfl_a2n1_closed(n) == parse(G.a2n1_hfl_simplified(n), HALF)


def test_a2n1_n2_expanded():
    expected = parse(
        "t1*t2 + u^-1*(t1+t2) + u^-2 + u^-4*(t1*t2)^-1 + (t1+t2)*u^-3*(t1*t2)^-1 + u^-2",
        HALF,
    )
    assert hfl_a2n1_closed(2) == expected


def test_a2n1_n1_has_no_tail_blocks():
    expected = parse("t1^(1/2)*t2^(1/2) + (u^-1*(t1+t2) + u^-2)*t1^(-1/2)*t2^(-1/2)", HALF)
    assert hfl_a2n1_closed(1) == expected
    with pytest.raises(ValueError):
        hfl_a2n1_closed(0)


@pytest.mark.parametrize("n", range(1, 6))
def test_a2n1_shifted_bracket(n):
    shifted = a2n1_shifted(hfl_a2n1_closed(n), n)
    # the two brackets are joined by a plus sign; the minus-sign version is not an identity
    assert shifted == parse(G.a2n1_hfl_shifted(n, "+"), HALF)
    assert shifted != parse(G.a2n1_hfl_shifted(n, "-"), HALF)


def test_half_variables_render_as_halves():
    names = {T1H: "t1", T2H: "t2", MASLOV: "u"}
    assert "t1^(1/2)" in hfl_a2n1_closed(1).render(names)
    assert T1H == Var(T1H.kind, 0, True)
