from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import P, algebra, hauser, polys, ring
from reeskit.blowup import Divisor, ResolutionState
from reeskit.elimination import monic_form
from reeskit.errors import NotMonomialCase
from reeskit.monomial import (
    MonomialAlgebra,
    alpha_exponent,
    condition_C,
    divisor_exponents,
    divisor_slope,
    lift_resolution,
    resolve_monomial,
    slope_at_point,
    strong_exponent,
    strong_monomial_algebra,
)
from reeskit.poly import INF
from reeskit.rees import ReesAlgebra, contact_membership, diff_closure, relative_diff_closure
from test_blowup import _run_until

PROPS = settings(max_examples=200, deadline=None)


def _G1():
    return _run_until("hauser", "G1")


def test_slope_of_hauser_at_origin():
    mf = monic_form(P("Z^2+Y^7+X^4*Y", ring()), "Z")
    assert slope_at_point(mf) == Fraction(5, 2)


def test_divisor_slope_after_first_blowup():
    s = _G1()
    _, mf = s.monic()
    assert divisor_slope(mf, s.elimination(), "Y") == Fraction(3, 2)


def test_slope_of_pure_power_is_infinite():
    mf = monic_form(P("Z^2", ring()), "Z")
    assert divisor_slope(mf, None, "Y") == INF
    assert slope_at_point(mf) == INF


def test_condition_C():
    s = _G1()
    assert condition_C(s.monic()[1], "Y")
    T = ring("T,X,Y,Z")
    assert condition_C(monic_form(P("T^2+X*Y*Z", T), "T"), "X")
    assert not condition_C(monic_form(P("Z^2+Z*X+Y", ring()), "Z"), "Y")


def test_strong_exponents_by_chart():
    s = _G1()
    assert strong_exponent(s.algebra, "Z", "Y", 2) == 3
    s3 = _run_until("hauser", "G3")
    assert strong_exponent(s3.algebra, "Z", "Y", 2) == 6
    t1 = _run_until("txyz", "G1")
    assert strong_exponent(t1.algebra, "T", "X", 2) == 1


def test_strong_exponent_zero_without_condition_C():
    R = ring("Z,X,Y", 3)
    G = algebra(R, ("Z^3+Y*Z+X^3", 3))
    # at Y = 0 the form is Z^3 + X^3 = (Z+X)^3, but Z^3+Y*Z+X^3 at X=0 is not a cube
    assert strong_exponent(G, "Z", "X", 3) == 0


def test_alpha_exponent():
    s = _G1()
    assert alpha_exponent(s.elimination(), "Y", 2) == 6
    assert alpha_exponent(None, "Y", 2) is None


def test_exponent_at_a_translated_divisor_needs_cleaning():
    s = _run_until("hauser", "G4")
    h2 = s.chart.by_birth(2)
    assert h2.value == 1
    h, alpha, slope = divisor_exponents(s, h2)
    assert (h, alpha) == (3, 8)


def test_all_four_exponents():
    s = _run_until("hauser", "h")
    assert {d.name: d.h for d in s.chart.divisors} == {"H2": 3, "H3": 6, "H4": 7}
    t = _run_until("txyz", "h")
    assert {d.name: d.h for d in t.chart.divisors} == {"H1": 1, "H2": 1}


def test_monomial_algebra_hauser_chart_4():
    s = _run_until("hauser", "h")
    M = strong_monomial_algebra(s)
    assert str(M) == "H2^3*H3^6*H4^7 W^2"
    assert any("unit factor" in n for n in M.notes)
    assert "H1" not in M.exponents()


def test_monomial_algebra_txyz_chart_2():
    M = strong_monomial_algebra(_run_until("txyz", "h"))
    assert M.exponents() == {"H1": 1, "H2": 1} and M.s == 2


def test_monomial_algebra_of_pure_power():
    R = ring()
    s = ResolutionState.start(diff_closure(algebra(R, ("Z^2", 2))), "Z")
    M = strong_monomial_algebra(s)
    assert M.entries == () and M.s == 2 and str(M) == "1 W^2"


def test_non_monomial_elimination_is_rejected():
    s = ResolutionState.start(hauser(), "Z")
    with pytest.raises(NotMonomialCase):
        strong_monomial_algebra(s)


def _M(*pairs, s=2):
    return MonomialAlgebra(tuple((Divisor(v, b), h) for b, (v, h) in enumerate(pairs, start=1)), s)


def test_resolve_examples():
    assert [c.vars for c in resolve_monomial(_M(("X", 3), ("Y", 6)))] == [("X",), ("Y",), ("Y",), ("Y",)]
    centers = resolve_monomial(_M(("X", 1), ("Y", 1)))
    assert [(c.vars, c.chart) for c in centers] == [(("X", "Y"), "X")]
    assert resolve_monomial(_M(("X", 1))) == []


def test_resolve_prefers_older_divisors():
    centers = resolve_monomial(_M(("Y", 2), ("X", 2)))
    assert [c.vars for c in centers] == [("Y",), ("X",)]


def test_lift_resolution_hauser():
    s = _run_until("hauser", "f4")
    M = strong_monomial_algebra(s, local=True)
    centers = resolve_monomial(M, s.chart.blowups + 1)
    assert [c.vars for c in centers] == [("X",), ("Y",), ("Y",), ("Y",)]
    s2 = lift_resolution(s, centers)
    assert s2.monic()[1].poly() == P("Z^2+X*(1+X)^6", s2.ring)
    assert not s2.notes


def test_lift_resolution_empty_is_identity():
    s = _run_until("hauser", "f4")
    assert lift_resolution(s, []) is s


def test_lift_resolution_txyz():
    s = _run_until("txyz", "M")
    s3 = lift_resolution(s, resolve_monomial(s.monomial, 3))
    assert {(str(w.g), w.n) for w in s3.algebra.gens} == {("T^2 + Y*Z", 2), ("X*Y", 1)}


# --- properties -------------------------------------------------------------


@st.composite
def monomial_algebras(draw):
    k = draw(st.integers(0, 4))
    s = draw(st.integers(1, 5))
    names = draw(st.lists(st.sampled_from("XYUV"), min_size=k, max_size=k))
    entries = []
    for b, v in enumerate(names, start=1):
        value = draw(st.sampled_from([0, 0, 1]))
        entries.append((Divisor(v, b, value), draw(st.integers(0, 12))))
    return MonomialAlgebra(tuple(entries), s)


@PROPS
@given(monomial_algebras())
def test_resolve_terminates_within_bound(M):
    total = sum(h for _, h in M.entries)
    centers = resolve_monomial(M)
    assert len(centers) <= total
    for c in centers:
        assert len(set(c.vars)) == len(c.vars) and c.chart == c.vars[0]


@st.composite
def contact_algebras(draw):
    R = ring("Z,X,Y", 2)
    low = R.without("Z")
    a2 = draw(polys(low, 6, 4, min_degree=2)).to_ring(R)
    a1 = draw(st.sampled_from([R.zero(), draw(polys(low, 3, 2, min_degree=1)).to_ring(R)]))
    g = R.gen("Z") ** 2 + a1 * R.gen("Z") + a2
    return relative_diff_closure(ReesAlgebra.from_pairs(R, [(g, 2)]), "Z")


@PROPS
@given(contact_algebras(), st.integers(1, 4))
def test_strong_exponent_is_maximal(G, s):
    h = strong_exponent(G, "Z", "Y", s)
    if h == 0:
        return
    assert contact_membership(G, "Z", {"Y": h}, s)
    bound = s * max(wg.g.degree() for wg in G.gens) + 1
    if h <= bound:
        assert not contact_membership(G, "Z", {"Y": h + 1}, s)


@PROPS
@given(contact_algebras(), st.integers(1, 4), st.integers(0, 6))
def test_alpha_caps_the_exponent(G, s, cap):
    assert strong_exponent(G, "Z", "Y", s, cap) <= cap
    assert strong_exponent(G, "Z", "Y", s, cap) == min(cap, strong_exponent(G, "Z", "Y", s))
