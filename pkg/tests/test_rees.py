from dataclasses import replace

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import P, algebra, gens_of, hauser, polys, ring, rings, txyz
from reeskit.errors import InvalidDivisor, RingMismatch
from reeskit.field import GF
from reeskit.rees import (
    ABSOLUTE,
    NONE,
    RELATIVE,
    ReesAlgebra,
    WeightedGenerator,
    contact_membership,
    diff_closure,
    in_sing,
    prune_redundant,
    relative_diff_closure,
    same_algebra,
    sing_ideal,
    sing_points,
)

PROPS = settings(max_examples=200, deadline=None)


def test_hauser_closure():
    assert gens_of(hauser()) == {("Y^7 + X^4*Y + Z^2", 2), ("Y^6 + X^4", 1)}
    assert hauser().closure == ABSOLUTE


def test_txyz_closure():
    assert gens_of(txyz()) == {("X*Y*Z + T^2", 2), ("X*Y", 1), ("X*Z", 1), ("Y*Z", 1)}


def test_closure_of_weight_one_is_itself():
    R = ring("x")
    G = algebra(R, ("x", 1))
    assert diff_closure(G).pairs() == G.pairs()


def test_relative_closure_char_two_vanishing():
    R = ring()
    G = algebra(R, ("Z^2+Y^7+X^4*Y", 2))
    assert relative_diff_closure(G, "Z").pairs() == G.pairs()
    assert relative_diff_closure(G, "Z").closure == RELATIVE


def test_relative_closure_char_three_adds_linear_term():
    R = ring("Z,X,Y", 3)
    G = algebra(R, ("Z^2+X*Z+Y", 2))
    got = relative_diff_closure(G, "Z")
    assert same_algebra(got, algebra(R, ("Z^2+X*Z+Y", 2), ("2*Z+X", 1)))


def test_relative_closure_ignores_other_variables():
    R = ring("Z,Y")
    G = algebra(R, ("Y", 1))
    assert relative_diff_closure(G, "Z").pairs() == G.pairs()


def test_hauser_sing_is_the_cusp_over_f4():
    F = GF(2, 2)
    cusp = {(0, F.pow(t, 3), F.pow(t, 2)) for t in F.elements()}
    assert sing_points(hauser(), F) == cusp
    assert all(in_sing(hauser(), pt, F) for pt in cusp)


def test_txyz_sing_is_three_axes_over_f4():
    F = GF(2, 2)
    axes = set()
    for t in F.elements():
        axes |= {(0, t, 0, 0), (0, 0, t, 0), (0, 0, 0, t)}
    assert sing_points(txyz(), F) == axes
    assert len(axes) == 10


def test_sing_ideal_of_linear():
    R = ring("z")
    assert sing_ideal(algebra(R, ("z", 1))).gens == (R.gen("z"),)


def test_prune_examples():
    R = ring("X,Y,Z")
    assert gens_of(prune_redundant(algebra(R, ("X*Y*Z", 1), ("X*Y", 1)))) == {("X*Y", 1)}
    f = algebra(R, ("X^2+Y^3", 2))
    assert prune_redundant(f).pairs() == f.pairs()
    assert gens_of(prune_redundant(algebra(R, ("X^2", 2), ("X", 1)))) == {("X", 1)}


def test_prune_keeps_heavier_generator_for_equal_polynomials():
    R = ring("X")
    # X W^2 is not in the algebra of X W (that would need X^2), but X W is in that of X W^2
    assert gens_of(prune_redundant(algebra(R, ("X", 2), ("X", 1)))) == {("X", 2)}


def test_generators_are_normalized():
    R = ring("X,Y", 3)
    G = algebra(R, ("2*X+Y", 1), ("X+2*Y", 1), ("0", 3))
    assert gens_of(G) == {("X + 2*Y", 1)}
    with pytest.raises(ValueError):
        WeightedGenerator(R.gen("X"), 0)
    with pytest.raises(RingMismatch):
        ReesAlgebra(R, (WeightedGenerator(ring("X").gen("X"), 1),))


def test_contact_examples():
    R = ring()
    G1 = algebra(R, ("Z^2+Y^5+X^4*Y^3", 2), ("Y^5+X^4*Y^3", 1))
    assert contact_membership(G1, "Z", {"Y": 3}, 2)
    assert not contact_membership(G1, "Z", {"Y": 4}, 2)
    Zonly = algebra(R, ("Z^2", 2))
    assert contact_membership(Zonly, "Z", {"Y": 100, "X": 7}, 1)
    with pytest.raises(InvalidDivisor):
        contact_membership(G1, "Z", {"Z": 1}, 2)


# --- properties -------------------------------------------------------------


@st.composite
def small_algebras(draw, max_vars=3, max_weight=3):
    R = draw(rings(1, max_vars))
    k = draw(st.integers(1, 3))
    gens = []
    for _ in range(k):
        g = draw(polys(R, 3, 4))
        if not g.is_zero():
            gens.append((g, draw(st.integers(1, max_weight))))
    assume(gens)
    return ReesAlgebra.from_pairs(R, gens)


@PROPS
@given(small_algebras())
def test_diff_closure_is_idempotent(G):
    C = diff_closure(G)
    again = diff_closure(replace(C, closure=NONE))
    assert same_algebra(again, C)


@PROPS
@given(small_algebras(max_vars=3, max_weight=3))
def test_sing_equals_sing_of_closure(G):
    F = G.ring.field
    assume(F.q ** G.ring.nvars <= 125)
    direct = {pt for pt in F.points(G.ring.nvars) if in_sing(G, pt)}
    assert sing_points(G) == direct
    assert sing_points(diff_closure(G)) == direct


@PROPS
@given(small_algebras(max_vars=3), st.data())
def test_prune_preserves_sing(G, data):
    F = G.ring.field
    assume(F.q ** G.ring.nvars <= 125)
    assert sing_points(prune_redundant(G)) == sing_points(G)


@st.composite
def contact_case(draw):
    R = ring("Z,X,Y", draw(st.sampled_from([2, 3])))
    n = draw(st.integers(1, 3))
    g = R.gen("Z") ** n
    for j in range(n):
        g = g + draw(polys(R.without("Z"), 3, 3)).to_ring(R) * R.gen("Z") ** j
    G = ReesAlgebra.from_pairs(R, [(g, n)])
    return G, n


@PROPS
@given(contact_case(), st.integers(0, 8), st.integers(0, 8), st.integers(1, 4))
def test_contact_monotone_in_h_and_s(case, h1, h2, s):
    G, _ = case
    lo, hi = sorted((h1, h2))
    if contact_membership(G, "Z", {"Y": hi}, s):
        assert contact_membership(G, "Z", {"Y": lo}, s)
        assert contact_membership(G, "Z", {"Y": hi}, s + 1)
    if contact_membership(G, "Z", {"Y": hi, "X": hi}, s):
        assert contact_membership(G, "Z", {"Y": hi}, s)
