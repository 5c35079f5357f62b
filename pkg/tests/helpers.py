"""Shared rings, builders and hypothesis strategies."""

from __future__ import annotations

from hypothesis import strategies as st

from reeskit.field import GF
from reeskit.parse import parse_poly
from reeskit.poly import Poly, RingCtx
from reeskit.rees import ReesAlgebra, diff_closure

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]


def ring(vars="Z,X,Y", p=2, k=1) -> RingCtx:
    return RingCtx(GF(p, k), tuple(vars.split(",")))


def P(text: str, R: RingCtx) -> Poly:
    return parse_poly(text, R)


def algebra(R: RingCtx, *pairs) -> ReesAlgebra:
    return ReesAlgebra.from_pairs(R, [(P(t, R), n) for t, n in pairs])


def hauser() -> ReesAlgebra:
    return diff_closure(algebra(ring(), ("Z^2+Y^7+X^4*Y", 2)))


def txyz() -> ReesAlgebra:
    return diff_closure(algebra(ring("T,X,Y,Z"), ("T^2+X*Y*Z", 2)))


def gens_of(G: ReesAlgebra) -> set[tuple[str, int]]:
    return {(str(wg.g), wg.n) for wg in G.gens}


@st.composite
def fields(draw):
    return GF(*draw(st.sampled_from(SMALL_FIELDS)))


@st.composite
def polys(draw, R: RingCtx, max_exp: int = 3, max_terms: int = 5, min_degree: int = 0):
    n = R.nvars
    exps = draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * n), max_size=max_terms))
    q = R.field.q
    terms = {}
    for e in exps:
        if sum(e) < min_degree:
            continue
        terms[e] = draw(st.integers(1, q - 1))
    return Poly(R, terms)


@st.composite
def rings(draw, min_vars: int = 1, max_vars: int = 3, field=None):
    F = field or draw(fields())
    n = draw(st.integers(min_vars, max_vars))
    return RingCtx(F, tuple("XYZW"[:n]) if n <= 4 else tuple(f"x{i}" for i in range(n)))


@st.composite
def ring_and_poly(draw, min_vars=1, max_vars=3, max_exp=3, max_terms=5):
    R = draw(rings(min_vars, max_vars))
    return R, draw(polys(R, max_exp, max_terms))


# criterion number -> (title, passed, reason); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}
