"""Strong monomial contact: slopes, exponents h_i, the monomial algebra and its resolution."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .blowup import Divisor, ResolutionState, lift_state, substitute_state
from .elimination import MonicForm, clean_pe_powers, monic_generator
from .errors import NonTerminating, NotMonomialCase, NotPePower, NotPermissible
from .poly import INF, Poly, divide_by_monomial, is_pe_power, monomial_content, order_at_point, substitute
from .rees import ABSOLUTE, ReesAlgebra, contact_membership, relative_diff_closure

__all__ = [
    "MonomialAlgebra",
    "CombinatorialCenter",
    "divisor_slope",
    "slope_at_point",
    "condition_C",
    "clean_pe_powers",
    "alpha_exponent",
    "strong_exponent",
    "localize",
    "divisor_exponents",
    "freeze_exponents",
    "strong_monomial_algebra",
    "resolve_monomial",
    "lift_resolution",
]


def _ord(f: Poly, y: str):
    if f.is_zero():
        return INF
    i = f.ring.index(y)
    return min(e[i] for e in f.terms)


def divisor_slope(mf: MonicForm, elim: ReesAlgebra | None, y: str):
    """``min(ord_y(a_k)/k, ord_y(g)/m)`` over the monic coefficients and elimination generators."""
    if y == mf.z:
        raise ValueError("slope along the transversal variable")
    vals = [Fraction(_ord(a, y), k) for k, a in enumerate(mf.coeffs, start=1) if not a.is_zero()]
    if elim is not None:
        vals += [Fraction(_ord(wg.g, y), wg.n) for wg in elim.gens]
    return min(vals, default=INF)


def slope_at_point(mf: MonicForm, pt: Sequence[int] | None = None):
    """``min_k ord_pt(a_k)/k``: the slope of the monic form at a closed point."""
    vals = [Fraction(order_at_point(a, pt), k) for k, a in enumerate(mf.coeffs, start=1) if not a.is_zero()]
    return min(vals, default=INF)


def condition_C(mf: MonicForm, y: str) -> bool:
    """The restriction of the monic polynomial to ``y = 0`` is ``(z - alpha)^(p^e)`` with ``p^e = n``."""
    r = substitute(mf.poly(), {y: mf.ring.zero()}, mf.ring)
    pw = is_pe_power(r)
    return pw is not None and mf.ring.field.p ** pw[1] == mf.n


def alpha_exponent(elim: ReesAlgebra | None, y: str, s: int) -> int | None:
    """Exponent of ``I(H)`` in the elimination algebra rescaled to weight s (None for the zero algebra)."""
    if elim is None or elim.is_zero():
        return None
    vals = [s * _ord(wg.g, y) // wg.n for wg in elim.gens]
    return min(vals)


def strong_exponent(G: ReesAlgebra, z: str, y: str, s: int, alpha_cap: int | None = None) -> int:
    """Largest h with ``G`` inside ``<z>W (.) y^h W^s``, capped by alpha; 0 unless condition (C) holds."""
    if G.closure != ABSOLUTE:
        G = relative_diff_closure(G, z)
    found = monic_generator(G, z)
    if found is None:
        raise NotPePower("no monic generator in the transversal variable")
    _, mf = found
    if not condition_C(mf, y):
        return 0
    bound = s * max(wg.g.degree() for wg in G.gens) + 1
    h = 0
    while h <= bound and (alpha_cap is None or h < alpha_cap) and contact_membership(G, z, {y: h + 1}, s):
        h += 1
    return h


def localize(state: ResolutionState, d: Divisor) -> ResolutionState:
    """Move ``d`` to ``{var = 0}`` and clean the monic generator there."""
    if d.value != 0:
        R = state.ring
        state = substitute_state(state, {d.var: R.gen(d.var) + R.const(d.value)},
                                 divisors=[replace(x, value=R.field.sub(x.value, d.value)) if x.var == d.var else x
                                           for x in state.chart.divisors])
    found = state.monic()
    if found is None:
        raise NotPePower("no monic generator in the transversal variable")
    _, t = clean_pe_powers(found[1])
    if not t.is_zero():
        z = state.z
        state = substitute_state(state, {z: state.ring.gen(z) - t})
    return state


def divisor_exponents(state: ResolutionState, d: Divisor) -> tuple[int, int | None, object]:
    """``(h, alpha, slope)`` for one divisor, computed after localizing and cleaning at it."""
    s = state.weight()
    loc = localize(state, d)
    elim = loc.elimination()
    alpha = alpha_exponent(elim, d.var, s)
    _, mf = loc.monic()
    h = strong_exponent(loc.algebra, loc.z, d.var, s, alpha)
    return h, alpha, divisor_slope(mf, elim, d.var)


def freeze_exponents(state: ResolutionState) -> ResolutionState:
    """Compute h and alpha for every divisor that has no frozen h yet."""
    divisors = []
    for d in state.chart.divisors:
        if d.h is None:
            h, alpha, _ = divisor_exponents(state, d)
            d = replace(d, h=h, alpha=alpha)
        divisors.append(d)
    return replace(state, chart=replace(state.chart, divisors=tuple(divisors)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialAlgebra:
    """``prod I(H_i)^h_i W^s``."""

    entries: tuple[tuple[Divisor, int], ...]
    s: int
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be >= 1")
        if any(h < 0 for _, h in self.entries):
            raise ValueError("exponents must be >= 0")

    def exponents(self) -> dict[str, int]:
        return {d.name: h for d, h in self.entries}

    def as_monomial(self) -> dict[str, int]:
        """``{var: h}`` for the divisors through the chart origin."""
        return {d.var: h for d, h in self.entries if d.value == 0 and h}

    def __str__(self):
        factors = [f"{d.name}^{h}" if h != 1 else d.name for d, h in self.entries if h]
        return f"{'*'.join(factors) or '1'} W^{self.s}"


def _check_monomial_case(state: ResolutionState) -> list[str]:
    elim = state.elimination()
    notes = []
    divisor_vars = {d.var for d in state.chart.divisors}
    for wg in elim.gens if elim is not None else ():
        content = monomial_content(wg.g)
        unit = divide_by_monomial(wg.g, content)
        used = {v for v, a in zip(wg.g.ring.vars, content) if a}
        if unit.constant_term() == 0 or not used <= divisor_vars:
            raise NotMonomialCase(f"elimination generator {wg} is not a monomial in the divisors times a unit")
        if not unit.is_constant():
            notes.append(f"unit factor ({unit}) dropped from {wg}")
    return notes


def strong_monomial_algebra(state: ResolutionState, local: bool = False) -> MonomialAlgebra:
    """The strong monomial algebra of the state: frozen h_i where present, computed otherwise.

    With ``local`` only divisors through the chart origin are kept.
    """
    notes = _check_monomial_case(state)
    s = state.weight()
    entries = []
    for d in sorted(state.chart.divisors, key=lambda x: x.birth):
        if local and d.value != 0:
            continue
        h = d.h
        if h is None:
            h, alpha, _ = divisor_exponents(state, d)
            d = replace(d, h=h, alpha=alpha)
        entries.append((d, h))
    return MonomialAlgebra(tuple(entries), s, tuple(notes))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CombinatorialCenter:
    vars: tuple[str, ...]
    births: tuple[int, ...]
    chart: str

    def __str__(self):
        return "<" + ",".join(self.vars) + ">"


def _intersect(ds) -> bool:
    return len({d.var for d in ds}) == len(ds)


def _measure(entries, s):
    total = sum(d.h for d in entries)
    count = sum(
        1
        for k in range(1, len(entries) + 1)
        for c in combinations(entries, k)
        if _intersect(c) and sum(d.h for d in c) >= s
    )
    return total, count


def resolve_monomial(M: MonomialAlgebra, next_birth: int | None = None) -> list[CombinatorialCenter]:
    """Greedy combinatorial resolution of ``M``, following the chart of the oldest divisor in each center.

    Each step blows up the smallest intersecting set of divisors whose exponents
    reach s (ties by birth order). In the chart of the oldest chosen divisor that
    divisor is replaced by the new exceptional one with exponent ``sum - s``.
    """
    entries = [replace(d, h=h) for d, h in sorted(M.entries, key=lambda t: t[0].birth)]
    if next_birth is None:
        next_birth = max((d.birth for d in entries), default=0) + 1
    s = M.s
    centers = []
    measure = _measure(entries, s)
    while True:
        chosen = None
        for k in range(1, len(entries) + 1):
            cands = [c for c in combinations(entries, k) if _intersect(c) and sum(d.h for d in c) >= s]
            if cands:
                chosen = min(cands, key=lambda c: tuple(d.birth for d in c))
                break
        if chosen is None:
            return centers
        chart = chosen[0]
        new = Divisor(chart.var, next_birth, chart.value, h=sum(d.h for d in chosen) - s)
        next_birth += 1
        centers.append(CombinatorialCenter(tuple(d.var for d in chosen), tuple(d.birth for d in chosen), chart.var))
        entries = [d for d in entries if d is not chart] + [new]
        after = _measure(entries, s)
        if not (after[0] < measure[0] and after[1] <= measure[1]):
            raise NonTerminating(f"termination measure did not drop: {measure} -> {after}")
        measure = after


def lift_resolution(state: ResolutionState, centers: Sequence[CombinatorialCenter]) -> ResolutionState:
    """Lift each combinatorial center to the unique permissible center over it and blow up.

    Exponents stay frozen: the new divisor gets ``sum(h) - s``. Contact with the
    resulting monomial algebra is re-verified after each step and violations
    are recorded as notes.
    """
    s = state.weight()
    for c in centers:
        divs = []
        for v in c.vars:
            d = state.chart.divisor_on(v, 0)
            if d is None or d.h is None:
                raise NotPermissible(f"no divisor with a frozen exponent on {v}=0 in the current chart")
            divs.append(d)
        hsum = sum(d.h for d in divs)
        state = lift_state(state, c.vars, c.chart)
        *old, new = state.chart.divisors
        new = replace(new, h=hsum - s)
        state = replace(state, chart=replace(state.chart, divisors=tuple(old) + (new,)))
        mono = {d.var: d.h for d in state.chart.divisors if d.value == 0 and d.h}
        if mono and not contact_membership(relative_diff_closure(state.algebra, state.z), state.z, mono, s):
            state = state.with_note(f"contact with the frozen monomial algebra fails after blowing up {c}")
    return state
