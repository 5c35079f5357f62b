"""Monoidal transformations at coordinate centers, one affine chart at a time.

A :class:`Chart` tracks the current coordinates, the exceptional divisors
visible in it and the substitution history back to the original ambient
space. :class:`ResolutionState` bundles a chart with the algebra living on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping, Sequence

from .elimination import clean_pe_powers, elimination_algebra, monic_generator
from .errors import NotPePower, NotPermissible
from .poly import Poly, RingCtx, exact_divide_by_power, order_along, substitute
from .rees import ABSOLUTE, NONE, RELATIVE, ReesAlgebra, WeightedGenerator, diff_closure, prune_redundant, relative_diff_closure, same_algebra


@dataclass(frozen=True)
class Divisor:
    """Exceptional hypersurface ``{var = value}`` of the current chart."""

    var: str
    birth: int
    value: int = 0
    alpha: int | None = None
    h: int | None = None

    @property
    def name(self) -> str:
        return f"H{self.birth}"

    def passes_origin(self) -> bool:
        return self.value == 0

    def __str__(self):
        eq = f"{self.var}={self.value}"
        extras = []
        if self.alpha is not None:
            extras.append(f"alpha={self.alpha}")
        if self.h is not None:
            extras.append(f"h={self.h}")
        tail = f" {' '.join(extras)}" if extras else ""
        return f"{self.name}: {eq}{tail}"


@dataclass(frozen=True)
class HistoryEntry:
    kind: str  # "close", "blowup" or "subst"
    source: RingCtx
    target: RingCtx
    images: tuple[tuple[str, Poly], ...] = ()
    divide_by: str | None = None
    center: tuple[str, ...] = ()
    mode: str = ""
    note: str = ""

    def image_map(self) -> dict[str, Poly]:
        return dict(self.images)


@dataclass(frozen=True)
class Chart:
    ring: RingCtx
    divisors: tuple[Divisor, ...] = ()
    history: tuple[HistoryEntry, ...] = ()

    @property
    def blowups(self) -> int:
        return sum(1 for h in self.history if h.kind == "blowup")

    def divisor_on(self, var: str, value: int = 0) -> Divisor | None:
        for d in self.divisors:
            if d.var == var and d.value == value:
                return d
        return None

    def by_birth(self, birth: int) -> Divisor | None:
        return next((d for d in self.divisors if d.birth == birth), None)


@dataclass(frozen=True)
class Center:
    """Coordinate center ``<vars>`` after applying ``translations`` (``var -> poly``)."""

    vars: tuple[str, ...]
    translations: tuple[tuple[str, Poly], ...] = ()

    def __str__(self):
        base = "<" + ",".join(self.vars) + ">"
        if self.translations:
            base += " after " + ", ".join(f"{v}->{p}" for v, p in self.translations)
        return base


# ---------------------------------------------------------------------------
# algebra-level operations


def is_permissible(G: ReesAlgebra, C: Center | Sequence[str]) -> bool:
    """Every generator ``g W^n`` has order ``>= n`` along the (coordinate) center."""
    if isinstance(C, Center):
        if C.translations:
            G = apply_substitution(G, dict(C.translations))
        C = C.vars
    return all(order_along(wg.g, C) >= wg.n for wg in G.gens)


def apply_substitution(G: ReesAlgebra, images: Mapping[str, Poly], target: RingCtx | None = None) -> ReesAlgebra:
    target = target or G.ring
    gens = [WeightedGenerator(substitute(wg.g, images, target), wg.n) for wg in G.gens]
    return prune_redundant(ReesAlgebra(target, tuple(gens), G.closure, G.transversal))


def _chart_images(ring: RingCtx, center: Iterable[str], chart_var: str) -> dict[str, Poly]:
    t = ring.gen(chart_var)
    return {v: ring.gen(v) * t for v in center if v != chart_var}


def blowup_algebra(G: ReesAlgebra, center: Sequence[str], chart_var: str) -> ReesAlgebra:
    """Transform of G in the ``chart_var`` chart of the blow-up at ``<center>``.

    Each generator is substituted and divided exactly by ``chart_var^n``.
    """
    if chart_var not in center:
        raise ValueError(f"chart variable {chart_var} is not in the center {tuple(center)}")
    images = _chart_images(G.ring, center, chart_var)
    gens = []
    for wg in G.gens:
        g1 = substitute(wg.g, images, G.ring)
        gens.append(WeightedGenerator(exact_divide_by_power(g1, chart_var, wg.n), wg.n))
    if G.transversal and chart_var != G.transversal and G.closure != NONE:
        closure = RELATIVE
    else:
        closure = NONE
    return prune_redundant(ReesAlgebra(G.ring, tuple(gens), closure, G.transversal))


def check_elim_commutes(G: ReesAlgebra, z: str, C: Center | Sequence[str], chart_var: str) -> bool:
    """Blowing up then eliminating agrees with eliminating then blowing up the projected center.

    The transform is closed relative to z (absolute closure is not preserved
    by blow-ups, relative closure is).
    """
    if not isinstance(C, Center):
        C = Center(tuple(C))
    if C.translations:
        G = apply_substitution(G, dict(C.translations))
    if chart_var == z:
        raise ValueError("the z-chart lies outside the domain where elimination commutes")
    if not is_permissible(G, C.vars):
        raise NotPermissible(f"center <{','.join(C.vars)}> is not contained in Sing")
    low_center = [v for v in C.vars if v != z]
    left = blowup_algebra(elimination_algebra(G, z), low_center, chart_var)
    up = blowup_algebra(G, C.vars, chart_var)
    right = elimination_algebra(relative_diff_closure(up, z), z)
    return same_algebra(left, right)


# ---------------------------------------------------------------------------
# resolution state


@dataclass(frozen=True)
class ResolutionState:
    chart: Chart
    algebra: ReesAlgebra
    z: str | None = None
    original: ReesAlgebra | None = None
    monomial: Any = None
    notes: tuple[str, ...] = ()

    @classmethod
    def start(cls, algebra: ReesAlgebra, z: str | None = None) -> ResolutionState:
        if z is not None and algebra.transversal != z:
            algebra = replace(algebra, transversal=z)
        return cls(Chart(algebra.ring), algebra, z, algebra)

    @property
    def ring(self) -> RingCtx:
        return self.chart.ring

    def elimination(self) -> ReesAlgebra | None:
        if self.z is None:
            return None
        return elimination_algebra(self.algebra, self.z)

    def monic(self):
        if self.z is None:
            return None
        return monic_generator(self.algebra, self.z)

    def weight(self) -> int:
        found = self.monic()
        if found is None:
            raise NotPePower("no monic generator in the transversal variable")
        return found[0].n

    def with_note(self, note: str) -> ResolutionState:
        return replace(self, notes=self.notes + (note,))


def close_state(state: ResolutionState, mode: str = ABSOLUTE) -> ResolutionState:
    if mode == ABSOLUTE:
        G = diff_closure(state.algebra)
    else:
        G = relative_diff_closure(state.algebra, state.z)
    entry = HistoryEntry("close", state.ring, state.ring, mode=mode)
    return replace(state, algebra=G, chart=replace(state.chart, history=state.chart.history + (entry,)))


def substitute_state(state: ResolutionState, images: Mapping[str, Poly], target: RingCtx | None = None,
                     divisors: Sequence[Divisor] | None = None, z: str | None = None, note: str = "") -> ResolutionState:
    target = target or state.ring
    G = apply_substitution(state.algebra, images, target)
    new_z = z if z is not None else state.z
    if new_z is not None:
        G = replace(G, transversal=new_z)
    entry = HistoryEntry("subst", state.ring, target, tuple(sorted(images.items())), note=note)
    chart = Chart(target, tuple(divisors) if divisors is not None else state.chart.divisors,
                  state.chart.history + (entry,))
    return replace(state, chart=chart, algebra=G, z=new_z)


def translate_var(state: ResolutionState, var: str, shift: int, rename: str | None = None) -> ResolutionState:
    """Introduce ``new = var + shift`` (so ``var -> new - shift``), optionally renaming the coordinate."""
    if var == state.z:
        raise ValueError("translate the transversal variable through cleaning instead")
    new = rename or var
    target = state.ring.renamed(var, new) if new != var else state.ring
    F = target.field
    c = F.from_int(shift) if isinstance(shift, int) else shift
    images = {var: target.gen(new) - target.const(c)}
    if new != var:
        images.update({v: target.gen(v) for v in state.ring.vars if v != var})
    divisors = []
    for d in state.chart.divisors:
        if d.var == var:
            d = replace(d, var=new, value=F.add(d.value, c))
        divisors.append(d)
    note = f"{new} = {var} + {c}" if new != var else f"{var} -> {var} - {c}"
    return substitute_state(state, images, target, divisors, note=note)


def clean_state(state: ResolutionState) -> tuple[ResolutionState, Poly]:
    """Apply the p^e-th power cleaning ``z -> z - t`` to the whole algebra."""
    found = state.monic()
    if found is None:
        raise NotPePower("no monic generator to clean")
    _, mf = found
    _, t = clean_pe_powers(mf)
    if t.is_zero():
        return state, t
    z = state.z
    images = {z: state.ring.gen(z) - t}
    return substitute_state(state, images, note=f"{z} -> {z} - ({t})"), t


def blowup_chart(G: ReesAlgebra, C: Center, chart_var: str, chart: Chart) -> tuple[Chart, ReesAlgebra]:
    """Transform ``G`` and the divisor registry into the ``chart_var`` chart of the blow-up at ``C``."""
    if C.translations:
        images = dict(C.translations)
        G = apply_substitution(G, images)
        chart = replace(chart, history=chart.history + (
            HistoryEntry("subst", chart.ring, chart.ring, tuple(sorted(images.items())), note="center translation"),))
    if chart_var not in C.vars:
        raise ValueError(f"chart variable {chart_var} is not in the center {C.vars}")
    if not is_permissible(G, C.vars):
        raise NotPermissible(f"center <{','.join(C.vars)}> is not contained in Sing")
    G1 = blowup_algebra(G, C.vars, chart_var)
    divisors = []
    notes = []
    for d in chart.divisors:
        if d.var == chart_var and d.value == 0:
            notes.append(f"{d.name} leaves the chart")
        elif d.var in C.vars and d.var != chart_var and d.value != 0:
            notes.append(f"{d.name} is not a coordinate hypersurface in this chart")
        else:
            divisors.append(d)
    birth = chart.blowups + 1
    divisors.append(Divisor(chart_var, birth))
    entry = HistoryEntry("blowup", chart.ring, chart.ring,
                         tuple(sorted(_chart_images(chart.ring, C.vars, chart_var).items())),
                         divide_by=chart_var, center=tuple(C.vars), note="; ".join(notes))
    return Chart(chart.ring, tuple(divisors), chart.history + (entry,)), G1


def blowup_state(state: ResolutionState, C: Center | Sequence[str], chart_var: str) -> ResolutionState:
    if not isinstance(C, Center):
        C = Center(tuple(C))
    chart, G1 = blowup_chart(state.algebra, C, chart_var, state.chart)
    return replace(state, chart=chart, algebra=G1)


# ---------------------------------------------------------------------------
# centers


def normalize_center(G: ReesAlgebra, z: str, C: Center | Sequence[str]) -> Center:
    """Extend a z-free coordinate center by ``z - alpha``.

    ``alpha`` is the cleaning translation of the monic generator; after it the
    restriction of the generator to the center must be ``z^(p^e)``.
    """
    low = tuple(C.vars if isinstance(C, Center) else C)
    if z in low:
        raise ValueError("the lower center must not contain z")
    found = monic_generator(G, z)
    if found is None:
        raise NotPePower("no monic generator in the transversal variable")
    _, mf = found
    cleaned, t = clean_pe_powers(mf)
    restriction = substitute(cleaned.poly(), {v: G.ring.zero() for v in low}, G.ring)
    if restriction != G.ring.gen(z) ** cleaned.n:
        raise NotPePower(f"restriction {restriction} to the center is not a p^e-th power of z - alpha")
    translations = ((z, G.ring.gen(z) - t),) if not t.is_zero() else ()
    return Center(tuple(sorted(set(low) | {z}, key=G.ring.vars.index)), translations)


def lift_center(C_low: Center | Sequence[str], G: ReesAlgebra, z: str) -> Center:
    """The unique center of G over a permissible center of its elimination algebra."""
    low = tuple(C_low.vars if isinstance(C_low, Center) else C_low)
    R = elimination_algebra(G, z)
    if not is_permissible(R, low):
        raise NotPermissible(f"<{','.join(low)}> is not permissible for the elimination algebra")
    C = normalize_center(G, z, low)
    if not is_permissible(G, C):
        raise NotPermissible(f"lifted center {C} is not permissible")
    return C


def lift_state(state: ResolutionState, low: Sequence[str], chart_var: str) -> ResolutionState:
    C = lift_center(low, state.algebra, state.z)
    if C.translations:
        z = state.z
        state = substitute_state(state, dict(C.translations), note=f"{z} -> {C.translations[0][1]}")
        C = Center(C.vars)
    return blowup_state(state, C, chart_var)


# ---------------------------------------------------------------------------


def replay(state: ResolutionState) -> ReesAlgebra:
    """Recompute the current algebra from the original one through the recorded history."""
    G = state.original
    for h in state.chart.history:
        if h.kind == "close":
            G = diff_closure(G) if h.mode == ABSOLUTE else relative_diff_closure(G, G.transversal)
        elif h.kind == "subst":
            G = apply_substitution(G, h.image_map(), h.target)
        elif h.kind == "blowup":
            G = blowup_algebra(G, h.center, h.divide_by)
    return G
