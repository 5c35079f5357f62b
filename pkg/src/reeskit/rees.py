"""Weighted Rees algebras given by generators ``g W^n``.

Algebras are compared generator-wise: generators are normalized to leading
coefficient 1, deduplicated and sorted on construction, and the producing
operations prune redundant generators. Integral closure is never computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import InvalidDivisor, RingMismatch
from .field import FieldCtx
from .poly import (
    Poly,
    RingCtx,
    all_points,
    divides,
    hasse_derivative,
    multi_indices,
    order_at_point,
)

NONE, RELATIVE, ABSOLUTE = "none", "relative", "absolute"


@dataclass(frozen=True)
class WeightedGenerator:
    g: Poly
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"weight must be >= 1, got {self.n}")
        if self.g.is_zero():
            raise ValueError("a generator cannot be zero")

    def sort_key(self):
        return (-self.n, self.g.sort_key())

    def __str__(self):
        w = "W" if self.n == 1 else f"W^{self.n}"
        return f"({self.g}){w}"


def _normalize(gens: Iterable[WeightedGenerator]) -> tuple[WeightedGenerator, ...]:
    seen = {}
    for wg in gens:
        if wg.g.is_zero():
            continue
        wg = WeightedGenerator(wg.g.monic(), wg.n)
        seen[(wg.g, wg.n)] = wg
    return tuple(sorted(seen.values(), key=WeightedGenerator.sort_key))


@dataclass(frozen=True)
class ReesAlgebra:
    ring: RingCtx
    gens: tuple[WeightedGenerator, ...] = ()
    closure: str = NONE
    transversal: str | None = None

    def __post_init__(self):
        gens = tuple(
            wg if isinstance(wg, WeightedGenerator) else WeightedGenerator(*wg)
            for wg in self.gens
            if not (wg[0] if isinstance(wg, tuple) else wg.g).is_zero()
        )
        for wg in gens:
            if wg.g.ring != self.ring:
                raise RingMismatch(f"generator {wg} is not in {self.ring!r}")
        object.__setattr__(self, "gens", _normalize(gens))
        if self.closure not in (NONE, RELATIVE, ABSOLUTE):
            raise ValueError(f"unknown closure flag {self.closure!r}")
        if self.transversal is not None:
            self.ring.index(self.transversal)
        if self.closure == RELATIVE and self.transversal is None:
            raise ValueError("relative closure needs a transversal variable")

    @classmethod
    def from_pairs(cls, ring: RingCtx, pairs: Iterable[tuple[Poly, int]], **kw) -> ReesAlgebra:
        return cls(ring, tuple(WeightedGenerator(g, n) for g, n in pairs if not g.is_zero()), **kw)

    def with_gens(self, gens: Iterable[WeightedGenerator], **kw) -> ReesAlgebra:
        return replace(self, gens=tuple(gens), **kw)

    def pairs(self) -> set[tuple[Poly, int]]:
        return {(wg.g, wg.n) for wg in self.gens}

    def is_zero(self) -> bool:
        return not self.gens

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __str__(self):
        if not self.gens:
            return "O[0]"
        return "O[" + ", ".join(str(wg) for wg in self.gens) + "]"


@dataclass(frozen=True)
class SingIdeal:
    ring: RingCtx
    gens: tuple[Poly, ...] = field(default_factory=tuple)

    def zero_set(self, F: FieldCtx | None = None) -> set[tuple[int, ...]]:
        F = F or self.ring.field
        gens = [g.to_ring(self.ring.over(F)) if F != self.ring.field else g for g in self.gens]
        return {pt for pt in all_points(F, self.ring.nvars) if all(g.evaluate(pt, F) == 0 for g in gens)}

    def contains_point(self, pt: Sequence[int], F: FieldCtx | None = None) -> bool:
        F = F or self.ring.field
        return all(g.evaluate(pt, F) == 0 for g in self.gens)


# ---------------------------------------------------------------------------


def _closure_gens(G: ReesAlgebra, indices_for) -> list[WeightedGenerator]:
    out = list(G.gens)
    for wg in G.gens:
        for alpha in indices_for(wg.n - 1):
            if not any(alpha):
                continue
            d = hasse_derivative(wg.g, alpha)
            if not d.is_zero():
                out.append(WeightedGenerator(d, wg.n - sum(alpha)))
    return out


def diff_closure(G: ReesAlgebra) -> ReesAlgebra:
    """Add ``Delta^a(g) W^(n-|a|)`` for every generator and every ``|a| < n``."""
    if G.closure == ABSOLUTE:
        return G
    n = G.ring.nvars
    gens = _closure_gens(G, lambda m: multi_indices(n, m))
    return prune_redundant(replace(G, gens=tuple(gens), closure=ABSOLUTE))


def relative_diff_closure(G: ReesAlgebra, z: str) -> ReesAlgebra:
    """Closure under the Hasse derivatives in the single variable ``z``."""
    i = G.ring.index(z)
    n = G.ring.nvars

    def z_only(m):
        for e in range(m + 1):
            alpha = [0] * n
            alpha[i] = e
            yield tuple(alpha)

    if G.closure == ABSOLUTE:
        return replace(G, transversal=z)
    gens = _closure_gens(G, z_only)
    return prune_redundant(replace(G, gens=tuple(gens), closure=RELATIVE, transversal=z))


def sing_ideal(G: ReesAlgebra) -> SingIdeal:
    """Generators whose common zero set is Sing(G): all ``Delta^a(g)`` with ``|a| <= n-1``."""
    n = G.ring.nvars
    polys: dict[Poly, None] = {}
    for wg in G.gens:
        for alpha in multi_indices(n, wg.n - 1):
            d = hasse_derivative(wg.g, alpha)
            if not d.is_zero():
                polys[d.monic()] = None
    return SingIdeal(G.ring, tuple(sorted(polys, key=Poly.sort_key)))


def in_sing(G: ReesAlgebra, pt: Sequence[int], F: FieldCtx | None = None) -> bool:
    """Direct membership test: every generator has order >= its weight at ``pt``."""
    return all(order_at_point(wg.g, pt, F) >= wg.n for wg in G.gens)


def sing_points(G: ReesAlgebra, F: FieldCtx | None = None) -> set[tuple[int, ...]]:
    return sing_ideal(G).zero_set(F)


# ---------------------------------------------------------------------------


def _redundant(a: WeightedGenerator, b: WeightedGenerator) -> bool:
    """Whether ``a`` lies in the algebra generated by ``b``: ``a.g = h * b.g^k`` with ``k*b.n >= a.n``."""
    k = -(-a.n // b.n)
    if b.g.is_constant():
        return True
    if b.g.degree() * k > a.g.degree():
        return False
    return divides(b.g**k, a.g)


def prune_redundant(G: ReesAlgebra) -> ReesAlgebra:
    """Drop generators that are multiples of a power of another generator.

    ``g W^n`` goes when ``g = h * g'^k`` for another generator ``g' W^n'`` with
    ``k * n' >= n``. Mutually redundant pairs keep the first in canonical order.
    """
    gens = G.gens
    keep = []
    for i, a in enumerate(gens):
        drop = False
        for j, b in enumerate(gens):
            if i == j:
                continue
            if _redundant(a, b) and (j < i or not _redundant(b, a)):
                drop = True
                break
        if not drop:
            keep.append(a)
    return replace(G, gens=tuple(keep))


def same_algebra(G: ReesAlgebra, H: ReesAlgebra) -> bool:
    """Generator-set equality after pruning (up to nonzero scalars)."""
    return G.ring == H.ring and prune_redundant(G).pairs() == prune_redundant(H).pairs()


# ---------------------------------------------------------------------------


def contact_membership(G: ReesAlgebra, z: str, monomial: Mapping[str, int], s: int) -> bool:
    """Whether ``G`` lies in ``<z>W (.) (prod y_i^h_i) W^s``.

    Per generator ``g W^n`` with ``g = sum_j c_j z^j``: each ``j < n`` and each
    divisor variable needs ``s * ord_y(c_j) >= (n - j) * h``.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    for y in monomial:
        if y == z:
            raise InvalidDivisor(f"divisor variable {y} equals the transversal variable")
        G.ring.index(y)
    for wg in G.gens:
        for j, c in wg.g.coefficients_in(z).items():
            if j >= wg.n:
                continue
            for y, h in monomial.items():
                if h and s * _ord_var(c, y) < (wg.n - j) * h:
                    return False
    return True


def _ord_var(f: Poly, y: str):
    i = f.ring.index(y)
    return min(e[i] for e in f.terms)


def elimination_ring(ring: RingCtx, z: str) -> RingCtx:
    return ring.without(z)
