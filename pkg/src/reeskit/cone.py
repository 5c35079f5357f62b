"""Initial ideals at closed points, their differential closure, and tau.

tau is computed for cones whose differential closure reduces, after a linear
change of coordinates, to p^e-th powers of independent linear forms. That is
the normal form over a perfect field; anything else raises UnsupportedCone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotSingularPoint, UnsupportedCone
from .field import FieldCtx
from .poly import Poly, RingCtx, hasse_derivative, is_pe_power, multi_indices, substitute, translate
from .rees import ReesAlgebra


@dataclass(frozen=True)
class InitialIdeal:
    point: tuple[int, ...]
    ring: RingCtx
    gens: tuple[tuple[Poly, int], ...]

    def is_zero(self) -> bool:
        return not self.gens

    def __str__(self):
        if not self.gens:
            return "<0>"
        return "<" + ", ".join(f"{g} (wt {w})" for g, w in self.gens) + ">"


@dataclass(frozen=True)
class VertexSpace:
    forms: tuple[Poly, ...]

    @property
    def tau(self) -> int:
        return len(self.forms)


def _make_initial(point, ring, pairs) -> InitialIdeal:
    uniq = {}
    for g, w in pairs:
        if not g.is_zero():
            uniq[(g.monic(), w)] = None
    gens = tuple(sorted(uniq, key=lambda t: (-t[1], t[0].sort_key())))
    return InitialIdeal(tuple(point), ring, gens)


def initial_ideal(G: ReesAlgebra, pt: Sequence[int], F: FieldCtx | None = None) -> InitialIdeal:
    """Degree-n parts of the generators ``g W^n`` of order exactly n at ``pt``."""
    ring = G.ring if F is None or F == G.ring.field else G.ring.over(F)
    pairs = []
    for wg in G.gens:
        g = translate(wg.g.to_ring(ring), pt)
        order = min(sum(e) for e in g.terms)
        if order < wg.n:
            raise NotSingularPoint(f"{wg} has order {order} < {wg.n} at {tuple(pt)}")
        if order == wg.n:
            pairs.append((g.homogeneous_part(wg.n), wg.n))
    return _make_initial(pt, ring, pairs)


def diff_close_homogeneous(I: InitialIdeal) -> InitialIdeal:
    n = I.ring.nvars
    pairs = list(I.gens)
    for g, w in I.gens:
        for alpha in multi_indices(n, w - 1):
            if any(alpha):
                pairs.append((hasse_derivative(g, alpha), w - sum(alpha)))
    return _make_initial(I.point, I.ring, pairs)


def _linear_root(h: Poly) -> Poly | None:
    if h.degree() == 1 and h.is_homogeneous():
        return h
    pw = is_pe_power(h)
    if pw is not None:
        root = pw[0]
        if root.degree() == 1 and root.is_homogeneous():
            return root
    return None


class _LinearBasis:
    """Linear forms in reduced row-echelon form over the coefficient field."""

    def __init__(self, ring: RingCtx):
        self.ring = ring
        self.rows: list[tuple[int, dict[int, int]]] = []  # (pivot index, coefficients)

    def _vec(self, form: Poly) -> dict[int, int]:
        vec = {}
        for e, c in form.terms.items():
            vec[e.index(1)] = c
        return vec

    def add(self, form: Poly) -> None:
        F = self.ring.field
        vec = self._vec(self.reduce(form))
        if not vec:
            return
        pivot = min(vec)
        inv = F.inv(vec[pivot])
        vec = {i: F.mul(c, inv) for i, c in vec.items()}
        new_rows = []
        for piv, row in self.rows:
            c = row.get(pivot, 0)
            if c:
                row = dict(row)
                for i, v in vec.items():
                    row[i] = F.sub(row.get(i, 0), F.mul(c, v))
                row = {i: v for i, v in row.items() if v}
            new_rows.append((piv, row))
        new_rows.append((pivot, vec))
        self.rows = sorted(new_rows)

    def reduce(self, h: Poly) -> Poly:
        """Substitute each pivot variable by its value on the common zero set of the forms."""
        if not self.rows:
            return h
        F = self.ring.field
        images = {}
        for piv, row in self.rows:
            img = self.ring.zero()
            for i, c in row.items():
                if i != piv:
                    img = img + self.ring.gen(self.ring.vars[i]).scale(F.neg(c))
            images[self.ring.vars[piv]] = img
        return substitute(h, images, self.ring)

    def forms(self) -> tuple[Poly, ...]:
        out = []
        for _, row in self.rows:
            f = self.ring.zero()
            for i, c in row.items():
                f = f + self.ring.gen(self.ring.vars[i]).scale(c)
            out.append(f)
        return tuple(out)


def vertex_space(G: ReesAlgebra, pt: Sequence[int], F: FieldCtx | None = None) -> VertexSpace:
    closed = diff_close_homogeneous(initial_ideal(G, pt, F))
    basis = _LinearBasis(closed.ring)
    pending = [g for g, _ in closed.gens]
    while True:
        grew = False
        rest = []
        for h in pending:
            h = basis.reduce(h)
            if h.is_zero():
                continue
            root = _linear_root(h)
            if root is not None:
                basis.add(root)
                grew = True
            else:
                rest.append(h)
        pending = rest
        if not grew:
            break
    if pending:
        raise UnsupportedCone(f"cone generator {pending[0]} is not a p^e-th power of a linear form")
    return VertexSpace(basis.forms())


def tau(G: ReesAlgebra, pt: Sequence[int], F: FieldCtx | None = None) -> int:
    """Minimum number of variables needed to write the tangent cone of G at ``pt``."""
    return vertex_space(G, pt, F).tau
