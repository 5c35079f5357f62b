"""Transversality, monic forms, elimination algebras and p^e-th power cleaning."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegreeMismatch, NonTerminating, NotMonic
from .field import FieldCtx
from .parse import parse_poly
from .poly import Poly, RingCtx, hasse_derivative, order_at_point, pe_power_split, substitute
from .rees import ABSOLUTE, NONE, RELATIVE, ReesAlgebra, WeightedGenerator, diff_closure, prune_redundant, relative_diff_closure


def is_transversal(f: Poly, z: str, pt: Sequence[int], F: FieldCtx | None = None) -> bool:
    """``Delta_z^(n) f`` does not vanish at ``pt``, where n is the order of f there."""
    n = order_at_point(f, pt, F)
    if n == float("inf"):
        raise ValueError("transversality of the zero polynomial")
    d = hasse_derivative(f, {z: int(n)})
    return d.evaluate(pt, F) != 0


@dataclass(frozen=True)
class MonicForm:
    """``z^n + a_1 z^(n-1) + ... + a_n`` with every ``a_i`` free of ``z``."""

    ring: RingCtx
    z: str
    n: int
    coeffs: tuple[Poly, ...]

    def poly(self) -> Poly:
        zz = self.ring.gen(self.z)
        acc = zz**self.n
        for i, a in enumerate(self.coeffs, start=1):
            acc = acc + a * zz ** (self.n - i)
        return acc

    def coeff(self, i: int) -> Poly:
        return self.coeffs[i - 1]

    def __str__(self):
        return str(self.poly())


def monic_form(f: Poly, z: str) -> MonicForm:
    """Normalize ``f`` to a monic polynomial in ``z``; the leading coefficient must be a nonzero constant."""
    parts = f.coefficients_in(z)
    if not parts:
        raise NotMonic("zero polynomial")
    n = max(parts)
    lead = parts[n]
    if not lead.is_constant():
        raise NotMonic(f"leading coefficient {lead} of {f} in {z} is not a unit")
    inv = f.field.inv(lead.constant_term())
    coeffs = tuple(parts.get(n - i, f.ring.zero()).scale(inv) for i in range(1, n + 1))
    return MonicForm(f.ring, z, n, coeffs)


def monic_generator(G: ReesAlgebra, z: str) -> tuple[WeightedGenerator, MonicForm] | None:
    """The highest-weight generator ``g W^n`` with g monic of degree n in z."""
    for wg in G.gens:  # canonical order: heaviest first
        if wg.g.degree_in(z) == wg.n:
            try:
                mf = monic_form(wg.g, z)
            except NotMonic:
                continue
            return wg, mf
    return None


def elimination_algebra(G: ReesAlgebra, z: str) -> ReesAlgebra:
    """The z-free generators of the (relative or absolute) differential closure, on the ring without z."""
    if G.closure == NONE or (G.closure == RELATIVE and G.transversal != z):
        G = diff_closure(G)
    elif G.closure == RELATIVE:
        G = relative_diff_closure(G, z)
    lower = G.ring.without(z)
    gens = [WeightedGenerator(wg.g.to_ring(lower), wg.n) for wg in G.gens if not wg.g.involves(z)]
    closure = ABSOLUTE if G.closure == ABSOLUTE else NONE
    return prune_redundant(ReesAlgebra(lower, tuple(gens), closure=closure))


# ---------------------------------------------------------------------------


def pe_exponent(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"degree {p}^e expected, got {n * p**e}")
    return e


def clean_pe_powers(mf: MonicForm) -> tuple[MonicForm, Poly]:
    """Remove the p^e-th power part of the constant coefficient by ``z -> z - root``, repeatedly.

    Returns the cleaned form and the accumulated translation ``t`` (the map
    applied overall is ``z -> z - t``). When the lower coefficients feed the
    removed power back into ``a_n`` the process would cycle; it stops at the
    first form that a further translation would revisit.
    """
    e = pe_exponent(mf.n, mf.ring.field.p)
    total = mf.ring.zero()
    if e == 0:
        return mf, total
    zz = mf.ring.gen(mf.z)
    cap = mf.n * (max((a.degree() for a in mf.coeffs), default=0) + 1)
    seen = {mf.poly()}
    for _ in range(cap + 1):
        root, _ = pe_power_split(mf.coeff(mf.n), e)
        if root.is_zero():
            return mf, total
        nxt = monic_form(substitute(mf.poly(), {mf.z: zz - root}, mf.ring), mf.z)
        if nxt.poly() in seen:
            return mf, total
        seen.add(nxt.poly())
        mf, total = nxt, total + root
    raise NonTerminating(f"cleaning did not stabilize after {cap} rounds")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniversalInvariant:
    """A weighted-homogeneous expression in ``s1..sn`` (weight i) and ``Z`` (weight 1)."""

    n: int
    expr: str
    name: str = ""

    def symbols(self) -> tuple[str, ...]:
        return tuple(f"s{i}" for i in range(1, self.n + 1)) + ("Z",)


DISCRIMINANT_2 = UniversalInvariant(2, "s1^2 - 4*s2", "disc2")


def specialize_invariant(H: UniversalInvariant, mf: MonicForm) -> tuple[Poly, int]:
    """Substitute ``s_i -> (-1)^i a_i`` and ``Z -> z``; returns ``(polynomial, weight)``.

    The polynomial may be zero (e.g. the discriminant in characteristic 2).
    """
    if H.n != mf.n:
        raise DegreeMismatch(f"invariant of degree {H.n} applied to a degree-{mf.n} form")
    S = RingCtx(mf.ring.field, H.symbols())
    expr = parse_poly(H.expr, S)
    weights = list(range(1, H.n + 1)) + [1]
    degrees = {sum(w * a for w, a in zip(weights, e)) for e in expr.terms}
    if len(degrees) > 1:
        raise ValueError(f"{H.expr} is not weighted homogeneous")
    m = degrees.pop() if degrees else 0
    images = {f"s{i}": (a if i % 2 == 0 else -a) for i, a in enumerate(mf.coeffs, start=1)}
    images["Z"] = mf.ring.gen(mf.z)
    return substitute(expr, images, mf.ring), m
