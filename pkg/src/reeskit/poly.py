"""Exact sparse multivariate polynomials over GF(p^k).

A :class:`Poly` is an immutable map from exponent tuples to nonzero field
elements (ints, see :mod:`reeskit.field`). Everything geometric in the package
(generators, initial forms, chart maps) is built from these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotDivisible, RingMismatch
from .field import FieldCtx, binom_mod_p

INF = math.inf

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class RingCtx:
    field: FieldCtx
    vars: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise KeyError(f"{var!r} is not a variable of {self.vars}") from None

    def gen(self, var: str) -> Poly:
        e = [0] * self.nvars
        e[self.index(var)] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> dict[str, Poly]:
        return {v: self.gen(v) for v in self.vars}

    def const(self, c: int) -> Poly:
        return Poly(self, {(0,) * self.nvars: c}) if c else self.zero()

    def from_int(self, n: int) -> Poly:
        return self.const(self.field.from_int(n))

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def without(self, var: str) -> RingCtx:
        return RingCtx(self.field, tuple(v for v in self.vars if v != var))

    def renamed(self, old: str, new: str) -> RingCtx:
        return RingCtx(self.field, tuple(new if v == old else v for v in self.vars))

    def over(self, field: FieldCtx) -> RingCtx:
        return RingCtx(field, self.vars)

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.vars)}]"


def grlex_key(e: Exponent) -> tuple:
    return (sum(e), e)


class Poly:
    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingCtx, terms: Mapping[Exponent, int] | None = None):
        self.ring = ring
        n = ring.nvars
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                clean[tuple(e)] = c
        self._terms = clean
        self._hash = None

    # basic access ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    @property
    def field(self) -> FieldCtx:
        return self.ring.field

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e == zero for e in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def __len__(self):
        return len(self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in descending graded-lex order (the canonical order)."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def sort_key(self) -> tuple:
        return tuple((grlex_key(e), c) for e, c in self.sorted_terms())

    def leading(self) -> tuple[Exponent, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.ring.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def support_vars(self) -> set[str]:
        return {v for i, v in enumerate(self.ring.vars) if any(e[i] for e in self._terms)}

    def involves(self, var: str) -> bool:
        i = self.ring.index(var)
        return any(e[i] for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> Poly:
        return Poly(self.ring, {e: c for e, c in self._terms.items() if sum(e) == d})

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # equality -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.from_int(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        add, mul = F._add, F._mul
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            row = mul[c1]
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = add[out.get(e, 0)][row[c2]]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> Poly:
        F = self.field
        return Poly(self.ring, {e: F.mul(v, c) for e, v in self._terms.items()})

    def monic(self) -> Poly:
        """Scalar multiple with leading coefficient 1 (canonical representative up to units of k)."""
        if not self._terms:
            return self
        _, c = self.leading()
        return self.scale(self.field.inv(c)) if c != 1 else self

    def mul_monomial(self, e: Exponent, c: int = 1) -> Poly:
        F = self.field
        return Poly(self.ring, {tuple(a + b for a, b in zip(k, e)): F.mul(v, c) for k, v in self._terms.items()})

    # conversions ------------------------------------------------------------

    def to_ring(self, ring: RingCtx) -> Poly:
        """Re-express in ``ring`` by variable name; absent variables must not occur."""
        if ring == self.ring:
            return self
        if not ring.field.contains(self.field):
            raise RingMismatch(f"cannot move {self.field!r} coefficients into {ring.field!r}")
        pos = []
        for i, v in enumerate(self.ring.vars):
            if v in ring.vars:
                pos.append(ring.index(v))
            elif any(e[i] for e in self._terms):
                raise RingMismatch(f"variable {v} not present in {ring!r}")
            else:
                pos.append(None)
        out = {}
        for e, c in self._terms.items():
            ne = [0] * ring.nvars
            for i, a in enumerate(e):
                if pos[i] is not None:
                    ne[pos[i]] = a
            out[tuple(ne)] = c
        return Poly(ring, out)

    def coefficients_in(self, var: str) -> dict[int, Poly]:
        """Write ``self = sum_j c_j * var^j``; returns ``{j: c_j}`` with ``c_j`` free of ``var``."""
        i = self.ring.index(var)
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            j = e[i]
            out.setdefault(j, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {j: Poly(self.ring, t) for j, t in out.items()}

    def evaluate(self, point: Sequence[int], field: FieldCtx | None = None) -> int:
        F = field or self.field
        if not F.contains(self.field):
            raise RingMismatch(f"cannot evaluate {self.field!r} polynomial over {F!r}")
        powers = [[1] for _ in point]
        acc = 0
        for e, c in self._terms.items():
            v = c
            for i, a in enumerate(e):
                if a:
                    pw = powers[i]
                    while len(pw) <= a:
                        pw.append(F.mul(pw[-1], point[i]))
                    v = F.mul(v, pw[a])
                    if not v:
                        break
            acc = F.add(acc, v)
        return acc

    # printing ---------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for v, a in zip(self.ring.vars, e):
                if a == 1:
                    factors.append(v)
                elif a > 1:
                    factors.append(f"{v}^{a}")
            coeff = format_coeff(c, self.field)
            if not factors:
                parts.append(coeff)
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([coeff] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def format_coeff(c: int, field: FieldCtx) -> str:
    # extension-field elements use the digit encoding in brackets; the parser reads it back
    if field.k == 1 or c < field.p:
        return str(c)
    return f"[{c}]"


# ---------------------------------------------------------------------------
# multi-indices and Hasse derivatives


def multi_indices(n: int, max_total: int) -> Iterator[Exponent]:
    """All exponent tuples of length ``n`` with total degree ``<= max_total``, graded order."""
    def rec(prefix, remaining, slots):
        if slots == 0:
            yield tuple(prefix)
            return
        for a in range(remaining + 1):
            yield from rec(prefix + [a], remaining - a, slots - 1)
    for total in range(max_total + 1):
        for alpha in rec([], total, n):
            if sum(alpha) == total:
                yield alpha


def as_multi_index(ring: RingCtx, alpha: Mapping[str, int] | Sequence[int]) -> Exponent:
    if isinstance(alpha, Mapping):
        e = [0] * ring.nvars
        for v, a in alpha.items():
            e[ring.index(v)] = a
        return tuple(e)
    alpha = tuple(alpha)
    if len(alpha) != ring.nvars:
        raise ValueError(f"multi-index {alpha} does not match {ring.nvars} variables")
    return alpha


def hasse_derivative(f: Poly, alpha: Mapping[str, int] | Sequence[int]) -> Poly:
    """The coefficient of ``T^alpha`` in ``f(x + T)``.

    Monomial rule: ``x^b -> binom(b, alpha) x^(b - alpha)`` with the binomials
    reduced mod p by Lucas' theorem.
    """
    alpha = as_multi_index(f.ring, alpha)
    if not any(alpha):
        return f
    F = f.field
    p = F.p
    out: dict[Exponent, int] = {}
    for e, c in f.terms.items():
        coeff = 1
        for b, a in zip(e, alpha):
            if a:
                coeff = coeff * binom_mod_p(b, a, p) % p
                if not coeff:
                    break
        if coeff:
            ne = tuple(b - a for b, a in zip(e, alpha))
            out[ne] = F.add(out.get(ne, 0), F.mul(c, coeff))
    return Poly(f.ring, out)


# ---------------------------------------------------------------------------
# orders


def translate(f: Poly, point: Sequence[int]) -> Poly:
    """``f(x + point)``: moves ``point`` to the origin."""
    R = f.ring
    if all(a == 0 for a in point):
        return f
    images = {v: R.gen(v) + R.const(a) for v, a in zip(R.vars, point)}
    return substitute(f, images)


def order_at_point(f: Poly, point: Sequence[int] | None = None, field: FieldCtx | None = None) -> int | float:
    """Multiplicity of ``f`` at a rational point (``inf`` for the zero polynomial).

    ``field`` lets the point live in an extension of the coefficient field.
    """
    if f.is_zero():
        return INF
    if field is not None and field != f.field:
        f = f.to_ring(f.ring.over(field))
    g = translate(f, point) if point is not None else f
    return min(sum(e) for e in g.terms)


def order_along(f: Poly, center_vars: Iterable[str]) -> int | float:
    """Order of ``f`` along the coordinate subspace cut out by ``center_vars``."""
    idx = [f.ring.index(v) for v in center_vars]
    if not idx:
        raise ValueError("center must contain at least one variable")
    if f.is_zero():
        return INF
    return min(sum(e[i] for i in idx) for e in f.terms)


def exact_divide_by_power(f: Poly, var: str, n: int) -> Poly:
    """``f / var^n``; raises :class:`NotDivisible` if some term has a smaller ``var`` exponent."""
    if n == 0:
        return f
    i = f.ring.index(var)
    out = {}
    for e, c in f.terms.items():
        if e[i] < n:
            raise NotDivisible(f"{f} is not divisible by {var}^{n}")
        out[e[:i] + (e[i] - n,) + e[i + 1:]] = c
    return Poly(f.ring, out)


def monomial_content(f: Poly) -> Exponent:
    """Exponent of the largest monomial dividing ``f``."""
    if f.is_zero():
        return (0,) * f.ring.nvars
    return tuple(min(col) for col in zip(*f.terms))


def divide_by_monomial(f: Poly, e: Exponent) -> Poly:
    out = {}
    for k, c in f.terms.items():
        q = tuple(a - b for a, b in zip(k, e))
        if min(q, default=0) < 0:
            raise NotDivisible(f"{f} not divisible by monomial {e}")
        out[q] = c
    return Poly(f.ring, out)


# ---------------------------------------------------------------------------
# p^e-th powers


def pe_power_split(f: Poly, e: int) -> tuple[Poly, Poly]:
    """Split ``f = root^(p^e) + rest`` where ``root^(p^e)`` collects every term whose exponents are all divisible by ``p^e``."""
    if e < 1:
        raise ValueError("e must be >= 1")
    F = f.field
    q = F.p**e
    root, rest = {}, {}
    for ex, c in f.terms.items():
        if all(a % q == 0 for a in ex):
            root[tuple(a // q for a in ex)] = F.pth_root(c, e)
        else:
            rest[ex] = c
    return Poly(f.ring, root), Poly(f.ring, rest)


def is_pe_power(f: Poly) -> tuple[Poly, int] | None:
    """``(g, e)`` with ``f == g^(p^e)`` and ``e >= 1`` maximal, or None.

    Constants are reported as None: they are p^e-th powers for every e.
    """
    if f.is_constant():
        return None
    p = f.field.p
    e = 0
    while all(a % p ** (e + 1) == 0 for ex in f.terms for a in ex):
        e += 1
    if e == 0:
        return None
    root, rest = pe_power_split(f, e)
    assert rest.is_zero()
    return root, e


# ---------------------------------------------------------------------------
# substitution and division


def substitute(f: Poly, images: Mapping[str, Poly], target: RingCtx | None = None) -> Poly:
    """Compose ``f`` with ``var -> images[var]``; unmapped variables map to themselves in ``target``."""
    if target is None:
        target = next(iter(images.values())).ring if images else f.ring
    full = []
    for v in f.ring.vars:
        if v in images:
            img = images[v]
            if img.ring != target:
                img = img.to_ring(target)
            full.append(img)
        else:
            full.append(target.gen(v))
    cache: list[dict[int, Poly]] = [{0: target.one(), 1: img} for img in full]

    def power(i: int, a: int) -> Poly:
        c = cache[i]
        if a not in c:
            c[a] = power(i, a // 2) * power(i, a - a // 2)
        return c[a]

    F = target.field
    acc: dict[Exponent, int] = {}
    for e, coeff in f.terms.items():
        term = target.const(coeff)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        for k, c in term.terms.items():
            acc[k] = F.add(acc.get(k, 0), c)
    return Poly(target, acc)


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Multivariate division of ``f`` by the single polynomial ``g`` (grlex).

    The remainder is zero exactly when ``g`` divides ``f``: a principal ideal's
    generator is a Groebner basis of it.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F = f.field
    lg, lc = g.leading()
    lc_inv = F.inv(lc)
    quot: dict[Exponent, int] = {}
    rem: dict[Exponent, int] = {}
    work = dict(f.terms)
    gterms = list(g.terms.items())
    while work:
        e = max(work, key=grlex_key)
        c = work[e]
        if all(a >= b for a, b in zip(e, lg)):
            m = tuple(a - b for a, b in zip(e, lg))
            t = F.mul(c, lc_inv)
            quot[m] = F.add(quot.get(m, 0), t)
            for ge, gc in gterms:
                k = tuple(a + b for a, b in zip(ge, m))
                v = F.sub(work.get(k, 0), F.mul(t, gc))
                if v:
                    work[k] = v
                else:
                    work.pop(k, None)
        else:
            rem[e] = c
            del work[e]
    return Poly(f.ring, quot), Poly(f.ring, rem)


def divides(g: Poly, f: Poly) -> bool:
    if g.is_zero():
        return f.is_zero()
    return divmod_poly(f, g)[1].is_zero()


def all_points(field: FieldCtx, n: int) -> Iterator[tuple[int, ...]]:
    return product(range(field.q), repeat=n)
