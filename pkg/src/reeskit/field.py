"""Finite fields GF(p^k) for small p and k.

Elements are plain ints in ``range(q)``: the element ``sum(d_i * a^i)`` of
``GF(p)[a]/(modulus)`` is encoded as ``sum(d_i * p^i)``. The prime subfield is
therefore ``range(p)`` in every extension, so a polynomial over GF(p) can be
evaluated at points of GF(p^k) without any conversion.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import FieldError

# Conway polynomials, low degree first: (c_0, ..., c_k) with c_k = 1.
MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 1): (0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 1): (0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod_eval(coeffs: tuple[int, ...], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    k = len(modulus) - 1
    if k == 1:
        return True
    if k > 3:
        raise FieldError("irreducibility check only implemented for degree <= 3")
    # degree 2 and 3: irreducible iff no root in GF(p)
    return all(_poly_mod_eval(modulus, x, p) for x in range(p))


class FieldCtx:
    """The field GF(p^k) with precomputed operation tables."""

    __slots__ = ("p", "k", "q", "modulus", "_add", "_mul", "_neg", "_inv", "_frob_inv")

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if (p, k) not in MODULI:
            raise FieldError(f"GF({p}^{k}) is outside the supported table")
        modulus = MODULI[(p, k)]
        if not _is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus

        digits = [self._digits(a) for a in range(self.q)]
        add = [[self._encode([(x + y) % p for x, y in zip(da, db)]) for db in digits] for da in digits]
        mul = [[self._encode(self._mulpoly(da, db)) for db in digits] for da in digits]
        self._add = tuple(tuple(r) for r in add)
        self._mul = tuple(tuple(r) for r in mul)
        self._neg = tuple(self._encode([(-x) % p for x in d]) for d in digits)
        inv = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = tuple(inv)
        # x -> x^p is a bijection; invert it once
        frob = [self.pow(a, p) for a in range(self.q)]
        frob_inv = [0] * self.q
        for a, b in enumerate(frob):
            frob_inv[b] = a
        self._frob_inv = tuple(frob_inv)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits: list[int]) -> int:
        acc = 0
        for d in reversed(digits):
            acc = acc * self.p + d
        return acc

    def _mulpoly(self, da: list[int], db: list[int]) -> list[int]:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for deg in range(len(prod) - 1, k - 1, -1):
            c = prod[deg]
            if c:
                for i in range(k + 1):
                    prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
        return prod[:k]

    # arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a field")
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            n >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def pth_root(self, a: int, e: int = 1) -> int:
        """The unique ``b`` with ``b^(p^e) == a``."""
        for _ in range(e):
            a = self._frob_inv[a]
        return a

    def elements(self) -> range:
        return range(self.q)

    def points(self, n: int):
        return product(range(self.q), repeat=n)

    def contains(self, other: FieldCtx) -> bool:
        """Whether elements of ``other`` can be used here as-is (same field or prime subfield)."""
        return other.p == self.p and (other.k == 1 or other.k == self.k)

    # identity -----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FieldCtx:
    return FieldCtx(p, k)


def binom_mod_p(n: int, r: int, p: int) -> int:
    """binom(n, r) mod p via Lucas' theorem."""
    if r < 0 or r > n:
        return 0
    result = 1
    while n or r:
        ni, ri = n % p, r % p
        if ri > ni:
            return 0
        # small digits: direct product is cheap
        num = den = 1
        for i in range(ri):
            num = num * (ni - i) % p
            den = den * (i + 1) % p
        result = result * num * pow(den, p - 2, p) % p
        n //= p
        r //= p
    return result
