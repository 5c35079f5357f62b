from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeskit.errors import FieldError
from reeskit.field import GF, MODULI, binom_mod_p

ALL = sorted(MODULI)


@pytest.mark.parametrize("pk", ALL)
def test_field_axioms_exhaustive(pk):
    F = GF(*pk)
    assert F.q == pk[0] ** pk[1]
    for a in F.elements():
        assert F.add(a, F.neg(a)) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
        # Frobenius is a bijection and pth_root inverts it
        assert F.pth_root(F.pow(a, F.p)) == a


@pytest.mark.parametrize("pk", ALL)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(pk):
    F = GF(*pk)
    orders = []
    for a in range(1, F.q):
        n, x = 1, a
        while x != 1:
            x, n = F.mul(x, a), n + 1
        orders.append(n)
    assert max(orders) == F.q - 1


def test_prime_subfield_is_range_p():
    F = GF(2, 2)
    for a in range(2):
        for b in range(2):
            assert F.add(a, b) == (a + b) % 2
            assert F.mul(a, b) == a * b


def test_gf4_generator_satisfies_its_modulus():
    F = GF(2, 2)
    a = 2  # the class of the generator
    assert F.add(F.add(F.mul(a, a), a), 1) == 0


def test_cached_and_equal():
    assert GF(3) is GF(3)
    assert GF(2, 2) == GF(2, 2) and GF(2) != GF(2, 2)
    assert GF(2, 3).contains(GF(2)) and not GF(2).contains(GF(2, 3))


@pytest.mark.parametrize("p,k", [(4, 1), (7, 1), (2, 5)])
def test_unsupported_fields(p, k):
    with pytest.raises(FieldError):
        GF(p, k)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)


def test_from_int_reduces_mod_p():
    assert GF(3).from_int(7) == 1
    assert GF(5).from_int(-1) == 4
    assert GF(2, 2).from_int(3) == 1


@settings(max_examples=300)
@given(st.integers(0, 300), st.integers(0, 300), st.sampled_from([2, 3, 5]))
def test_lucas_matches_math_comb(n, r, p):
    assert binom_mod_p(n, r, p) == comb(n, r) % p
