import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import long_division_mod
from unitroot.padic import (
    PadicDigits,
    PrecisionMismatch,
    Residue,
    digits,
    is_prime,
    parse_digits,
    reduce,
    valuation,
)


def test_reduce_table_entry():
    r = reduce(-81144, 11, 1)
    assert r.value == long_division_mod(-81144, 11)
    # 81144 = 11 * 7376 + 8, so -81144 leaves remainder 11 - 8
    assert 11 * 7376 + 8 == 81144
    assert r.value == 3


@pytest.mark.parametrize("p,k", [(2, 1), (3, 4), (11, 3)])
def test_reduce_trivial(p, k):
    assert reduce(0, p, k).value == 0
    assert reduce(p**k, p, k).value == 0


def test_valuation():
    assert valuation(121, 11) == 2
    assert valuation(3, 11) == 0
    assert valuation(0, 11) == math.inf
    assert valuation(-250, 5) == 3


def test_primes():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_digits_examples():
    assert digits(reduce(7 + 6 * 11 + 3 * 121, 11, 3)).digits == (7, 6, 3)
    assert digits(reduce(8 + 11 + 121, 11, 3)).digits == (8, 1, 1)
    assert digits(reduce(0, 5, 4)).digits == (0, 0, 0, 0)


def test_render():
    assert digits(reduce(8 + 11 + 121, 11, 3)).render() == "8 + 11 + 11^2 + O(11^3)"
    assert digits(reduce(7 + 6 * 11 + 3 * 121, 11, 3)).render() == "7 + 6*11 + 3*11^2 + O(11^3)"
    assert digits(reduce(0, 3, 1)).render() == "O(3)"


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(1, 5), st.integers(-10**12, 10**12))
def test_digits_reconstruct_and_roundtrip(p, k, n):
    r = reduce(n, p, k)
    d = digits(r)
    assert len(d.digits) == k and all(0 <= x < p for x in d.digits)
    assert sum(x * p**i for i, x in enumerate(d.digits)) % p**k == r.value
    assert parse_digits(d.render()) == d
    assert d.to_residue() == r


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_reduce_is_ring_map(p, k, a, b):
    assert reduce(a + b, p, k) == reduce(a, p, k) + reduce(b, p, k)
    assert reduce(a * b, p, k) == reduce(a, p, k) * reduce(b, p, k)
    assert reduce(a - b, p, k) == reduce(a, p, k) - reduce(b, p, k)


def test_inverse_and_units():
    r = Residue(5, 3, 7)
    assert (r * r.inverse()).value == 1
    assert not Residue(5, 3, 10).is_unit()
    with pytest.raises(ArithmeticError):
        Residue(5, 3, 10).inverse()


def test_precision_mismatch():
    with pytest.raises(PrecisionMismatch):
        Residue(5, 2, 1) + Residue(5, 3, 1)
    with pytest.raises(PrecisionMismatch):
        Residue(3, 2, 1) * Residue(5, 2, 1)


def test_truncate():
    assert Residue(11, 3, 1191).truncate(1) == Residue(11, 1, 1191 % 11)


def test_parse_digits_rejects_garbage():
    with pytest.raises(ValueError):
        parse_digits("8 + 11")
    assert parse_digits("O(7^2)") == PadicDigits(7, (0, 0))
