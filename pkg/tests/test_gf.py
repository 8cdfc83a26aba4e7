import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qjordan.gf import (
    FieldElement,
    FieldMismatch,
    FieldSpec,
    enumerate_field,
    ff_add,
    ff_inv,
    ff_mul,
    find_irreducible,
    is_irreducible,
)

SPECS = [FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(2, 2), FieldSpec(2, 3), FieldSpec(3, 2), FieldSpec(3, 3)]


def naive_mul(F, x, y):
    """Schoolbook polynomial product reduced by the modulus, on coefficient tuples."""
    p, m = F.p, F.m
    if m == 1:
        return (x[0] * y[0] % p,)
    prod = [0] * (2 * m - 1)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            prod[i + j] = (prod[i + j] + a * b) % p
    mod = F.modulus
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            for i in range(m + 1):
                prod[k - m + i] = (prod[k - m + i] - c * mod[i]) % p
    return tuple(prod[:m])


def test_irreducible_choices():
    assert find_irreducible(2, 2) == (1, 1, 1)
    assert find_irreducible(2, 3) == (1, 1, 0, 1)
    assert find_irreducible(3, 2) == (1, 0, 1)
    assert is_irreducible(find_irreducible(3, 3), 3)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ValueError):
        FieldSpec(4)


@pytest.mark.parametrize("F", SPECS, ids=repr)
def test_tables_match_schoolbook_arithmetic(F):
    for a, b in itertools.product(range(F.q), repeat=2):
        ca, cb = F.coeffs(a), F.coeffs(b)
        assert F.coeffs(F.add_table[a, b]) == tuple((x + y) % F.p for x, y in zip(ca, cb))
        assert F.coeffs(F.mul_table[a, b]) == naive_mul(F, ca, cb)


@pytest.mark.parametrize("F", SPECS, ids=repr)
def test_field_axioms(F):
    els = enumerate_field(F)
    assert els[0] == F.zero and els[1] == F.one
    for x in els[1:]:
        assert x * x.inverse() == F.one
    # multiplicative group is cyclic of order q - 1
    orders = []
    for x in els[1:]:
        k, y = 1, x
        while y != F.one:
            y, k = y * x, k + 1
        orders.append(k)
    assert max(orders) == F.q - 1


def test_f4_example():
    F = FieldSpec(2, 2)
    x = F.element([0, 1])
    assert x * x == x + 1
    assert ff_inv(x) == x + 1
    assert ff_add(x, x) == F.zero
    assert ff_mul(x, F.one) == x


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatch):
        FieldSpec(2, 2).one + FieldSpec(3).one
    with pytest.raises(ZeroDivisionError):
        FieldSpec(5).zero.inverse()


def test_codes_round_trip():
    F = FieldSpec(3, 2)
    for c in range(F.q):
        assert F.parse_code(F.format_code(c)) == c
    with pytest.raises(ValueError):
        F.parse_code("3,0")


@given(st.sampled_from(SPECS), st.data())
def test_distributivity(F, data):
    a, b, c = (FieldElement(F, data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    assert a ** (F.q) == a


@given(st.sampled_from(SPECS), st.integers(1, 3), st.integers(0, 10**6))
def test_vectorized_matmul_matches_loop(F, n, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(0, F.q, size=(n, n))
    B = rng.integers(0, F.q, size=(n, n))
    out = F.matmul(A, B)
    for i in range(n):
        for j in range(n):
            acc = F.zero
            for k in range(n):
                acc = acc + FieldElement(F, int(A[i, k])) * FieldElement(F, int(B[k, j]))
            assert out[i, j] == acc.code
