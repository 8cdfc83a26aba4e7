import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import algebra
from qjordan import linalg
from qjordan.constructions import field_algebra
from qjordan.gf import FieldSpec
from qjordan.identities import is_strict_qja, is_weak_qja
from qjordan.qjcore import (
    BoundExceeded,
    NotInvertible,
    ParseError,
    QuadraticAlgebra,
    dump_algebra,
    enumerate_elements,
    inverse,
    is_homomorphism,
    is_subalgebra,
    isotope,
    load_algebra,
    q_op,
    q_polar,
    read_algebra,
    scalar_extension,
    v_op,
    write_algebra,
)

NAMES = ["F4", "F9", "M2F2", "M2F3", "F8"]


@st.composite
def algebra_and_elements(draw, k=2):
    J = algebra(draw(st.sampled_from(NAMES)))
    q = J.field.q
    els = [np.array(draw(st.lists(st.integers(0, q - 1), min_size=J.n, max_size=J.n))) for _ in range(k)]
    return J, els


@given(algebra_and_elements(k=3), st.data())
def test_q_is_quadratic_with_bilinear_polar(data, draw):
    J, (a, b, c) = data
    F = J.field
    s = draw.draw(st.integers(0, F.q - 1))
    assert np.array_equal(q_op(J, F.mul(a, s)), F.mul(q_op(J, a), F.mul(s, s)))
    assert np.array_equal(q_polar(J, a, b), q_polar(J, b, a))
    assert np.array_equal(q_polar(J, a, F.add(b, c)), F.add(q_polar(J, a, b), q_polar(J, a, c)))
    assert np.array_equal(q_polar(J, a, a), F.add(q_op(J, a), q_op(J, a)))
    assert np.array_equal(J.polar_op(a, b), q_polar(J, a, b))


@given(algebra_and_elements(k=3))
def test_v_op_rows(data):
    J, (a, b, c) = data
    F = J.field
    assert np.array_equal(F.vecmat(c, v_op(J, a, b)), F.vecmat(b, q_polar(J, a, c)))


def test_table_agrees_with_direct_evaluation():
    J = algebra("M2F2")
    T = J.tables()
    for k, a in enumerate(T.elems):
        assert np.array_equal(T.ops[k], q_op(J, a))
    assert T.index(T.elems).tolist() == list(range(T.N))
    assert np.array_equal(T.elems[T.unit_idx], J.unit)


def test_canonical_order_is_lexicographic():
    E = enumerate_elements(field_algebra(3, 2))
    assert E[:4].tolist() == [[0, 0], [0, 1], [0, 2], [1, 0]]
    assert len(E) == 9


def test_field_inverse_matches_field_arithmetic():
    J = algebra("F9")
    F = FieldSpec(3, 2)
    for k in range(1, 9):
        a = np.array(F.coeffs(k))
        inv = inverse(J, a)
        # bQ_a = a^2 b, so a^{-1} = a Q_a^{-1} is the field inverse
        assert F.code(inv) == F.inv_table[k]
    assert inverse(J, [0, 0]) is None


def test_isotope_at_unit_is_identity():
    for name in NAMES:
        J = algebra(name)
        assert isotope(J, J.unit) == J


def test_isotope_of_f4_at_x():
    J = algebra("F4")
    F = FieldSpec(2, 2)
    x = np.array([0, 1])
    Jx = isotope(J, x)
    assert np.array_equal(Jx.unit, x)
    xm2 = F.power(F.inv_table[F.code(x)], 2)
    for y in range(4):
        for b in range(4):
            expected = F.mul(xm2, F.mul(F.mul(y, y), b))
            got = F.vecmat(np.array(F.coeffs(b)), q_op(Jx, np.array(F.coeffs(y))))
            assert F.code(got) == expected


def test_isotope_new_unit_acts_as_identity():
    J = algebra("M2F3")
    a = np.array([1, 1, 0, 1])
    Ja = isotope(J, a)
    assert np.array_equal(q_op(Ja, a), np.eye(4, dtype=np.int64))
    with pytest.raises(NotInvertible):
        isotope(J, [1, 0, 0, 0])


@pytest.mark.parametrize("name", ["F4", "F8", "F9", "M2F2"])
def test_isotopes_stay_jordan(name):
    J = algebra(name)
    T = J.tables()
    for k in np.flatnonzero(T.invertible):
        Ja = isotope(J, T.elems[k])
        assert is_weak_qja(Ja) and is_strict_qja(Ja)


def test_isotopes_of_m2f3_sampled():
    J = algebra("M2F3")
    for a in ([1, 1, 0, 1], [0, 1, 1, 0], [2, 1, 1, 1]):
        Ja = isotope(J, np.array(a))
        assert is_strict_qja(Ja)


@pytest.mark.parametrize("name", ["F4", "M2F2", "M2F3"])
def test_isotope_v_operators(name):
    J = algebra(name)
    F = J.field
    T = J.tables()
    rng = np.random.default_rng(7)
    units = np.flatnonzero(T.invertible)
    for _ in range(6):
        a = T.elems[rng.choice(units)]
        b, c = T.elems[rng.integers(T.N, size=2)]
        Ja = isotope(J, a)
        Qinv = linalg.mat_inverse(q_op(J, a), F)
        assert np.array_equal(v_op(Ja, b, c), v_op(J, b, F.vecmat(c, Qinv)))


def test_scalar_extension_restricts_to_base():
    J = algebra("M2F2")
    K = scalar_extension(J, 2)
    assert K.field == FieldSpec(2, 2) and K.n == 4
    TJ, TK = J.tables(), K.tables()
    base = TK.index(TJ.elems)
    assert np.array_equal(TK.ops[base], TJ.ops)
    assert is_weak_qja(K)
    with pytest.raises(ValueError):
        scalar_extension(K, 2)


def test_homomorphisms():
    J = algebra("F4")
    # Frobenius y -> y^2 on F_4 = span(1, x): 1 -> 1, x -> x + 1
    frob = np.array([[1, 0], [1, 1]])
    assert is_homomorphism(np.eye(2, dtype=np.int64), J, J)
    assert is_homomorphism(frob, J, J)
    assert not is_homomorphism(np.array([[1, 0], [0, 0]]), J, J)
    # the prime field embeds as the unit line
    assert is_homomorphism(np.array([[1, 0]]), algebra("F2"), J)


def test_subalgebras():
    J = algebra("M2F2")
    assert is_subalgebra(J, [J.unit])
    assert is_subalgebra(J, [[1, 0, 0, 0], [0, 0, 0, 1]])  # diagonal matrices
    assert is_subalgebra(J, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])  # upper triangular
    assert not is_subalgebra(J, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert not is_subalgebra(J, [])


@pytest.mark.parametrize("name", NAMES + ["F27"])
def test_file_round_trip(name, tmp_path):
    J = algebra(name)
    path = tmp_path / "a.qja"
    write_algebra(J, path)
    assert read_algebra(path) == J
    assert dump_algebra(load_algebra(dump_algebra(J))) == dump_algebra(J)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "qja v2\n",
        "qja v1\np 4\nm 1\ndim 1\nunit 1\nQ 1\n1\n",
        "qja v1\np 2\nm 1\ndim 1\nunit 1\n",
        "qja v1\np 2\nm 1\ndim 1\nunit 1\nQ 1\n2\n",
        "qja v1\np 2\nm 1\ndim 2\nunit 1 0\nQ 1\n1 0\n0 1\nQ 2\n1 1\n",
        "qja v1\np 2\nm 1\ndim 1\nunit 0\nQ 1\n1\n",
        "qja v1\np 2\nm 2\nmodulus 1 0 1\ndim 1\nunit 1\nQ 1\n1\n",
    ],
)
def test_malformed_files_raise(text):
    with pytest.raises(ParseError):
        load_algebra(text)


def test_comments_and_missing_polar_blocks():
    J = load_algebra("# one-dimensional\nqja v1\np 3\nm 1\ndim 1\nunit 1  # e\nQ 1\n1\n")
    assert J == algebra("F3")


def test_bound_and_shape_checks():
    F = FieldSpec(3)
    big = QuadraticAlgebra(F, np.eye(7, dtype=np.int64)[0], np.zeros((7, 7, 7)), np.zeros((7,) * 4))
    with pytest.raises(BoundExceeded):
        enumerate_elements(big)
    F = FieldSpec(2)
    with pytest.raises(ValueError):
        QuadraticAlgebra(F, [1], np.zeros((2, 2, 2)), np.zeros((1, 1, 1, 1)))
