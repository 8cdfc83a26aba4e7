import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import DIVISION, NON_DIVISION, WEAK, algebra
from qjordan.constructions import field_algebra
from qjordan.identities import (
    IdentityId,
    check_identity,
    division_report,
    is_division,
    is_strict_qja,
    is_strict_via_extension,
    is_weak_qja,
    linearized_at,
    run_suite,
)
from qjordan.linalg import is_invertible
from qjordan.qjcore import QuadraticAlgebra, q_op



@pytest.mark.parametrize("name", WEAK)
def test_full_suite_on_corpus(name):
    J = algebra(name)
    reports = run_suite(J, "all")
    tags = [r.tag for r in reports]
    bad = [r.render() for r in reports if not r.holds and r.tag != "DIVISION"]
    assert not bad
    assert ("HUA" in tags) == (name in DIVISION)
    assert is_weak_qja(J) and is_strict_qja(J)


@pytest.mark.parametrize("name,q", [("F4", 4), ("F8", 8), ("F9", 9), ("F27", 27)])
def test_hua_skips_exactly_the_pairs_a_eq_b_inverse(name, q):
    r = check_identity(algebra(name), IdentityId.HUA)
    assert r.holds and r.skipped == q - 1
    assert r.checked == (q - 1) ** 2 - (q - 1)


@pytest.mark.parametrize("name", NON_DIVISION)
def test_matrix_algebras_are_not_division(name):
    J = algebra(name)
    r = division_report(J)
    assert not r.holds
    T = J.tables()
    assert not T.invertible[r.witness[0]]
    e12 = np.array([0, 1, 0, 0])
    assert not is_invertible(q_op(J, e12), J.field)  # Q_{E12} sends b to E12 b E12 = b21 E12


def test_mutated_qj3_reports_a_real_witness():
    J = field_algebra(2, 2)
    diag = np.array(J.diag)
    diag[1] = [[0, 1], [1, 1]]  # Q_x is no longer x^2 times
    bad = QuadraticAlgebra(J.field, J.unit, diag, J.polar)
    r = check_identity(bad, IdentityId.QJ3)
    assert not r.holds
    T = bad.tables()
    a, b = r.witness
    F = bad.field
    assert not np.array_equal(T.ops[T.act_idx[a, b]], F.matmul(F.matmul(T.ops[a], T.ops[b]), T.ops[a]))
    assert "witness=a=" in r.render()
    assert not is_weak_qja(bad)


def test_qj1_violation():
    J = field_algebra(3, 2)
    diag = np.array(J.diag)
    diag[0] = [[1, 0], [0, 2]]
    r = check_identity(QuadraticAlgebra(J.field, J.unit, diag, J.polar), IdentityId.QJ1)
    assert not r.holds and r.witness == ()


@given(st.integers(0, 10**6))
def test_random_perturbations_never_pass_silently(seed):
    """A perturbed Q that still passes the weak suite must pass it honestly."""
    rng = np.random.default_rng(seed)
    J = algebra("F4")
    polar = np.array(J.polar)
    polar[0, 1] = rng.integers(0, 2, size=(2, 2))
    diag = np.array(J.diag)
    diag[1] = rng.integers(0, 2, size=(2, 2))
    K = QuadraticAlgebra(J.field, J.unit, diag, polar)
    T = K.tables()
    F = K.field
    brute = all(
        np.array_equal(T.ops[T.act_idx[a, b]], F.matmul(F.matmul(T.ops[a], T.ops[b]), T.ops[a]))
        for a in range(4)
        for b in range(4)
    )
    assert check_identity(K, IdentityId.QJ3).holds == brute


@pytest.mark.parametrize("name", ["F4", "F8", "F9", "M2F2"])
def test_extension_oracle_agrees_on_corpus(name):
    J = algebra(name)
    assert is_strict_via_extension(J) == is_strict_qja(J) == True


def test_extension_oracle_preconditions():
    with pytest.raises(ValueError):
        is_strict_via_extension(algebra("F5"))


@pytest.mark.parametrize("name", ["F4", "F9", "M2F2"])
def test_linearized_at_pointwise(name):
    J = algebra(name)
    T = J.tables()
    rng = np.random.default_rng(1)
    for _ in range(5):
        a1, a2 = T.elems[rng.integers(T.N, size=2)]
        assert linearized_at(J, a1, a2)


def test_reports_render_both_modes():
    r = check_identity(algebra("F4"), IdentityId.HUA)
    assert r.render() == "HUA PASS skipped=3"
    assert r.render(machine=True) == "tag=HUA status=PASS checked=6 skipped=3"
    d = division_report(algebra("M2F2"))
    assert d.render().startswith("DIVISION FAIL witness=a=(")


def test_catalog_metadata():
    assert IdentityId.QJ3.arity == 2
    assert IdentityId.VSYM.variables == ("a", "b", "c")
    assert "Q_a Q_b Q_a" in IdentityId.QJ3.statement
    with pytest.raises(ValueError):
        run_suite(algebra("F4"), "nope")


def test_suites_select_expected_checks():
    J = algebra("M2F2")
    assert [r.tag for r in run_suite(J, "weak")] == ["QJ1", "QJ2", "QJ3"]
    assert [r.tag for r in run_suite(J, "division")] == ["DIVISION"]
    assert "HUA" not in [r.tag for r in run_suite(J, "lemmas")]
    assert is_division(algebra("F27"))
