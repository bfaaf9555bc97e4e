import pytest

from hochschild.algebra import enveloping, multiplication_matrix, regular_bimodule, with_unital_basis
from hochschild.bar import bar_differential, chain_actions, syzygy
from hochschild.catalog import (
    base_ring_algebra,
    dual_numbers,
    matrix_algebra2,
    split_pair,
    truncated_poly,
    upper_triangular2,
)
from hochschild.cohomology import hh
from hochschild.matrix import Matrix, SizeGuardError
from hochschild.projectivity import (
    hcdim_scan,
    is_quasi_free,
    omega_is_projective,
    separability_idempotent,
)
from hochschild.rings import GF, QQ, ZZ

F2 = GF(2)


def _check_idempotent(A, e):
    d = A.rank
    # mu(e) = 1
    assert (multiplication_matrix(A) * e).col_list(0) == list(A.unit)
    # centrality: a e = e a in the outer bimodule
    L, R = chain_actions(A, 0, False)
    for i in range(d):
        assert L[i] * e == R[i] * e
    # idempotency in the enveloping algebra (e regarded as an element of A (x) A^op)
    env = enveloping(A)
    assert env.multiply(e.col_list(0), e.col_list(0)) == e.col_list(0)


# -- separability -----------------------------------------------------------------

def test_base_ring_idempotent_is_unit_tensor_unit():
    for ring in (QQ, ZZ, F2):
        A = base_ring_algebra(ring)
        e = separability_idempotent(A)
        assert e is not None and e.col_list(0) == [ring.one]
        _check_idempotent(A, e)


def test_matrix_algebra_idempotent():
    A = matrix_algebra2(QQ)
    e = separability_idempotent(A)
    assert e is not None
    _check_idempotent(A, e)


def test_split_pair_idempotent_over_z():
    A = split_pair(ZZ)
    e = separability_idempotent(A)
    assert e is not None
    _check_idempotent(A, e)


def test_dual_numbers_not_separable():
    for ring in (QQ, F2, ZZ):
        assert separability_idempotent(dual_numbers(ring)) is None


def test_upper_triangular_not_separable():
    assert separability_idempotent(upper_triangular2(QQ)) is None


def test_separability_implies_low_degree_vanishing():
    # consistency: every separable fixture has HH^1 = HH^2 = 0 with regular coefficients
    for A in (matrix_algebra2(QQ), split_pair(ZZ), base_ring_algebra(ZZ)):
        if not A.has_unital_basis:
            A, _ = with_unital_basis(A)
        M = regular_bimodule(A)
        for n in (1, 2):
            assert hh(A, M, n, representatives=False).invariants.is_zero


# -- syzygy projectivity -----------------------------------------------------------

def test_omega0_projective_for_separable_fixture():
    cert = omega_is_projective(split_pair(ZZ), 0)
    assert cert.is_projective
    # the section is a bimodule map splitting the multiplication
    b0 = bar_differential(split_pair(ZZ), 0)
    assert b0 * cert.section == Matrix.identity(ZZ, 2)


def test_omega1_verdicts():
    yes = [base_ring_algebra(QQ), base_ring_algebra(ZZ), base_ring_algebra(F2), split_pair(ZZ), matrix_algebra2(QQ)]
    no = [dual_numbers(QQ), dual_numbers(F2), dual_numbers(ZZ), truncated_poly(ZZ, 3)]
    for A in yes:
        cert = omega_is_projective(A, 1)
        assert cert.is_projective, A.basis_names
        assert cert.section is not None
    for A in no:
        cert = omega_is_projective(A, 1)
        assert not cert.is_projective, A.basis_names
        assert cert.section is None


def test_sections_reverify(small_corpus):
    # every positive certificate re-verifies: b sigma = id and bimodule-linearity
    for A in (split_pair(ZZ), matrix_algebra2(QQ), base_ring_algebra(F2)):
        for n in (0, 1):
            cert = omega_is_projective(A, n)
            assert cert.is_projective
            om = syzygy(A, n, cert.normalized)
            from hochschild.bar import _differential

            b = _differential(A, n, cert.normalized)
            assert b * cert.section == om.basis
            Ln, Rn = chain_actions(A, n, cert.normalized)
            for i in range(A.rank):
                assert cert.section * om.left[i] == Ln[i] * cert.section
                assert cert.section * om.right[i] == Rn[i] * cert.section


def test_normalized_and_unnormalized_verdicts_agree():
    for A in (dual_numbers(QQ), dual_numbers(F2), dual_numbers(ZZ), truncated_poly(ZZ, 3)):
        v1 = omega_is_projective(A, 1, normalized=True).verdict
        v2 = omega_is_projective(A, 1, normalized=False).verdict
        assert v1 == v2


def test_torsion_obstruction_note_only_over_z():
    cert = omega_is_projective(dual_numbers(ZZ), 1)
    assert not cert.is_projective
    assert cert.obstruction is not None


def test_non_projective_corroborated_by_hh2():
    for A in (dual_numbers(QQ), dual_numbers(F2), dual_numbers(ZZ), truncated_poly(ZZ, 3)):
        assert not omega_is_projective(A, 1).is_projective
        assert not hh(A, regular_bimodule(A), 2, representatives=False).invariants.is_zero


# -- quasi-freeness ----------------------------------------------------------------

def test_quasi_free_fixtures():
    for A in (base_ring_algebra(QQ), split_pair(ZZ), matrix_algebra2(QQ)):
        report = is_quasi_free(A)
        assert report.quasi_free
        assert report.lifts_checked >= 1


def test_upper_triangular_is_quasi_free_but_not_separable():
    report = is_quasi_free(upper_triangular2(QQ))
    assert report.quasi_free
    assert separability_idempotent(upper_triangular2(QQ)) is None


def test_not_quasi_free_with_witness():
    for A in (dual_numbers(QQ), dual_numbers(F2), truncated_poly(ZZ, 3)):
        report = is_quasi_free(A)
        assert not report.quasi_free
        assert report.witness is not None


# -- dimension scan -----------------------------------------------------------------

def test_hcdim_scan_separable():
    report = hcdim_scan(matrix_algebra2(QQ), 2)
    assert report.proved_upper == 0
    assert report.witnessed_lower == 0


def test_hcdim_scan_base_ring_cap_zero():
    report = hcdim_scan(base_ring_algebra(QQ), 0)
    assert report.proved_upper == 0


def test_hcdim_scan_dual_f2():
    report = hcdim_scan(dual_numbers(F2), 3)
    assert report.proved_upper is None
    assert report.upper_text == ">3"
    assert report.witnessed_lower == 4  # HH^4 (A, A) is still nonzero
    assert (3, "A") in report.witnesses


def test_hcdim_scan_quasi_free_non_separable():
    report = hcdim_scan(upper_triangular2(QQ), 2)
    assert report.proved_upper == 1
    assert report.witnessed_lower <= 1


def test_scan_respects_guard():
    report = hcdim_scan(dual_numbers(QQ), 2, guard=10)
    assert any("guard" in note for note in report.notes)
