import random
from fractions import Fraction

import pytest

from hochschild.matrix import (
    ContainmentError,
    KModuleInvariants,
    Matrix,
    SizeGuardError,
    check_guard,
    cokernel_invariants,
    column_span_basis,
    kernel_basis,
    quotient_generators,
    rank,
    smith_normal_form,
    solve,
    subquotient_invariants,
)
from hochschild.rings import GF, QQ, ZZ, RingError

F2 = GF(2)


def brute_force_integer_kernel(rows, bound=4):
    """Oracle: all integer vectors with small entries killed by the matrix."""
    ncols = len(rows[0])
    sols = []
    def rec(prefix):
        if len(prefix) == ncols:
            if any(prefix) and all(sum(r[j] * prefix[j] for j in range(ncols)) == 0 for r in rows):
                sols.append(tuple(prefix))
            return
        for v in range(-bound, bound + 1):
            rec(prefix + [v])
    rec([])
    return sols


# -- kernels -----------------------------------------------------------------

def test_kernel_of_zero_map_over_q():
    M = Matrix.from_rows(QQ, [[0]])
    K = kernel_basis(M)
    assert (K.rows, K.cols) == (1, 1)
    assert K[0, 0] == 1


def test_kernel_of_1x2_integer_matrix_matches_brute_force():
    # oracle first: smallest nonzero integer solutions of 2a + 4b = 0
    sols = brute_force_integer_kernel([[2, 4]])
    assert (2, -1) in sols and (-2, 1) in sols
    M = Matrix.from_rows(ZZ, [[2, 4]])
    K = kernel_basis(M)
    assert K.cols == 1
    assert (M * K).is_zero
    # the kernel lattice equals span{(2, -1)}: mutual containment
    assert solve(K, Matrix.column(ZZ, [2, -1])) is not None
    a, b = K[0, 0], K[1, 0]
    assert (a, b) in ((2, -1), (-2, 1))


def test_kernel_of_identity_over_f2_is_empty():
    M = Matrix.identity(F2, 3)
    K = kernel_basis(M)
    assert (K.rows, K.cols) == (3, 0)


def test_integer_kernels_are_saturated():
    # the lattice {x : Mx = 0} for M = [[2, 2, 0], [0, 2, 2]] contains (1, -1, 1)
    M = Matrix.from_rows(ZZ, [[2, 2, 0], [0, 2, 2]])
    K = kernel_basis(M)
    assert (M * K).is_zero
    assert solve(K, Matrix.column(ZZ, [1, -1, 1])) is not None


def test_random_kernels_compose_to_zero():
    rng = random.Random(7)
    for ring in (ZZ, QQ, F2, GF(5)):
        for _ in range(8):
            m, n = rng.randint(1, 5), rng.randint(1, 5)
            M = Matrix.from_rows(ring, [[ring.of_int(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)])
            K = kernel_basis(M)
            assert (M * K).is_zero
            assert rank(K) == K.cols  # columns independent
            assert K.cols == n - rank(M)


def test_kernel_is_deterministic_normal_form():
    M = Matrix.from_rows(QQ, [[1, 2, 3]])
    K1 = kernel_basis(M)
    K2 = kernel_basis(Matrix.from_rows(QQ, [[2, 4, 6]]))
    assert K1 == K2  # echelon normal form only depends on the subspace


# -- Smith normal form ---------------------------------------------------------

def test_snf_hand_reduction_example():
    # oracle by hand: [[2,0],[0,3]] -> add row2 to row1 -> [[2,3],[0,3]]
    # -> col2 -= col1 -> [[2,1],[0,3]] -> pivot 1 -> diag(1, 6)
    M = Matrix.from_rows(ZZ, [[2, 0], [0, 3]])
    U, D, V = smith_normal_form(M)
    assert D.to_rows() == [[1, 0], [0, 6]]
    assert U * M * V == D


def test_snf_zero_and_identity():
    Z = Matrix.zeros(ZZ, 2, 3)
    U, D, V = smith_normal_form(Z)
    assert D == Z and U == Matrix.identity(ZZ, 2) and V == Matrix.identity(ZZ, 3)
    One = Matrix.from_rows(ZZ, [[1]])
    _, D1, _ = smith_normal_form(One)
    assert D1 == One


def _det(M):
    n = M.rows
    if n == 0:
        return 1
    total = 0
    import itertools
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, ln = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                ln += 1
            if ln % 2 == 0:
                sign = -sign
        prod = 1
        for i in range(n):
            prod *= M[i, perm[i]]
        total += sign * prod
    return total


def test_snf_transforms_are_unimodular_and_chain_divides():
    rng = random.Random(3)
    for _ in range(10):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = Matrix.from_rows(ZZ, [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)])
        U, D, V = smith_normal_form(M)
        assert U * M * V == D
        assert abs(_det(U)) == 1 and abs(_det(V)) == 1
        diag = [D[i, i] for i in range(min(m, n))]
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and (a == 0 and b == 0 or b % max(a, 1) == 0 or a == 0)
        for i in range(D.rows):
            for j in range(D.cols):
                if i != j:
                    assert D[i, j] == 0


# -- subquotients ----------------------------------------------------------------

def test_z_mod_2z_quotient():
    Z = Matrix.identity(ZZ, 1)
    B = Matrix.from_rows(ZZ, [[2]])
    assert subquotient_invariants(Z, B) == KModuleInvariants(0, (2,))


def test_quotient_by_self_is_zero():
    Z = Matrix.from_rows(ZZ, [[2, 1], [0, 3]])
    assert subquotient_invariants(Z, Z).is_zero


def test_field_quotient_is_rank_arithmetic():
    Z = Matrix.identity(QQ, 3)
    B = Matrix.from_cols(QQ, [[1, 1, 0]])
    assert subquotient_invariants(Z, B) == KModuleInvariants(2)


def test_containment_violation_names_column():
    Z = Matrix.from_cols(ZZ, [[2, 0]])
    B = Matrix.from_cols(ZZ, [[2, 0], [0, 1]])
    with pytest.raises(ContainmentError) as exc:
        subquotient_invariants(Z, B)
    assert exc.value.column == 1
    # integral containment matters over Z: (1,0) is in the Q-span but not the lattice
    with pytest.raises(ContainmentError):
        subquotient_invariants(Z, Matrix.from_cols(ZZ, [[1, 0]]))


def test_subquotient_of_zero_ambient():
    Z = Matrix.zeros(ZZ, 2, 0)
    B = Matrix.zeros(ZZ, 2, 0)
    assert subquotient_invariants(Z, B).is_zero


def test_subquotient_against_snf_of_generators():
    # invariants of Z^2 / <(2,0),(0,4)> = Z/2 + Z/4
    Z = Matrix.identity(ZZ, 2)
    B = Matrix.from_cols(ZZ, [[2, 0], [0, 4]])
    assert subquotient_invariants(Z, B) == KModuleInvariants(0, (2, 4))


def test_quotient_generators_orders():
    Z = Matrix.identity(ZZ, 3)
    B = Matrix.from_cols(ZZ, [[2, 0, 0], [0, 6, 0]])
    invs, gens = quotient_generators(Z, B)
    assert invs == KModuleInvariants(1, (2, 6))
    assert len(gens) == 3  # one free generator, two torsion generators


# -- solving ------------------------------------------------------------------------

def test_solve_examples():
    assert solve(Matrix.from_rows(ZZ, [[2]]), Matrix.column(ZZ, [4])).col_list(0) == [2]
    assert solve(Matrix.from_rows(ZZ, [[2]]), Matrix.column(ZZ, [3])) is None
    x = solve(Matrix.from_rows(QQ, [[2]]), Matrix.column(QQ, [3]))
    assert x.col_list(0) == [Fraction(3, 2)]


def test_solve_cross_checked_against_rank_over_q():
    rng = random.Random(11)
    for _ in range(25):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        M = Matrix.from_rows(QQ, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)])
        b = Matrix.column(QQ, [rng.randint(-3, 3) for _ in range(m)])
        x = solve(M, b)
        solvable = rank(M.hstack(b)) == rank(M)
        assert (x is not None) == solvable
        if x is not None:
            assert M * x == b


def test_solve_integral_vs_rational():
    # 2x + 4y = 2 has integer solutions; 2x + 4y = 1 has none even over Q*2
    M = Matrix.from_rows(ZZ, [[2, 4]])
    assert solve(M, Matrix.column(ZZ, [2])) is not None
    assert solve(M, Matrix.column(ZZ, [1])) is None


def test_solve_over_f2():
    M = Matrix.from_rows(F2, [[1, 1], [0, 1]])
    x = solve(M, Matrix.column(F2, [0, 1]))
    assert M * x == Matrix.column(F2, [0, 1])


# -- misc -------------------------------------------------------------------------

def test_cokernel_invariants():
    assert cokernel_invariants(Matrix.from_rows(ZZ, [[2, 0], [0, 3]])) == KModuleInvariants(0, (6,))
    assert cokernel_invariants(Matrix.zeros(ZZ, 2, 0)) == KModuleInvariants(2)
    assert cokernel_invariants(Matrix.from_rows(QQ, [[1, 2], [2, 4]])) == KModuleInvariants(1)


def test_column_span_basis_is_canonical():
    A = Matrix.from_cols(ZZ, [[2, 0], [4, 0]])
    B = Matrix.from_cols(ZZ, [[6, 0], [2, 0]])
    assert column_span_basis(A) == column_span_basis(B)


def test_guard():
    check_guard(100, 100)
    with pytest.raises(SizeGuardError):
        check_guard(2001, 2001)
    check_guard(2001, 2001, guard=None)


def test_ring_mismatch_rejected():
    with pytest.raises(RingError):
        Matrix.identity(ZZ, 2) * Matrix.identity(QQ, 2)


def test_matmul_matches_naive():
    rng = random.Random(5)
    for ring in (ZZ, QQ, GF(7)):
        A = Matrix.from_rows(ring, [[ring.of_int(rng.randint(-4, 4)) for _ in range(3)] for _ in range(2)])
        B = Matrix.from_rows(ring, [[ring.of_int(rng.randint(-4, 4)) for _ in range(4)] for _ in range(3)])
        C = A * B
        for i in range(2):
            for j in range(4):
                s = sum((A[i, k] * B[k, j] for k in range(3)), ring.zero)
                assert C[i, j] == ring.canon(s)


def test_kron_row_major_convention():
    A = Matrix.from_rows(ZZ, [[1, 2]])
    B = Matrix.from_rows(ZZ, [[3], [4]])
    K = A.kron(B)
    assert K.to_rows() == [[3, 6], [4, 8]]


def test_invariants_validation():
    with pytest.raises(ValueError):
        KModuleInvariants(0, (2, 3))  # not a divisibility chain
    with pytest.raises(ValueError):
        KModuleInvariants(0, (1,))
    assert str(KModuleInvariants(1, (2,))) == "k^1 + k/2"
