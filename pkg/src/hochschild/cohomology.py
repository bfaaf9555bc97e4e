"""Hochschild cocomplex, cohomology/homology, centers and derivations.

Cochains of degree n are k-linear maps A^(x)n -> M stored as m x d^n
matrices over the induced tensor basis; the coboundary is

    (b f)(a0,...,an) = a0 f(a1,...,an)
                       + sum_i (-1)^(i+1) f(..., a_i a_(i+1), ...)
                       + (-1)^(n+1) f(a0,...,a(n-1)) an

so that b^0(m)(a) = a m - m a and 2-cocycles are exactly the associativity
data of square-zero extensions.  The normalized variant restricts the
arguments to non-unit basis classes and drops unit components of products;
its cohomology agrees with the full complex (checked in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .algebra import (
    AlgebraError,
    Bimodule,
    FiniteAlgebra,
    LeftModule,
    hom_bimodule,
)
from .bar import _require_unital
from .matrix import (
    DEFAULT_GUARD,
    KModuleInvariants,
    Matrix,
    check_guard,
    kernel_basis,
    quotient_generators,
)


@dataclass(frozen=True)
class Cochain:
    """A k-linear map A^(x)n -> M; columns follow the row-major tensor basis."""

    algebra: FiniteAlgebra
    bimodule: Bimodule
    degree: int
    matrix: Matrix  # rank(M) x d^degree

    def __post_init__(self):
        d = self.algebra.rank
        if (self.matrix.rows, self.matrix.cols) != (self.bimodule.rank, d**self.degree):
            raise AlgebraError("cochain matrix shape does not match its degree")


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    invariants: KModuleInvariants
    representatives: tuple[Cochain, ...] | None = None


def _tensor_tuples(d: int, n: int, normalized: bool):
    rng = range(1, d) if normalized else range(d)
    return list(product(rng, repeat=n))


def cochain_vec_index(m_rank: int, tensor_count: int, p: int, t: int) -> int:
    return p * tensor_count + t


@lru_cache(maxsize=None)
def _coboundary(A: FiniteAlgebra, M: Bimodule, n: int, normalized: bool) -> Matrix:
    d = A.rank
    m = M.rank
    ring = A.ring
    z = ring.zero
    src_tuples = _tensor_tuples(d, n, normalized)
    dst_tuples = _tensor_tuples(d, n + 1, normalized)
    dst_index = {t: i for i, t in enumerate(dst_tuples)}
    T_src, T_dst = len(src_tuples), len(dst_tuples)
    rows, cols = m * T_dst, m * T_src
    flat = [z] * (rows * cols)
    arg_range = range(1, d) if normalized else range(d)

    def add(row, col, v):
        cur = flat[row * cols + col]
        flat[row * cols + col] = ring.canon(cur + v)

    for ti, t in enumerate(src_tuples):
        for p in range(m):
            col = p * T_src + ti
            # leading term: a0 . f(a1..an) for every choice of a0
            for a0 in arg_range:
                L = M.left[a0]
                srow = dst_index[(a0,) + t]
                for q in range(m):
                    v = L[q, p]
                    if v != z:
                        add(q * T_dst + srow, col, v)
            # merge terms: f evaluated where positions i, i+1 multiply to t_i
            for i in range(n):
                sign = -1 if i % 2 == 0 else 1  # (-1)^(i+1)
                for a in arg_range:
                    for b in arg_range:
                        c = A.c(a, b, t[i])
                        if c == z:
                            continue
                        srow = dst_index[t[:i] + (a, b) + t[i + 1 :]]
                        add(p * T_dst + srow, col, c if sign > 0 else -c)
            # trailing term: (-1)^(n+1) f(a0..a(n-1)) . an
            sign = 1 if (n + 1) % 2 == 0 else -1
            for an in arg_range:
                R = M.right[an]
                srow = dst_index[t + (an,)]
                for q in range(m):
                    v = R[q, p]
                    if v != z:
                        add(q * T_dst + srow, col, v if sign > 0 else -v)
    return Matrix(ring, rows, cols, tuple(flat))


def coboundary_matrix(
    A: FiniteAlgebra,
    M: Bimodule,
    n: int,
    normalized: bool = False,
    guard: int | None = DEFAULT_GUARD,
) -> Matrix:
    """Matrix of b^n : C^n(A, M) -> C^(n+1)(A, M) in the vectorized cochain basis."""
    if n < 0:
        raise ValueError("cochain degree must be >= 0")
    if M.algebra != A:
        raise AlgebraError("bimodule lives over a different algebra")
    if normalized:
        _require_unital(A)
    width = A.rank - 1 if normalized else A.rank
    check_guard(M.rank * width ** (n + 1), M.rank * width**n, guard)
    return _coboundary(A, M, n, normalized)


def _embed_normalized_cochain(A: FiniteAlgebra, M: Bimodule, n: int, vec) -> Matrix:
    """Zero-extend a normalized cochain to the full tensor basis."""
    d, m = A.rank, M.rank
    src_tuples = _tensor_tuples(d, n, True)
    full = _tensor_tuples(d, n, False)
    full_index = {t: i for i, t in enumerate(full)}
    z = A.ring.zero
    T = len(full)
    flat = [z] * (m * T)
    for i, t in enumerate(src_tuples):
        for p in range(m):
            v = vec[p * len(src_tuples) + i]
            if v != z:
                flat[p * T + full_index[t]] = v
    return Matrix(A.ring, m, T, tuple(flat))


def hh(
    A: FiniteAlgebra,
    M: Bimodule,
    n: int,
    normalized: bool | None = None,
    guard: int | None = DEFAULT_GUARD,
    representatives: bool = True,
) -> CohomologyReport:
    """HH^n(A, M) = ker b^n / im b^(n-1), with b^(-1) = 0.

    By default the normalized complex is used whenever the basis is unital
    (it is dramatically smaller); pass normalized=False to force the raw
    bar cocomplex.  Representative cocycles are emitted in echelon form,
    free generators first, then torsion generators in increasing
    invariant-factor order; normalized representatives are zero-extended to
    the full tensor basis.
    """
    if normalized is None:
        normalized = A.has_unital_basis
    bn = coboundary_matrix(A, M, n, normalized, guard)
    Z = kernel_basis(bn)
    if n == 0:
        B = Matrix.zeros(A.ring, Z.rows, 0)
    else:
        B = coboundary_matrix(A, M, n - 1, normalized, guard)
    invs, gens = quotient_generators(Z, B)
    reps = None
    if representatives:
        reps = tuple(
            Cochain(
                A,
                M,
                n,
                _embed_normalized_cochain(A, M, n, g.col_list(0))
                if normalized
                else _vec_to_cochain_matrix(A, M, n, g.col_list(0)),
            )
            for g in gens
        )
    return CohomologyReport(n, invs, reps)


def _vec_to_cochain_matrix(A: FiniteAlgebra, M: Bimodule, n: int, vec) -> Matrix:
    T = A.rank**n
    return Matrix(A.ring, M.rank, T, tuple(A.ring.canon(v) for v in vec))


def is_cocycle(c: Cochain, guard: int | None = DEFAULT_GUARD) -> bool:
    bn = coboundary_matrix(c.algebra, c.bimodule, c.degree, False, guard)
    vec = Matrix.column(c.algebra.ring, list(c.matrix.entries))
    return (bn * vec).is_zero


# ---------------------------------------------------------------------------
# degree 0 and 1 through their classical descriptions
# ---------------------------------------------------------------------------


def center(A: FiniteAlgebra, M: Bimodule) -> Matrix:
    """Basis of Z_A(M) = {m : a m = m a for all a}, solved directly."""
    blocks = [M.left[i] - M.right[i] for i in range(A.rank)]
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    return kernel_basis(stacked)


def _leibniz_system(A: FiniteAlgebra, M: Bimodule) -> Matrix:
    """The linear system whose kernel is Der_k(A, M), assembled from scratch.

    Unknowns are the entries D[p][q] = p-th coordinate of D(e_q), vectorized
    row-major; one equation block per basis pair (i, j).
    """
    d, m = A.rank, M.rank
    ring = A.ring
    z = ring.zero
    rows = d * d * m
    cols = m * d
    flat = [z] * (rows * cols)

    def add(r, c, v):
        flat[r * cols + c] = ring.canon(flat[r * cols + c] + v)

    for i in range(d):
        for j in range(d):
            block = (i * d + j) * m
            # sum_k c[i][j][k] D(e_k) - e_i D(e_j) - D(e_i) e_j = 0
            for k in range(d):
                c = A.c(i, j, k)
                if c != z:
                    for p in range(m):
                        add(block + p, p * d + k, c)
            L, R = M.left[i], M.right[j]
            for q in range(m):
                for p in range(m):
                    v = L[p, q]
                    if v != z:
                        add(block + p, q * d + j, -v)
                    w = R[p, q]
                    if w != z:
                        add(block + p, q * d + i, -w)
    return Matrix(ring, rows, cols, tuple(flat))


def derivations(A: FiniteAlgebra, M: Bimodule) -> Matrix:
    """Basis of Der_k(A, M) as vectorized maps (columns)."""
    return kernel_basis(_leibniz_system(A, M))


def inner_derivation_generators(A: FiniteAlgebra, M: Bimodule) -> Matrix:
    """The maps a -> a m - m a for each basis vector m of M (a spanning set)."""
    d, m = A.rank, M.rank
    ring = A.ring
    cols = []
    for w in range(m):
        vec = [ring.zero] * (m * d)
        for i in range(d):
            Li, Ri = M.left[i], M.right[i]
            for p in range(m):
                v = ring.canon(Li[p, w] - Ri[p, w])
                if v != ring.zero:
                    vec[p * d + i] = v
        cols.append(vec)
    if not cols:
        return Matrix.zeros(ring, m * d, 0)
    return Matrix.from_cols(ring, cols, nrows=m * d)


def inner_derivations(A: FiniteAlgebra, M: Bimodule) -> Matrix:
    """Basis of Inn_k(A, M) (over Z: of the inner-derivation lattice)."""
    from .matrix import column_span_basis

    return column_span_basis(inner_derivation_generators(A, M))


def hh1_report(A: FiniteAlgebra, M: Bimodule) -> CohomologyReport:
    """HH^1 as Der/Inn, computed independently of the cocomplex route."""
    Der = derivations(A, M)
    Inn = inner_derivations(A, M)
    invs, gens = quotient_generators(Der, Inn)
    reps = tuple(Cochain(A, M, 1, _vec_to_cochain_matrix(A, M, 1, g.col_list(0))) for g in gens)
    return CohomologyReport(1, invs, reps)


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _homology_boundary(A: FiniteAlgebra, M: Bimodule, k: int) -> Matrix:
    """The cyclic bar boundary on M (x) A^(x)k (wrap-around last term)."""
    d, m = A.rank, M.rank
    ring = A.ring
    z = ring.zero
    src = _tensor_tuples(d, k, False)
    dst = _tensor_tuples(d, k - 1, False)
    dst_index = {t: i for i, t in enumerate(dst)}
    rows, cols = m * len(dst), m * len(src)
    flat = [z] * (rows * cols)

    def add(r, c, v):
        flat[r * cols + c] = ring.canon(flat[r * cols + c] + v)

    for ti, t in enumerate(src):
        for p in range(m):
            col = p * len(src) + ti
            # m (x) a1 ... -> (m a1) (x) a2 ...
            R = M.right[t[0]]
            s = dst_index[t[1:]]
            for q in range(m):
                v = R[q, p]
                if v != z:
                    add(q * len(dst) + s, col, v)
            # interior merges with signs (-1)^i, i = 1..k-1
            for i in range(1, k):
                sign = -1 if i % 2 == 1 else 1
                for kk in range(d):
                    c = A.c(t[i - 1], t[i], kk)
                    if c == z:
                        continue
                    merged = t[: i - 1] + (kk,) + t[i + 1 :]
                    add(p * len(dst) + dst_index[merged], col, c if sign > 0 else -c)
            # wrap-around: (-1)^k (ak m) (x) a1 ... a(k-1)
            sign = 1 if k % 2 == 0 else -1
            L = M.left[t[-1]]
            s = dst_index[t[:-1]]
            for q in range(m):
                v = L[q, p]
                if v != z:
                    add(q * len(dst) + s, col, v if sign > 0 else -v)
    return Matrix(ring, rows, cols, tuple(flat))


def hochschild_homology(
    A: FiniteAlgebra, M: Bimodule, n: int, guard: int | None = DEFAULT_GUARD
) -> KModuleInvariants:
    """HH_n(A, M): homology of the cyclic bar complex M (x) A^(x)*."""
    if n < 0:
        raise ValueError("homology degree must be >= 0")
    if M.algebra != A:
        raise AlgebraError("bimodule lives over a different algebra")
    d, m = A.rank, M.rank
    check_guard(m * d ** max(n, 1), m * d ** (n + 1), guard)
    if n == 0:
        Z = Matrix.identity(A.ring, m)
    else:
        Z = kernel_basis(_homology_boundary(A, M, n))
    Bnd = _homology_boundary(A, M, n + 1)
    invs, _ = quotient_generators(Z, Bnd)
    return invs


# ---------------------------------------------------------------------------
# relative Ext
# ---------------------------------------------------------------------------


def _as_left_module(X) -> LeftModule:
    if isinstance(X, LeftModule):
        return X
    if isinstance(X, Bimodule):
        return X.left_module()
    raise AlgebraError("expected a left module or bimodule")


def relative_ext(
    A: FiniteAlgebra,
    M,
    N,
    n: int,
    normalized: bool | None = None,
    guard: int | None = DEFAULT_GUARD,
) -> KModuleInvariants:
    """Relative Ext^n of left modules via HH^n(A, Hom_k(M, N))."""
    Ml, Nl = _as_left_module(M), _as_left_module(N)
    H = hom_bimodule(Ml, Nl)
    return hh(A, H, n, normalized=normalized, guard=guard, representatives=False).invariants


@lru_cache(maxsize=None)
def _relative_ext_coboundary(A: FiniteAlgebra, M: LeftModule, N: LeftModule, n: int) -> Matrix:
    """Coboundary of the split-resolution route: maps A^(x)n (x) M -> N.

    Column index is p * (d^n * mM) + t * mM + u for value coordinate p,
    tensor index t and module index u.
    """
    d = A.rank
    mM, mN = M.rank, N.rank
    ring = A.ring
    z = ring.zero
    src = _tensor_tuples(d, n, False)
    dst = _tensor_tuples(d, n + 1, False)
    src_w = len(src) * mM
    dst_w = len(dst) * mM
    dst_index = {t: i for i, t in enumerate(dst)}
    rows, cols = mN * dst_w, mN * src_w
    flat = [z] * (rows * cols)

    def add(r, c, v):
        flat[r * cols + c] = ring.canon(flat[r * cols + c] + v)

    for ti, t in enumerate(src):
        for u in range(mM):
            for p in range(mN):
                col = p * src_w + ti * mM + u
                # a1 . f(a2,...,u)
                for a in range(d):
                    LN = N.action[a]
                    s = dst_index[(a,) + t]
                    for q in range(mN):
                        v = LN[q, p]
                        if v != z:
                            add(q * dst_w + s * mM + u, col, v)
                # merges, signs (-1)^i for i = 1..n
                for i in range(1, n + 1):
                    sign = -1 if i % 2 == 1 else 1
                    for a in range(d):
                        for b in range(d):
                            c = A.c(a, b, t[i - 1])
                            if c == z:
                                continue
                            s = dst_index[t[: i - 1] + (a, b) + t[i:]]
                            add(p * dst_w + s * mM + u, col, c if sign > 0 else -c)
                # (-1)^(n+1) f(a1,...,an, a(n+1) . u)
                sign = 1 if (n + 1) % 2 == 0 else -1
                for a in range(d):
                    LM = M.action[a]
                    for w in range(mM):
                        v = LM[u, w]
                        if v != z:
                            s = dst_index[t + (a,)]
                            add(p * dst_w + s * mM + w, col, v if sign > 0 else -v)
    return Matrix(ring, rows, cols, tuple(flat))


def relative_ext_resolution(
    A: FiniteAlgebra, M, N, n: int, guard: int | None = DEFAULT_GUARD
) -> KModuleInvariants:
    """Relative Ext^n computed from the split resolution of M directly.

    Independent of the Hom-bimodule route; the two must agree.
    """
    Ml, Nl = _as_left_module(M), _as_left_module(N)
    d = A.rank
    check_guard(Nl.rank * d ** (n + 1) * Ml.rank, Nl.rank * d**n * Ml.rank, guard)
    dn = _relative_ext_coboundary(A, Ml, Nl, n)
    Z = kernel_basis(dn)
    if n == 0:
        B = Matrix.zeros(A.ring, Z.rows, 0)
    else:
        B = _relative_ext_coboundary(A, Ml, Nl, n - 1)
    invs, _ = quotient_generators(Z, B)
    return invs
