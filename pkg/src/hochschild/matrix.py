"""Exact dense linear algebra over Z, Q and F_p.

Kernels, solving, Smith/Hermite normal forms and subquotient invariants.
Matrices are immutable, stored dense in row-major order; the elimination
routines work on transient dict-of-column rows so that the highly sparse
complexes showing up downstream reduce quickly.  All arithmetic is exact;
over Z every kernel is the full (hence saturated) integer kernel.

Everything here is pure: no operation mutates its inputs, so concurrent
use from multiple threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .rings import RingError, ScalarRing, ZZ

DEFAULT_GUARD = 4_000_000


class SizeGuardError(ValueError):
    """Raised when a requested matrix exceeds the configured entry guard."""


class ShapeError(ValueError):
    pass


class ContainmentError(ValueError):
    """Columns of the submodule matrix escape the span of the ambient one."""

    def __init__(self, column: int):
        self.column = column
        super().__init__(f"column {column} is not contained in the ambient span")


def check_guard(rows: int, cols: int, guard: int | None = DEFAULT_GUARD) -> None:
    if guard is not None and rows * cols > guard:
        raise SizeGuardError(
            f"matrix of size {rows}x{cols} = {rows * cols} entries exceeds the "
            f"guard of {guard}; raise the guard to proceed"
        )


@dataclass(frozen=True)
class KModuleInvariants:
    """Isomorphism type of a finitely generated k-module.

    ``free_rank`` copies of the ring plus cyclic torsion summands whose
    orders form a divisibility chain t1 | t2 | ...  Torsion is empty over
    a field and over Q.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion factors must exceed 1")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"k^{self.free_rank}")
        parts.extend(f"k/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix; entries are a flat row-major tuple."""

    ring: ScalarRing
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rows(ring: ScalarRing, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
            flat.extend(ring.canon(x) for x in r)
        return Matrix(ring, nrows, ncols, tuple(flat))

    @staticmethod
    def from_cols(ring: ScalarRing, cols, nrows: int | None = None) -> "Matrix":
        cols = [list(c) for c in cols]
        if nrows is None:
            if not cols:
                raise ShapeError("cannot infer row count of an empty column list")
            nrows = len(cols[0])
        flat = [ring.zero] * (nrows * len(cols))
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise ShapeError("ragged columns")
            for i, x in enumerate(c):
                flat[i * len(cols) + j] = ring.canon(x)
        return Matrix(ring, nrows, len(cols), tuple(flat))

    @staticmethod
    def zeros(ring: ScalarRing, rows: int, cols: int) -> "Matrix":
        return Matrix(ring, rows, cols, (ring.zero,) * (rows * cols))

    @staticmethod
    def identity(ring: ScalarRing, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        flat = [z] * (n * n)
        for i in range(n):
            flat[i * n + i] = o
        return Matrix(ring, n, n, tuple(flat))

    @staticmethod
    def column(ring: ScalarRing, values) -> "Matrix":
        vals = [ring.canon(v) for v in values]
        return Matrix(ring, len(vals), 1, tuple(vals))

    # -- access ----------------------------------------------------------------

    def __getitem__(self, ij) -> object:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_list(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def col_list(self, j: int) -> list:
        return list(self.entries[j :: self.cols]) if self.cols else []

    def to_rows(self) -> list[list]:
        return [self.row_list(i) for i in range(self.rows)]

    @property
    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(x == z for x in self.entries)

    # -- arithmetic --------------------------------------------------------------

    def _same(self, other: "Matrix") -> None:
        if self.ring != other.ring:
            raise RingError("ring mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in addition")
        if self.ring.kind == "Fp":
            p = self.ring.p
            flat = tuple((a + b) % p for a, b in zip(self.entries, other.entries))
        else:
            flat = tuple(a + b for a, b in zip(self.entries, other.entries))
        return Matrix(self.ring, self.rows, self.cols, flat)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        if self.ring.kind == "Fp":
            p = self.ring.p
            return Matrix(self.ring, self.rows, self.cols, tuple(-a % p for a in self.entries))
        return Matrix(self.ring, self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = self.ring.canon(c)
        if self.ring.kind == "Fp":
            p = self.ring.p
            return Matrix(self.ring, self.rows, self.cols, tuple(a * c % p for a in self.entries))
        return Matrix(self.ring, self.rows, self.cols, tuple(a * c for a in self.entries))

    def __mul__(self, other: "Matrix") -> "Matrix":
        """Matrix product, organized column-by-column to exploit sparsity."""
        self._same(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        z = self.ring.zero
        modp = self.ring.p if self.ring.kind == "Fp" else 0
        # sparse columns of self, indexed by self's column number
        acols: list[list[tuple[int, object]]] = [[] for _ in range(self.cols)]
        e = self.entries
        nc = self.cols
        for i in range(self.rows):
            base = i * nc
            for k in range(nc):
                v = e[base + k]
                if v != z:
                    acols[k].append((i, v))
        out = [z] * (self.rows * other.cols)
        oe = other.entries
        onc = other.cols
        for j in range(onc):
            acc: dict[int, object] = {}
            for k in range(other.rows):
                w = oe[k * onc + j]
                if w == z:
                    continue
                for i, v in acols[k]:
                    acc[i] = acc.get(i, z) + v * w
            if modp:
                for i, v in acc.items():
                    v %= modp
                    if v:
                        out[i * onc + j] = v
            else:
                for i, v in acc.items():
                    if v != z:
                        out[i * onc + j] = v
        return Matrix(self.ring, self.rows, onc, tuple(out))

    def transpose(self) -> "Matrix":
        flat = [self.ring.zero] * (self.rows * self.cols)
        for i in range(self.rows):
            base = i * self.cols
            for j in range(self.cols):
                flat[j * self.rows + i] = self.entries[base + j]
        return Matrix(self.ring, self.cols, self.rows, tuple(flat))

    def hstack(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.rows != other.rows:
            raise ShapeError("row mismatch in hstack")
        flat = []
        for i in range(self.rows):
            flat.extend(self.entries[i * self.cols : (i + 1) * self.cols])
            flat.extend(other.entries[i * other.cols : (i + 1) * other.cols])
        return Matrix(self.ring, self.rows, self.cols + other.cols, tuple(flat))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.cols != other.cols:
            raise ShapeError("column mismatch in vstack")
        return Matrix(self.ring, self.rows + other.rows, self.cols, self.entries + other.entries)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product in row-major (last index fastest) convention."""
        self._same(other)
        R, C = self.rows * other.rows, self.cols * other.cols
        z = self.ring.zero
        flat = [z] * (R * C)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entries[i * self.cols + j]
                if a == z:
                    continue
                for k in range(other.rows):
                    row = (i * other.rows + k) * C + j * other.cols
                    obase = k * other.cols
                    for l in range(other.cols):
                        b = other.entries[obase + l]
                        if b != z:
                            flat[row + l] = self.ring.canon(a * b)
        return Matrix(self.ring, R, C, tuple(flat))

    def submatrix_cols(self, col_indices) -> "Matrix":
        idx = list(col_indices)
        flat = []
        for i in range(self.rows):
            base = i * self.cols
            flat.extend(self.entries[base + j] for j in idx)
        return Matrix(self.ring, self.rows, len(idx), tuple(flat))

    def __str__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row_list(i)) for i in range(self.rows))
        return f"[{body}]"


# ---------------------------------------------------------------------------
# elimination cores (dict-based sparse rows, exact)
# ---------------------------------------------------------------------------


def _row_sub(r: dict, s: dict, q, modp: int) -> None:
    # r -= q*s, in place
    if modp:
        for c, v in s.items():
            nv = (r.get(c, 0) - q * v) % modp
            if nv:
                r[c] = nv
            else:
                r.pop(c, None)
    else:
        for c, v in s.items():
            nv = r.get(c, 0) - q * v
            if nv:
                r[c] = nv
            else:
                r.pop(c, None)


def _reduce_rows_int(rows: list[dict], pivot_width: int) -> list[tuple[int, dict]]:
    """Integer row reduction to Hermite form over the first pivot_width columns.

    Only unimodular operations are used (swaps, adding integer multiples of
    one row to another, sign flips), so the row lattice is preserved exactly.
    Returns the pivot rows as (pivot_column, row) in column order; the input
    list is left holding the remaining rows whose leading part is zero.
    """
    pivots: list[tuple[int, dict]] = []
    live = rows
    for c in range(pivot_width):
        holders = [r for r in live if c in r]
        if not holders:
            continue
        # repeatedly reduce by the entry of smallest magnitude until one remains
        while len(holders) > 1:
            holders.sort(key=lambda r: abs(r[c]))
            piv = holders[0]
            pv = piv[c]
            rest = []
            for r in holders[1:]:
                q = r[c] // pv
                if q:
                    _row_sub(r, piv, q, 0)
                if c in r:
                    rest.append(r)
            holders = [piv] + rest
        piv = holders[0]
        if piv[c] < 0:
            for k in list(piv):
                piv[k] = -piv[k]
        live = [r for r in live if r is not piv and r]
        # Hermite reduction of earlier pivot rows against the new pivot
        pv = piv[c]
        for _, pr in pivots:
            if c in pr:
                q = pr[c] // pv
                if q:
                    _row_sub(pr, piv, q, 0)
        pivots.append((c, piv))
    rows[:] = live
    return pivots


def _reduce_rows_field(rows: list[dict], pivot_width: int, ring: ScalarRing) -> list[tuple[int, dict]]:
    """Field row reduction (RREF) over the first pivot_width columns."""
    modp = ring.p if ring.kind == "Fp" else 0
    pivots: list[tuple[int, dict]] = []
    live = rows
    for c in range(pivot_width):
        piv = None
        for r in live:
            if c in r:
                piv = r
                break
        if piv is None:
            continue
        inv = ring.invert(piv[c])
        if inv != ring.one:
            if modp:
                for k in list(piv):
                    piv[k] = piv[k] * inv % modp
            else:
                for k in list(piv):
                    piv[k] = piv[k] * inv
        live = [r for r in live if r is not piv]
        for r in live:
            if c in r:
                _row_sub(r, piv, r[c], modp)
        live = [r for r in live if r]
        for _, pr in pivots:
            if c in pr:
                _row_sub(pr, piv, pr[c], modp)
        pivots.append((c, piv))
    rows[:] = live
    return pivots


def _matrix_rows_as_dicts(M: Matrix) -> list[dict]:
    z = M.ring.zero
    out = []
    for i in range(M.rows):
        base = i * M.cols
        row = {}
        for j in range(M.cols):
            v = M.entries[base + j]
            if v != z:
                row[j] = v
        out.append(row)
    return out


def _scale_row_to_int(row: dict) -> dict:
    """Clear Fraction denominators of a dict row (multiplies by a positive unit)."""
    if not row:
        return {}
    denom = lcm(*[v.denominator for v in row.values()]) if row else 1
    return {c: int(v * denom) for c, v in row.items()}


def _reduce(ring: ScalarRing, rows: list[dict], pivot_width: int):
    if ring.kind == "Z":
        return _reduce_rows_int(rows, pivot_width)
    return _reduce_rows_field(rows, pivot_width, ring)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def rank(M: Matrix) -> int:
    rows = _matrix_rows_as_dicts(M)
    if M.ring.kind == "Q":
        rows = [_scale_row_to_int(r) for r in rows]
        pivots = _reduce_rows_int(rows, M.cols)
    else:
        pivots = _reduce(M.ring, rows, M.cols)
    return len(pivots)


def kernel_basis(M: Matrix) -> Matrix:
    """Basis of ker(M) as matrix columns, in a canonical echelon form.

    Over Z the columns are a basis of the full integer kernel lattice, so the
    result is saturated.  Computed by reducing the transpose augmented with an
    identity block: rows whose leading part dies give the kernel combinations.
    """
    n, m = M.cols, M.rows
    z = M.ring.zero
    rational = M.ring.kind == "Q"
    rows = []
    for j in range(n):
        row = {}
        for i in range(m):
            v = M.entries[i * M.cols + j]
            if v != z:
                row[i] = v
        row[m + j] = M.ring.one
        if rational:
            row = _scale_row_to_int(row)
        rows.append(row)
    if M.ring.kind == "Fp":
        _reduce_rows_field(rows, m, M.ring)
    else:
        _reduce_rows_int(rows, m)
    kernel_rows = [{c - m: v for c, v in r.items()} for r in rows]  # leading parts are zero
    return _normal_form_columns(M.ring, kernel_rows, n)


def _normal_form_columns(ring: ScalarRing, vec_rows: list[dict], width: int) -> Matrix:
    """Canonicalize a set of vectors (dict rows of the given width) to echelon columns."""
    vecs = [dict(r) for r in vec_rows if r]
    if ring.kind == "Z":
        pivots = _reduce_rows_int(vecs, width)
    else:
        if ring.kind == "Q":
            vecs = [{c: Fraction(v) for c, v in r.items()} for r in vecs]
        pivots = _reduce_rows_field(vecs, width, ring)
    cols = []
    for c, r in pivots:
        col = [ring.zero] * width
        for k, v in r.items():
            col[k] = ring.canon(v)
        cols.append(col)
    if not cols:
        return Matrix.zeros(ring, width, 0)
    return Matrix.from_cols(ring, cols, nrows=width)


def column_span_basis(M: Matrix) -> Matrix:
    """Canonical basis of the column space (fields) or column lattice (Z)."""
    z = M.ring.zero
    vec_rows = []
    for j in range(M.cols):
        row = {}
        for i in range(M.rows):
            v = M.entries[i * M.cols + j]
            if v != z:
                row[i] = v
        if row:
            vec_rows.append(row)
    return _normal_form_columns(M.ring, vec_rows, M.rows)


def _coords_in_echelon(basis: Matrix, target: list) -> list | None:
    """Solve basis * x = target where basis has echelon columns; None if impossible."""
    ring = basis.ring
    z = ring.zero
    residual = [ring.canon(v) for v in target]
    leads = []
    for j in range(basis.cols):
        lead = next(i for i in range(basis.rows) if basis.entries[i * basis.cols + j] != z)
        leads.append(lead)
    coords = [z] * basis.cols
    for j, lead in enumerate(leads):
        val = residual[lead]
        if val == z:
            continue
        pv = basis.entries[lead * basis.cols + j]
        if ring.kind == "Z":
            if val % pv != 0:
                return None
            q = val // pv
        else:
            q = ring.canon(val * ring.invert(pv))
        coords[j] = q
        for i in range(basis.rows):
            b = basis.entries[i * basis.cols + j]
            if b != z:
                residual[i] = ring.canon(residual[i] - q * b)
    if any(v != z for v in residual):
        return None
    return coords


def coords_in_span(basis: Matrix, M: Matrix) -> Matrix:
    """Express each column of M in an echelon-column basis (exact, per ring).

    The basis must come from kernel_basis / column_span_basis (echelon form).
    Raises ContainmentError naming the first column that escapes the span
    (over Z: the lattice).
    """
    basis._same(M)
    if basis.rows != M.rows:
        raise ShapeError("ambient dimensions differ")
    cols = []
    for j in range(M.cols):
        target = M.col_list(j)
        if basis.cols == 0:
            if any(v != M.ring.zero for v in target):
                raise ContainmentError(j)
            cols.append([])
            continue
        c = _coords_in_echelon(basis, target)
        if c is None:
            raise ContainmentError(j)
        cols.append(c)
    if not cols:
        return Matrix.zeros(M.ring, basis.cols, 0)
    return Matrix.from_cols(M.ring, cols, nrows=basis.cols)


def solve(M: Matrix, b: Matrix) -> Matrix | None:
    """One solution x of M x = b over the ring, or None (absence is a normal outcome).

    Over Z the decision is integral: a rational-only solution yields None.
    """
    if b.rows != M.rows or b.cols != 1:
        raise ShapeError("right-hand side must be a column of matching height")
    M._same(b)
    ring = M.ring
    z = ring.zero
    if ring.kind == "Z":
        # Hermite form of the transpose with transform tracking:
        # rows are columns of M augmented by unit combination vectors.
        rows = []
        for j in range(M.cols):
            row = {i: M.entries[i * M.cols + j] for i in range(M.rows) if M.entries[i * M.cols + j] != 0}
            row[M.rows + j] = 1
            rows.append(row)
        pivots = _reduce_rows_int(rows, M.rows)
        residual = [b.entries[i] for i in range(M.rows)]
        x = [0] * M.cols
        for c, r in pivots:
            val = residual[c]
            if val == 0:
                continue
            if val % r[c] != 0:
                return None
            q = val // r[c]
            for k, v in r.items():
                if k < M.rows:
                    residual[k] -= q * v
                else:
                    x[k - M.rows] += q * v
        if any(v != 0 for v in residual):
            return None
        return Matrix.column(ring, x)
    # field case: RREF of [M | b]
    rows = _matrix_rows_as_dicts(M)
    for i in range(M.rows):
        v = b.entries[i]
        if v != z:
            rows[i][M.cols] = v
    pivots = _reduce_rows_field(rows, M.cols, ring)
    for r in rows:
        if r and M.cols in r:
            return None  # zero row with nonzero rhs
    x = [z] * M.cols
    for c, r in pivots:
        x[c] = ring.canon(r.get(M.cols, z))
    return Matrix.column(ring, x)


def smith_normal_form(M: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form over Z: returns (U, D, V) with U*M*V = D.

    U and V are unimodular; D is diagonal with d1 | d2 | ... >= 0.  Pivoting
    always selects the entry of smallest absolute value, the usual heuristic
    against coefficient swell; correctness does not depend on the choice.
    """
    if M.ring.kind != "Z":
        raise RingError("Smith normal form requires the ring Z")
    m, n = M.rows, M.cols
    A = [M.row_list(i) for i in range(m)]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        Ai, Aj = A[i], A[j]
        for k in range(n):
            Ai[k] -= q * Aj[k]
        Ui, Uj = U[i], U[j]
        for k in range(m):
            Ui[k] -= q * Uj[k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            A[r][i] -= q * A[r][j]
        for r in range(n):
            V[r][i] -= q * V[r][j]

    t = 0
    while True:
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            A[t], A[bi] = A[bi], A[t]
            U[t], U[bi] = U[bi], U[t]
        if bj != t:
            for r in range(m):
                A[r][t], A[r][bj] = A[r][bj], A[r][t]
            for r in range(n):
                V[r][t], V[r][bj] = V[r][bj], V[r][t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_op(i, t, q)
                    if A[i][t]:  # remainder smaller than pivot: swap up
                        A[t], A[i] = A[i], A[t]
                        U[t], U[i] = U[i], U[t]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_op(j, t, q)
                    if A[t][j]:
                        for r in range(m):
                            A[r][t], A[r][j] = A[r][j], A[r][t]
                        for r in range(n):
                            V[r][t], V[r][j] = V[r][j], V[r][t]
                        dirty = True
            if dirty:
                continue
            # divisibility fix-up: pivot must divide every remaining entry
            offender = None
            piv = A[t][t]
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % piv != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # row_t += row_offender
        if A[t][t] < 0:
            for k in range(n):
                A[t][k] = -A[t][k]
            for k in range(m):
                U[t][k] = -U[t][k]
        t += 1
        if t == m or t == n:
            break
    Um = Matrix.from_rows(ZZ, U)
    Dm = Matrix.from_rows(ZZ, A)
    Vm = Matrix.from_rows(ZZ, V)
    return Um, Dm, Vm


def invariants_from_diagonal(diag: list[int], total_rank: int) -> KModuleInvariants:
    nonzero = [abs(d) for d in diag if d]
    torsion = tuple(d for d in nonzero if d > 1)
    return KModuleInvariants(total_rank - len(nonzero), torsion)


def cokernel_invariants(M: Matrix) -> KModuleInvariants:
    """Invariants of ring^rows / (column span of M)."""
    if M.ring.kind == "Z":
        _, D, _ = smith_normal_form(M)
        diag = [D.entries[i * D.cols + i] for i in range(min(M.rows, M.cols))]
        return invariants_from_diagonal(diag, M.rows)
    return KModuleInvariants(M.rows - rank(M))


def subquotient_invariants(Z: Matrix, B: Matrix) -> KModuleInvariants:
    """Invariants of (span of Z's columns) / (span of B's columns).

    Columns may be arbitrary spanning sets.  Raises ContainmentError naming
    the first offending column of B that escapes the span of Z.
    """
    Z._same(B)
    if Z.rows != B.rows:
        raise ShapeError("ambient dimensions differ")
    basis = column_span_basis(Z)
    coords_cols = []
    for j in range(B.cols):
        target = B.col_list(j)
        coords = _coords_in_echelon(basis, target) if basis.cols else (
            None if any(v != B.ring.zero for v in target) else []
        )
        if coords is None:
            raise ContainmentError(j)
        coords_cols.append(coords)
    r = basis.cols
    if not coords_cols:
        C = Matrix.zeros(Z.ring, r, 0)
    else:
        C = Matrix.from_cols(Z.ring, coords_cols, nrows=r)
    return cokernel_invariants(C)


def quotient_generators(Z: Matrix, B: Matrix) -> tuple[KModuleInvariants, list[Matrix]]:
    """Like subquotient_invariants, but also returns generator columns.

    The generators map onto a minimal generating set of the quotient: free
    generators first, then torsion generators in increasing invariant-factor
    order (over a field: a basis of a complement of span(B) in span(Z)).
    """
    Z._same(B)
    basis = column_span_basis(Z)
    r = basis.cols
    coords_cols = []
    for j in range(B.cols):
        coords = _coords_in_echelon(basis, B.col_list(j)) if basis.cols else (
            None if any(v != B.ring.zero for v in B.col_list(j)) else []
        )
        if coords is None:
            raise ContainmentError(j)
        coords_cols.append(coords)
    ring = Z.ring
    if ring.kind == "Z":
        C = Matrix.from_cols(ring, coords_cols, nrows=r) if coords_cols else Matrix.zeros(ring, r, 0)
        U, D, _ = smith_normal_form(C)
        diag = [D.entries[i * D.cols + i] for i in range(min(D.rows, D.cols))]
        # generators of Z^r / C are the columns of U^{-1}; solve U x = e_i
        invs = invariants_from_diagonal(diag, r)
        free_idx = [i for i in range(r) if i >= len(diag) or diag[i] == 0]
        tors_idx = [i for i in range(len(diag)) if abs(diag[i]) > 1]
        gens = []
        for i in free_idx + tors_idx:
            e = Matrix.column(ring, [1 if k == i else 0 for k in range(r)])
            x = solve(U, e)  # columns of U^{-1}, one linear solve each
            gens.append(basis * x)
        return invs, gens
    # field: complement of span(coords) inside k^r
    rows = []
    for c in coords_cols:
        row = {i: v for i, v in enumerate(c) if v != ring.zero}
        if row:
            rows.append(row)
    pivots = _reduce_rows_field(rows, r, ring)
    pivot_cols = {c for c, _ in pivots}
    invs = KModuleInvariants(r - len(pivot_cols))
    gens = []
    for i in range(r):
        if i not in pivot_cols:
            e = Matrix.column(ring, [ring.one if k == i else ring.zero for k in range(r)])
            gens.append(basis * e)
    return invs, gens
