"""Exact dense linear algebra over GF(2) on label-indexed matrices.

Rows are stored bit-packed as Python ints (bit j of ``bits[i]`` is the entry
at ``(rows[i], cols[j])``), so rank and pivoting reduce to XOR sweeps.  All
operations are pure: every function returns a fresh matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .labels import label_key, sort_labels


class Gf2Error(ValueError):
    """Base error for GF(2) kernel misuse."""


class SingularError(Gf2Error):
    """A principal submatrix required to be nonsingular is singular."""


class LabelError(Gf2Error):
    """A referenced row/column label is missing or duplicated."""


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense binary matrix with ordered row and column labels."""

    rows: tuple
    cols: tuple
    bits: tuple  # bits[i] has bit j set iff entry (rows[i], cols[j]) == 1

    def __post_init__(self):
        if len(set(self.rows)) != len(self.rows):
            raise LabelError("duplicate row labels")
        if len(set(self.cols)) != len(self.cols):
            raise LabelError("duplicate column labels")
        if len(self.bits) != len(self.rows):
            raise Gf2Error("one bit row per row label required")
        width_mask = (1 << len(self.cols)) - 1
        for b in self.bits:
            if b < 0 or b & ~width_mask:
                raise Gf2Error("row bits exceed column count")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_entries(cls, rows, cols, ones):
        """Build from an iterable of (row_label, col_label) positions of 1s."""
        rows = tuple(rows)
        cols = tuple(cols)
        col_index = {c: j for j, c in enumerate(cols)}
        row_index = {r: i for i, r in enumerate(rows)}
        bits = [0] * len(rows)
        for r, c in ones:
            if r not in row_index or c not in col_index:
                raise LabelError(f"entry ({r!r}, {c!r}) outside the matrix")
            bits[row_index[r]] |= 1 << col_index[c]
        return cls(rows, cols, tuple(bits))

    @classmethod
    def from_lists(cls, rows, cols, entries):
        """Build from a list of 0/1 lists, one per row."""
        rows = tuple(rows)
        cols = tuple(cols)
        bits = []
        for vals in entries:
            vals = list(vals)
            if len(vals) != len(cols):
                raise Gf2Error("row length mismatch")
            b = 0
            for j, v in enumerate(vals):
                if v not in (0, 1):
                    raise Gf2Error("entries must be 0 or 1")
                b |= v << j
            bits.append(b)
        if len(bits) != len(rows):
            raise Gf2Error("row count mismatch")
        return cls(rows, cols, tuple(bits))

    @classmethod
    def zeros(cls, rows, cols):
        rows = tuple(rows)
        return cls(rows, tuple(cols), (0,) * len(rows))

    @classmethod
    def identity(cls, labels):
        labels = tuple(labels)
        return cls(labels, labels, tuple(1 << i for i in range(len(labels))))

    # -- access ------------------------------------------------------------

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))

    def entry(self, r, c):
        try:
            i = self.rows.index(r)
            j = self.cols.index(c)
        except ValueError:
            raise LabelError(f"no entry ({r!r}, {c!r})") from None
        return (self.bits[i] >> j) & 1

    def row(self, r):
        try:
            i = self.rows.index(r)
        except ValueError:
            raise LabelError(f"no row {r!r}") from None
        return self.bits[i]

    def to_lists(self):
        n = len(self.cols)
        return [[(b >> j) & 1 for j in range(n)] for b in self.bits]

    def submatrix(self, rows, cols):
        """M[A, B] with the given row/column label orders."""
        rows = tuple(rows)
        cols = tuple(cols)
        row_index = {r: i for i, r in enumerate(self.rows)}
        col_index = {c: j for j, c in enumerate(self.cols)}
        for r in rows:
            if r not in row_index:
                raise LabelError(f"no row {r!r}")
        for c in cols:
            if c not in col_index:
                raise LabelError(f"no column {c!r}")
        src_cols = [col_index[c] for c in cols]
        bits = []
        for r in rows:
            src = self.bits[row_index[r]]
            b = 0
            for j, sj in enumerate(src_cols):
                b |= ((src >> sj) & 1) << j
            bits.append(b)
        return Gf2Matrix(rows, cols, tuple(bits))

    def principal(self, labels):
        """Principal submatrix M[X] keeping this matrix's label order."""
        self._require_square()
        keep = set(labels)
        missing = keep - set(self.rows)
        if missing:
            raise LabelError(f"labels not in matrix: {sort_labels(missing)}")
        kept = tuple(r for r in self.rows if r in keep)
        return self.submatrix(kept, kept)

    def transpose(self):
        n = len(self.rows)
        bits = []
        for j in range(len(self.cols)):
            b = 0
            for i in range(n):
                b |= ((self.bits[i] >> j) & 1) << i
            bits.append(b)
        return Gf2Matrix(self.cols, self.rows, tuple(bits))

    def is_symmetric(self):
        return self.rows == self.cols and self.bits == self.transpose().bits

    def has_zero_diagonal(self):
        self._require_square()
        return all(((self.bits[i] >> i) & 1) == 0 for i in range(len(self.rows)))

    def _require_square(self):
        if self.rows != self.cols:
            raise Gf2Error("operation requires identical row and column labels")

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise Gf2Error("shape/label mismatch in addition")
        return Gf2Matrix(self.rows, self.cols,
                         tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise Gf2Error("inner labels must agree for multiplication")
        out = []
        for abits in self.bits:
            acc = 0
            x = abits
            while x:
                j = (x & -x).bit_length() - 1
                acc ^= other.bits[j]
                x &= x - 1
            out.append(acc)
        return Gf2Matrix(self.rows, other.cols, tuple(out))


def _rank_of_bits(bits):
    basis = []
    r = 0
    for row in bits:
        for piv, b in basis:
            if row & piv:
                row ^= b
        if row:
            basis.append((row & -row, row))
            r += 1
    return r


def rank(matrix: Gf2Matrix) -> int:
    """GF(2) row rank."""
    return _rank_of_bits(matrix.bits)


def det(matrix: Gf2Matrix) -> int:
    """Determinant over GF(2): 1 iff the square matrix has full rank."""
    matrix._require_square()
    return 1 if rank(matrix) == len(matrix.rows) else 0


def is_nonsingular(matrix: Gf2Matrix, labels) -> bool:
    """Whether the principal submatrix M[X] is nonsingular (X = () is)."""
    labels = set(labels)
    sub = matrix.principal(labels)
    return rank(sub) == len(sub.rows)


def inverse(matrix: Gf2Matrix) -> Gf2Matrix:
    """Inverse of a square nonsingular matrix; raises SingularError."""
    matrix._require_square()
    n = len(matrix.rows)
    aug = [matrix.bits[i] | (1 << (n + i)) for i in range(n)]
    pivot_row = 0
    for col in range(n):
        sel = None
        for i in range(pivot_row, n):
            if (aug[i] >> col) & 1:
                sel = i
                break
        if sel is None:
            raise SingularError("matrix is singular over GF(2)")
        aug[pivot_row], aug[sel] = aug[sel], aug[pivot_row]
        for i in range(n):
            if i != pivot_row and ((aug[i] >> col) & 1):
                aug[i] ^= aug[pivot_row]
        pivot_row += 1
    mask = (1 << n) - 1
    return Gf2Matrix(matrix.rows, matrix.rows,
                     tuple((aug[i] >> n) & mask for i in range(n)))


def principal_pivot(matrix: Gf2Matrix, labels) -> Gf2Matrix:
    """Principal pivot transform M*X (block formula, arithmetic mod 2).

    X = () returns the matrix unchanged; a singular M[X] raises
    SingularError so callers can detect invalid pivots.
    """
    matrix._require_square()
    labels = tuple(labels)
    keep = set(labels)
    if len(keep) != len(labels):
        raise LabelError("pivot labels repeat")
    missing = keep - set(matrix.rows)
    if missing:
        raise LabelError(f"labels not in matrix: {sort_labels(missing)}")
    if not keep:
        return matrix
    x_labels = tuple(r for r in matrix.rows if r in keep)
    o_labels = tuple(r for r in matrix.rows if r not in keep)
    a = matrix.submatrix(x_labels, x_labels)
    a_inv = inverse(a)  # SingularError on a singular block
    b = matrix.submatrix(x_labels, o_labels)
    c = matrix.submatrix(o_labels, x_labels)
    d = matrix.submatrix(o_labels, o_labels)
    a_inv_b = a_inv @ b
    c_a_inv = c @ a_inv
    d_new = d + (c_a_inv @ b)  # minus signs vanish mod 2

    order = matrix.rows
    pos = {lab: i for i, lab in enumerate(order)}
    n = len(order)
    out = [0] * n

    def scatter(block, row_labels, col_labels):
        for i, r in enumerate(row_labels):
            src = block.bits[i]
            for j, c_lab in enumerate(col_labels):
                out[pos[r]] |= ((src >> j) & 1) << pos[c_lab]

    scatter(a_inv, x_labels, x_labels)
    scatter(a_inv_b, x_labels, o_labels)
    scatter(c_a_inv, o_labels, x_labels)
    scatter(d_new, o_labels, o_labels)
    return Gf2Matrix(order, order, tuple(out))


def _tracked_echelon(rows_bits):
    """Echelon form with combination tracking.

    Returns a list of (pivot_mask, reduced_row, combo) where combo records
    which input rows were XORed together, or raises Gf2Error if the input
    rows are dependent.
    """
    echelon = []
    for i, row in enumerate(rows_bits):
        combo = 1 << i
        for piv, b, t in echelon:
            if row & piv:
                row ^= b
                combo ^= t
        if not row:
            raise Gf2Error("rows are linearly dependent")
        echelon.append((row & -row, row, combo))
    return echelon


def express_rows(matrix: Gf2Matrix, basis) -> Gf2Matrix:
    """The unique P with P @ M[basis, :] = M.

    The rows indexed by ``basis`` must be independent and span the row space;
    each basis row's P-row is the corresponding unit vector.
    """
    basis = tuple(basis)
    if len(set(basis)) != len(basis):
        raise LabelError("basis labels repeat")
    basis_bits = [matrix.row(r) for r in basis]
    try:
        echelon = _tracked_echelon(basis_bits)
    except Gf2Error:
        raise Gf2Error("basis rows are linearly dependent") from None
    out = []
    for r in matrix.rows:
        v = matrix.row(r)
        combo = 0
        for piv, b, t in echelon:
            if v & piv:
                v ^= b
                combo ^= t
        if v:
            raise Gf2Error(f"row {r!r} is outside the span of the basis")
        out.append(combo)
    return Gf2Matrix(matrix.rows, basis, tuple(out))


def extend_basis(matrix: Gf2Matrix, seed=()) -> tuple:
    """Extend independent seed rows to a row basis of the matrix.

    Deterministic: seed rows come first (in the given order; unordered seeds
    are sorted by label), then remaining rows are scanned greedily in
    ascending label order.
    """
    if isinstance(seed, (set, frozenset)):
        seed = sort_labels(seed)
    seed = tuple(seed)
    if len(set(seed)) != len(seed):
        raise LabelError("seed labels repeat")
    seed_bits = [matrix.row(r) for r in seed]
    try:
        echelon = _tracked_echelon(seed_bits)
    except Gf2Error:
        raise Gf2Error("seed rows are linearly dependent") from None
    chosen = list(seed)
    taken = set(seed)
    for r in sort_labels(matrix.rows):
        if r in taken:
            continue
        v = matrix.row(r)
        for piv, b, _ in echelon:
            if v & piv:
                v ^= b
        if v:
            echelon.append((v & -v, v, 0))
            chosen.append(r)
            taken.add(r)
    return tuple(chosen)


def from_symmetric_entries(labels, ones):
    """Square symmetric zero-diagonal matrix from unordered 1-positions."""
    labels = tuple(labels)
    sym = []
    for r, c in ones:
        if r == c:
            raise Gf2Error("diagonal entries must stay zero")
        sym.append((r, c))
        sym.append((c, r))
    return Gf2Matrix.from_entries(labels, labels, sym)
