"""Exact linear algebra over GF(p) and QQ.

The GF(p) engine stores matrices as int64 numpy arrays with entries in
[0, p).  Large eliminations run blockwise; the block update is a matrix
product carried in float64, which is exact as long as the accumulated
integer values stay below 2^53 (checked: inner dimension must be under
2^53 / (p-1)^2, about 8.7 million for p = 32003).  No rounding can occur,
so the arithmetic is exact despite the float carrier.

QQ matrices use fractions.Fraction rows; they are only used on small
inputs.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_BLOCK = 256


def _matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact (A @ B) % p for int64 arrays with entries in [0, p)."""
    k = A.shape[1]
    if k == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if A.shape[0] * B.shape[1] <= 4096:
        return (A @ B) % p
    if k * (p - 1) ** 2 >= 2**53:
        # exactness bound for the float64 carrier; never hit at our sizes
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        step = (2**53) // ((p - 1) ** 2)
        for s in range(0, k, step):
            out = (out + _matmul_mod(A[:, s : s + step], B[s : s + step], p)) % p
        return out
    C = A.astype(np.float64) @ B.astype(np.float64)
    return np.mod(C, p).astype(np.int64)


class RrefModP:
    """Incremental reduced row echelon form over GF(p).

    Feed row blocks with add_rows(); the object maintains a reduced basis
    of the row space with unit pivots and zeroed pivot columns.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.rows: np.ndarray = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce_rows(self, block: np.ndarray) -> np.ndarray:
        """Return block reduced modulo the current row space (not inserted)."""
        block = np.asarray(block, dtype=np.int64) % self.p
        if self.pivots and block.size:
            coeffs = block[:, self.pivots]
            if coeffs.any():
                block = (block - _matmul_mod(coeffs, self.rows, self.p)) % self.p
        return block

    def add_rows(self, block: np.ndarray) -> int:
        """Insert rows; returns how many new pivots appeared."""
        p = self.p
        block = self.reduce_rows(block)
        new_rows = []
        new_pivs = []
        for i in range(block.shape[0]):
            row = block[i]
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                continue
            # reduce against pivots found inside this block
            for r, c in zip(new_rows, new_pivs):
                v = row[c]
                if v:
                    row = (row - v * r) % p
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                continue
            c = int(nz[0])
            inv = pow(int(row[c]), p - 2, p)
            row = (row * inv) % p
            new_rows.append(row)
            new_pivs.append(c)
        if not new_rows:
            return 0
        newR = np.vstack(new_rows)
        # clear the new pivot columns from the old basis and keep global order
        if self.pivots:
            coeffs = self.rows[:, new_pivs]
            if coeffs.any():
                self.rows = (self.rows - _matmul_mod(coeffs, newR, p)) % p
        allrows = np.vstack([self.rows, newR]) if self.pivots else newR
        allpivs = self.pivots + new_pivs
        order = np.argsort(allpivs, kind="stable")
        self.rows = allrows[order]
        self.pivots = [allpivs[i] for i in order]
        return len(new_pivs)

    def add_rows_blocked(self, M: np.ndarray) -> int:
        added = 0
        for s in range(0, M.shape[0], _BLOCK):
            added += self.add_rows(M[s : s + _BLOCK])
        return added


def rank_mod_p(M: np.ndarray, p: int) -> int:
    r = RrefModP(M.shape[1] if M.ndim == 2 else 0, p)
    if M.ndim == 2 and M.size:
        r.add_rows_blocked(np.asarray(M, dtype=np.int64))
    return r.rank


def rref_mod_p(M: np.ndarray, p: int):
    """Return (R, pivots): reduced row echelon basis of the row space."""
    r = RrefModP(M.shape[1], p)
    if M.size:
        r.add_rows_blocked(np.asarray(M, dtype=np.int64))
    return r.rows, r.pivots


def nullspace_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {v : M v = 0} over GF(p)."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    R, pivots = rref_mod_p(M, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-R[i, j]) % p
    return basis


# ---------------------------------------------------------------------------
# sparse backend (dict-of-columns rows), used below the density threshold


def rank_sparse_mod_p(rows, ncols: int, p: int) -> int:
    """Exact rank from rows given as {col: coeff} dicts."""
    pivots = {}  # col -> reduced row dict
    rank = 0
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            c = min(r)
            if c in pivots:
                piv = pivots[c]
                factor = r[c]
                for cc, vv in piv.items():
                    w = (r.get(cc, 0) - factor * vv) % p
                    if w:
                        r[cc] = w
                    else:
                        r.pop(cc, None)
            else:
                inv = pow(r[c], p - 2, p)
                pivots[c] = {cc: (vv * inv) % p for cc, vv in r.items()}
                rank += 1
                break
    return rank


# ---------------------------------------------------------------------------
# QQ dense (small matrices only)


def rank_fraction(rows) -> int:
    """Exact rank of a list-of-lists Fraction matrix (fraction-free not needed)."""
    M = [list(map(Fraction, r)) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(M)):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        pv = M[row][col]
        M[row] = [x / pv for x in M[row]]
        for i in range(len(M)):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        rank += 1
        row += 1
        if row == len(M):
            break
    return rank


def nullspace_fraction(rows, ncols: int):
    """Basis of the right kernel of a Fraction matrix, as Fraction rows."""
    M = [list(map(Fraction, r)) for r in rows]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(M)):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        pv = M[row][col]
        M[row] = [x / pv for x in M[row]]
        for i in range(len(M)):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
        if row == len(M):
            break
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][j]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------


class ExactMatrix:
    """Exact matrix over a coefficient field with dense/sparse storage.

    Storage is chosen by density: below 20% nonzero entries the sparse
    backend is used (Koszul differentials are sparse, catalecticants
    dense).  rank() is exact; rank(M) == rank(M^T) holds and is property
    tested.
    """

    DENSITY_THRESHOLD = 0.20

    def __init__(self, nrows: int, ncols: int, entries, field, storage=None):
        """entries: dict (i, j) -> coefficient, or a 2D array-like."""
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if isinstance(entries, dict):
            self.entries = {k: v for k, v in entries.items() if v != field.zero}
        else:
            self.entries = {}
            for i, rowvals in enumerate(entries):
                for j, v in enumerate(rowvals):
                    v = field.normalize(v)
                    if v != field.zero:
                        self.entries[(i, j)] = v
        if storage is None:
            total = max(1, nrows * ncols)
            storage = "sparse" if len(self.entries) / total < self.DENSITY_THRESHOLD else "dense"
        self.storage = storage

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.ncols,
            self.nrows,
            {(j, i): v for (i, j), v in self.entries.items()},
            self.field,
            storage=self.storage,
        )

    def to_dense(self):
        if self.field.is_prime_field:
            M = np.zeros((self.nrows, self.ncols), dtype=np.int64)
            for (i, j), v in self.entries.items():
                M[i, j] = v
            return M
        M = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            M[i][j] = v
        return M

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if not self.field.is_prime_field:
            return rank_fraction(self.to_dense())
        if self.storage == "sparse":
            rows = [{} for _ in range(self.nrows)]
            for (i, j), v in self.entries.items():
                rows[i][j] = v
            return rank_sparse_mod_p(rows, self.ncols, self.field.p)
        return rank_mod_p(self.to_dense(), self.field.p)
