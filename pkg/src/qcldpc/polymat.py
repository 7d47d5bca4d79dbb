"""Matrices over GF(2)[x] and GF(2)[x]/(x^N + 1).

Minors are always computed in plain GF(2)[x] (entries are taken as their
reduced representatives, but products are not folded back), because the
rank and codeword constructions need unreduced determinantal divisors.
Index sets for minors are 1-based and strictly increasing, matching the
usual determinant notation.
"""

from __future__ import annotations

from itertools import combinations

from .binmat import BinMatrix
from .gf2poly import BinaryPoly, RingModulus, gcd, transpose_poly


class PolyMatrix:
    """Row-major matrix of BinaryPoly entries, optionally over x^N + 1."""

    __slots__ = ("rows", "modulus")

    def __init__(self, rows, modulus=None):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
        if modulus is not None:
            rows = [[modulus.reduce(p) for p in r] for r in rows]
        self.rows = rows
        self.modulus = modulus

    @classmethod
    def from_text(cls, rows_text, modulus=None):
        """Build from nested lists of polynomial strings."""
        rows = [[BinaryPoly.parse(t, modulus) for t in r] for r in rows_text]
        return cls(rows, modulus)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i, j):
        return self.rows[i][j]

    def row(self, i):
        return list(self.rows[i])

    def submatrix(self, row_idx, col_idx):
        """0-based row/column selection."""
        return PolyMatrix(
            [[self.rows[i][j] for j in col_idx] for i in row_idx], self.modulus
        )

    def hstack(self, other):
        if other.nrows != self.nrows or other.modulus != self.modulus:
            raise ValueError("incompatible hstack")
        return PolyMatrix(
            [self.rows[i] + other.rows[i] for i in range(self.nrows)], self.modulus
        )

    def vstack(self, other):
        if other.ncols != self.ncols or other.modulus != self.modulus:
            raise ValueError("incompatible vstack")
        return PolyMatrix(self.rows + other.rows, self.modulus)

    def __eq__(self, other):
        if isinstance(other, PolyMatrix):
            return self.modulus == other.modulus and self.rows == other.rows
        return NotImplemented

    def __repr__(self):
        mod = f", N={self.modulus.N}" if self.modulus else ""
        return f"PolyMatrix({self.nrows}x{self.ncols}{mod})"

    def to_text_rows(self):
        return [[p.to_text() for p in r] for r in self.rows]


def index_set(indices, upper):
    """Validate a 1-based, strictly increasing index set bounded by upper."""
    idx = tuple(indices)
    if any(i < 1 or i > upper for i in idx):
        raise ValueError(f"index out of range 1..{upper}: {idx}")
    if list(idx) != sorted(set(idx)):
        raise ValueError(f"index set must be sorted and distinct: {idx}")
    return idx


def minor_det(H, row_idx=None, col_idx=None):
    """Unreduced determinant of the selected square submatrix.

    Parameters
    ----------
    H : PolyMatrix
    row_idx, col_idx : 1-based strictly increasing index sets; row_idx
        defaults to all rows (H restricted to col_idx must be square).
    """
    if col_idx is None:
        col_idx = tuple(range(1, H.ncols + 1))
    if row_idx is None:
        row_idx = tuple(range(1, H.nrows + 1))
    row_idx = index_set(row_idx, H.nrows)
    col_idx = index_set(col_idx, H.ncols)
    if len(row_idx) != len(col_idx):
        raise ValueError("minor selection must be square")
    rows = [H.rows[i - 1] for i in row_idx]
    cols = tuple(j - 1 for j in col_idx)
    return _det_over_cols(rows, cols, {})


def _det_over_cols(rows, cols, memo):
    """det of rows[-len(cols):] restricted to cols, memoized on cols."""
    if not cols:
        return BinaryPoly(1)
    got = memo.get(cols)
    if got is not None:
        return got
    row = rows[len(rows) - len(cols)]
    acc = BinaryPoly(0)
    for k, c in enumerate(cols):
        p = row[c]
        if p.bits:
            rest = cols[:k] + cols[k + 1 :]
            acc = acc + p * _det_over_cols(rows, rest, memo)
    memo[cols] = acc
    return acc


def all_minors_gcd(H, size):
    """gcd of every size x size minor in GF(2)[x]; zero if all vanish.

    Stops early once the running gcd reaches 1.
    """
    if size == 0:
        return BinaryPoly(1)
    if size > min(H.nrows, H.ncols):
        raise ValueError("minor size exceeds matrix dimensions")
    acc = BinaryPoly(0)
    for row_sel in combinations(range(H.nrows), size):
        rows = [H.rows[i] for i in row_sel]
        memo = {}
        for col_sel in combinations(range(H.ncols), size):
            d = _det_over_cols(rows, col_sel, memo)
            if d.bits:
                acc = gcd(acc, d)
                if acc.bits == 1:
                    return acc
    return acc


def transpose_entrywise(H):
    """Transpose the matrix and apply the circulant-transpose map entrywise."""
    if H.modulus is None:
        raise ValueError("entrywise transpose needs a ring modulus")
    m = H.modulus
    return PolyMatrix(
        [[transpose_poly(H.rows[i][j], m) for i in range(H.nrows)] for j in range(H.ncols)],
        m,
    )


def matmul_mod(A, B):
    """Matrix product; reduced when either factor carries a modulus."""
    if A.ncols != B.nrows:
        raise ValueError("shape mismatch")
    modulus = A.modulus or B.modulus
    if A.modulus and B.modulus and A.modulus != B.modulus:
        raise ValueError("mismatched moduli")
    out = []
    for i in range(A.nrows):
        row = []
        for j in range(B.ncols):
            acc = BinaryPoly(0)
            for k in range(A.ncols):
                a = A.rows[i][k]
                if a.bits:
                    acc = acc + a * B.rows[k][j]
            row.append(acc)
        out.append(row)
    return PolyMatrix(out, modulus)


def zero_matrix(nrows, ncols, modulus=None):
    return PolyMatrix([[BinaryPoly(0)] * ncols for _ in range(nrows)], modulus)


def identity_matrix(n, modulus=None):
    rows = [[BinaryPoly(1 if i == j else 0) for j in range(n)] for i in range(n)]
    return PolyMatrix(rows, modulus)


def circulant_expand(H):
    """Expand each entry to its N x N circulant (first column = coefficients).

    Entry a(x) becomes the circulant A with A[i, j] = a_((i - j) mod N),
    so the identity-shift I_r corresponds to x^r.
    """
    if H.modulus is None:
        raise ValueError("circulant expansion needs a ring modulus")
    N = H.modulus.N
    mask = (1 << N) - 1
    # Row r of the circulant of a(x) holds the coefficients of x^r * t(a).
    first_rows = [
        [transpose_poly(p, H.modulus).bits for p in row] for row in H.rows
    ]
    rows = []
    for i in range(H.nrows):
        blocks = first_rows[i]
        for r in range(N):
            bits = 0
            for j, tg in enumerate(blocks):
                if tg:
                    shifted = ((tg << r) & mask) | (tg >> (N - r)) if r else tg
                    bits |= shifted << (j * N)
            rows.append(bits)
    return BinMatrix(rows, H.ncols * N)


def lifted_expand(pattern, exponent_polys, modulus):
    """Scale the columns of a 0/1 pattern by given ring elements.

    pattern[r][c] == 1 contributes exponent_polys[c] at position (r, c);
    with the identity pattern this is diag(exponent_polys).
    """
    pattern = [list(r) for r in pattern]
    width = len(pattern[0])
    if len(exponent_polys) != width:
        raise ValueError("one scaling element per column required")
    rows = [
        [exponent_polys[c] if pattern[r][c] else BinaryPoly(0) for c in range(width)]
        for r in range(len(pattern))
    ]
    return PolyMatrix(rows, modulus)


def write_pmx(H, path):
    """Write one matrix row per line, entries separated by ';'."""
    with open(path, "w") as fh:
        for row in H.rows:
            fh.write(";".join(p.to_text() for p in row) + "\n")


def read_pmx(path, modulus=None):
    """Read a ';'-separated polynomial matrix; '#' starts a comment."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            rows.append([BinaryPoly.parse(t, modulus) for t in line.split(";")])
    if not rows:
        raise ValueError(f"no matrix rows in {path}")
    return PolyMatrix(rows, modulus)


def to_json_dict(H):
    d = {"rows": H.to_text_rows()}
    if H.modulus is not None:
        d["N"] = H.modulus.N
    return d


def from_json_dict(d):
    modulus = RingModulus(d["N"]) if "N" in d else None
    return PolyMatrix.from_text(d["rows"], modulus)
