"""Generator matrices for quasi-cyclic codes from polynomial minors.

Rows are produced in the generator-row sense: a row vector v(x) is a
valid codeword row exactly when matmul_mod([v], transpose_entrywise(H))
vanishes.  The binary expansion of a stack of such rows is a generator
matrix for the expanded code once its GF(2) rank reaches the code
dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .binmat import RowEchelon
from .gf2poly import BinaryPoly, NotInvertible, gcd, inverse_mod, transpose_poly
from .polymat import (
    PolyMatrix,
    circulant_expand,
    index_set,
    matmul_mod,
    minor_det,
    transpose_entrywise,
)
from .rank import rank_qc, rank_scalar


class Incomplete(RuntimeError):
    """Raised when minor-based rows cannot reach the code dimension.

    The partial result (with whatever rank was achieved) is attached.
    """

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


@dataclass
class RowOrigin:
    """How a generator row was produced."""

    kind: str  # "lemma1" | "lemma1_reduced" | "lemma2" | "shortened"
    S: tuple = ()
    T: tuple = ()
    a: BinaryPoly | None = None
    f: BinaryPoly | None = None

    def to_dict(self):
        d = {"kind": self.kind}
        if self.S:
            d["S"] = list(self.S)
        if self.T:
            d["T"] = list(self.T)
        if self.a is not None:
            d["a"] = self.a.to_text()
        if self.f is not None:
            d["f"] = self.f.to_text()
        return d


@dataclass
class GeneratorResult:
    """A (possibly partial) polynomial generator matrix."""

    matrix: PolyMatrix
    row_provenance: list = field(default_factory=list)
    rank: int = 0
    target_dimension: int = 0

    @property
    def complete(self):
        return self.rank == self.target_dimension

    def min_row_weight(self):
        """Smallest binary weight over the generator rows."""
        return min(sum(p.weight() for p in row) for row in self.matrix.rows)

    def to_dict(self):
        return {
            "rows": self.matrix.to_text_rows(),
            "N": self.matrix.modulus.N,
            "row_provenance": [o.to_dict() for o in self.row_provenance],
            "rank": self.rank,
            "target_dimension": self.target_dimension,
            "complete": self.complete,
            "min_row_weight": self.min_row_weight(),
        }


def codeword_lemma1(H, S):
    """Codeword row from an (n_c + 1)-column selection S (1-based).

    Position i in S carries t(minor of H with column i removed from S);
    all minors are computed in plain GF(2)[x] and then projected.
    """
    m = _require_modulus(H)
    S = index_set(S, H.ncols)
    if len(S) != H.nrows + 1:
        raise ValueError("S must have n_c + 1 columns")
    row = [BinaryPoly(0)] * H.ncols
    for i in S:
        delta = minor_det(H, None, tuple(j for j in S if j != i))
        row[i - 1] = transpose_poly(m.reduce(delta), m)
    return row


def codeword_lemma1_reduced(H, S):
    """Same as codeword_lemma1 but divided by the gcd of the minors.

    The division happens in GF(2)[x] before projection.  Returns
    (row, a) where a is the common divisor; raises ValueError when
    every minor vanishes.
    """
    m = _require_modulus(H)
    S = index_set(S, H.ncols)
    if len(S) != H.nrows + 1:
        raise ValueError("S must have n_c + 1 columns")
    minors = {
        i: minor_det(H, None, tuple(j for j in S if j != i)) for i in S
    }
    a = BinaryPoly(0)
    for d in minors.values():
        a = gcd(a, d)
    if a.is_zero():
        raise ValueError("all minors vanish; nothing to divide")
    row = [BinaryPoly(0)] * H.ncols
    for i, d in minors.items():
        row[i - 1] = transpose_poly(m.reduce(d // a), m)
    return row, a


def codeword_lemma2(H, T, S, f):
    """Codeword row from row set T (size s) and column set S (size s+1).

    Valid exactly when f * minor(T + {j}, S) vanishes mod x^N + 1 for
    every row j outside T; returns None otherwise.  Position i in S
    carries t(f * minor(T, S \\ i)).
    """
    m = _require_modulus(H)
    T = index_set(T, H.nrows)
    S = index_set(S, H.ncols)
    if len(S) != len(T) + 1:
        raise ValueError("S must be one column larger than T")
    for j in range(1, H.nrows + 1):
        if j in T:
            continue
        delta = minor_det(H, tuple(sorted(T + (j,))), S)
        if not m.reduce(f * delta).is_zero():
            return None
    row = [BinaryPoly(0)] * H.ncols
    for i in S:
        delta = minor_det(H, T, tuple(j for j in S if j != i))
        row[i - 1] = transpose_poly(m.reduce(f * delta), m)
    return row


def generator_case1(H, S=None):
    """Generator via an invertible n_c x n_c minor (full-rank case).

    Requires gcd(minor_S, x^N + 1) = 1; raises NotInvertible otherwise.
    Returns (result, standard) where standard is the result scaled into
    standard form by the inverse of the transposed minor.
    """
    m = _require_modulus(H)
    if S is None:
        S = tuple(range(1, H.nrows + 1))
    S = index_set(S, H.ncols)
    if len(S) != H.nrows:
        raise ValueError("S must select n_c columns")
    delta_S = minor_det(H, None, S)
    if gcd(delta_S, m.poly).bits != 1:
        raise NotInvertible(
            f"minor over columns {S} is not invertible mod x^{m.N}+1"
        )
    rows, provenance = [], []
    for c in range(1, H.ncols + 1):
        if c in S:
            continue
        Sc = tuple(sorted(S + (c,)))
        rows.append(codeword_lemma1(H, Sc))
        provenance.append(RowOrigin("lemma1", S=Sc))
    G = PolyMatrix(rows, m)
    result = GeneratorResult(
        matrix=G,
        row_provenance=provenance,
        rank=rank_scalar(circulant_expand(G)),
        target_dimension=rank_qc(H, m).dimension,
    )
    scale = inverse_mod(transpose_poly(m.reduce(delta_S), m), m)
    standard = PolyMatrix(
        [[m.mul(scale, p) for p in row] for row in G.rows], m
    )
    return result, standard


def generator_general(H, modulus=None):
    """Greedy generator synthesis from minor-based codeword rows.

    Plain lemma-1 rows over the best column selection are laid down first,
    then minimal-f lemma-2 rows are appended until the expansion rank
    reaches the code dimension.  If the plain rows cannot complete, the
    gcd-reduced variant is tried; if that also fails, Incomplete is
    raised with the best partial attached.
    """
    m = modulus or _require_modulus(H)
    if H.modulus is None:
        H = PolyMatrix(H.rows, m)
    report = rank_qc(H, m)
    target = report.dimension
    if target == 0:
        raise ValueError("code has dimension 0; no generator exists")

    S_best = _best_column_selection(H, m)
    for reduce_rows in (False, True):
        result = _greedy_build(H, m, target, S_best, reduce_rows)
        if result.complete:
            return result
        if not reduce_rows:
            plain_partial = result
    best = max((plain_partial, result), key=lambda r: r.rank)
    raise Incomplete(
        f"reached rank {best.rank} of {target}; minor-based rows exhausted",
        best,
    )


def _best_column_selection(H, m):
    """n_c-subset of columns whose minor has the smallest-degree ring gcd."""
    best, best_deg = None, None
    for S in combinations(range(1, H.ncols + 1), H.nrows):
        delta = minor_det(H, None, S)
        if delta.is_zero():
            continue
        deg = gcd(delta, m.poly).degree
        if best_deg is None or deg < best_deg:
            best, best_deg = S, deg
            if deg == 0:
                break
    return best


def _greedy_build(H, m, target, S_best, reduce_rows):
    N = m.N
    tracker = RowEchelon()
    rows, provenance = [], []

    def admit(row, origin):
        grew = False
        for bits in _expansion_rows(row, N):
            grew = tracker.add(bits) or grew
        if grew:
            rows.append(row)
            provenance.append(origin)
        return tracker.rank >= target

    done = False
    if S_best is not None:
        for c in range(1, H.ncols + 1):
            if done or c in S_best:
                continue
            Sc = tuple(sorted(S_best + (c,)))
            if reduce_rows:
                try:
                    row, a = codeword_lemma1_reduced(H, Sc)
                except ValueError:
                    continue
                done = admit(row, RowOrigin("lemma1_reduced", S=Sc, a=a))
            else:
                done = admit(codeword_lemma1(H, Sc), RowOrigin("lemma1", S=Sc))

    for s in range(H.nrows - 1, -1, -1):
        if done:
            break
        candidates = []
        for T in combinations(range(1, H.nrows + 1), s):
            for S in combinations(range(1, H.ncols + 1), s + 1):
                f = _minimal_f(H, m, T, S)
                row = codeword_lemma2(H, T, S, f)
                if row is None or all(p.is_zero() for p in row):
                    continue
                candidates.append((row, RowOrigin("lemma2", S=S, T=T, f=f)))
        # Within a level, commit whichever candidate grows the span the
        # most; re-evaluate after each commit since gains shrink.
        while candidates and not done:
            gains = []
            for row, origin in candidates:
                probe = tracker.copy()
                for bits in _expansion_rows(row, N):
                    probe.add(bits)
                gains.append(probe.rank - tracker.rank)
            best = max(range(len(candidates)), key=lambda i: gains[i])
            if gains[best] == 0:
                break
            row, origin = candidates.pop(best)
            done = admit(row, origin)

    if not rows:
        rows = [[BinaryPoly(0)] * H.ncols]
        provenance = [RowOrigin("lemma2", f=BinaryPoly(0))]
    return GeneratorResult(
        matrix=PolyMatrix(rows, m),
        row_provenance=provenance,
        rank=tracker.rank,
        target_dimension=target,
    )


def _minimal_f(H, m, T, S):
    """Smallest f making the lemma-2 row over (T, S) a codeword."""
    g = BinaryPoly(0)
    for j in range(1, H.nrows + 1):
        if j not in T:
            g = gcd(g, minor_det(H, tuple(sorted(T + (j,))), S))
    g_ring = gcd(g, m.poly)
    return m.poly // g_ring if not g_ring.is_zero() else BinaryPoly(1)


def _expansion_rows(row, N):
    """Binary rows spanning the same space as the circulant expansion."""
    mask = (1 << N) - 1
    blocks = [p.bits for p in row]
    for r in range(N):
        bits = 0
        for j, b in enumerate(blocks):
            if b:
                rot = ((b << r) & mask) | (b >> (N - r)) if r else b
                bits |= rot << (j * N)
        yield bits


def shorten_compose(G_short, A):
    """Extend a short-code generator across appended identity columns.

    For H = [[H_short, 0], [A, I]] the composed generator is
    [G_short | G_short * transpose_entrywise(A)].
    """
    return G_short.hstack(matmul_mod(G_short, transpose_entrywise(A)))


def verify_generator(H, G, dimension=None):
    """Check zero syndrome and full expansion rank against H.

    dimension overrides the rank_qc computation (useful when H is too
    large for the minor-based formula).
    """
    m = _require_modulus(H)
    product = matmul_mod(G, transpose_entrywise(H))
    if any(p.bits for row in product.rows for p in row):
        return False
    if dimension is None:
        dimension = rank_qc(H, m).dimension
    return rank_scalar(circulant_expand(G)) == dimension


def _require_modulus(H):
    if H.modulus is None:
        raise ValueError("a ring modulus is required")
    return H.modulus
