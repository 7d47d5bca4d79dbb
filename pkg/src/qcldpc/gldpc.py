"""GLDPC specification, assembly, reduction, pre-lifting, and pipelines.

A GldpcSpec pairs a quasi-cyclic base matrix with a per-row constraint
assignment: None keeps the row as a single-parity check, a
ComponentCode replaces it by the component's parity rows, entrywise
scaled by the (monomial) row entries.  Pre-lifted specs first split the
base over a factor of N and assign components to the split rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .binmat import rank as rank_scalar
from .gf2poly import BinaryPoly, NotInvertible, RingModulus, gcd, inverse_mod, transpose_poly
from .polymat import (
    PolyMatrix,
    circulant_expand,
    identity_matrix,
    lifted_expand,
    matmul_mod,
    minor_det,
    transpose_entrywise,
    zero_matrix,
)
from .construct import GeneratorResult, generator_general, shorten_compose


class ComponentCode:
    """Binary parity-check matrix of a constraint code.

    parity is a p x q 0/1 matrix.  When the last p columns form an
    identity the code is in [M | I] form and the reductions below can
    eliminate the identity positions; the split is detected
    automatically (rightmost contiguous identity block) or can be given
    explicitly as identity_start.
    """

    def __init__(self, parity, identity_start=None):
        rows = tuple(tuple(int(b) for b in row) for row in parity)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("parity must be a nonempty rectangular matrix")
        if any(b not in (0, 1) for r in rows for b in r):
            raise ValueError("parity entries must be 0 or 1")
        self.parity = rows
        if identity_start is None:
            identity_start = self._detect_identity()
        elif not self._is_identity_at(identity_start):
            raise ValueError(f"columns {identity_start}.. do not form an identity")
        self.identity_start = identity_start

    @property
    def p(self):
        return len(self.parity)

    @property
    def q(self):
        return len(self.parity[0])

    @classmethod
    def spc(cls, q):
        return cls([(1,) * q])

    @property
    def is_spc(self):
        return self.p == 1 and all(b == 1 for b in self.parity[0])

    def _is_identity_at(self, start):
        if start < 0 or start + self.p > self.q:
            return False
        return all(
            self.parity[r][start + c] == (1 if r == c else 0)
            for r in range(self.p)
            for c in range(self.p)
        )

    def _detect_identity(self):
        for start in range(self.q - self.p, -1, -1):
            if self._is_identity_at(start):
                return start
        return None

    @property
    def systematic_split(self):
        """(M rows, identity column range) when parity = [M | I]."""
        if self.identity_start is None or self.identity_start + self.p != self.q:
            return None
        M = tuple(row[: self.identity_start] for row in self.parity)
        return M, range(self.identity_start, self.q)

    @property
    def M(self):
        split = self.systematic_split
        if split is None:
            raise ValueError("component is not in [M | I] form")
        return split[0]

    def __eq__(self, other):
        return isinstance(other, ComponentCode) and self.parity == other.parity

    def __repr__(self):
        return f"ComponentCode(p={self.p}, q={self.q})"

    def to_dict(self):
        d = {"parity": ["".join(str(b) for b in row) for row in self.parity]}
        if self.identity_start is not None:
            d["identity_start"] = self.identity_start
        return d

    @classmethod
    def from_dict(cls, d):
        rows = [[int(ch) for ch in row] for row in d["parity"]]
        return cls(rows, d.get("identity_start"))


@dataclass
class GldpcSpec:
    """Base constraint matrix plus per-row component assignment.

    For pre-lifted specs (prelift = (N1, N2) with N = N1 * N2) the
    assignment addresses the rows of the split base, N1 per base row.
    """

    base: PolyMatrix
    assignment: tuple
    prelift: tuple | None = None

    def __post_init__(self):
        if self.base.modulus is None:
            raise ValueError("base must carry a ring modulus")
        self.assignment = tuple(self.assignment)
        eff = self.effective_matrix()
        if len(self.assignment) != eff.nrows:
            raise ValueError(
                f"assignment length {len(self.assignment)} != {eff.nrows} constraint rows"
            )
        for i, comp in enumerate(self.assignment):
            if comp is None:
                continue
            weight = sum(1 for p in eff.rows[i] if not p.is_zero())
            if comp.q != weight:
                raise ValueError(
                    f"component length {comp.q} != weight {weight} of constraint row {i}"
                )
        rate = design_rate(self)
        if not 0 < rate < 1:
            raise ValueError(f"design rate {rate} outside (0, 1)")

    def effective_matrix(self):
        """The constraint matrix the assignment addresses."""
        if self.prelift is None:
            return self.base
        N1, N2 = self.prelift
        if N1 * N2 != self.base.modulus.N:
            raise ValueError("prelift factors must multiply to N")
        if N1 != 2:
            raise ValueError("only a pre-lift factor of 2 is supported")
        return split_even_odd(self.base)

    def to_json_dict(self):
        d = {"N": self.base.modulus.N}
        if self.prelift is not None:
            d["N1"] = self.prelift[0]
        d["exponents"] = _base_exponents(self.base)
        d["assignment"] = [
            None if c is None else c.to_dict() for c in self.assignment
        ]
        return d

    @classmethod
    def from_json_dict(cls, d):
        m = RingModulus(d["N"])
        base = base_from_exponents(d["exponents"], m)
        assignment = [
            None if c is None else ComponentCode.from_dict(c)
            for c in d["assignment"]
        ]
        if d.get("alternative_form"):
            # The variant with lifted component blocks on the monomial
            # row is column-equivalent; canonicalize by moving the
            # component onto the all-ones row.
            assignment = list(reversed(assignment))
        prelift = None
        if "N1" in d and d["N1"]:
            prelift = (d["N1"], m.N // d["N1"])
        return cls(base, tuple(assignment), prelift)


def base_from_exponents(exponents, modulus):
    """The two-row constraint form [all ones; monomials x^e]."""
    ones = [BinaryPoly(1)] * len(exponents)
    mono = [
        modulus.reduce(BinaryPoly(1) << (e % modulus.N)) for e in exponents
    ]
    return PolyMatrix([ones, mono], modulus)


def _base_exponents(base):
    exps = []
    for p in base.rows[1]:
        es = p.exponents()
        if len(es) != 1:
            raise ValueError("second base row must be monomial")
        exps.append(es[0])
    return exps


def design_rate(spec):
    """1 - (sum of parity rows) / n_v, counting 1 per plain SPC row."""
    eff = spec.effective_matrix()
    parity = sum(1 if c is None else c.p for c in spec.assignment)
    return 1 - Fraction(parity, eff.ncols)


def _validate_base_form(H):
    if H.nrows != 2:
        raise ValueError("expected the two-row all-ones/monomial form")
    if any(p.bits != 1 for p in H.rows[0]):
        raise ValueError("first row must be all ones")
    for p in H.rows[1]:
        if len(p.exponents()) != 1:
            raise ValueError("second row must have monomial entries")


def _component_rows(row, comp, modulus):
    """Component parity rows placed at the row's support, entrywise scaled."""
    support = [c for c, p in enumerate(row) if not p.is_zero()]
    if comp.q != len(support):
        raise ValueError(
            f"component length {comp.q} != constraint row weight {len(support)}"
        )
    for c in support:
        if len(row[c].exponents()) != 1:
            raise ValueError("generalized rows must have monomial entries")
    out = []
    for r in range(comp.p):
        new = [BinaryPoly(0)] * len(row)
        for s, c in enumerate(support):
            if comp.parity[r][s]:
                new[c] = row[c]
            # a zero component bit leaves a zero entry
        out.append(new)
    return out


def assemble_partial(H, comp):
    """Displayed stack [monomial row; component rows] for a 2-row base.

    The all-ones row is generalized by comp (in [M | I] form); the
    monomial row stays as a plain SPC constraint.  An SPC component
    returns H unchanged.
    """
    _validate_base_form(H)
    if comp.is_spc:
        return H
    if comp.systematic_split is None:
        raise ValueError("component must be in [M | I] form")
    rows = [H.row(1)] + _component_rows(H.rows[0], comp, H.modulus)
    return PolyMatrix(rows, H.modulus)


def reduce_partial(H, comp):
    """Eliminate the identity block: (H_short 1 x m, M as a PolyMatrix).

    f_c = e_c + sum_s e_{I_s} * M[s][c] over the monomial entries e of
    the second base row.
    """
    _validate_base_form(H)
    split = comp.systematic_split
    if split is None:
        raise ValueError("component must be in [M | I] form")
    M, i_range = split
    m_count = comp.q - comp.p
    if comp.q != H.ncols:
        raise ValueError("component length must equal the base width")
    mod = H.modulus
    mono = H.rows[1]
    f_row = []
    for c in range(m_count):
        f = mono[c]
        for s in range(comp.p):
            if M[s][c]:
                f = f + mono[i_range[s]]
        f_row.append(mod.reduce(f))
    H_short = PolyMatrix([f_row], mod)
    M_poly = PolyMatrix([[BinaryPoly(b) for b in row] for row in M], mod)
    return H_short, M_poly


def gshort_forms(H_short, pivot=None):
    """The plain and gcd-divided generator forms for a single-row H_short.

    Returns (G_short, G_short_reduced).  Rows pair the pivot entry with
    each other entry; the reduced form divides those pairs by
    g = gcd(f_1, ..., f_m, x^N + 1) in GF(2)[x].  Rows built from
    f = (x^N + 1)/g are appended unless g = 1 makes them vanish.  The
    pivot defaults to the last entry and is re-selected to one whose
    ring gcd equals g when needed.
    """
    if H_short.nrows != 1:
        raise ValueError("H_short must be a single polynomial row")
    mod = H_short.modulus
    if mod is None:
        raise ValueError("a ring modulus is required")
    fs = H_short.rows[0]
    m_count = len(fs)
    if all(p.is_zero() for p in fs):
        raise ValueError("all entries vanish")
    g_poly = BinaryPoly(0)
    for p in fs:
        g_poly = gcd(g_poly, p)
    g = gcd(g_poly, mod.poly)

    def ring_gcd(i):
        return gcd(fs[i - 1], mod.poly)

    if pivot is None:
        pivot = m_count
        if ring_gcd(pivot) != g:
            pivot = next(
                (i for i in range(1, m_count + 1) if ring_gcd(i) == g), None
            )
            if pivot is None:
                raise ValueError("no entry attains the common ring gcd")
    elif ring_gcd(pivot) != g:
        raise ValueError(f"entry {pivot} does not attain the common ring gcd")

    f_piv = fs[pivot - 1]
    plain_rows, reduced_rows = [], []
    for j in range(1, m_count + 1):
        if j == pivot:
            continue
        row = [BinaryPoly(0)] * m_count
        row[j - 1] = transpose_poly(mod.reduce(f_piv), mod)
        row[pivot - 1] = transpose_poly(mod.reduce(fs[j - 1]), mod)
        plain_rows.append(row)
        red = [BinaryPoly(0)] * m_count
        red[j - 1] = transpose_poly(mod.reduce(f_piv // g), mod)
        red[pivot - 1] = transpose_poly(mod.reduce(fs[j - 1] // g), mod)
        reduced_rows.append(red)
    if g.bits != 1:
        f = mod.poly // g
        ft = transpose_poly(mod.reduce(f), mod)
        for i in range(m_count):
            row = [BinaryPoly(0)] * m_count
            row[i] = ft
            plain_rows.append(row)
        red = [BinaryPoly(0)] * m_count
        red[pivot - 1] = ft
        reduced_rows.append(red)
    if not plain_rows or not reduced_rows:
        raise ValueError("kernel is trivial; no generator rows exist")
    return PolyMatrix(plain_rows, mod), PolyMatrix(reduced_rows, mod)


def assemble_full(H, comp_top, comp_bottom):
    """Stack with both base rows generalized.

    comp_top rows are entrywise scaled by the monomial row; comp_bottom
    (in [M | I] form) sits plain on the all-ones row.
    """
    _validate_base_form(H)
    if comp_bottom.systematic_split is None:
        raise ValueError("bottom component must be in [M | I] form")
    rows = _component_rows(H.rows[1], comp_top, H.modulus)
    rows += _component_rows(H.rows[0], comp_bottom, H.modulus)
    return PolyMatrix(rows, H.modulus)


def reduce_full(H, comp_top, comp_bottom):
    """k x m short matrix: lifted M1 + lifted M2 * M.

    M1/M2 are comp_top's columns at comp_bottom's M/identity positions
    and the lifting exponents come from the monomial base row.
    """
    _validate_base_form(H)
    split = comp_bottom.systematic_split
    if split is None:
        raise ValueError("bottom component must be in [M | I] form")
    M, i_range = split
    if comp_top.q != H.ncols or comp_bottom.q != H.ncols:
        raise ValueError("component lengths must equal the base width")
    mod = H.modulus
    m_count = comp_bottom.q - comp_bottom.p
    mono = H.rows[1]
    M1 = [row[:m_count] for row in comp_top.parity]
    M2 = [[row[i] for i in i_range] for row in comp_top.parity]
    lifted_M1 = lifted_expand(M1, mono[:m_count], mod)
    lifted_M2 = lifted_expand(M2, [mono[i] for i in i_range], mod)
    M_poly = PolyMatrix([[BinaryPoly(b) for b in row] for row in M], mod)
    prod = matmul_mod(lifted_M2, M_poly)
    rows = [
        [mod.add(lifted_M1.rows[r][c], prod.rows[r][c]) for c in range(m_count)]
        for r in range(comp_top.p)
    ]
    return PolyMatrix(rows, mod)


def prelift_entry(g, N1, m2):
    """N1 x N1 block over modulus m2 replacing one entry over N1 * m2.N.

    Decomposes g(x) = sum_t x^t g_t(x^N1): g_0 sits on the diagonal,
    with x * g_{N1-1} immediately above and g_1 immediately below.
    """
    N = N1 * m2.N
    parts = [0] * N1
    bits = g.bits
    e = 0
    while bits:
        if bits & 1:
            parts[e % N1] |= 1 << ((e % N) // N1)
        bits >>= 1
        e += 1
    comps = [m2.reduce(BinaryPoly(b)) for b in parts]
    rows = []
    for r in range(N1):
        row = []
        for c in range(N1):
            part = comps[(r - c) % N1]
            if r < c:
                part = m2.mul(part, BinaryPoly(2))
            row.append(part)
        rows.append(row)
    return PolyMatrix(rows, m2)


def prelift_matrix(H, N1):
    """Blockwise pre-lift of every entry; modulus drops to N / N1."""
    mod = H.modulus
    if mod is None:
        raise ValueError("a ring modulus is required")
    if mod.N % N1:
        raise ValueError(f"N={mod.N} is not divisible by N1={N1}")
    m2 = RingModulus(mod.N // N1)
    blocks = [[prelift_entry(p, N1, m2) for p in row] for row in H.rows]
    rows = []
    for i in range(H.nrows):
        for r in range(N1):
            rows.append(
                [blocks[i][j].rows[r][c] for j in range(H.ncols) for c in range(N1)]
            )
    return PolyMatrix(rows, m2)


def split_even_odd(H):
    """Pre-lift by 2 with columns regrouped by exponent parity.

    For the two-row all-ones/monomial base the result is a canonical
    four-row layout over column groups [even res-0 | even res-1 |
    odd res-0 | odd res-1].
    """
    _validate_base_form(H)
    if H.modulus.N % 2:
        raise ValueError("an even modulus is required")
    exps = [p.exponents()[0] for p in H.rows[1]]
    even = [c for c, e in enumerate(exps) if e % 2 == 0]
    odd = [c for c, e in enumerate(exps) if e % 2 == 1]
    P = prelift_matrix(H, 2)
    order = (
        [2 * c for c in even]
        + [2 * c + 1 for c in even]
        + [2 * c for c in odd]
        + [2 * c + 1 for c in odd]
    )
    rows = [[P.rows[r][j] for j in order] for r in range(P.nrows)]
    return PolyMatrix(rows, P.modulus)


def reduce_prelift(H, comp):
    """Short matrix and outer map for the split-and-generalize layout.

    The split base's first three rows are generalized by comp = [M | I]
    (M is n x m for m even and n odd exponents) and the fourth stays
    SPC.  Eliminating the identity positions leaves H_1_short
    ((n+1) x 2m) over the even groups and the outer map diag(M, M)
    recovering the odd groups.
    """
    _validate_base_form(H)
    mod = H.modulus
    if mod.N % 2:
        raise ValueError("an even modulus is required")
    split = comp.systematic_split
    if split is None:
        raise ValueError("component must be in [M | I] form")
    M, _ = split
    exps = [p.exponents()[0] for p in H.rows[1]]
    j_exps = [e // 2 for e in exps if e % 2 == 0]
    k_exps = [(e - 1) // 2 for e in exps if e % 2 == 1]
    m_count, n_count = len(j_exps), len(k_exps)
    if comp.p != n_count or comp.q != m_count + n_count:
        raise ValueError(
            f"component must be {n_count} x {m_count + n_count} in [M | I] form"
        )
    m2 = RingModulus(mod.N // 2)

    def mono(e):
        return m2.reduce(BinaryPoly(1) << (e % m2.N))

    zero = BinaryPoly(0)
    rows = []
    for r in range(n_count):
        left = [mono(j_exps[c]) if M[r][c] else zero for c in range(m_count)]
        right = [mono(k_exps[r] + 1) if M[r][c] else zero for c in range(m_count)]
        rows.append(left + right)
    last_left = []
    for c in range(m_count):
        acc = zero
        for r in range(n_count):
            if M[r][c]:
                acc = acc + mono(k_exps[r])
        last_left.append(m2.reduce(acc))
    last_right = [mono(j) for j in j_exps]
    rows.append(last_left + last_right)
    H1_short = PolyMatrix(rows, m2)

    M_rows = [[BinaryPoly(b) for b in row] for row in M]
    A_rows = [row + [zero] * m_count for row in M_rows]
    A_rows += [[zero] * m_count + row for row in M_rows]
    return H1_short, PolyMatrix(A_rows, m2)


def assembled_parity(spec):
    """All constraint rows as one PolyMatrix (SPC rows plus component rows)."""
    eff = spec.effective_matrix()
    rows = []
    for i, comp in enumerate(spec.assignment):
        if comp is None:
            rows.append(eff.row(i))
        else:
            rows.extend(_component_rows(eff.rows[i], comp, eff.modulus))
    return PolyMatrix(rows, eff.modulus)


def expand_binary(spec):
    """Full (sum p_i * N) x (n_v * N) binary parity-check matrix."""
    return circulant_expand(assembled_parity(spec))


def construct_generator(spec):
    """Reduce, synthesize on the short matrix, and compose back.

    The result is verified against the assembled constraints and the
    binary expansion rank; Incomplete propagates from the synthesis on
    the short matrix.
    """
    eff = spec.effective_matrix()
    mod = eff.modulus
    dim = eff.ncols * mod.N - rank_scalar(expand_binary(spec))
    comps = [c for c in spec.assignment if c is not None]

    if spec.prelift is not None:
        if (
            len(spec.assignment) != 4
            or spec.assignment[3] is not None
            or len(comps) != 3
            or any(c != comps[0] for c in comps)
        ):
            raise ValueError(
                "pre-lifted synthesis needs the first three split rows "
                "generalized by one component and the fourth plain"
            )
        H_short, outer = reduce_prelift(spec.base, comps[0])
        inner = generator_general(H_short)
        G = shorten_compose(inner.matrix, outer)
    elif not comps:
        inner = generator_general(eff)
        G = inner.matrix
    elif eff.nrows == 2 and len(comps) == 1 and spec.assignment[0] is not None:
        H_short, M_poly = reduce_partial(eff, comps[0])
        inner = generator_general(H_short)
        G = shorten_compose(inner.matrix, M_poly)
    elif eff.nrows == 2 and len(comps) == 2:
        comp_bottom, comp_top = spec.assignment
        H_short = reduce_full(eff, comp_top, comp_bottom)
        M_poly = PolyMatrix(
            [[BinaryPoly(b) for b in row] for row in comp_bottom.M], mod
        )
        inner = generator_general(H_short)
        G = shorten_compose(inner.matrix, M_poly)
    else:
        raise ValueError("spec is not reducible to a short-matrix pipeline")

    product = matmul_mod(G, transpose_entrywise(assembled_parity(spec)))
    if any(not p.is_zero() for row in product.rows for p in row):
        raise RuntimeError("composed generator fails the constraint check")
    achieved = rank_scalar(circulant_expand(G))
    return GeneratorResult(
        matrix=G,
        row_provenance=list(inner.row_provenance),
        rank=achieved,
        target_dimension=dim,
    )


@dataclass
class SchurMeta:
    """Bookkeeping from schur_reduce for recomposing generators."""

    pivot_rows: tuple
    pivot_cols: tuple
    rest_cols: tuple
    det: BinaryPoly


def schur_reduce(H, pivot_rows, pivot_cols=None):
    """Eliminate an invertible block of H against the remaining rows.

    pivot_rows (1-based) select the equations solved for the pivot
    columns; with pivot_cols=None every column block of matching size
    is tried in order and NotInvertible is raised when none works.
    Returns (H_rest, T, meta) where H_rest is the reduced matrix on the
    remaining columns and T recomposes generator rows: a row v of a
    generator for ker(H_rest) extends to the pivot columns as v * T.
    """
    mod = H.modulus
    if mod is None:
        raise ValueError("a ring modulus is required")
    pivot_rows = tuple(sorted(set(pivot_rows)))
    if pivot_cols is None:
        for cols in combinations(range(1, H.ncols + 1), len(pivot_rows)):
            try:
                return schur_reduce(H, pivot_rows, cols)
            except NotInvertible:
                continue
        raise NotInvertible("no invertible pivot column block")
    pivot_cols = tuple(sorted(set(pivot_cols)))
    if len(pivot_cols) != len(pivot_rows):
        raise ValueError("pivot row and column counts must match")
    rest_rows = tuple(i for i in range(1, H.nrows + 1) if i not in pivot_rows)
    rest_cols = tuple(j for j in range(1, H.ncols + 1) if j not in pivot_cols)
    B = H.submatrix([i - 1 for i in pivot_rows], [j - 1 for j in pivot_cols])
    B_inv, det = _invert(B, mod)
    A = H.submatrix([i - 1 for i in pivot_rows], [j - 1 for j in rest_cols])
    BA = matmul_mod(B_inv, A)
    if rest_rows:
        R_pivot = H.submatrix(
            [i - 1 for i in rest_rows], [j - 1 for j in pivot_cols]
        )
        R_rest = H.submatrix(
            [i - 1 for i in rest_rows], [j - 1 for j in rest_cols]
        )
        fold = matmul_mod(R_pivot, BA)
        rows = [
            [
                mod.add(R_rest.rows[r][c], fold.rows[r][c])
                for c in range(len(rest_cols))
            ]
            for r in range(len(rest_rows))
        ]
        H_rest = PolyMatrix(rows, mod)
    else:
        H_rest = None
    T = transpose_entrywise(BA)
    return H_rest, T, SchurMeta(pivot_rows, pivot_cols, rest_cols, det)


def schur_recompose(G_rest, T, meta, ncols):
    """Place reduced generator rows back into the original column order."""
    ext = matmul_mod(G_rest, T)
    rows = []
    for r in range(G_rest.nrows):
        row = [BinaryPoly(0)] * ncols
        for c, j in enumerate(meta.rest_cols):
            row[j - 1] = G_rest.rows[r][c]
        for c, j in enumerate(meta.pivot_cols):
            row[j - 1] = ext.rows[r][c]
        rows.append(row)
    return PolyMatrix(rows, G_rest.modulus)


def _invert(B, mod):
    """Ring inverse of a square PolyMatrix via the adjugate."""
    n = B.nrows
    det = mod.reduce(minor_det(B))
    if gcd(det, mod.poly).bits != 1:
        raise NotInvertible("pivot block determinant shares a factor with x^N+1")
    inv_det = inverse_mod(det, mod)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            cof = minor_det(
                B,
                tuple(r + 1 for r in range(n) if r != j),
                tuple(c + 1 for c in range(n) if c != i),
            )
            row.append(mod.mul(mod.reduce(cof), inv_det))
        rows.append(row)
    return PolyMatrix(rows, mod), det


def save_spec(spec, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec.to_json_dict(), fh, indent=2)
        fh.write("\n")


def load_spec(path):
    with open(path, encoding="utf-8") as fh:
        return GldpcSpec.from_json_dict(json.load(fh))
