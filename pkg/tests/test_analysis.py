"""Girth computation and distance bounds.

The girth oracle here removes one edge at a time and measures the
shortest path between its endpoints, which is exact on the small random
graphs used; the distance oracle enumerates every message directly.
"""

import math
import random
from collections import deque

import pytest

from conftest import P, in_kernel, random_poly_matrix
from qcldpc.analysis import (
    BudgetExceeded,
    DistanceReport,
    bounds_combine,
    girth,
    low_weight_search,
    min_distance_exact,
)
from qcldpc.binmat import BinMatrix
from qcldpc.construct import generator_case1
from qcldpc.gf2poly import BinaryPoly, RingModulus
from qcldpc.gldpc import base_from_exponents
from qcldpc.polymat import PolyMatrix, circulant_expand, read_pmx
from conftest import data_path


def edge_removal_girth(Hb):
    """Exact girth: shortest u-v path after deleting each edge (u, v)."""
    m = Hb.nrows
    adj = [set() for _ in range(m + Hb.ncols)]
    for i, bits in enumerate(Hb.rows):
        b = bits
        while b:
            j = (b & -b).bit_length() - 1
            adj[i].add(m + j)
            adj[m + j].add(i)
            b &= b - 1
    best = math.inf
    for u in range(len(adj)):
        for v in adj[u]:
            if v < u:
                continue
            dist = {u: 0}
            queue = deque([u])
            while queue:
                a = queue.popleft()
                if a == v:
                    break
                for b in adj[a]:
                    if (a, b) == (u, v) or (b, a) == (v, u):
                        continue
                    if b not in dist:
                        dist[b] = dist[a] + 1
                        queue.append(b)
            if v in dist:
                best = min(best, dist[v] + 1)
    return best


def brute_min_distance(Gb):
    best = 0
    for msg in range(1, 1 << Gb.nrows):
        word = 0
        for i in range(Gb.nrows):
            if msg >> i & 1:
                word ^= Gb.rows[i]
        if word:
            w = word.bit_count()
            if best == 0 or w < best:
                best = w
    return best


def ar4ja_generator():
    H = read_pmx(data_path("ar4ja.pmx"), RingModulus(4))
    result, _ = generator_case1(H)
    return result.matrix


class TestGirth:
    def test_four_cycle(self):
        assert girth(BinMatrix([0b11, 0b11], 2)) == 4

    def test_six_cycle(self):
        assert girth(BinMatrix([0b011, 0b110, 0b101], 3)) == 6

    def test_tree_has_no_cycle(self):
        assert girth(BinMatrix([0b011, 0b100], 3)) == math.inf

    def test_duplicated_exponent_gives_four(self):
        H = base_from_exponents([0, 5, 5], RingModulus(7))
        assert girth(H) == 4

    def test_monomial_star_has_no_cycle(self):
        H = PolyMatrix([[P("1"), P("x^5"), P("x^5")]], RingModulus(7))
        assert girth(H) == math.inf

    def test_polynomial_matrix_needs_modulus(self):
        H = PolyMatrix([[P("1+x")]])
        with pytest.raises(ValueError, match="modulus"):
            girth(H)

    def test_matches_edge_removal_oracle_binary(self):
        rng = random.Random(70)
        for _ in range(30):
            rows = [rng.getrandbits(8) for _ in range(5)]
            Hb = BinMatrix(rows, 8)
            assert girth(Hb) == edge_removal_girth(Hb)

    def test_block_symmetry_shortcut_matches_full_search(self):
        rng = random.Random(71)
        for _ in range(20):
            H = random_poly_matrix(rng, 2, 3, 6)
            assert girth(H) == girth(circulant_expand(H))


class TestMinDistanceExact:
    def test_repetition_row(self):
        assert min_distance_exact(BinMatrix([0b11], 2)) == 2

    def test_matches_brute_enumeration(self):
        rng = random.Random(72)
        for _ in range(20):
            k = rng.randrange(1, 8)
            Gb = BinMatrix([rng.getrandbits(12) for _ in range(k)], 12)
            assert min_distance_exact(Gb) == brute_min_distance(Gb)

    def test_zero_row_space(self):
        assert min_distance_exact(BinMatrix([0, 0], 6)) == 0

    def test_budget_guard(self):
        Gb = BinMatrix([1 << i for i in range(25)], 25)
        with pytest.raises(BudgetExceeded):
            min_distance_exact(Gb)
        assert min_distance_exact(Gb, budget=1 << 25) == 1

    def test_known_small_code(self):
        Gb = circulant_expand(ar4ja_generator())
        assert Gb.shape == (8, 20)
        assert min_distance_exact(Gb) == 4


class TestLowWeightSearch:
    def test_zero_generator(self):
        report = low_weight_search(BinMatrix([0, 0], 4), iterations=10)
        assert report.upper == 0 and report.lower == 0

    def test_single_rows_always_swept(self):
        Gb = BinMatrix([0b111, 0b011], 3)
        report = low_weight_search(Gb, iterations=0)
        assert report.upper == 2
        assert report.witness == 0b011

    def test_deterministic_per_seed(self):
        Gb = circulant_expand(ar4ja_generator())
        a = low_weight_search(Gb, iterations=3000, seed=9)
        b = low_weight_search(Gb, iterations=3000, seed=9)
        assert a == b

    def test_more_iterations_never_worsen(self):
        Gb = circulant_expand(ar4ja_generator())
        small = low_weight_search(Gb, iterations=100, seed=5)
        large = low_weight_search(Gb, iterations=5000, seed=5)
        assert large.upper <= small.upper

    def test_finds_exact_distance_of_small_code(self):
        Gb = circulant_expand(ar4ja_generator())
        report = low_weight_search(Gb, iterations=5000, seed=0)
        assert report.upper == 4
        assert report.witness.bit_count() == 4

    def test_witness_is_a_codeword(self):
        H = read_pmx(data_path("ar4ja.pmx"), RingModulus(4))
        Gb = circulant_expand(ar4ja_generator())
        report = low_weight_search(Gb, iterations=2000, seed=3)
        assert in_kernel(circulant_expand(H), report.witness)


class TestDistanceReport:
    def test_bounds_validated(self):
        with pytest.raises(ValueError, match="exceeds upper"):
            DistanceReport(upper=3, lower=5)
        with pytest.raises(ValueError, match="outside bounds"):
            DistanceReport(upper=6, lower=2, exact=8)
        with pytest.raises(ValueError, match="witness weight"):
            DistanceReport(upper=3, witness=0b11)

    def test_witness_rendering(self):
        report = DistanceReport(upper=2, witness=0b0101, ncols=4)
        assert report.witness_bits() == "1010"
        polys = report.witness_polys(2)
        assert polys == [P("1"), P("1")]
        assert report.witness_polys(3) is None

    def test_to_dict_with_blocks(self):
        report = DistanceReport(upper=2, witness=0b011, ncols=4, method="m")
        d = report.to_dict(block_size=2)
        assert d["upper"] == 2 and d["witness"] == "1100"
        assert d["witness_polys"] == ["1+x", "0"]


class TestBoundsCombine:
    def test_exact_when_bounds_meet(self):
        report = bounds_combine(16, 16)
        assert report.exact == 16 and report.lower == 16

    def test_open_interval(self):
        report = bounds_combine(88, 64, witness=None, ncols=476)
        assert report.exact is None
        assert (report.lower, report.upper) == (64, 88)

    def test_short_distance_must_be_positive(self):
        with pytest.raises(ValueError, match="positive"):
            bounds_combine(10, 0)

    def test_inconsistent_bounds_rejected(self):
        with pytest.raises(ValueError, match="exceeds upper"):
            bounds_combine(10, 12)
