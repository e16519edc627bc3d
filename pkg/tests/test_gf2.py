import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwskit import gf2
from dense_oracle import brute_kernel, brute_rank, brute_solutions


def binary_matrix(max_rows=6, max_cols=8):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(0, 1), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )


class TestRref:
    def test_identity_is_fixed(self):
        eye = np.eye(3, dtype=np.uint8)
        reduced, pivots = gf2.rref(eye)
        assert np.array_equal(reduced, eye)
        assert pivots == [0, 1, 2]

    def test_zero_matrix(self):
        reduced, pivots = gf2.rref(np.zeros((2, 4), dtype=np.uint8))
        assert not reduced.any()
        assert pivots == []

    def test_ring_codeword_matrix_rank(self, ring_code):
        reduced, pivots = gf2.rref(ring_code.codewords)
        assert len(pivots) == 6
        assert brute_rank(ring_code.codewords.tolist()) == 6

    @given(binary_matrix())
    def test_idempotent_and_rank_matches_oracle(self, rows):
        m = np.array(rows, dtype=np.uint8)
        reduced, pivots = gf2.rref(m)
        again, pivots2 = gf2.rref(reduced)
        assert np.array_equal(reduced, again)
        assert pivots == pivots2
        assert len(pivots) == brute_rank(rows)

    @given(binary_matrix())
    def test_row_space_preserved(self, rows):
        m = np.array(rows, dtype=np.uint8)
        reduced, _ = gf2.rref(m)
        assert brute_rank(rows) == brute_rank(np.vstack([m, reduced]).tolist())


class TestKernelBasis:
    def test_identity_has_trivial_kernel(self):
        assert gf2.kernel_basis(np.eye(4, dtype=np.uint8)) == []

    def test_ring_codeword_matrix(self, ring_code):
        basis = gf2.kernel_basis(ring_code.codewords)
        assert len(basis) == 4
        for v in basis:
            assert not gf2.matvec(ring_code.codewords, v).any()
        published = ["0001110011", "0010011001", "0100111110", "1000000100"]
        for s in published:
            assert gf2.in_rowspace(np.array(basis), gf2.parse_vector(s))

    def test_rank_nullity_and_exhaustive_kernel(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            m = rng.integers(0, 2, size=(4, 6)).astype(np.uint8)
            basis = gf2.kernel_basis(m)
            assert len(basis) == 6 - gf2.rank(m)
            for v in basis:
                assert not gf2.matvec(m, v).any()
            span = {gf2.to_int(v) for v in gf2.enumerate_span(basis, 6)}
            assert span == brute_kernel(m.tolist(), 6)

    def test_deterministic_order(self):
        m = gf2.parse_matrix(["110010", "001100"])
        first = gf2.kernel_basis(m)
        second = gf2.kernel_basis(m)
        assert all(np.array_equal(a, b) for a, b in zip(first, second))


class TestSolve:
    def test_identity_system(self):
        b = gf2.parse_vector("101")
        particular, kernel = gf2.solve(np.eye(3, dtype=np.uint8), b)
        assert np.array_equal(particular, b)
        assert kernel == []

    def test_inconsistent_returns_none(self):
        assert gf2.solve(np.zeros((1, 3), dtype=np.uint8), [1]) is None

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            gf2.solve(np.eye(3, dtype=np.uint8), [1, 0])

    def test_ring_stabilization_system_contains_published_solution(self, ring_code):
        v1 = gf2.parse_vector("0000100001")
        v2 = gf2.parse_vector("0001000011")
        rhs = gf2.matvec(ring_code.codewords, v1) | gf2.matvec(ring_code.codewords, v2)
        solved = gf2.solve(ring_code.codewords, rhs)
        assert solved is not None
        particular, kernel = solved
        published = gf2.parse_vector("0000111001")
        offset = particular ^ published
        assert gf2.in_rowspace(np.array(kernel), offset) or not offset.any()

    @given(binary_matrix(max_rows=5, max_cols=7), st.data())
    def test_planted_solution_is_recovered(self, rows, data):
        m = np.array(rows, dtype=np.uint8)
        x = np.array(
            data.draw(st.lists(st.integers(0, 1), min_size=m.shape[1], max_size=m.shape[1])),
            dtype=np.uint8,
        )
        solved = gf2.solve(m, gf2.matvec(m, x))
        assert solved is not None
        particular, _ = solved
        assert np.array_equal(gf2.matvec(m, particular), gf2.matvec(m, x))

    @settings(max_examples=25)
    @given(binary_matrix(max_rows=4, max_cols=6), st.lists(st.integers(0, 1), min_size=4, max_size=4))
    def test_full_solution_set_matches_enumeration(self, rows, rhs_bits):
        m = np.array(rows, dtype=np.uint8)
        rhs = np.array(rhs_bits[: m.shape[0]], dtype=np.uint8)
        expected = brute_solutions(m.tolist(), rhs.tolist(), m.shape[1])
        solved = gf2.solve(m, rhs)
        if solved is None:
            assert expected == set()
            return
        particular, kernel = solved
        got = {
            gf2.to_int(particular ^ combo)
            for combo in gf2.enumerate_span(kernel, m.shape[1])
        }
        assert got == expected

    def test_solution_set_at_n12(self):
        rng = np.random.default_rng(3)
        m = rng.integers(0, 2, size=(5, 12)).astype(np.uint8)
        x = rng.integers(0, 2, size=12).astype(np.uint8)
        rhs = gf2.matvec(m, x)
        particular, kernel = gf2.solve(m, rhs)
        got = {
            gf2.to_int(particular ^ combo)
            for combo in gf2.enumerate_span(kernel, 12)
        }
        assert got == brute_solutions(m.tolist(), rhs.tolist(), 12)


class TestMinimalSolution:
    def test_reduces_below_free_variable_choice(self):
        # particular [1,0] with kernel {[1,1]}: the coset also contains
        # [0,1], which is smaller as a big-endian integer
        particular, kernel = gf2.solve(gf2.parse_matrix(["11"]), [1])
        assert gf2.to_int(gf2.minimal_solution(particular, kernel)) == min(
            gf2.to_int(particular ^ c) for c in gf2.enumerate_span(kernel, 2)
        )

    @given(binary_matrix(max_rows=4, max_cols=7), st.data())
    def test_is_coset_minimum(self, rows, data):
        m = np.array(rows, dtype=np.uint8)
        x = np.array(
            data.draw(st.lists(st.integers(0, 1), min_size=m.shape[1], max_size=m.shape[1])),
            dtype=np.uint8,
        )
        particular, kernel = gf2.solve(m, gf2.matvec(m, x))
        best = gf2.minimal_solution(particular, kernel)
        everything = [particular ^ c for c in gf2.enumerate_span(kernel, m.shape[1])]
        assert gf2.to_int(best) == min(gf2.to_int(v) for v in everything)


class TestSerialization:
    def test_vector_round_trip(self):
        s = "0001110011"
        assert gf2.format_vector(gf2.parse_vector(s)) == s

    def test_matrix_round_trip(self):
        text = "010\n101"
        assert gf2.format_matrix(gf2.parse_matrix(text)) == text

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            gf2.parse_vector("01a")

    def test_int_round_trip_is_big_endian(self):
        assert gf2.to_int(gf2.parse_vector("100")) == 4
        assert gf2.format_vector(gf2.from_int(4, 3)) == "100"

    def test_determinism_bitwise(self, ring_code):
        a = gf2.rref(ring_code.codewords)
        b = gf2.rref(ring_code.codewords)
        assert np.array_equal(a[0], b[0]) and a[1] == b[1]
