import numpy as np
import pytest

from drmagic.core import DomainError, StopRule, lift, project_diagonal
from drmagic.formulations import (
    InfeasibleOrderError,
    InvalidPrefillError,
    InvalidPuzzleError,
    build,
    build_magic_binary,
    build_magic_integer,
    build_sudoku_binary,
    build_sudoku_integer,
    decode_pillars,
    encode_onehot,
    encode_pillars,
    magic_constant,
    verify_magic,
    verify_sudoku,
)

from conftest import DURER_LIKE_4, SUDOKU_PUZZLE, SUDOKU_SOLUTION


@pytest.mark.parametrize("n, c", [(3, 15), (4, 34), (5, 65), (1, 1), (2, 5)])
def test_magic_constant(n, c):
    assert magic_constant(n) == c


class TestVerifyMagic:
    def test_luoshu(self, luoshu):
        assert verify_magic(luoshu)

    def test_swap_breaks(self, luoshu):
        g = luoshu.copy()
        g[0, 0], g[0, 1] = g[0, 1], g[0, 0]
        assert not verify_magic(g)

    def test_other_orientation(self):
        assert verify_magic([[2, 7, 6], [9, 5, 1], [4, 3, 8]])

    def test_order_four(self):
        assert verify_magic(DURER_LIKE_4)

    def test_all_symmetries(self, luoshu):
        for k in range(4):
            assert verify_magic(np.rot90(luoshu, k))
            assert verify_magic(np.rot90(luoshu.T, k))

    def test_repeated_entries_rejected(self):
        # every line sums to 15 but entries are not 1..9
        assert not verify_magic(np.full((3, 3), 5))

    def test_incomplete(self, luoshu):
        g = luoshu.copy()
        g[1, 1] = 0
        with pytest.raises(DomainError):
            verify_magic(g)


class TestMagicInteger:
    def test_round_trip_and_verify(self, luoshu):
        F = build_magic_integer(3)
        assert len(F.sets) == 5 and F.shape == (3, 3)
        np.testing.assert_array_equal(F.decode(F.encode(luoshu)), luoshu)
        assert F.verify(luoshu)

    def test_order_two_rejected(self):
        with pytest.raises(InfeasibleOrderError):
            build_magic_integer(2)
        with pytest.raises(InfeasibleOrderError):
            build_magic_binary(2)

    def test_order_one(self):
        F = build_magic_integer(1)
        res, grid = F.solve(np.array([[0.3]]))
        assert res.solved and grid.tolist() == [[1]]

    def test_full_prefill_solves_at_once(self, luoshu, rng):
        F = build_magic_integer(3, prefill=luoshu)
        assert len(F.sets) == 6
        res, grid = F.solve(rng.random((3, 3)), StopRule(time_cap=10))
        assert res.solved
        np.testing.assert_array_equal(grid, luoshu)
        # after one diagonal projection of the fixed-point lift the test fires
        x = project_diagonal(lift(luoshu.astype(float), 6))
        res, _ = F.solve(x[0], StopRule(time_cap=10))
        assert res.iterations == 0

    @pytest.mark.parametrize("bad", [
        [[10, 9, 2], [3, 0, 7], [8, 1, 6]],
        [[4, 4, 0], [0, 0, 0], [0, 0, 0]],
        [[4, 9, 3], [0, 0, 0], [0, 0, 0]],
        [[0, 0]],
    ])
    def test_invalid_prefill(self, bad):
        with pytest.raises(InvalidPrefillError):
            build_magic_integer(3, prefill=np.array(bad))

    def test_completion_respects_clues(self):
        M = np.array([[16, 0, 0, 13], [0, 0, 0, 0], [0, 0, 0, 0], [4, 0, 0, 1]])
        F = build_magic_integer(4, prefill=M)
        res, grid = F.solve(np.random.default_rng(0).random((4, 4)), StopRule(time_cap=30))
        assert grid is not None
        assert np.all(grid[M != 0] == M[M != 0])


class TestMagicBinary:
    def test_pillar_encoding(self, luoshu):
        F = build_magic_binary(3)
        B = F.encode(luoshu)
        assert B.shape == (3, 3, 9)
        np.testing.assert_array_equal(B[0, 0], [1, 1, 1, 1, 0, 0, 0, 0, 0])
        np.testing.assert_array_equal(B.sum(axis=-1), luoshu)
        assert B[0].sum() == 15 == 4 + 9 + 2

    def test_round_trip(self, rng):
        F = build_magic_binary(3)
        for _ in range(100):
            g = rng.permutation(np.arange(1, 10)).reshape(3, 3)
            np.testing.assert_array_equal(F.decode(F.encode(g)), g)

    def test_encoded_square_is_feasible(self, luoshu):
        F = build_magic_binary(3)
        B = F.encode(luoshu)
        for P in F.sets:
            np.testing.assert_array_equal(P(B), B, err_msg=P.label)

    def test_decode_clamps(self):
        B = np.zeros((3, 3, 9))
        B[0, 0] = 1
        g = decode_pillars(B)
        assert g[0, 0] == 9 and g[1, 1] == 1

    def test_completion_pins_pillars(self, luoshu):
        M = np.zeros((3, 3), dtype=int)
        M[0, 0] = 4
        F = build_magic_binary(3, prefill=M)
        out = F.sets[-1](np.full((3, 3, 9), 0.5))
        np.testing.assert_array_equal(out[0, 0], encode_pillars(np.array([[4]]), 9)[0, 0])
        assert np.all(out[1:] == 0.5)

    def test_smoke_order_eight(self):
        F = build_magic_binary(8)
        res, _ = F.solve(np.random.default_rng(1).random(F.shape), StopRule(iter_cap=100))
        assert res.status.value == "iter_capped" and res.iterations == 100
        assert np.all(np.isfinite(res.x))


class TestSudoku:
    def test_reference_solution_verifies(self):
        assert verify_sudoku(SUDOKU_SOLUTION, SUDOKU_PUZZLE)
        F = build_sudoku_integer(SUDOKU_PUZZLE)
        assert F.verify(SUDOKU_SOLUTION)
        assert len(F.sets) == 4

    def test_clue_disagreement(self):
        g = SUDOKU_SOLUTION.copy()
        assert not verify_sudoku(g, np.where(SUDOKU_PUZZLE == 2, 3, SUDOKU_PUZZLE))

    def test_blank_puzzle(self):
        F = build_sudoku_integer(np.zeros((9, 9), dtype=int))
        assert F.verify(SUDOKU_SOLUTION)
        # relabelling digits keeps a grid valid
        perm = np.r_[0, np.random.default_rng(3).permutation(np.arange(1, 10))]
        assert F.verify(perm[SUDOKU_SOLUTION])

    def test_duplicate_clue(self):
        S = np.zeros((9, 9), dtype=int)
        S[0, 0] = S[0, 5] = 5
        with pytest.raises(InvalidPuzzleError):
            build_sudoku_integer(S)
        with pytest.raises(InvalidPuzzleError):
            build_sudoku_binary(S)

    def test_binary_solution_is_fixed_by_all_sets(self):
        F = build_sudoku_binary(SUDOKU_PUZZLE)
        assert len(F.sets) == 5
        B = F.encode(SUDOKU_SOLUTION)
        for P in F.sets:
            np.testing.assert_array_equal(P(B), B, err_msg=P.label)

    def test_integer_solution_is_fixed_by_all_sets(self):
        F = build_sudoku_integer(SUDOKU_PUZZLE)
        A = SUDOKU_SOLUTION.astype(float)
        for P in F.sets:
            np.testing.assert_array_equal(P(A), A, err_msg=P.label)

    def test_binary_round_trip(self, rng):
        F = build_sudoku_binary(np.zeros((9, 9), dtype=int))
        for _ in range(20):
            g = rng.integers(1, 10, size=(9, 9))
            np.testing.assert_array_equal(F.decode(F.encode(g)), g)

    def test_clue_projector(self):
        S = np.zeros((9, 9), dtype=int)
        S[0, 1] = 2
        F = build_sudoku_binary(S)
        out = F.sets[3](np.zeros((9, 9, 9)))
        assert out.sum() == 1 and out[0, 1, 1] == 1

    def test_binary_solves_reference(self):
        F = build_sudoku_binary(SUDOKU_PUZZLE)
        res, grid = F.solve(np.random.default_rng(5).random(F.shape), StopRule(time_cap=120))
        assert res.solved
        np.testing.assert_array_equal(grid, SUDOKU_SOLUTION)

    def test_onehot(self):
        B = encode_onehot(np.array([[3]]))
        np.testing.assert_array_equal(B[0, 0], [0, 0, 1, 0, 0, 0, 0, 0, 0])


def test_build_by_name():
    assert build("int", 3).name == "magic-int"
    assert build("bin", 3).name == "magic-bin"
    assert build("sudoku-bin").name == "sudoku-bin"
    with pytest.raises(DomainError):
        build("nope", 3)


def test_no_false_positive_on_solved_runs():
    # every run the stop rule accepts decodes to an exactly verified grid
    for name, n in [("magic-int", 3), ("magic-int", 4), ("magic-bin", 3)]:
        F = build(name, n)
        for seed in range(10):
            res, grid = F.solve(np.random.default_rng(seed).random(F.shape), StopRule(time_cap=2))
            if res.solved:
                assert grid is not None and verify_magic(grid)
