"""Feasibility models for magic squares and Sudoku.

Four models are provided:

``magic-int``
    An ``n x n`` real matrix; rows, columns and both diagonals sum to the
    magic constant and the entries are a permutation of ``1..n^2``.
``magic-bin``
    An ``n x n x n^2`` cube in which cell value ``v`` is a pillar of ``v``
    ones standing on the first floor.
``sudoku-int`` / ``sudoku-bin``
    The classical integer and one-hot models of a 9x9 Sudoku.

Grids are integer numpy arrays with ``0`` marking a blank cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from . import constraints as cs
from .core import DomainError, Projector, SolveResult, StopRule, round_half_away, solve

__all__ = [
    "InfeasibleOrderError",
    "InvalidPrefillError",
    "InvalidPuzzleError",
    "Formulation",
    "magic_constant",
    "verify_magic",
    "verify_sudoku",
    "encode_pillars",
    "decode_pillars",
    "encode_onehot",
    "decode_onehot",
    "build_magic_integer",
    "build_magic_binary",
    "build_sudoku_integer",
    "build_sudoku_binary",
    "build",
    "LUOSHU",
]

LUOSHU = np.array([[4, 9, 2], [3, 5, 7], [8, 1, 6]])


class InfeasibleOrderError(DomainError):
    """No magic square of the requested order exists."""


class InvalidPrefillError(DomainError):
    pass


class InvalidPuzzleError(InvalidPrefillError):
    pass


@dataclass(frozen=True)
class Formulation:
    name: str
    n: int
    sets: List[Projector]
    shape: tuple
    encode: Callable[[np.ndarray], np.ndarray]
    decode: Callable[[np.ndarray], np.ndarray]
    verify: Callable[[np.ndarray], bool]
    prefill: Optional[np.ndarray] = field(default=None, repr=False)

    def solve(self, x0, rule: StopRule = StopRule(), **kwargs):
        """Run the solver from ``x0``; return ``(result, grid)``.

        ``grid`` is the decoded shadow when the run is solved and the exact
        verifier accepts it, otherwise ``None``.
        """
        result: SolveResult = solve(self.sets, x0, rule, round_half_away, **kwargs)
        grid = None
        if result.solved:
            candidate = self.decode(result.shadow)
            if self.verify(candidate):
                grid = candidate
        return result, grid


def magic_constant(n: int) -> int:
    if n < 1:
        raise DomainError("order must be at least 1")
    return n * (n * n + 1) // 2


def _as_grid(g) -> np.ndarray:
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DomainError(f"grid must be square, got shape {g.shape}")
    if not np.issubdtype(g.dtype, np.integer):
        if not np.all(np.isfinite(g)) or np.any(g != np.round(g)):
            raise DomainError("grid entries must be integers")
        g = g.astype(np.int64)
    return g


def verify_magic(g) -> bool:
    """Exact check that ``g`` is a magic square of its order."""
    g = _as_grid(g)
    if np.any(g == 0):
        raise DomainError("grid is incomplete")
    n = g.shape[0]
    if not np.array_equal(np.sort(g.ravel()), np.arange(1, n * n + 1)):
        return False
    c = magic_constant(n)
    return bool(
        np.all(g.sum(axis=1) == c)
        and np.all(g.sum(axis=0) == c)
        and np.trace(g) == c
        and np.trace(g[:, ::-1]) == c
    )


def _sudoku_units():
    r = [[(i, j) for j in range(9)] for i in range(9)]
    c = [[(i, j) for i in range(9)] for j in range(9)]
    b = [
        [(3 * bi + ii, 3 * bj + jj) for jj in range(3) for ii in range(3)]
        for bi in range(3)
        for bj in range(3)
    ]
    return r + c + b


def verify_sudoku(g, puzzle=None) -> bool:
    """Every row, column and 3x3 box holds 1..9 once, and the clues agree."""
    g = _as_grid(g)
    if g.shape != (9, 9):
        raise DomainError("a Sudoku grid is 9x9")
    if np.any(g == 0):
        raise DomainError("grid is incomplete")
    digits = set(range(1, 10))
    for unit in _sudoku_units():
        if {int(g[p]) for p in unit} != digits:
            return False
    if puzzle is not None:
        puzzle = np.asarray(puzzle)
        given = puzzle != 0
        if np.any(g[given] != puzzle[given]):
            return False
    return True


# -- encodings ------------------------------------------------------------------

def encode_pillars(g, levels: Optional[int] = None) -> np.ndarray:
    """``B[i, j, k] = 1`` iff ``g[i, j] >= k + 1``."""
    g = np.asarray(g)
    L = levels if levels is not None else g.shape[0] ** 2
    return (g[..., None] >= np.arange(1, L + 1)).astype(np.float64)


def decode_pillars(B) -> np.ndarray:
    """Cell value = rounded pillar height, clamped to ``[1, n^2]``."""
    B = np.asarray(B, dtype=np.float64)
    L = B.shape[-1]
    return np.clip(round_half_away(B.sum(axis=-1)), 1, L).astype(np.int64)


def encode_onehot(g, levels: int = 9) -> np.ndarray:
    g = np.asarray(g)
    return (g[..., None] == np.arange(1, levels + 1)).astype(np.float64)


def decode_onehot(B) -> np.ndarray:
    return np.argmax(np.asarray(B), axis=-1).astype(np.int64) + 1


def _decode_round(x) -> np.ndarray:
    return round_half_away(np.asarray(x, dtype=np.float64)).astype(np.int64)


# -- validation -------------------------------------------------------------------

def _check_order(n: int) -> None:
    if n < 1:
        raise DomainError("order must be at least 1")
    if n == 2:
        raise InfeasibleOrderError(
            "there is no magic square of order 2: a + b = a + c forces b = c"
        )


def _check_magic_prefill(n: int, prefill) -> np.ndarray:
    M = np.asarray(prefill)
    if M.shape != (n, n):
        raise InvalidPrefillError(f"prefill must be {n}x{n}, got shape {M.shape}")
    M = M.astype(np.int64)
    given = M[M != 0]
    if np.any(given < 1) or np.any(given > n * n):
        raise InvalidPrefillError(f"prefilled values must lie in 1..{n * n}")
    if np.unique(given).size != given.size:
        raise InvalidPrefillError("prefilled values must be distinct")
    c = magic_constant(n)
    lines = list(M) + list(M.T) + [np.diag(M), np.diag(M[:, ::-1])]
    for line in lines:
        if np.all(line != 0) and line.sum() != c:
            raise InvalidPrefillError(f"a fully prefilled line does not sum to {c}")
        if line.sum() > c:
            raise InvalidPrefillError(f"a prefilled line already exceeds {c}")
    return M


def _check_sudoku_puzzle(S) -> np.ndarray:
    S = np.asarray(S)
    if S.shape != (9, 9):
        raise InvalidPuzzleError(f"a Sudoku puzzle is 9x9, got shape {S.shape}")
    S = S.astype(np.int64)
    if np.any(S < 0) or np.any(S > 9):
        raise InvalidPuzzleError("Sudoku entries must lie in 0..9")
    for unit in _sudoku_units():
        vals = [int(S[p]) for p in unit if S[p] != 0]
        if len(vals) != len(set(vals)):
            raise InvalidPuzzleError("a row, column or box repeats a clue")
    return S


# -- builders -----------------------------------------------------------------------

def build_magic_integer(n: int, prefill=None) -> Formulation:
    _check_order(n)
    shape = (n, n)
    c = magic_constant(n)
    sets = [
        cs.sum_hyperplane(cs.rows(n), c, shape, "rows"),
        cs.sum_hyperplane(cs.columns(n), c, shape, "columns"),
        cs.sum_hyperplane(cs.diagonal(n), c, shape, "diagonal"),
        cs.sum_hyperplane(cs.antidiagonal(n), c, shape, "antidiagonal"),
        cs.permutation(np.arange(1, n * n + 1), np.arange(n * n), shape, "permutation"),
    ]
    M = None
    if prefill is not None:
        M = _check_magic_prefill(n, prefill)
        mask = {int(k): int(v) for k, v in enumerate(M.ravel()) if v != 0}
        sets.append(cs.fixed_entries(mask, shape, "prefill"))

    def verify(g):
        return verify_magic(g) and (M is None or bool(np.all(g[M != 0] == M[M != 0])))

    return Formulation(
        "magic-int", n, sets, shape,
        encode=lambda g: np.asarray(g, dtype=np.float64),
        decode=_decode_round,
        verify=verify,
        prefill=M,
    )


def build_magic_binary(n: int, prefill=None) -> Formulation:
    """Pillar model; a prefilled cell ``v`` pins its whole pillar to ``v`` ones."""
    _check_order(n)
    L = n * n
    shape = (n, n, L)
    c = magic_constant(n)
    sets = [
        cs.sum_hyperplane(cs.row_slabs(n, L), c, shape, "row slabs"),
        cs.sum_hyperplane(cs.column_slabs(n, L), c, shape, "column slabs"),
        cs.sum_hyperplane(cs.diagonal_slab(n, L), c, shape, "diagonal slab"),
        cs.sum_hyperplane(cs.antidiagonal_slab(n, L), c, shape, "antidiagonal slab"),
        cs.floor_counts(n),
        cs.pillars(n),
    ]
    M = None
    if prefill is not None:
        M = _check_magic_prefill(n, prefill)
        cube = encode_pillars(M, L)
        idx = np.flatnonzero(np.broadcast_to((M != 0)[..., None], shape))
        sets.append(cs.fixed_entries(dict(zip(idx, cube.ravel()[idx])), shape, "prefill"))

    def verify(g):
        return verify_magic(g) and (M is None or bool(np.all(g[M != 0] == M[M != 0])))

    return Formulation(
        "magic-bin", n, sets, shape,
        encode=lambda g: encode_pillars(g, L),
        decode=decode_pillars,
        verify=verify,
        prefill=M,
    )


def _subgrid_groups() -> np.ndarray:
    # each 3x3 box vectorised by columns
    idx = np.arange(81).reshape(9, 9)
    return np.array([
        idx[3 * bi:3 * bi + 3, 3 * bj:3 * bj + 3].T.ravel()
        for bi in range(3)
        for bj in range(3)
    ])


def build_sudoku_integer(S) -> Formulation:
    S = _check_sudoku_puzzle(S)
    shape = (9, 9)
    digits = np.arange(1, 10)
    mask = {int(k): int(v) for k, v in enumerate(S.ravel()) if v != 0}
    sets = [
        cs.permutation(digits, cs.rows(9), shape, "rows"),
        cs.permutation(digits, cs.columns(9), shape, "columns"),
        cs.permutation(digits, _subgrid_groups(), shape, "boxes"),
        cs.fixed_entries(mask, shape, "clues"),
    ]
    return Formulation(
        "sudoku-int", 9, sets, shape,
        encode=lambda g: np.asarray(g, dtype=np.float64),
        decode=_decode_round,
        verify=lambda g: verify_sudoku(g, S),
        prefill=S,
    )


def build_sudoku_binary(S) -> Formulation:
    S = _check_sudoku_puzzle(S)
    shape = (9, 9, 9)
    cube = np.arange(729).reshape(shape)
    lines_i = cube.transpose(0, 2, 1).reshape(81, 9)  # B[i, :, k]
    lines_j = cube.transpose(1, 2, 0).reshape(81, 9)  # B[:, j, k]
    boxes = np.array([
        cube[3 * bi:3 * bi + 3, 3 * bj:3 * bj + 3, k].T.ravel()
        for bi in range(3)
        for bj in range(3)
        for k in range(9)
    ])
    clues = {int(cube[i, j, S[i, j] - 1]): 1.0 for i, j in zip(*np.nonzero(S))}
    sets = [
        cs.basis(lines_i, shape, "rows"),
        cs.basis(lines_j, shape, "columns"),
        cs.basis(boxes, shape, "boxes"),
        cs.fixed_entries(clues, shape, "clues"),
        cs.basis(cube.reshape(81, 9), shape, "cells"),
    ]
    return Formulation(
        "sudoku-bin", 9, sets, shape,
        encode=encode_onehot,
        decode=decode_onehot,
        verify=lambda g: verify_sudoku(g, S),
        prefill=S,
    )


_ALIASES = {
    "int": "magic-int", "integer": "magic-int",
    "bin": "magic-bin", "binary": "magic-bin",
}


def build(name: str, n: int = 9, prefill=None) -> Formulation:
    """Build a formulation by name (``magic-int``, ``magic-bin``, ``sudoku-int``,
    ``sudoku-bin``; ``int``/``bin`` are short for the magic ones)."""
    name = _ALIASES.get(name, name)
    if name == "magic-int":
        return build_magic_integer(n, prefill)
    if name == "magic-bin":
        return build_magic_binary(n, prefill)
    if name in ("sudoku-int", "sudoku-bin"):
        S = np.zeros((9, 9), dtype=np.int64) if prefill is None else prefill
        return (build_sudoku_integer if name == "sudoku-int" else build_sudoku_binary)(S)
    raise DomainError(f"unknown formulation {name!r}")
