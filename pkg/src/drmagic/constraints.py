"""Closed-form projectors used by the magic-square and Sudoku models.

Index selections are integer arrays of flat (row-major) positions into a
point.  A 2-D selection array of shape ``(g, m)`` describes ``g`` disjoint
groups of ``m`` coordinates each; the group projectors act on every group at
once, which is a true projection because the groups share no coordinates.

Ties between equal entries are resolved the same way everywhere: the
position that comes first in the group's ordering receives the larger value.
Equivalently, among several nearest members of a finite set the
lexicographically largest one is returned.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .core import DomainError, Projector

__all__ = [
    "rows",
    "columns",
    "diagonal",
    "antidiagonal",
    "row_slabs",
    "column_slabs",
    "diagonal_slab",
    "antidiagonal_slab",
    "check_selection",
    "project_sum_hyperplane",
    "project_hyperplane",
    "project_permutation",
    "project_fixed_entries",
    "project_floor_counts",
    "project_pillars",
    "project_basis",
    "sum_hyperplane",
    "hyperplane",
    "permutation",
    "fixed_entries",
    "floor_counts",
    "pillars",
    "basis",
]


# -- index selections -------------------------------------------------------

def rows(n: int) -> np.ndarray:
    return np.arange(n * n).reshape(n, n)


def columns(n: int) -> np.ndarray:
    return np.arange(n * n).reshape(n, n).T.copy()


def diagonal(n: int) -> np.ndarray:
    return (np.arange(n) * (n + 1))[None, :]


def antidiagonal(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i * n + (n - 1 - i))[None, :]


def _cube_index(n: int, m: int) -> np.ndarray:
    return np.arange(n * n * m).reshape(n, n, m)


def row_slabs(n: int, m: int) -> np.ndarray:
    """Groups ``B[i, :, :]`` of an ``n x n x m`` cube, one per row i."""
    return _cube_index(n, m).reshape(n, n * m)


def column_slabs(n: int, m: int) -> np.ndarray:
    """Groups ``B[:, j, :]``, one per column j."""
    return _cube_index(n, m).transpose(1, 0, 2).reshape(n, n * m)


def diagonal_slab(n: int, m: int) -> np.ndarray:
    i = np.arange(n)
    return _cube_index(n, m)[i, i, :].reshape(1, n * m)


def antidiagonal_slab(n: int, m: int) -> np.ndarray:
    i = np.arange(n)
    return _cube_index(n, m)[i, n - 1 - i, :].reshape(1, n * m)


def check_selection(sel, size: int) -> np.ndarray:
    """Validate a selection against a point with ``size`` coordinates."""
    sel = np.asarray(sel, dtype=np.intp)
    if sel.ndim == 1:
        sel = sel[None, :]
    if sel.ndim != 2 or sel.size == 0:
        raise DomainError("empty or malformed index selection")
    flat = sel.ravel()
    if flat.min() < 0 or flat.max() >= size:
        raise DomainError("selection index out of range")
    if np.unique(flat).size != flat.size:
        raise DomainError("selection indices must be distinct")
    return sel


# -- affine sets --------------------------------------------------------------

def project_sum_hyperplane(sel, c, x) -> np.ndarray:
    """Shift the selected coordinates uniformly so each group sums to ``c``.

    For a single group of ``m`` coordinates this is the orthogonal
    projection ``x + (c - sum(x_sel)) / m`` onto ``{sum(x_sel) = c}``;
    coordinates outside the selection are untouched.
    """
    x = np.asarray(x, dtype=np.float64)
    sel = check_selection(sel, x.size)
    return _sum_shift(sel, c, x)


def _sum_shift(sel, c, x):
    out = x.ravel().copy()
    vals = out[sel]
    out[sel] = vals + ((c - vals.sum(axis=1)) / sel.shape[1])[:, None]
    return out.reshape(x.shape)


def project_hyperplane(a, b, x) -> np.ndarray:
    """Projection onto ``{y : <a, y> = b}`` for a nonzero normal ``a``."""
    a = np.asarray(a, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    aa = float(np.sum(a * a))
    if aa == 0:
        raise DomainError("hyperplane normal must be nonzero")
    return x + ((b - np.sum(a * x)) / aa) * a


# -- finite sets --------------------------------------------------------------

def _ranks(vals: np.ndarray) -> np.ndarray:
    # rank 0 = largest; equal entries ranked by position, earliest first
    order = np.argsort(-vals, axis=-1, kind="stable")
    ranks = np.empty_like(order)
    np.put_along_axis(ranks, order, np.arange(vals.shape[-1]), axis=-1)
    return ranks


def project_permutation(values, x) -> np.ndarray:
    """Nearest rearrangement of the multiset ``values``, per group.

    ``x`` has shape ``(..., m)``; each length-``m`` slice along the last axis
    receives the ``values`` in the same rank order as its own entries.
    """
    values = np.sort(np.asarray(values, dtype=np.float64))[::-1]
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != values.size:
        raise DomainError(
            f"slice length {x.shape[-1]} does not match multiset size {values.size}"
        )
    return values[_ranks(x)]


def project_fixed_entries(mask, x) -> np.ndarray:
    """Overwrite the positions in ``mask`` (a ``{flat_index: value}`` map)."""
    x = np.asarray(x, dtype=np.float64)
    out = x.ravel().copy()
    if mask:
        idx = np.fromiter(mask.keys(), dtype=np.intp, count=len(mask))
        if idx.min() < 0 or idx.max() >= out.size:
            raise DomainError("mask position out of range")
        out[idx] = np.fromiter(mask.values(), dtype=np.float64, count=len(mask))
    return out.reshape(x.shape)


def _check_cube(n, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (n, n, n * n):
        raise DomainError(f"expected a {n}x{n}x{n * n} cube, got shape {x.shape}")
    return x


def project_floor_counts(n: int, x) -> np.ndarray:
    """Floor k (1-based) keeps ones on its ``n^2 - k + 1`` largest entries."""
    x = _check_cube(n, x)
    L = n * n
    floors = x.reshape(L, L).T  # floors[k] = x[:, :, k] read by rows
    keep = (L - np.arange(L))[:, None]
    out = (_ranks(floors) < keep).astype(np.float64)
    return out.T.reshape(x.shape)


def project_pillars(n: int, x) -> np.ndarray:
    """Replace every pillar ``x[i, j, :]`` by its nearest prefix-of-ones vector.

    Candidates are ``[1, 0, ..., 0]`` through ``[1, ..., 1]``; for a prefix
    of length p the squared distance is ``sum(x**2) + p - 2*cumsum(x)[p-1]``,
    so only the last two terms are compared.  Ties go to the longer prefix.
    """
    x = _check_cube(n, x)
    L = x.shape[-1]
    f = np.arange(1, L + 1) - 2.0 * np.cumsum(x, axis=-1)
    p = L - np.argmin(f[..., ::-1], axis=-1)
    return (np.arange(L) < p[..., None]).astype(np.float64)


def project_basis(x) -> np.ndarray:
    """Nearest standard basis vector along the last axis (ties: lowest index)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] < 1:
        raise DomainError("empty slice")
    out = np.zeros_like(x)
    np.put_along_axis(out, np.argmax(x, axis=-1)[..., None], 1.0, axis=-1)
    return out


# -- Projector factories --------------------------------------------------------

def sum_hyperplane(sel, c, shape, label="sum") -> Projector:
    shape = tuple(shape)
    sel = check_selection(sel, int(np.prod(shape)))
    return Projector(lambda x: _sum_shift(sel, c, x), label, shape)


def hyperplane(a, b, label="hyperplane") -> Projector:
    a = np.asarray(a, dtype=np.float64)
    return Projector(lambda x: project_hyperplane(a, b, x), label, a.shape)


def _gather_apply(sel, shape, fn):
    def project(x):
        out = x.ravel().copy()
        out[sel] = fn(out[sel])
        return out.reshape(shape)

    return project


def permutation(values, sel, shape, label="permutation") -> Projector:
    """Each group of ``sel`` must be a rearrangement of ``values``."""
    shape = tuple(shape)
    sel = check_selection(sel, int(np.prod(shape)))
    values = np.sort(np.asarray(values, dtype=np.float64))[::-1]
    if sel.shape[1] != values.size:
        raise DomainError("group size does not match multiset size")
    return Projector(_gather_apply(sel, shape, lambda v: values[_ranks(v)]), label, shape)


def fixed_entries(mask, shape, label="prefill") -> Projector:
    shape = tuple(shape)
    size = int(np.prod(shape))
    mask = {int(k): float(v) for k, v in dict(mask).items()}
    if any(not 0 <= k < size for k in mask):
        raise DomainError("mask position out of range")
    return Projector(lambda x: project_fixed_entries(mask, x), label, shape)


def floor_counts(n: int, label="floors") -> Projector:
    return Projector(lambda x: project_floor_counts(n, x), label, (n, n, n * n))


def pillars(n: int, label="pillars") -> Projector:
    return Projector(lambda x: project_pillars(n, x), label, (n, n, n * n))


def basis(sel, shape, label="basis") -> Projector:
    """Each group of ``sel`` must be a standard basis vector."""
    shape = tuple(shape)
    sel = check_selection(sel, int(np.prod(shape)))
    return Projector(_gather_apply(sel, shape, project_basis), label, shape)
