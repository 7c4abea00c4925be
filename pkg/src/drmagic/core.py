"""Projectors, reflections and the Douglas--Rachford iteration.

Points are plain float64 numpy arrays; their ``shape`` is the shape
metadata.  A point of the product space ``H^N`` is an array of shape
``(N, *shape)`` whose leading axis indexes the blocks.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "DomainError",
    "Projector",
    "StopRule",
    "Status",
    "SolveResult",
    "as_point",
    "reflect",
    "dr_step",
    "cyclic_dr_step",
    "lift",
    "project_diagonal",
    "project_product",
    "round_half_away",
    "solve",
]


class DomainError(ValueError):
    """Raised when an operator receives input outside its domain."""


def as_point(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise DomainError("point has non-finite entries")
    return x


@dataclass(frozen=True)
class Projector:
    """A constraint set, known only through its projection map.

    ``func`` must be deterministic and must not modify its argument.
    ``shape`` (optional) pins the domain; calls with any other shape raise
    :class:`DomainError`.
    """

    func: Callable[[np.ndarray], np.ndarray]
    label: str = ""
    shape: Optional[tuple] = None

    def project(self, x: np.ndarray) -> np.ndarray:
        if self.shape is not None and np.shape(x) != self.shape:
            raise DomainError(
                f"{self.label or 'projector'} expects shape {self.shape}, "
                f"got {np.shape(x)}"
            )
        return self.func(x)

    __call__ = project

    def __repr__(self):
        return f"Projector({self.label!r}, shape={self.shape})"


def reflect(P: Projector, x: np.ndarray) -> np.ndarray:
    """Reflection ``2 P(x) - x``."""
    return 2.0 * P.project(x) - x


def dr_step(A: Projector, B: Projector, x: np.ndarray) -> np.ndarray:
    """One Douglas--Rachford step ``(x + R_B(R_A(x))) / 2``; A is reflected first."""
    return 0.5 * (x + reflect(B, reflect(A, x)))


def cyclic_dr_step(sets: Sequence[Projector], x: np.ndarray) -> np.ndarray:
    """Cyclic step: T(C1,C2), then T(C2,C3), ..., then T(CN,C1)."""
    if len(sets) < 2:
        raise DomainError("cyclic Douglas-Rachford needs at least two sets")
    N = len(sets)
    for i in range(N):
        x = dr_step(sets[i], sets[(i + 1) % N], x)
    return x


def lift(x0: np.ndarray, N: int) -> np.ndarray:
    """The diagonal point ``(x0, ..., x0)`` of ``H^N``."""
    if N < 2:
        raise DomainError("product space needs N >= 2 blocks")
    x0 = np.asarray(x0, dtype=np.float64)
    return np.broadcast_to(x0, (N,) + x0.shape).copy()


def _check_product(x: np.ndarray) -> None:
    if x.ndim < 2 or x.shape[0] < 2:
        raise DomainError("product point needs N >= 2 blocks on axis 0")


def project_diagonal(x: np.ndarray) -> np.ndarray:
    """Projection onto the diagonal: every block becomes the block mean."""
    x = np.asarray(x, dtype=np.float64)
    _check_product(x)
    return np.broadcast_to(x.mean(axis=0), x.shape).copy()


def project_product(sets: Sequence[Projector], x: np.ndarray) -> np.ndarray:
    """Blockwise projection onto ``C_1 x ... x C_N``."""
    x = np.asarray(x, dtype=np.float64)
    _check_product(x)
    if len(sets) != x.shape[0]:
        raise DomainError(f"{len(sets)} sets for {x.shape[0]} blocks")
    return np.stack([P.project(xi) for P, xi in zip(sets, x)])


def round_half_away(x: np.ndarray) -> np.ndarray:
    """Componentwise nearest integer, halves rounded away from zero."""
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


@dataclass(frozen=True)
class StopRule:
    tolerance: float = 0.05
    time_cap: float = 1800.0
    iter_cap: Optional[int] = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if not self.time_cap > 0:
            raise DomainError("time_cap must be positive")
        if self.iter_cap is not None and self.iter_cap < 0:
            raise DomainError("iter_cap must be non-negative")


class Status(str, enum.Enum):
    SOLVED = "solved"
    TIMED_OUT = "timed_out"
    ITER_CAPPED = "iter_capped"
    NUMERICAL_FAILURE = "numerical_failure"
    # stop test passed but the decoded grid failed exact verification;
    # never produced by solve() itself
    UNVERIFIED = "unverified"


@dataclass
class SolveResult:
    status: Status
    x: np.ndarray
    """Last complete iterate in the product space."""
    shadow: np.ndarray
    """``decoder_round`` of the first block of ``P_D(x)``."""
    iterations: int
    wall_time: float

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED


def _stop_test(sets, z, tol):
    for P in sets:
        if math.sqrt(np.sum((z - P.project(z)) ** 2)) > tol:
            return False
    return True


def solve(
    sets: Sequence[Projector],
    x0: np.ndarray,
    rule: StopRule = StopRule(),
    decoder_round: Callable[[np.ndarray], np.ndarray] = round_half_away,
    order: str = "DC",
    lifted: bool = False,
    callback: Optional[Callable[[int, np.ndarray], None]] = None,
) -> SolveResult:
    """Run Douglas--Rachford on the product-space lift of ``sets``.

    Iterates ``x_{k+1} = T_{D,C}(x_k)`` where D is the diagonal and C the
    product of ``sets``.  Before every step the shadow
    ``z = decoder_round(P_D(x_k))`` is tested against each set, and the
    run stops as solved once ``||z - P_i(z)|| <= rule.tolerance`` for all i.

    Parameters
    ----------
    sets : sequence of Projector
        The constraint sets, all acting on points of the same shape.
    x0 : array
        Starting point of ``H``, lifted to ``(x0, ..., x0)``.  With
        ``lifted=True`` it is already a product point of shape
        ``(len(sets), *shape)`` and is used as is.
    rule : StopRule
    decoder_round : callable
        Map applied to the shadow before the stop test.  Pass ``lambda z: z``
        for continuous (convex) problems.
    order : {"DC", "CD"}
        ``"DC"`` reflects through the diagonal first.
    callback : callable, optional
        Called as ``callback(k, x_k)`` before each stop test.

    Returns
    -------
    SolveResult
        On time-out the last complete iterate is returned.
    """
    N = len(sets)
    if N < 2:
        raise DomainError("solve needs at least two sets")
    if order not in ("DC", "CD"):
        raise DomainError(f"unknown order {order!r}")
    x0 = as_point(x0)
    if lifted:
        if x0.ndim < 2 or x0.shape[0] != N:
            raise DomainError(f"expected a product point with {N} blocks")
        x = x0.copy()
    else:
        x = lift(x0, N)

    def proj_c(y):
        return np.stack([P.project(yi) for P, yi in zip(sets, y)])

    tol = rule.tolerance
    start = time.perf_counter()
    k = 0
    while True:
        m = x.mean(axis=0)
        z = decoder_round(m)
        if callback is not None:
            callback(k, x)
        if _stop_test(sets, z, tol):
            status = Status.SOLVED
            break
        if time.perf_counter() - start >= rule.time_cap:
            status = Status.TIMED_OUT
            break
        if rule.iter_cap is not None and k >= rule.iter_cap:
            status = Status.ITER_CAPPED
            break
        # T = (Id + R_B R_A)/2 with R_D(x) = 2m - x
        if order == "DC":
            r = 2.0 * m - x
            x_new = 0.5 * (x + 2.0 * proj_c(r) - r)
        else:
            p = proj_c(x)
            r = 2.0 * p - x
            x_new = 0.5 * (x + 2.0 * r.mean(axis=0) - r)
        if not np.all(np.isfinite(x_new)):
            status = Status.NUMERICAL_FAILURE
            break
        x = x_new
        k += 1
    return SolveResult(status, x, z, k, time.perf_counter() - start)

