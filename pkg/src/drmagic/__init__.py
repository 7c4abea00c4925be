"""Douglas--Rachford projection heuristics for magic squares and Sudoku."""

from .core import (
    DomainError,
    Projector,
    SolveResult,
    Status,
    StopRule,
    cyclic_dr_step,
    dr_step,
    lift,
    project_diagonal,
    project_product,
    reflect,
    round_half_away,
    solve,
)
from .formulations import (
    LUOSHU,
    Formulation,
    build,
    build_magic_binary,
    build_magic_integer,
    build_sudoku_binary,
    build_sudoku_integer,
    magic_constant,
    verify_magic,
    verify_sudoku,
)

__version__ = "0.1.0"
