"""Constructive resolution rules for finite-domain CSPs, instantiated for Sudoku."""

from .core import KnowledgeState, Literal, VariableRef, ks_leq
from .engine import ResolutionOutcome, ResolutionPath, ResolutionTheory, bsrt, replay, saturate
from .sudoku import Puzzle, initial_state, make_families, parse_puzzle

__all__ = [
    "KnowledgeState",
    "Literal",
    "Puzzle",
    "ResolutionOutcome",
    "ResolutionPath",
    "ResolutionTheory",
    "VariableRef",
    "bsrt",
    "initial_state",
    "ks_leq",
    "make_families",
    "parse_puzzle",
    "replay",
    "saturate",
]

__version__ = "0.1.0"
