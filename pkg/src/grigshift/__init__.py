"""Substitution subshift over {a, x, y, z} and the linear Schreier graphs of the
four-generator group acting on the binary tree, with their Jacobi matrices
and spectra."""
from . import automaton, operators, schreier, spectra, words
from ._config import get_cap, set_cap
from .errors import (
    FourthPowerError,
    GrigshiftError,
    InsufficientContextError,
    InvalidWordError,
    ParameterError,
    PartitionError,
    ResourceCapError,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "automaton", "operators", "schreier", "spectra", "words",
    "get_cap", "set_cap", "BACKEND",
    "GrigshiftError", "ResourceCapError", "InvalidWordError",
    "InsufficientContextError", "PartitionError", "FourthPowerError", "ParameterError",
]
