"""Executable bounded-window versions of rigidity arguments for the Turing
degrees: permutations and Cantor homeomorphisms recovered from their
conjugates with the shift."""

from .core_bits import BitString, EPReal, EventuallyPeriodicReal, Window
from .perm_recovery import FinSupPermutation
from .tt_algebra import HomeoPair, OutputTable, TruthTableFunctional

__all__ = [
    "BitString",
    "EPReal",
    "EventuallyPeriodicReal",
    "FinSupPermutation",
    "HomeoPair",
    "OutputTable",
    "TruthTableFunctional",
    "Window",
]
