"""Next-free LTL: formulas, semantics, automata and fair model checking."""

from .buchi import GeneralizedBuchi, to_buchi
from .check import FAILS, HOLDS, VACUOUS, Verdict, check_fair, exists_fair_path, fair_lasso
from .formula import (
    FALSE, TRUE, Always, And, Eventually, FalseConst, Formula, Implies, Not, Or, Prop,
    Release, TrueConst, Until, atoms, conjunction, nnf, parse_formula,
)
from .semantics import Truth, evaluate, evaluate_prefix

__all__ = [
    "Always", "And", "Eventually", "FAILS", "FALSE", "FalseConst", "Formula", "GeneralizedBuchi",
    "HOLDS", "Implies", "Not", "Or", "Prop", "Release", "TRUE", "TrueConst", "Truth", "Until",
    "VACUOUS", "Verdict", "atoms", "check_fair", "conjunction", "evaluate", "evaluate_prefix",
    "exists_fair_path", "fair_lasso", "nnf", "parse_formula", "to_buchi",
]
