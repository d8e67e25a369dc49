"""Ground Constraint Handling Rules as a free program algebra.

Programs are built from :func:`make_rule` and :func:`compose_programs`,
executed with :func:`run`, and checked against the multiset semantics in
:mod:`freechr.oracle`.
"""
from .engine import Trace, TraceEvent, compile, compose_step, rule_step, run
from .errors import ChrError
from .matcher import match
from .program import Composite, Rule, compose_programs, fold, make_rule, rules_of
from .state import ExecState, QueryEntry
from .values import Sym, compare, parse_value, parse_values, render

__all__ = [
    "ChrError", "Composite", "ExecState", "QueryEntry", "Rule", "Sym", "Trace", "TraceEvent",
    "compare", "compile", "compose_programs", "compose_step", "fold", "make_rule", "match",
    "parse_value", "parse_values", "render", "rule_step", "rules_of", "run",
]
