"""Compile parsed rules into :class:`~freechr.program.Rule` closures.

Heads are unary predicates, so each pattern compiles to a check of its own
shape and literals only.  Variables shared between positions become
equality tests that run at the start of the guard.
"""
from __future__ import annotations

from typing import Mapping, Optional, Sequence

from ..errors import EvaluationError
from ..program import Program, compose_programs, make_rule
from ..values import Value, check_int
from .syntax import (ARITH_OPS, EQ_OPS, ORDER_OPS, BinOp, Lit, PLit, PTup, PVar, RuleSyntax,
                     TupleExpr, UnOp, Var)


def shape_predicate(p):
    if isinstance(p, PVar):
        return lambda v: True
    if isinstance(p, PLit):
        lit = p.value
        return lambda v: type(v) is type(lit) and v == lit
    subs = [shape_predicate(q) for q in p.items]
    n = len(subs)
    return lambda v: (isinstance(v, tuple) and len(v) == n
                      and all(h(x) for h, x in zip(subs, v)))


def _paths(p, prefix):
    """Yield (variable name, access path) for every variable occurrence in ``p``."""
    if isinstance(p, PVar):
        yield p.name, prefix
    elif isinstance(p, PTup):
        for k, q in enumerate(p.items):
            yield from _paths(q, prefix + (k,))


def _get(values, path):
    v = values[path[0]]
    for k in path[1:]:
        v = v[k]
    return v


class _Evaluator:
    def __init__(self, source: Optional[str]):
        self.source = source

    def fail(self, msg, node):
        return EvaluationError(msg, self.source, node.pos if self.source is not None else None)

    def value(self, e, env) -> Value:
        v = self.eval(e, env)
        if isinstance(v, bool):
            raise self.fail("boolean where a value was expected", e)
        return v

    def int(self, e, env) -> int:
        v = self.eval(e, env)
        if isinstance(v, bool) or not isinstance(v, int):
            raise self.fail("type mismatch: expected an integer", e)
        return v

    def bool(self, e, env) -> bool:
        v = self.eval(e, env)
        if not isinstance(v, bool):
            raise self.fail("type mismatch: expected a boolean", e)
        return v

    def eval(self, e, env):
        if isinstance(e, Lit):
            return e.value
        if isinstance(e, Var):
            try:
                return env[e.name]
            except KeyError:
                raise self.fail(f"unbound variable {e.name}", e) from None
        if isinstance(e, TupleExpr):
            return tuple(self.value(x, env) for x in e.items)
        if isinstance(e, UnOp):
            if e.op == "!":
                return not self.bool(e.operand, env)
            return self.checked(-self.int(e.operand, env), e)
        op = e.op
        if op == "&&":
            return self.bool(e.left, env) and self.bool(e.right, env)
        if op == "||":
            return self.bool(e.left, env) or self.bool(e.right, env)
        if op in EQ_OPS:
            a, b = self.eval(e.left, env), self.eval(e.right, env)
            if isinstance(a, bool) != isinstance(b, bool):
                raise self.fail("type mismatch: comparing a boolean with a value", e)
            return (a == b) == (op == "==")
        a, b = self.int(e.left, env), self.int(e.right, env)
        if op in ORDER_OPS:
            return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
        if op in ("/", "mod") and b == 0:
            raise self.fail("division by zero", e)
        r = {"+": lambda: a + b, "-": lambda: a - b, "*": lambda: a * b,
             "/": lambda: a // b, "mod": lambda: a % b}[op]()
        return self.checked(r, e)

    def checked(self, n, node):
        try:
            return check_int(n)
        except EvaluationError:
            raise self.fail(f"integer overflow: {n}", node) from None


def eval_expr(e, binding: Mapping[str, Value], source: Optional[str] = None):
    """Evaluate ``e`` strictly under ``binding``; comparisons yield ``bool``."""
    return _Evaluator(source).eval(e, binding)


def compile_rule(r: RuleSyntax, source: Optional[str] = None):
    ev = _Evaluator(source)
    first: dict[str, tuple] = {}
    joins: list[tuple[tuple, tuple]] = []
    for pos, p in enumerate(r.heads):
        for name, path in _paths(p, (pos,)):
            if name in first:
                joins.append((first[name], path))
            else:
                first[name] = path
    bindings = list(first.items())

    def env_of(values):
        return {name: _get(values, path) for name, path in bindings}

    guard_expr = r.guard

    def guard(*values):
        for a, b in joins:
            if _get(values, a) != _get(values, b):
                return False
        if guard_expr is None:
            return True
        return ev.bool(guard_expr, env_of(values))

    body_exprs = r.body

    def body(*values):
        if not body_exprs:
            return []
        env = env_of(values)
        return [ev.value(b, env) for b in body_exprs]

    return make_rule(r.name,
                     [shape_predicate(p) for p in r.kept],
                     [shape_predicate(p) for p in r.removed],
                     guard, body)


def compile_rules(rs: Sequence[RuleSyntax], source: Optional[str] = None) -> Program:
    return compose_programs([compile_rule(r, source) for r in rs])
