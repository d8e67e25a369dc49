"""Syntax trees for the rule language, plus a pretty printer.

Source positions are carried on every node but excluded from equality, so
a printed-and-reparsed tree compares equal to the original.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..values import render

# patterns


@dataclass(frozen=True)
class PLit:
    value: object  # int or Sym
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PVar:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class PTup:
    items: tuple
    pos: int = field(default=0, compare=False)


Pattern = Union[PLit, PVar, PTup]

# expressions


@dataclass(frozen=True)
class Lit:
    value: object  # int, Sym or bool
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class TupleExpr:
    items: tuple
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class UnOp:
    op: str  # "!" or "neg"
    operand: "Expr"
    pos: int = field(default=0, compare=False)


Expr = Union[Lit, Var, TupleExpr, BinOp, UnOp]

ARITH_OPS = ("+", "-", "*", "/", "mod")
ORDER_OPS = ("<", "<=", ">", ">=")
EQ_OPS = ("==", "!=")
BOOL_OPS = ("&&", "||")

SIMPLIFICATION = "simplification"
PROPAGATION = "propagation"
SIMPAGATION = "simpagation"


@dataclass(frozen=True)
class RuleSyntax:
    name: str
    kept: tuple
    removed: tuple
    guard: Optional[Expr]
    body: tuple
    kind: str
    pos: int = field(default=0, compare=False)

    @property
    def heads(self) -> tuple:
        return self.kept + self.removed


def pattern_vars(p: Pattern):
    if isinstance(p, PVar):
        yield p
    elif isinstance(p, PTup):
        for q in p.items:
            yield from pattern_vars(q)


def expr_vars(e: Expr):
    if isinstance(e, Var):
        yield e
    elif isinstance(e, TupleExpr):
        for x in e.items:
            yield from expr_vars(x)
    elif isinstance(e, BinOp):
        yield from expr_vars(e.left)
        yield from expr_vars(e.right)
    elif isinstance(e, UnOp):
        yield from expr_vars(e.operand)


def format_pattern(p: Pattern) -> str:
    if isinstance(p, PLit):
        return render(p.value)
    if isinstance(p, PVar):
        return p.name
    return "(" + ", ".join(format_pattern(q) for q in p.items) + ")"


def _wrap(e: Expr) -> str:
    s = format_expr(e)
    return f"({s})" if isinstance(e, BinOp) else s


def format_expr(e: Expr) -> str:
    if isinstance(e, Lit):
        if isinstance(e.value, bool):
            return "true" if e.value else "false"
        return render(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, TupleExpr):
        return "(" + ", ".join(format_expr(x) for x in e.items) + ")"
    if isinstance(e, UnOp):
        if e.op == "neg":
            return f"-({format_expr(e.operand)})"
        return "!" + _wrap(e.operand)
    return f"{_wrap(e.left)} {e.op} {_wrap(e.right)}"


def format_rule(r: RuleSyntax) -> str:
    heads = lambda ps: ", ".join(format_pattern(p) for p in ps)
    if r.kind == SIMPAGATION:
        lhs, arrow = f"{heads(r.kept)} \\ {heads(r.removed)}", "<=>"
    elif r.kind == PROPAGATION:
        lhs, arrow = heads(r.kept), "==>"
    else:
        lhs, arrow = heads(r.removed), "<=>"
    rhs = ""
    if r.guard is not None:
        rhs += f" {format_expr(r.guard)} |"
    if r.body:
        rhs += " " + ", ".join(format_expr(b) for b in r.body)
    return f"{r.name} @ {lhs} {arrow}{rhs} ."


def format_program(rules) -> str:
    return "".join(format_rule(r) + "\n" for r in rules)

