"""The free program algebra: single rules and their n-ary composition.

A program is either a :class:`Rule` or a :class:`Composite` of at least two
programs.  :func:`fold` is the catamorphism that maps a program into any
other algebra given by a rule case and a composition case.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

from .errors import DuplicateRuleError, EmptyHeadError, EmptyProgramError


@dataclass(frozen=True, eq=False)
class Rule:
    """A ground rule.

    ``kept`` and ``removed`` are sequences of unary predicates on values.
    ``guard`` and ``body`` take the matched values positionally, kept values
    first; ``body`` returns a sequence of new values.
    """

    name: str
    kept: tuple
    removed: tuple
    guard: Callable[..., bool]
    body: Callable[..., Sequence]
    head: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.kept) + tuple(self.removed))

    @property
    def arity(self) -> int:
        return len(self.head)

    def __repr__(self):
        return f"Rule({self.name!r}, kept={len(self.kept)}, removed={len(self.removed)})"


@dataclass(frozen=True)
class Composite:
    children: tuple

    def __repr__(self):
        return f"Composite({list(self.children)!r})"


Program = Union[Rule, Composite]


def _always(*_):
    return True


def _nothing(*_):
    return ()


def make_rule(name, kept=(), removed=(), guard=None, body=None) -> Rule:
    kept, removed = tuple(kept), tuple(removed)
    if not kept and not removed:
        raise EmptyHeadError(f"rule {name!r} has neither a kept nor a removed head")
    return Rule(name, kept, removed, guard or _always, body or _nothing)


def rules_of(p: Program) -> list[Rule]:
    """Rules of ``p`` in left-to-right order."""
    if isinstance(p, Rule):
        return [p]
    return [r for c in p.children for r in rules_of(c)]


def compose_programs(ps: Sequence[Program]) -> Program:
    ps = list(ps)
    if not ps:
        raise EmptyProgramError("cannot compose an empty sequence of programs")
    if len(ps) == 1:
        return ps[0]
    children = []
    for p in ps:
        children.extend(p.children if isinstance(p, Composite) else [p])
    seen = set()
    for r in rules_of(Composite(tuple(children))):
        if r.name in seen:
            raise DuplicateRuleError(f"duplicate rule name {r.name!r}")
        seen.add(r.name)
    return Composite(tuple(children))


def fold(rho: Callable, nu: Callable, p: Program):
    """Structural recursion over ``p``.

    ``rho(name, kept, removed, guard, body)`` handles a rule; ``nu(*folded)``
    handles a composite, receiving its children already folded.
    """
    if isinstance(p, Rule):
        return rho(p.name, p.kept, p.removed, p.guard, p.body)
    return nu(*(fold(rho, nu, c) for c in p.children))
