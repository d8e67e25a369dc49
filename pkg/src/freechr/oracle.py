"""Nondeterministic multiset semantics used as a reference for the engine.

Abstract states are canonical multisets: tuples of values sorted by the
value order.  :func:`abstract_steps` enumerates every successor reachable
by one rule application; :func:`check_soundness` verifies that a single
root-level engine call either left the abstraction unchanged or moved it
to one of those successors.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Optional

from .engine import StepMonitor
from .errors import OracleBudgetExceeded
from .program import Program, rules_of
from .state import ExecState
from .values import Value, render, sort_key

DEFAULT_CAP = 10_000

AbstractState = tuple


def multiset(values: Iterable[Value]) -> AbstractState:
    return tuple(sorted(values, key=sort_key))


def abstract_r(s: ExecState) -> AbstractState:
    """Store values plus the not-yet-activated query values."""
    return multiset([*s.store.values(), *(c for i, c in s.query if i is None)])


def abstract_steps(p: Program, S: Iterable[Value], cap: int = DEFAULT_CAP) -> set:
    S = multiset(S)
    out = set()
    tried = 0
    for r in rules_of(p):
        n, k = r.arity, len(r.kept)
        head = r.head
        seen = set()
        for idx in permutations(range(len(S)), n):
            tried += 1
            if tried > cap:
                raise OracleBudgetExceeded(f"more than {cap} assignments")
            vals = tuple(S[i] for i in idx)
            # copies of equal values are interchangeable
            if vals in seen:
                continue
            seen.add(vals)
            if not all(h(c) for h, c in zip(head, vals)) or not r.guard(*vals):
                continue
            rest = [S[i] for i in range(len(S)) if i not in idx]
            out.add(multiset([*vals[:k], *r.body(*vals), *rest]))
    return out


def reachable(p: Program, S, T, depth: int, cap: int = DEFAULT_CAP) -> bool:
    S, T = multiset(S), multiset(T)
    frontier, seen = {S}, {S}
    for d in range(depth + 1):
        if T in frontier:
            return True
        if d == depth:
            break
        nxt = set()
        for X in frontier:
            nxt |= abstract_steps(p, X, cap) - seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return False


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNVERIFIED = "unverified"


@dataclass
class Verdict:
    status: Status
    before: AbstractState
    after: AbstractState
    reason: str = ""

    def __bool__(self):
        return self.status is Status.PASS

    @property
    def diff(self) -> tuple[list, list]:
        """(values lost, values gained) going from ``before`` to ``after``."""
        b, a = Counter(self.before), Counter(self.after)
        return multiset((b - a).elements()), multiset((a - b).elements())

    def describe(self) -> str:
        lost, gained = self.diff
        fmt = lambda xs: "{" + ", ".join(render(x) for x in xs) + "}"
        return (f"{self.status.value}: {fmt(self.before)} -> {fmt(self.after)}"
                f" (lost {fmt(lost)}, gained {fmt(gained)}){': ' + self.reason if self.reason else ''}")


def check_abstract(p: Program, before: AbstractState, after: AbstractState,
                   cap: int = DEFAULT_CAP, max_size: Optional[int] = None) -> Verdict:
    if before == after:
        return Verdict(Status.PASS, before, after, "reflexive")
    if max_size is not None and len(before) > max_size:
        return Verdict(Status.UNVERIFIED, before, after, f"multiset larger than {max_size}")
    try:
        succ = abstract_steps(p, before, cap)
    except OracleBudgetExceeded as e:
        return Verdict(Status.UNVERIFIED, before, after, str(e))
    if after in succ:
        return Verdict(Status.PASS, before, after, "one apply")
    return Verdict(Status.FAIL, before, after, "not reachable by one rule application")


def check_soundness(p: Program, s: ExecState, s2: ExecState,
                    cap: int = DEFAULT_CAP, max_size: Optional[int] = None) -> Verdict:
    return check_abstract(p, abstract_r(s), abstract_r(s2), cap, max_size)


@dataclass
class SoundnessMonitor(StepMonitor):
    """Checks every root-level step of a run; attach via ``run(monitors=...)``."""

    program: Program
    cap: int = DEFAULT_CAP
    max_size: Optional[int] = None
    verdicts: list = field(default_factory=list)
    _before: AbstractState = ()

    def before(self, state):
        self._before = abstract_r(state)

    def after(self, state, fired):
        self.verdicts.append(check_abstract(self.program, self._before, abstract_r(state),
                                            self.cap, self.max_size))

    def count(self, status: Status) -> int:
        return sum(v.status is status for v in self.verdicts)

    @property
    def failures(self) -> list:
        return [v for v in self.verdicts if v.status is Status.FAIL]
