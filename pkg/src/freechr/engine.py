"""Refined executor: rule application, composition and the run driver.

A compiled program is an :class:`Executor`, a callable
``(is_last, state) -> StepResult``.  :func:`run` drives it from an initial
query until the query is empty, recording a :class:`Trace`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .errors import StepBudgetExceeded
from .matcher import match
from .program import Program, Rule, fold
from .state import ExecState, QueryEntry
from .values import INT_MAX, INT_MIN, Value, check_value, render

DEFAULT_MAX_STEPS = 1_000_000


class StepResult(NamedTuple):
    state: ExecState
    fired: bool


@dataclass
class TraceEvent:
    step: int
    kind: str  # activate | pop_dead | drop | apply
    fields: dict
    state: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {"step": self.step, "kind": self.kind, **self.fields}
        if self.state is not None:
            d["state"] = self.state
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


@dataclass
class Trace:
    """Event sink.  ``step`` is the number of the current root-level call."""

    enabled: bool = True
    snapshots: bool = False
    events: list = field(default_factory=list)
    step: int = 0

    def emit(self, kind: str, state: ExecState, **fields):
        if not self.enabled:
            return
        snap = state.snapshot() if self.snapshots else None
        self.events.append(TraceEvent(self.step, kind, fields, snap))

    def apply_events(self) -> list:
        return [e for e in self.events if e.kind == "apply"]

    def to_jsonl(self) -> str:
        return "".join(e.to_json() + "\n" for e in self.events)

    def write(self, path):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_jsonl())


_NO_TRACE = Trace(enabled=False)

Executor = Callable[[bool, ExecState], StepResult]


# bypasses the generated NamedTuple constructors, which dominate small steps
_result = tuple.__new__


def rule_executor(rule: Rule, trace: Trace = _NO_TRACE) -> Executor:
    """Build the executor for one rule, with its fields bound once."""
    name, head, guard, body = rule.name, rule.head, rule.guard, rule.body
    nkept = len(rule.kept)
    tracing = trace.enabled
    emit = trace.emit

    def step(is_last: bool, s: ExecState) -> StepResult:
        # state operations are inlined on this hot path; see ExecState for their definitions
        stack, store = s.stack, s.store
        while True:
            if not stack:
                return _result(StepResult, (s, False))
            ia, ca = stack[-1]
            if ia is None:
                ia = s.index
                stack[-1] = _result(QueryEntry, (ia, ca))
                store[ia] = ca
                s.index = ia + 1
                if tracing:
                    emit("activate", s, id=ia, value=render(ca))
                break
            if ia in store:
                break
            stack.pop()
            if tracing:
                emit("pop_dead", s, id=ia)

        m = match(name, head, guard, (ia, ca), store, s.history)
        if m is None:
            if is_last:
                stack.pop()
                if tracing:
                    emit("drop", s, id=ia)
            return _result(StepResult, (s, False))

        ids = [i for i, _ in m]
        s.history.add((name, tuple(ids)))
        removed = ids[nkept:]
        for i in removed:
            del store[i]
        out = body(*[c for _, c in m])
        for v in out:
            if type(v) is not int or not INT_MIN <= v <= INT_MAX:
                check_value(v)
        stack.extend([_result(QueryEntry, (None, v)) for v in reversed(out)])
        if tracing:
            emit("apply", s, rule=name, matched=ids, removed=removed,
                 body=[render(v) for v in out])
        return _result(StepResult, (s, True))

    return step


def rule_step(rule: Rule, is_last: bool, s: ExecState, trace: Trace = _NO_TRACE) -> StepResult:
    """One refined step of a single rule: activate, match, then apply or drop."""
    return rule_executor(rule, trace)(is_last, s)


def compose_executor(children: Sequence[Executor]) -> Executor:
    children = tuple(children)
    if not children:
        return lambda is_last, s: _result(StepResult, (s, False))
    *init, last = children

    def step(is_last: bool, s: ExecState) -> StepResult:
        for child in init:
            r = child(False, s)
            if r[1]:
                return r
        return last(is_last, s)

    return step


def compose_step(children: Sequence[Executor], is_last: bool, s: ExecState) -> StepResult:
    """Try children in order; only the last inherits ``is_last``."""
    return compose_executor(children)(is_last, s)


def compile(p: Program, trace: Trace = _NO_TRACE, rule=rule_step) -> Executor:
    """Fold ``p`` into an executor.  ``rule`` replaces the rule case of the fold."""

    def rho(name, kept, removed, guard, body):
        r = Rule(name, kept, removed, guard, body)
        if rule is rule_step:
            return rule_executor(r, trace)
        return partial(rule, r, trace=trace)

    def nu(*children):
        return compose_executor(children)

    return fold(rho, nu, p)


class StepMonitor:
    """Hooks called around every root-level call of :func:`run`."""

    def before(self, state: ExecState):
        pass

    def after(self, state: ExecState, fired: bool):
        pass


def run(
    p: Program,
    initial_values: Iterable[Value] = (),
    max_steps: int = DEFAULT_MAX_STEPS,
    *,
    trace: bool | Trace = True,
    snapshots: bool = False,
    monitors: Sequence[StepMonitor] = (),
    rule=rule_step,
) -> tuple[ExecState, Trace]:
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    if not isinstance(trace, Trace):
        trace = Trace(enabled=bool(trace), snapshots=snapshots)
    s = ExecState.initial(check_value(v) for v in initial_values)
    execute = compile(p, trace, rule)
    steps = 0
    while s.stack:
        if steps >= max_steps:
            raise StepBudgetExceeded(max_steps, s, trace)
        steps += 1
        trace.step = steps
        if monitors:
            for mon in monitors:
                mon.before(s)
            s, fired = execute(True, s)
            for mon in monitors:
                mon.after(s, fired)
        else:
            s = execute(True, s)[0]
    return s, trace
