"""Independent oracles and engine mutants used across the test suite."""
from itertools import permutations

from freechr.engine import StepMonitor, StepResult, Trace
from freechr.matcher import match
from freechr.values import check_value, render


def brute_match(name, head, guard, active, store, history):
    """Enumerate every injective assignment in refined order, no pruning."""
    n = len(head)
    others = [e for e in sorted(store.items()) if e[0] != active[0]]
    for j in reversed(range(n)):
        for combo in permutations(others, n - 1):
            cand = list(combo[:j]) + [active] + list(combo[j:])
            if not all(h(c) for h, (_, c) in zip(head, cand)):
                continue
            if (name, tuple(i for i, _ in cand)) in history:
                continue
            if guard(*(c for _, c in cand)):
                return cand
    return None


def euclid(values):
    g = 0
    for v in values:
        a, b = g, v
        while b:
            a, b = b, a % b
        g = a
    return g


class ProgressMonitor(StepMonitor):
    """Every root-level step must shrink the query, bump the index or grow the history."""

    def __init__(self):
        self.steps = 0
        self.violations = []

    def before(self, s):
        self._b = (len(s), s.index, len(s.history))

    def after(self, s, fired):
        self.steps += 1
        q, i, h = self._b
        if not (len(s) < q or s.index > i or len(s.history) > h):
            self.violations.append((self._b, (len(s), s.index, len(s.history))))


class EventCounter(StepMonitor):
    """Records, per root-level call, fired flag and number of apply events emitted."""

    def __init__(self, trace):
        self.trace = trace
        self.calls = []

    def before(self, s):
        self._n = len(self.trace.apply_events())
        self._h = len(s.history)

    def after(self, s, fired):
        self.calls.append((fired, len(self.trace.apply_events()) - self._n, len(s.history) - self._h))


def make_mutant(kind):
    """A copy of the rule step with one deliberate semantic fault.

    kind: "no_history" skips recording, "remove_kept" also removes kept
    values, "reverse_body" pushes the body in reversed order.
    """

    def step(rule, is_last, s, trace=Trace(enabled=False)):
        while True:
            if not len(s):
                return StepResult(s, False)
            ia, ca = s.top()
            if ia is None:
                ia = s.activate()
                trace.emit("activate", s, id=ia, value=render(ca))
            if s.alive(ia):
                break
            s.pop_query()
            trace.emit("pop_dead", s, id=ia)
        m = match(rule.name, rule.head, rule.guard, (ia, ca), s.store, s.history)
        if m is None:
            if is_last:
                s.pop_query()
                trace.emit("drop", s, id=ia)
            return StepResult(s, False)
        ids = [i for i, _ in m]
        values = [c for _, c in m]
        if kind != "no_history":
            s.to_history(rule.name, ids)
        removed = ids if kind == "remove_kept" else ids[len(rule.kept):]
        s.remove(removed)
        out = [check_value(v) for v in rule.body(*values)]
        if kind == "reverse_body":
            out = out[::-1]
        s.push_query(out)
        trace.emit("apply", s, rule=rule.name, matched=ids, removed=removed,
                   body=[render(v) for v in out])
        return StepResult(s, True)

    step.__name__ = f"mutant_{kind}"
    return step


MUTANTS = ["no_history", "remove_kept", "reverse_body"]
