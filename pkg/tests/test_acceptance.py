"""Acceptance criteria for the engine, oracle and DSL.

Each checker takes the rule-step implementation under test and returns
``(ok, detail)`` so the mutation criterion can rerun the others against
deliberately broken engines. One summary line per criterion is printed at
the end of the session.
"""
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES
from freechr import Sym, library, match, rule_step, run
from freechr.errors import ChrError
from freechr.oracle import SoundnessMonitor, Status
from freechr.textlang import load_program
from helpers import MUTANTS, ProgressMonitor, brute_match, euclid, make_mutant

SEED = 20261014


def budget(p, q):
    """Mutants get twice the reference engine's step count for the same run."""
    return 2 * run(p, q, trace=False)[1].step + 10


def gcd_queries():
    rng = random.Random(SEED)
    return [[rng.randint(1, 1000) for _ in range(rng.randint(1, 6))] for _ in range(200)]


def golden_gcd_query():
    return [6, 9]


def golden_trans_query():
    return [(Sym("a"), Sym("b")), (Sym("b"), Sym("c"))]


def all_runs():
    """(program, query) pairs exercised by criteria 1 to 3."""
    runs = [(library.gcd(), golden_gcd_query()), (library.trans(), golden_trans_query())]
    runs += [(library.gcd(), q) for q in gcd_queries()]
    runs.append((library.gcd(), [0]))
    return runs


def record(number, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")


# -- checkers ---------------------------------------------------------------

def check_golden_gcd(rule=rule_step, timed=True):
    p, q = library.gcd(), golden_gcd_query()
    try:
        s, _ = run(p, q, budget(p, q), rule=rule)
    except ChrError as e:
        return False, f"raised {type(e).__name__}"
    want_history = {("subtract", (1, 2)), ("subtract", (3, 1)), ("subtract", (3, 4)), ("zero", (5,))}
    got = (s.query, s.store, s.history, s.index)
    if got != ([], {3: 3}, want_history, 6):
        return False, f"final state {got!r}"
    if not timed:
        return True, "exact"
    best = float("inf")
    for _ in range(20):
        t0 = time.perf_counter()
        run(library.gcd(), golden_gcd_query(), rule=rule)
        best = min(best, time.perf_counter() - t0)
    return best < 1e-3, f"exact, best of 20 runs {best * 1e3:.3f} ms"


def check_golden_trans(rule=rule_step):
    p, q = library.trans(), golden_trans_query()
    try:
        s, trace = run(p, q, budget(p, q), rule=rule)
    except ChrError as e:
        return False, f"raised {type(e).__name__}"
    a, b, c = Sym("a"), Sym("b"), Sym("c")
    applies = len(trace.apply_events())
    ok = (sorted(s.store.values(), key=repr) == sorted([(a, b), (b, c), (a, c)], key=repr)
          and s.history == {("trans", (1, 2))} and s.index == 4 and applies == 1)
    return ok, f"{applies} apply event(s), index {s.index}"


def check_gcd_oracle():
    queries = gcd_queries()
    best = float("inf")
    wrong = []
    for attempt in range(3):
        t0 = time.perf_counter()
        finals = [run(library.gcd(), q, trace=False)[0] for q in queries]
        zero = run(library.gcd(), [0], trace=False)[0]
        best = min(best, time.perf_counter() - t0)
    for q, s in zip(queries, finals):
        if list(s.store.values()) != [euclid(q)]:
            wrong.append(q)
    ok = not wrong and zero.store == {} and best < 1.0
    return ok, f"{len(wrong)} wrong of {len(queries)}, zero store {zero.store}, best of 3 {best:.3f} s"


def check_soundness_all(rule=rule_step, stop_early=False):
    steps = fails = unverified = 0
    for p, q in all_runs():
        mon = SoundnessMonitor(p, max_size=6)
        try:
            run(p, q, budget(p, q), trace=False, monitors=[mon], rule=rule)
        except ChrError as e:
            return False, f"run on {q!r} raised {type(e).__name__}"
        steps += len(mon.verdicts)
        fails += len(mon.failures)
        unverified += mon.count(Status.UNVERIFIED)
        if fails and stop_early:
            break
    return fails == 0, f"{steps} steps, {fails} fail, {unverified} unverified"


def random_predicate(rng):
    kind = rng.choice(["any", "lit", "ge", "lt", "sym"])
    if kind == "any":
        return lambda v: True
    if kind == "lit":
        k = rng.randint(0, 4)
        return lambda v: type(v) is int and v == k
    if kind == "ge":
        k = rng.randint(0, 4)
        return lambda v: type(v) is int and v >= k
    if kind == "lt":
        k = rng.randint(0, 4)
        return lambda v: type(v) is int and v < k
    return lambda v: isinstance(v, Sym)


def random_instance(rng):
    n = rng.randint(1, 3)
    head = tuple(random_predicate(rng) for _ in range(n))
    pool = [0, 1, 2, 3, 4, Sym("a"), Sym("b")]
    ids = rng.sample(range(1, 20), rng.randint(1, 6))
    store = {i: rng.choice(pool) for i in ids}
    active = rng.choice(sorted(store.items()))
    mode = rng.choice(["true", "sum", "distinct"])
    if mode == "true":
        guard = lambda *vs: True
    elif mode == "sum":
        t = rng.randint(0, 8)
        guard = lambda *vs: sum(v for v in vs if type(v) is int) >= t
    else:
        guard = lambda *vs: len(set(vs)) == len(vs)
    history = set()
    for _ in range(rng.randint(0, 4)):
        if len(ids) >= n:
            history.add(("r", tuple(rng.sample(ids, n))))
    return head, guard, active, store, history


def valid_matching(m, head, guard, active, store, history):
    ids = [i for i, _ in m]
    return (len(m) == len(head) and len(set(ids)) == len(ids) and active in m
            and all(store.get(i) == c and i in store for i, c in m)
            and all(h(c) for h, (_, c) in zip(head, m))
            and ("r", tuple(ids)) not in history
            and guard(*(c for _, c in m)))


def check_matcher(count=500):
    rng = random.Random(SEED)
    disagree = invalid = found = 0
    for _ in range(count):
        head, guard, active, store, history = random_instance(rng)
        got = match("r", head, guard, active, store, history)
        want = brute_match("r", head, guard, active, store, history)
        if (got is None) != (want is None):
            disagree += 1
        if got is not None:
            found += 1
            if not valid_matching(got, head, guard, active, store, history):
                invalid += 1
    return disagree == 0 and invalid == 0, \
        f"{count} instances, {found} matched, {disagree} disagreements, {invalid} invalid"


def check_progress():
    steps = violations = 0
    for p, q in all_runs():
        mon = ProgressMonitor()
        run(p, q, trace=False, monitors=[mon])
        steps += mon.steps
        violations += len(mon.violations)
    return violations == 0, f"{steps} steps, {violations} violations"


def acyclic_edges(rng):
    edges = []
    for _ in range(rng.randint(0, 5)):
        x, y = sorted(rng.sample("abcde", 2))
        edges.append((Sym(x), Sym(y)))
    return edges


def check_dsl(count=100):
    rng = random.Random(SEED)
    pairs = [
        (load_program(library.GCD_SOURCE), library.gcd(),
         lambda: [rng.randint(0, 60) for _ in range(rng.randint(0, 5))]),
        (load_program(library.TRANS_SOURCE), library.trans(), lambda: acyclic_edges(rng)),
    ]
    mismatches = 0
    for k in range(count):
        compiled, hand, gen = pairs[k % 2]
        q = gen()
        a = run(compiled, q, snapshots=True)[1].to_jsonl()
        b = run(hand, q, snapshots=True)[1].to_jsonl()
        mismatches += a.encode() != b.encode()
    return mismatches == 0, f"{count} queries, {mismatches} mismatching traces"


def check_mutants():
    results = {}
    for kind in MUTANTS:
        rule = make_mutant(kind)
        failed = []
        if not check_golden_gcd(rule, timed=False)[0]:
            failed.append(1)
        if not check_golden_trans(rule)[0]:
            failed.append(2)
        if not check_soundness_all(rule, stop_early=True)[0]:
            failed.append(4)
        results[kind] = failed
    ok = all(results.values())
    detail = ", ".join(f"{k} -> fails {v or 'nothing'}" for k, v in results.items())
    return ok, detail


# -- tests ------------------------------------------------------------------

CRITERIA = [
    (1, check_golden_gcd),
    (2, check_golden_trans),
    (3, check_gcd_oracle),
    (4, check_soundness_all),
    (5, check_matcher),
    (6, check_progress),
    (7, check_dsl),
    (8, check_mutants),
]


@pytest.mark.parametrize("number,checker", CRITERIA, ids=[f"criterion_{n}" for n, _ in CRITERIA])
def test_criterion(number, checker):
    ok, detail = checker()
    record(number, ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail
