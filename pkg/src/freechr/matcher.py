"""Refined head matching for a single rule.

The active value is tried at each head position from the rightmost one to
the leftmost.  For a fixed position the remaining slots are filled left to
right, depth first, from store entries in ascending identifier order.  The
first configuration that passes the head predicates, is not in the
propagation history and satisfies the guard wins.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Container, Mapping, Optional, Sequence

from .values import Value

Matching = list  # list[tuple[int, Value]] in head order


def match(
    name: str,
    head: Sequence[Callable[[Value], bool]],
    guard: Callable[..., bool],
    active: tuple[int, Value],
    store: Mapping[int, Value],
    history: Container,
) -> Optional[Matching]:
    n = len(head)
    ia, ca = active
    if n == 1:
        if head[0](ca) and (name, (ia,)) not in history and guard(ca):
            return [active]
        return None

    if n == 2:
        entries = sorted(store.items())
        for j in (1, 0):
            if not head[j](ca):
                continue
            h = head[1 - j]
            for e in entries:
                i, c = e
                if i == ia or not h(c):
                    continue
                if j == 1:
                    if (name, (i, ia)) not in history and guard(c, ca):
                        return [e, active]
                elif (name, (ia, i)) not in history and guard(ca, c):
                    return [active, e]
        return None

    entries = None
    # per-slot partner candidates, filtered by that slot's head predicate
    pools: list = [None] * n
    for j in range(n - 1, -1, -1):
        if not head[j](ca):
            continue
        if entries is None:
            entries = sorted(store.items())
        slots = []
        for p in range(n):
            if p == j:
                slots.append((active,))
                continue
            if pools[p] is None:
                h = head[p]
                pools[p] = [e for e in entries if e[0] != ia and h(e[1])]
            if not pools[p]:
                break
            slots.append(pools[p])
        else:
            # product enumerates the slots left to right like a nested depth-first loop
            for combo in product(*slots):
                ids = tuple([e[0] for e in combo])
                if len(set(ids)) < n:
                    continue
                if (name, ids) in history:
                    continue
                if guard(*[e[1] for e in combo]):
                    return list(combo)
    return None

