"""Built-in example programs, hand-built from closures and as source text."""
from __future__ import annotations

from .program import compose_programs, make_rule


def _is_pair(v):
    return isinstance(v, tuple) and len(v) == 2


def zero():
    return make_rule("zero", [], [lambda n: n == 0], lambda n: True, lambda n: [])


def subtract():
    return make_rule("subtract", [lambda n: 0 < n], [lambda m: 0 < m],
                     lambda n, m: n <= m, lambda n, m: [m - n])


def gcd():
    """Euclid by repeated subtraction; the store ends as {gcd of the query}."""
    return compose_programs([zero(), subtract()])


def trans():
    """Transitive hull of a set of edges ``(x, y)``."""
    return make_rule("trans", [_is_pair, _is_pair], [],
                     lambda e1, e2: e1[1] == e2[0] and e1[0] != e2[1],
                     lambda e1, e2: [(e1[0], e2[1])])


GCD_SOURCE = """\
# greatest common divisor
zero @ 0 <=> .
subtract @ N \\ M <=> 0 < N && 0 < M && N <= M | M - N .
"""

TRANS_SOURCE = """\
# transitive hull
trans @ (X, Y), (Y, Z) ==> X != Z | (X, Z) .
"""

BUILTINS = {"gcd": gcd, "trans": trans}
SOURCES = {"gcd": GCD_SOURCE, "trans": TRANS_SOURCE}
