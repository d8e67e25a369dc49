"""Execution state ``<query, store, history, index>``.

The state is mutable and owned by a single execution; every operation
updates it in place.  Use :meth:`ExecState.copy` to keep an earlier state.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import AlreadyActiveError, EmptyQueryError, MissingIdentifierError
from .values import Value, render, sort_key


class QueryEntry(NamedTuple):
    id: Optional[int]  # None: not yet activated
    value: Value


class ExecState:
    __slots__ = ("stack", "store", "history", "index")

    def __init__(self, query=(), store=None, history=None, index=1):
        # query is given top-first; ``stack`` keeps the top at the end
        self.stack = [QueryEntry(*e) for e in reversed(list(query))]
        self.store: dict[int, Value] = dict(sorted((store or {}).items()))
        self.history: set[tuple[str, tuple[int, ...]]] = set(history or ())
        self.index = index

    @classmethod
    def initial(cls, values: Iterable[Value]) -> "ExecState":
        return cls([(None, v) for v in values])

    @property
    def query(self) -> list[QueryEntry]:
        """Query entries, top of the stack first."""
        return self.stack[::-1]

    def __len__(self):
        return len(self.stack)

    def top(self) -> QueryEntry:
        if not self.stack:
            raise EmptyQueryError("query is empty")
        return self.stack[-1]

    def copy(self) -> "ExecState":
        s = ExecState.__new__(ExecState)
        s.stack = list(self.stack)
        s.store = dict(self.store)
        s.history = set(self.history)
        s.index = self.index
        return s

    def __eq__(self, other):
        if not isinstance(other, ExecState):
            return NotImplemented
        return (self.stack == other.stack and self.store == other.store
                and self.history == other.history and self.index == other.index)

    def __repr__(self):
        q = ", ".join(f"({'⊥' if i is None else i}, {render(v)})" for i, v in self.query)
        st = ", ".join(f"({i}, {render(v)})" for i, v in self.store.items())
        return f"<[{q}], {{{st}}}, {len(self.history)} records, {self.index}>"

    # query operations

    def push_query(self, values: Sequence[Value]) -> "ExecState":
        """Push ``values`` so that ``values[0]`` becomes the new top."""
        self.stack.extend(QueryEntry(None, v) for v in reversed(values))
        return self

    def pop_query(self) -> "ExecState":
        if not self.stack:
            raise EmptyQueryError("cannot pop an empty query")
        self.stack.pop()
        return self

    # store operations

    def activate(self) -> int:
        """Activate the top query entry and return its fresh identifier."""
        i, c = self.top()
        if i is not None:
            raise AlreadyActiveError(f"top of query is already active with id {i}")
        i = self.index
        self.stack[-1] = QueryEntry(i, c)
        # ids grow monotonically, so insertion order stays ascending-id order
        self.store[i] = c
        self.index = i + 1
        return i

    def remove(self, ids: Sequence[int]) -> "ExecState":
        missing = [i for i in ids if i not in self.store]
        if missing or len(set(ids)) != len(ids):
            raise MissingIdentifierError(f"identifiers not (uniquely) in store: {list(ids)}")
        for i in ids:
            del self.store[i]
        return self

    def alive(self, i: int) -> bool:
        return i in self.store

    # history operations

    def to_history(self, name: str, ids: Sequence[int]) -> "ExecState":
        self.history.add((name, tuple(ids)))
        return self

    def in_history(self, name: str, ids: Sequence[int]) -> bool:
        return (name, tuple(ids)) in self.history

    # serialisation

    def snapshot(self) -> dict:
        return {
            "history": [[n, list(ids)] for n, ids in sorted(self.history)],
            "index": self.index,
            "query": [{"id": i, "value": render(v)} for i, v in self.query],
            "store": [[i, render(v)] for i, v in sorted(self.store.items())],
        }

    def store_values(self) -> list[Value]:
        """Store contents as a multiset, sorted by the value order."""
        return sorted(self.store.values(), key=sort_key)


def query_of(s: ExecState) -> list[QueryEntry]:
    return s.query


def store_of(s: ExecState) -> dict[int, Value]:
    return s.store


def history_of(s: ExecState) -> set:
    return s.history


def index_of(s: ExecState) -> int:
    return s.index
