"""Backtracking search for finite operation tables constrained by identities.

Tables are flattened into one cell vector. Each identity instance is compiled
to a closure over that vector; evaluating it either decides the instance or
names the first unassigned cell it needs. Undecided instances are parked on
that cell and re-examined only when the cell receives a value, in the spirit
of watched literals in SAT solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

UNSET = -1


@dataclass(frozen=True)
class Table:
    """A block of cells inside the flat vector: ``arity`` 1 or 2 over ``n`` points."""

    name: str
    offset: int
    arity: int
    n: int

    def cell(self, *args: int) -> int:
        if self.arity == 1:
            return self.offset + args[0]
        return self.offset + args[0] * self.n + args[1]


# A term is an int constant or a tuple (table, subterm[, subterm]).
Term = object
Evaluator = Callable[[list], int]


def _compile(term) -> Evaluator:
    """Return f(v) giving the value (>= 0) or -(cell + 1) for a blocking cell."""
    if isinstance(term, int):
        const = term
        return lambda v: const
    table = term[0]
    if table.arity == 1:
        fa = _compile(term[1])
        off = table.offset

        def unary(v):
            a = fa(v)
            if a < 0:
                return a
            c = off + a
            r = v[c]
            return r if r >= 0 else -(c + 1)

        return unary
    fa = _compile(term[1])
    fb = _compile(term[2])
    off, n = table.offset, table.n

    def binary(v):
        a = fa(v)
        if a < 0:
            return a
        b = fb(v)
        if b < 0:
            return b
        c = off + a * n + b
        r = v[c]
        return r if r >= 0 else -(c + 1)

    return binary


def _instance(lhs, rhs):
    fl, fr = _compile(lhs), _compile(rhs)

    def check(v):
        a = fl(v)
        if a < 0:
            return a
        b = fr(v)
        if b < 0:
            return b
        return 1 if a == b else 0

    return check


def solve(
    size: int,
    domains: Sequence[Sequence[int]],
    order: Sequence[int],
    equations: Sequence[tuple],
) -> Iterator[tuple[int, ...]]:
    """Yield every full assignment satisfying all ``(lhs, rhs)`` equations.

    ``order`` lists the cells in branching order; assignments are produced in
    lexicographic order of the values along ``order``.
    """
    checks = [_instance(l, r) for l, r in equations]
    v = [UNSET] * size
    watches: list[list[int]] = [[] for _ in range(size)]
    for i, chk in enumerate(checks):
        res = chk(v)
        if res == 0:
            return
        if res < 0:
            watches[-res - 1].append(i)

    depth_limit = len(order)

    def assign(cell: int, value: int):
        """Set a cell and wake its watchers; return (ok, trail)."""
        v[cell] = value
        parked = watches[cell]
        watches[cell] = []
        moved = []
        for i in parked:
            res = checks[i](v)
            if res == 0:
                return False, parked, moved
            if res < 0:
                c2 = -res - 1
                watches[c2].append(i)
                moved.append(c2)
        return True, parked, moved

    def undo(cell: int, parked, moved):
        for c2 in reversed(moved):
            watches[c2].pop()
        watches[cell] = parked
        v[cell] = UNSET

    def rec(k: int):
        if k == depth_limit:
            yield tuple(v)
            return
        cell = order[k]
        for value in domains[cell]:
            ok, parked, moved = assign(cell, value)
            if ok:
                yield from rec(k + 1)
            undo(cell, parked, moved)

    yield from rec(0)
