"""Abstract finite-group contract.

Every group in this package is a `FiniteGroup`: an object that owns the
arithmetic (identity, multiply, invert) over immutable, hashable element
values.  Two realizations exist: permutation-backed groups (permcore) and
bitvector-backed 2-groups (higman).  Enumeration order is deterministic:
identity first, then breadth-first closure over the generator list, so
reports and witnesses are reproducible across runs.
"""

from __future__ import annotations

import abc
from typing import Any, Callable, Iterable

DEFAULT_ENUM_LIMIT = 10**6
DEFAULT_GRAPH_LIMIT = 4096

# full index-based multiplication tables are cached only up to this order
MULT_TABLE_LIMIT = 1024


class LimitExceeded(Exception):
    """An enumeration, graph-size or search budget limit was hit."""


def closure(identity: Any, gens: Iterable[Any], mul: Callable[[Any, Any], Any],
            limit: int = DEFAULT_ENUM_LIMIT) -> list:
    """Breadth-first closure of ``gens`` under left multiplication.

    Returns every product exactly once, identity first, in a deterministic
    order fixed by the generator list.
    """
    elems = [identity]
    seen = {identity}
    i = 0
    gens = list(gens)
    while i < len(elems):
        x = elems[i]
        i += 1
        for g in gens:
            y = mul(g, x)
            if y not in seen:
                seen.add(y)
                elems.append(y)
                if len(elems) > limit:
                    raise LimitExceeded(
                        f"closure exceeded enumeration limit {limit}")
    return elems


class FiniteGroup(abc.ABC):
    """Finite group given by generators and element arithmetic."""

    @abc.abstractmethod
    def identity(self):
        ...

    @abc.abstractmethod
    def multiply(self, a, b):
        """Group product a*b (a applied first under the action convention)."""

    @abc.abstractmethod
    def invert(self, a):
        ...

    @abc.abstractmethod
    def generators(self) -> list:
        ...

    # -- element enumeration ------------------------------------------------

    def elements(self, limit: int = DEFAULT_ENUM_LIMIT) -> list:
        """All elements, identity first, deterministic order.  Cached."""
        cached = getattr(self, "_elements", None)
        if cached is None:
            cached = closure(self.identity(), self.generators(),
                             self.multiply, limit)
            self._elements = cached
        return cached

    def element_set(self, limit: int = DEFAULT_ENUM_LIMIT) -> frozenset:
        cached = getattr(self, "_element_set", None)
        if cached is None:
            cached = frozenset(self.elements(limit))
            self._element_set = cached
        return cached

    def element_index(self, limit: int = DEFAULT_ENUM_LIMIT) -> dict:
        """Map element -> position in `elements()`."""
        cached = getattr(self, "_element_index", None)
        if cached is None:
            cached = {x: i for i, x in enumerate(self.elements(limit))}
            self._element_index = cached
        return cached

    def order(self) -> int:
        return len(self.elements())

    def contains(self, x) -> bool:
        return x in self.element_set()

    def mult_table(self) -> list:
        """Index-based multiplication table, mt[a][b] = index of a*b.

        Only available for orders up to MULT_TABLE_LIMIT.
        """
        cached = getattr(self, "_mult_table", None)
        if cached is None:
            elems = self.elements()
            if len(elems) > MULT_TABLE_LIMIT:
                raise LimitExceeded(
                    f"mult_table limited to order {MULT_TABLE_LIMIT}")
            idx = self.element_index()
            mul = self.multiply
            cached = [[idx[mul(a, b)] for b in elems] for a in elems]
            self._mult_table = cached
        return cached

    # -- derived element arithmetic -----------------------------------------

    def conjugate(self, x, by):
        """x^by = by^-1 * x * by."""
        return self.multiply(self.multiply(self.invert(by), x), by)

    def commutes(self, a, b) -> bool:
        return self.multiply(a, b) == self.multiply(b, a)

    def element_order(self, x) -> int:
        e = self.identity()
        k = 1
        y = x
        while y != e:
            y = self.multiply(y, x)
            k += 1
        return k

    def is_involution(self, x) -> bool:
        e = self.identity()
        return x != e and self.multiply(x, x) == e

    def involutions(self, limit: int = DEFAULT_ENUM_LIMIT) -> list:
        e = self.identity()
        return [x for x in self.elements(limit)
                if x != e and self.multiply(x, x) == e]

    def is_central(self, x) -> bool:
        return all(self.commutes(x, g) for g in self.generators())

    # -- subgroups -----------------------------------------------------------

    def generated_subgroup(self, gens: Iterable,
                           limit: int = DEFAULT_ENUM_LIMIT) -> "FiniteGroup":
        return GeneratedSubgroup(self, list(gens), limit=limit)

    # -- element I/O ---------------------------------------------------------

    def elem_str(self, x) -> str:
        return str(x)

    def elem_parse(self, text: str):
        raise NotImplementedError


class GeneratedSubgroup(FiniteGroup):
    """Subgroup of a parent group, realized as a closure of generators."""

    def __init__(self, parent: FiniteGroup, gens: list,
                 limit: int = DEFAULT_ENUM_LIMIT):
        self.parent = parent
        e = parent.identity()
        seen = set()
        uniq = []
        for g in gens:
            if g != e and g not in seen:
                seen.add(g)
                uniq.append(g)
        self._gens = uniq
        self._limit = limit

    def identity(self):
        return self.parent.identity()

    def multiply(self, a, b):
        return self.parent.multiply(a, b)

    def invert(self, a):
        return self.parent.invert(a)

    def generators(self) -> list:
        return list(self._gens)

    def elements(self, limit: int | None = None) -> list:
        return super().elements(limit if limit is not None else self._limit)

    def elem_str(self, x) -> str:
        return self.parent.elem_str(x)

    def elem_parse(self, text: str):
        return self.parent.elem_parse(text)


def subgroup_index(G: FiniteGroup, H: FiniteGroup) -> int:
    """|G : H|.  H must be given by generators lying in G."""
    for h in H.generators():
        if not G.contains(h):
            raise ValueError("H is not a subgroup of G: generator outside G")
    og, oh = G.order(), H.order()
    if og % oh != 0:
        raise ValueError("inconsistent subgroup orders")  # defensive; cannot happen
    return og // oh
