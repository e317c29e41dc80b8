"""Coloured Cayley graphs.

The graph of (G, S) has the elements of G as vertices and, for every g in
G and s in S, an edge {g, s*g}; the edge is coloured by the colour class
{s, s^-1}.  Involution classes are singletons {s} and carry a single edge.
The vertex order is the group's deterministic element enumeration with the
identity at vertex 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fgroup import DEFAULT_GRAPH_LIMIT, FiniteGroup, LimitExceeded


class InvalidConnectionSet(ValueError):
    """Connection set contains the identity or is not inverse-closed."""


@dataclass(frozen=True)
class ConnectionSet:
    """Inverse-closed, identity-free subset of a group."""

    group: FiniteGroup
    elements: tuple

    @classmethod
    def from_elements(cls, group: FiniteGroup, elems,
                      close_inverses: bool = False) -> "ConnectionSet":
        e = group.identity()
        seen = set()
        out = []
        for s in elems:
            if s == e:
                raise InvalidConnectionSet("identity in connection set")
            for x in ((s, group.invert(s)) if close_inverses else (s,)):
                if x not in seen:
                    seen.add(x)
                    out.append(x)
        for s in out:
            if group.invert(s) not in seen:
                raise InvalidConnectionSet(
                    f"not inverse-closed: {group.elem_str(s)} present, "
                    f"inverse missing")
        idx = group.element_index()
        out.sort(key=idx.__getitem__)
        return cls(group=group, elements=tuple(out))

    def colour_classes(self) -> list[tuple]:
        """Colour classes {s, s^-1}, ordered by representative index.

        Each class is a 1-tuple (involution) or 2-tuple (s, s^-1) with the
        lower-indexed element first.
        """
        idx = self.group.element_index()
        done = set()
        classes = []
        for s in self.elements:          # already sorted by index
            if s in done:
                continue
            si = self.group.invert(s)
            done.add(s)
            if si == s:
                classes.append((s,))
            else:
                done.add(si)
                classes.append((s, si))
        classes.sort(key=lambda c: idx[c[0]])
        return classes


class ColouredCayleyGraph:
    """Cay(G, S) with the canonical {s, s^-1} edge colouring."""

    def __init__(self, group: FiniteGroup, conn: ConnectionSet,
                 graph_limit: int = DEFAULT_GRAPH_LIMIT):
        if conn.group is not group:
            raise ValueError("connection set belongs to a different group")
        n = group.order()
        if n > graph_limit:
            raise LimitExceeded(
                f"group order {n} exceeds graph limit {graph_limit}")
        self.group = group
        self.conn = conn
        self.n = n
        self.elems = group.elements()
        self.index = group.element_index()
        self.colours = conn.colour_classes()
        # left-multiplication rows per colour member: row[v] = index(s * v)
        mul = group.multiply
        self.left_rows = [
            [[self.index[mul(s, v)] for v in self.elems] for s in cls]
            for cls in self.colours
        ]
        # colour-neighbour sets, cn[v][c] = sorted tuple of c-neighbours of v
        self.cn = [
            tuple(tuple(sorted({row[v] for row in rows}))
                  for rows in self.left_rows)
            for v in range(n)
        ]

    # -- basic queries ---------------------------------------------------------

    def neighbours(self, v: int) -> list[tuple[int, int]]:
        """(neighbour, colour-id) pairs for vertex v."""
        out = []
        for c, nbrs in enumerate(self.cn[v]):
            out.extend((u, c) for u in nbrs)
        return out

    def bfs_order(self) -> tuple[list[int], list[tuple[int, int] | None]]:
        """BFS order from the identity vertex and (parent, colour) per vertex.

        Cached; the order is fixed by colour-id then class-member order.
        """
        cached = getattr(self, "_bfs", None)
        if cached is None:
            parent: list[tuple[int, int] | None] = [None] * self.n
            seen = [False] * self.n
            order = [0]
            seen[0] = True
            qi = 0
            while qi < len(order):
                v = order[qi]
                qi += 1
                for c, rows in enumerate(self.left_rows):
                    for row in rows:
                        u = row[v]
                        if not seen[u]:
                            seen[u] = True
                            parent[u] = (v, c)
                            order.append(u)
            cached = (order, parent)
            self._bfs = cached
        return cached

    def is_connected(self) -> bool:
        order, _ = self.bfs_order()
        return len(order) == self.n

    def generates(self) -> bool:
        """Group-theoretic connectivity test: <S> = G.

        Must (and does, see tests) agree with BFS reachability.
        """
        H = self.group.generated_subgroup(self.conn.elements)
        return H.order() == self.n

    # -- export ------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        g = self.group
        edges = []
        seen = set()
        for v in range(self.n):
            for c, nbrs in enumerate(self.cn[v]):
                for u in nbrs:
                    key = (min(u, v), max(u, v), c)
                    if key not in seen:
                        seen.add(key)
                        edges.append([key[0], key[1], c])
        edges.sort()
        return {
            "vertices": [g.elem_str(x) for x in self.elems],
            "colours": {str(c): [g.elem_str(s) for s in cls]
                        for c, cls in enumerate(self.colours)},
            "edges": edges,
        }


def build(group: FiniteGroup, conn: ConnectionSet,
          graph_limit: int = DEFAULT_GRAPH_LIMIT) -> ColouredCayleyGraph:
    return ColouredCayleyGraph(group, conn, graph_limit)
