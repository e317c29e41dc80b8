"""Colour-preserving automorphisms and the CCA decision.

For a connected coloured Cayley graph the full colour-preserving group
Aut_c is transitive (it contains the right-regular representation), so
|Aut_c| = |G| * |stab1| where stab1 is the stabilizer of the identity
vertex.  stab1 is computed by depth-first assignment along a BFS spanning
tree: at a tree edge of colour {s, s^-1} the image of the new vertex must
be an {s, s^-1}-neighbour of the image of its parent, and every edge back
into the assigned region prunes the branch.  The graph is CCA exactly when
every stab1 element acts as a group automorphism.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field

from .cayley import ColouredCayleyGraph, ConnectionSet, build
from .fgroup import DEFAULT_GRAPH_LIMIT, FiniteGroup, LimitExceeded

STAB1_ORACLE_MAX = 8


@dataclass
class VertexStabilizer:
    """All colour-preserving automorphisms fixing the identity vertex."""

    elements: list = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def order_is_power_of_two(self) -> bool:
        n = self.order
        return n >= 1 and (n & (n - 1)) == 0


def _iter_stab1(n: int, cn, order, parent):
    """Yield colour-preserving vertex bijections fixing vertex 0.

    cn[v][c] is the tuple of c-coloured neighbours of v; order/parent give
    a BFS spanning tree rooted at vertex 0 covering all n vertices.

    Every assignment is propagated to a fixpoint before branching: an
    involution-class edge forces the image of the far endpoint, and a
    pair-class edge forces the partner vertex onto the remaining target
    once one member is placed.  c-adjacency is symmetric (the class is
    inverse-closed), so processing each vertex once when it is assigned
    checks every edge constraint from at least one side.
    """
    if len(order) != n:
        raise ValueError("stab1 requires a connected graph")
    ncolours = len(cn[0]) if n else 0
    alpha = [-1] * n
    used = [False] * n
    sys.setrecursionlimit(max(sys.getrecursionlimit(), n + 1000))

    def propagate(queue: list[int], trail: list[int]) -> bool:
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            cnv = cn[v]
            cna = cn[alpha[v]]
            for c in range(ncolours):
                nv = cnv[c]
                na = cna[c]
                if len(nv) == 1:
                    u = nv[0]
                    tgt = na[0]
                    au = alpha[u]
                    if au == -1:
                        if used[tgt]:
                            return False
                        alpha[u] = tgt
                        used[tgt] = True
                        trail.append(u)
                        queue.append(u)
                    elif au != tgt:
                        return False
                else:
                    u1, u2 = nv
                    t1, t2 = na
                    a1 = alpha[u1]
                    a2 = alpha[u2]
                    if a1 != -1 and a2 != -1:
                        if not ((a1 == t1 and a2 == t2)
                                or (a1 == t2 and a2 == t1)):
                            return False
                    elif a1 != -1 or a2 != -1:
                        if a1 != -1:
                            known, free = a1, u2
                        else:
                            known, free = a2, u1
                        if known == t1:
                            tgt = t2
                        elif known == t2:
                            tgt = t1
                        else:
                            return False
                        if used[tgt]:
                            return False
                        alpha[free] = tgt
                        used[tgt] = True
                        trail.append(free)
                        queue.append(free)
        return True

    def search(start_k: int):
        k = start_k
        while k < n and alpha[order[k]] != -1:
            k += 1
        if k == n:
            yield tuple(alpha)
            return
        w = order[k]
        v, c = parent[w]
        # try the identity-consistent image first: the DFS then reaches the
        # identity map without backtracking and explores deviations from the
        # deepest branch points outward, where subtrees are smallest
        for cand in sorted(cn[alpha[v]][c], key=lambda x: x != w):
            if used[cand]:
                continue
            trail = [w]
            alpha[w] = cand
            used[cand] = True
            if propagate([w], trail):
                yield from search(k + 1)
            for u in trail:
                used[alpha[u]] = False
                alpha[u] = -1

    trail = [0]
    alpha[0] = 0
    used[0] = True
    if propagate([0], trail):
        yield from search(1)


def _enumerate_stab1(n: int, cn, order, parent) -> list[tuple]:
    return sorted(_iter_stab1(n, cn, order, parent))


def stab1(graph: ColouredCayleyGraph) -> VertexStabilizer:
    """Identity-vertex stabilizer of Aut_c, as explicit vertex maps."""
    order, parent = graph.bfs_order()
    return VertexStabilizer(_enumerate_stab1(graph.n, graph.cn, order, parent))


def stab1_oracle(graph: ColouredCayleyGraph) -> VertexStabilizer:
    """Anti-drift oracle: filter all (n-1)! bijections fixing vertex 0."""
    n = graph.n
    if n > STAB1_ORACLE_MAX:
        raise LimitExceeded(
            f"stab1_oracle limited to {STAB1_ORACLE_MAX} vertices")
    cn = graph.cn
    ncolours = len(graph.colours)
    out = []
    for rest in itertools.permutations(range(1, n)):
        alpha = (0,) + rest
        if all(alpha[u] in cn[alpha[v]][c]
               for v in range(n)
               for c in range(ncolours)
               for u in cn[v][c]):
            out.append(alpha)
    return VertexStabilizer(sorted(out))


def _automorphism_violation(graph: ColouredCayleyGraph, alpha) -> tuple | None:
    """First (s, v) where alpha(s*v) != alpha(s)*alpha(v), or None."""
    g = graph.group
    elems = graph.elems
    idx = graph.index
    for c, cls in enumerate(graph.colours):
        for m, s in enumerate(cls):
            row = graph.left_rows[c][m]
            a_s = elems[alpha[idx[s]]]
            for v in range(graph.n):
                if alpha[row[v]] != idx[g.multiply(a_s, elems[alpha[v]])]:
                    return (s, elems[v])
    return None


def aut_pm1(group: FiniteGroup, conn: ConnectionSet,
            graph: ColouredCayleyGraph | None = None) -> list[tuple]:
    """Automorphisms of G sending every s in S to s or s^-1.

    S must generate G.  Found by branching over per-colour-class sign
    choices and extending each choice to a homomorphism along the Cayley
    graph; returned as index arrays over group.elements().
    """
    if graph is None:
        graph = build(group, conn, graph_limit=10**9)
    if not graph.is_connected():
        raise ValueError("aut_pm1 requires S to generate G")
    n = graph.n
    classes = graph.colours
    order, _ = graph.bfs_order()
    # per class, per sign: the left-mult row of each member's image
    # (plus sign keeps s; minus sign swaps s and s^-1)
    sign_options = []
    for c, cls in enumerate(classes):
        rows = graph.left_rows[c]
        if len(cls) == 1:
            sign_options.append(((rows[0],),))
        else:
            sign_options.append(((rows[0], rows[1]), (rows[1], rows[0])))
    out = []
    for choice in itertools.product(*sign_options):
        phi = [-1] * n
        taken = [False] * n
        phi[0] = 0
        taken[0] = True
        ok = True
        for v in order:
            pv = phi[v]
            for c in range(len(classes)):
                srows = graph.left_rows[c]
                img_rows = choice[c]
                for m in range(len(srows)):
                    w = srows[m][v]
                    expected = img_rows[m][pv]
                    if phi[w] == -1:
                        if taken[expected]:
                            ok = False
                            break
                        phi[w] = expected
                        taken[expected] = True
                    elif phi[w] != expected:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(phi))
    return sorted(out)


def right_regular_preserves_colours(graph: ColouredCayleyGraph,
                                    exhaustive_max: int = 128) -> bool:
    """Check G_R <= Aut_c: every map v -> v*x preserves every colour class.

    rho_{xy} = rho_y o rho_x, so checking the maps of the group generators
    covers all of G_R; small graphs are checked over every x regardless.
    """
    g = graph.group
    elems = graph.elems
    idx = graph.index
    n = graph.n
    cn = graph.cn
    xs = elems if n <= exhaustive_max else list(g.generators())
    for x in xs:
        rho = [idx[g.multiply(v, x)] for v in elems]
        for v in range(n):
            rv = cn[rho[v]]
            for c, nbrs in enumerate(cn[v]):
                target = rv[c]
                if any(rho[u] not in target for u in nbrs):
                    return False
    return True


@dataclass
class CCAVerdict:
    """Per-graph CCA verdict with order diagnostics.

    stab1_order and autc_order are None when the decision was streamed and
    stopped at a witness before the (possibly enormous) stabilizer was
    fully generated; stab1_checked counts the elements generated.
    """

    is_cca: bool
    connected: bool
    stab1_order: int | None
    autc_order: int | None
    stab1_checked: int = 0
    aut_pm1_order: int | None = None
    witness: tuple | None = None      # violating vertex map, if any

    def to_json_dict(self, graph: ColouredCayleyGraph) -> dict:
        g = graph.group
        d = {
            "group_order": graph.n,
            "S": [g.elem_str(s) for s in graph.conn.elements],
            "connected": self.connected,
            "stab1_order": self.stab1_order,
            "autc_order": self.autc_order,
            "aut_pm1_order": self.aut_pm1_order,
            "is_cca": self.is_cca,
        }
        if self.witness is not None:
            d["witness_alpha"] = list(self.witness)
        return d


def is_cca_graph(graph: ColouredCayleyGraph,
                 with_aut_pm1: bool = True,
                 full_stab: bool = True) -> CCAVerdict:
    """Decide whether a connected coloured Cayley graph is CCA.

    With full_stab the whole vertex stabilizer is materialized and exact
    orders reported.  Without it the stabilizer is streamed in search
    order and the decision stops at the first non-automorphism; a far-
    from-CCA graph can have a stabilizer far too large to list, but its
    first few elements already contain a witness.
    """
    if not graph.is_connected():
        raise ValueError("is_cca_graph requires a connected graph")
    witness = None
    if full_stab:
        stab = stab1(graph)
        for alpha in stab.elements:
            if _automorphism_violation(graph, alpha) is not None:
                witness = alpha
                break
        stab_order: int | None = stab.order
        checked = stab.order
    else:
        order, parent = graph.bfs_order()
        checked = 0
        for alpha in _iter_stab1(graph.n, graph.cn, order, parent):
            checked += 1
            if _automorphism_violation(graph, alpha) is not None:
                witness = alpha
                break
        stab_order = checked if witness is None else None
    apm1 = None
    if with_aut_pm1:
        apm1 = len(aut_pm1(graph.group, graph.conn, graph))
    return CCAVerdict(
        is_cca=witness is None,
        connected=True,
        stab1_order=stab_order,
        autc_order=graph.n * stab_order if stab_order is not None else None,
        stab1_checked=checked,
        aut_pm1_order=apm1,
        witness=witness,
    )


@dataclass
class GroupCCAVerdict:
    """Group-level exhaustive verdict over all connection sets."""

    status: str                        # 'cca' | 'non-cca' | 'unknown'
    sets_checked: int
    connected_checked: int
    witness_set: tuple | None = None   # elements of the violating set
    witness_alpha: tuple | None = None

    def to_json_dict(self, group: FiniteGroup) -> dict:
        d = {
            "group_order": group.order(),
            "status": self.status,
            "sets_checked": self.sets_checked,
            "connected_checked": self.connected_checked,
        }
        if self.witness_set is not None:
            d["witness_S"] = [group.elem_str(s) for s in self.witness_set]
        if self.witness_alpha is not None:
            d["witness_alpha"] = list(self.witness_alpha)
        return d


def is_cca_group_exhaustive(group: FiniteGroup, budget: int = 2**20,
                            ) -> GroupCCAVerdict:
    """Check every inverse-closed identity-free connection set of G.

    Enumeration order: colour classes sorted by representative index;
    subsets by (class count, lexicographic class indices).  The first
    connected non-CCA set found is the witness.  Exceeding the budget
    yields the three-valued 'unknown'.
    """
    elems = group.elements()
    n = len(elems)
    mt = group.mult_table()
    inv_idx = [group.element_index()[group.invert(x)] for x in elems]

    classes: list[tuple[int, ...]] = []
    done = set()
    for i in range(1, n):
        if i in done:
            continue
        j = inv_idx[i]
        done.add(i)
        if j == i:
            classes.append((i,))
        else:
            done.add(j)
            classes.append((i, j))

    checked = 0
    connected_checked = 0
    for size in range(1, len(classes) + 1):
        for combo in itertools.combinations(range(len(classes)), size):
            checked += 1
            if checked > budget:
                return GroupCCAVerdict(status="unknown", sets_checked=checked - 1,
                                       connected_checked=connected_checked)
            chosen = [classes[c] for c in combo]
            s_indices = [s for cls in chosen for s in cls]
            # connectivity: BFS from identity over left multiplication
            seen = bytearray(n)
            seen[0] = 1
            stack = [0]
            reached = 1
            while stack:
                v = stack.pop()
                for s in s_indices:
                    u = mt[s][v]
                    if not seen[u]:
                        seen[u] = 1
                        reached += 1
                        stack.append(u)
            if reached != n:
                continue
            connected_checked += 1
            class_rows = [[mt[s] for s in cls] for cls in chosen]
            cn = [tuple(tuple(sorted({row[v] for row in rows}))
                        for rows in class_rows) for v in range(n)]
            order, parent = _bfs_tree(n, class_rows)
            for alpha in _enumerate_stab1(n, cn, order, parent):
                bad = False
                for s in s_indices:
                    a_s = alpha[s]
                    row = mt[s]
                    arow = mt[a_s]
                    if any(alpha[row[v]] != arow[alpha[v]] for v in range(n)):
                        bad = True
                        break
                if bad:
                    return GroupCCAVerdict(
                        status="non-cca", sets_checked=checked,
                        connected_checked=connected_checked,
                        witness_set=tuple(elems[s] for s in s_indices),
                        witness_alpha=alpha)
    return GroupCCAVerdict(status="cca", sets_checked=checked,
                           connected_checked=connected_checked)


def _bfs_tree(n: int, class_rows):
    parent: list = [None] * n
    seen = [False] * n
    order = [0]
    seen[0] = True
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        for c, rows in enumerate(class_rows):
            for row in rows:
                u = row[v]
                if not seen[u]:
                    seen[u] = True
                    parent[u] = (v, c)
                    order.append(u)
    return order, parent
