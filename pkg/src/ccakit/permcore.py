"""Permutation arithmetic and stabilizer-chain machinery.

Action convention (fixed once, used everywhere): permutations act on
0-based points and compose left to right,

    (p * q)(i) = q(p(i)),

i.e. ``p * q`` applies p first.  The group product ``multiply(a, b)``
is exactly this composition.  All user-facing cycle notation is 1-based,
matching the classical notation "(1 2)(3 4 5 6)"; multiple cycles in one
string are applied left to right (irrelevant for disjoint cycles).

Stabilizer chains use deterministic base selection: base-hint points
first, then the smallest point moved by the generator that forces a new
base point.  This makes orders, membership tests and reports reproducible.
"""

from __future__ import annotations

import re
from math import lcm

from .fgroup import (DEFAULT_ENUM_LIMIT, FiniteGroup, LimitExceeded, closure,
                     subgroup_index)

__all__ = [
    "Permutation", "PermutationGroup", "StabilizerChain",
    "parse_cycles", "subgroup_index", "is_normal", "normal_closure",
    "centralizer_bruteforce",
]


class Permutation:
    """Bijection of {0..degree-1}, stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch in composition")
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def cycle_str(self) -> str:
        """1-based disjoint-cycle notation; identity prints as "()"."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join(
            "(" + " ".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation[{self.cycle_str()} deg {self.degree}]"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation, e.g. "(1 2)(3 4 5 6)".

    Whitespace-insensitive; "()" (or an empty string) is the identity.
    Cycles are applied left to right.
    """
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    perm = Permutation.identity(degree)
    for body in _CYCLE_RE.findall(text):
        pts = [int(tok) - 1 for tok in body.replace(",", " ").split()]
        if not pts:
            continue
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle: {body!r}")
        if any(p < 0 or p >= degree for p in pts):
            raise ValueError(f"point out of range 1..{degree}: ({body})")
        images = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
        perm = perm * Permutation(images)
    return perm


class StabilizerChain:
    """Base and strong generating set via a deterministic Schreier-Sims.

    The construction loop recomputes transversals and sifts every Schreier
    generator until closure; it is not tuned for speed but is exact and
    deterministic, which is what the desk-scale groups here need.
    """

    def __init__(self, degree: int, generators, base_hint=()):
        self.degree = degree
        self.base: list[int] = list(base_hint)
        self.strong: list[Permutation] = []
        self.transversals: list[dict[int, Permutation]] = []
        self._strong_set: set[Permutation] = set()
        self._id = Permutation.identity(degree)
        for g in generators:
            if not g.is_identity():
                self._insert(g)
        self._close()

    # -- construction --------------------------------------------------------

    def _insert(self, g: Permutation) -> bool:
        if g in self._strong_set or g.is_identity():
            return False
        if all(g[b] == b for b in self.base):
            self.base.append(min(g.moved_points()))
        self.strong.append(g)
        self._strong_set.add(g)
        return True

    def _level_gens(self, i: int) -> list[Permutation]:
        prefix = self.base[:i]
        return [g for g in self.strong if all(g[b] == b for b in prefix)]

    def _orbit_transversal(self, b: int, gens) -> dict[int, Permutation]:
        trans = {b: self._id}
        queue = [b]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            tx = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = tx * g
                    queue.append(y)
        return trans

    def _recompute(self):
        self.transversals = [
            self._orbit_transversal(b, self._level_gens(i))
            for i, b in enumerate(self.base)
        ]

    def _close(self):
        while True:
            self._recompute()
            if not self._find_and_insert_residue():
                return

    def _find_and_insert_residue(self) -> bool:
        for i in range(len(self.base)):
            gens = self._level_gens(i)
            trans = self.transversals[i]
            for x, tx in trans.items():
                for g in gens:
                    # Schreier generator for the stabilizer of base[:i+1]
                    sg = tx * g * self.transversals[i][g[x]].inverse()
                    residue, _ = self._sift(sg, start=i + 1)
                    if not residue.is_identity():
                        self._insert(residue)
                        return True
        return False

    # -- queries ---------------------------------------------------------------

    def _sift(self, p: Permutation, start: int = 0):
        for i in range(start, len(self.transversals)):
            x = p[self.base[i]]
            trans = self.transversals[i]
            if x not in trans:
                return p, i
            p = p * trans[x].inverse()
        return p, len(self.transversals)

    def sift(self, p: Permutation):
        """Strip p through the chain; identity residue means membership."""
        return self._sift(p)

    def order(self) -> int:
        n = 1
        for t in self.transversals:
            n *= len(t)
        return n

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        residue, _ = self._sift(p)
        return residue.is_identity()

    def stabilizer_gens(self, levels: int = 1) -> list[Permutation]:
        """Strong generators fixing the first `levels` base points."""
        return self._level_gens(levels)


class PermutationGroup(FiniteGroup):
    """Group of permutations of a fixed degree, given by generators."""

    def __init__(self, degree: int, generators=(), base_hint=()):
        self.degree = degree
        seen = set()
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity() and g not in seen:
                seen.add(g)
                gens.append(g)
        self._gens = gens
        self._base_hint = tuple(base_hint)
        self._chain: StabilizerChain | None = None

    # -- FiniteGroup contract -----------------------------------------------

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def multiply(self, a: Permutation, b: Permutation) -> Permutation:
        return a * b

    def invert(self, a: Permutation) -> Permutation:
        return a.inverse()

    def generators(self) -> list[Permutation]:
        return list(self._gens)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self._gens,
                                          self._base_hint)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p) -> bool:
        return isinstance(p, Permutation) and self.chain.contains(p)

    def elements(self, limit: int = DEFAULT_ENUM_LIMIT) -> list[Permutation]:
        cached = getattr(self, "_elements", None)
        if cached is None:
            if self.order() > limit:
                raise LimitExceeded(
                    f"group order {self.order()} exceeds enumeration "
                    f"limit {limit}")
            cached = closure(self.identity(), self._gens, self.multiply,
                             limit)
            self._elements = cached
        return cached

    def generated_subgroup(self, gens,
                           limit: int = DEFAULT_ENUM_LIMIT) -> "PermutationGroup":
        return PermutationGroup(self.degree, gens)

    def elem_str(self, x: Permutation) -> str:
        return x.cycle_str()

    def elem_parse(self, text: str) -> Permutation:
        return parse_cycles(text, self.degree)

    # -- permutation-specific operations --------------------------------------

    def element_order(self, x: Permutation) -> int:
        return x.order()

    def point_stabilizer(self, point: int) -> "PermutationGroup":
        """Exact stabilizer of a point, via a chain based at that point."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside degree {self.degree}")
        chain = StabilizerChain(self.degree, self._gens, base_hint=(point,))
        return PermutationGroup(self.degree, chain.stabilizer_gens(1))

    def __repr__(self) -> str:
        return (f"PermutationGroup(degree={self.degree}, "
                f"ngens={len(self._gens)})")


def is_normal(G: PermutationGroup, H: FiniteGroup) -> bool:
    """True iff H is normal in G (H given by generators inside G)."""
    for h in H.generators():
        if not G.contains(h):
            raise ValueError("H is not a subgroup of G")
    for g in G.generators():
        for h in H.generators():
            if not H.contains(G.conjugate(h, g)):
                return False
    return True


def normal_closure(G: PermutationGroup, xs) -> PermutationGroup:
    """Smallest normal subgroup of G containing the elements xs."""
    gens = [x for x in xs if not x.is_identity()]
    H = PermutationGroup(G.degree, gens)
    queue = list(gens)
    while queue:
        x = queue.pop()
        for g in G.generators():
            c = G.conjugate(x, g)
            if not H.contains(c):
                gens.append(c)
                H = PermutationGroup(G.degree, gens)
                queue.append(c)
    return H


def centralizer_bruteforce(G: FiniteGroup, p,
                           limit: int = DEFAULT_ENUM_LIMIT) -> FiniteGroup:
    """Centralizer of p in G by full element scan (desk scale only)."""
    elems = [x for x in G.elements(limit) if G.commutes(x, p)]
    return G.generated_subgroup(elems)
