"""Constructors for the concrete groups the desk-scale claims touch.

Grammar for group expressions (exact):

    EXPR := ATOM | EXPR "x" EXPR
    ATOM := ("S"|"A"|"C"|"D") INT
          | "PSL2(" INT ")"
          | "perm:" INT ":" CYCLES ("," CYCLES)*
          | "higman:" params            (inline "n=8,seed=42" or "@file.json")

"D n" is the dihedral group of order 2n.  PSL2(q) acts on the q+1 points
of the projective line over GF(q) via unimodular Moebius maps modulo the
centre; prime-power fields are built from a pinned irreducible polynomial
stored in data/field_polys.json.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

from .fgroup import DEFAULT_ENUM_LIMIT, FiniteGroup, LimitExceeded
from .permcore import Permutation, PermutationGroup, parse_cycles

_DATA_DIR = Path(__file__).parent / "data"

MAX_PRIME_POWER_Q = 32


class GroupExprError(ValueError):
    """Malformed or unsupported group expression."""


# ---------------------------------------------------------------------------
# finite fields


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass
class FieldTable:
    """GF(q) with exhaustively tabulated arithmetic, q <= 32.

    Elements are encoded as integers 0..q-1: the coefficient vector of the
    residue polynomial read in base p (so 0 and 1 are the field's 0 and 1).
    """

    q: int
    p: int
    f: int
    add: list = field(repr=False)
    mul: list = field(repr=False)
    neg: list = field(repr=False)
    inv: list = field(repr=False)
    primitive: int = 0

    def pow(self, x: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self.mul[r][x]
            x = self.mul[x][x]
            k >>= 1
        return r


def _poly_coeffs(x: int, p: int, f: int) -> list[int]:
    out = []
    for _ in range(f):
        out.append(x % p)
        x //= p
    return out


def _poly_index(coeffs, p: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * p + c
    return out


def build_field(q: int) -> FieldTable:
    if q < 2 or q > MAX_PRIME_POWER_Q:
        raise GroupExprError(f"field order {q} outside supported range 2..32")
    if _is_prime(q):
        p, f = q, 1
        red = None
    else:
        polys = json.loads((_DATA_DIR / "field_polys.json").read_text())
        entry = polys.get(str(q))
        if entry is None:
            raise GroupExprError(f"{q} is not a supported prime power")
        p, f, red = entry["p"], entry["f"], entry["poly"]
        if p**f != q:
            raise GroupExprError(f"bad field data for q={q}")

    def add(a, b):
        ca = _poly_coeffs(a, p, f)
        cb = _poly_coeffs(b, p, f)
        return _poly_index([(x + y) % p for x, y in zip(ca, cb)], p)

    def mul(a, b):
        ca = _poly_coeffs(a, p, f)
        cb = _poly_coeffs(b, p, f)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the pinned irreducible polynomial
        for top in range(len(prod) - 1, f - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for k in range(f):
                    # x^top = -sum red[k] x^(top-f+k) / red[f] (monic)
                    prod[top - f + k] = (prod[top - f + k] - c * red[k]) % p
        return _poly_index(prod[:f], p)

    add_t = [[add(a, b) for b in range(q)] for a in range(q)]
    mul_t = [[mul(a, b) for b in range(q)] for a in range(q)]
    neg_t = [next(b for b in range(q) if add_t[a][b] == 0) for a in range(q)]
    inv_t = [0] + [next(b for b in range(1, q) if mul_t[a][b] == 1)
                   for a in range(1, q)]

    primitive = 1
    for cand in range(1, q):
        k, x = 1, cand
        while x != 1:
            x = mul_t[x][cand]
            k += 1
        if k == q - 1:
            primitive = cand
            break

    return FieldTable(q=q, p=p, f=f, add=add_t, mul=mul_t, neg=neg_t,
                      inv=inv_t, primitive=primitive)


# ---------------------------------------------------------------------------
# named constructors


def cyclic_group(n: int) -> PermutationGroup:
    if n < 1:
        raise GroupExprError("C n requires n >= 1")
    if n == 1:
        return PermutationGroup(1, [])
    return PermutationGroup(n, [Permutation([(i + 1) % n for i in range(n)])])


def symmetric_group(n: int) -> PermutationGroup:
    if n < 1:
        raise GroupExprError("S n requires n >= 1")
    if n == 1:
        return PermutationGroup(1, [])
    gens = [parse_cycles("(1 2)", n)]
    if n > 2:
        gens.append(Permutation([(i + 1) % n for i in range(n)]))
    return PermutationGroup(n, gens)


def alternating_group(n: int) -> PermutationGroup:
    if n < 1:
        raise GroupExprError("A n requires n >= 1")
    if n <= 2:
        return PermutationGroup(max(n, 1), [])
    three = parse_cycles("(1 2 3)", n)
    if n == 3:
        return PermutationGroup(3, [three])
    if n % 2 == 1:
        big = Permutation([(i + 1) % n for i in range(n)])
    else:
        big = Permutation([0] + [1 + (i + 1) % (n - 1) for i in range(n - 1)])
    return PermutationGroup(n, [three, big])


def dihedral_group(n: int) -> PermutationGroup:
    """Dihedral group of order 2n."""
    if n < 1:
        raise GroupExprError("D n requires n >= 1")
    if n == 1:
        return PermutationGroup(2, [parse_cycles("(1 2)", 2)])
    if n == 2:
        return PermutationGroup(4, [parse_cycles("(1 2)", 4),
                                    parse_cycles("(3 4)", 4)])
    rot = Permutation([(i + 1) % n for i in range(n)])
    refl = Permutation([(n - i) % n for i in range(n)])
    return PermutationGroup(n, [rot, refl])


def psl2(q: int) -> PermutationGroup:
    """PSL(2,q) on the projective line: points 0..q-1 are GF(q), point q is
    the point at infinity.

    Generators: the translations x -> x + lambda^j (j < f, lambda primitive,
    whose shifts span GF(q) over its prime field), the square scaling
    x -> lambda^2 x, and the inversion x -> -1/x.  All lift to determinant-1
    matrices.
    """
    F = build_field(q)
    deg = q + 1
    INF = q

    def moebius(fn):
        return Permutation([fn(x) for x in range(q)] + [fn(INF)])

    gens = []
    lam = F.primitive
    shift = 1
    for _ in range(F.f):
        c = shift
        gens.append(moebius(lambda x, c=c: INF if x == INF else F.add[x][c]))
        shift = F.mul[shift][lam]
    lam2 = F.mul[lam][lam]
    if lam2 != 1:
        gens.append(moebius(lambda x: INF if x == INF else F.mul[lam2][x]))
    gens.append(moebius(
        lambda x: (0 if x == INF else (INF if x == 0 else F.neg[F.inv[x]]))))
    G = PermutationGroup(deg, gens)
    expected = q * (q - 1) * (q + 1) // gcd(2, q - 1)
    if G.order() != expected:
        raise GroupExprError(
            f"PSL2({q}) constructor produced order {G.order()}, "
            f"expected {expected}")
    return G


def m11_group() -> PermutationGroup:
    """Mathieu group M11 from the vetted data file; order-checked at load."""
    data = json.loads((_DATA_DIR / "m11.json").read_text())
    deg = data["degree"]
    G = PermutationGroup(deg, [parse_cycles(s, deg)
                               for s in data["generators"]])
    if G.order() != data["order"]:
        raise GroupExprError(
            f"M11 data file failed validation: order {G.order()} != "
            f"{data['order']}")
    return G


def direct_product(A: PermutationGroup, B: PermutationGroup) -> PermutationGroup:
    da, db = A.degree, B.degree
    gens = []
    for g in A.generators():
        gens.append(Permutation(list(g.images) + [da + i for i in range(db)]))
    for g in B.generators():
        gens.append(Permutation(list(range(da)) + [da + i for i in g.images]))
    return PermutationGroup(da + db, gens)


# ---------------------------------------------------------------------------
# group expressions


@dataclass(frozen=True)
class GroupExpr:
    """AST for the group-expression grammar."""

    kind: str                      # 'S','A','C','D','PSL2','perm','higman','product','M11'
    n: int = 0
    degree: int = 0
    cycles: tuple = ()             # for perm atoms: cycle strings
    params: str = ""               # for higman atoms: normalized param text
    factors: tuple = ()            # for products

    def to_str(self) -> str:
        if self.kind == "product":
            return " x ".join(f.to_str() for f in self.factors)
        if self.kind in ("S", "A", "C", "D"):
            return f"{self.kind}{self.n}"
        if self.kind == "PSL2":
            return f"PSL2({self.n})"
        if self.kind == "perm":
            return f"perm:{self.degree}:{','.join(self.cycles)}"
        if self.kind == "higman":
            return f"higman:{self.params}"
        if self.kind == "M11":
            return "M11"
        raise GroupExprError(f"unknown expression kind {self.kind!r}")


_ATOM_SADC = re.compile(r"^([SACD])\s*(\d+)$")
_ATOM_PSL2 = re.compile(r"^PSL2\(\s*(\d+)\s*\)$")


def parse_group_expr(text: str) -> GroupExpr:
    parts = re.split(r"\s+x\s+", text.strip())
    if len(parts) > 1:
        return GroupExpr(kind="product",
                         factors=tuple(parse_group_expr(p) for p in parts))
    atom = parts[0].strip()
    m = _ATOM_SADC.match(atom)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise GroupExprError(f"{atom}: n must be >= 1")
        return GroupExpr(kind=m.group(1), n=n)
    m = _ATOM_PSL2.match(atom)
    if m:
        return GroupExpr(kind="PSL2", n=int(m.group(1)))
    if atom == "M11":
        return GroupExpr(kind="M11")
    if atom.startswith("perm:"):
        body = atom[len("perm:"):]
        head, sep, rest = body.partition(":")
        if not sep or not head.strip().isdigit():
            raise GroupExprError(f"malformed perm atom: {atom!r}")
        degree = int(head)
        cycles = tuple(c.strip() for c in rest.split(",") if c.strip())
        if not cycles:
            raise GroupExprError(f"perm atom needs at least one generator: {atom!r}")
        for c in cycles:
            parse_cycles(c, degree)   # validate early
        norm = tuple(parse_cycles(c, degree).cycle_str() for c in cycles)
        return GroupExpr(kind="perm", degree=degree, cycles=norm)
    if atom.startswith("higman:"):
        params = atom[len("higman:"):].strip()
        if not params:
            raise GroupExprError("higman atom needs parameters")
        return GroupExpr(kind="higman", params=params)
    raise GroupExprError(f"cannot parse group expression: {text!r}")


def construct(expr: GroupExpr | str,
              enum_limit: int = DEFAULT_ENUM_LIMIT) -> FiniteGroup:
    """Build the group named by a GroupExpr (or expression string)."""
    if isinstance(expr, str):
        expr = parse_group_expr(expr)
    if expr.kind == "product":
        factors = [construct(f, enum_limit) for f in expr.factors]
        perm_factors = []
        for g in factors:
            if not isinstance(g, PermutationGroup):
                from .higman import regular_representation
                g = regular_representation(g.params)
            perm_factors.append(g)
        out = perm_factors[0]
        for g in perm_factors[1:]:
            out = direct_product(out, g)
        return out
    if expr.kind == "S":
        return symmetric_group(expr.n)
    if expr.kind == "A":
        return alternating_group(expr.n)
    if expr.kind == "C":
        return cyclic_group(expr.n)
    if expr.kind == "D":
        return dihedral_group(expr.n)
    if expr.kind == "PSL2":
        return psl2(expr.n)
    if expr.kind == "M11":
        return m11_group()
    if expr.kind == "perm":
        return PermutationGroup(
            expr.degree, [parse_cycles(c, expr.degree) for c in expr.cycles])
    if expr.kind == "higman":
        from .higman import HigmanGroup, params_from_spec
        return HigmanGroup(params_from_spec(expr.params))
    raise GroupExprError(f"unknown expression kind {expr.kind!r}")


# ---------------------------------------------------------------------------
# predicates and stabilizers


def has_element_of_order4(G: FiniteGroup,
                          limit: int = DEFAULT_ENUM_LIMIT) -> bool:
    """Exact verdict by full element scan."""
    for x in G.elements(limit):
        if G.element_order(x) == 4:
            return True
    return False


def pointwise_stabilizer(G: PermutationGroup, points,
                         limit: int = DEFAULT_ENUM_LIMIT) -> PermutationGroup:
    pts = sorted(set(points))
    elems = [g for g in G.elements(limit) if all(g[p] == p for p in pts)]
    return PermutationGroup(G.degree, elems)


def setwise_stabilizer(G: PermutationGroup, points,
                       limit: int = DEFAULT_ENUM_LIMIT) -> PermutationGroup:
    pts = set(points)
    elems = [g for g in G.elements(limit) if {g[p] for p in pts} == pts]
    return PermutationGroup(G.degree, elems)


def cyclic_subgroups_of_order(G: FiniteGroup, m: int,
                              limit: int = DEFAULT_ENUM_LIMIT) -> list:
    """All cyclic subgroups of order m, deduplicated, deterministic order."""
    seen = set()
    out = []
    for x in G.elements(limit):
        if G.element_order(x) != m:
            continue
        powers = [x]
        y = x
        for _ in range(m - 1):
            y = G.multiply(y, x)
            powers.append(y)
        key = frozenset(powers)
        if key not in seen:
            seen.add(key)
            out.append(G.generated_subgroup([x]))
    return out


def normalizer_bruteforce(G: FiniteGroup, H: FiniteGroup,
                          limit: int = DEFAULT_ENUM_LIMIT) -> FiniteGroup:
    """Normalizer of H in G by full scan; returned as a generated subgroup."""
    hset = H.element_set()
    hgens = H.generators()
    elems = [g for g in G.elements(limit)
             if all(G.conjugate(h, g) in hset for h in hgens)]
    return G.generated_subgroup(elems)


# ---------------------------------------------------------------------------
# the desk-scale zoo


def zoo_corpus(max_order: int) -> list[tuple[str, FiniteGroup]]:
    """Fixed, deterministic corpus of small zoo groups of order <= max_order.

    Used by the structural property suites and the random-graph sampler.
    """
    exprs = (
        [f"C{n}" for n in range(2, 17)]
        + [f"D{n}" for n in range(2, 17)]
        + ["S3", "S4", "A4",
           "C2 x C2", "C2 x C4", "C2 x C8", "C4 x C4",
           "C2 x C2 x C2", "C3 x C3", "C2 x S3", "C2 x D4",
           "higman:n=3,seed=1", "higman:n=4,seed=1", "higman:n=5,seed=1",
           "higman:n=6,seed=1"]
    )
    out = []
    for e in exprs:
        G = construct(e)
        if G.order() <= max_order:
            out.append((e, G))
    return out
