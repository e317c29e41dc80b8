"""Higman-style 2-groups of order 2^n from bit-matrix parameters.

The group is generated by g_1..g_r and central involutions h_1..h_s with

    h_j^2 = 1,   [h_i, h_j] = 1,   [g_i, h_j] = 1,
    g_i^2 = h_1^b(i,1) ... h_s^b(i,s),
    [g_i, g_j] = h_1^c(i,j,1) ... h_s^c(i,j,s)   for i < j.

Every element has a unique normal form g_1^e1 ... g_r^er h_1^f1 ... h_s^fs
with all exponents in {0,1}, so the group has exactly 2^(r+s) elements and
multiplication collects to a closed form: the e-parts XOR, and the f-part
picks up one c(i,j) word per crossing pair and one b-row per doubled g.
Both correction terms are bilinear in the e-parts, so the closed form is a
2-cocycle and the product is associative by construction; the test tree
certifies it against a literal word-rewriting collector anyway.

The "constrained" flavour forces g_r^2 = g_{r-1}^2 = h_1, which pins rows
r-1 and r of the b-matrix and makes (S, T, tau) with S = {g_1..g_{r-2},
h_1..h_s}, T = {g_{r-1}, g_r}, tau = h_1 a non-CCA triple with
|G : <S u {tau}>| = 4.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from pathlib import Path

from .fgroup import FiniteGroup
from .permcore import Permutation, PermutationGroup

Element = tuple  # (e_bits, f_bits) as a pair of ints

IDENTITY: Element = (0, 0)


@dataclass(frozen=True)
class HigmanParams:
    """(r, s, b-matrix, c-tensor) defining a group of order 2^(r+s).

    b is an r-tuple of s-bit ints (b[i] is the f-word for g_{i+1}^2);
    c maps each pair index to an s-bit int, pairs (i, j) with
    0 <= i < j < r listed in lexicographic order.
    """

    r: int
    s: int
    b: tuple
    c: tuple
    constrained: bool = False
    seed: int | None = None

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError("need r >= 1 and s >= 1")
        if len(self.b) != self.r:
            raise ValueError("b must have one row per g-generator")
        if len(self.c) != self.r * (self.r - 1) // 2:
            raise ValueError("c must have one word per pair i < j")
        mask = (1 << self.s) - 1
        if any(row & ~mask for row in self.b) or any(w & ~mask for w in self.c):
            raise ValueError("b/c words wider than s bits")
        if self.constrained:
            if self.n < 3 or self.r < 2:
                raise ValueError("constrained params need n >= 3 and r >= 2")
            if self.b[self.r - 1] != 1 or self.b[self.r - 2] != 1:
                raise ValueError(
                    "constrained params require g_r^2 = g_{r-1}^2 = h_1")

    @property
    def n(self) -> int:
        return self.r + self.s

    def pair_index(self, i: int, j: int) -> int:
        """Index into c for the 0-based pair i < j."""
        if not 0 <= i < j < self.r:
            raise IndexError(f"bad pair ({i}, {j})")
        return i * self.r - i * (i + 1) // 2 + (j - i - 1)

    # -- JSON interchange ----------------------------------------------------

    def to_json_dict(self) -> dict:
        c_entries = []
        for i in range(self.r):
            for j in range(i + 1, self.r):
                w = self.c[self.pair_index(i, j)]
                for k in range(self.s):
                    c_entries.append({"i": i + 1, "j": j + 1, "k": k + 1,
                                      "bit": (w >> k) & 1})
        d = {
            "n": self.n, "r": self.r, "s": self.s,
            "b": [[(row >> k) & 1 for k in range(self.s)] for row in self.b],
            "c": c_entries,
            "constrained": self.constrained,
        }
        if self.seed is not None:
            d["seed"] = self.seed
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "HigmanParams":
        r, s = d["r"], d["s"]
        b = tuple(sum(bit << k for k, bit in enumerate(row)) for row in d["b"])
        c = [0] * (r * (r - 1) // 2)
        for entry in d["c"]:
            i, j, k = entry["i"] - 1, entry["j"] - 1, entry["k"] - 1
            if entry["bit"]:
                c[i * r - i * (i + 1) // 2 + (j - i - 1)] |= 1 << k
        return cls(r=r, s=s, b=b, c=tuple(c),
                   constrained=bool(d.get("constrained", False)),
                   seed=d.get("seed"))


def gamma(params: HigmanParams, left_e: int, right_e: int) -> int:
    """Central correction word for collecting g^left_e * g^right_e.

    One c(i,j) word for every pair i < j where the right factor carries g_i
    and the left factor carries g_j (moving g_i leftwards past g_j), plus
    one b-row for every index carried by both factors (g_i^2 collapses).
    """
    f = 0
    for i in range(params.r):
        if right_e >> i & 1:
            for j in range(i + 1, params.r):
                if left_e >> j & 1:
                    f ^= params.c[params.pair_index(i, j)]
        if (left_e >> i & 1) and (right_e >> i & 1):
            f ^= params.b[i]
    return f


def multiply(params: HigmanParams, a: Element, b: Element) -> Element:
    ae, af = a
    be, bf = b
    emax = 1 << params.r
    fmax = 1 << params.s
    if not (0 <= ae < emax and 0 <= be < emax
            and 0 <= af < fmax and 0 <= bf < fmax):
        raise ValueError("element does not fit the parameter dimensions")
    return (ae ^ be, af ^ bf ^ gamma(params, ae, be))


def inverse(params: HigmanParams, a: Element) -> Element:
    ae, af = a
    return (ae, af ^ gamma(params, ae, ae))


class HigmanGroup(FiniteGroup):
    """Bitvector-backed realization of a Higman-parameter 2-group."""

    def __init__(self, params: HigmanParams):
        self.params = params

    def identity(self) -> Element:
        return IDENTITY

    def multiply(self, a: Element, b: Element) -> Element:
        return multiply(self.params, a, b)

    def invert(self, a: Element) -> Element:
        return inverse(self.params, a)

    def generators(self) -> list[Element]:
        p = self.params
        return ([(1 << i, 0) for i in range(p.r)]
                + [(0, 1 << j) for j in range(p.s)])

    def g(self, i: int) -> Element:
        """Generator g_i, 1-based."""
        if not 1 <= i <= self.params.r:
            raise IndexError(f"g index {i} outside 1..{self.params.r}")
        return (1 << (i - 1), 0)

    def h(self, j: int) -> Element:
        """Generator h_j, 1-based."""
        if not 1 <= j <= self.params.s:
            raise IndexError(f"h index {j} outside 1..{self.params.s}")
        return (0, 1 << (j - 1))

    def elements(self, limit: int | None = None) -> list[Element]:
        cached = getattr(self, "_elements", None)
        if cached is None:
            p = self.params
            cached = [(e, f) for e in range(1 << p.r)
                      for f in range(1 << p.s)]
            self._elements = cached
        return cached

    def order(self) -> int:
        return 1 << self.params.n

    def contains(self, x) -> bool:
        if not (isinstance(x, tuple) and len(x) == 2):
            return False
        e, f = x
        return (isinstance(e, int) and isinstance(f, int)
                and 0 <= e < (1 << self.params.r)
                and 0 <= f < (1 << self.params.s))

    def elem_str(self, x: Element) -> str:
        e, f = x
        parts = [f"g{i + 1}" for i in range(self.params.r) if e >> i & 1]
        parts += [f"h{j + 1}" for j in range(self.params.s) if f >> j & 1]
        return "*".join(parts) if parts else "1"

    def elem_parse(self, text: str) -> Element:
        text = text.strip()
        if text == "1":
            return IDENTITY
        e = f = 0
        for tok in text.split("*"):
            m = re.fullmatch(r"([gh])(\d+)", tok.strip())
            if not m:
                raise ValueError(f"bad Higman element token: {tok!r}")
            idx = int(m.group(2)) - 1
            if m.group(1) == "g":
                if not 0 <= idx < self.params.r:
                    raise ValueError(f"g index out of range: {tok}")
                e |= 1 << idx
            else:
                if not 0 <= idx < self.params.s:
                    raise ValueError(f"h index out of range: {tok}")
                f |= 1 << idx
        return (e, f)

    def __repr__(self) -> str:
        p = self.params
        return f"HigmanGroup(r={p.r}, s={p.s}, order={1 << p.n})"


def sample_params(n: int, seed: int) -> HigmanParams:
    """Random constrained parameters with r = floor(2n/3), s = n - r.

    Rows 1..r-2 of b and all of c are drawn from a seeded generator; rows
    r-1 and r are forced to h_1.  Deterministic for fixed (n, seed).
    """
    if n < 3:
        raise ValueError("constrained sampling needs n >= 3")
    r = (2 * n) // 3
    s = n - r
    rng = random.Random(seed)
    b = [rng.getrandbits(s) for _ in range(r - 2)] + [1, 1]
    c = [rng.getrandbits(s) for _ in range(r * (r - 1) // 2)]
    return HigmanParams(r=r, s=s, b=tuple(b), c=tuple(c),
                        constrained=True, seed=seed)


def quaternion_params() -> HigmanParams:
    """r=2, s=1 with g1^2 = g2^2 = [g1,g2] = h1: the quaternion group Q8."""
    return HigmanParams(r=2, s=1, b=(1, 1), c=(1,), constrained=True)


def params_from_spec(spec: str) -> HigmanParams:
    """Parse the CLI parameter form: "n=8,seed=42" or "@params.json"."""
    spec = spec.strip()
    if spec.startswith("@"):
        return HigmanParams.from_json_dict(
            json.loads(Path(spec[1:]).read_text()))
    kv = {}
    for part in spec.split(","):
        key, sep, val = part.partition("=")
        if not sep:
            raise ValueError(f"bad higman parameter {part!r}")
        kv[key.strip()] = val.strip()
    unknown = set(kv) - {"n", "seed"}
    if unknown:
        raise ValueError(f"unknown higman parameter(s): {sorted(unknown)}")
    if "n" not in kv:
        raise ValueError("higman parameters need n=<int>")
    return sample_params(int(kv["n"]), int(kv.get("seed", 0)))


def relation_audit(group: HigmanGroup) -> list[str]:
    """Check every defining relation by direct computation.

    Returns a list of violated relations (empty means all hold).
    """
    p = group.params
    mul = group.multiply
    bad = []
    e = group.identity()

    def comm(x, y):
        return mul(mul(group.invert(x), group.invert(y)), mul(x, y))

    def hword(bits):
        return (0, bits)

    for j in range(1, p.s + 1):
        if mul(group.h(j), group.h(j)) != e:
            bad.append(f"h{j}^2 != 1")
        for k in range(j, p.s + 1):
            if comm(group.h(j), group.h(k)) != e:
                bad.append(f"[h{j},h{k}] != 1")
    for i in range(1, p.r + 1):
        for j in range(1, p.s + 1):
            if comm(group.g(i), group.h(j)) != e:
                bad.append(f"[g{i},h{j}] != 1")
        if mul(group.g(i), group.g(i)) != hword(p.b[i - 1]):
            bad.append(f"g{i}^2 != b-row word")
    for i in range(1, p.r + 1):
        for j in range(i + 1, p.r + 1):
            if comm(group.g(i), group.g(j)) != hword(
                    p.c[p.pair_index(i - 1, j - 1)]):
                bad.append(f"[g{i},g{j}] != c word")
    return bad


def theorem3_triple(params: HigmanParams):
    """The canonical non-CCA triple of a constrained instance.

    Returns (group, triple); raises if validation fails or the index of
    <S u {tau}> is not exactly 4, since either would be a correctness bug.
    """
    from .triples import validate_triple

    if not params.constrained:
        raise ValueError("theorem3_triple requires constrained parameters")
    G = HigmanGroup(params)
    S = [G.g(i) for i in range(1, params.r - 1)] \
        + [G.h(j) for j in range(1, params.s + 1)]
    T = [G.g(params.r - 1), G.g(params.r)]
    tau = G.h(1)
    triple = validate_triple(G, S, T, tau)
    if not triple.valid:
        raise AssertionError(
            f"constrained Higman instance failed triple validation: "
            f"{triple.checks}")
    if triple.index != 4:
        raise AssertionError(
            f"|G : <S u {{tau}}>| = {triple.index}, expected 4")
    return G, triple


def regular_representation(params: HigmanParams) -> PermutationGroup:
    """Degree-2^n permutation group via the right-multiplication action."""
    G = HigmanGroup(params)
    elems = G.elements()
    idx = {x: i for i, x in enumerate(elems)}
    perms = [Permutation([idx[G.multiply(v, x)] for v in elems])
             for x in G.generators()]
    P = PermutationGroup(len(elems), perms)
    if P.order() != len(elems):
        raise AssertionError("regular representation is not faithful/regular")
    return P
