"""Non-CCA triples: S_G(tau), validation, search, square-root counting.

A non-CCA triple (S, T, tau) of a group G requires an involution tau and

    (Ai)   <S u T> = G,
    (Aii)  tau inverts or centralises every element of S,
    (Aiii) t^2 = tau for every t in T,
    (Aiv)  <S u {tau}> != G,
    (Av)   tau non-central in G, or |G : <S u {tau}>| > 2.

A valid triple certifies that Cay(G, S u T) is connected and non-CCA;
`crosscheck_prop22` verifies that claim directly on the graph and treats
any disagreement as a fatal correctness bug.

S_G(tau) is the set of non-identity elements centralised or inverted by
conjugation by tau; the filter form {x : x^tau in {x, x^-1}} is
well-defined even when tau lies outside the carrier subgroup, and when tau
lies inside, it provably equals the definitional form
(C_G(tau) u {y*tau : y^2 = 1}) - {1}; `s_tau` computes both and insists
they agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cayley import ConnectionSet, build
from .colourauts import CCAVerdict, is_cca_graph
from .fgroup import DEFAULT_ENUM_LIMIT, DEFAULT_GRAPH_LIMIT, FiniteGroup


class CrosscheckError(AssertionError):
    """A validated triple failed the direct graph cross-check."""


@dataclass
class STauSet:
    """Elements of the carrier centralised or inverted by tau."""

    tau: object
    carrier: FiniteGroup
    elements: list = field(repr=False)

    def span(self) -> FiniteGroup:
        return self.carrier.generated_subgroup(self.elements)


def s_tau(carrier: FiniteGroup, tau,
          limit: int = DEFAULT_ENUM_LIMIT) -> STauSet:
    """Compute S(tau) over the carrier by the conjugation filter.

    tau must be an involution; it may lie outside the carrier (conjugation
    is plain element arithmetic).  When tau lies inside, the definitional
    form is computed as well and checked against the filter form.
    """
    G = carrier
    e = G.identity()
    if tau == e or G.multiply(tau, tau) != e:
        raise ValueError("tau must be an involution")
    elems = G.elements(limit)
    filt = [x for x in elems
            if x != e and G.conjugate(x, tau) in (x, G.invert(x))]
    if tau in G.element_set():
        cent = {x for x in elems if G.commutes(x, tau)}
        ytau = {G.multiply(y, tau) for y in elems if G.multiply(y, y) == e}
        definitional = (cent | ytau) - {e}
        if definitional != set(filt):
            raise AssertionError(
                "S_G(tau): definitional and filter forms disagree "
                "(correctness bug)")
    return STauSet(tau=tau, carrier=carrier, elements=filt)


@dataclass
class NonCCATriple:
    """Candidate triple with per-condition verdicts."""

    group: FiniteGroup
    S: tuple
    T: tuple
    tau: object
    checks: dict
    valid: bool
    index: int | None = None          # |G : <S u {tau}>| when computable

    def to_json_dict(self) -> dict:
        g = self.group
        d = {
            "S": [g.elem_str(s) for s in self.S],
            "T": [g.elem_str(t) for t in self.T],
            "tau": g.elem_str(self.tau),
            "checks": dict(self.checks),
            "valid": self.valid,
        }
        if self.index is not None:
            d["index_S_tau"] = self.index
        return d


def validate_triple(G: FiniteGroup, S, T, tau,
                    limit: int = DEFAULT_ENUM_LIMIT) -> NonCCATriple:
    """Test Definition-style conditions (Ai)-(Av) literally.

    Failed conditions are verdicts, not errors; only malformed input
    (elements outside G, tau not an involution) raises.
    """
    S = list(S)
    T = list(T)
    e = G.identity()
    for x in [*S, *T, tau]:
        if not G.contains(x):
            raise ValueError(f"element {G.elem_str(x)} not in G")
    if tau == e or G.multiply(tau, tau) != e:
        raise ValueError("tau must be an involution")

    order_g = G.order()
    checks: dict[str, bool] = {}
    checks["Ai"] = G.generated_subgroup(S + T, limit).order() == order_g
    checks["Aii"] = all(
        G.conjugate(s, tau) in (s, G.invert(s)) for s in S)
    checks["Aiii"] = all(G.multiply(t, t) == tau for t in T)
    X = G.generated_subgroup(S + [tau], limit)
    order_x = X.order()
    index = order_g // order_x
    checks["Aiv"] = order_x != order_g
    checks["Av"] = (not G.is_central(tau)) or index > 2
    return NonCCATriple(group=G, S=tuple(S), T=tuple(T), tau=tau,
                        checks=checks, valid=all(checks.values()),
                        index=index)


def square_roots(X: FiniteGroup, tau,
                 limit: int = DEFAULT_ENUM_LIMIT) -> list:
    """All t in X with t^2 = tau, by full scan in enumeration order."""
    return [t for t in X.elements(limit) if X.multiply(t, t) == tau]


def _normalizes(G: FiniteGroup, H: FiniteGroup, x) -> bool:
    hset = H.element_set()
    return all(G.conjugate(h, x) in hset for h in H.generators())


def search_triple_subgroup_strategy(G: FiniteGroup, H: FiniteGroup,
                                    tau_candidates=None,
                                    limit: int = DEFAULT_ENUM_LIMIT,
                                    ) -> NonCCATriple | None:
    """Search for a triple of the form (S_H(tau), {t}, tau).

    tau ranges over the candidates (default: involutions of H in
    enumeration order, then involutions of G normalizing H from outside);
    t over square roots of tau in G outside <S u {tau}>.  The first fully
    valid triple in this deterministic order wins.
    """
    if tau_candidates is None:
        cands = list(H.involutions(limit))
        hset = H.element_set()
        cands += [x for x in G.involutions(limit)
                  if x not in hset and _normalizes(G, H, x)]
    else:
        cands = list(tau_candidates)

    order_g = G.order()
    for tau in cands:
        S = s_tau(H, tau, limit).elements
        X = G.generated_subgroup(S + [tau], limit)
        if X.order() == order_g:
            continue   # (Aiv) can never hold for this tau
        for t in G.elements(limit):
            if G.multiply(t, t) != tau or X.contains(t):
                continue
            triple = validate_triple(G, S, [t], tau, limit)
            if triple.valid:
                return triple
    return None


@dataclass
class CrosscheckReport:
    """Direct graph-level confirmation of a validated triple."""

    connected: bool
    verdict: CCAVerdict
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "connected": self.connected,
            "is_cca": self.verdict.is_cca,
            "stab1_checked": self.verdict.stab1_checked,
            "ok": self.ok,
        }


def crosscheck_prop22(G: FiniteGroup, triple: NonCCATriple,
                      graph_limit: int = DEFAULT_GRAPH_LIMIT,
                      ) -> CrosscheckReport:
    """Build Cay(G, S u T) and confirm it is connected and non-CCA.

    The connection set is the inverse closure of S u T (the graph does not
    change, but the colouring needs both t and t^-1).  The vertex
    stabilizer is streamed, not materialized: its order grows with the
    index of <S u {tau}> and can be astronomically large, but a witness
    appears among its first elements.  A failure here is a fatal
    correctness bug and raises CrosscheckError with full state.
    """
    if not triple.valid:
        raise ValueError("crosscheck requires a valid triple")
    conn = ConnectionSet.from_elements(
        G, list(triple.S) + list(triple.T), close_inverses=True)
    graph = build(G, conn, graph_limit)
    connected = graph.is_connected()
    verdict = is_cca_graph(graph, with_aut_pm1=False, full_stab=False)
    ok = connected and not verdict.is_cca
    report = CrosscheckReport(connected=connected, verdict=verdict, ok=ok)
    if not ok:
        raise CrosscheckError(
            "validated triple failed the graph cross-check: "
            f"connected={connected}, is_cca={verdict.is_cca}, "
            f"triple={triple.to_json_dict()}, "
            f"stab1_checked={verdict.stab1_checked}")
    return report
