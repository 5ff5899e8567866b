"""p-group and nilpotent-group invariants: exponent, omega/agemo subgroups,
derived and Frattini subgroups, minimum generator counts, power images,
the semi-abelian test, Sylow decomposition, and a p-group classifier."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .bitset import ElementSet, iter_bits
from .errors import NotAPGroup, NotNilpotent
from .groups import (
    CayleyTableGroup,
    FiniteGroup,
    prime_factorization,
)


def exponent(G: FiniteGroup) -> int:
    """Maximum element order (equals the group exponent for p-groups)."""
    e = G._cache().get("exponent")
    if e is None:
        e = max(G.order_of(a) for a in G.elements())
        G._cache()["exponent"] = e
    return e


def pgroup_prime(G: FiniteGroup) -> int:
    """The prime p with |G| = p^k, or NotAPGroup."""
    if G.order == 1:
        raise NotAPGroup("the trivial group has no defining prime")
    fact = prime_factorization(G.order)
    if len(fact) != 1:
        raise NotAPGroup(f"order {G.order} is not a prime power")
    return next(iter(fact))


def exponent_exponent(G: FiniteGroup) -> tuple[int, int]:
    """(p, e) with exp(G) = p^e."""
    p = pgroup_prime(G)
    e = exponent(G)
    k = 0
    while e > 1:
        e //= p
        k += 1
    return p, k


def torsion_set(G: FiniteGroup, i: int) -> ElementSet:
    """The raw set {g : g^(p^i) = 1}; not a subgroup in general."""
    p = pgroup_prime(G)
    q = p**i
    mask = 0
    for g in G.elements():
        if G.power(g, q) == 0:
            mask |= 1 << g
    return ElementSet(mask, G.order)


def omega(G: FiniteGroup, i: int) -> ElementSet:
    """Subgroup generated by all elements of order dividing p^i."""
    if i < 0:
        raise ValueError("omega level must be >= 0")
    raw = torsion_set(G, i)
    return G.generated_subgroup(raw.indices())


def agemo(G: FiniteGroup, i: int) -> ElementSet:
    """Subgroup generated by all p^i-th powers."""
    p = pgroup_prime(G)
    q = p**i
    gens = sorted({G.power(g, q) for g in G.elements()})
    return G.generated_subgroup(gens)


def power_image(G: FiniteGroup, i: int) -> ElementSet:
    """The literal set {g^(p^i) : g in G} (a set, not a subgroup)."""
    p = pgroup_prime(G)
    q = p**i
    mask = 0
    for g in G.elements():
        mask |= 1 << G.power(g, q)
    return ElementSet(mask, G.order)


def derived_subgroup(G: FiniteGroup) -> ElementSet:
    """Subgroup generated by all commutators; normal because the commutator set
    is closed under conjugation."""
    m = G._cache().get("derived")
    if m is None:
        if G.is_abelian:
            m = 1
        else:
            comm = sorted({G.commutator(a, b) for a in G.elements() for b in G.elements()})
            m = G.closure_mask(comm)
        G._cache()["derived"] = m
    return ElementSet(m, G.order)


def frattini(G: FiniteGroup) -> ElementSet:
    """Phi(G) = G' * G^p for a p-group."""
    p = pgroup_prime(G)
    derived = derived_subgroup(G)
    powers = sorted({G.power(g, p) for g in G.elements()})
    return G.generated_subgroup(derived.indices() + powers)


def min_generators(G: FiniteGroup) -> int:
    """d(G) for p-groups (log_p |G/Phi|) and nilpotent groups (max over Sylow factors)."""
    d = G._cache().get("min_generators")
    if d is not None:
        return d
    if G.order == 1:
        d = 0
    else:
        fact = prime_factorization(G.order)
        if len(fact) == 1:
            p = next(iter(fact))
            index = G.order // frattini(G).cardinality
            d = round(math.log(index, p))
        else:
            d = max(min_generators(f.group) for f in sylow_decomposition(G).values())
    G._cache()["min_generators"] = d
    return d


def is_semi_abelian(G: FiniteGroup, i: int) -> tuple[bool, Optional[tuple[int, int]]]:
    """Whether x^(p^i) = y^(p^i) iff (x y^-1)^(p^i) = 1 for all pairs; on failure
    returns a witness pair (x, y).

    Full O(|G|^2) pair scan over a precomputed power map; abelian groups satisfy
    the condition identically, so the scan is skipped for them.
    """
    p = pgroup_prime(G)
    if i == 0:
        return True, None
    if G.is_abelian:
        return True, None
    q = p**i
    pw = [G.power(g, q) for g in G.elements()]
    inv = [G.inv(g) for g in G.elements()]
    mul = G.mul
    for x in G.elements():
        px = pw[x]
        for y in G.elements():
            if (px == pw[y]) != (pw[mul(x, inv[y])] == 0):
                return False, (x, y)
    return True, None


@dataclass(frozen=True)
class SylowFactor:
    """A Sylow p-subgroup rebuilt as a standalone group.

    `embedding[i]` is the parent index of factor element i; the factor preserves
    the parent's element order, so index 0 is the identity.
    """

    prime: int
    group: CayleyTableGroup
    embedding: tuple[int, ...]

    def embed(self, a: int) -> int:
        return self.embedding[a]


def sylow_decomposition(G: FiniteGroup) -> dict[int, SylowFactor]:
    """For each prime p | |G|, the elements of p-power order as a subgroup.

    Succeeds exactly when every such set is a subgroup of order p^a, which
    certifies nilpotency; raises NotNilpotent otherwise.
    """
    cached = G._cache().get("sylow")
    if cached is not None:
        return cached
    fact = prime_factorization(G.order) if G.order > 1 else {}
    out: dict[int, SylowFactor] = {}
    for p, a in sorted(fact.items()):
        members = [g for g in G.elements() if _is_p_power(G.order_of(g), p)]
        if len(members) != p**a:
            raise NotNilpotent(
                f"elements of {p}-power order number {len(members)}, expected {p**a}"
            )
        pos = {g: i for i, g in enumerate(members)}
        table = []
        for x in members:
            row = []
            for y in members:
                t = G.mul(x, y)
                if t not in pos:
                    raise NotNilpotent(f"{p}-power-order elements are not closed under product")
                row.append(pos[t])
            table.append(row)
        factor = CayleyTableGroup(table, label=f"sylow{p}({G.describe()})", trusted=True)
        out[p] = SylowFactor(p, factor, tuple(members))
    G._cache()["sylow"] = out
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class PGroupClassification:
    abelian: bool
    powerful: bool
    p_central: bool
    semi_abelian_at_e_minus_1: bool


def classify_pgroup(G: FiniteGroup) -> PGroupClassification:
    """Structural flags: abelian; powerful (G' <= G^p, or G' <= G^4 for p = 2);
    generalized p-central (Omega_1 <= Z_{p-2} for odd p, Omega_2 <= Z(G) for p = 2);
    and the semi-abelian condition at level e-1."""
    p, e = exponent_exponent(G)
    abelian = G.is_abelian
    derived = derived_subgroup(G)
    powerful = derived.issubset(agemo(G, 1) if p > 2 else agemo(G, 2))
    series = G.upper_central_series()
    if p > 2:
        level = min(p - 2, len(series) - 1)
        p_central = omega(G, 1).issubset(series[level])
    else:
        p_central = omega(G, 2).issubset(series[min(1, len(series) - 1)])
    semi = abelian or is_semi_abelian(G, max(e - 1, 0))[0]
    return PGroupClassification(abelian, powerful, p_central, semi)


@dataclass(frozen=True)
class PGroupProfile:
    """JSON-friendly summary of the invariants driving the size predictions."""

    p: int
    e: int
    d: int
    order: int
    power_image_sizes: tuple[int, ...] = field(default=())  # index i -> |{g^(p^i)}|
    omega_indices: tuple[int, ...] = field(default=())  # index i -> |G : Omega_i|
    semi_abelian: tuple[bool, ...] = field(default=())  # index i -> semi-p^i-abelian
    classification: Optional[PGroupClassification] = None

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "e": self.e,
            "d": self.d,
            "order": self.order,
            "power_image_sizes": list(self.power_image_sizes),
            "omega_indices": list(self.omega_indices),
            "semi_abelian": [
                {"i": i, "holds": bool(v), "trivial": i == 0}
                for i, v in enumerate(self.semi_abelian)
            ],
        }
        if self.classification is not None:
            out["classification"] = {
                "abelian": self.classification.abelian,
                "powerful": self.classification.powerful,
                "p_central": self.classification.p_central,
                "semi_abelian_at_e_minus_1": self.classification.semi_abelian_at_e_minus_1,
            }
        return out


def pgroup_profile(G: FiniteGroup) -> PGroupProfile:
    p, e = exponent_exponent(G)
    sizes = tuple(power_image(G, i).cardinality for i in range(e + 1))
    omegas = tuple(G.order // omega(G, i).cardinality for i in range(e + 1))
    semi = tuple(is_semi_abelian(G, i)[0] for i in range(e + 1))
    return PGroupProfile(
        p=p,
        e=e,
        d=min_generators(G),
        order=G.order,
        power_image_sizes=sizes,
        omega_indices=omegas,
        semi_abelian=semi,
        classification=classify_pgroup(G),
    )


def sylow_product_check(G: FiniteGroup) -> bool:
    """Every element factors uniquely as a product of commuting p-parts."""
    factors = sylow_decomposition(G)
    masks = {p: 0 for p in factors}
    for p, f in factors.items():
        for a in f.embedding:
            masks[p] |= 1 << a
    seen = set()
    parts = [list(iter_bits(masks[p])) for p in sorted(factors)]
    count = 0

    def rec(i: int, acc: int):
        nonlocal count
        if i == len(parts):
            seen.add(acc)
            count += 1
            return
        for a in parts[i]:
            rec(i + 1, G.mul(acc, a))

    rec(0, 0)
    return count == G.order and len(seen) == G.order
