"""Constructive procedures for ramification structures: quotient lifting,
size and rank extension for elementary abelian groups, the odd-odd 2-group
construction, coprime direct-product assembly, and an orchestrating dispatcher.

Every constructor validates its output through the ramification checker before
returning; a validation failure in a theory-guaranteed step raises
InternalContradiction rather than returning an unchecked structure.

All internal searches (coset choices, redundant-entry scans, basis picks)
follow the deterministic element enumeration, so witnesses are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .bitset import ElementSet, iter_bits
from .errors import (
    DegenerateRank,
    HypothesisViolated,
    InadmissibleSize,
    InternalContradiction,
    NoLiftExists,
    NotAPGroup,
    NotCoprime,
    NotExponentP,
    NotNilpotent,
    PaddingImpossible,
    PreconditionViolated,
    RamError,
)
from .groups import (
    AbelianGroup,
    DirectProductGroup,
    FiniteGroup,
    QuotientView,
    direct_product,
    prime_factorization,
    quotient,
)
from .invariants import (
    exponent_exponent,
    frattini,
    is_semi_abelian,
    min_generators,
    omega,
    power_image,
    sylow_decomposition,
)
from .structures import GenTuple, RamFailure, RamStructure, check_ramification, validated
from .theory import (
    SizeConstraintSet,
    predict_elementary_abelian,
    predict_nilpotent,
    predict_semi_abelian_pgroup,
)
from . import oracle


# -- lifting through a normal subgroup ----------------------------------------


@dataclass(frozen=True)
class LiftContext:
    """A normal subgroup of a parent group together with the materialized
    quotient and its projection/section maps."""

    parent: FiniteGroup
    kernel: ElementSet
    view: QuotientView

    @classmethod
    def from_kernel(cls, parent: FiniteGroup, kernel: ElementSet) -> "LiftContext":
        return cls(parent, kernel, quotient(parent, kernel))

    @property
    def trivial_kernel(self) -> bool:
        return self.kernel.cardinality == 1


def omega_context(G: FiniteGroup) -> LiftContext:
    """Lift context for G modulo the subgroup of elements of order below the
    exponent level (the kernel used by the projection/lift pair)."""
    p, e = exponent_exponent(G)
    return LiftContext.from_kernel(G, omega(G, max(e - 1, 0)))


def _same_table_group(A: FiniteGroup, B: FiniteGroup) -> bool:
    """Same element indexing and multiplication, entry for entry (quotients are
    deterministic, so independently materialized copies compare equal)."""
    if A.order != B.order:
        return False
    import numpy as np

    from .groups import CayleyTableGroup

    if isinstance(A, CayleyTableGroup) and isinstance(B, CayleyTableGroup):
        return np.array_equal(A.table, B.table)
    return all(A.mul(x, y) == B.mul(x, y) for x in A.elements() for y in A.elements())


def _coset_elements(ctx: LiftContext, u: int) -> list[int]:
    rep = ctx.view.section(u)
    return sorted(ctx.parent.mul(rep, k) for k in ctx.kernel)


def lift_tuple(
    ctx: LiftContext,
    U: GenTuple,
    spherical: bool,
    forbid_trivial: bool = True,
) -> GenTuple:
    """Lift a generating tuple of the quotient to the parent, entrywise
    congruent modulo the kernel.

    Plain mode picks kernel multipliers so the lifted tuple generates the
    parent. Spherical mode additionally requires the quotient product to be
    trivial; the first r-1 entries are lifted to generators by depth-first
    search over kernel cosets in enumeration order (identity lifts are replaced
    by nontrivial kernel elements), and the last entry is forced as the inverse
    of the running product, which lands in the remaining coset.
    """
    G = ctx.parent
    Q = ctx.view.group
    if U.group is not Q and not _same_table_group(U.group, Q):
        raise PreconditionViolated("tuple does not live on this context's quotient")
    r = len(U)
    if r == 0:
        raise PreconditionViolated("cannot lift an empty tuple")
    if Q.closure_mask(U.entries) != (1 << Q.order) - 1:
        raise PreconditionViolated("tuple does not generate the quotient")
    full = (1 << G.order) - 1

    if spherical:
        if U.product() != 0:
            raise PreconditionViolated("spherical lift needs a trivial quotient product")
        if ctx.trivial_kernel:
            lifted = tuple(ctx.view.section(u) for u in U.entries)
            if any(z == 0 for z in lifted):
                raise NoLiftExists("trivial kernel cannot repair identity entries")
            return GenTuple(G, lifted)

    candidate_lists = []
    free = r - 1 if spherical else r
    for i in range(free):
        cands = _coset_elements(ctx, U.entries[i])
        if spherical or forbid_trivial:
            cands = [z for z in cands if z != 0]
        if not cands:
            raise NoLiftExists(f"no admissible lift for entry {i}")
        candidate_lists.append(cands)

    # union of all remaining candidates from position k on (for feasibility)
    suffix_mask = [0] * (free + 1)
    for k in range(free - 1, -1, -1):
        m = suffix_mask[k + 1]
        for z in candidate_lists[k]:
            m |= 1 << z
        suffix_mask[k] = m
    if spherical:
        last_coset = 0
        for z in _coset_elements(ctx, U.entries[r - 1]):
            last_coset |= 1 << z
        for k in range(free + 1):
            suffix_mask[k] |= last_coset

    chosen: list[int] = []
    feasible_memo: dict[tuple[int, int], bool] = {}

    def feasible(hmask: int, k: int) -> bool:
        key = (hmask, k)
        res = feasible_memo.get(key)
        if res is None:
            gens = list(iter_bits(hmask | suffix_mask[k]))
            res = G.closure_mask(gens) == full
            feasible_memo[key] = res
        return res

    def rec(k: int, hmask: int, pi: int) -> Optional[tuple[int, ...]]:
        if not feasible(hmask, k):
            return None
        if k == free:
            if spherical:
                if hmask != full:
                    return None
                last = G.inv(pi)
                if last == 0:
                    return None
                if ctx.view.project(last) != U.entries[r - 1]:
                    raise InternalContradiction("forced last entry left its coset")
                return tuple(chosen) + (last,)
            return tuple(chosen) if hmask == full else None
        for z in candidate_lists[k]:
            chosen.append(z)
            res = rec(k + 1, G.closure_mask(chosen), G.mul(pi, z))
            chosen.pop()
            if res is not None:
                return res
        return None

    result = rec(0, 1, 0)
    if result is None:
        raise NoLiftExists("exhausted kernel coset choices without generating the parent")
    return GenTuple(G, result)


# -- elementary abelian machinery ----------------------------------------------


def _is_elementary_abelian(G: FiniteGroup) -> Optional[int]:
    """The prime p if G is a nontrivial direct power of C_p, else None."""
    if G.order == 1:
        return None
    fact = prime_factorization(G.order)
    if len(fact) != 1:
        return None
    p = next(iter(fact))
    if not G.is_abelian:
        return None
    if any(G.order_of(g) > p for g in G.elements()):
        return None
    return p


def _greedy_basis(G: FiniteGroup, seed: Sequence[int] = ()) -> list[int]:
    """Minimal generating set of an elementary abelian group, grown greedily in
    element-index order from an optional seed of independent elements."""
    basis = list(seed)
    h = G.closure_mask(basis) if basis else 1
    for x in G.elements():
        if not (h >> x) & 1:
            basis.append(x)
            h = G.closure_mask(basis)
    return basis


def _word(G: FiniteGroup, basis: Sequence[int], exps: Sequence[int]) -> int:
    acc = 0
    for b, e in zip(basis, exps):
        acc = G.mul(acc, G.power(b, e))
    return acc


def _transport_elementary(
    S: RamStructure, target: FiniteGroup, basis: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Map a structure on the canonical C_p^d onto `target` through the given
    basis (an isomorphism, so both tuple properties carry over)."""
    C = S.group
    assert isinstance(C, AbelianGroup)

    def img(idx: int) -> int:
        return _word(target, basis, C.vector(idx))

    return tuple(img(g) for g in S.t1.entries), tuple(img(g) for g in S.t2.entries)


def extend_size(T1: GenTuple, p: int) -> GenTuple:
    """Lengthen a spherical system of an elementary abelian p-group by one
    entry (p odd: split the first entry as its square plus inverse) or two
    (p = 2: append the first entry twice). The union of conjugate cyclic sets
    is unchanged, so any disjoint partner stays disjoint."""
    G = T1.group
    if _is_elementary_abelian(G) != p:
        raise PreconditionViolated(f"group is not elementary abelian over {p}")
    from .structures import is_spherical_system

    if not is_spherical_system(G, T1):
        raise PreconditionViolated("input tuple is not a spherical system")
    x1 = T1.entries[0]
    if p == 2:
        return GenTuple(G, T1.entries + (x1, x1))
    return GenTuple(G, (G.mul(x1, x1),) + T1.entries[1:] + (G.inv(x1),))


def extend_rank(S: RamStructure) -> RamStructure:
    """Push a structure on C_p^d up to C_p^(d+1) at the same size, by
    multiplying one redundant entry of each tuple by the new generator and a
    second one by its inverse. Needs r1, r2 >= d+2 so that redundant entries
    exist."""
    G = S.group
    p = _is_elementary_abelian(G)
    if p is None or not isinstance(G, AbelianGroup):
        raise PreconditionViolated("rank extension needs a canonical elementary abelian group")
    d = len(G.orders)
    r1, r2 = S.size
    if r1 < d + 2 or r2 < d + 2:
        raise PreconditionViolated(f"rank extension needs sizes >= d+2 = {d + 2}")
    bigger = AbelianGroup(G.orders + (p,))
    full = (1 << G.order) - 1

    def redundant_pair(entries: tuple[int, ...]) -> tuple[int, int]:
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                rest = entries[:i] + entries[i + 1 : j] + entries[j + 1 :]
                if G.closure_mask(rest) == full:
                    return i, j
        raise PreconditionViolated("no redundant entry pair found")

    def push(entries: tuple[int, ...]) -> tuple[int, ...]:
        i, j = redundant_pair(entries)
        out = [g * p for g in entries]  # append a zero coordinate
        out[i] = bigger.mul(out[i], 1)  # new generator has index 1
        out[j] = bigger.mul(out[j], bigger.inv(1))
        return tuple(out)

    result = check_ramification(
        bigger, GenTuple(bigger, push(S.t1.entries)), GenTuple(bigger, push(S.t2.entries))
    )
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"rank extension failed validation: {result.reason}")
    return result


def _violated_clause(scs: SizeConstraintSet, r1: int, r2: int) -> str:
    if not scs.admits:
        return "; ".join(scs.provenance) or "group admits no ramification structure"
    if r1 < scs.min_size or r2 < scs.min_size:
        return f"sizes must both be >= {scs.min_size}"
    if (min(r1, r2), max(r1, r2)) in scs.excluded_pairs:
        return f"size pair ({r1},{r2}) is excluded"
    return "sizes must not both be odd"


def elementary_abelian_structure(p: int, d: int, r1: int, r2: int) -> RamStructure:
    """A validated structure of size (r1, r2) on C_p^d for every admissible
    size pair, grown from small base structures by size and rank extension."""
    scs = predict_elementary_abelian(p, d)
    if not scs.membership(r1, r2):
        raise InadmissibleSize(_violated_clause(scs, r1, r2))

    if p == 2 and r1 % 2 == 0 and r2 % 2 == 1:
        return elementary_abelian_structure(p, d, r2, r1).swapped()

    if p >= 3:
        base_rank, base_size = 2, (4 if p == 3 else 3)
        C = AbelianGroup([p] * base_rank)
        v = C.index_of
        if p >= 5:
            t1 = (v((1, 0)), v((0, 1)), C.inv(v((1, 1))))
            t2 = (v((1, 2)), v((1, 4)), C.inv(v((2, 6))))
        else:
            t1 = (v((1, 0)), v((2, 0)), v((0, 1)), v((0, 2)))
            t2 = (v((1, 1)), v((2, 2)), v((1, 2)), v((2, 1)))
        grow1, grow2 = r1 - base_size, r2 - base_size
    else:
        both_odd = r1 % 2 == 1 and r2 % 2 == 1
        if both_odd:
            base_rank = 4
            C = AbelianGroup([2] * 4)
            v = C.index_of
            t1 = (
                v((1, 0, 0, 0)),
                v((0, 1, 0, 0)),
                v((0, 0, 1, 0)),
                v((0, 0, 0, 1)),
                v((1, 1, 1, 1)),
            )
            t2 = (
                v((1, 1, 0, 0)),
                v((0, 1, 1, 0)),
                v((0, 0, 1, 1)),
                v((1, 1, 1, 0)),
                v((0, 1, 1, 1)),
            )
            grow1, grow2 = (r1 - 5) // 2, (r2 - 5) // 2
        else:
            base_rank = 3
            C = AbelianGroup([2] * 3)
            v = C.index_of
            t2 = (v((1, 0, 0)), v((0, 1, 0)), v((0, 0, 1))) * 2
            if r1 % 2 == 1:
                t1 = (v((1, 1, 0)), v((1, 0, 1)), v((0, 1, 1)), v((1, 1, 1)), v((1, 1, 1)))
                grow1 = (r1 - 5) // 2
            else:
                t1 = (v((1, 1, 0)), v((1, 0, 1)), v((1, 1, 1))) * 2
                grow1 = (r1 - 6) // 2
            grow2 = (r2 - 6) // 2

    T1, T2 = GenTuple(C, t1), GenTuple(C, t2)
    for _ in range(grow1):
        T1 = extend_size(T1, p)
    for _ in range(grow2):
        T2 = extend_size(T2, p)
    result = check_ramification(C, T1, T2)
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"base structure failed validation: {result.reason}")
    for _ in range(d - base_rank):
        result = extend_rank(result)
    return result


def exponent_p_structure(G: FiniteGroup, r1: int, r2: int) -> RamStructure:
    """A structure on a group of prime exponent p, built on its maximal
    elementary abelian quotient and lifted back spherically."""
    p, e = exponent_exponent(G)
    if e != 1:
        raise NotExponentP(f"exponent is {p}^{e}, not prime")
    d = min_generators(G)
    scs = predict_elementary_abelian(p, d)
    if not scs.membership(r1, r2):
        raise InadmissibleSize(_violated_clause(scs, r1, r2))
    canonical = elementary_abelian_structure(p, d, r1, r2)

    phi = frattini(G)
    if phi.cardinality == 1:
        basis = _greedy_basis(G)
        t1, t2 = _transport_elementary(canonical, G, basis)
        return validated(G, t1, t2)

    ctx = LiftContext.from_kernel(G, phi)
    Q = ctx.view.group
    basis = _greedy_basis(Q)
    u1, u2 = _transport_elementary(canonical, Q, basis)
    T1 = lift_tuple(ctx, GenTuple(Q, u1), spherical=True)
    T2 = lift_tuple(ctx, GenTuple(Q, u2), spherical=True)
    result = check_ramification(G, T1, T2)
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"exponent-p lift failed validation: {result.reason}")
    return result


# -- quotient projection and lifting at the top power level --------------------


def project_mod_omega(G: FiniteGroup, S: RamStructure) -> RamStructure:
    """Project a structure onto the quotient by the order-below-exponent
    subgroup, deleting entries with trivial image; needs the semi-abelian
    hypothesis, which is what keeps the projected tuples disjoint."""
    p, e = exponent_exponent(G)
    ok, witness = is_semi_abelian(G, e - 1)
    if not ok:
        raise HypothesisViolated(f"not semi-{p}^{e - 1}-abelian; witness {witness}")
    if S.group is not G:
        raise PreconditionViolated("structure does not live on the given group")
    if e == 1:
        return S
    ctx = omega_context(G)
    Q = ctx.view.group
    t1 = tuple(q for q in (ctx.view.project(g) for g in S.t1.entries) if q != 0)
    t2 = tuple(q for q in (ctx.view.project(g) for g in S.t2.entries) if q != 0)
    result = check_ramification(Q, GenTuple(Q, t1), GenTuple(Q, t2))
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"projection failed validation: {result.reason}")
    return result


def lift_structure_mod_omega(
    G: FiniteGroup, U: RamStructure, ctx: Optional[LiftContext] = None
) -> RamStructure:
    """Lift a structure on G modulo the order-below-exponent subgroup back to
    G; disjointness is guaranteed by the semi-abelian hypothesis but is
    re-verified, and a failure there reports an internal contradiction."""
    p, e = exponent_exponent(G)
    ok, witness = is_semi_abelian(G, e - 1)
    if not ok:
        raise HypothesisViolated(f"not semi-{p}^{e - 1}-abelian; witness {witness}")
    if e == 1:
        if U.group is not G:
            raise PreconditionViolated("structure does not live on the given group")
        return U
    d = min_generators(G)
    r1, r2 = U.size
    if r1 < d + 1 or r2 < d + 1:
        raise PreconditionViolated(f"lift needs sizes >= d+1 = {d + 1}")
    ctx = ctx or omega_context(G)
    T1 = lift_tuple(ctx, U.t1, spherical=True)
    T2 = lift_tuple(ctx, U.t2, spherical=True)
    result = check_ramification(G, T1, T2)
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"lift failed validation: {result.reason}")
    return result


# -- padding and direct products -------------------------------------------------


def pad_from_beauville(S: RamStructure, r1: int, r2: int) -> RamStructure:
    """Grow a size-(3,3) structure to any size (r1, r2) >= (3, 3) by appending
    cancelling pairs (and a commutator-free 4-entry variant when the parity
    differs); the conjugate cyclic sets are unchanged."""
    if S.size != (3, 3):
        raise PreconditionViolated("padding starts from a size-(3,3) structure")
    if r1 < 3 or r2 < 3:
        raise PreconditionViolated("target sizes must be >= 3")
    G = S.group

    def pad(entries: tuple[int, ...], target: int) -> tuple[int, ...]:
        x, y = entries[0], entries[1]
        if (target - 3) % 2 == 0:
            out = list(entries)
        else:
            out = [x, y, G.inv(y), G.inv(x)]
        while len(out) < target:
            out.extend((x, G.inv(x)))
        return tuple(out)

    result = check_ramification(
        G, GenTuple(G, pad(S.t1.entries, r1)), GenTuple(G, pad(S.t2.entries, r2))
    )
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"padding failed validation: {result.reason}")
    return result


def product_combine(SG: RamStructure, SH: RamStructure) -> RamStructure:
    """Combine structures on groups of coprime order into one on their direct
    product, padding the shorter tuples with identities at the end and zipping
    componentwise; the result has the componentwise maximum size."""
    G, H = SG.group, SH.group
    if math.gcd(G.order, H.order) != 1:
        raise NotCoprime(f"orders {G.order} and {H.order} share a factor")
    P = direct_product(G, H)

    def zip_pad(tG: tuple[int, ...], tH: tuple[int, ...]) -> tuple[int, ...]:
        r = max(len(tG), len(tH))
        a = tG + (0,) * (r - len(tG))
        b = tH + (0,) * (r - len(tH))
        return tuple(P.index_of(x, y) for x, y in zip(a, b))

    result = check_ramification(
        P,
        GenTuple(P, zip_pad(SG.t1.entries, SH.t1.entries)),
        GenTuple(P, zip_pad(SG.t2.entries, SH.t2.entries)),
    )
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"product combination failed validation: {result.reason}")
    return result


def product_project(
    S: RamStructure,
    side: str,
    target_size: Optional[tuple[int, int]] = None,
) -> RamStructure:
    """Project a structure on a coprime direct product onto one factor,
    deleting identity components; an odd-order factor can be re-padded to a
    requested larger size by cancelling pairs, splitting the first entry as
    square-plus-inverse when the parity requires it."""
    P = S.group
    if not isinstance(P, DirectProductGroup):
        raise PreconditionViolated("structure does not live on a direct product")
    if math.gcd(P.left.order, P.right.order) != 1:
        raise NotCoprime("factors are not of coprime order")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    F = P.left if side == "left" else P.right
    pick = (lambda pair: pair[0]) if side == "left" else (lambda pair: pair[1])

    def project(entries: tuple[int, ...]) -> list[int]:
        out = [pick(P.pair(g)) for g in entries]
        return [z for z in out if z != 0]

    t1, t2 = project(S.t1.entries), project(S.t2.entries)

    if target_size is not None:
        r, s = target_size
        if F.order % 2 == 0:
            raise PaddingImpossible("only odd-order factors support full-size re-padding")
        if r < len(t1) or s < len(t2):
            raise PreconditionViolated("target size below the projected size")

        def repad(t: list[int], target: int) -> list[int]:
            if (target - len(t)) % 2 == 1:
                z = t[0]
                t = [F.mul(z, z), F.inv(z)] + t[1:]
            while len(t) < target:
                t.extend((t[0], F.inv(t[0])))
            return t

        t1, t2 = repad(t1, r), repad(t2, s)

    result = check_ramification(F, GenTuple(F, tuple(t1)), GenTuple(F, tuple(t2)))
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"projection failed validation: {result.reason}")
    return result


# -- the odd-odd construction for 2-groups ----------------------------------------


def _balanced_template(d: int, length: int) -> Optional[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Attachment and fill counts (per letter x, y, z) so that each letter
    occurs an even number of times in a template of the given length holding
    d-3 marked entries; lexicographically first solution."""
    marked = d - 3
    fill_total = length - 3 - marked
    if fill_total < 0:
        return None
    for ax in range(marked + 1):
        for ay in range(marked - ax + 1):
            az = marked - ax - ay
            for fx in range(fill_total + 1):
                for fy in range(fill_total - fx + 1):
                    fz = fill_total - fx - fy
                    if all((1 + a + f) % 2 == 0 for a, f in ((ax, fx), (ay, fy), (az, fz))):
                        return (ax, ay, az), (fx, fy, fz)
    return None


def semi_abelian_2group_odd_odd(G: FiniteGroup, r1: int, r2: int) -> RamStructure:
    """Both-sizes-odd construction for semi-abelian 2-groups whose set of
    top-level powers has exactly 8 elements.

    Picks generators n_1..n_{d-3} of the order-below-exponent subgroup modulo
    the squares, sets n to their product, and branches on whether the
    order-2 power of n is itself a top-level power to choose the first basis
    vector of the rank-3 quotient. One side is lifted from a standard
    rank-3 pattern; the other is assembled from the basis letters with the
    n_i attached, corrected by a square so the product telescopes to n, and
    closed with n^-1.
    """
    p, e = exponent_exponent(G)
    if p != 2:
        raise NotAPGroup("the odd-odd construction applies to 2-groups")
    ok, witness = is_semi_abelian(G, e - 1)
    if not ok:
        raise HypothesisViolated(f"not semi-2^{e - 1}-abelian; witness {witness}")
    X = power_image(G, e - 1)
    if e < 2 or X.cardinality != 8:
        raise HypothesisViolated("needs exponent >= 4 and exactly 8 top-level powers")
    if r1 % 2 == 0 or r2 % 2 == 0:
        raise PreconditionViolated("both sizes must be odd")
    d = min_generators(G)
    if r1 < 5 or r2 < 5 or (r1, r2) == (5, 5) or r1 < d + 1 or r2 < d + 1:
        raise InadmissibleSize(_violated_clause(predict_semi_abelian_pgroup(G), r1, r2))
    if d == 3:
        raise DegenerateRank("rank 3 leaves no generators for n; fall back to search")

    swap = r2 < 7  # put the >= 7 side on the assembled tuple
    a, b = (r2, r1) if swap else (r1, r2)

    phi = frattini(G)
    wview = quotient(G, phi)
    Om = omega(G, e - 1)

    ns: list[int] = []
    span = 1
    for x in Om:
        if len(ns) == d - 3:
            break
        ix = wview.project(x)
        if not (span >> ix) & 1:
            ns.append(x)
            span = wview.group.closure_mask([wview.project(m) for m in ns])
    if len(ns) != d - 3:
        raise InternalContradiction("order-below-exponent subgroup has unexpected rank")

    n = 0
    for m in ns:
        n = G.mul(n, m)
    k = G.order_of(n).bit_length() - 1
    t = G.power(n, 1 << (k - 1))

    ctx = omega_context(G)
    OQ = ctx.view.group
    if t in X:
        q = 1 << (e - 1)
        x = min(g for g in G.elements() if G.power(g, q) == t)
        xq = ctx.view.project(x)
        if xq == 0:
            raise InternalContradiction("chosen basis element lies in the kernel")
        basis_q = _greedy_basis(OQ, seed=[xq])
        y, z = ctx.view.section(basis_q[1]), ctx.view.section(basis_q[2])
    else:
        basis_q = _greedy_basis(OQ)
        xq = basis_q[0]
        x, y, z = (ctx.view.section(v) for v in basis_q)
    yq, zq = basis_q[1], basis_q[2]

    xy = OQ.mul(xq, yq)
    yz = OQ.mul(yq, zq)
    xz = OQ.mul(xq, zq)
    xyz = OQ.mul(xy, zq)
    u1 = (xy, yz, xz, xyz, xyz) + (xy,) * (a - 5)
    T1 = lift_tuple(ctx, GenTuple(OQ, u1), spherical=True)

    counts = _balanced_template(d, b - 1)
    if counts is None:
        raise InternalContradiction("no parity-balanced template of the required length")
    (ax, ay, az), (fx, fy, fz) = counts
    entries = [x, y, z]
    pos = 0
    for letter, count in ((x, ax), (y, ay), (z, az)):
        for _ in range(count):
            entries.append(G.mul(letter, ns[pos]))
            pos += 1
    entries.extend([x] * fx + [y] * fy + [z] * fz)

    pi = 0
    for g in entries:
        pi = G.mul(pi, g)
    w = G.mul(pi, G.inv(n))
    if w not in phi:
        raise InternalContradiction("template product is not n modulo the squares")
    entries[0] = G.mul(G.inv(w), x)
    entries.append(G.inv(n))
    T2 = GenTuple(G, tuple(entries))

    result = check_ramification(G, T1, T2)
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"odd-odd construction failed validation: {result.reason}")
    return result.swapped() if swap else result


# -- orchestration ------------------------------------------------------------------


@dataclass(frozen=True)
class ConstructResult:
    """Tri-state outcome: a validated structure, a proof of inadmissibility,
    or unknown (theory silent and search budget exhausted)."""

    status: str  # "ok" | "inadmissible" | "unknown"
    structure: Optional[RamStructure] = None
    method: str = ""
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status == "ok"


def _construct_pgroup(G: FiniteGroup, r1: int, r2: int) -> Optional[ConstructResult]:
    """Theory-backed construction for a p-group, or None when the implemented
    theory does not cover it (not semi-abelian, or the degenerate rank case)."""
    p, e = exponent_exponent(G)
    ok, _ = is_semi_abelian(G, e - 1)
    if not ok:
        return None
    scs = predict_semi_abelian_pgroup(G)
    if not scs.membership(r1, r2):
        return ConstructResult("inadmissible", reason=_violated_clause(scs, r1, r2))
    if e == 1:
        return ConstructResult(
            "ok", exponent_p_structure(G, r1, r2), method="exponent-p-lift"
        )
    if p == 2 and r1 % 2 == 1 and r2 % 2 == 1 and power_image(G, e - 1).cardinality == 8:
        try:
            return ConstructResult(
                "ok", semi_abelian_2group_odd_odd(G, r1, r2), method="odd-odd-2group"
            )
        except DegenerateRank:
            return None
    ctx = omega_context(G)
    U = exponent_p_structure(ctx.view.group, r1, r2)
    return ConstructResult(
        "ok", lift_structure_mod_omega(G, U, ctx), method="omega-lift"
    )


def _construct_nilpotent(
    G: FiniteGroup, r1: int, r2: int, budget, method: str
) -> Optional[ConstructResult]:
    try:
        factors = sylow_decomposition(G)
    except NotNilpotent:
        return None
    if len(factors) < 2:
        return _construct_pgroup(G, r1, r2)
    try:
        scs = predict_nilpotent(G)
    except HypothesisViolated:
        return None
    if not scs.membership(r1, r2):
        return ConstructResult("inadmissible", reason=_violated_clause(scs, r1, r2))

    parts: list[tuple] = []
    methods = []
    for p, factor in sorted(factors.items()):
        fscs = predict_semi_abelian_pgroup(factor.group)
        target = (r1, r2)
        if not fscs.membership(*target):
            # only the order-8 elementary abelian factor can refuse; drop the
            # larger (odd) side by one, which another factor still carries
            target = (r1 - 1, r2) if r1 >= r2 else (r1, r2 - 1)
            if not fscs.membership(*target):
                return None
        sub = construct_any(factor.group, *target, budget=budget, method=method)
        if sub.status != "ok":
            return ConstructResult("unknown", reason=f"Sylow {p}-factor: {sub.reason}")
        parts.append((factor, sub.structure))
        methods.append(f"{p}:{sub.method}")

    def assemble(pick_tuple) -> tuple[int, ...]:
        size = max(len(pick_tuple(S)) for _, S in parts)
        out = []
        for i in range(size):
            acc = 0
            for factor, S in parts:
                entries = pick_tuple(S).entries
                if i < len(entries):
                    acc = G.mul(acc, factor.embed(entries[i]))
            out.append(acc)
        return tuple(out)

    t1 = assemble(lambda S: S.t1)
    t2 = assemble(lambda S: S.t2)
    result = check_ramification(G, GenTuple(G, t1), GenTuple(G, t2))
    if isinstance(result, RamFailure):
        raise InternalContradiction(f"product assembly failed validation: {result.reason}")
    return ConstructResult("ok", result, method="sylow-product(" + ",".join(methods) + ")")


def construct_any(
    G: FiniteGroup,
    r1: int,
    r2: int,
    budget: Optional["oracle.SearchBudget"] = None,
    method: str = "auto",
) -> ConstructResult:
    """Dispatch: theory-backed constructions where the characterizations apply
    (elementary abelian, prime exponent, semi-abelian p-groups, nilpotent
    assemblies), exhaustive search otherwise or on the degenerate rank case."""
    if method not in ("auto", "theorem", "search"):
        raise ValueError("method must be auto, theorem, or search")
    if r1 < 3 or r2 < 3:
        return ConstructResult("inadmissible", reason="structure sizes are at least 3")
    if G.order == 1:
        return ConstructResult("inadmissible", reason="trivial group")

    if method != "search":
        outcome: Optional[ConstructResult] = None
        if len(prime_factorization(G.order)) == 1:
            outcome = _construct_pgroup(G, r1, r2)
        else:
            outcome = _construct_nilpotent(G, r1, r2, budget, method)
        if outcome is not None:
            return outcome
        if method == "theorem":
            return ConstructResult(
                "unknown", reason="no implemented characterization covers this group"
            )

    try:
        found = oracle.find_structure(G, r1, r2, budget)
    except (RamError, ValueError) as exc:
        return ConstructResult("unknown", reason=str(exc))
    if found.status == "found":
        return ConstructResult("ok", found.structure, method="search")
    if found.status == "none":
        return ConstructResult(
            "inadmissible", method="search", reason="exhaustive search found no structure"
        )
    return ConstructResult("unknown", method="search", reason="search budget exhausted")
