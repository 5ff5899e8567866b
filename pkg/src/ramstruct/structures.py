"""Spherical generating systems, their conjugate-closed element sets, and
validated ramification structures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .bitset import ElementSet
from .errors import RamError
from .groups import FiniteGroup

MIN_STRUCTURE_SIZE = 3


@dataclass(frozen=True)
class GenTuple:
    """Ordered tuple of elements of one group; repetition allowed."""

    group: FiniteGroup
    entries: tuple[int, ...]

    def __post_init__(self):
        for g in self.entries:
            self.group.check_index(g)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def product(self) -> int:
        acc = 0
        for g in self.entries:
            acc = self.group.mul(acc, g)
        return acc


def _cyc_masks(G: FiniteGroup) -> list[int]:
    """cyc[y] = bitmask of the union over g of the conjugate subgroups <y>^g.

    For abelian groups this is just <y>; otherwise <y>^g = <y^g>, so the union
    is accumulated from the powers masks of the conjugates of y.
    """
    masks = G._cache().get("cyc_masks")
    if masks is not None:
        return masks
    n = G.order
    pw = [G.powers_mask(y) for y in range(n)]
    if G.is_abelian:
        masks = pw
    else:
        masks = [0] * n
        for y in range(n):
            m = pw[y]
            for g in range(n):
                m |= pw[G.conjugate(y, g)]
            masks[y] = m
    G._cache()["cyc_masks"] = masks
    return masks


def sigma(G: FiniteGroup, T: GenTuple) -> ElementSet:
    """Union of all conjugates of the cyclic subgroups generated by the entries."""
    cyc = _cyc_masks(G)
    m = 1
    for g in T.entries:
        m |= cyc[g]
    return ElementSet(m, G.order)


@dataclass(frozen=True)
class SphericalVerdict:
    ok: bool
    reason: Optional[str] = None  # "trivial_entry" | "not_generating" | "product_not_identity"
    detail: Optional[int] = None  # offending entry position for trivial_entry

    def __bool__(self) -> bool:
        return self.ok


def is_spherical_system(G: FiniteGroup, T: GenTuple) -> SphericalVerdict:
    """True iff no entry is the identity, the entries generate G, and the
    ordered product of the entries is the identity.

    Failures are reported in that fixed order for reproducible diagnostics.
    Tuples of any size >= 1 are accepted here; the size >= 3 floor applies only
    to full ramification structures.
    """
    if len(T) == 0:
        raise RamError("spherical test requires a nonempty tuple")
    for pos, g in enumerate(T.entries):
        if g == 0:
            return SphericalVerdict(False, "trivial_entry", pos)
    if G.closure_mask(T.entries) != (1 << G.order) - 1:
        return SphericalVerdict(False, "not_generating")
    if T.product() != 0:
        return SphericalVerdict(False, "product_not_identity")
    return SphericalVerdict(True)


def are_disjoint(
    G: FiniteGroup, T1: GenTuple, T2: GenTuple
) -> tuple[bool, Optional[int]]:
    """Whether the conjugate-closed sets of the two tuples meet only in the
    identity; on failure returns one shared nontrivial element."""
    common = sigma(G, T1).mask & sigma(G, T2).mask & ~1
    if common:
        return False, (common & -common).bit_length() - 1
    return True, None


@dataclass(frozen=True)
class RamStructure:
    """A validated pair of disjoint spherical systems with its size pair."""

    t1: GenTuple
    t2: GenTuple
    size: tuple[int, int]
    sigma1: ElementSet
    sigma2: ElementSet

    @property
    def group(self) -> FiniteGroup:
        return self.t1.group

    def swapped(self) -> "RamStructure":
        return RamStructure(
            self.t2, self.t1, (self.size[1], self.size[0]), self.sigma2, self.sigma1
        )


@dataclass(frozen=True)
class RamFailure:
    reason: str  # "size_below_minimum" | "t1:<reason>" | "t2:<reason>" | "not_disjoint"
    witness: Optional[int] = None

    def __bool__(self) -> bool:
        return False


def check_ramification(G: FiniteGroup, T1: GenTuple, T2: GenTuple):
    """Validate (T1, T2) as a ramification structure, or report the first
    failing condition in a fixed order: size floor, then per-tuple trivial
    entry / generation / product, then disjointness."""
    if len(T1) < MIN_STRUCTURE_SIZE or len(T2) < MIN_STRUCTURE_SIZE:
        return RamFailure("size_below_minimum")
    for name, T in (("t1", T1), ("t2", T2)):
        v = is_spherical_system(G, T)
        if not v:
            return RamFailure(f"{name}:{v.reason}", v.detail)
    ok, witness = are_disjoint(G, T1, T2)
    if not ok:
        return RamFailure("not_disjoint", witness)
    return RamStructure(
        T1, T2, (len(T1), len(T2)), sigma(G, T1), sigma(G, T2)
    )


def validated(G: FiniteGroup, t1: Sequence[int], t2: Sequence[int]) -> RamStructure:
    """check_ramification that raises instead of returning a failure record."""
    result = check_ramification(G, GenTuple(G, tuple(t1)), GenTuple(G, tuple(t2)))
    if isinstance(result, RamFailure):
        raise RamError(f"tuple pair failed validation: {result.reason}")
    return result
