"""
Subsets of [n], set families over [n] and their intersection structure.

Sets are stored as Python integers used as bitmasks: bit ``e - 1`` stands for
element ``e``. Integers are unbounded, so the same representation serves every
ground-set size. Comparing masks as integers is exactly colexicographic order,
which is the canonical member order of every family.
"""

import logging
import math
import random
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from types import MappingProxyType

from .exceptions import EmptyFamilyError, MergeTargetError, NotIntersectingError, ParameterError

logger = logging.getLogger(__name__)


def elements_of(mask: int) -> tuple[int, ...]:
    """Return the 1-based labels of the bits set in ``mask``, increasing."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def mask_of(elements: Iterable[int]) -> int:
    """Return the bitmask of a collection of 1-based labels."""
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


@lru_cache(maxsize=256)
def rset_masks(n: int, r: int) -> tuple[int, ...]:
    """All r-subsets of [n] as bitmasks, in colex order."""
    if not 0 <= r <= n:
        raise ParameterError(f"need 0 <= r <= n, got n={n}, r={r}")
    return tuple(sorted(sum(1 << i for i in combo) for combo in combinations(range(n), r)))


@dataclass(frozen=True, slots=True)
class VSet:
    """A subset of the ground set [n]."""

    mask: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"ground set size must be positive, got n={self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ParameterError(f"elements {elements_of(abs(self.mask))} not all inside [1, {self.n}]")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "VSet":
        """Build a set from labels, rejecting labels outside [n] and repeats."""
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ParameterError(f"element {e} outside [1, {n}]")
            bit = 1 << (e - 1)
            if mask & bit:
                raise ParameterError(f"duplicate element {e}")
            mask |= bit
        return cls(mask, n)

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.mask)

    def __len__(self):
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, element):
        return isinstance(element, int) and element >= 1 and bool(self.mask >> (element - 1) & 1)

    def __and__(self, other: "VSet") -> "VSet":
        return VSet(self.mask & other.mask, max(self.n, other.n))

    def __or__(self, other: "VSet") -> "VSet":
        return VSet(self.mask | other.mask, max(self.n, other.n))

    def __sub__(self, other: "VSet") -> "VSet":
        return VSet(self.mask & ~other.mask, self.n)

    def meets(self, other: "VSet") -> bool:
        return bool(self.mask & other.mask)

    def issubset(self, other: "VSet") -> bool:
        return not self.mask & ~other.mask

    def lifted(self, n: int) -> "VSet":
        """The same elements over a larger ground set."""
        return VSet(self.mask, n)

    def as_list(self) -> list[int]:
        return list(self.elements)

    def __str__(self):
        elements = self.elements
        if not elements:
            return "∅"
        if elements[-1] <= 9:
            return "".join(map(str, elements))
        return "{" + ",".join(map(str, elements)) + "}"


@dataclass(frozen=True, slots=True)
class SetFamily:
    """
    Duplicate-free collection of subsets of [n].

    Members are kept in colex order, so two families with the same members
    compare equal however they were built. ``rank`` is the common member size
    of a uniform family; it is inferred when every member has the same size.
    """

    n: int
    members: tuple[VSet, ...] = ()
    rank: int | None = field(default=None, compare=False)
    _index: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"ground set size must be positive, got n={self.n}")
        masks = set()
        for member in self.members:
            if member.n != self.n:
                raise ParameterError(f"member {member} is over [{member.n}], family is over [{self.n}]")
            masks.add(member.mask)
        ordered = tuple(VSet(mask, self.n) for mask in sorted(masks))
        object.__setattr__(self, "members", ordered)
        object.__setattr__(self, "_index", frozenset(masks))

        sizes = {mask.bit_count() for mask in masks}
        if self.rank is None:
            if len(sizes) == 1:
                object.__setattr__(self, "rank", sizes.pop())
        elif self.rank < 0 or sizes - {self.rank}:
            raise ParameterError(f"members of sizes {sorted(sizes)} in a family of rank {self.rank}")

    @classmethod
    def of(cls, n: int, sets: Iterable, rank: int | None = None) -> "SetFamily":
        """Build a family from VSets or iterables of labels."""
        members = tuple(s.lifted(n) if isinstance(s, VSet) else VSet.of(n, s) for s in sets)
        return cls(n, members, rank)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], rank: int | None = None) -> "SetFamily":
        return cls(n, tuple(VSet(mask, n) for mask in masks), rank)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(member.mask for member in self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[VSet]:
        return iter(self.members)

    def __contains__(self, item):
        if isinstance(item, VSet):
            return item.mask in self._index
        return mask_of(item) in self._index

    def support(self) -> VSet:
        """Union of all members."""
        mask = 0
        for member_mask in self._index:
            mask |= member_mask
        return VSet(mask, self.n)

    def issubset(self, other: "SetFamily") -> bool:
        return self._index <= other._index

    def lifted(self, n: int) -> "SetFamily":
        """The same members over a ground set of size ``n >= self.n``."""
        if n < self.n:
            raise ParameterError(f"cannot restrict a family over [{self.n}] to [{n}]")
        return SetFamily.from_masks(n, self._index, self.rank)

    def as_lists(self) -> list[list[int]]:
        return [member.as_list() for member in self.members]

    def __str__(self):
        return "{" + ", ".join(map(str, self.members)) + "}"


@dataclass(frozen=True, slots=True)
class IntersectionStructure:
    """The map k -> A<k> of a family: its pairwise intersections grouped by size."""

    n: int
    by_size: Mapping[int, tuple[VSet, ...]]

    def __getitem__(self, k: int) -> tuple[VSet, ...]:
        return self.by_size.get(k, ())

    def counts(self) -> dict[int, int]:
        return {k: len(sets) for k, sets in self.by_size.items()}

    def sets(self) -> frozenset[VSet]:
        """I(A) itself: every pairwise intersection regardless of size."""
        return frozenset(s for sets in self.by_size.values() for s in sets)


def _lex_sorted(n: int, masks: Iterable[int]) -> tuple[VSet, ...]:
    return tuple(VSet(mask, n) for mask in sorted(masks, key=elements_of))


def _require_members(family: SetFamily):
    if not family.members:
        raise EmptyFamilyError()


def _pair_intersections(masks: tuple[int, ...]) -> set[int]:
    # Equal pairs are included: A & A = A belongs to I(A).
    return {a & b for a, b in combinations_with_replacement(masks, 2)}


def intersection_structure(family: SetFamily) -> IntersectionStructure:
    """Group every intersection A & B (A, B members, A = B allowed) by size."""
    _require_members(family)
    buckets: dict[int, list[int]] = {}
    for mask in _pair_intersections(family.masks):
        buckets.setdefault(mask.bit_count(), []).append(mask)
    by_size = {k: _lex_sorted(family.n, buckets[k]) for k in sorted(buckets)}
    return IntersectionStructure(family.n, MappingProxyType(by_size))


def k_intersections(family: SetFamily, k: int) -> tuple[VSet, ...]:
    """A<k>: the k-element pairwise intersections, in lexicographic order."""
    if not 0 <= k <= family.n:
        raise ParameterError(f"k={k} outside [0, {family.n}]")
    _require_members(family)
    found = {mask for mask in _pair_intersections(family.masks) if mask.bit_count() == k}
    return _lex_sorted(family.n, found)


def is_intersecting(family: SetFamily) -> bool:
    _require_members(family)
    return all(a & b for a, b in combinations_with_replacement(family.masks, 2))


def _as_uniform(family: SetFamily, n: int, r: int) -> SetFamily:
    if not 1 <= r <= n:
        raise ParameterError(f"need 1 <= r <= n, got n={n}, r={r}")
    if family.n > n:
        raise ParameterError(f"family is over [{family.n}], larger than n={n}")
    if any(len(member) != r for member in family.members):
        raise ParameterError(f"family is not {r}-uniform")
    return family if family.n == n else family.lifted(n)


def is_maximal(family: SetFamily, n: int, r: int) -> bool:
    """True iff every r-set of [n] outside the family misses some member."""
    family = _as_uniform(family, n, r)
    if not is_intersecting(family):
        raise NotIntersectingError()
    members = family.masks
    present = set(members)
    for candidate in rset_masks(n, r):
        if candidate not in present and all(candidate & mask for mask in members):
            return False
    return True


def maximalize(family: SetFamily, n: int, r: int) -> SetFamily:
    """
    Extend an intersecting r-uniform family to a maximal one.

    Candidates are scanned once in colex order and each is added iff it meets
    every set already in the family. A rejected candidate misses a member
    that never leaves, so one pass is enough.
    """
    family = _as_uniform(family, n, r)
    if not is_intersecting(family):
        raise NotIntersectingError()
    chosen = list(family.masks)
    present = set(chosen)
    for candidate in rset_masks(n, r):
        if candidate not in present and all(candidate & mask for mask in chosen):
            chosen.append(candidate)
            present.add(candidate)
    logger.debug(f"maximalize: {len(family)} -> {len(chosen)} sets over [{n}]^({r})")
    return SetFamily.from_masks(n, chosen, rank=r)


def link(family: SetFamily, d: VSet) -> SetFamily:
    """The residues A \\ D over the members A properly containing D."""
    if d.n > family.n:
        raise ParameterError(f"set {d} is over [{d.n}], family is over [{family.n}]")
    residues = {mask & ~d.mask for mask in family.masks if mask & d.mask == d.mask and mask != d.mask}
    rank = None
    if family.rank is not None and family.rank > len(d):
        rank = family.rank - len(d)
    return SetFamily.from_masks(family.n, residues, rank)


def merge_vertices(family: SetFamily, a: int, b: int, v: int | None = None) -> SetFamily:
    """
    Replace every occurrence of ``a`` or ``b`` by the fresh label ``v``.

    ``v`` defaults to n + 1; the result lives over [max(n, v)]. Members that
    become equal collapse, so the family can shrink.
    """
    if a == b:
        raise ParameterError(f"merge needs two distinct labels, got {a} twice")
    if min(a, b) < 1:
        raise ParameterError(f"labels must be positive, got {a} and {b}")
    if v is None:
        v = family.n + 1
    if v < 1:
        raise ParameterError(f"merge target must be positive, got {v}")
    fresh = 1 << (v - 1)
    if v in (a, b) or any(mask & fresh for mask in family.masks):
        raise MergeTargetError()
    merged = (1 << (a - 1)) | (1 << (b - 1))
    out = {(mask & ~merged) | fresh if mask & merged else mask for mask in family.masks}
    return SetFamily.from_masks(max(family.n, v), out)


def singleton_support(family: SetFamily) -> VSet:
    """A<1> read as a set of points."""
    _require_members(family)
    mask = 0
    for inter in _pair_intersections(family.masks):
        if inter.bit_count() == 1:
            mask |= inter
    return VSet(mask, family.n)


def star_cover_violations(family: SetFamily) -> list[tuple[VSet, VSet]]:
    """Pairs of distinct members whose intersection avoids every point of A<1>."""
    if not is_intersecting(family):
        raise NotIntersectingError()
    points = singleton_support(family).mask
    return [
        (VSet(a, family.n), VSet(b, family.n)) for a, b in combinations(family.masks, 2) if not a & b & points
    ]


def hitting_count(n: int, k: int, alpha: int) -> int:
    """Number of k-subsets of [n] meeting [alpha]: C(n, k) - C(n - alpha, k)."""
    if n < 0 or not 0 <= k <= n or not 0 <= alpha <= n:
        raise ParameterError(f"need 0 <= k <= n and 0 <= alpha <= n, got n={n}, k={k}, alpha={alpha}")
    return math.comb(n, k) - math.comb(n - alpha, k)


def hitting_sets(n: int, k: int, points: VSet) -> tuple[VSet, ...]:
    """The k-subsets of [n] meeting ``points``, in lexicographic order."""
    if points.n > n:
        raise ParameterError(f"points {points} are over [{points.n}], larger than n={n}")
    return _lex_sorted(n, (mask for mask in rset_masks(n, k) if mask & points.mask))


def level_profile(family: SetFamily, levels: Iterable[int] | None = None) -> dict[int, int]:
    """|A<l>| for each requested level (every level 0..n by default)."""
    counts = intersection_structure(family).counts()
    if levels is None:
        levels = range(family.n + 1)
    profile = {}
    for level in levels:
        if not 0 <= level <= family.n:
            raise ParameterError(f"level {level} outside [0, {family.n}]")
        profile[level] = counts.get(level, 0)
    return profile


@dataclass(frozen=True, slots=True)
class CoreLink:
    """A link A_D together with the number of singletons it realizes."""

    d: VSet
    family: SetFamily
    singletons: int


def core_links(family: SetFamily, k: int) -> list[CoreLink]:
    """
    Links A_D over the (k-1)-sets D avoiding A<1>, most singletons first.

    For an extremal family the leading link is a base family whose up-closure
    sits inside ``family``; its singleton count is alpha of rank r - k + 1.
    """
    if family.rank is None:
        raise ParameterError("core links need a uniform family")
    if not 1 <= k <= family.rank:
        raise ParameterError(f"need 1 <= k <= {family.rank}, got k={k}")
    points = singleton_support(family).mask
    found = []
    for d_mask in rset_masks(family.n, k - 1):
        if d_mask & points:
            continue
        d = VSet(d_mask, family.n)
        residues = link(family, d)
        if residues.members:
            found.append(CoreLink(d, residues, len(singleton_support(residues))))
    found.sort(key=lambda item: (-item.singletons, item.d.elements))
    return found


def random_intersecting_family(n: int, r: int, rng: random.Random, size: int) -> SetFamily:
    """
    Draw an intersecting r-uniform family of at most ``size`` members.

    r-sets are visited in a random order and kept while they meet every
    set kept so far.
    """
    if size < 1:
        raise ParameterError(f"size must be positive, got {size}")
    pool = list(rset_masks(n, r))
    rng.shuffle(pool)
    chosen: list[int] = []
    for candidate in pool:
        if all(candidate & mask for mask in chosen):
            chosen.append(candidate)
            if len(chosen) == size:
                break
    return SetFamily.from_masks(n, chosen, rank=r)
