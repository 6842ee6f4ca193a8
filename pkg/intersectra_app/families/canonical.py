"""
Relabeling-invariant encodings of families.

The canonical encoding of a family is the least sorted tuple of member masks
over all relabelings of [n]; ``least_encoding`` builds it one member at a time.

Search needs a cheaper invariant encoding for its node keys. There, elements
are kept in an ordered partition that is refined until every element in a
cell sees the other cells the same way. The first non-trivial cell is then
split by trying each of its elements first; a leaf is reached when every cell
is a single element, and cell order is the new labeling. Two elements whose
swap fixes the family give identical subtrees, so only one of them is tried.
Refinement only ever looks at cell positions, never at labels, so the least
leaf encoding is the same for every relabeling.

That routine encodes a tuple of families ("parts") under one common
relabeling; search uses it to recognise isomorphic search-tree nodes.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from .core import SetFamily
from .exceptions import CanonicalizationLimitError

logger = logging.getLogger(__name__)

DEFAULT_LIMIT = 10

Parts = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, slots=True, order=True)
class CanonicalForm:
    n: int
    encoding: tuple[int, ...]

    def family(self) -> SetFamily:
        return SetFamily.from_masks(self.n, self.encoding)


def _cell_masks(cells: list[list[int]]) -> list[int]:
    return [sum(1 << e for e in cell) for cell in cells]


def _profile(parts: Parts, e: int, cell_masks: list[int]) -> tuple:
    """How the members through ``e`` spread over the cells, per part."""
    bit = 1 << e
    return tuple(
        tuple(sorted(tuple((m & cell).bit_count() for cell in cell_masks) for m in part if m & bit)) for part in parts
    )


def refine(parts: Parts, cells: list[list[int]]) -> list[list[int]]:
    """Split cells by profile until the ordered partition is stable."""
    while True:
        cell_masks = _cell_masks(cells)
        refined = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for e in cell:
                groups.setdefault(_profile(parts, e, cell_masks), []).append(e)
            refined.extend(groups[key] for key in sorted(groups))
        if len(refined) == len(cells):
            return refined
        cells = refined


def _swapped(mask: int, a: int, b: int) -> int:
    if (mask >> a ^ mask >> b) & 1:
        return mask ^ ((1 << a) | (1 << b))
    return mask


def _is_twin(part_sets: list[frozenset], a: int, b: int) -> bool:
    """True when exchanging elements ``a`` and ``b`` maps every part onto itself."""
    return all(_swapped(m, a, b) in part for part in part_sets for m in part)


def _encode(parts: Parts, order: list[int]) -> Parts:
    new_bit = {old: 1 << label for label, old in enumerate(order)}
    encoded = []
    for part in parts:
        relabeled = []
        for m in part:
            out = 0
            while m:
                low = m & -m
                out |= new_bit[low.bit_length() - 1]
                m ^= low
            relabeled.append(out)
        encoded.append(tuple(sorted(relabeled)))
    return tuple(encoded)


class _LeastEncoding:
    def __init__(self, parts: Parts):
        self.parts = parts
        self.part_sets = [frozenset(part) for part in parts]
        self.best: Parts | None = None
        self.leaves = 0

    def search(self, cells: list[list[int]]):
        cells = refine(self.parts, cells)
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            self.leaves += 1
            encoded = _encode(self.parts, [cell[0] for cell in cells])
            if self.best is None or encoded < self.best:
                self.best = encoded
            return

        cell = cells[target]
        tried: list[int] = []
        for e in cell:
            if any(_is_twin(self.part_sets, e, other) for other in tried):
                continue
            tried.append(e)
            rest = [x for x in cell if x != e]
            self.search(cells[:target] + [[e], rest] + cells[target + 1 :])


def family_invariant(n: int, parts: Sequence[Sequence[int]]) -> tuple:
    """Cheap relabeling invariant; equal canonical forms imply equal invariants."""
    parts = tuple(tuple(part) for part in parts)
    cells = refine(parts, [list(range(n))])
    masks = _cell_masks(cells)
    return tuple(len(part) for part in parts), tuple((len(cell), _profile(parts, cell[0], masks)) for cell in cells)


def canonical_parts(n: int, parts: Sequence[Sequence[int]], limit: int = DEFAULT_LIMIT) -> Parts:
    """Relabeling-invariant encoding of several mask lists under one common relabeling."""
    if n > limit:
        raise CanonicalizationLimitError(n, limit)
    finder = _LeastEncoding(tuple(tuple(part) for part in parts))
    finder.search([list(range(n))])
    if finder.leaves > 1000:
        logger.debug(f"canonical form over {finder.leaves} leaves (n={n})")
    return finder.best


@dataclass(frozen=True, slots=True)
class _Placement:
    """Members placed so far: labelled cells in label order, and the members still to place."""

    cells: tuple[int, ...]
    remaining: tuple[int, ...]

    def value(self, member: int) -> int:
        """Least value of ``member`` over labelings that keep the placed prefix."""
        value = 0
        offset = 0
        for cell in self.cells:
            inside = (member & cell).bit_count()
            value |= ((1 << inside) - 1) << offset
            offset += cell.bit_count()
        fresh = (member & ~self._labelled).bit_count()
        return value | ((1 << fresh) - 1) << offset

    @property
    def _labelled(self) -> int:
        return sum(self.cells)

    def place(self, member: int) -> "_Placement":
        cells = []
        for cell in self.cells:
            cells.extend(part for part in (cell & member, cell & ~member) if part)
        fresh = member & ~self._labelled
        if fresh:
            cells.append(fresh)
        rest = list(self.remaining)
        rest.remove(member)
        return _Placement(tuple(cells), tuple(rest))

    def key(self, n: int) -> Parts:
        return canonical_parts(n, [(cell,) for cell in self.cells] + [self.remaining], limit=n)


def least_encoding(n: int, masks: Sequence[int]) -> tuple[int, ...]:
    """
    The lexicographically least sorted encoding of ``masks`` over all relabelings of [n].

    Members are placed in increasing order of their final value. In a least
    labeling the members placed so far cover an initial segment of labels, and
    elements lying in the same placed members form a cell with a contiguous
    label range. The next value is the least any unplaced member can take, with
    its elements on the low labels of every cell and its fresh elements on the
    next free labels. Ties keep one placement per relabeling class.
    """
    beam = [_Placement((), tuple(masks))]
    encoding = []
    for _ in masks:
        low = None
        tied: dict[Parts, _Placement] = {}
        for placement in beam:
            for member in set(placement.remaining):
                value = placement.value(member)
                if low is not None and value > low:
                    continue
                if low is None or value < low:
                    low, tied = value, {}
                following = placement.place(member)
                tied.setdefault(following.key(n), following)
        encoding.append(low)
        beam = list(tied.values())
    return tuple(encoding)


def canonical_form(family: SetFamily, limit: int = DEFAULT_LIMIT) -> CanonicalForm:
    if family.n > limit:
        raise CanonicalizationLimitError(family.n, limit)
    return CanonicalForm(family.n, least_encoding(family.n, family.masks))


def is_isomorphic(first: SetFamily, second: SetFamily, limit: int = DEFAULT_LIMIT) -> bool:
    if first.n != second.n or len(first) != len(second):
        return False
    return canonical_form(first, limit) == canonical_form(second, limit)
