"""Explicit extremal families and what is known about alpha(r)."""

import logging
import math
from dataclasses import dataclass
from itertools import combinations

from django.db import models
from django.utils.translation import gettext_lazy as _

from .core import SetFamily, VSet, is_intersecting, mask_of, rset_masks, singleton_support
from .exceptions import NotIntersectingError, ParameterError

logger = logging.getLogger(__name__)

# Six triples on [7], pairwise meeting in one point, realizing all 7 singletons.
SEVEN_POINT_TRIPLES = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6), (1, 6, 7), (2, 5, 7))

# Sets added on top of the up-closure of SEVEN_POINT_TRIPLES in the
# counterexample to A = B in the extremal characterization.
SUPPORT_SHIFT_EXTRA = ((1, 2, 5, 8), (3, 4, 7, 8))

EXACT_ALPHA = {1: 1, 2: 3, 3: 7, 4: 16}


def seven_point_family() -> SetFamily:
    return SetFamily.of(7, SEVEN_POINT_TRIPLES, rank=3)


def triangle_family() -> SetFamily:
    return SetFamily.of(3, combinations((1, 2, 3), 2), rank=2)


def star_family(n: int, r: int) -> SetFamily:
    """All r-sets of [n] containing element 1."""
    if not 1 <= r <= n:
        raise ParameterError(f"need 1 <= r <= n, got n={n}, r={r}")
    return SetFamily.from_masks(n, (mask for mask in rset_masks(n, r) if mask & 1), rank=r)


def complementary_halves(r: int) -> list[tuple[int, int]]:
    """
    Pairs (A_i, B_i) of complementary (r-2)-subsets of [2r-4], as masks.

    A_i is the colex-smaller half, and pairs come in colex order of A_i.
    """
    base = (1 << (2 * r - 4)) - 1
    pairs = []
    for half in rset_masks(2 * r - 4, r - 2):
        other = base & ~half
        if half < other:
            pairs.append((half, other))
    return pairs


def tuza_family(r: int) -> SetFamily:
    """
    The four-sets-per-pair construction giving 2*C(2r-4, r-2) + 2r - 4 singletons.

    Elements 1..2r-4 form the base; pair i then gets the fresh labels
    a_i, b_i, c_i, d_i in that order, and contributes A_i+ab, A_i+cd,
    B_i+ac and B_i+bd.
    """
    if r < 3:
        raise ParameterError(f"the paired construction needs r >= 3, got r={r}")
    offset = 2 * r - 4
    sets = []
    for index, (half, other) in enumerate(complementary_halves(r)):
        a, b, c, d = (1 << (offset + 4 * index + j) for j in range(4))
        sets.extend((half | a | b, half | c | d, other | a | c, other | b | d))
    n = offset + len(sets)
    return SetFamily.from_masks(n, sets, rank=r)


def tuza_lower_bound(r: int) -> int:
    return 2 * math.comb(2 * r - 4, r - 2) + 2 * r - 4


def tuza_upper_bound(r: int) -> int:
    return math.comb(2 * r - 1, r - 1) + math.comb(2 * r - 4, r - 1)


def construction_min_n(base: SetFamily, r: int) -> int:
    """Smallest ground set leaving room for the padding sets of the up-closure claim."""
    return len(base.support()) + 2 * (r - base.rank)


def construction_one(n: int, r: int, k: int, base: SetFamily) -> SetFamily:
    """The r-sets of [n] containing a member of ``base`` (rank r - k + 1)."""
    if not 1 <= k <= r <= n:
        raise ParameterError(f"need 1 <= k <= r <= n, got n={n}, r={r}, k={k}")
    if base.rank != r - k + 1:
        raise ParameterError(f"base must have rank r - k + 1 = {r - k + 1}, got {base.rank}")
    if not is_intersecting(base):
        raise NotIntersectingError("base family not intersecting")
    if base.n > n:
        raise ParameterError(f"base is over [{base.n}], larger than n={n}")
    needed = construction_min_n(base, r)
    if n < needed:
        raise ParameterError(f"n={n} is too small for this base, need n >= {needed}")

    generators = base.masks
    up_closure = [mask for mask in rset_masks(n, r) if any(mask & g == g for g in generators)]
    logger.debug(f"up-closure of {len(base)} sets to [{n}]^({r}): {len(up_closure)} sets")
    return SetFamily.from_masks(n, up_closure, rank=r)


def section4_family(n: int) -> SetFamily:
    """Up-closure of the seven-point triples to 4-sets, plus 1258 and 3478."""
    if n < 10:
        raise ParameterError(f"need n >= 10, got n={n}")
    generators = seven_point_family().masks
    sets = [mask for mask in rset_masks(n, 4) if any(mask & g == g for g in generators)]
    sets.extend(mask_of(extra) for extra in SUPPORT_SHIFT_EXTRA)
    return SetFamily.from_masks(n, sets, rank=4)


def majority_family(n: int) -> SetFamily:
    """Every subset of [n] with more than n/2 elements (n odd)."""
    if n < 1 or n % 2 == 0:
        raise ParameterError(f"need an odd n, got n={n}")
    sets = [mask for size in range(n // 2 + 1, n + 1) for mask in rset_masks(n, size)]
    return SetFamily.from_masks(n, sets)


class AlphaStatus(models.TextChoices):
    """How much is known about alpha(r)."""

    EXACT = "exact", _("Exact value")
    INTERVAL = "interval", _("Bounded interval")


@dataclass(frozen=True, slots=True)
class AlphaRecord:
    r: int
    status: AlphaStatus
    value: int | None
    lower: int
    upper: int
    witness: SetFamily

    @property
    def ground_size(self) -> int:
        return self.witness.n

    @property
    def singletons(self) -> int:
        return len(singleton_support(self.witness))


def alpha_bounds(r: int) -> tuple[int, int]:
    """
    Tuza's interval for r >= 4, the exact value (twice) for r <= 3.

    At r = 4 the interval (16, 39) is returned; the registry holds the exact 16.
    """
    if r < 1:
        raise ParameterError(f"need r >= 1, got r={r}")
    if r <= 3:
        return EXACT_ALPHA[r], EXACT_ALPHA[r]
    return tuza_lower_bound(r), tuza_upper_bound(r)


def lovasz_bounds(r: int) -> tuple[int, int]:
    """The earlier, weaker interval: C(2r-3, r-1) + 2r - 2 and (2r-1)*C(2r-3, r-1)."""
    if r < 2:
        raise ParameterError(f"need r >= 2, got r={r}")
    core = math.comb(2 * r - 3, r - 1)
    return core + 2 * r - 2, (2 * r - 1) * core


def alpha_witness(r: int) -> AlphaRecord:
    if r < 1:
        raise ParameterError(f"need r >= 1, got r={r}")
    if r == 1:
        witness = SetFamily.of(1, [(1,)], rank=1)
    elif r == 2:
        witness = triangle_family()
    elif r == 3:
        witness = seven_point_family()
    else:
        witness = tuza_family(r)

    if r in EXACT_ALPHA:
        value = EXACT_ALPHA[r]
        return AlphaRecord(r, AlphaStatus.EXACT, value, value, value, witness)
    lower, upper = alpha_bounds(r)
    return AlphaRecord(r, AlphaStatus.INTERVAL, None, lower, upper, witness)


@dataclass(frozen=True, slots=True)
class ThresholdEstimate:
    r: int
    k: int
    sufficient_n: int
    construction_n: int | None


def threshold_estimate(r: int, k: int) -> ThresholdEstimate:
    """
    Ground-set sizes tied to the extremal k-intersection count.

    ``sufficient_n`` = k * C(2r, r)^2 is the rough size from which the closed
    form is certified. ``construction_n`` = 2*C(2r-2k-2, r-k-1) + 2r-2k-2 is the
    size the up-closure construction needs; it is undefined when k = r.
    """
    if not 1 <= k <= r:
        raise ParameterError(f"need 1 <= k <= r, got r={r}, k={k}")
    sufficient = k * math.comb(2 * r, r) ** 2
    construction = None
    if r - k - 1 >= 0:
        construction = 2 * math.comb(2 * r - 2 * k - 2, r - k - 1) + 2 * r - 2 * k - 2
    return ThresholdEstimate(r, k, sufficient, construction)


def point_set(n: int, count: int) -> VSet:
    """The initial segment [count] as a subset of [n]."""
    return VSet((1 << count) - 1, n)
