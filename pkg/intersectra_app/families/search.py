"""
Exact maximization of |A<k>| over intersecting families A of r-sets of [n].

|A<k>| only grows when sets are added, so the maximum is attained by a
maximal intersecting family. Maximal intersecting families of [n]^(r) are
the maximal cliques of the "meets" graph on [n]^(r), and the search walks
them with include/exclude branching on the colex-least undecided r-set:

* ``chosen``   sets already in the family,
* ``cand``     undecided sets meeting every chosen set,
* ``excl``     excluded sets meeting every chosen set.

A node is a maximal family when ``cand`` and ``excl`` are both empty. A node
is dead when some excluded set meets everything still available, because
every family below it could take that set back. The maximal families below a
node depend only on (chosen, cand), which is what symmetry dedup keys on.

The children of the root are independent work units. Units never share
state, so the value, the optimality flag and the witness do not depend on how
many workers run them.
"""

import logging
import math
import time
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache

from django.conf import settings
from django.db import models
from django.utils.translation import gettext_lazy as _

from .canonical import DEFAULT_LIMIT, CanonicalForm, canonical_form, canonical_parts, family_invariant
from .core import SetFamily, is_intersecting, k_intersections, maximalize, rset_masks
from .exceptions import CanonicalizationLimitError, ParameterError, SearchError

logger = logging.getLogger(__name__)

# Index tables are quadratic in C(n, r).
MAX_SETS = 2000


class Symmetry(models.TextChoices):
    """Whether relabelings of [n] are factored out."""

    ON = "on", _("Canonical dedup")
    OFF = "off", _("Every labeled family")


@dataclass(frozen=True, slots=True)
class SearchConfig:
    node_budget: int = 0
    symmetry: str = Symmetry.ON
    parallel_width: int = 1
    report_all_optima: bool = False
    dedup_depth: int = 2
    canonical_limit: int = DEFAULT_LIMIT
    check_bounds: bool = False
    unit_timeout: float | None = None

    def __post_init__(self):
        if self.node_budget < 0:
            raise ParameterError(f"node budget must be >= 0, got {self.node_budget}")
        if self.parallel_width < 1:
            raise ParameterError(f"parallel width must be >= 1, got {self.parallel_width}")
        if self.symmetry not in Symmetry.values:
            raise ParameterError(f"symmetry must be one of {Symmetry.values}, got {self.symmetry!r}")

    @classmethod
    def from_settings(cls, **overrides) -> "SearchConfig":
        """Defaults from ``settings.INTERSECTRA``; ``None`` overrides are ignored."""
        conf = settings.INTERSECTRA
        values = {
            "node_budget": conf["NODE_BUDGET"],
            "parallel_width": conf["PARALLEL_WIDTH"],
            "dedup_depth": conf["DEDUP_DEPTH"],
            "canonical_limit": conf["CANONICAL_LIMIT"],
            "unit_timeout": conf["UNIT_TIMEOUT"],
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    @property
    def symmetric(self) -> bool:
        return self.symmetry == Symmetry.ON


@dataclass(frozen=True, slots=True)
class SearchResult:
    n: int
    r: int
    k: int
    value: int
    witness: SetFamily
    optimal: bool
    nodes_expanded: int
    elapsed: float
    classes: tuple[SetFamily, ...] = ()
    bound_violations: int = 0

    @property
    def parameters(self) -> tuple[int, int, int]:
        return self.n, self.r, self.k


class Universe:
    """The r-sets of [n] indexed in colex order, with the tables the search reads."""

    def __init__(self, n: int, r: int, k: int):
        self.n, self.r, self.k = n, r, k
        self.masks = rset_masks(n, r)
        self.index = {mask: i for i, mask in enumerate(self.masks)}

        meets = []
        pairs = []
        for i, a in enumerate(self.masks):
            row = 0
            for j, b in enumerate(self.masks):
                if a & b:
                    row |= 1 << j
            meets.append(row)
            pairs.append(
                tuple((1 << j, a & b) for j, b in enumerate(self.masks) if j > i and (a & b).bit_count() == k)
            )
        self.meets = tuple(meets)
        self.pairs = tuple(pairs)

    def __len__(self):
        return len(self.masks)

    def members(self, chosen: int) -> list[int]:
        out = []
        while chosen:
            low = chosen & -chosen
            out.append(self.masks[low.bit_length() - 1])
            chosen ^= low
        return out

    def chosen_of(self, family: SetFamily) -> int:
        chosen = 0
        for mask in family.masks:
            chosen |= 1 << self.index[mask]
        return chosen

    def family(self, chosen: int) -> SetFamily:
        return SetFamily.from_masks(self.n, self.members(chosen), rank=self.r)

    def value(self, chosen: int) -> int:
        """|A<k>| of the family ``chosen``; an upper bound for all its subfamilies."""
        if self.k == self.r:
            return chosen.bit_count()
        found = set()
        rest = chosen
        while rest:
            low = rest & -rest
            for jbit, inter in self.pairs[low.bit_length() - 1]:
                if chosen & jbit:
                    found.add(inter)
            rest ^= low
        return len(found)

    def dominated(self, cand: int, excl: int) -> bool:
        """True when an excluded set meets every candidate, so no maximal family remains."""
        while excl:
            low = excl & -excl
            if not cand & ~self.meets[low.bit_length() - 1]:
                return True
            excl ^= low
        return False

    def root(self, symmetric: bool) -> tuple[int, int, int]:
        # Up to relabeling every family contains [r], the colex-least r-set.
        if symmetric:
            return 1, self.meets[0] & ~1, 0
        return 0, (1 << len(self.masks)) - 1, 0

    def node_key(self, chosen: int, cand: int, limit: int) -> tuple:
        return canonical_parts(self.n, [self.members(chosen), self.members(cand)], limit)


@lru_cache(maxsize=32)
def universe(n: int, r: int, k: int) -> Universe:
    return Universe(n, r, k)


class SubtreeSearch:
    """Walks the maximal families below one node, pruning against ``best``."""

    def __init__(
        self,
        space: Universe,
        *,
        best: int = 0,
        budget: int = 0,
        bounded: bool = True,
        symmetric: bool = False,
        dedup_depth: int = 0,
        canonical_limit: int = DEFAULT_LIMIT,
        check_bounds: bool = False,
    ):
        self.space = space
        self.best = best
        self.budget = budget
        self.bounded = bounded
        self.symmetric = symmetric
        self.dedup_depth = dedup_depth
        self.canonical_limit = canonical_limit
        self.check_bounds = check_bounds
        self.nodes = 0
        self.exhausted = False
        self.bound_violations = 0
        self._seen: set[tuple] = set()

    def leaves(self, chosen: int, cand: int, excl: int, depth: int = 1):
        """Yield ``(chosen, value)`` for each maximal family below; return the best value yielded."""
        if self.budget and self.nodes >= self.budget:
            self.exhausted = True
            return -1
        self.nodes += 1
        space = self.space

        if not cand:
            if excl:
                return -1
            value = space.value(chosen) if self.bounded else 0
            yield chosen, value
            return value
        if space.dominated(cand, excl):
            return -1

        bound = None
        if self.bounded:
            bound = space.value(chosen | cand)
            # Ties are kept so every optimal family is seen.
            if bound < self.best:
                return -1

        if self.symmetric and 1 < depth <= self.dedup_depth:
            key = space.node_key(chosen, cand, self.canonical_limit)
            if key in self._seen:
                return -1
            self._seen.add(key)

        subtree_best = -1
        meets = space.meets
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            found = yield from self.leaves(chosen | low, cand & meets[v] & ~low, excl & meets[v], depth + 1)
            subtree_best = max(subtree_best, found)
            cand ^= low
            excl |= low
            if self.exhausted or space.dominated(cand, excl):
                break
            if self.bounded and space.value(chosen | cand) < self.best:
                break

        if self.check_bounds and bound is not None and subtree_best > bound:
            self.bound_violations += 1
            logger.error(f"bound {bound} below subtree value {subtree_best} at depth {depth}")
        return subtree_best


def split_units(space: Universe, config: SearchConfig) -> tuple[list[tuple[int, int, int]], int]:
    """
    Children of the root as independent (chosen, cand, excl) units.

    Returns the units and the number of nodes spent producing them. With
    symmetry on, units that are relabelings of an earlier unit are dropped.
    """
    chosen, cand, excl = space.root(config.symmetric)
    if not cand:
        return [(chosen, cand, excl)], 1

    units = []
    seen = set()
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        unit = (chosen | low, cand & space.meets[v] & ~low, excl & space.meets[v])
        if config.symmetric and config.dedup_depth >= 1:
            key = space.node_key(unit[0], unit[1], config.canonical_limit)
            if key not in seen:
                seen.add(key)
                units.append(unit)
        else:
            units.append(unit)
        cand ^= low
        excl |= low
        if space.dominated(cand, excl):
            break
    return units, 1


def run_unit(payload: dict) -> dict:
    """Search one unit; ``payload`` and the result are JSON-safe so Celery can carry them."""
    space = universe(payload["n"], payload["r"], payload["k"])
    search = SubtreeSearch(
        space,
        best=payload["best"],
        budget=payload["budget"],
        bounded=True,
        symmetric=payload["symmetric"],
        dedup_depth=payload["dedup_depth"],
        canonical_limit=payload["canonical_limit"],
        check_bounds=payload["check_bounds"],
    )
    optima: list[int] = []
    for chosen, leaf_value in search.leaves(payload["chosen"], payload["cand"], payload["excl"]):
        if leaf_value > search.best:
            search.best = leaf_value
            optima = [chosen]
        elif leaf_value == search.best:
            optima.append(chosen)
    if search.exhausted:
        logger.warning(f"unit stopped after {search.nodes} nodes (budget {payload['budget']})")
    return {
        "value": search.best if optima else -1,
        "optima": optima,
        "nodes": search.nodes,
        "exhausted": search.exhausted,
        "bound_violations": search.bound_violations,
    }


def _dispatch(payloads: list[dict], config: SearchConfig) -> list[dict]:
    if config.parallel_width == 1 or len(payloads) <= 1:
        return [run_unit(payload) for payload in payloads]

    # Import here to avoid circular imports
    from celery import group

    from .tasks import search_units

    batches = [payloads[i :: config.parallel_width] for i in range(config.parallel_width)]
    batches = [batch for batch in batches if batch]
    job = group([search_units.s(batch) for batch in batches]).apply_async()
    results = job.join(timeout=config.unit_timeout)
    return [outcome for batch in results for outcome in batch]


def _check_parameters(n: int, r: int, k: int, config: SearchConfig):
    if not 1 <= k <= r <= n:
        raise ParameterError(f"need 1 <= k <= r <= n, got n={n}, r={r}, k={k}")
    if math.comb(n, r) > MAX_SETS:
        raise ParameterError(f"C({n}, {r}) = {math.comb(n, r)} r-sets exceed the search limit {MAX_SETS}")
    if config.symmetric and n > config.canonical_limit:
        raise CanonicalizationLimitError(n, config.canonical_limit)


class _WitnessOrder:
    """
    Orders optimal families by (invariant, canonical encoding).

    Both symmetry modes reach every optimal class, so the chosen witness is the
    same with symmetry on or off. Above the canonicalization limit, families
    are ordered by their member masks instead.
    """

    def __init__(self, space: Universe, config: SearchConfig):
        self.n = space.n
        self.limit = config.canonical_limit

    @property
    def canonical_ok(self) -> bool:
        return self.n <= self.limit

    def least(self, families: list[SetFamily]) -> SetFamily:
        if not self.canonical_ok:
            return min(families, key=lambda family: family.masks)
        keyed = [(family_invariant(self.n, [family.masks]), family) for family in families]
        low = min(invariant for invariant, _family in keyed)
        forms = {self.canonical(family) for invariant, family in keyed if invariant == low}
        return min(forms).family()

    def classes(self, families: list[SetFamily]) -> tuple[SetFamily, ...]:
        if not self.canonical_ok:
            return tuple(sorted(set(families), key=lambda family: family.masks))
        forms = {self.canonical(family) for family in families}
        return tuple(form.family() for form in sorted(forms))

    def canonical(self, family: SetFamily) -> CanonicalForm:
        return canonical_form(family, self.limit)


def _certify(witness: SetFamily, r: int, k: int, value: int):
    if not is_intersecting(witness) or witness.rank != r:
        raise SearchError(f"witness {witness} is not an intersecting {r}-uniform family")
    recount = len(k_intersections(witness, k))
    if recount != value:
        raise SearchError(f"witness realizes {recount} {k}-intersections, search reported {value}")


def beta_search(n: int, r: int, k: int, config: SearchConfig | None = None) -> SearchResult:
    """
    Maximum of |A<k>| over intersecting A inside [n]^(r).

    With ``optimal=True`` the value is exact; a spent node budget returns the
    best family found so far with ``optimal=False``.
    """
    config = config or SearchConfig.from_settings()
    _check_parameters(n, r, k, config)
    started = time.perf_counter()
    space = universe(n, r, k)

    seed = maximalize(SetFamily.from_masks(n, [space.masks[0]], rank=r), n, r)
    seed_value = len(k_intersections(seed, k))

    units, nodes = split_units(space, config)
    budget = -(-config.node_budget // len(units)) if config.node_budget else 0
    logger.info(
        f"beta search n={n} r={r} k={k}: {len(space)} sets, {len(units)} units, "
        f"symmetry={config.symmetry}, width={config.parallel_width}, seed value {seed_value}"
    )
    payloads = [
        {
            "n": n,
            "r": r,
            "k": k,
            "chosen": chosen,
            "cand": cand,
            "excl": excl,
            "best": seed_value,
            "budget": budget,
            "symmetric": config.symmetric,
            "dedup_depth": config.dedup_depth,
            "canonical_limit": config.canonical_limit,
            "check_bounds": config.check_bounds,
        }
        for chosen, cand, excl in units
    ]
    outcomes = _dispatch(payloads, config)

    value = max([seed_value] + [outcome["value"] for outcome in outcomes])
    optima = {chosen for outcome in outcomes if outcome["value"] == value for chosen in outcome["optima"]}
    if seed_value == value:
        optima.add(space.chosen_of(seed))
    families = [space.family(chosen) for chosen in sorted(optima)]

    order = _WitnessOrder(space, config)
    witness = order.least(families)
    classes = order.classes(families) if config.report_all_optima else ()
    _certify(witness, r, k, value)

    nodes += sum(outcome["nodes"] for outcome in outcomes)
    optimal = not any(outcome["exhausted"] for outcome in outcomes)
    violations = sum(outcome["bound_violations"] for outcome in outcomes)
    elapsed = time.perf_counter() - started
    logger.info(f"beta search n={n} r={r} k={k}: value {value}, optimal={optimal}, {nodes} nodes, {elapsed:.2f}s")
    return SearchResult(n, r, k, value, witness, optimal, nodes, elapsed, classes, violations)


def alpha_search(r: int, n: int, config: SearchConfig | None = None) -> SearchResult:
    """
    Maximum number of singleton intersections at a fixed ground-set size.

    alpha(r) is the maximum of this over all n, so a fixed-n result is a lower
    bound that becomes exact once n is large enough.
    """
    return beta_search(n, r, 1, config)


class MaximalFamilies:
    """
    Stream of the maximal intersecting families of [n]^(r).

    With symmetry on, one canonical representative per relabeling class is
    produced. ``complete`` is ``None`` until the stream is consumed, then
    tells whether the node budget allowed a full enumeration.
    """

    def __init__(self, n: int, r: int, config: SearchConfig):
        _check_parameters(n, r, r, config)
        self.n, self.r = n, r
        self.config = config
        self.complete: bool | None = None
        self.nodes = 0

    def __iter__(self) -> Iterator[SetFamily]:
        config = self.config
        space = universe(self.n, self.r, self.r)
        units, self.nodes = split_units(space, config)
        seen: set[tuple] = set()
        complete = True

        for chosen, cand, excl in units:
            remaining = 0
            if config.node_budget:
                remaining = config.node_budget - self.nodes
                if remaining <= 0:
                    complete = False
                    break
            search = SubtreeSearch(
                space,
                budget=remaining,
                bounded=False,
                symmetric=config.symmetric,
                dedup_depth=config.dedup_depth,
                canonical_limit=config.canonical_limit,
            )
            for leaf, _value in search.leaves(chosen, cand, excl):
                family = space.family(leaf)
                if config.symmetric:
                    (encoding,) = canonical_parts(self.n, [family.masks], config.canonical_limit)
                    if encoding in seen:
                        continue
                    seen.add(encoding)
                    family = SetFamily.from_masks(self.n, encoding, rank=self.r)
                yield family
            self.nodes += search.nodes
            if search.exhausted:
                complete = False
                break

        self.complete = complete
        if not complete:
            logger.warning(f"enumeration of [{self.n}]^({self.r}) stopped after {self.nodes} nodes")


def enumerate_maximal_families(n: int, r: int, config: SearchConfig | None = None) -> MaximalFamilies:
    return MaximalFamilies(n, r, config or SearchConfig.from_settings())


@dataclass(frozen=True, slots=True)
class EkrReport:
    n: int
    r: int
    bound: int
    max_size: int
    attaining_classes: int
    families_seen: int
    complete: bool

    @property
    def holds(self) -> bool:
        """Conclusive and the bound C(n-1, r-1) is both respected and attained."""
        return self.complete and self.max_size == self.bound


def ekr_check(n: int, r: int, config: SearchConfig | None = None) -> EkrReport:
    """Largest maximal intersecting family of [n]^(r) against C(n-1, r-1), n >= 2r."""
    if r < 1 or n < 2 * r:
        raise ParameterError(f"need r >= 1 and n >= 2r, got n={n}, r={r}")
    config = config or SearchConfig.from_settings()
    bound = math.comb(n - 1, r - 1)
    stream = enumerate_maximal_families(n, r, config)

    max_size = seen = 0
    attaining = set()
    for family in stream:
        seen += 1
        max_size = max(max_size, len(family))
        if len(family) == bound:
            if config.symmetric:
                attaining.add(family.masks)
            elif n <= config.canonical_limit:
                attaining.add(canonical_parts(n, [family.masks], config.canonical_limit))
            else:
                attaining.add(family.masks)

    report = EkrReport(n, r, bound, max_size, len(attaining), seen, bool(stream.complete))
    logger.info(f"EKR check n={n} r={r}: max {max_size} vs bound {bound}, {len(attaining)} attaining classes")
    return report
