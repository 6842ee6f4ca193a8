"""
Named verification suites.

Every suite recomputes a known value with the library and compares it with
the value it is expected to have. A suite is a function returning ``Check``
records; ``run_suite`` runs one by name (or every suite for ``all``).
"""

import logging
import math
import random
from collections.abc import Callable
from dataclasses import asdict, dataclass
from itertools import combinations

from django.conf import settings

from .constructions import (
    EXACT_ALPHA,
    alpha_bounds,
    alpha_witness,
    construction_one,
    lovasz_bounds,
    point_set,
    section4_family,
    seven_point_family,
    threshold_estimate,
    triangle_family,
    tuza_family,
    tuza_lower_bound,
)
from .core import (
    SetFamily,
    hitting_count,
    hitting_sets,
    intersection_structure,
    is_intersecting,
    is_maximal,
    k_intersections,
    maximalize,
    random_intersecting_family,
    rset_masks,
    singleton_support,
    star_cover_violations,
)
from .exceptions import ParameterError
from .oracle import check_monotone, clique_beta, naive_beta
from .search import SearchConfig, Symmetry, alpha_search, beta_search, ekr_check

logger = logging.getLogger(__name__)

EKR = "Erdős–Ko–Rado bound C(n-1, r-1)"
ALPHA_SMALL = "alpha(1) = 1, alpha(2) = 3, alpha(3) = 7, alpha(4) = 16"
ALPHA_FIXED_N = "alpha(r) = max over n of beta(n, r, 1)"
TUZA = "paired construction: alpha(r) >= 2*C(2r-4, r-2) + 2r - 4"
UP_CLOSURE = "up-closure of an extremal base realizes exactly the k-sets meeting its point set"
CLOSED_FORM = "beta(n, r, k) = C(n, k) - C(n - alpha(r-k+1), k) for large n"
COUNTEREXAMPLE = "maximal family whose singleton support [8] differs from the base support [7]"
STAR_COVER = "maximal families: every pairwise intersection meets A<1>"
ORACLE = "search agrees with exhaustive enumeration of all intersecting families"
MONOTONE = "F inside F' implies F<k> inside F'<k>"

ORACLE_MAX_SETS = 12
ORACLE_MAX_N = 12
STAR_COVER_PARAMETERS = ((6, 2), (7, 3), (9, 3), (9, 4))


@dataclass(frozen=True, slots=True)
class Check:
    name: str
    expected: object
    observed: object
    passed: bool
    anchor: str

    def as_dict(self) -> dict:
        data = asdict(self)
        data["pass"] = data.pop("passed")
        return data


def check(name, expected, observed, anchor, passed=None) -> Check:
    if passed is None:
        passed = expected == observed
    return Check(name, expected, observed, bool(passed), anchor)


SUITES: dict[str, Callable[[SearchConfig], list[Check]]] = {}


def suite(name: str):
    def register(func):
        SUITES[name] = func
        return func

    return register


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str, config: SearchConfig | None = None) -> list[Check]:
    if name != "all" and name not in SUITES:
        raise ParameterError(f"unknown suite {name!r}, expected one of {suite_names()}")
    config = config or SearchConfig.from_settings()
    names = list(SUITES) if name == "all" else [name]
    checks = []
    for current in names:
        logger.info(f"Running suite {current}")
        found = SUITES[current](config)
        failed = [item.name for item in found if not item.passed]
        if failed:
            logger.error(f"Suite {current}: {len(failed)} failed checks: {', '.join(failed)}")
        checks.extend(found)
    return checks


def _pairs_payload(pairs) -> list[list[list[int]]]:
    return [[a.as_list(), b.as_list()] for a, b in pairs]


def _search_check(name, result, expected, anchor) -> Check:
    observed = {"value": result.value, "optimal": result.optimal}
    return check(name, {"value": expected, "optimal": True}, observed, anchor)


@suite("alpha-small")
def alpha_small(config: SearchConfig) -> list[Check]:
    checks = []
    for r, n in ((1, 3), (2, 5), (3, 7)):
        result = alpha_search(r, n, config)
        checks.append(_search_check(f"alpha_search(r={r}, n={n})", result, EXACT_ALPHA[r], ALPHA_FIXED_N))

    for r, value in EXACT_ALPHA.items():
        record = alpha_witness(r)
        observed = {"intersecting": is_intersecting(record.witness), "rank": record.witness.rank}
        observed["singletons"] = record.singletons
        expected = {"intersecting": True, "rank": r, "singletons": value}
        checks.append(check(f"alpha witness r={r}", expected, observed, ALPHA_SMALL))
        if r >= 2:
            lower, upper = lovasz_bounds(r)
            checks.append(
                check(
                    f"lovasz bounds bracket alpha({r})",
                    [lower, upper],
                    value,
                    "alpha(r) lies between C(2r-3, r-1) + 2r - 2 and (2r-1)*C(2r-3, r-1)",
                    passed=lower <= value <= upper,
                )
            )
    return checks


@suite("tuza")
def tuza(config: SearchConfig) -> list[Check]:
    checks = []
    for r in range(3, 8):
        family = tuza_family(r)
        singletons = len(intersection_structure(family)[1])
        checks.append(check(f"|tuza_family({r})<1>|", tuza_lower_bound(r), singletons, TUZA))

    family = tuza_family(4)
    observed = {
        "intersecting": is_intersecting(family),
        "rank": family.rank,
        "singletons": len(k_intersections(family, 1)),
    }
    expected = {"intersecting": True, "rank": 4, "singletons": EXACT_ALPHA[4]}
    checks.append(check("tuza_family(4) witnesses alpha(4)", expected, observed, ALPHA_SMALL))
    checks.append(check("alpha_bounds(4)", [16, 39], list(alpha_bounds(4)), TUZA))
    return checks


@suite("ekr")
def ekr(config: SearchConfig) -> list[Check]:
    checks = []
    for n, r in ((4, 2), (5, 2), (6, 3)):
        report = ekr_check(n, r, config)
        expected = {"max_size": math.comb(n - 1, r - 1), "complete": True}
        observed = {"max_size": report.max_size, "complete": report.complete}
        checks.append(check(f"ekr_check({n}, {r})", expected, observed, EKR))
    for n in (6, 7):
        result = beta_search(n, 3, 3, config)
        checks.append(_search_check(f"beta_search({n}, 3, 3)", result, math.comb(n - 1, 2), EKR))
    return checks


@suite("beta-pairs")
def beta_pairs(config: SearchConfig) -> list[Check]:
    return [
        _search_check(f"beta_search({n}, 2, 1)", beta_search(n, 2, 1, config), EXACT_ALPHA[2], ALPHA_FIXED_N)
        for n in (4, 5, 6)
    ]


def _brute_hitting(n: int, k: int, alpha: int) -> int:
    return sum(1 for combo in combinations(range(1, n + 1), k) if min(combo) <= alpha)


def _up_closure_checks(n: int, r: int, k: int, base: SetFamily, label: str, count: int) -> list[Check]:
    family = construction_one(n, r, k, base)
    points = singleton_support(base)
    realized = k_intersections(family, k)
    meeting = hitting_sets(n, k, points)
    brute = _brute_hitting(n, k, len(points))
    formula = hitting_count(n, k, len(points))
    return [
        check(f"{label}: {k}-sets meeting the base points, brute force", count, brute, UP_CLOSURE),
        check(f"{label}: hitting_count", brute, formula, UP_CLOSURE),
        check(f"{label}: |A<{k}>|", brute, len(realized), UP_CLOSURE),
        check(f"{label}: A<{k}> equals the {k}-sets meeting {points}", True, realized == meeting, UP_CLOSURE),
        check(f"{label}: intersecting", True, is_intersecting(family), UP_CLOSURE),
    ]


@suite("construction1")
def construction1(config: SearchConfig) -> list[Check]:
    checks = []
    checks += _up_closure_checks(8, 3, 2, triangle_family(), "n=8 r=3 k=2 triangle base", 18)
    checks += _up_closure_checks(12, 4, 2, seven_point_family(), "n=12 r=4 k=2 seven-point base", 56)
    checks += _up_closure_checks(10, 4, 3, triangle_family(), "n=10 r=4 k=3 triangle base", 85)
    return checks


@suite("section4")
def counterexample(config: SearchConfig) -> list[Check]:
    n = 10
    family = section4_family(n)
    checks = [check("section4_family(10) intersecting", True, is_intersecting(family), COUNTEREXAMPLE)]

    realized = k_intersections(family, 2)
    meeting = hitting_sets(n, 2, point_set(n, 7))
    checks.append(check("|F<2>|", 42, len(realized), COUNTEREXAMPLE))
    checks.append(check("F<2> equals the 2-sets meeting [7]", True, realized == meeting, COUNTEREXAMPLE))

    members = set(family.masks)
    inside = point_set(n, 8).mask
    addable = [mask for mask in rset_masks(n, 4) if mask not in members and all(mask & m for m in members)]
    outside = [mask for mask in addable if mask & ~inside]
    checks.append(check("addable 4-sets outside [8]", 0, len(outside), COUNTEREXAMPLE))

    closed = maximalize(family, n, 4)
    checks.append(check("maximalize(F) is maximal", True, is_maximal(closed, n, 4), COUNTEREXAMPLE))
    checks.append(check("maximalize(F)<1>", list(range(1, 9)), singleton_support(closed).as_list(), COUNTEREXAMPLE))
    violations = _pairs_payload(star_cover_violations(closed))
    checks.append(check("maximalize(F) star-cover violations", [], violations, STAR_COVER))
    return checks


@suite("lemma1-random")
def star_cover_sweep(config: SearchConfig) -> list[Check]:
    samples = settings.INTERSECTRA["STAR_COVER_SAMPLES"]
    rng = random.Random(settings.INTERSECTRA["RANDOM_SEED"])
    checks = []
    for n, r in STAR_COVER_PARAMETERS:
        violations = 0
        for _ in range(samples):
            size = rng.randint(1, math.comb(n - 1, r - 1))
            family = maximalize(random_intersecting_family(n, r, rng, size), n, r)
            violations += len(star_cover_violations(family))
        checks.append(check(f"{samples} maximalized families on [{n}]^({r})", 0, violations, STAR_COVER))
    return checks


def oracle_instances() -> list[tuple[int, int, int]]:
    return [
        (n, r, k)
        for n in range(1, ORACLE_MAX_N + 1)
        for r in range(1, n + 1)
        if math.comb(n, r) <= ORACLE_MAX_SETS
        for k in range(1, r + 1)
    ]


@suite("oracle")
def oracle(config: SearchConfig) -> list[Check]:
    unlimited = SearchConfig(
        node_budget=0,
        symmetry=Symmetry.OFF,
        parallel_width=config.parallel_width,
        canonical_limit=config.canonical_limit,
    )
    symmetric = SearchConfig(
        node_budget=0,
        symmetry=Symmetry.ON,
        parallel_width=config.parallel_width,
        canonical_limit=config.canonical_limit,
    )

    mismatches = []
    for n, r, k in oracle_instances():
        expected = naive_beta(n, r, k, max_sets=ORACLE_MAX_SETS)
        observed = [beta_search(n, r, k, unlimited).value, clique_beta(n, r, k)]
        if n <= config.canonical_limit:
            observed.append(beta_search(n, r, k, symmetric).value)
        if any(value != expected for value in observed):
            mismatches.append({"params": [n, r, k], "expected": expected, "observed": observed})
    checks = [check(f"{len(oracle_instances())} instances with C(n, r) <= {ORACLE_MAX_SETS}", [], mismatches, ORACLE)]

    rng = random.Random(settings.INTERSECTRA["RANDOM_SEED"])
    failures = 0
    for _ in range(1000):
        r = rng.randint(2, 4)
        k = rng.randint(1, r)
        pool = rset_masks(6, r)
        larger = rng.sample(pool, rng.randint(1, len(pool)))
        smaller = rng.sample(larger, rng.randint(1, len(larger)))
        if not check_monotone(SetFamily.from_masks(6, smaller, r), SetFamily.from_masks(6, larger, r), k):
            failures += 1
    checks.append(check("1000 random nested pairs on [6]", 0, failures, MONOTONE))
    return checks


@suite("theorem4")
def closed_form_lower_bound(config: SearchConfig) -> list[Check]:
    n, r, k = 7, 3, 2
    target = hitting_count(n, k, EXACT_ALPHA[r - k + 1])
    witness = construction_one(n, r, k, triangle_family())
    result = beta_search(n, r, k, config)
    estimate = threshold_estimate(r, k)

    realized = len(k_intersections(witness, k))
    checks = [
        check(
            "construction witness feasible",
            {"intersecting": True, "count": target},
            {"intersecting": is_intersecting(witness), "count": realized},
            CLOSED_FORM,
        ),
        check(
            f"beta_search({n}, {r}, {k}) >= {target}",
            f">= {target}",
            {
                "value": result.value,
                "optimal": result.optimal,
                "equality": "empirical" if result.value == target else "not observed",
                "sufficient_n": estimate.sufficient_n,
            },
            CLOSED_FORM,
            passed=result.value >= target,
        ),
    ]
    return checks
