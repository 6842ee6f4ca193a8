"""
Independent oracles for the search engine.

Neither shares code with ``search``: ``naive_beta`` tries every subfamily of
[n]^(r), ``clique_beta`` lists maximal cliques of the intersection graph with
networkx. Both only scale to tiny instances.
"""

import logging
import math
from itertools import combinations

import networkx as nx

from .core import SetFamily, k_intersections, rset_masks
from .exceptions import ParameterError

logger = logging.getLogger(__name__)

NAIVE_MAX_SETS = 16


def intersection_graph(n: int, r: int) -> nx.Graph:
    """Vertices are the r-set masks of [n]; edges join sets that meet."""
    masks = rset_masks(n, r)
    graph = nx.Graph()
    graph.add_nodes_from(masks)
    graph.add_edges_from((a, b) for a, b in combinations(masks, 2) if a & b)
    return graph


def maximal_families(n: int, r: int) -> list[SetFamily]:
    """Every maximal intersecting family of [n]^(r), labeled, in colex order of members."""
    cliques = nx.find_cliques(intersection_graph(n, r))
    families = [SetFamily.from_masks(n, clique, rank=r) for clique in cliques]
    families.sort(key=lambda family: family.masks)
    return families


def clique_beta(n: int, r: int, k: int) -> int:
    if not 1 <= k <= r <= n:
        raise ParameterError(f"need 1 <= k <= r <= n, got n={n}, r={r}, k={k}")
    return max(len(k_intersections(family, k)) for family in maximal_families(n, r))


def naive_beta(n: int, r: int, k: int, max_sets: int = NAIVE_MAX_SETS) -> int:
    """
    beta(n, r, k) by trying every subfamily of [n]^(r).

    Subfamilies are bitmasks over the colex index of the r-sets. A subfamily
    is intersecting when the one without its top set is and the top set meets
    all the others.
    """
    if not 1 <= k <= r <= n:
        raise ParameterError(f"need 1 <= k <= r <= n, got n={n}, r={r}, k={k}")
    if math.comb(n, r) > max_sets:
        raise ParameterError(f"C({n}, {r}) = {math.comb(n, r)} exceeds the oracle limit {max_sets}")

    masks = rset_masks(n, r)
    meets = [sum(1 << j for j, b in enumerate(masks) if a & b) for a in masks]
    intersecting = bytearray(1 << len(masks))
    intersecting[0] = 1
    best = 0
    for subset in range(1, 1 << len(masks)):
        top = subset.bit_length() - 1
        rest = subset ^ (1 << top)
        if not intersecting[rest] or rest & ~meets[top]:
            continue
        intersecting[subset] = 1
        members = [masks[i] for i in range(len(masks)) if subset >> i & 1]
        found = {a & b for a, b in combinations(members, 2) if (a & b).bit_count() == k}
        if k == r:
            found.update(members)
        best = max(best, len(found))
    logger.debug(f"naive oracle n={n} r={r} k={k}: {best}")
    return best


def check_monotone(smaller: SetFamily, larger: SetFamily, k: int) -> bool:
    """F inside F' implies F<k> inside F'<k>."""
    if not smaller.issubset(larger):
        raise ParameterError("first family is not contained in the second")
    return set(k_intersections(smaller, k)) <= set(k_intersections(larger, k))
