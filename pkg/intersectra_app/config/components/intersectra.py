"""Search and verification defaults."""

import os


def _optional_float(value):
    return float(value) if value else None


INTERSECTRA = {
    # Search-tree nodes per run, 0 = unlimited.
    "NODE_BUDGET": int(os.environ.get("INTERSECTRA_BUDGET", "100000000")),
    # Largest ground set that is canonicalized when symmetry is on.
    "CANONICAL_LIMIT": int(os.environ.get("INTERSECTRA_CANONICAL_LIMIT", "10")),
    # Search-tree depth down to which isomorphic nodes are merged.
    "DEDUP_DEPTH": int(os.environ.get("INTERSECTRA_DEDUP_DEPTH", "2")),
    "PARALLEL_WIDTH": int(os.environ.get("INTERSECTRA_WORKERS", "1")),
    "STAR_COVER_SAMPLES": int(os.environ.get("INTERSECTRA_STAR_COVER_SAMPLES", "100")),
    "RANDOM_SEED": int(os.environ.get("INTERSECTRA_SEED", "20240101")),
    # Seconds to wait for a batch of parallel units, empty = no limit.
    "UNIT_TIMEOUT": _optional_float(os.environ.get("INTERSECTRA_UNIT_TIMEOUT")),
}
