"""Celery tasks for families app."""

import logging

from celery import shared_task

from .search import run_unit

logger = logging.getLogger(__name__)


@shared_task
def search_units(payloads):
    """
    Run a batch of independent search units.

    Each payload is a JSON-safe dict describing one subtree; the outcomes come
    back in the same order so the caller's merge stays deterministic.
    """
    logger.info(f"Starting batch of {len(payloads)} search units")
    outcomes = [run_unit(payload) for payload in payloads]
    nodes = sum(outcome["nodes"] for outcome in outcomes)
    logger.info(f"Finished batch of {len(payloads)} search units, {nodes} nodes")
    return outcomes
