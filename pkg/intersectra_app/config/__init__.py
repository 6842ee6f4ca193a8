"""Project configuration; loading it registers the Celery app that runs search batches."""

from .celery import app as celery_app

__all__ = ("celery_app",)
