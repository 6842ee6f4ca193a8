"""Celery application that carries search batches to workers."""

import os

from celery import Celery

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")

app = Celery("intersectra")

# CELERY_-prefixed keys in Django settings configure the app.
app.config_from_object("django.conf:settings", namespace="CELERY")

# A batch can run for minutes; workers take one at a time.
app.conf.worker_prefetch_multiplier = 1

app.autodiscover_tasks()
