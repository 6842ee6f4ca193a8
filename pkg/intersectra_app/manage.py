#!/usr/bin/env python
"""
intersectra command line.

    python manage.py analyze FILE [-k K ...]
    python manage.py check_family FILE [--n N] [--r R]
    python manage.py construct KIND [--n N] [--r R] [--k K] [--base FILE]
    python manage.py search {alpha,beta} --n N --r R [--k K]
    python manage.py verify SUITE
"""

import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError("Couldn't import Django; run `uv sync` and use `uv run python manage.py ...`.") from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
