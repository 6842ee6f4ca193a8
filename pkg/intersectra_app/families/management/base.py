"""Shared plumbing of the families management commands."""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from families.exceptions import FamilyError
from families.reports import RunReport
from families.textformat import load_family

logger = logging.getLogger(__name__)


class ReportCommand(BaseCommand):
    """
    Base for commands that produce a RunReport.

    Subclasses implement ``add_command_arguments`` and ``run``. Library errors
    and parameter validation errors become CommandError; a report with
    ``passed=False`` is written first and then fails the command with exit
    code 1.
    """

    def add_arguments(self, parser):
        parser.add_argument("--json", action="store_true", dest="as_json", help="Print the report as JSON.")
        parser.add_argument("--quiet", action="store_true", help="Only log warnings and errors.")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, **options) -> RunReport:
        raise NotImplementedError

    def render(self, report: RunReport) -> str:
        """Human-readable report; one ``key: value`` line per output."""
        lines = [f"{key}: {value}" for key, value in report.outputs.items()]
        if report.passed is not None:
            lines.append(f"pass: {str(report.passed).lower()}")
        return "\n".join(lines)

    def handle(self, *args, **options):
        family_logger = logging.getLogger("families")
        level = family_logger.level
        if options["quiet"]:
            family_logger.setLevel(logging.WARNING)
        try:
            report = self.run(**options)
        except serializers.ValidationError as exc:
            raise CommandError(self.format_errors(exc.detail)) from exc
        except FamilyError as exc:
            raise CommandError(str(exc)) from exc
        finally:
            family_logger.setLevel(level)

        self.stdout.write(report.to_json() if options["as_json"] else self.render(report))
        if report.passed is False:
            raise CommandError(f"{report.command}: verification failed", returncode=1)

    def validate(self, serializer_class, data: dict) -> dict:
        serializer = serializer_class(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data

    def load(self, path: str):
        if not Path(path).is_file():
            raise CommandError(f"family file not found: {path}")
        return load_family(path)

    @staticmethod
    def format_errors(detail) -> str:
        if isinstance(detail, dict):
            return "; ".join(f"{field}: {' '.join(map(str, errors))}" for field, errors in detail.items())
        return " ".join(map(str, detail))
