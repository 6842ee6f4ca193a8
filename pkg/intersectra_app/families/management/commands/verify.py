from families.management.base import ReportCommand
from families.reports import RunReport
from families.search import SearchConfig
from families.verification import run_suite, suite_names


class Command(ReportCommand):
    help = "Run a named verification suite; exits non-zero when any check fails."

    def add_command_arguments(self, parser):
        parser.add_argument("suite", choices=suite_names())
        parser.add_argument("--workers", type=int, help="Number of parallel search batches.")
        parser.add_argument("--budget", type=int, help="Node budget, 0 = unlimited.")

    def run(self, **options) -> RunReport:
        config = SearchConfig.from_settings(node_budget=options["budget"], parallel_width=options["workers"])
        checks = run_suite(options["suite"], config)
        failed = [item for item in checks if not item.passed]
        return RunReport(
            command=f"verify {options['suite']}",
            inputs={"suite": options["suite"]},
            outputs={
                "checks": [item.as_dict() for item in checks],
                "failed": len(failed),
                "total": len(checks),
            },
            passed=not failed,
        )

    def render(self, report):
        lines = []
        for item in report.outputs["checks"]:
            status = "PASS" if item["pass"] else "FAIL"
            lines.append(f"{status}  {item['name']}: expected {item['expected']}, observed {item['observed']}")
            if not item["pass"]:
                lines.append(f"      ({item['anchor']})")
        lines.append(f"{report.outputs['total'] - report.outputs['failed']}/{report.outputs['total']} checks passed")
        return "\n".join(lines)
