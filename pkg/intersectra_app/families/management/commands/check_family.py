from families.core import is_intersecting, is_maximal, maximalize, singleton_support, star_cover_violations
from families.management.base import ReportCommand
from families.reports import RunReport
from families.serializers import CheckParamsSerializer

STAR_COVER = "maximal families: every pairwise intersection meets A<1>"


class Command(ReportCommand):
    help = "Check a uniform family for the intersecting, maximality and star-cover properties."

    def add_command_arguments(self, parser):
        parser.add_argument("family_file", help="Family in the text format.")
        parser.add_argument("--n", type=int, help="Ground set size (default: the family's).")
        parser.add_argument("--r", type=int, help="Set size (default: the family's rank).")

    def run(self, **options) -> RunReport:
        family = self.load(options["family_file"])
        params = self.validate(
            CheckParamsSerializer,
            {"family_n": family.n, "family_rank": family.rank, "n": options["n"], "r": options["r"]},
        )
        n, r = params["n"], params["r"]
        family = family.lifted(n)

        intersecting = is_intersecting(family)
        outputs = {
            "size": len(family),
            "is_intersecting": intersecting,
            "is_maximal": intersecting and is_maximal(family, n, r),
            "support": singleton_support(family).as_list(),
        }
        if intersecting:
            outputs["violations"] = [[a.as_list(), b.as_list()] for a, b in star_cover_violations(family)]
            if not outputs["is_maximal"]:
                closed = maximalize(family, n, r)
                added = [member for member in closed if member not in family]
                outputs["maximalize_added"] = [member.as_list() for member in added]
                outputs["maximalized_support"] = singleton_support(closed).as_list()
        else:
            outputs["violations"] = None

        return RunReport(
            command="check",
            inputs={"family_file": options["family_file"], "n": n, "r": r},
            outputs=outputs,
            anchor=STAR_COVER,
        )
