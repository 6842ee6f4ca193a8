from itertools import combinations

from families.core import is_intersecting, k_intersections, level_profile, singleton_support
from families.management.base import ReportCommand
from families.reports import RunReport
from families.serializers import AnalyzeParamsSerializer


class Command(ReportCommand):
    help = "Report the intersection structure of a family file."

    def add_command_arguments(self, parser):
        parser.add_argument("family_file", help="Family in the text format.")
        parser.add_argument("-k", "--k", type=int, nargs="+", default=[], help="Levels to count (default 1..rank).")

    def run(self, **options) -> RunReport:
        family = self.load(options["family_file"])
        params = self.validate(AnalyzeParamsSerializer, {"n": family.n, "k": options["k"]})
        levels = params["k"] or list(range(1, (family.rank or family.n) + 1))

        intersecting = is_intersecting(family)
        outputs = {
            "n": family.n,
            "rank": family.rank,
            "size": len(family),
            "is_intersecting": intersecting,
            "counts": {str(k): len(k_intersections(family, k)) for k in levels},
            "support": singleton_support(family).as_list(),
            "profile": {str(level): count for level, count in level_profile(family).items() if count},
        }
        if not intersecting:
            outputs["disjoint_pairs"] = sum(1 for a, b in combinations(family.masks, 2) if not a & b)
        return RunReport(
            command="analyze",
            inputs={"family_file": options["family_file"], "k": levels},
            outputs=outputs,
        )
