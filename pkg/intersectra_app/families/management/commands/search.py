from families.constructions import alpha_bounds
from families.management.base import ReportCommand
from families.reports import RunReport
from families.search import SearchConfig, Symmetry, alpha_search, beta_search
from families.serializers import SearchParamsSerializer, SearchResultSerializer

BETA = "beta(n, r, k) = max |A<k>| over intersecting A inside [n]^(r)"
ALPHA = "alpha(r) = max over n of beta(n, r, 1)"


class Command(ReportCommand):
    help = "Exact maximization of |A<k>| over intersecting families of r-sets."

    def add_command_arguments(self, parser):
        parser.add_argument("mode", choices=("alpha", "beta"))
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--r", type=int, required=True)
        parser.add_argument("--k", type=int)
        parser.add_argument("--budget", type=int, help="Node budget, 0 = unlimited (default: INTERSECTRA_BUDGET).")
        parser.add_argument("--symmetry", choices=Symmetry.values, default=Symmetry.ON)
        parser.add_argument("--workers", type=int, help="Number of parallel search batches.")
        parser.add_argument("--all-optima", action="store_true", help="List every optimal class.")
        parser.add_argument("--check-bounds", action="store_true", help="Count nodes whose bound was too low.")
        parser.add_argument("--timings", action="store_true", help="Include elapsed_ms in the report.")

    def run(self, **options) -> RunReport:
        params = self.validate(
            SearchParamsSerializer,
            {
                name: options[name]
                for name in ("mode", "n", "r", "k", "budget", "symmetry", "workers", "all_optima", "check_bounds")
            },
        )
        config = SearchConfig.from_settings(
            node_budget=params.get("budget"),
            symmetry=params["symmetry"],
            parallel_width=params.get("workers"),
            report_all_optima=params["all_optima"],
            check_bounds=params["check_bounds"],
        )
        n, r, k = params["n"], params["r"], params["k"]
        if params["mode"] == "alpha":
            result = alpha_search(r, n, config)
        else:
            result = beta_search(n, r, k, config)

        context = {
            "timings": options["timings"],
            "all_optima": params["all_optima"],
            "check_bounds": params["check_bounds"],
        }
        outputs = SearchResultSerializer(result, context=context).data
        if params["mode"] == "alpha":
            lower, upper = alpha_bounds(r)
            outputs["alpha_bounds"] = [lower, upper]
            outputs["note"] = "fixed-n value; a lower bound on alpha(r)"

        passed = None
        if params["check_bounds"]:
            passed = result.bound_violations == 0
        return RunReport(
            command=f"search {params['mode']}",
            inputs={
                "n": n,
                "r": r,
                "k": k,
                "budget": config.node_budget,
                "symmetry": config.symmetry,
                "workers": config.parallel_width,
            },
            outputs=dict(outputs),
            anchor=ALPHA if params["mode"] == "alpha" else BETA,
            passed=passed,
        )
