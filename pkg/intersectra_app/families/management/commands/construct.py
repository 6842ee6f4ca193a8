from families.constructions import (
    alpha_witness,
    construction_one,
    lovasz_bounds,
    majority_family,
    section4_family,
    star_family,
    threshold_estimate,
    tuza_family,
)
from families.core import hitting_count, k_intersections, singleton_support
from families.management.base import ReportCommand
from families.reports import RunReport
from families.serializers import CONSTRUCT_KINDS, ConstructParamsSerializer, family_payload
from families.textformat import dump_family, save_family
from families.verification import ALPHA_SMALL, COUNTEREXAMPLE, EKR, TUZA, UP_CLOSURE

ANCHORS = {
    "star": EKR,
    "tuza": TUZA,
    "alpha-witness": ALPHA_SMALL,
    "construction1": UP_CLOSURE,
    "section4": COUNTEREXAMPLE,
    "majority": "non-uniform intersecting families realize every k-set",
}


class Command(ReportCommand):
    help = "Build one of the extremal families and print or save it."

    def add_command_arguments(self, parser):
        parser.add_argument("kind", choices=CONSTRUCT_KINDS)
        parser.add_argument("--n", type=int)
        parser.add_argument("--r", type=int)
        parser.add_argument("--k", type=int)
        parser.add_argument("--base", help="Base family file for construction1.")
        parser.add_argument("--output", help="Write the family to this file in the text format.")

    def run(self, **options) -> RunReport:
        params = self.validate(
            ConstructParamsSerializer,
            {name: options[name] for name in ("kind", "n", "r", "k", "base")},
        )
        kind = params["kind"]
        outputs = {}

        if kind == "star":
            family = star_family(params["n"], params["r"])
        elif kind == "tuza":
            family = tuza_family(params["r"])
        elif kind == "alpha-witness":
            record = alpha_witness(params["r"])
            family = record.witness
            outputs.update(status=record.status.value, value=record.value, lower=record.lower, upper=record.upper)
            if params["r"] >= 2:
                outputs["lovasz_bounds"] = list(lovasz_bounds(params["r"]))
        elif kind == "construction1":
            n, r, k = params["n"], params["r"], params["k"]
            base = self.load(params["base"])
            family = construction_one(n, r, k, base)
            points = len(singleton_support(base))
            estimate = threshold_estimate(r, k)
            outputs.update(
                k=k,
                k_count=len(k_intersections(family, k)),
                hitting_count=hitting_count(n, k, points),
                sufficient_n=estimate.sufficient_n,
            )
        elif kind == "section4":
            family = section4_family(params["n"])
        else:
            family = majority_family(params["n"])

        outputs.update(
            n=family.n,
            r=family.rank,
            provenance=ANCHORS[kind],
            size=len(family),
            singletons=len(singleton_support(family)),
            family=family_payload(family),
        )
        if options["output"]:
            save_family(options["output"], family)
        self.family = family
        return RunReport(
            command=f"construct {kind}",
            inputs={name: value for name, value in params.items() if value is not None},
            outputs=outputs,
            anchor=ANCHORS[kind],
        )

    def render(self, report):
        return dump_family(self.family).rstrip("\n")
