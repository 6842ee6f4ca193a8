"""Serializers validating command parameters and shaping report payloads."""

from rest_framework import serializers

from .search import Symmetry

CONSTRUCT_KINDS = ("star", "tuza", "alpha-witness", "construction1", "section4", "majority")


def family_payload(family):
    """A family as a list of increasing integer lists."""
    return family.as_lists()


class SearchParamsSerializer(serializers.Serializer):
    """Parameters of the ``search`` command."""

    mode = serializers.ChoiceField(choices=("alpha", "beta"))
    n = serializers.IntegerField(min_value=1)
    r = serializers.IntegerField(min_value=1)
    k = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    budget = serializers.IntegerField(min_value=0, required=False, allow_null=True)
    symmetry = serializers.ChoiceField(choices=Symmetry.choices, default=Symmetry.ON)
    workers = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    all_optima = serializers.BooleanField(default=False)
    check_bounds = serializers.BooleanField(default=False)

    def validate(self, attrs):
        """Alpha searches fix k = 1; every search needs k <= r <= n."""
        if attrs["mode"] == "alpha":
            if attrs.get("k") not in (None, 1):
                raise serializers.ValidationError({"k": "alpha searches use k = 1."})
            attrs["k"] = 1
        elif attrs.get("k") is None:
            raise serializers.ValidationError({"k": "beta searches need --k."})

        if attrs["r"] > attrs["n"]:
            raise serializers.ValidationError({"r": f"r={attrs['r']} exceeds n={attrs['n']}."})
        if attrs["k"] > attrs["r"]:
            raise serializers.ValidationError({"k": f"k={attrs['k']} exceeds r={attrs['r']}."})
        return attrs


class AnalyzeParamsSerializer(serializers.Serializer):
    """Parameters of the ``analyze`` command; ``n`` is the family's ground set size."""

    n = serializers.IntegerField(min_value=1)
    k = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_empty=True, default=list)

    def validate(self, attrs):
        """Every requested level must lie in [0, n]."""
        outside = [k for k in attrs["k"] if k > attrs["n"]]
        if outside:
            raise serializers.ValidationError({"k": f"levels {outside} outside [0, {attrs['n']}]."})
        attrs["k"] = sorted(set(attrs["k"]))
        return attrs


class CheckParamsSerializer(serializers.Serializer):
    """Parameters of the ``check_family`` command."""

    family_n = serializers.IntegerField(min_value=1)
    family_rank = serializers.IntegerField(min_value=0, allow_null=True)
    n = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    r = serializers.IntegerField(min_value=1, required=False, allow_null=True)

    def validate(self, attrs):
        """Default n and r from the family; the family must be uniform and fit in [n]."""
        if attrs.get("n") is None:
            attrs["n"] = attrs["family_n"]
        if attrs.get("r") is None:
            attrs["r"] = attrs["family_rank"]
        if attrs["r"] is None:
            raise serializers.ValidationError({"r": "the family is not uniform."})
        if attrs["family_rank"] != attrs["r"]:
            raise serializers.ValidationError({"r": f"family has rank {attrs['family_rank']}, not {attrs['r']}."})
        if attrs["n"] < attrs["family_n"]:
            raise serializers.ValidationError({"n": f"family lives over [{attrs['family_n']}], larger than n."})
        if attrs["r"] > attrs["n"]:
            raise serializers.ValidationError({"r": f"r={attrs['r']} exceeds n={attrs['n']}."})
        return attrs


class ConstructParamsSerializer(serializers.Serializer):
    """Parameters of the ``construct`` command; which ones are needed depends on ``kind``."""

    REQUIRED = {
        "star": ("n", "r"),
        "tuza": ("r",),
        "alpha-witness": ("r",),
        "construction1": ("n", "r", "k", "base"),
        "section4": ("n",),
        "majority": ("n",),
    }

    kind = serializers.ChoiceField(choices=CONSTRUCT_KINDS)
    n = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    r = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    k = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    base = serializers.CharField(required=False, allow_null=True)

    def validate(self, attrs):
        """Check that the flags the construction reads are present."""
        missing = {name: f"construct {attrs['kind']} needs --{name}." for name in self.REQUIRED[attrs["kind"]]}
        missing = {name: message for name, message in missing.items() if attrs.get(name) is None}
        if missing:
            raise serializers.ValidationError(missing)
        if attrs["kind"] == "section4" and attrs["n"] < 10:
            raise serializers.ValidationError({"n": "section4 needs n >= 10."})
        return attrs


class SearchResultSerializer(serializers.Serializer):
    """
    Search outputs.

    ``elapsed_ms`` is only emitted with the ``timings`` context flag and
    ``classes`` only with ``all_optima``, so default reports are stable.
    """

    params = serializers.SerializerMethodField()
    value = serializers.IntegerField()
    optimal = serializers.BooleanField()
    witness = serializers.SerializerMethodField()
    nodes = serializers.IntegerField(source="nodes_expanded")
    elapsed_ms = serializers.SerializerMethodField()
    classes = serializers.SerializerMethodField()

    def get_params(self, result):
        return {"n": result.n, "r": result.r, "k": result.k}

    def get_witness(self, result):
        return family_payload(result.witness)

    def get_elapsed_ms(self, result):
        return round(result.elapsed * 1000)

    def get_classes(self, result):
        return [family_payload(family) for family in result.classes]

    def to_representation(self, instance):
        data = super().to_representation(instance)
        if not self.context.get("timings"):
            data.pop("elapsed_ms")
        if not self.context.get("all_optima"):
            data.pop("classes")
        if self.context.get("check_bounds"):
            data["bound_violations"] = instance.bound_violations
        return data


class RunReportSerializer(serializers.Serializer):
    """RunReport as a JSON-ready dict; ``passed`` is written under the key ``pass``."""

    command = serializers.CharField()
    inputs = serializers.DictField()
    outputs = serializers.DictField()
    anchor = serializers.CharField(allow_null=True)
    passed = serializers.BooleanField(allow_null=True)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data["pass"] = data.pop("passed")
        return dict(data)
