"""
JSON interchange formats. Every serializer validates a payload and ``save()``
returns the domain value; ``serializer_cls(value).data`` goes the other way.
"""

from rest_framework import serializers

from flows.certify import (
    RULES,
    BullGrowStep,
    Certificate,
    ProofStep,
    TwoSumK3Step,
    Z3Proof,
)
from flows.exceptions import TriflowError
from flows.graph import FlowAssignment, Multigraph, Orientation, Z3Boundary, natural_key
from flows.tritree import TriTreeSeq
from flows.twotrees import CommonLeafReduction, S3Certificate, SpanningPartition


def _ordered(ids) -> list:
    return sorted(ids, key=natural_key)


class GraphSerializer(serializers.Serializer):
    vertices = serializers.ListField(child=serializers.CharField())
    # [id, u, v]
    edges = serializers.ListField(
        child=serializers.ListField(child=serializers.CharField(), min_length=3, max_length=3)
    )

    def validate(self, attrs):
        try:
            attrs["graph"] = Multigraph(attrs["vertices"], [tuple(row) for row in attrs["edges"]])
        except TriflowError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs

    def create(self, validated_data):
        return validated_data["graph"]

    def to_representation(self, instance: Multigraph):
        return {
            "vertices": list(instance.vertices),
            "edges": [[edge_id, u, v] for edge_id, (u, v) in instance.edges.items()],
        }


class TriTreeSeqSerializer(serializers.Serializer):
    base = serializers.ListField(child=serializers.CharField(), min_length=3, max_length=3)
    # (new, y, z) per attached vertex
    attach = serializers.ListField(
        child=serializers.ListField(child=serializers.CharField(), min_length=3, max_length=3),
        required=False,
        default=list,
    )
    edge_ids = serializers.ListField(child=serializers.CharField(), required=False, default=list)

    def validate(self, attrs):
        seq = TriTreeSeq(tuple(attrs["base"]), tuple(tuple(step) for step in attrs["attach"]), tuple(attrs["edge_ids"]))
        if not seq.is_wellformed():
            raise serializers.ValidationError("malformed triangle-tree sequence")
        attrs["tritree"] = seq
        return attrs

    def create(self, validated_data):
        return validated_data["tritree"]

    def to_representation(self, instance: TriTreeSeq):
        return {
            "base": list(instance.base),
            "attach": [list(step) for step in instance.attach],
            "edge_ids": list(instance.edge_ids),
        }


class WitnessSerializer(serializers.Serializer):
    """
    An orientation ``{"orientation": {edge_id: [tail, head]}}``; flows add
    ``"values"`` (edge id to value) and ``"k"``.
    """

    orientation = serializers.DictField(
        child=serializers.ListField(child=serializers.CharField(), min_length=2, max_length=2)
    )
    values = serializers.DictField(child=serializers.IntegerField(min_value=1), required=False)
    k = serializers.IntegerField(min_value=2, required=False)

    def validate(self, attrs):
        arcs = attrs["orientation"]
        if any(tail == head for tail, head in arcs.values()):
            raise serializers.ValidationError("an arc cannot be a loop")
        values = attrs.get("values")
        if values is not None:
            if set(values) != set(arcs):
                raise serializers.ValidationError("flow values must cover exactly the oriented edges")
            if "k" not in attrs:
                raise serializers.ValidationError({"k": "a flow needs its k"})
        return attrs

    def create(self, validated_data):
        d = Orientation({edge_id: tuple(arc) for edge_id, arc in validated_data["orientation"].items()})
        if "values" not in validated_data:
            return d
        try:
            return FlowAssignment(d, validated_data["values"], validated_data["k"])
        except TriflowError as exc:
            raise serializers.ValidationError(str(exc))

    def to_representation(self, instance):
        if isinstance(instance, FlowAssignment):
            arcs = instance.orientation
            return {
                "orientation": {edge_id: list(arcs[edge_id]) for edge_id in _ordered(arcs)},
                "values": {edge_id: instance.values[edge_id] for edge_id in _ordered(instance.values)},
                "k": instance.k,
            }
        return {"orientation": {edge_id: list(instance[edge_id]) for edge_id in _ordered(instance)}}


class BoundarySerializer(serializers.Serializer):
    beta = serializers.DictField(child=serializers.IntegerField())

    def validate_beta(self, value):
        if sum(value.values()) % 3:
            raise serializers.ValidationError("a Z3-boundary must sum to 0 mod 3")
        return value

    def create(self, validated_data):
        return Z3Boundary(validated_data["beta"])

    def to_representation(self, instance: Z3Boundary):
        return {"beta": {v: instance[v] for v in _ordered(instance)}}


class CertificateStepSerializer(serializers.Serializer):
    op = serializers.ChoiceField(choices=[BullGrowStep.op, TwoSumK3Step.op])
    # bull_grow
    a = serializers.CharField(required=False)
    b = serializers.CharField(required=False)
    w = serializers.CharField(required=False)
    u = serializers.CharField(required=False)
    v = serializers.CharField(required=False)
    consume_ab = serializers.BooleanField(required=False, default=True)
    # two_sum_k3
    edge = serializers.ListField(child=serializers.CharField(), min_length=2, max_length=2, required=False)
    apex = serializers.CharField(required=False)

    _needs = {BullGrowStep.op: ("a", "b", "w", "u", "v"), TwoSumK3Step.op: ("edge", "apex")}

    def validate(self, attrs):
        missing = [name for name in self._needs[attrs["op"]] if name not in attrs]
        if missing:
            raise serializers.ValidationError({name: f"required for {attrs['op']}" for name in missing})
        return attrs

    def create(self, validated_data):
        if validated_data["op"] == BullGrowStep.op:
            fields = {name: validated_data[name] for name in ("a", "b", "w", "u", "v", "consume_ab")}
            return BullGrowStep(**fields)
        return TwoSumK3Step(tuple(validated_data["edge"]), validated_data["apex"])

    def to_representation(self, instance):
        if isinstance(instance, BullGrowStep):
            return {
                "op": instance.op,
                "a": instance.a,
                "b": instance.b,
                "w": instance.w,
                "u": instance.u,
                "v": instance.v,
                "consume_ab": instance.consume_ab,
            }
        return {"op": instance.op, "edge": list(instance.edge), "apex": instance.apex}


class CertificateSerializer(serializers.Serializer):
    base = serializers.ChoiceField(choices=["K3", "K4"])
    base_vertices = serializers.ListField(child=serializers.CharField(), min_length=3, max_length=4)
    steps = CertificateStepSerializer(many=True, required=False, default=list)
    target = serializers.CharField(required=False, allow_blank=True, default="")

    def create(self, validated_data):
        steps = tuple(CertificateStepSerializer().create(step) for step in validated_data["steps"])
        return Certificate(validated_data["base"], tuple(validated_data["base_vertices"]), steps, validated_data["target"])

    def to_representation(self, instance: Certificate):
        return {
            "base": instance.base,
            "base_vertices": list(instance.base_vertices),
            "steps": [CertificateStepSerializer(step).data for step in instance.steps],
            "target": instance.target,
        }


def _step_data_to_json(data: dict) -> dict:
    out = {}
    for key, value in data.items():
        if isinstance(value, Z3Proof):
            value = Z3ProofSerializer(value).data
        elif isinstance(value, TriTreeSeq):
            value = TriTreeSeqSerializer(value).data
        elif isinstance(value, (tuple, frozenset, set)):
            value = list(value)
        out[key] = value
    return out


def _step_data_from_json(data: dict) -> dict:
    out = dict(data)
    if "proof" in out:
        nested = Z3ProofSerializer(data=out["proof"])
        nested.is_valid(raise_exception=True)
        out["proof"] = nested.save()
    if "tritree" in out:
        nested = TriTreeSeqSerializer(data=out["tritree"])
        nested.is_valid(raise_exception=True)
        out["tritree"] = nested.save()
    for key in ("edges", "path", "via"):
        if out.get(key) is not None:
            out[key] = tuple(out[key])
    return out


class ProofStepSerializer(serializers.Serializer):
    rule = serializers.ChoiceField(choices=list(RULES))
    data = serializers.JSONField(required=False, default=dict)

    def validate_data(self, value):
        if not isinstance(value, dict):
            raise serializers.ValidationError("rule data must be an object")
        return value

    def create(self, validated_data):
        return ProofStep(validated_data["rule"], _step_data_from_json(validated_data["data"]))

    def to_representation(self, instance: ProofStep):
        return {"rule": instance.rule, "data": _step_data_to_json(instance.data)}


class Z3ProofSerializer(serializers.Serializer):
    steps = ProofStepSerializer(many=True)

    def create(self, validated_data):
        return Z3Proof(tuple(ProofStepSerializer().create(step) for step in validated_data["steps"]))

    def to_representation(self, instance: Z3Proof):
        return {"steps": [ProofStepSerializer(step).data for step in instance.steps]}


class SpanningPartitionSerializer(serializers.Serializer):
    e1 = serializers.ListField(child=serializers.CharField())
    e2 = serializers.ListField(child=serializers.CharField())
    z3_proof = Z3ProofSerializer(required=False, allow_null=True, default=None)
    # the first part was confirmed Z3-connected by the oracle instead of a proof
    oracle_checked = serializers.BooleanField(required=False, default=False)

    def validate(self, attrs):
        if set(attrs["e1"]) & set(attrs["e2"]):
            raise serializers.ValidationError("e1 and e2 must be disjoint")
        return attrs

    def create(self, validated_data):
        proof = validated_data["z3_proof"]
        if proof is not None:
            proof = Z3ProofSerializer().create(proof)
        return SpanningPartition(
            frozenset(validated_data["e1"]),
            frozenset(validated_data["e2"]),
            proof,
            validated_data["oracle_checked"],
        )

    def to_representation(self, instance: SpanningPartition):
        proof = instance.z3_proof
        return {
            "e1": _ordered(instance.e1),
            "e2": _ordered(instance.e2),
            "z3_proof": None if proof is None else Z3ProofSerializer(proof).data,
            "oracle_checked": instance.oracle_checked,
        }


class S3SummarySerializer(serializers.Serializer):
    boundaries_checked = serializers.IntegerField(min_value=0)
    all_ok = serializers.BooleanField()
    first_part = serializers.ChoiceField(choices=("proof", "oracle"), required=False)


class CommonLeafReductionSerializer(serializers.Serializer):
    x = serializers.CharField()
    y = serializers.CharField()
    z = serializers.CharField()
    new_edge = serializers.CharField()

    def create(self, validated_data):
        return CommonLeafReduction(**validated_data)


class S3CertificateSerializer(serializers.Serializer):
    partition = SpanningPartitionSerializer()
    reductions = CommonLeafReductionSerializer(many=True, required=False, default=list)
    summary = S3SummarySerializer(required=False)
    trees = TriTreeSeqSerializer(many=True, required=False, default=list)

    def create(self, validated_data):
        return S3Certificate(
            SpanningPartitionSerializer().create(validated_data["partition"]),
            tuple(CommonLeafReductionSerializer().create(r) for r in validated_data["reductions"]),
            dict(validated_data.get("summary") or {}),
            tuple(TriTreeSeqSerializer().create(t) for t in validated_data["trees"]),
        )

    def to_representation(self, instance: S3Certificate):
        return {
            "partition": SpanningPartitionSerializer(instance.partition).data,
            "reductions": [
                {"x": r.x, "y": r.y, "z": r.z, "new_edge": r.new_edge} for r in instance.reductions
            ],
            "summary": dict(instance.summary),
            "trees": [TriTreeSeqSerializer(t).data for t in instance.trees],
        }


class VerdictSerializer(serializers.Serializer):
    verdict = serializers.BooleanField(allow_null=True)
    # "decider", "certificate" or "oracle-only"
    source = serializers.CharField()
    evidence = serializers.JSONField(allow_null=True)
    oracle = serializers.BooleanField(required=False, allow_null=True)


class AnalysisReportSerializer(serializers.Serializer):
    fingerprint = serializers.CharField()
    tritree = TriTreeSeqSerializer(allow_null=True)
    verdicts = serializers.DictField(child=VerdictSerializer())
    disagreements = serializers.ListField(child=serializers.CharField(), required=False)
    timing = serializers.DictField(child=serializers.FloatField(), required=False)


def load(serializer_cls, payload):
    """Validate ``payload`` and return the domain value; raises ValidationError."""
    serializer = serializer_cls(data=payload)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def load_graph(payload) -> Multigraph:
    return load(GraphSerializer, payload)


def dump_graph(g: Multigraph) -> dict:
    return GraphSerializer(g).data
