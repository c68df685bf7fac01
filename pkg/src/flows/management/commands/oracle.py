import json

from django.core.management.base import BaseCommand, CommandError

from flows.cli import EXIT_INPUT, dumps, exit_codes, read_json, verification_failed
from flows.graph import Z3Boundary
from flows.oracles import (
    flow_index_lt3,
    has_nzf,
    mod3_orient,
    s3_member,
    verify_coloring,
    verify_flow,
    verify_orientation,
    vertex_3_colorable,
    z3_connected,
)
from flows.serializers import BoundarySerializer, WitnessSerializer, load, load_graph

KINDS = ("nzf", "mod3", "z3", "s3", "lt3", "color")


def _witness(value):
    return None if value is None else WitnessSerializer(value).data


def _report(report) -> dict:
    beta = report.counterexample_boundary
    return {
        "verdict": report.verdict,
        "witness": _witness(report.witness),
        "counterexample": None if beta is None else BoundarySerializer(beta).data["beta"],
        "boundaries_checked": report.boundaries_checked,
    }


class Command(BaseCommand):
    help = "Run an exhaustive oracle on a graph."

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=KINDS)
        parser.add_argument("--input", default="-", help="graph JSON file, - for standard input")
        parser.add_argument("--k", type=int, default=3, help="flow value bound for nzf, colors for color")
        parser.add_argument("--beta", default=None, help='boundary JSON for mod3, e.g. {"0": 1, "1": 2}')

    def _beta(self, options, g):
        if options["beta"] is None:
            return Z3Boundary.zero(g.vertices)
        try:
            values = json.loads(options["beta"])
        except json.JSONDecodeError as exc:
            raise CommandError(f"invalid --beta: {exc}", returncode=EXIT_INPUT)
        beta = load(BoundarySerializer, {"beta": values})
        if set(beta) != set(g.vertices):
            raise CommandError("--beta must give a value for every vertex", returncode=EXIT_INPUT)
        return beta

    def run(self, kind, g, options):
        if kind == "nzf":
            flow = has_nzf(g, options["k"])
            ok = flow is None or verify_flow(g, flow)
            return {"verdict": flow is not None, "witness": _witness(flow)}, ok
        if kind == "mod3":
            beta = self._beta(options, g)
            d = mod3_orient(g, beta)
            ok = d is None or verify_orientation(g, d, beta)
            return {"verdict": d is not None, "witness": _witness(d)}, ok
        if kind == "color":
            coloring = vertex_3_colorable(g, options["k"])
            ok = coloring is None or verify_coloring(g, coloring, options["k"])
            return {"verdict": coloring is not None, "coloring": coloring}, ok
        oracle = {"z3": z3_connected, "s3": s3_member, "lt3": flow_index_lt3}[kind]
        report = oracle(g)
        d = report.witness
        strong = kind != "z3"
        ok = d is None or verify_orientation(g, d, Z3Boundary.zero(g.vertices), strong=strong)
        return _report(report), ok

    def handle(self, *args, **options):
        payload = read_json(options["input"])
        with exit_codes():
            g = load_graph(payload)
            result, ok = self.run(options["kind"], g, options)
        self.stdout.write(dumps(result))
        if not ok:
            raise verification_failed(f"{options['kind']} witness failed its independent check")
