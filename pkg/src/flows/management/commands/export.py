from django.core.management.base import BaseCommand, CommandError

from flows.cli import EXIT_INPUT, exit_codes, read_json
from flows.dot import certificate_to_dot, graph_to_dot, witness_to_dot
from flows.serializers import CertificateSerializer, WitnessSerializer, load, load_graph


class Command(BaseCommand):
    help = "Render graph, witness or certificate JSON as DOT."

    def add_arguments(self, parser):
        parser.add_argument("--input", default="-", help="JSON file, - for standard input")
        parser.add_argument("--dot", action="store_true", default=True, help="DOT output (the only format)")

    def render(self, payload):
        if not isinstance(payload, dict):
            raise CommandError("expected a JSON object", returncode=EXIT_INPUT)
        if "base" in payload:
            return certificate_to_dot(load(CertificateSerializer, payload))
        if "orientation" in payload:
            # a witness may carry its graph for isolated vertices
            g = load_graph(payload["graph"]) if "graph" in payload else None
            witness = load(WitnessSerializer, {k: v for k, v in payload.items() if k != "graph"})
            return witness_to_dot(witness, g)
        return graph_to_dot(load_graph(payload))

    def handle(self, *args, **options):
        payload = read_json(options["input"])
        with exit_codes():
            text = self.render(payload)
        self.stdout.write(text, ending="")
