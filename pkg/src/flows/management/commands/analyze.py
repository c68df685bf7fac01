from django.core.management.base import BaseCommand

from flows.analysis import ANALYSES, analyze
from flows.cli import dumps, exit_codes, read_json, verification_failed
from flows.serializers import load_graph

DEFAULT_ANALYSES = ("3nzf", "z3")


class Command(BaseCommand):
    help = "Run the deciders on a graph and report verdicts with their certificates."

    def add_arguments(self, parser):
        parser.add_argument("--input", default="-", help="graph JSON file, - for standard input")
        parser.add_argument("--all", action="store_true", help="run every analysis")
        parser.add_argument("--only", nargs="+", choices=ANALYSES, help="analyses to run")
        parser.add_argument("--cross-check", action="store_true", help="compare every verdict with its oracle")
        parser.add_argument("--timing", action="store_true", help="report milliseconds per stage")
        parser.add_argument("--json", action="store_true", help="print the full report as JSON")

    def handle(self, *args, **options):
        if options["all"]:
            selected = ANALYSES
        else:
            selected = tuple(options["only"] or DEFAULT_ANALYSES)
        payload = read_json(options["input"])
        with exit_codes():
            g = load_graph(payload)
            report = analyze(g, selected, cross_check=options["cross_check"])

        if options["json"]:
            self.stdout.write(dumps(report.as_json(with_timing=options["timing"])))
        else:
            for name, entry in report.as_json()["verdicts"].items():
                verdict = "unknown" if entry["verdict"] is None else str(entry["verdict"]).lower()
                self.stdout.write(f"{name}: {verdict} ({entry['source']})")
            if options["timing"]:
                for stage, millis in report.timing.items():
                    self.stderr.write(f"{stage}: {millis:.3f} ms")

        if report.disagreements:
            for message in report.disagreements:
                self.stderr.write(message)
            raise verification_failed(f"{len(report.disagreements)} cross-check failure(s)")
