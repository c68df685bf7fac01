from django.core.management.base import BaseCommand, CommandError

from flows.cli import EXIT_INPUT, dumps, exit_codes, verification_failed
from flows.conf import guard
from flows.corpus import CHECKS, run_corpus


class Command(BaseCommand):
    help = "Compare deciders against oracles on every small graph with a spanning triangle-tree."

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="largest number of vertices")
        parser.add_argument("--check", choices=CHECKS, default="3nzf")
        parser.add_argument("--max-edges", type=int, default=None, help="extra edges on top of the triangle-tree")
        parser.add_argument("--max-instances", type=int, default=None, help="stop after this many instances")

    def handle(self, *args, **options):
        n = options["n"]
        if n < 3:
            raise CommandError("--n must be at least 3", returncode=EXIT_INPUT)
        if options["max_edges"] is not None and options["max_edges"] < 0:
            raise CommandError("--max-edges must be non-negative", returncode=EXIT_INPUT)
        with exit_codes():
            guard("vertices", n, "ORACLE_VERTEX_LIMIT")
            summary = run_corpus(options["check"], n, options["max_edges"], options["max_instances"])

        self.stdout.write(dumps(summary.as_json()))
        if summary.partial:
            self.stderr.write(f"partial run: {summary.skipped} instance(s) skipped")
        if summary.disagreements:
            raise verification_failed(f"{len(summary.disagreements)} disagreement(s) in the {options['check']} corpus")
