from django.core.management.base import BaseCommand, CommandError

from flows.certify import gen_summed_wheel
from flows.cli import EXIT_INPUT, dumps, exit_codes
from flows.serializers import dump_graph
from flows.tritree import (
    double2tree,
    gen_book,
    gen_bullgrown,
    gen_crystal,
    gen_fan,
    gen_triangle_path,
    gen_wheel,
    k4,
    random2tree,
    random_bullgrown_steps,
)

FAMILIES = ("wheel", "summedwheel", "k4", "crystal", "book", "fan", "bullgrown", "random2tree", "double2tree")


class Command(BaseCommand):
    help = "Emit a graph of a named family as graph JSON."

    def add_arguments(self, parser):
        parser.add_argument("family", choices=FAMILIES)
        parser.add_argument("--k", type=int, help="rim length of a wheel")
        parser.add_argument("--n", type=int, help="number of vertices")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--steps", type=int, default=1, help="bull-growing steps from K4")
        parser.add_argument("--turns", default=None, help="crystal turn string such as 0110")
        parser.add_argument("--spokes", action="store_true", help="summedwheel: triangles on the spokes too")

    def _need(self, options, name):
        if options[name] is None:
            raise CommandError(f"{options['family']} needs --{name}", returncode=EXIT_INPUT)
        return options[name]

    def _turns(self, options):
        if options["turns"] is not None:
            text = options["turns"]
            if set(text) - {"0", "1"}:
                raise CommandError("--turns takes a string of 0s and 1s", returncode=EXIT_INPUT)
            return [int(c) for c in text]
        n = self._need(options, "n")
        return [0] * (n - 3)

    def build(self, options):
        family = options["family"]
        if family == "wheel":
            return gen_wheel(self._need(options, "k"))
        if family == "summedwheel":
            return gen_summed_wheel(self._need(options, "k"), spokes=options["spokes"])
        if family == "k4":
            return k4()
        if family == "crystal":
            return gen_crystal(gen_triangle_path(self._turns(options)))
        if family == "book":
            return gen_book(self._need(options, "n"))
        if family == "fan":
            return gen_fan(self._need(options, "n"))
        if family == "bullgrown":
            if options["steps"] < 0:
                raise CommandError("--steps must be non-negative", returncode=EXIT_INPUT)
            return gen_bullgrown(steps=random_bullgrown_steps(options["steps"], options["seed"]))
        if family == "random2tree":
            return random2tree(self._need(options, "n"), options["seed"]).as_graph()
        g, _, _ = double2tree(self._need(options, "n"), options["seed"])
        return g

    def handle(self, *args, **options):
        with exit_codes():
            g = self.build(options)
        self.stdout.write(dumps(dump_graph(g)))
