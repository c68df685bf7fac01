"""
Exhaustive decider-versus-oracle comparison over small graphs with a spanning
triangle-tree, one representative per isomorphism class. The odd-wheel check
runs on 2-sums of triangles and odd wheels instead, most of which have none.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations

from django.core.cache import cache

from flows.certify import (
    attach_piece,
    complete_graph,
    crystal_3nzf,
    crystal_z3,
    decide_3nzf,
    decide_z3,
    few_3vertices_shortcut,
    fully_2summed_odd_wheel,
    gen_summed_wheel,
    triangularly_connected,
    verify_certificate,
)
from flows.conf import triflow_setting
from flows.exceptions import TriflowError
from flows.graph import Multigraph
from flows.oracles import flow_index_lt3, has_nzf, s3_member, z3_connected
from flows.tritree import (
    TriTreeSeq,
    find_spanning_tritree,
    gen_crystal,
    gen_triangle_path,
    gen_wheel,
    iter_tritree_shapes,
)
from flows.twotrees import certify_s3

logger = logging.getLogger(__name__)

CHECKS = ("3nzf", "z3", "s3", "shortcut", "crystal", "odd_wheel")

CACHE_TIMEOUT = None


class _Classes:
    """Isomorphism-class filter: fingerprint buckets, exact test inside a bucket."""

    def __init__(self):
        self.buckets = {}

    def add(self, g: Multigraph) -> bool:
        bucket = self.buckets.setdefault(g.fingerprint(), [])
        if any(g.is_isomorphic(other) for other in bucket):
            return False
        bucket.append(g)
        return True


def iter_instances(n: int, max_extra: int | None = None):
    """Spanning triangle-tree graphs on 3..n vertices with up to ``max_extra`` extra edges."""
    max_extra = triflow_setting("CORPUS_MAX_EXTRA_EDGES", max_extra)
    classes = _Classes()
    for order in range(3, n + 1):
        for shape in iter_tritree_shapes(order):
            tree = shape.as_graph()
            slots = list(combinations(tree.vertices, 2))
            for extra in range(max_extra + 1):
                for chosen in combinations_with_replacement(slots, extra):
                    g = tree
                    for u, v in chosen:
                        g = g.with_edges({g.fresh_edge_id(): (u, v)})
                    if classes.add(g):
                        yield g


def iter_double_instances(n: int):
    """Unions of two edge-disjoint triangle-trees on the same 4..n vertices."""
    classes = _Classes()
    for order in range(4, n + 1):
        shapes = list(iter_tritree_shapes(order))
        labels = [str(i) for i in range(order)]
        for first in shapes:
            for second in shapes:
                for perm in permutations(labels):
                    rename = dict(zip(labels, perm))
                    attach = tuple(tuple(rename[x] for x in step) for step in second.attach)
                    offset = len(first.edge_ids)
                    other = TriTreeSeq(
                        tuple(rename[x] for x in second.base),
                        attach,
                        tuple(f"e{offset + i}" for i in range(len(second.edge_ids))),
                    )
                    g = Multigraph(labels, {**first.edge_map(), **other.edge_map()})
                    if classes.add(g):
                        yield g


def iter_crystals(n: int):
    """One crystal per triangle-path shape on 4..n vertices."""
    classes = _Classes()
    for order in range(4, n + 1):
        for bits in range(2 ** (order - 3)):
            turns = [(bits >> i) & 1 for i in range(order - 3)]
            g = gen_crystal(gen_triangle_path(turns))
            if classes.add(g):
                yield g


def two_sum_pieces() -> list:
    """The non-Z3 pieces glued together by ``iter_two_sum_instances``: K3 and the odd wheels."""
    return [complete_graph(("0", "1", "2")), gen_wheel(3), gen_wheel(5), gen_wheel(7)]


def iter_two_sum_instances(n: int):
    """
    2-sums of triangles and odd wheels on up to ``n`` vertices, grown one piece
    at a time onto every edge in both orientations, followed by the odd wheels
    with a triangle on every rim edge (and on every spoke of K4).
    """
    pieces = two_sum_pieces()
    classes = _Classes()
    frontier = [p for p in pieces if p.order <= n and classes.add(p)]
    yield from frontier
    while frontier:
        grown = []
        for g in frontier:
            for piece in pieces:
                if g.order + piece.order - 2 > n:
                    continue
                for e in g.edge_ids:
                    for flip in (False, True):
                        h = attach_piece(g, piece, e, piece.edge_ids[0], flip=flip)
                        if classes.add(h):
                            grown.append(h)
        yield from grown
        frontier = grown
    for g in (gen_summed_wheel(3, spokes=True), gen_summed_wheel(5)):
        if classes.add(g):
            yield g


def instances_for(check: str, n: int, max_extra: int | None = None):
    if check == "s3":
        return iter_double_instances(n)
    if check == "crystal":
        return iter_crystals(n)
    if check == "odd_wheel":
        return iter_two_sum_instances(n)
    return iter_instances(n, max_extra)


# -- comparisons -----------------------------------------------------------------


def _compare_3nzf(g: Multigraph) -> dict:
    t = find_spanning_tritree(g)
    verdict, cert = decide_3nzf(g, t)
    oracle = has_nzf(g, 3) is not None
    replayed = cert is None or verify_certificate(g, cert)
    return {"decider": verdict, "oracle": oracle, "agree": verdict == oracle and replayed}


def _compare_z3(g: Multigraph) -> dict:
    t = find_spanning_tritree(g)
    verdict, cert = decide_z3(g, t)
    oracle = z3_connected(g).verdict
    replayed = cert is None or verify_certificate(g, cert)
    return {"decider": verdict, "oracle": oracle, "agree": verdict == oracle and replayed}


def _compare_shortcut(g: Multigraph) -> dict:
    claim = few_3vertices_shortcut(g, find_spanning_tritree(g))
    oracle = has_nzf(g, 3) is not None
    return {"decider": claim, "oracle": oracle, "agree": claim is None or oracle}


def _compare_s3(g: Multigraph) -> dict:
    cert = certify_s3(g)
    verdict = cert is not None and cert.summary.get("all_ok", False)
    oracle = s3_member(g).verdict
    agree = verdict == oracle and (not verdict or flow_index_lt3(g).verdict)
    return {"decider": verdict, "oracle": oracle, "agree": agree}


def _compare_crystal(g: Multigraph) -> dict:
    decider = [crystal_3nzf(g), crystal_z3(g)]
    oracle = [has_nzf(g, 3) is not None, z3_connected(g).verdict]
    return {"decider": decider, "oracle": oracle, "agree": decider == oracle}


def _compare_odd_wheel(g: Multigraph) -> dict:
    """No spanning triangle-tree exactly when a fully 2-summed odd wheel shows up, for non-Z3 instances."""
    premise = triangularly_connected(g) and not z3_connected(g).verdict
    decider = fully_2summed_odd_wheel(g) is not None
    oracle = find_spanning_tritree(g) is None
    return {"decider": decider, "oracle": oracle, "agree": premise and decider == oracle}


COMPARISONS = {
    "3nzf": _compare_3nzf,
    "z3": _compare_z3,
    "s3": _compare_s3,
    "shortcut": _compare_shortcut,
    "crystal": _compare_crystal,
    "odd_wheel": _compare_odd_wheel,
}


def cache_key(check: str, g: Multigraph) -> str:
    digest = hashlib.sha1(repr(g.labelled_key()).encode()).hexdigest()
    return f"verdict:{check}:{digest}"


def compare(check: str, g: Multigraph) -> dict:
    """Decider against oracle for one instance, memoised in the cache."""
    key = cache_key(check, g)
    result = cache.get(key)
    if result is not None:
        return result
    try:
        result = {"fingerprint": g.fingerprint(), **COMPARISONS[check](g), "skipped": None}
    except TriflowError as exc:
        # guardrails and instances outside a decider's premise
        logger.warning("skipping %s: %s", g.fingerprint(), exc)
        return {"fingerprint": g.fingerprint(), "decider": None, "oracle": None, "agree": None, "skipped": str(exc)}
    cache.set(key, result, timeout=CACHE_TIMEOUT)
    return result


@dataclass
class CorpusSummary:
    check: str
    n: int
    instances: int = 0
    agreements: int = 0
    skipped: int = 0
    partial: bool = False
    disagreements: list = field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "check": self.check,
            "n": self.n,
            "instances": self.instances,
            "agreements": self.agreements,
            "skipped": self.skipped,
            "partial": self.partial,
            "disagreements": list(self.disagreements),
        }


def run_corpus(check: str, n: int, max_extra: int | None = None, max_instances: int | None = None) -> CorpusSummary:
    """
    Submit every instance to the corpus queue and aggregate in enumeration
    order. With ``CELERY_TASK_ALWAYS_EAGER`` the tasks run inline.
    """
    from flows.serializers import dump_graph
    from flows.tasks import check_instance

    if check not in COMPARISONS:
        raise ValueError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
    summary = CorpusSummary(check, n)
    pending = []
    for g in instances_for(check, n, max_extra):
        if max_instances is not None and len(pending) >= max_instances:
            summary.partial = True
            break
        pending.append(check_instance.delay(dump_graph(g), check))

    for handle in pending:
        result = handle.get()
        summary.instances += 1
        if result["skipped"]:
            summary.skipped += 1
            summary.partial = True
        elif result["agree"]:
            summary.agreements += 1
        else:
            summary.disagreements.append(result)
    logger.info(
        "corpus %s n=%d: %d instances, %d disagreements", check, n, summary.instances, len(summary.disagreements)
    )
    return summary
