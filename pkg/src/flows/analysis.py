"""
Per-graph analysis behind ``manage.py analyze``. Each verdict records where it
came from: a structural decider, a constructive certificate, or the oracle
alone when no spanning triangle-tree is available.
"""

import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from flows.certify import (
    decide_3nzf,
    decide_z3,
    fully_2summed_odd_wheel,
    triangularly_connected,
    verify_certificate,
    verify_z3proof,
    z3_prove,
)
from flows.exceptions import DisconnectedGraph, OracleTooLarge
from flows.graph import Multigraph, Z3Boundary, is_strongly_connected
from flows.oracles import flow_index_lt3, has_nzf, s3_member, verify_flow, z3_connected
from flows.serializers import (
    BoundarySerializer,
    CertificateSerializer,
    S3CertificateSerializer,
    TriTreeSeqSerializer,
    WitnessSerializer,
    Z3ProofSerializer,
)
from flows.tritree import TriTreeSeq, find_spanning_tritree
from flows.twotrees import certify_s3, check_partition, orient_with_certificate

logger = logging.getLogger(__name__)

ANALYSES = ("3nzf", "z3", "s3", "flow_index_lt3", "triangularly_connected")

DECIDER = "decider"
CERTIFICATE = "certificate"
ORACLE_ONLY = "oracle-only"


@dataclass
class AnalysisReport:
    fingerprint: str
    tritree: TriTreeSeq | None
    verdicts: dict = field(default_factory=dict)
    disagreements: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def as_json(self, with_timing=False) -> dict:
        out = {
            "fingerprint": self.fingerprint,
            "tritree": None if self.tritree is None else TriTreeSeqSerializer(self.tritree).data,
            "verdicts": {name: self.verdicts[name] for name in ANALYSES if name in self.verdicts},
            "disagreements": list(self.disagreements),
        }
        if with_timing:
            out["timing"] = dict(self.timing)
        return out


def _entry(verdict, source, evidence) -> dict:
    return {"verdict": verdict, "source": source, "evidence": evidence}


def _witness(value):
    return None if value is None else WitnessSerializer(value).data


def _boundary(beta):
    return None if beta is None else BoundarySerializer(beta).data["beta"]


class _Analysis:
    def __init__(self, g: Multigraph, cross_check: bool):
        self.g = g
        self.cross_check = cross_check
        self.tritree = None
        self.s3 = None
        self.s3_tried = False
        self.timing = {}
        self.disagreements = []

    @contextmanager
    def stage(self, name):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timing[name] = round((time.perf_counter() - start) * 1000, 3)

    def disagree(self, message):
        logger.error("cross-check failed: %s", message)
        self.disagreements.append(message)

    def compare(self, name, entry, oracle_verdict):
        entry["oracle"] = oracle_verdict
        if entry["verdict"] != oracle_verdict:
            self.disagree(f"{name}: {entry['source']} says {entry['verdict']}, oracle says {oracle_verdict}")

    # -- analyses ------------------------------------------------------------

    def nzf(self):
        g, t = self.g, self.tritree
        if t is None:
            flow = has_nzf(g, 3)
            return _entry(flow is not None, ORACLE_ONLY, {"flow": _witness(flow)})
        verdict, cert = decide_3nzf(g, t)
        if not verdict:
            entry = _entry(False, DECIDER, {"certificate": CertificateSerializer(cert).data})
            if self.cross_check:
                if not verify_certificate(g, cert):
                    self.disagree("3nzf: certificate does not replay to the input")
                self.compare("3nzf", entry, has_nzf(g, 3) is not None)
            return entry
        try:
            flow = has_nzf(g, 3)
        except OracleTooLarge as exc:
            logger.info("no flow witness: %s", exc)
            return _entry(True, DECIDER, {"flow": None, "skipped": str(exc)})
        entry = _entry(True, DECIDER, {"flow": _witness(flow)})
        if self.cross_check:
            if flow is not None and not verify_flow(g, flow):
                self.disagree("3nzf: flow witness does not verify")
            self.compare("3nzf", entry, flow is not None)
        return entry

    def z3(self):
        g, t = self.g, self.tritree
        if t is None:
            report = z3_connected(g)
            return _entry(
                report.verdict,
                ORACLE_ONLY,
                {"witness": _witness(report.witness), "counterexample": _boundary(report.counterexample_boundary)},
            )
        verdict, cert = decide_z3(g, t)
        if verdict:
            proof = z3_prove(g)
            if proof is None:
                return self.z3_without_proof()
            entry = _entry(True, DECIDER, {"proof": Z3ProofSerializer(proof).data})
            if self.cross_check and not verify_z3proof(g, proof):
                self.disagree("z3: proof does not verify")
        else:
            entry = _entry(False, DECIDER, {"certificate": CertificateSerializer(cert).data})
            if self.cross_check and not verify_certificate(g, cert):
                self.disagree("z3: certificate does not replay to the input")
        if self.cross_check:
            self.compare("z3", entry, z3_connected(g).verdict)
        return entry

    def z3_without_proof(self):
        """The decider says Z3 but the proof search came back empty: the oracle supplies the witness."""
        g = self.g
        try:
            report = z3_connected(g)
        except OracleTooLarge as exc:
            logger.info("no z3 proof and no oracle witness: %s", exc)
            return _entry(True, DECIDER, {"proof": None, "skipped": str(exc)})
        entry = _entry(
            report.verdict,
            ORACLE_ONLY,
            {"witness": _witness(report.witness), "counterexample": _boundary(report.counterexample_boundary)},
        )
        entry["decider"] = True
        if not report.verdict:
            self.disagree("z3: decider says True, oracle says False")
        return entry

    def s3_certificate(self):
        if not self.s3_tried:
            self.s3_tried = True
            self.s3 = certify_s3(self.g)
        return self.s3

    def s3_entry(self):
        g = self.g
        cert = self.s3_certificate()
        if cert is not None:
            entry = _entry(cert.summary.get("all_ok", False), CERTIFICATE, S3CertificateSerializer(cert).data)
            if self.cross_check:
                if not check_partition(g, cert.partition) and not cert.reductions:
                    self.disagree("s3: partition does not verify")
                self.compare("s3", entry, s3_member(g).verdict)
            return entry
        try:
            report = s3_member(g)
        except DisconnectedGraph:
            return _entry(False, ORACLE_ONLY, {"reason": "disconnected"})
        return _entry(
            report.verdict,
            ORACLE_ONLY,
            {"witness": _witness(report.witness), "counterexample": _boundary(report.counterexample_boundary)},
        )

    def lt3(self):
        g = self.g
        cert = self.s3_certificate()
        if cert is not None and cert.summary.get("all_ok"):
            d = orient_with_certificate(g, Z3Boundary.zero(g.vertices), cert)
            entry = _entry(is_strongly_connected(g, d), CERTIFICATE, {"witness": _witness(d)})
            if self.cross_check:
                self.compare("flow_index_lt3", entry, flow_index_lt3(g).verdict)
            return entry
        try:
            report = flow_index_lt3(g)
        except DisconnectedGraph:
            return _entry(False, ORACLE_ONLY, {"reason": "disconnected"})
        return _entry(report.verdict, ORACLE_ONLY, {"witness": _witness(report.witness)})

    def triangular(self):
        g = self.g
        verdict = triangularly_connected(g)
        evidence = {"spanning_tritree": self.tritree is not None, "odd_wheel": None}
        if verdict and self.tritree is None:
            evidence["odd_wheel"] = fully_2summed_odd_wheel(g)
        return _entry(verdict, DECIDER, evidence)


def analyze(g: Multigraph, analyses=ANALYSES, cross_check=False) -> AnalysisReport:
    """Run the selected analyses on ``g``; OracleTooLarge propagates to the caller."""
    unknown = set(analyses) - set(ANALYSES)
    if unknown:
        raise ValueError(f"unknown analyses: {sorted(unknown)}")
    run = _Analysis(g, cross_check)
    with run.stage("tritree"):
        run.tritree = find_spanning_tritree(g)
    steps = {
        "3nzf": run.nzf,
        "z3": run.z3,
        "s3": run.s3_entry,
        "flow_index_lt3": run.lt3,
        "triangularly_connected": run.triangular,
    }
    verdicts = {}
    for name in ANALYSES:
        if name in analyses:
            with run.stage(name):
                verdicts[name] = steps[name]()
    logger.debug("analysis of %s: %s", g.fingerprint(), {k: v["verdict"] for k, v in verdicts.items()})
    return AnalysisReport(g.fingerprint(), run.tritree, verdicts, run.disagreements, run.timing)
