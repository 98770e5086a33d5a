"""Generation and certification of cusp data (M0, M1).

Starting from ({alpha_0}, lambda({alpha_0})), each datum spawns the children
(M0 + {alpha}, lambda(M0 + {alpha})) for alpha in M1.  Data are deduplicated
on M0 and explored breadth first; within a level, bitsets are visited in
increasing order so every run, serial or parallel, yields the same report.

Modes:

``paper``
    prune a datum (drop it and its subtree) iff M0 meets condition 2; every
    survivor is then certified by an f-function, else condition 1, else
    condition 3 with alpha restricted to M1.
``strict``
    prune iff any of conditions 1-3 holds; survivors need an f-function.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .grading import Grading, compute_grading, n_coordinates
from .reducibility import (
    Certificate,
    MalformedCertificate,
    check_condition_1,
    check_condition_3,
    condition_2_holds,
    condition_3_holds,
    members,
    solve_f,
    to_mask,
    verify_certificate,
)

log = logging.getLogger(__name__)

MODES = ("paper", "strict")


class UncertifiedDatum(RuntimeError):
    """A surviving cusp datum admits none of the allowed certificates."""


@dataclass(frozen=True, order=True)
class CuspDatum:
    M0: int
    M1: int


@dataclass
class CuspReport:
    ctype: str
    mode: str
    data: list[tuple[CuspDatum, Certificate | None]] = field(default_factory=list)
    pruned_count: int = 0
    generation_steps: int = 0

    @property
    def count(self) -> int:
        return len(self.data)


# -- poset on Phi_V -----------------------------------------------------------

def poset_geq(g: Grading, beta, alpha) -> bool:
    """beta >= alpha iff every n_i(beta - alpha) >= 0."""
    diff = tuple(b - a for b, a in zip(beta, alpha))
    return all(x >= 0 for x in n_coordinates(g, diff))


def _strict_up(g: Grading) -> tuple[int, ...]:
    """strict_up[k]: bitset of positions strictly above position k."""
    cached = g.__dict__.get("_strict_up")
    if cached is None:
        n = g.V_n
        nV = len(n)
        cached = tuple(
            to_mask(i for i in range(nV) if i != k and all(a >= b for a, b in zip(n[i], n[k])))
            for k in range(nV)
        )
        g.__dict__["_strict_up"] = cached
    return cached


def is_upward_closed(g: Grading, M: int) -> bool:
    up = _strict_up(g)
    return all(up[k] & ~M == 0 for k in members(M))


def lambda_set(g: Grading, M0: int) -> int:
    """Elements alpha outside M0 such that M0 + {alpha} stays upward closed."""
    if not is_upward_closed(g, M0):
        raise ValueError("M0 is not upward closed")
    up = _strict_up(g)
    out = 0
    for k in range(len(up)):
        if not (M0 >> k) & 1 and up[k] & ~M0 == 0:
            out |= 1 << k
    return out


def root_datum(g: Grading) -> CuspDatum:
    k = g.V_index.get(g.rs.highest_root)
    if k is None:
        raise ValueError("highest root is not a weight of V")
    M0 = 1 << k
    return CuspDatum(M0, lambda_set(g, M0))


# -- per-datum work (also run inside worker processes) ------------------------

def is_pruned(g: Grading, mode: str, d: CuspDatum) -> bool:
    if condition_2_holds(g, d.M0):
        return True
    if mode == "strict":
        return check_condition_1(g, d.M0) is not None or condition_3_holds(g, d.M0, d.M1)
    return False


def certify(g: Grading, mode: str, d: CuspDatum) -> Certificate | None:
    cert = solve_f(g, d.M0, d.M1)
    if cert is not None or mode == "strict":
        return cert
    return check_condition_1(g, d.M0) or check_condition_3(g, d.M0, d.M1)


_WORKER: dict = {}


def _init_worker(name: str):
    _WORKER["g"] = compute_grading(name)


def _prune_task(args):
    mode, M0, M1 = args
    return is_pruned(_WORKER["g"], mode, CuspDatum(M0, M1))


def _certify_task(args):
    mode, M0, M1 = args
    return certify(_WORKER["g"], mode, CuspDatum(M0, M1))


class _Runner:
    def __init__(self, g: Grading, jobs: int):
        self.g = g
        self.pool = None
        if jobs > 1:
            self.pool = ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(g.name,))

    def map(self, serial, task, mode, data):
        if self.pool is None:
            return [serial(self.g, mode, d) for d in data]
        chunk = max(1, len(data) // 64)
        return list(self.pool.map(task, [(mode, d.M0, d.M1) for d in data], chunksize=chunk))

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()


def generate_cusp_data(g: Grading, mode: str = "paper", jobs: int = 1, certify_data: bool = True,
                       prune: bool = True, max_steps: int | None = None) -> CuspReport:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    start = time.monotonic()
    runner = _Runner(g, jobs)
    report = CuspReport(g.name, mode)
    try:
        frontier = [root_datum(g)]
        seen = {frontier[0].M0}
        survivors = []
        while frontier and (max_steps is None or report.generation_steps < max_steps):
            report.generation_steps += 1
            if prune:
                flags = runner.map(is_pruned, _prune_task, mode, frontier)
            else:
                flags = [False] * len(frontier)
            children = set()
            for d, dropped in zip(frontier, flags):
                if dropped:
                    report.pruned_count += 1
                    continue
                survivors.append(d)
                for k in members(d.M1):
                    c = d.M0 | (1 << k)
                    if c not in seen:
                        seen.add(c)
                        children.add(c)
            frontier = [CuspDatum(M, lambda_set(g, M)) for M in sorted(children)]
            log.info("%s step %d: %d survivors, %d pruned, %d queued (%.1fs)", g.name,
                     report.generation_steps, len(survivors), report.pruned_count,
                     len(frontier), time.monotonic() - start)
        if certify_data:
            certs = runner.map(certify, _certify_task, mode, survivors)
            for d, c in zip(survivors, certs):
                if c is None:
                    raise UncertifiedDatum(
                        f"{g.name} {mode}: no certificate for M0={members(d.M0)} M1={members(d.M1)}")
            report.data = list(zip(survivors, certs))
            log.info("%s: certified %d data (%.1fs)", g.name, len(survivors), time.monotonic() - start)
        else:
            report.data = [(d, None) for d in survivors]
    finally:
        runner.close()
    return report


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def verify_report(g: Grading, report: CuspReport) -> VerifyResult:
    """Replay every datum: upward closure, M1 = lambda(M0), uniqueness, certificate."""
    if report.ctype != g.name:
        return VerifyResult(False, None, f"report is for {report.ctype}, grading is {g.name}")
    top = g.V_index[g.rs.highest_root]
    seen = set()
    cache: dict = {}
    for i, (d, cert) in enumerate(report.data):
        if not (d.M0 >> top) & 1:
            return VerifyResult(False, i, "M0 does not contain the highest root")
        if not is_upward_closed(g, d.M0):
            return VerifyResult(False, i, "M0 is not upward closed")
        if d.M1 != lambda_set(g, d.M0):
            return VerifyResult(False, i, "M1 differs from lambda(M0)")
        if d.M0 in seen:
            return VerifyResult(False, i, "duplicate M0")
        seen.add(d.M0)
        if cert is None:
            return VerifyResult(False, i, "missing certificate")
        try:
            good = verify_certificate(g, d.M0, d.M1, cert, cache)
        except MalformedCertificate as e:
            return VerifyResult(False, i, f"malformed certificate: {e}")
        if not good:
            return VerifyResult(False, i, f"{cert.kind.value} certificate does not verify")
    return VerifyResult(True)


# -- JSON ---------------------------------------------------------------------

def report_to_json(g: Grading, report: CuspReport, include_certs: bool = True) -> dict:
    gidx = g.phi_V
    data = []
    for d, cert in report.data:
        entry = {
            "M0": [gidx[k] for k in members(d.M0)],
            "M1": [gidx[k] for k in members(d.M1)],
            "cert": cert.to_json(g) if (cert is not None and include_certs) else None,
        }
        data.append(entry)
    return {
        "type": report.ctype,
        "mode": report.mode,
        "count": report.count,
        "pruned": report.pruned_count,
        "steps": report.generation_steps,
        "data": data,
    }


def report_from_json(g: Grading, doc: dict) -> CuspReport:
    back = {gi: k for k, gi in enumerate(g.phi_V)}
    report = CuspReport(doc["type"], doc["mode"], pruned_count=doc.get("pruned", 0),
                        generation_steps=doc.get("steps", 0))
    for entry in doc["data"]:
        M0 = to_mask(back[i] for i in entry["M0"])
        M1 = to_mask(back[i] for i in entry["M1"])
        cert = entry.get("cert")
        report.data.append((CuspDatum(M0, M1), Certificate.from_json(g, cert) if cert else None))
    if doc.get("count", report.count) != report.count:
        raise ValueError("count field disagrees with the number of data")
    return report


def f_total(cert: Certificate) -> Fraction:
    return sum((v for _, v in cert.f), Fraction(0))
