"""Monte Carlo harness: sample channels, decode, count failures, compare with bounds."""
from __future__ import annotations

import csv
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bounds import bound_ilrs, bound_lilrs, heuristic_bound, within_radius
from .channels import sample_operator_channel, sample_sum_rank_error
from .codes import dual_subspace_tuple, encode_ilrs, encode_lilrs, encode_srs, isometry_forward
from .decoders import decode_complementary_lilrs, decode_ilrs, decode_isrs, decode_lilrs
from .io import code_params, make_code

log = logging.getLogger(__name__)

FAMILIES = ("ilrs", "isrs", "lilrs", "lilrs-complementary")
DECODERS = ("lo", "interp-unique", "interp-list")
CSV_FIELDS = ("family", "decoder", "q", "m", "ell", "s", "n_total", "k", "t", "gamma", "delta",
              "trials", "failures", "miscorrections", "rate", "bound", "heuristic_bound", "seconds")

SUCCESS, FAILED, MISCORRECTED, ANOMALY = range(4)


@dataclass
class SimJob:
    params: dict
    family: str
    decoder: str
    points: list
    trials: int = 100_000
    seed: int = 0
    partition_mode: str = "uniform"
    stop_failures: int = 100
    workers: int = 1
    backend: str = "dense"
    chunk: int = 64

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.decoder not in DECODERS:
            raise ValueError(f"decoder must be one of {DECODERS}")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if not self.points:
            raise ValueError("empty sweep")
        if self.family in ("ilrs", "isrs"):
            if any("t" not in p for p in self.points):
                raise ValueError("sum-rank sweeps need a t value per point")
        elif any("gamma" not in p or "delta" not in p for p in self.points):
            raise ValueError("operator-channel sweeps need gamma and delta per point")
        self.params = code_params(self.params) | {k: v for k, v in self.params.items()
                                                  if k in ("a", "beta", "prim_poly", "r")}


@dataclass
class SimRow:
    point: dict
    trials: int
    failures: int
    miscorrections: int
    bound: float
    heuristic_bound: float
    seconds: float
    anomalies: int = 0
    out_of_radius: bool = False

    @property
    def rate(self) -> float:
        return self.failures / self.trials

    @property
    def successes(self) -> int:
        return self.trials - self.failures - self.miscorrections


@lru_cache(maxsize=8)
def _code(params_json: str, family: str):
    return make_code(json.loads(params_json), family)


def _mode(decoder: str) -> str:
    return "list" if decoder == "interp-list" else "unique"


def _judge(out, msg) -> int:
    if out.kind == "failure":
        return FAILED
    if out.contains(msg):
        return SUCCESS
    # a list may legitimately hold other close codewords; only a wrong unique answer misleads
    return MISCORRECTED if out.kind == "unique" else FAILED


def run_trial(params_json: str, family: str, decoder: str, backend: str, mode: str,
              seed: int, point_index: int, point: dict, trial: int) -> int:
    code = _code(params_json, family)
    rng = np.random.default_rng([seed, point_index, trial])
    if family in ("ilrs", "isrs"):
        inner = code if family == "ilrs" else code.base
        F = inner.ctx
        msg = inner.random_message(rng)
        E = sample_sum_rank_error(F, inner.s, inner.partition, point["t"], rng).error.entries
        if family == "ilrs":
            R = F.vadd(encode_ilrs(inner, msg).entries, E)
            out = decode_ilrs(inner, R, decoder, backend)
        else:
            R = F.vadd(encode_srs(code, msg), isometry_forward(F, E, inner.beta))
            out = decode_isrs(code, R, decoder, backend)
        return _judge(out, msg)
    msg = code.inner.random_message(rng)
    X = encode_lilrs(code, msg)
    if family == "lilrs":
        V = sample_operator_channel(X, point["gamma"], point["delta"], rng, mode).received
        out = decode_lilrs(code, V, decoder, backend)
    else:
        V = sample_operator_channel(dual_subspace_tuple(X), point["gamma"], point["delta"],
                                    rng, mode).received
        out = decode_complementary_lilrs(code, V, decoder, backend)
    return _judge(out, msg)


def _run_chunk(args) -> list[int]:
    head, trials = args
    out = []
    for t in trials:
        try:
            out.append(run_trial(*head, t))
        except Exception:  # recorded as an anomaly, never dropped
            log.exception("trial %d at %s raised", t, head[-1])
            out.append(ANOMALY)
    return out


def point_bounds(job: SimJob, point: dict) -> tuple[float, float, bool]:
    p = job.params
    q, m, s, k, ell = p["q"], p["m"], p["s"], p["k"], p["ell"]
    n = sum(p["n_partition"])
    mode = _mode(job.decoder)
    if job.family in ("ilrs", "isrs"):
        t = point["t"]
        b = bound_ilrs(q, m, ell, s, n, k, t)
        h = heuristic_bound(job.family, q, m, s, n, k, t=t)
        return b.value, h.value, not within_radius("ilrs", s, n, k, mode, t)
    g, d = point["gamma"], point["delta"]
    if job.family == "lilrs-complementary":
        g, d = d, g
    b = bound_lilrs(q, m, ell, s, n, k, g, d)
    h = heuristic_bound("lilrs", q, m, s, n, k, gamma=g, delta=d)
    return b.value, h.value, not within_radius("lilrs", s, n, k, mode, g, d)


def run_point(job: SimJob, index: int, point: dict, pool=None) -> SimRow:
    start = time.perf_counter()
    head = (json.dumps(job.params, sort_keys=True), job.family, job.decoder, job.backend,
            job.partition_mode, job.seed, index, point)
    results: list[int] = []
    failures = 0
    stop_at = None
    batch = job.chunk * max(job.workers, 1)
    next_trial = 0
    while next_trial < job.trials and stop_at is None:
        hi = min(job.trials, next_trial + batch)
        chunks = [(head, range(a, min(a + job.chunk, hi))) for a in range(next_trial, hi, job.chunk)]
        mapped = pool.map(_run_chunk, chunks) if pool is not None else map(_run_chunk, chunks)
        for res in mapped:
            for r in res:
                results.append(r)
                failures += r in (FAILED, ANOMALY)
                if job.stop_failures and failures >= job.stop_failures and stop_at is None:
                    stop_at = len(results)
        next_trial = hi
    if stop_at is not None:
        results = results[:stop_at]
    bound, heur, out = point_bounds(job, point)
    anomalies = results.count(ANOMALY)
    if anomalies:
        log.warning("%d anomalous trials at %s", anomalies, point)
    return SimRow(dict(point), len(results), results.count(FAILED) + anomalies,
                  results.count(MISCORRECTED), bound, heur, time.perf_counter() - start,
                  anomalies, out)


def run_sim(job: SimJob) -> list[SimRow]:
    """Run every sweep point; results depend only on the job, not on ``workers``."""
    if job.workers > 1:
        with ProcessPoolExecutor(job.workers) as pool:
            return [run_point(job, i, p, pool) for i, p in enumerate(job.points)]
    return [run_point(job, i, p) for i, p in enumerate(job.points)]


def row_record(job: SimJob, row: SimRow, timing: bool = True) -> dict:
    p = job.params
    return {"family": job.family, "decoder": job.decoder, "q": p["q"], "m": p["m"],
            "ell": p["ell"], "s": p["s"], "n_total": sum(p["n_partition"]), "k": p["k"],
            "t": row.point.get("t", ""), "gamma": row.point.get("gamma", ""),
            "delta": row.point.get("delta", ""), "trials": row.trials, "failures": row.failures,
            "miscorrections": row.miscorrections, "rate": f"{row.rate:.6g}",
            "bound": f"{row.bound:.6g}", "heuristic_bound": f"{row.heuristic_bound:.6g}",
            "seconds": f"{row.seconds:.3f}" if timing else "0"}


def write_csv(job: SimJob, rows, path=None, timing: bool = True) -> None:
    """Write the rows to ``path``, or to stdout when no path is given."""
    if path is None:
        _write_rows(job, rows, sys.stdout, timing)
        return
    with open(path, "w", newline="") as fh:
        _write_rows(job, rows, fh, timing)


def _write_rows(job, rows, fh, timing):
    w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row_record(job, row, timing))


def slack(bound: float, trials: int) -> float:
    """Three standard deviations of a Bernoulli(bound) rate over ``trials`` draws."""
    return 3.0 * float(np.sqrt(bound * (1.0 - bound) / trials))


def guards_pass(rows) -> bool:
    """No miscorrections and every in-radius rate within bound + slack."""
    for r in rows:
        if r.miscorrections:
            return False
        if not r.out_of_radius and r.rate > r.bound + slack(r.bound, r.trials):
            return False
    return True
