"""Command-line front end: simulate, bounds, decode, selftest."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .bounds import baseline_radius, bound_ilrs, bound_lilrs, heuristic_bound, radius
from .codes import dual_subspace_tuple
from .decoders import (decode_complementary_lilrs, decode_ilrs, decode_isrs, decode_lilrs,
                       ilrs_instance, lilrs_instance)
from .interp import debug_dump
from .io import code_params, dump_json, elems_to_digits, field_from_dict, make_code, word_from_dict
from .sim import DECODERS, FAMILIES, SimJob, guards_pass, run_sim, write_csv


def int_list(text: str) -> list[int]:
    """'3,4' or '2..6' (inclusive) or a mix like '1,3..5'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def load_params(text: str) -> dict:
    p = Path(text)
    return json.loads(p.read_text()) if p.exists() else json.loads(text)


def sweep_points(family: str, args) -> list[dict]:
    if family in ("ilrs", "isrs"):
        if not args.t:
            raise SystemExit("--t is required for sum-rank families")
        return [{"t": t} for t in int_list(args.t)]
    if args.gamma is None or args.delta is None:
        raise SystemExit("--gamma and --delta are required for lilrs families")
    return [{"gamma": g, "delta": d} for d in int_list(args.delta) for g in int_list(args.gamma)]


def cmd_simulate(args) -> int:
    job = SimJob(load_params(args.params), args.family, args.decoder, sweep_points(args.family, args),
                 trials=args.trials, seed=args.seed, partition_mode=args.partition_mode,
                 stop_failures=args.stop_failures, workers=args.workers, backend=args.backend)
    rows = run_sim(job)
    write_csv(job, rows, args.out, timing=not args.no_timing)
    if args.plot:
        from .plotting import plot_rows
        plot_rows(job, rows, args.plot)
    for row in rows:
        if row.out_of_radius:
            logging.warning("sweep point %s lies outside the decoding radius", row.point)
    return 0 if guards_pass(rows) else 1


def cmd_bounds(args) -> int:
    p = code_params(load_params(args.params))
    q, m, ell, s, k = p["q"], p["m"], p["ell"], p["s"], p["k"]
    n = sum(p["n_partition"])
    fam = "lilrs" if args.family.startswith("lilrs") else args.family
    print(f"# {args.family} q={q} m={m} ell={ell} s={s} n={n} k={k}")
    if fam == "lilrs":
        print("gamma,delta,bound,heuristic_bound,unique_gamma_max,list_gamma_sup")
        for d in int_list(args.delta or "0"):
            for g in int_list(args.gamma or "0"):
                gg, dd = (d, g) if args.family == "lilrs-complementary" else (g, d)
                b = bound_lilrs(q, m, ell, s, n, k, gg, dd)
                h = heuristic_bound("lilrs", q, m, s, n, k, gamma=gg, delta=dd)
                flag = " (out of radius)" if b.out_of_radius else ""
                print(f"{g},{d},{b.value:.6g}{flag},{h.value:.6g},"
                      f"{radius('lilrs', s, n, k, 'unique', dd)},{radius('lilrs', s, n, k, 'list', dd)}")
        return 0
    print(f"# unique radius t <= {radius(fam, s, n, k, 'unique')}, list radius t < "
          f"{radius(fam, s, n, k, 'list')}; s=1 baseline t <= {baseline_radius(n, k, 'unique')}")
    print("t,bound,heuristic_bound")
    for t in int_list(args.t or "0"):
        b = bound_ilrs(q, m, ell, s, n, k, t)
        h = heuristic_bound(fam, q, m, s, n, k, t=t)
        flag = " (out of radius)" if b.out_of_radius else ""
        print(f"{t},{b.value:.6g}{flag},{h.value:.6g}")
    return 0


def cmd_decode(args) -> int:
    params = load_params(args.code)
    F = field_from_dict(params)
    code = make_code(params, args.family)
    word = word_from_dict(F, load_params(args.word), args.family)
    if args.family == "ilrs":
        out = decode_ilrs(code, word, args.decoder, args.backend)
    elif args.family == "isrs":
        out = decode_isrs(code, word, args.decoder, args.backend)
    elif args.family == "lilrs":
        out = decode_lilrs(code, word, args.decoder, args.backend)
    else:
        out = decode_complementary_lilrs(code, word, args.decoder, args.backend)
    print(dump_json(out.to_dict(digits=lambda c: elems_to_digits(F, c))))
    if args.dump:
        write_dump(code, word, args)
    return 0 if out.ok else 2


def write_dump(code, word, args) -> None:
    """Interpolation intermediates of the decoding just run, as JSON."""
    if not args.decoder.startswith("interp"):
        logging.warning("--dump only covers the interpolation decoders")
        return
    mode = "list" if args.decoder == "interp-list" else "unique"
    if args.family == "ilrs":
        inst, k = ilrs_instance(code, word, mode), code.k
    elif args.family == "isrs":
        F = code.ctx
        R = F.vmul(word, np.array(code.base.beta, dtype=np.int64)[None, :])
        inst, k = ilrs_instance(code.base, R, mode), code.k
    else:
        if args.family == "lilrs-complementary":
            word = dual_subspace_tuple(word)
        inst, k = lilrs_instance(code, word, mode), code.inner.k
    dump_json(debug_dump(inst, k, args.backend), args.dump)


def cmd_selftest(args) -> int:
    from .golden import run_checks
    results = run_checks()
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(ok for _, ok in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sumrank-kit", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte Carlo failure-rate sweep")
    sim.add_argument("family", choices=FAMILIES)
    sim.add_argument("--params", required=True, help="code JSON file or inline JSON")
    sim.add_argument("--t", help="error weights, e.g. 3,4")
    sim.add_argument("--gamma", help="insertions, e.g. 2..6")
    sim.add_argument("--delta", help="deletions, e.g. 1")
    sim.add_argument("--trials", type=int, default=100_000, help="trial cap per point")
    sim.add_argument("--stop-failures", type=int, default=100,
                     help="stop a point after this many failures (0 disables)")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--decoder", choices=DECODERS, default="interp-unique")
    sim.add_argument("--backend", choices=("dense", "fast"), default="dense")
    sim.add_argument("--partition-mode", choices=("uniform", "weighted"), default="uniform")
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--out", help="CSV path (stdout when omitted)")
    sim.add_argument("--plot", help="also render a PNG figure to this path")
    sim.add_argument("--no-timing", action="store_true", help="write 0 in the seconds column")
    sim.set_defaults(func=cmd_simulate)

    bd = sub.add_parser("bounds", help="print failure-probability bounds and radii")
    bd.add_argument("family", choices=FAMILIES)
    bd.add_argument("--params", required=True)
    bd.add_argument("--t")
    bd.add_argument("--gamma")
    bd.add_argument("--delta")
    bd.set_defaults(func=cmd_bounds)

    dec = sub.add_parser("decode", help="decode one received word")
    dec.add_argument("--code", required=True, help="code JSON")
    dec.add_argument("--word", required=True, help="received word JSON")
    dec.add_argument("--family", choices=FAMILIES, default="ilrs")
    dec.add_argument("--decoder", choices=DECODERS, default="interp-unique")
    dec.add_argument("--backend", choices=("dense", "fast"), default="dense")
    dec.add_argument("--dump", help="write interpolation matrices and bases to this JSON path")
    dec.set_defaults(func=cmd_decode)

    st = sub.add_parser("selftest", help="run the golden-vector checks")
    st.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
