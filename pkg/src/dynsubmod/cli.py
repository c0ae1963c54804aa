"""``dynsubmod`` command line: one benchmark invocation per experiment.

Exit codes: 0 ok, 2 configuration error, 3 verify failure, 4 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .bench import ALGORITHMS, BenchConfig, aggregate_csv, summary_csv, sweep, updates_csv
from .data import (build_sequence, erdos_renyi_graph, load_edge_list, load_kernel_csv,
                   parse_sequence_spec, preferential_attachment_graph, write_sequence)
from .errors import ConfigError, DynSubmodError, ParseError, ShapeError

EXIT_OK, EXIT_CONFIG, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4

log = logging.getLogger("dynsubmod")


def _int_list(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty integer list {text!r}")
    return out


def _graph_gen(spec: str):
    """``er:n=50,p=0.1,seed=0`` or ``ba:n=500,m=2,seed=0``."""
    kind, _, rest = spec.partition(":")
    try:
        kv = dict(item.split("=", 1) for item in rest.split(",") if item)
        seed = int(kv.get("seed", 0))
        if kind == "er":
            return erdos_renyi_graph(int(kv["n"]), float(kv["p"]), seed=seed)
        if kind == "ba":
            return preferential_attachment_graph(int(kv["n"]), int(kv["m"]), seed=seed)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad graph generator spec {spec!r}: {exc}") from None
    raise ConfigError(f"unknown graph generator {kind!r}; expected er or ba")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dynsubmod", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--objective", choices=["maxcut", "logdet"], required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="edge list (maxcut)")
    src.add_argument("--graph-gen", metavar="SPEC", help="synthetic graph, e.g. ba:n=500,m=2,seed=0")
    src.add_argument("--kernel", metavar="PATH", help="kernel CSV (logdet)")
    p.add_argument("--check-psd", action="store_true", help="full eigenvalue check of the kernel")
    p.add_argument("--sequence", required=True, metavar="SPEC",
                   help="sliding:W=N | noisy | file:PATH | random:L=N")
    p.add_argument("--order", default="auto", choices=["auto", "degree", "index", "random"],
                   help="element order for sliding windows (auto: degree for graphs, index for kernels)")
    p.add_argument("--sequence-seed", type=int, default=0)
    p.add_argument("--alg", default="reduction-ls",
                   help=f"comma list from {','.join(ALGORITHMS)}")
    p.add_argument("--k", type=_int_list, default=[5], help="cardinality bound(s), e.g. 5 or 1-10")
    p.add_argument("--eps-prime", type=float, default=0.5)
    p.add_argument("--q", type=float, default=0.5, help="Sample-Streaming keep probability")
    p.add_argument("--c", type=float, default=1.0, help="Sample-Streaming swap slack")
    p.add_argument("--seed", type=_int_list, default=[0], help="seed(s), e.g. 0,1,2 or 0-9")
    p.add_argument("--verify", action="store_true", help="audit invariants while running")
    p.add_argument("--verify-out", metavar="PATH", help="JSON-lines audit log (default: <out>.verify.jsonl)")
    p.add_argument("--out", required=True, metavar="PATH", help="per-update CSV")
    p.add_argument("--summary", metavar="PATH", help="per-seed summary CSV (default: <out stem>.summary.csv)")
    p.add_argument("--aggregate", metavar="PATH", help="per-(alg,k) aggregate CSV (default: <out stem>.aggregate.csv)")
    p.add_argument("--dump-sequence", metavar="PATH", help="also write the materialised sequence")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for seeds")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _sibling(out: str, suffix: str) -> str:
    stem, _ = os.path.splitext(out)
    return stem + suffix


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.objective == "maxcut":
            if args.kernel:
                raise ConfigError("--objective maxcut needs --graph or --graph-gen")
            objective = load_edge_list(args.graph) if args.graph else _graph_gen(args.graph_gen)
        else:
            if not args.kernel:
                raise ConfigError("--objective logdet needs --kernel")
            objective = load_kernel_csv(args.kernel, check_psd=args.check_psd)
        events = build_sequence(parse_sequence_spec(args.sequence), objective,
                                order=args.order, seed=args.sequence_seed)
        algs = [a.strip() for a in args.alg.split(",") if a.strip()]
        if args.eps_prime > 1:
            log.warning("--eps-prime %s > 1: outside the regime of the approximation guarantee", args.eps_prime)
        configs = [BenchConfig(objective, events, alg, k, eps_prime=args.eps_prime, q=args.q, c=args.c,
                               seeds=args.seed, verify=args.verify)
                   for alg in algs for k in args.k]
        results = sweep(configs, jobs=args.jobs)
    except ConfigError as exc:
        print(f"dynsubmod: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ParseError, ShapeError) as exc:
        print(f"dynsubmod: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DynSubmodError as exc:
        print(f"dynsubmod: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(updates_csv(results))
        with open(args.summary or _sibling(args.out, ".summary.csv"), "w", newline="") as fh:
            fh.write(summary_csv(results))
        with open(args.aggregate or _sibling(args.out, ".aggregate.csv"), "w", newline="") as fh:
            fh.write(aggregate_csv(results))
        if args.dump_sequence:
            write_sequence(args.dump_sequence, events)
        failed = any(r.failed for r in results)
        if args.verify:
            with open(args.verify_out or _sibling(args.out, ".verify.jsonl"), "w") as fh:
                for r in results:
                    for line in r.verify:
                        fh.write(line + "\n")
    except OSError as exc:
        print(f"dynsubmod: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.verify and failed:
        print("dynsubmod: verify failure (see audit log)", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
