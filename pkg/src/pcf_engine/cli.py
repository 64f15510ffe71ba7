"""Command-line driver: ingest, run, query, compare, gen, bench."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from itertools import combinations
from time import perf_counter

from . import baselines, corpus, engine, generator, serp

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_STALE = 3

# Fixed shape for the scaling benchmark: objects scale with websites so the
# per-object sibling count stays constant and total work stays linear.
BENCH_CLAIMS_PER_SITE = 4
BENCH_EPOCHS = 2
BENCH_CORRUPTION = 0.3
BENCH_REPEATS = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _rate(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def _epsilon_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numeric lo:hi:step, got {text!r}")
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"need step > 0 and hi >= lo, got {text!r}")
    grid = []
    i = 0
    while True:
        value = lo + i * step
        if value > hi + 1e-12:
            break
        grid.append(round(value, 12))
        i += 1
    return grid


def epsilon_sweep(
    state: corpus.TrustState, epsilons: list[float]
) -> list[tuple[float, float]]:
    """Mean implication factor over all same-object fact pairs per epsilon.

    Each unordered pair is counted once, oriented by ascending fact id.
    """
    pairs: list[tuple[float, float]] = []
    by_object: dict[str, list[int]] = {}
    for fact_id in sorted(state.facts):
        by_object.setdefault(state.facts[fact_id].object, []).append(fact_id)
    for fact_ids in by_object.values():
        for low, high in combinations(fact_ids, 2):
            pairs.append((state.facts[low].pcf, state.facts[high].pcf))

    rows = []
    for eps in epsilons:
        if pairs:
            mean = sum(
                engine.implication_factor(p1, p2, eps) for p1, p2 in pairs
            ) / len(pairs)
        else:
            mean = 0.0
        rows.append((eps, mean))
    return rows


def scaling_bench(
    sizes: list[int],
    claims_per_site: int = BENCH_CLAIMS_PER_SITE,
    epochs: int = BENCH_EPOCHS,
    corruption: float = BENCH_CORRUPTION,
    seed: int = 0,
    repeats: int = BENCH_REPEATS,
) -> list[tuple[int, int, float, float]]:
    """Time corpus preparation and the scoring+epoch pipeline per corpus size.

    Returns (n_websites, n_facts, data_seconds, engine_seconds) rows; the
    engine column is the best of ``repeats`` timed runs and excludes all
    data generation and table building.
    """
    rows = []
    for n in sizes:
        spec = generator.GenSpec(
            n_websites=n,
            n_objects=n,
            claims_per_site=claims_per_site,
            corruption_rate=corruption,
            seed=seed,
        )
        t0 = perf_counter()
        kb_records = generator.generate_kb(spec)
        claims = generator.generate_claims(spec, kb_records)
        kb = {book.object: book for book in kb_records}
        state = corpus.build_state(kb, claims)
        data_seconds = perf_counter() - t0

        best = float("inf")
        for _ in range(repeats):
            t1 = perf_counter()
            scored = engine.assign_pcf(state)
            engine.run(scored, max_epochs=epochs, tol=0.0)
            best = min(best, perf_counter() - t1)
        rows.append((n, len(state.facts), data_seconds, best))
    return rows


def cmd_ingest(args: argparse.Namespace) -> int:
    kb = corpus.load_knowledge_base(args.kb)
    claims = corpus.load_claims(args.claims)
    state = corpus.build_state(kb, claims)
    state = engine.assign_pcf(state)
    corpus.save_state(state, args.state)
    print(
        f"ingested {len(kb)} objects and {len(claims)} claims -> "
        f"{len(state.websites)} websites, {len(state.facts)} facts"
    )
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    state = corpus.load_state(args.state)
    overrides = {}
    if args.epsilon is not None:
        overrides["epsilon"] = args.epsilon
    if args.tol is not None:
        overrides["convergence_tol"] = args.tol
    if args.epochs is not None:
        overrides["max_epochs"] = args.epochs
    if overrides:
        state.config = replace(state.config, **overrides)

    state, reports = engine.run(state)
    for report in reports:
        print(
            f"epoch={report.epoch} max_trust_delta={report.max_trust_delta:.9f} "
            f"converged={str(report.converged).lower()} "
            f"trust_s={report.trust_seconds:.6f} "
            f"confidence_s={report.confidence_seconds:.6f} "
            f"implication_s={report.implication_seconds:.6f}"
        )
    state.method_trusts[baselines.METHOD_PCF] = {
        url: site.trust for url, site in state.websites.items()
    }
    corpus.save_state(state, args.state)
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    state = corpus.load_state(args.state)
    rows = serp.query(state, args.needle, method=args.method, top_k=args.top)
    sys.stdout.write(serp.serp_tsv(rows))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    state = corpus.load_state(args.state)
    results = [
        baselines.voting_run(state),
        baselines.truthfinder_run(state),
        baselines.pcf_run(state),
    ]
    for result in results:
        state.method_trusts[result.method] = dict(result.trusts)
    corpus.save_state(state, args.state)

    by_method = {result.method: result.trusts for result in results}
    print("url,voting,truthfinder,pcf")
    for url in sorted(state.websites):
        print(
            f"{url},{by_method['voting'][url]:.6f},"
            f"{by_method['truthfinder'][url]:.6f},{by_method['pcf'][url]:.6f}"
        )
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    spec = generator.GenSpec(
        n_websites=args.websites,
        n_objects=args.objects,
        claims_per_site=args.claims_per_site,
        corruption_rate=args.corruption,
        seed=args.seed,
    )
    kb_records = generator.generate_kb(spec)
    claims = generator.generate_claims(spec, kb_records)
    generator.write_kb_file(args.out_kb, kb_records)
    generator.write_claims_file(args.out_claims, claims)
    print(
        f"generated {len(kb_records)} objects -> {args.out_kb}, "
        f"{len(claims)} claims -> {args.out_claims}"
    )
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    state = corpus.load_state(args.state)
    if args.websites_list is None and args.sweep_epsilon is None:
        print(
            "error: bench needs --websites-list and/or --sweep-epsilon",
            file=sys.stderr,
        )
        return EXIT_INPUT
    if args.websites_list is not None:
        print("n_websites,n_facts,data_seconds,engine_seconds")
        for n, facts, data_s, engine_s in scaling_bench(
            args.websites_list, seed=state.config.seed
        ):
            print(f"{n},{facts},{data_s:.6f},{engine_s:.6f}")
    if args.sweep_epsilon is not None:
        print("epsilon,mean_implication_factor")
        for eps, mean in epsilon_sweep(state, args.sweep_epsilon):
            print(f"{eps},{mean:.12f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcf",
        description="Rank fact-providing websites by trustworthiness against a knowledge base.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="build a state file from KB and claims files")
    p_ingest.add_argument("--kb", required=True, help="knowledge base (JSON Lines)")
    p_ingest.add_argument("--claims", required=True, help="claims table (CSV)")
    p_ingest.add_argument("--state", required=True, help="output state file (JSON)")
    p_ingest.set_defaults(func=cmd_ingest)

    p_run = sub.add_parser("run", help="run trust epochs on a state file")
    p_run.add_argument("--state", required=True)
    p_run.add_argument("--epochs", type=_positive_int, default=None)
    p_run.add_argument("--epsilon", type=_rate, default=None)
    p_run.add_argument("--tol", type=float, default=None)
    p_run.set_defaults(func=cmd_run)

    p_query = sub.add_parser("query", help="rank provider websites for an ISBN or title")
    p_query.add_argument("--state", required=True)
    p_query.add_argument("--needle", required=True, help="ISBN or title substring")
    p_query.add_argument(
        "--method",
        choices=[baselines.METHOD_PCF, baselines.METHOD_TRUTHFINDER, baselines.METHOD_VOTING],
        default=baselines.METHOD_PCF,
    )
    p_query.add_argument("--top", type=_positive_int, default=10)
    p_query.set_defaults(func=cmd_query)

    p_compare = sub.add_parser("compare", help="trust table for all three methods")
    p_compare.add_argument("--state", required=True)
    p_compare.set_defaults(func=cmd_compare)

    p_gen = sub.add_parser("gen", help="generate a synthetic KB and claims corpus")
    p_gen.add_argument("--websites", type=_positive_int, required=True)
    p_gen.add_argument("--objects", type=_positive_int, required=True)
    p_gen.add_argument("--claims-per-site", type=_positive_int, required=True)
    p_gen.add_argument("--corruption", type=_rate, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out-kb", required=True)
    p_gen.add_argument("--out-claims", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="scaling timings and epsilon sweeps")
    p_bench.add_argument("--websites-list", type=_int_list, default=None)
    p_bench.add_argument("--sweep-epsilon", type=_epsilon_grid, default=None)
    p_bench.add_argument("--state", required=True)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (corpus.CorpusError, corpus.StateError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except serp.StaleMethodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STALE


if __name__ == "__main__":
    sys.exit(main())
