"""Operator entry point wiring fixtures, backends, and experiments.

Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from pathlib import Path

from .agent.backends import BackendError, HttpBackend, load_script, scripted_provider
from .agent.config import (
    AgentConfig,
    EXPERIMENT1_AGENTIC,
    EXPERIMENT2_WITH_ANCHOR,
    EXPERIMENT2_WITHOUT_ANCHOR,
)
from .anchor.resolve import AnchorRequest, CASCADE, DEFAULT_K, STRATEGIES, resolve
from .bench.generate import (
    Exhausted,
    FIELD_VALUE_FIELDS,
    GenerationRules,
    build_variant_items,
    generate_field_value_set,
    generate_gold,
)
from .bench.items import DatasetError, load_dataset, save_dataset
from .evaluation.accuracy import GoldInvalid
from .evaluation.experiment import Condition, run_experiment
from .fixtures import DESK_SEED, write_desk_fixture
from .sim.search import NotEnumerable
from .sim.server import BindFailure, serve_http
from .sim.store import DuplicateKey, MalformedRecord, load_fixture

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jqlagent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make-fixture", help="write the bundled desk fixture JSONL")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=DESK_SEED)

    p = sub.add_parser("serve", help="serve the issue store over HTTP")
    p.add_argument("--fixture", required=True)
    p.add_argument("--bind", default="127.0.0.1:8764")
    p.add_argument("--now", help="frozen clock, RFC 3339 (default: startup time)")

    p = sub.add_parser("anchor", help="resolve one field-value mention")
    p.add_argument("--fixture", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--projects", default="", help="comma-separated project keys")
    p.add_argument("--strategy", default=CASCADE, choices=STRATEGIES)
    p.add_argument("--k", type=int, default=DEFAULT_K)

    p = sub.add_parser("generate", help="emit a benchmark dataset JSONL")
    p.add_argument("--fixture", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--now", required=True, help="frozen clock, RFC 3339")
    p.add_argument(
        "--field",
        choices=FIELD_VALUE_FIELDS,
        help="build the two-clause field-value set for this field instead of gold queries",
    )
    p.add_argument(
        "--variants",
        action="store_true",
        help="expand gold items into the four NL variants (n per variant)",
    )
    p.add_argument("--min-clauses", type=int, default=2)
    p.add_argument("--max-clauses", type=int, default=5)

    p = sub.add_parser("eval", help="run an experiment sweep")
    p.add_argument("--fixture", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--backend", required=True, help="scripted:PATH or http:URL")
    p.add_argument("--anchor", choices=("on", "off", "both"), default="on")
    p.add_argument("--now", required=True, help="frozen clock, RFC 3339")
    p.add_argument("--out", required=True)
    p.add_argument("--model", default="scripted", help="model label for reports")
    p.add_argument("--strategy", default=CASCADE, choices=STRATEGIES)
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--focus-field", help="scope experiment-2 prompts to this field")
    p.add_argument("--group-by", choices=("variant", "field"), default="variant")
    p.add_argument("--recursion-limit", type=int, default=25)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        MalformedRecord,
        DuplicateKey,
        DatasetError,
        NotEnumerable,
        Exhausted,
        GoldInvalid,
        FileNotFoundError,
        json.JSONDecodeError,
    ) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (BindFailure, BackendError, OSError) as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "make-fixture":
        count = write_desk_fixture(args.out, args.seed)
        print(f"wrote {count} issues to {args.out}")
        return EXIT_OK
    if args.command == "serve":
        return _cmd_serve(args)
    if args.command == "anchor":
        return _cmd_anchor(args)
    if args.command == "generate":
        return _cmd_generate(args)
    if args.command == "eval":
        return _cmd_eval(args)
    raise UsageError(f"unknown command {args.command!r}")


def _parse_now(raw: str | None) -> dt.datetime:
    if raw is None:
        return dt.datetime.now(dt.timezone.utc)
    try:
        value = dt.datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except ValueError:
        raise UsageError(f"--now is not an RFC 3339 timestamp: {raw!r}") from None
    if value.tzinfo is None:
        value = value.replace(tzinfo=dt.timezone.utc)
    return value


def _cmd_serve(args: argparse.Namespace) -> int:
    store = load_fixture(args.fixture)
    handle = serve_http(store, args.bind, now=_parse_now(args.now))
    print(f"serving {len(store)} issues at {handle.url}", flush=True)
    try:
        handle._thread.join()
    except KeyboardInterrupt:
        handle.shutdown()
    return EXIT_OK


def _cmd_anchor(args: argparse.Namespace) -> int:
    store = load_fixture(args.fixture)
    projects = tuple(p for p in args.projects.split(",") if p)
    result = resolve(
        AnchorRequest(args.field, args.query, projects), store, args.strategy, args.k
    )
    print(f"strategy={result.strategy} candidates={result.candidates_scanned}")
    for warning in result.warnings:
        print(f"warning: {warning}")
    width = max((len(m.value) for m in result.matches), default=5)
    for rank, match in enumerate(result.matches, start=1):
        cos = f"  cos={match.raw_cosine:+.3f}" if match.raw_cosine is not None else ""
        print(f"{rank:>3}  {match.value:<{width}}  {match.score:.3f}{cos}")
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    store = load_fixture(args.fixture)
    now = _parse_now(args.now)
    if args.field:
        items = generate_field_value_set(store, args.field, args.n, now, seed=args.seed)
    else:
        rules = GenerationRules(clause_range=(args.min_clauses, args.max_clauses))
        items = generate_gold(store, rules, args.n, args.seed, now)
        if args.variants:
            items = build_variant_items(items)
    count = save_dataset(items, args.out)
    print(f"wrote {count} items to {args.out}")
    return EXIT_OK


def _make_backend_provider(spec: str, dataset_len: int):
    kind, _, rest = spec.partition(":")
    if kind == "scripted":
        if not rest:
            raise UsageError("scripted backend needs a path: scripted:PATH")
        return scripted_provider(load_script(rest))
    if kind == "http":
        if not rest:
            raise UsageError("http backend needs a URL: http:URL")
        url = rest if rest.startswith(("http://", "https://")) else f"http://{rest}"

        def provider(query_id: str, condition: str) -> HttpBackend:
            return HttpBackend(url)

        return provider
    raise UsageError(f"unknown backend spec {spec!r} (use scripted:PATH or http:URL)")


def _cmd_eval(args: argparse.Namespace) -> int:
    store = load_fixture(args.fixture)
    items = load_dataset(args.dataset, store.schema)
    now = _parse_now(args.now)
    provider = _make_backend_provider(args.backend, len(items))

    def cfg(anchor_enabled: bool) -> AgentConfig:
        if args.focus_field:
            variant = (
                EXPERIMENT2_WITH_ANCHOR if anchor_enabled else EXPERIMENT2_WITHOUT_ANCHOR
            )
        else:
            variant = EXPERIMENT1_AGENTIC
        return AgentConfig(
            recursion_limit=args.recursion_limit,
            anchor_enabled=anchor_enabled,
            prompt_variant=variant,
            focus_field=args.focus_field,
            anchor_strategy=args.strategy,
            anchor_k=args.k,
        )

    if args.anchor == "both":
        conditions = [
            Condition("without-anchor", cfg(False)),
            Condition("with-anchor", cfg(True)),
        ]
    elif args.anchor == "on":
        conditions = [Condition("with-anchor", cfg(True))]
    else:
        conditions = [Condition("without-anchor", cfg(False))]

    report = run_experiment(
        items,
        store,
        provider,
        conditions,
        now,
        model_name=args.model,
        group_by=args.group_by,
        out_dir=args.out,
        workers=args.workers,
    )
    for row in report.rows:
        delta = f"  delta={row['delta_fmt']}" if row["delta_fmt"] else ""
        print(
            f"{row['condition']:<16} {row['variant_or_field']:<12} n={row['n']:<5}"
            f" accuracy={row['accuracy_fmt']}{delta}"
        )
    if report.skipped:
        print(f"skipped {len(report.skipped)} item(s) with invalid gold queries")
    print(f"reports written to {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
