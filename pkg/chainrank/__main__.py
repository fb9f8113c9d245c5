"""CLI enabler for chainrank."""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from .cache import ResultCache
from .catalog import catalog_entries, lookup
from .chainrank import ChainRank
from .chainrank_verify import ChainRankVerify
from .const import (
    CMD_CATALOG,
    CMD_ORACLE,
    CMD_RANK,
    CMD_TREE,
    CMD_VERIFY,
    DEFAULT_GROUP_LIMIT,
    DEFAULT_NODE_BUDGET,
    DEFAULT_ORACLE_LIMIT,
    DEFAULT_SUBGROUP_LIMIT,
    DEFAULT_VERIFY_MAX_ORDER,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_RESOURCE_LIMIT,
    EXIT_VERIFY_FAILED,
    FORMAT_DOT,
    FORMAT_GRAPHML,
    FORMAT_JSON,
    FORMAT_TABLE,
)
from .exceptions import (
    DslSyntaxError,
    IllFoundedTree,
    InvalidGeneratorFile,
    InvalidPermutation,
    NotContained,
    NotNormal,
    ResourceLimit,
    SizeLimitExceeded,
    UnboundParameter,
    UnknownGroup,
    WordResolution,
)
from .helpers import catalog_to_dict, outcome_to_dict, render_table, report_table_rows
from .models import InvariantId, Limits, Suite

INPUT_ERRORS = (
    DslSyntaxError,
    InvalidGeneratorFile,
    InvalidPermutation,
    NotContained,
    NotNormal,
    UnboundParameter,
    UnknownGroup,
    WordResolution,
    ValueError,
)
LIMIT_ERRORS = (SizeLimitExceeded, ResourceLimit, IllFoundedTree, TimeoutError)

INVARIANT_CHOICES = [str(invariant) for invariant in InvariantId]


def _binding(text: str) -> tuple[str, int]:
    name, sep, value = text.partition("=")
    if not sep or not name or not value.lstrip("-").isdigit():
        raise argparse.ArgumentTypeError(f"expected NAME=INTEGER, got {text!r}")
    return name, int(value)


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subcommand per operation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("--max-group-order", type=int, default=DEFAULT_GROUP_LIMIT)
    common.add_argument(
        "--max-subgroup-order", type=int, default=DEFAULT_SUBGROUP_LIMIT
    )
    common.add_argument(
        "--max-oracle-order", type=int, default=DEFAULT_ORACLE_LIMIT
    )
    common.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    common.add_argument("--timeout", type=float, default=None)
    common.add_argument("--bind", type=_binding, action="append", default=[])

    parser = argparse.ArgumentParser(
        description="CLI used to compute chain-condition ranks of finite groups"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    rank = commands.add_parser(CMD_RANK, parents=[common])
    rank.add_argument("source", help="expression, catalog name or generator file")
    rank.add_argument(
        "--invariant", action="append", choices=[*INVARIANT_CHOICES, "all"]
    )
    rank.add_argument("--marking-seed", type=int, default=None)
    rank.add_argument("--no-cache", action="store_true")
    rank.add_argument("--timings", action="store_true")
    rank.add_argument(
        "--format", choices=(FORMAT_JSON, FORMAT_TABLE), default=FORMAT_JSON
    )

    verify = commands.add_parser(CMD_VERIFY, parents=[common])
    verify.add_argument(
        "--suite", choices=[str(suite) for suite in Suite], default=str(Suite.ALL)
    )
    verify.add_argument("--max-order", type=int, default=DEFAULT_VERIFY_MAX_ORDER)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--group", action="append", default=None)

    tree = commands.add_parser(CMD_TREE, parents=[common])
    tree.add_argument("source")
    tree.add_argument("--invariant", choices=INVARIANT_CHOICES, default="cent")
    tree.add_argument("--offset", type=int, default=1)
    tree.add_argument(
        "--format", choices=(FORMAT_JSON, FORMAT_DOT, FORMAT_GRAPHML), default=FORMAT_JSON
    )
    tree.add_argument("--explicit", type=int, default=None, metavar="N")
    tree.add_argument("--marking-seed", type=int, default=None)

    oracle = commands.add_parser(CMD_ORACLE, parents=[common])
    oracle.add_argument("source")
    oracle.add_argument("--check", choices=("cent", "max", "maxn"), default="max")

    catalog = commands.add_parser(CMD_CATALOG, parents=[common])
    catalog.add_argument("--max-order", type=int, default=None)
    return parser


def print_json(result: Any) -> None:
    """Print a JSON document with sorted keys."""
    print(json.dumps(result, indent=4, ensure_ascii=False, sort_keys=True))  # noqa: T201


def _invariants(requested: list[str] | None) -> tuple[InvariantId, ...]:
    if not requested or "all" in requested:
        return tuple(InvariantId)
    return tuple(InvariantId(name) for name in dict.fromkeys(requested))


def _stop_workers(executor: ProcessPoolExecutor) -> None:
    """Drop queued work and terminate the worker processes."""
    workers = list((executor._processes or {}).values())  # noqa: SLF001 # pylint: disable=protected-access
    executor.shutdown(wait=False, cancel_futures=True)
    for worker in workers:
        worker.terminate()


async def _run_command(
    args: argparse.Namespace,
    executor: ProcessPoolExecutor | None,
    limits: Limits,
    bindings: dict[str, int],
) -> int:
    """Run one subcommand against a ChainRank sharing ``executor``."""
    if args.command == CMD_RANK:
        api = ChainRank(executor, limits, None if args.no_cache else ResultCache())
        data = await api.async_make_report(
            args.source,
            _invariants(args.invariant),
            args.marking_seed,
            bindings,
            args.timings,
        )
        if args.format == FORMAT_TABLE:
            sys.stdout.write(render_table(report_table_rows(data)))
        else:
            print_json(data)
        return EXIT_OK

    api = ChainRank(executor, limits)
    if args.command == CMD_TREE:
        rendered = await api.async_make_tree(
            args.source,
            InvariantId(args.invariant),
            args.offset,
            args.format,
            args.explicit,
            args.marking_seed,
            bindings,
        )
        sys.stdout.write(rendered)
        return EXIT_OK

    if args.command == CMD_ORACLE:
        print_json(
            await api.async_make_chain(args.source, InvariantId(args.check), bindings)
        )
        return EXIT_OK

    if args.command == CMD_CATALOG:
        print_json([catalog_to_dict(e) for e in catalog_entries(args.max_order)])
        return EXIT_OK

    for name in args.group or []:
        lookup(name)
    outcome = await ChainRankVerify(api).async_run_suite(
        Suite(args.suite), args.max_order, args.seed, args.group
    )
    print_json(outcome_to_dict(outcome))
    return EXIT_OK if outcome.passed else EXIT_VERIFY_FAILED


async def async_main(args: argparse.Namespace) -> int:
    """Set up the executor and run one subcommand within the timeout.

    A timeout runs the work in worker processes so that it can be stopped.
    """
    limits = Limits(
        group_order=args.max_group_order,
        subgroup_order=args.max_subgroup_order,
        oracle_order=args.max_oracle_order,
        node_budget=args.node_budget,
    )
    jobs = getattr(args, "jobs", 1)
    executor = (
        ProcessPoolExecutor(max_workers=jobs)
        if jobs > 1 or args.timeout is not None
        else None
    )
    try:
        async with asyncio.timeout(args.timeout):
            result = await _run_command(args, executor, limits, dict(args.bind))
    except TimeoutError as err:
        if executor is not None:
            _stop_workers(executor)
            executor = None
        raise TimeoutError(f"timed out after {args.timeout}s") from err
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)
    return result


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, run the command and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG)
    try:
        return asyncio.run(async_main(args))
    except INPUT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)  # noqa: T201
        return EXIT_INPUT_ERROR
    except LIMIT_ERRORS as err:
        print(f"limit: {err or 'timed out'}", file=sys.stderr)  # noqa: T201
        return EXIT_RESOURCE_LIMIT


if __name__ == "__main__":
    sys.exit(main())
