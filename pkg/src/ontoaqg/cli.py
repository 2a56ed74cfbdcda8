"""Command-line front-end.

Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 write error.
"""

from __future__ import annotations

import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

import click
from click.core import ParameterSource

from . import __version__
from .config import FORMATS, RunConfig, load_config_file
from .errors import InvalidParameterError, OntologyError, ParseError
from .metrics import MetricReport, evaluate_all, parse_fragments
from .qgen import count_by_strategy, generate_all, parse_strategies
from .rdf import parse_file
from .rdf.ingest import IngestResult, build_knowledge_base
from . import report as rpt

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_WRITE = 0, 1, 2, 3


class InputFailure(Exception):
    def __init__(self, path: str, message: str) -> None:
        self.path = path
        super().__init__(f"{path}: {message}")


def ontology_id(path: str) -> str:
    return Path(path).stem


def load_ontology(path: str, config: RunConfig) -> IngestResult:
    p = Path(path)
    if not p.is_file():
        raise InputFailure(path, "file not found")
    try:
        triples = parse_file(p)
    except ParseError as exc:
        raise InputFailure(path, f"{exc.line}:{exc.column}: {exc.message}") from None
    except UnicodeDecodeError as exc:
        raise InputFailure(path, f"not valid UTF-8 ({exc.reason})") from None
    try:
        return build_knowledge_base(triples, inferred_membership=config.inferred_membership)
    except OntologyError as exc:
        raise InputFailure(path, str(exc)) from None


def load_all(config: RunConfig, verbose: bool = False) -> list[IngestResult]:
    def attempt(path: str):
        try:
            return load_ontology(path, config)
        except InputFailure as exc:
            return exc

    with ThreadPoolExecutor(max_workers=min(8, len(config.input_paths))) as pool:
        results = list(pool.map(attempt, config.input_paths))
    failures = [r for r in results if isinstance(r, InputFailure)]
    if failures:
        for f in failures:
            click.echo(f"error: {f}", err=True)
        raise click.exceptions.Exit(EXIT_INPUT)
    for path, res in zip(config.input_paths, results):
        if verbose:
            for w in res.warnings:
                click.echo(f"warning: {path}: [{w.code}] {w.message}", err=True)
    return results


def write_output(body: str, config: RunConfig, command: str) -> None:
    if not config.output_path:
        click.echo(body, nl=False)
        return
    out = Path(config.output_path)
    try:
        out.write_text(body, encoding="utf-8")
        meta = {
            "tool": "ontoaqg",
            "version": __version__,
            "command": command,
            "generatedAt": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "inputs": [{"path": p, "sha256": _sha256(p)} for p in config.input_paths],
        }
        Path(str(out) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n",
                                                 encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot write {out}: {exc.strerror or exc}", err=True)
        raise click.exceptions.Exit(EXIT_WRITE)


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- option plumbing -----------------------------------------------------------

def run_options(fn):
    decorators = [
        click.argument("inputs", nargs=-1, type=click.Path(dir_okay=False)),
        click.option("--out", "output_path", type=click.Path(dir_okay=False),
                     help="Write the report here instead of stdout."),
        click.option("--format", "format", type=click.Choice(FORMATS), default="json",
                     show_default=True),
        click.option("--normalize/--no-normalize", default=False,
                     help="Add max-normalised metric values."),
        click.option("--strategies", default="all", show_default=True,
                     help="Comma-separated strategies: class-membership, property, "
                          "terminology, annotation, mcq, multi-entity, or all."),
        click.option("--max-distractors", type=int, default=3, show_default=True),
        click.option("--pair-cap", type=int, default=3, show_default=True,
                     help="Multi-entity questions per instance."),
        click.option("--sf-denominator", type=click.Choice(["populated", "all"]),
                     default="populated", show_default=True),
        click.option("--inferred-membership/--asserted-membership", default=False,
                     help="Count instances of subclasses as members of superclasses."),
        click.option("--instance-comments/--no-instance-comments", default=False,
                     help="Generate annotation questions from instance comments too."),
        click.option("--fragments", default=None,
                     help="Comma-separated pattern fragment inventory for PC."),
        click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
                     help="TOML file with default values for the options above."),
        click.option("-v", "--verbose", is_flag=True, help="Print ingest warnings."),
    ]
    for dec in reversed(decorators):
        fn = dec(fn)
    return fn


_OPTION_FIELDS = ("output_path", "format", "normalize", "strategies", "max_distractors",
                  "pair_cap", "sf_denominator", "inferred_membership", "instance_comments",
                  "fragments")


def build_run_config(ctx: click.Context, params: dict) -> RunConfig:
    """Defaults, then config file, then explicitly given flags."""
    try:
        values: dict = {}
        if params.get("config_file"):
            values.update(load_config_file(params["config_file"]))
        for name in _OPTION_FIELDS:
            given = ctx.get_parameter_source(name) not in (ParameterSource.DEFAULT, None)
            if given or name not in values:
                raw = params[name]
                if name == "strategies":
                    raw = parse_strategies([raw])
                elif name == "fragments":
                    if raw is None:
                        continue
                    raw = parse_fragments(raw.split(","))
                values[name] = raw
        return RunConfig(input_paths=tuple(params["inputs"]), **values)
    except InvalidParameterError as exc:
        raise click.UsageError(str(exc), ctx) from None


# -- commands -------------------------------------------------------------------

@click.group()
@click.version_option(__version__, prog_name="ontoaqg")
def cli() -> None:
    """Evaluate ontologies for question generation and generate question banks."""


def _evaluate_reports(results: Sequence[IngestResult], config: RunConfig) -> list[MetricReport]:
    ids = _unique_ids(config.input_paths)
    return [evaluate_all(r.kb, oid, config.metric_config()) for r, oid in zip(results, ids)]


def _unique_ids(paths: Sequence[str]) -> list[str]:
    stems = [ontology_id(p) for p in paths]
    out = []
    for p, s in zip(paths, stems):
        out.append(s if stems.count(s) == 1 else p)
    return out


@cli.command()
@run_options
@click.pass_context
def evaluate(ctx: click.Context, verbose: bool, **params) -> int:
    """Compute the nine metrics for each input ontology."""
    config = build_run_config(ctx, params)
    results = load_all(config, verbose)
    reports = _evaluate_reports(results, config)
    if config.format == "json":
        body = rpt.evaluation_json(reports, config.normalize)
    elif config.format == "csv":
        body = rpt.evaluation_csv(reports, config.normalize)
    else:
        body = rpt.comparison_text(reports, config.normalize)
    write_output(body, config, "evaluate")
    return EXIT_OK


@cli.command()
@run_options
@click.pass_context
def generate(ctx: click.Context, verbose: bool, **params) -> int:
    """Generate a question bank from one ontology."""
    config = build_run_config(ctx, params)
    if len(config.input_paths) != 1:
        raise click.UsageError("generate takes exactly one input ontology", ctx)
    if not config.strategies:
        raise click.UsageError("no strategies selected", ctx)
    (result,) = load_all(config, verbose)
    questions = generate_all(result.kb, config.qgen_config())
    if config.format == "json":
        body = rpt.questions_jsonl(questions)
    elif config.format == "csv":
        body = rpt.questions_csv(questions)
    else:
        body = rpt.questions_text(questions)
    summary = rpt.strategy_summary(questions, ontology_id(config.input_paths[0]),
                                   count_by_strategy(questions))
    write_output(body, config, "generate")
    click.echo(summary, nl=False, err=not config.output_path)
    return EXIT_OK


@cli.command()
@run_options
@click.pass_context
def compare(ctx: click.Context, verbose: bool, **params) -> int:
    """Side-by-side metric table (raw and normalised) for two or more ontologies."""
    config = build_run_config(ctx, params)
    if len(config.input_paths) < 2:
        raise click.UsageError("compare needs at least two input ontologies", ctx)
    results = load_all(config, verbose)
    reports = _evaluate_reports(results, config)
    if config.format == "csv":
        body = rpt.comparison_csv(reports, normalize=True)
    elif config.format == "json":
        body = rpt.comparison_json(reports, normalize=True)
    else:
        body = rpt.comparison_text(reports, normalize=True)
    write_output(body, config, "compare")
    return EXIT_OK


def parse_run_config(command: str, args: Sequence[str]) -> RunConfig:
    """Parse subcommand arguments into a RunConfig without running anything."""
    cmd = cli.commands[command]
    ctx = cmd.make_context(command, list(args))
    params = dict(ctx.params)
    params.pop("verbose", None)
    return build_run_config(ctx, params)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="ontoaqg",
                      standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
