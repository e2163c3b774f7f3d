"""Command line front end: the only process boundary.

Exit codes: 0 when remaining candidate true positives fit under the
threshold, 1 when they exceed it, 2 when anything failed to load (each such
failure printed to standard error as one greppable ``E-XXX:`` line).
Standard output carries nothing but the requested artifact.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .adapt import Adapter, Verdict, load_config, config_warnings
from .codemodel import LoadError, ResolutionMode, TypeTable, load_stubs
from .demeter import FriendSet, detect
from .javafront import SourceError, bind_and_extract, build_type_table, parse_unit
from .report import build_report, pct, render, render_chain, to_json_doc

__all__ = ["RunOptions", "main", "run"]


@dataclass
class RunOptions:
    source_paths: tuple[Path, ...]
    stub_paths: tuple[Path, ...] = ()
    config_paths: tuple[Path, ...] = ()
    mode: str = "analyze"  # analyze | explain | stats
    site: str = ""  # explain target
    format: str = "text"  # json | text | table
    resolution: ResolutionMode = ResolutionMode.STRICT
    fail_threshold: int = 0
    jobs: int = 1


def _collect_sources(paths: Sequence[Path]) -> list[Path]:
    files: list[Path] = []
    for p in paths:
        if p.is_dir():
            files.extend(sorted(p.rglob("*.java")))
        else:
            files.append(p)
    return files


def _diag(err_stream, exc: Exception) -> None:
    if isinstance(exc, SourceError):
        err_stream.write(f"{exc}\n")
    elif isinstance(exc, LoadError):
        err_stream.write(f"{exc.code}: {exc.message}\n")
    else:  # pragma: no cover - guarded by caller
        err_stream.write(f"E-CONFIG: {exc}\n")


class _Loaded:
    """Everything run() needs after the load phase succeeded."""

    def __init__(self, table, executables, config, inputs):
        self.table = table
        self.executables = executables
        self.config = config
        self.inputs = inputs


def _load(options: RunOptions, err) -> _Loaded:
    inputs: list[tuple[str, str, str]] = []

    stubs = TypeTable()
    for p in options.stub_paths:
        stubs = stubs.merge(load_stubs(p))
        inputs.append(("stub", str(p), Path(p).read_text(encoding="utf-8")))

    config = load_config(list(options.config_paths))
    for p in options.config_paths:
        inputs.append(("config", str(p), Path(p).read_text(encoding="utf-8")))

    units = []
    for path in _collect_sources(options.source_paths):
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise LoadError("E-PARSE", f"cannot read {path}: {exc}") from exc
        inputs.append(("source", str(path), text))
        units.append(parse_unit(text, str(path)))

    table = build_type_table(units, stubs, options.resolution)
    for warning in config_warnings(config, table):
        err.write(f"W-CONFIG: {warning}\n")
    executables = bind_and_extract(units, table, options.resolution)
    return _Loaded(table, executables, config, inputs)


def _tp_count(verdicts: Sequence[Verdict]) -> int:
    return sum(
        1
        for v in verdicts
        if v.outcome == "remaining" and v.status == "candidate-true-positive"
    )


def _seed_lines(fs: FriendSet) -> list[str]:
    return [f"  {t.name}  [{', '.join(roles)}]" for t, roles in fs.seeds]


def _explain(loaded: _Loaded, adapter: Adapter, verdicts, site_id: str, out) -> int:
    by_site = {v.violation.site.site_id: v for v in verdicts}
    site = None
    owner = None
    for ex in loaded.executables:
        for s in ex.body_accesses:
            if s.site_id == site_id:
                site, owner = s, ex
    if site is None:
        raise LoadError("E-CONFIG", f"unknown site id '{site_id}'")

    lines = [
        f"site: {site_id}",
        f"access: {site.access_kind} .{site.member.name}",
        f"receiver: {site.receiver.static_type.name} ({site.receiver.form})",
        f"chain: {render_chain(site)}",
        f"executable: {owner.id}",
        "base seeds:",
    ]
    base = adapter.base[owner.id]
    lines.extend(_seed_lines(base))

    prev = base
    for k in loaded.config.layer_indices:
        eff = adapter.effective(owner.id, k)
        prev_map = dict(prev.seeds)
        added = []
        for t, roles in eff.seeds:
            new_roles = [r for r in roles if r not in prev_map.get(t, ())]
            if new_roles:
                added.append(f"    +{t.name}  [{', '.join(new_roles)}]")
        new_exemptions = [
            e for e in eff.member_exemptions if e not in prev.member_exemptions
        ]
        added.extend(
            f"    +exempt {e.predicate}"
            + (f" {e.type_name}.{e.name_glob}" if e.predicate == "pattern" else "")
            + f"  [{e.rule_id}]"
            for e in new_exemptions
        )
        header = f"layer {k} ({loaded.config.name_of(k)}):"
        lines.append(header if added else f"{header} no change")
        lines.extend(added)
        prev = eff

    verdict = by_site.get(site_id)
    if verdict is None:
        lines.append("verdict: no violation (receiver is never checked or is a friend)")
    elif verdict.outcome == "silenced":
        also = f" (also: {', '.join(verdict.also_matched)})" if verdict.also_matched else ""
        lines.append(f"verdict: silenced at layer {verdict.layer} by {verdict.rule_id}{also}")
    else:
        hint = f" (hint: {verdict.hint})" if verdict.hint else ""
        lines.append(f"verdict: remaining: {verdict.status}{hint}")
    out.write(("\n".join(lines) + "\n").encode("utf-8"))
    return 0


def _stats(report, fmt: str, out) -> None:
    if fmt == "json":
        doc = to_json_doc(report)
        del doc["rows"], doc["verdicts"]
        out.write((json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8"))
        return
    lines = [
        f"accesses: {report.accesses}",
        "potential violations: {} ({} % of accesses)".format(
            report.potential_violations, pct(report.potential_violations, report.accesses)
        ),
        f"remaining: {report.remaining}",
    ]
    for (k, n), name in zip(report.silenced_per_layer, report.layer_names):
        lines.append(f"layer {k} ({name}): {n}")
    out.write(("\n".join(lines) + "\n").encode("utf-8"))


def run(options: RunOptions, out=None, err=None) -> int:
    """Execute one invocation; returns the process exit code."""
    out = out if out is not None else sys.stdout.buffer
    err = err if err is not None else sys.stderr
    try:
        loaded = _load(options, err)
    except (SourceError, LoadError) as exc:
        _diag(err, exc)
        return 2

    adapter = Adapter(loaded.executables, loaded.table, loaded.config)
    violations = [
        v for ex in loaded.executables for v in detect(ex, adapter.base[ex.id])
    ]
    verdicts = adapter.classify(violations, jobs=options.jobs)

    if options.mode == "explain":
        try:
            return _explain(loaded, adapter, verdicts, options.site, out)
        except LoadError as exc:
            _diag(err, exc)
            return 2

    report = build_report(
        loaded.executables, verdicts, loaded.config, inputs=loaded.inputs
    )
    if options.mode == "stats":
        _stats(report, options.format, out)
        return 0

    out.write(render(report, options.format))
    return 0 if _tp_count(verdicts) <= options.fail_threshold else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="demeterlint",
        description="Strict class-form Law of Demeter checker with layered, "
        "attributable adaptation rules.",
    )
    parser.add_argument("sources", nargs="+", type=Path, help="source files or directories")
    parser.add_argument("--stubs", action="append", default=[], type=Path,
                        help="stub document (repeatable)")
    parser.add_argument("--config", action="append", default=[], type=Path,
                        help="rule document; repetition order defines layer order")
    parser.add_argument("--format", choices=("json", "text", "table"), default="text")
    parser.add_argument("--mode", choices=("analyze", "explain", "stats"),
                        default="analyze")
    parser.add_argument("--site", default="", help="site id to explain")
    strictness = parser.add_mutually_exclusive_group()
    strictness.add_argument("--strict", dest="resolution", action="store_const",
                            const=ResolutionMode.STRICT, default=ResolutionMode.STRICT,
                            help="unresolved names are errors (default)")
    strictness.add_argument("--lenient", dest="resolution", action="store_const",
                            const=ResolutionMode.LENIENT,
                            help="unresolved names become unknown types")
    parser.add_argument("--fail-threshold", type=int, default=0, metavar="N",
                        help="max candidate true positives before exit 1")
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="classification worker threads")
    parser.add_argument("--version", action="version", version=f"demeterlint {__version__}")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.mode == "explain" and not args.site:
        print("E-CONFIG: --mode explain requires --site", file=sys.stderr)
        return 2
    options = RunOptions(
        source_paths=tuple(args.sources),
        stub_paths=tuple(args.stubs),
        config_paths=tuple(args.config),
        mode=args.mode,
        site=args.site,
        format=args.format,
        resolution=args.resolution,
        fail_threshold=args.fail_threshold,
        jobs=args.jobs,
    )
    return run(options)


if __name__ == "__main__":
    sys.exit(main())
