#!/usr/bin/env python3
"""Run every corpus fixture through the full preset stack and check oracles.

Prints one row per fixture (accesses, base violations, survivors per generic
layer, remaining) and diffs the measured numbers against the fixture's stored
oracle.  Exits nonzero if any fixture disagrees.
"""

import argparse
import json
import sys
from pathlib import Path

try:
    import demeterlint  # noqa: F401
except ImportError:
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from demeterlint.adapt import Adapter, attribute_waterfall, load_config
from demeterlint.codemodel import ResolutionMode, TypeTable, load_stubs
from demeterlint.demeter import detect
from demeterlint.javafront import bind_and_extract, build_type_table, parse_unit
from demeterlint.presets import STACK

REPO = Path(__file__).resolve().parents[1]


def analyze_case(case_dir: Path, stub_dir: Path):
    fixture = json.loads((case_dir / "fixture.json").read_text())
    units = [
        parse_unit((case_dir / name).read_text(), name)
        for name in fixture["sources"]
    ]
    stubs = TypeTable()
    for name in fixture["stubs"]:
        stubs = stubs.merge(load_stubs(stub_dir / name))
    table = build_type_table(units, stubs, ResolutionMode.STRICT)
    executables = bind_and_extract(units, table, ResolutionMode.STRICT)
    config = load_config([str(p) for p in STACK])
    adapter = Adapter(executables, table, config)
    violations = [v for ex in executables for v in detect(ex, adapter.base[ex.id])]
    verdicts = adapter.classify(violations)
    return fixture, executables, config, violations, verdicts


def survivors(verdicts, layers):
    out = []
    for k in layers:
        out.append(
            sum(
                1
                for v in verdicts
                if v.outcome == "remaining" or v.layer > k
            )
        )
    return out


def check_case(name, fixture, executables, config, violations, verdicts):
    oracle = fixture["oracle"]
    problems = []
    accesses = sum(len(ex.body_accesses) for ex in executables)
    if accesses != oracle["access_sites"]:
        problems.append(f"accesses {accesses} != {oracle['access_sites']}")
    if len(violations) != oracle["base_violations"]:
        problems.append(f"base {len(violations)} != {oracle['base_violations']}")

    generic_layers = [k for k in config.layer_indices if k <= 5]
    seq = survivors(verdicts, generic_layers)
    if seq != oracle["generic_after_layer"]:
        problems.append(f"cascade {seq} != {oracle['generic_after_layer']}")

    waterfall = attribute_waterfall(verdicts, config)
    by_rule = {e.rule_id: e.count for e in waterfall.per_rule if e.count}
    if by_rule != oracle["silenced_by_rule"]:
        problems.append(f"rules {by_rule} != {oracle['silenced_by_rule']}")
    if waterfall.remaining != oracle["remaining"]:
        problems.append(f"remaining {waterfall.remaining} != {oracle['remaining']}")

    row = (
        f"{name:10s} accesses {accesses:3d}  base {len(violations):3d}  "
        f"after {'/'.join(str(n) for n in seq):17s}  remaining {waterfall.remaining}"
    )
    return row, problems


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--corpus", type=Path, default=REPO / "tests" / "fixtures" / "corpus"
    )
    parser.add_argument(
        "--stubs", type=Path, default=REPO / "tests" / "fixtures" / "stubs"
    )
    args = parser.parse_args(argv)

    failures = 0
    for case_dir in sorted(args.corpus.iterdir()):
        if not (case_dir / "fixture.json").exists():
            continue
        parts = analyze_case(case_dir, args.stubs)
        row, problems = check_case(case_dir.name, *parts)
        print(f"{row}  {'OK' if not problems else 'DIFF'}")
        for p in problems:
            print(f"           {p}")
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
