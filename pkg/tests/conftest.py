"""Shared fixtures: the example corpus, its stub documents, and oracles."""

import json
from dataclasses import dataclass
from pathlib import Path

import pytest

from demeterlint.codemodel import ResolutionMode, TypeTable, load_stubs
from demeterlint.javafront import bind_and_extract, build_type_table, parse_unit

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
STUBS = FIXTURES / "stubs"

#: Stub documents each corpus case needs beyond the shared jdk + jhotdraw
#: pair.  A case must not load a stub for a type it analyzes from source.
EXTRA_STUBS = {
    "listing6": ["drawapplication.json"],
    "listing8": ["trianglefigure.json"],
    "listing9": ["standarddrawingview.json"],
    "listing15": ["pertfigure.json"],
}


@dataclass
class CorpusCase:
    name: str
    java_files: list[Path]
    stub_files: list[Path]
    expected: dict

    @property
    def source_args(self) -> list[str]:
        return [str(p) for p in self.java_files]

    @property
    def stub_args(self) -> list[str]:
        return [str(p) for p in self.stub_files]


def load_case(name: str) -> CorpusCase:
    case_dir = CORPUS / name
    expected = json.loads((case_dir / "fixture.json").read_text())
    stub_names = ["jdk.json", "jhotdraw.json"] + EXTRA_STUBS.get(name, [])
    return CorpusCase(
        name=name,
        java_files=sorted(case_dir.glob("*.java")),
        stub_files=[STUBS / s for s in stub_names],
        expected=expected,
    )


def corpus_names() -> list[str]:
    return sorted(p.name for p in CORPUS.iterdir() if (p / "fixture.json").exists())


def build_front(
    sources: list[tuple[str, str]],
    stub_paths: list[Path] = (),
    mode: ResolutionMode = ResolutionMode.STRICT,
):
    """Parse, declare, and extract: the front half of the pipeline."""
    units = [parse_unit(text, name) for name, text in sources]
    stubs = TypeTable()
    for p in stub_paths:
        stubs = stubs.merge(load_stubs(p))
    table = build_type_table(units, stubs, mode)
    return table, bind_and_extract(units, table, mode)


def build_case_front(case: "CorpusCase", mode: ResolutionMode = ResolutionMode.STRICT):
    sources = [(p.name, p.read_text()) for p in case.java_files]
    return build_front(sources, case.stub_files, mode)


@pytest.fixture(scope="session")
def stub_paths() -> list[Path]:
    return sorted(STUBS.glob("*.json"))


@pytest.fixture(scope="session")
def corpus() -> dict[str, CorpusCase]:
    return {name: load_case(name) for name in corpus_names()}


@pytest.fixture(params=corpus_names())
def corpus_case(request) -> CorpusCase:
    return load_case(request.param)
