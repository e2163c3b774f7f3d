"""Bundled rule catalogs.

``GENERIC`` holds the six framework-independent layers (data classes,
globally accessible members, collections, constituting objects, java.lang,
creational idioms).  ``JHOTDRAW`` adds the two project-specific layers used
for the JHotDraw 5.1 study (accepted design decisions, then grants still
under review).  ``STACK`` is the full eight-layer order they were written
for; pass the paths to ``adapt.load_config`` or repeat ``--config`` on the
command line.
"""

from pathlib import Path

_HERE = Path(__file__).resolve().parent

GENERIC: tuple[Path, ...] = tuple(sorted(_HERE.glob("generic-*.json")))
JHOTDRAW: tuple[Path, ...] = tuple(sorted(_HERE.glob("jhotdraw-*.json")))
STACK: tuple[Path, ...] = GENERIC + JHOTDRAW

__all__ = ["GENERIC", "JHOTDRAW", "STACK"]
