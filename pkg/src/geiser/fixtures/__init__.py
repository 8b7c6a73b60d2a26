"""Curves used by the acceptance checks, stored in the polynomial grammar."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..exact import HomPoly3, parse_hompoly

NAMES = (
    "nodal_cubic",
    "line_x",
    "flex_line",
    "conic_51",
    "six_tangent_conic",
    "pencil_18",
    "net_17",
)


def fixture_text(name: str, directory: str | Path | None = None) -> str:
    if directory is None:
        raw = resources.files(__name__).joinpath(f"{name}.txt").read_text()
    else:
        raw = (Path(directory) / f"{name}.txt").read_text()
    lines = [ln.strip() for ln in raw.splitlines()]
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    return " ".join(body)


def load_fixture(name: str, directory: str | Path | None = None) -> HomPoly3:
    return parse_hompoly(fixture_text(name, directory))
