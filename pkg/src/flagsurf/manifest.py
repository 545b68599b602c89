"""JSON manifests describing a complete-intersection problem.

    {
      "ambient": "A1xA4/P{1,2}",            # or {"type": "A1xA4", "delta_p": [1, 2]}
      "hypersurfaces": [[0, 2]],            # divisor coefficients, ordered by Delta_P
      "mode": "deformation",                # or "equivalence"
      "weights": ["1", "5/2"],              # Kaehler weights, optional
      "descendant_table": {"2": {"f": 1, "s": 4}}   # or a path relative to the manifest
    }
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .ci_analyzer import CIProblem, Mode
from .descendants import DescendantTableError, load_descendant_table, parse_descendant_table
from .flagvariety import FlagSpecError, FlagVariety, parse_flag

__all__ = ["LoadedManifest", "ManifestError", "load_manifest", "parse_fraction", "problem_from_manifest"]

_KNOWN_KEYS = {"ambient", "hypersurfaces", "mode", "weights", "descendant_table"}


class ManifestError(ValueError):
    """Carries a machine-readable ``code``: E_IO, E_PARSE or E_VALIDATION."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class LoadedManifest:
    problem: CIProblem
    digest: str
    raw: Mapping[str, Any]


def parse_fraction(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational number: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"rationals must be integers or 'a/b' strings, got {text!r}")


def _ambient(value) -> FlagVariety:
    if isinstance(value, str):
        return parse_flag(value)
    if isinstance(value, Mapping) and "type" in value and "delta_p" in value:
        delta = value["delta_p"]
        if not isinstance(delta, list) or not all(isinstance(i, int) for i in delta):
            raise ManifestError("E_VALIDATION", "ambient.delta_p must be a list of integers")
        return parse_flag(f"{value['type']}/P{{{','.join(str(i) for i in delta)}}}")
    raise ManifestError("E_VALIDATION", "ambient must be a string like 'A4/P{1}' or {type, delta_p}")


def problem_from_manifest(
    data: Mapping[str, Any],
    base_dir: Path | None = None,
    *,
    mode: str | None = None,
    weights=None,
    table_path: str | Path | None = None,
) -> CIProblem:
    """Build a CIProblem; keyword arguments override the manifest's own fields."""
    if not isinstance(data, Mapping):
        raise ManifestError("E_VALIDATION", "manifest must be a JSON object")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise ManifestError("E_VALIDATION", f"unknown manifest fields: {sorted(unknown)}")
    if "ambient" not in data:
        raise ManifestError("E_VALIDATION", "manifest has no 'ambient'")
    try:
        flag = _ambient(data["ambient"])
    except FlagSpecError as exc:
        raise ManifestError("E_PARSE", f"ambient: {exc}") from None

    hyps = data.get("hypersurfaces", [])
    if not isinstance(hyps, list) or not all(
        isinstance(h, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in h) for h in hyps
    ):
        raise ManifestError("E_VALIDATION", "hypersurfaces must be a list of integer coefficient lists")

    mode = mode or data.get("mode", "deformation")
    try:
        mode = Mode(str(mode).lower())
    except ValueError:
        raise ManifestError("E_VALIDATION", f"mode must be 'equivalence' or 'deformation', got {mode!r}") from None

    raw_weights = weights if weights is not None else data.get("weights")
    w = None
    if raw_weights is not None:
        if not isinstance(raw_weights, (list, tuple)):
            raise ManifestError("E_VALIDATION", "weights must be a list")
        try:
            w = [parse_fraction(x) for x in raw_weights]
        except (ValueError, ZeroDivisionError) as exc:
            raise ManifestError("E_PARSE", f"weights: {exc}") from None

    try:
        table = None
        if table_path is not None:
            table = load_descendant_table(table_path, flag)
        elif "descendant_table" in data:
            value = data["descendant_table"]
            if isinstance(value, str):
                path = Path(value)
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                table = load_descendant_table(path, flag)
            else:
                table = parse_descendant_table(value, flag)
        return CIProblem.build(flag, hyps, mode=mode, weights=w, table=table)
    except OSError as exc:
        raise ManifestError("E_IO", f"descendant table: {exc}") from None
    except DescendantTableError as exc:
        raise ManifestError("E_VALIDATION", f"descendant table: {exc}") from None


def load_manifest(path: str | Path, **overrides) -> LoadedManifest:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ManifestError("E_IO", f"cannot read manifest: {exc}") from None
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ManifestError("E_PARSE", f"{path}: not valid JSON ({exc})") from None
    problem = problem_from_manifest(data, path.parent, **overrides)
    return LoadedManifest(problem, hashlib.sha256(raw).hexdigest(), data)
