"""File formats: the manifest / params.csv / curves.csv triplet.

Both CSV files are comma-separated, decimal point, UTF-8, LF line endings.
``params.csv`` starts with a header row of parameter names; ``curves.csv``
starts with a header row of time values.  Every float is written with its
shortest round-trip decimal representation, so export -> load is the
identity and documents derived from the files are byte-deterministic.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .ensemble import AugmentedEnsemble, validate
from .errors import (
    MissingFileError,
    ParseError,
    ShapeMismatchError,
    TimeAxisError,
    TooFewMembersError,
    ValidationFailedError,
)


def fmt_float(x) -> str:
    """Shortest decimal string that round-trips to the same float64."""
    return repr(float(x))


def _parse_cell(text: str, path: Path, row, col: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(
            f"{path.name}: non-numeric value {text!r} at row {row}, column {col}"
        ) from None
    if not math.isfinite(value):
        raise ParseError(
            f"{path.name}: non-finite value {text!r} at row {row}, column {col}"
        )
    return value


def _read_csv(path: Path) -> tuple[list[str], list[list[float]]]:
    if not path.is_file():
        raise MissingFileError(f"no such file: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    lines = [line for line in lines if line.strip() != ""]
    if not lines:
        raise ParseError(f"{path.name}: empty file")
    header = [cell.strip() for cell in lines[0].split(",")]
    rows = []
    for r, line in enumerate(lines[1:]):
        cells = line.split(",")
        rows.append([_parse_cell(cell.strip(), path, r, c) for c, cell in enumerate(cells)])
    return header, rows


def load_ensemble(manifest_path) -> AugmentedEnsemble:
    """Load and validate the ensemble referenced by a manifest file.

    The manifest is JSON ``{"name": str, "params": path, "curves": path}``
    with paths relative to the manifest's directory.  Member order is file
    row order.  Raises the most specific structural error first
    (:class:`MissingFileError`, :class:`ParseError`, :class:`ShapeMismatchError`,
    :class:`TimeAxisError`, :class:`TooFewMembersError`) and
    :class:`ValidationFailedError` for anything the validator finds beyond
    those checks.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise MissingFileError(f"no such manifest: {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{manifest_path.name}: invalid JSON ({exc})") from None
    for key in ("name", "params", "curves"):
        if key not in manifest:
            raise ParseError(f"{manifest_path.name}: missing key {key!r}")

    base = manifest_path.parent
    param_names, param_rows = _read_csv(base / manifest["params"])
    time_header, curve_rows = _read_csv(base / manifest["curves"])

    curves_path = base / manifest["curves"]
    time = [
        _parse_cell(cell, curves_path, "header", c) for c, cell in enumerate(time_header)
    ]
    if any(b <= a for a, b in zip(time, time[1:])) or len(time) < 2:
        raise TimeAxisError(f"{curves_path.name}: time header is not strictly increasing")

    t = len(time)
    for r, row in enumerate(curve_rows):
        if len(row) != t:
            raise ShapeMismatchError(
                f"{curves_path.name}: row {r} has {len(row)} values, expected {t}"
            )
    n = len(param_names)
    for r, row in enumerate(param_rows):
        if len(row) != n:
            raise ShapeMismatchError(
                f"params row {r} has {len(row)} values, expected {n}"
            )
    if len(param_rows) != len(curve_rows):
        raise ShapeMismatchError(
            f"parameter table has {len(param_rows)} rows, curve file has {len(curve_rows)}"
        )
    if len(curve_rows) < 3:
        raise TooFewMembersError(f"need at least 3 members, got {len(curve_rows)}")

    ensemble = AugmentedEnsemble(
        name=str(manifest["name"]),
        time=np.array(time),
        curves=np.array(curve_rows),
        param_names=tuple(param_names),
        params=np.array(param_rows),
    )
    report = validate(ensemble)
    if report:
        raise ValidationFailedError(report)
    return ensemble


def _write_csv(path: Path, header: list[str], rows: np.ndarray):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt_float(x) for x in row) + "\n")


def export_ensemble(ensemble: AugmentedEnsemble, out_dir) -> Path:
    """Write the manifest / params.csv / curves.csv triplet; returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(out_dir / "params.csv", list(ensemble.param_names), ensemble.params)
    _write_csv(out_dir / "curves.csv", [fmt_float(t) for t in ensemble.time], ensemble.curves)
    manifest = {"name": ensemble.name, "params": "params.csv", "curves": "curves.csv"}
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return manifest_path


def content_hash(ensemble: AugmentedEnsemble) -> str:
    """Deterministic sha256 fingerprint of the ensemble's full content."""
    h = hashlib.sha256()
    h.update(ensemble.name.encode("utf-8"))
    h.update(b"\x00time:")
    h.update(",".join(fmt_float(x) for x in ensemble.time).encode())
    h.update(b"\x00params:")
    h.update(",".join(ensemble.param_names).encode("utf-8"))
    for row in ensemble.params:
        h.update(b"\n")
        h.update(",".join(fmt_float(x) for x in row).encode())
    h.update(b"\x00curves:")
    for row in ensemble.curves:
        h.update(b"\n")
        h.update(",".join(fmt_float(x) for x in row).encode())
    return "sha256:" + h.hexdigest()
