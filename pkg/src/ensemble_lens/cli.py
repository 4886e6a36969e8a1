"""Command line interface: generate, analyze, sensitivity, serve.

Exit codes: 0 success; 2 invalid arguments (including missing input files
and unknown parameters); 3 I/O failure while writing; 4 degenerate
ensemble; 5 ensemble validation failure (report printed); 6 selection too
small for a sensitivity report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .analysis import AnalysisConfig, document_bytes, result_from_document, run_analysis
from .errors import (
    DegenerateEnsembleError,
    EnsembleLensError,
    InvalidCoverageError,
    MissingFileError,
    ParseError,
    SelectionTooSmallError,
    ShapeMismatchError,
    TimeAxisError,
    TooFewMembersError,
    UnknownParamError,
    ValidationFailedError,
)
from .generators import GENERATORS, generate
from .io import content_hash, export_ensemble, load_ensemble
from .selection import evaluate_provenance, steps_from_dict
from .sensitivity import concentration_scores, selection_bracket_overlays

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4
EXIT_VALIDATION = 5
EXIT_SELECTION = 6

LOAD_ERRORS = (ParseError, ShapeMismatchError, TimeAxisError,
               TooFewMembersError, ValidationFailedError)


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"grid must be NX,NY, got {text!r}")
    return int(parts[0]), int(parts[1])


def cmd_generate(args) -> int:
    try:
        ensemble = generate(args.kind, args.n, args.seed, args.t_samples)
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        manifest = export_ensemble(ensemble, args.out)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write to {args.out}: {exc}")
    print(f"wrote {manifest.parent / 'params.csv'}")
    print(f"wrote {manifest.parent / 'curves.csv'}")
    print(f"wrote {manifest}")
    return 0


def _load(manifest: str):
    """Load an ensemble, translating errors to exit codes via SystemExit."""
    try:
        return load_ensemble(manifest)
    except MissingFileError as exc:
        raise SystemExit(_fail(EXIT_USAGE, str(exc)))
    except ValidationFailedError as exc:
        print("validation report:", file=sys.stderr)
        for violation in exc.report:
            print(f"  - {violation}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)
    except LOAD_ERRORS as exc:
        raise SystemExit(_fail(EXIT_VALIDATION, str(exc)))


def cmd_analyze(args) -> int:
    try:
        nx, ny = _parse_grid(args.grid)
        config = AnalysisConfig(nx=nx, ny=ny, outer_coverage=args.outer,
                                bandwidth=args.bandwidth)
    except (ValueError, InvalidCoverageError) as exc:
        return _fail(EXIT_USAGE, str(exc))

    ensemble = _load(args.manifest)
    try:
        result = run_analysis(ensemble, config)
    except DegenerateEnsembleError as exc:
        return _fail(EXIT_DEGENERATE, str(exc))

    try:
        Path(args.out).write_bytes(document_bytes(result))
        print(f"wrote {args.out}")
        if args.svg:
            from .plotting import save_boxplot

            save_boxplot(result, args.svg)
            print(f"wrote {args.svg}")
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    print(f"explained variance: {result.boxplot.explained_variance:.6f}")
    print(f"clusters (p=0.5): {result.inner_set.region_count}")
    print(f"outliers (p={args.outer:g}): {len(result.outliers)}")
    return 0


def cmd_sensitivity(args) -> int:
    ensemble = _load(args.manifest)
    for path in (args.analysis, args.selection):
        if not Path(path).is_file():
            return _fail(EXIT_USAGE, f"no such file: {path}")
    try:
        doc = json.loads(Path(args.analysis).read_text(encoding="utf-8"))
        result = result_from_document(doc)
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"cannot read analysis document: {exc}")
    if result.ensemble_hash != content_hash(ensemble):
        return _fail(EXIT_USAGE, "analysis document was computed from a different ensemble")

    try:
        steps = steps_from_dict(json.loads(Path(args.selection).read_text(encoding="utf-8")))
    except (json.JSONDecodeError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"bad selection file: {exc}")

    try:
        sel = evaluate_provenance(ensemble, result, steps)
        report = concentration_scores(ensemble, sel)
    except (UnknownParamError, EnsembleLensError) as exc:
        if isinstance(exc, SelectionTooSmallError):
            return _fail(EXIT_SELECTION, str(exc))
        return _fail(EXIT_USAGE, str(exc))

    brackets = selection_bracket_overlays(ensemble, sel)
    rank_of = {j: r for r, j in enumerate(report.ranking, start=1)}
    print(f"selection: {len(sel)} of {ensemble.n_members} members")
    print(f"{'parameter':<16}{'score':>12}  rank")
    for j, name in enumerate(report.param_names):
        score = report.scores[j]
        score_text = f"{score:.6f}" if score is not None else "undefined"
        rank_text = str(rank_of[j]) if j in rank_of else "-"
        print(f"{name:<16}{score_text:>12}  {rank_text}")

    payload = {
        "selection": {"indices": list(sel.indices), "size": len(sel)},
        "scores": {
            name: report.scores[j] for j, name in enumerate(report.param_names)
        },
        "ranking": list(report.ranked_names()),
        "brackets": {
            name: [float(brackets[j, 0]), float(brackets[j, 1])]
            for j, name in enumerate(report.param_names)
        },
    }
    try:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    ensemble = _load(args.manifest)
    app = create_app(ensemble, ui_dir=args_ui_dir())
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def args_ui_dir() -> Path | None:
    env = os.environ.get("ENSEMBLE_LENS_UI")
    if env and Path(env).is_dir():
        return Path(env)
    local = Path("frontend") / "dist"
    return local if local.is_dir() else None


def _default_port() -> int:
    env = os.environ.get("ENSEMBLE_LENS_PORT")
    return int(env) if env else 8000


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ensemble-lens",
        description="PCA-plane functional boxplots and visual sensitivity "
                    "analysis for augmented ensembles of curves",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic benchmark ensemble")
    gen.add_argument("kind", choices=sorted(GENERATORS))
    gen.add_argument("--n", type=int, default=400, help="member count (default 400)")
    gen.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    gen.add_argument("--t-samples", type=int, default=100,
                     help="time samples for oscillating-tangents (default 100)")
    gen.add_argument("--out", required=True, help="output directory")
    gen.set_defaults(func=cmd_generate)

    ana = sub.add_parser("analyze", help="run the analysis pipeline on an ensemble")
    ana.add_argument("--manifest", required=True)
    ana.add_argument("--outer", type=float, default=0.95,
                     help="outer HDR coverage in (0.5, 1), default 0.95")
    ana.add_argument("--grid", default="100,100", help="grid as NX,NY (default 100,100)")
    ana.add_argument("--bandwidth", type=float, default=None,
                     help="KDE bandwidth override (default: Silverman)")
    ana.add_argument("--out", default="analysis.json")
    ana.add_argument("--svg", default=None,
                     help="also render the functional boxplot to this file")
    ana.set_defaults(func=cmd_analyze)

    sen = sub.add_parser("sensitivity", help="score parameters against a selection")
    sen.add_argument("--manifest", required=True)
    sen.add_argument("--analysis", required=True, help="analysis.json from analyze")
    sen.add_argument("--selection", required=True, help="selection.json with predicates")
    sen.add_argument("--out", default="sensitivity.json")
    sen.set_defaults(func=cmd_sensitivity)

    srv = sub.add_parser("serve", help="HTTP analysis service and explorer UI")
    srv.add_argument("--manifest", required=True)
    srv.add_argument("--port", type=int, default=_default_port(),
                     help="port (default: $ENSEMBLE_LENS_PORT or 8000)")
    srv.add_argument("--host", default="127.0.0.1")
    srv.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except EnsembleLensError as exc:
        return _fail(EXIT_USAGE, str(exc))


if __name__ == "__main__":
    sys.exit(main())
