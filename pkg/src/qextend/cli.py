"""Command-line interface: ``qextend <subcommand> ...``.

Exit codes: 0 success, 1 domain or validation error (one ``error:`` line on
stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence

from qextend import data
from qextend.errors import DomainError, QextendError
from qextend.extensibility import compute_envelope, default_envelope_range, system_report, what_if
from qextend.model_io import (
    PlatformDocument,
    RentReport,
    ReportFormat,
    emit_envelope_svg,
    emit_report,
    emit_series_csv,
    envelope_rows,
    parse_platform,
    parse_series_csv,
    parse_thresholds,
)
from qextend.rent import StackLayer, generate_terminal_series, min_gate_layers_2d, parse_model_spec
from qextend.volume import VolumePoint, quantum_volume, regime_result


class _InputError(QextendError):
    pass


def _read_text(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    if path.startswith(data.BUILTIN_PREFIX):
        return data.read_builtin(path[len(data.BUILTIN_PREFIX):])
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise _InputError(f"file not found: {path}") from None
    except IsADirectoryError:
        raise _InputError(f"is a directory: {path}") from None
    except UnicodeDecodeError as exc:
        raise _InputError(f"{path}: not valid UTF-8 ({exc.reason})") from None


def _write_text(path: Optional[str], text: str) -> None:
    """Write to ``path`` via a temporary file and rename, or to stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    if not directory.is_dir():
        raise _InputError(f"output directory not found: {directory}")
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_platform(path: Optional[str]) -> PlatformDocument:
    text = _read_text(path)
    try:
        return parse_platform(text)
    except QextendError as exc:
        raise _InputError(f"{path or '<stdin>'}: {exc}") from None


def _save_figure(fig_path: Optional[str], build) -> None:
    if not fig_path:
        return
    from qextend.plotting import save_figure

    save_figure(build(), fig_path)


def _parse_overrides(items: Sequence[str]) -> dict[str, dict[str, float]]:
    overrides: dict[str, dict[str, float]] = {}
    for chunk in items:
        for item in chunk.split(","):
            item = item.strip()
            if not item:
                continue
            lhs, eq, value = item.partition("=")
            name, dot, field = lhs.strip().rpartition(".")
            if not eq or not dot or not name or not field:
                raise DomainError(f"cannot parse override {item!r}; expected name.field=value")
            try:
                number = float(value)
            except ValueError:
                raise DomainError(f"override {item!r}: {value!r} is not a number") from None
            fields = overrides.setdefault(name, {})
            if field in fields:
                raise DomainError(f"ambiguous override: {name}.{field} is set more than once")
            fields[field] = number
    if not overrides:
        raise DomainError("no overrides given")
    return overrides


def _g_list(items: Sequence[str]) -> list[int]:
    values = []
    for chunk in items:
        for part in chunk.replace(",", " ").split():
            try:
                number = float(part)
            except ValueError:
                raise DomainError(f"g value {part!r} is not a number") from None
            if not number.is_integer():
                raise DomainError(f"g value {part!r} is not an integer")
            values.append(int(number))
    return values


# ---------------------------------------------------------------------------
# subcommands


def cmd_volume(args: argparse.Namespace) -> None:
    _write_text(args.out, f"{quantum_volume(VolumePoint(args.n_qubits, args.depth))}\n")


def cmd_classify(args: argparse.Namespace) -> None:
    thresholds = parse_thresholds(_read_text(args.thresholds)) if args.thresholds else None
    result = regime_result(VolumePoint(args.n_qubits, args.depth), thresholds)
    _write_text(args.out, emit_report(result, ReportFormat.parse(args.format)))

    def build():
        from qextend.plotting import regime_figure

        return regime_figure(result)

    _save_figure(args.figure, build)


def cmd_rent_fit(args: argparse.Namespace) -> None:
    series = []
    csv_paths = args.csv or []
    layers = args.layer or []
    if csv_paths:
        if not layers and len(csv_paths) == 1:
            layers = ["device"]
        if len(layers) != len(csv_paths):
            raise DomainError(f"give one --layer per --csv ({len(csv_paths)} files, {len(layers)} layers)")
        for path, layer in zip(csv_paths, layers):
            try:
                series.append(parse_series_csv(_read_text(path), StackLayer.parse(layer)))
            except QextendError as exc:
                if isinstance(exc, _InputError):
                    raise
                raise _InputError(f"{path}: {exc}") from None
    if args.platform:
        doc = _load_platform(args.platform)
        embedded = list(doc.terminal_series)
        if doc.architecture is not None:
            embedded += doc.architecture.series()
        if not embedded:
            raise DomainError(f"{args.platform}: no terminal_series or architecture to fit")
        series += embedded
    if not series:
        raise DomainError("nothing to fit; pass --csv FILE --layer L or --platform FILE")
    report = RentReport.from_series(series, args.tolerance)
    _write_text(args.out, emit_report(report, ReportFormat.parse(args.format)))


def cmd_rent_gen(args: argparse.Namespace) -> None:
    model = parse_model_spec(args.model)
    series = generate_terminal_series(model, StackLayer.parse(args.layer), _g_list(args.g_list))
    _write_text(args.out, emit_series_csv(series))


def cmd_layers(args: argparse.Namespace) -> None:
    _write_text(args.out, f"{min_gate_layers_2d(args.g)}\n")


def cmd_analyze(args: argparse.Namespace) -> None:
    doc = _load_platform(args.platform)
    report = system_report(doc.platform)
    _write_text(args.out, emit_report(report, ReportFormat.parse(args.format)))

    def build():
        from qextend.plotting import envelope_figure

        lo, hi = default_envelope_range(doc.platform, report)
        return envelope_figure(compute_envelope(doc.platform, lo, hi, 20), doc.platform)

    _save_figure(args.figure, build)


def cmd_envelope(args: argparse.Namespace) -> None:
    doc = _load_platform(args.platform)
    lo, hi = default_envelope_range(doc.platform)
    lo = args.vq_lo if args.vq_lo is not None else lo
    hi = args.vq_hi if args.vq_hi is not None else hi
    points = compute_envelope(doc.platform, lo, hi, args.samples_per_decade)
    svg = emit_envelope_svg(points, doc.platform)
    table = envelope_rows(points, doc.platform) if args.csv else None
    _write_text(args.out, svg)
    if table is not None:
        _write_text(args.csv, table)

    def build():
        from qextend.plotting import envelope_figure

        return envelope_figure(points, doc.platform)

    _save_figure(args.figure, build)


def cmd_what_if(args: argparse.Namespace) -> None:
    doc = _load_platform(args.platform)
    result = what_if(doc.platform, _parse_overrides(args.set))
    _write_text(args.out, emit_report(result, ReportFormat.parse(args.format)))


def cmd_validate(args: argparse.Namespace) -> None:
    doc = _load_platform(args.platform)
    extras = []
    if doc.thresholds is not None:
        extras.append("thresholds")
    if doc.terminal_series:
        extras.append(f"{len(doc.terminal_series)} terminal series")
    if doc.architecture is not None:
        extras.append(f"architecture with {len(doc.architecture.layers)} layers")
    suffix = f" ({', '.join(extras)})" if extras else ""
    n = len(doc.platform.resources)
    _write_text(args.out, f"ok {doc.platform.name}: {n} resource{'s' if n != 1 else ''}{suffix}\n")


# ---------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qextend",
        description="Rent exponents, quantum volume and extensibility analysis for qubit platforms.",
        epilog=f"Platform files may be given as {data.BUILTIN_PREFIX}NAME for shipped examples: "
        + ", ".join(data.list_builtins()),
    )
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    def out_flag(p: argparse.ArgumentParser, what: str = "report") -> None:
        p.add_argument("--out", "-o", metavar="FILE", help=f"write the {what} to FILE (default: stdout)")

    def platform_flag(p: argparse.ArgumentParser, required: bool = False) -> None:
        p.add_argument("--platform", metavar="FILE", required=required,
                       help=f"platform JSON document ('-' for stdin, {data.BUILTIN_PREFIX}NAME for shipped examples)")

    p = add("volume", cmd_volume, "Print the quantum volume min(N, d)**2.")
    p.add_argument("-N", dest="n_qubits", type=_positive_int, required=True, help="number of qubits")
    p.add_argument("-d", dest="depth", type=_positive_int, required=True, help="circuit depth")
    out_flag(p, "value")

    p = add("classify", cmd_classify, "Classify an (N, d) point into a quantum-volume regime.")
    p.add_argument("-N", dest="n_qubits", type=_positive_int, required=True, help="number of qubits")
    p.add_argument("-d", dest="depth", type=_positive_int, required=True, help="circuit depth")
    p.add_argument("--thresholds", metavar="FILE",
                   help="JSON with classical_sim_bound, simulation_vq, universal_vq (or a platform document)")
    p.add_argument("--format", choices=("txt", "csv", "svg"), default="txt", help="report format")
    p.add_argument("--figure", metavar="FILE", help="also render the regime map with matplotlib")
    out_flag(p)

    p = add("rent-fit", cmd_rent_fit, "Fit Rent exponents T = t*g**p to terminal-count series.")
    p.add_argument("--csv", action="append", metavar="FILE", help="g,T series ('-' for stdin); repeatable")
    p.add_argument("--layer", action="append", metavar="L",
                   help="stack layer of the matching --csv: device, io or rt (default device)")
    platform_flag(p)
    p.add_argument("--tolerance", type=float, default=1e-6, help="layer-ordering tolerance (default 1e-6)")
    p.add_argument("--format", choices=("txt", "csv"), default="txt", help="report format")
    out_flag(p)

    p = add("rent-gen", cmd_rent_gen, "Generate a terminal-count series from an architecture model.")
    p.add_argument("--model", required=True, metavar="SPEC",
                   help="direct:<t>, crossbar:<lines per row/col>, or mux:<base>:<inner spec>")
    p.add_argument("--g-list", required=True, nargs="+", metavar="G",
                   help="strictly increasing component counts (space or comma separated)")
    p.add_argument("--layer", default="device", metavar="L", help="stack layer label (default device)")
    out_flag(p, "CSV series")

    p = add("layers", cmd_layers, "Minimum gate layers ceil(sqrt(g)/2) to address g qubits in a 2D array.")
    p.add_argument("-g", type=_positive_int, required=True, help="number of qubits")
    out_flag(p, "value")

    p = add("analyze", cmd_analyze, "Per-resource and system maximum quantum volume of a platform.")
    platform_flag(p)
    p.add_argument("--format", choices=("txt", "csv"), default="txt", help="report format")
    p.add_argument("--figure", metavar="FILE", help="also render the envelope plot with matplotlib")
    out_flag(p)

    p = add("envelope", cmd_envelope, "Critical-resource envelope as an SVG plot.")
    platform_flag(p)
    p.add_argument("--samples-per-decade", type=int, default=20, metavar="N", help="sampling density (default 20)")
    p.add_argument("--vq-lo", type=float, metavar="V", help="lower volume (default vq_initial)")
    p.add_argument("--vq-hi", type=float, metavar="V", help="upper volume (default system_vq_max)")
    p.add_argument("--csv", metavar="FILE", help="also write the envelope points as CSV")
    p.add_argument("--figure", metavar="FILE", help="also render the plot with matplotlib")
    out_flag(p, "SVG")

    p = add("what-if", cmd_what_if, "Compare reports before and after changing resource parameters.")
    platform_flag(p)
    p.add_argument("--set", action="append", required=True, metavar="NAME.FIELD=VALUE[,...]",
                   help="override r_max, r_initial, x or k of a resource; repeatable")
    p.add_argument("--format", choices=("txt", "csv"), default="txt", help="report format")
    out_flag(p)

    p = add("validate", cmd_validate, "Parse and validate a platform document.")
    platform_flag(p)
    out_flag(p, "summary")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except QextendError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "), file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
