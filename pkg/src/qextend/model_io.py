"""Platform documents (JSON), terminal series (CSV), and report emitters.

Every emitter is a pure function returning text; callers own the files.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from qextend.errors import DomainError, ParseError, UnsupportedFormatError
from qextend.extensibility import (
    EnvelopePoint,
    Exponential,
    ExtensibilityReport,
    PlatformModel,
    PowerLaw,
    Resource,
    WhatIfResult,
    normalized_usage,
)
from qextend.rent import (
    ArchitectureModel,
    Crossbar2d,
    DirectControl,
    LayerOrderingReport,
    MultiplexedIo,
    RentFit,
    StackLayer,
    TerminalSeries,
    check_layer_ordering,
    fit_rent,
    generate_terminal_series,
)
from qextend.svg import AxesConfig, emit_envelope_svg, emit_regime_svg
from qextend.volume import RegimeResult, RegimeThresholds, VolumePoint

__all__ = [
    "ArchitectureStack",
    "AxesConfig",
    "PlatformDocument",
    "RentReport",
    "ReportFormat",
    "emit_envelope_svg",
    "emit_platform",
    "emit_regime_svg",
    "emit_report",
    "emit_series_csv",
    "envelope_rows",
    "parse_platform",
    "parse_series_csv",
    "parse_thresholds",
]

SCHEMA_VERSION = 1


class ReportFormat(enum.Enum):
    PLAIN_TEXT = "txt"
    CSV = "csv"
    SVG = "svg"

    @classmethod
    def parse(cls, text: str) -> "ReportFormat":
        key = text.strip().lower()
        aliases = {"txt": cls.PLAIN_TEXT, "text": cls.PLAIN_TEXT, "plain": cls.PLAIN_TEXT,
                   "csv": cls.CSV, "svg": cls.SVG}
        if key not in aliases:
            raise DomainError(f"unknown report format {text!r} (expected txt, csv or svg)")
        return aliases[key]


@dataclass(frozen=True)
class ArchitectureStack:
    """Wiring model per stack layer, evaluated at shared component counts."""

    g_values: tuple[int, ...]
    layers: tuple[tuple[StackLayer, ArchitectureModel], ...]

    def series(self) -> list[TerminalSeries]:
        return [generate_terminal_series(model, layer, self.g_values) for layer, model in self.layers]


@dataclass(frozen=True)
class PlatformDocument:
    platform: PlatformModel
    thresholds: Optional[RegimeThresholds] = None
    terminal_series: tuple[TerminalSeries, ...] = ()
    architecture: Optional[ArchitectureStack] = None
    schema_version: int = SCHEMA_VERSION


@dataclass(frozen=True)
class RentReport:
    """Fitted exponents per layer, with the ordering check when two or more layers are present."""

    fits: tuple[tuple[StackLayer, RentFit], ...]
    ordering: Optional[LayerOrderingReport] = None

    @classmethod
    def from_fits(cls, fits: Mapping[StackLayer, RentFit], tolerance: float = 1e-6) -> "RentReport":
        ordered = tuple(sorted(fits.items(), key=lambda item: item[0].rank))
        ordering = check_layer_ordering(fits, tolerance) if len(fits) >= 2 else None
        return cls(ordered, ordering)

    @classmethod
    def from_series(cls, series: Iterable[TerminalSeries], tolerance: float = 1e-6) -> "RentReport":
        fits: dict[StackLayer, RentFit] = {}
        for s in series:
            if s.layer in fits:
                raise DomainError(f"layer {s.layer.value!r} given more than once")
            fits[s.layer] = fit_rent(s)
        return cls.from_fits(fits, tolerance)


# ---------------------------------------------------------------------------
# JSON platform documents


class _Path:
    """Dotted field path used in error messages."""

    def __init__(self, parts: tuple[str, ...] = ()) -> None:
        self.parts = parts

    def __truediv__(self, part: Union[str, int]) -> "_Path":
        if isinstance(part, int):
            if not self.parts:
                return _Path((f"[{part}]",))
            return _Path(self.parts[:-1] + (f"{self.parts[-1]}[{part}]",))
        return _Path(self.parts + (part,))

    def __str__(self) -> str:
        return ".".join(self.parts) or "<document>"

    def fail(self, message: str) -> ParseError:
        return ParseError(f"{self}: {message}")


def _reject_constant(name: str) -> Any:
    raise ParseError(f"non-finite number {name} is not allowed")


def _object(value: Any, path: _Path, required: Sequence[str], optional: Sequence[str] = ()) -> dict:
    if not isinstance(value, dict):
        raise path.fail(f"expected an object, got {type(value).__name__}")
    unknown = [k for k in value if k not in required and k not in optional]
    if unknown:
        allowed = ", ".join(list(required) + list(optional))
        raise (path / unknown[0]).fail(f"unknown field (allowed: {allowed})")
    for key in required:
        if key not in value:
            raise (path / key).fail("missing required field")
    return value


def _number(value: Any, path: _Path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise path.fail(f"expected a number, got {json.dumps(value)}")
    return float(value)


def _integer(value: Any, path: _Path) -> int:
    number = _number(value, path)
    if not number.is_integer():
        raise path.fail(f"expected an integer, got {value!r}")
    return int(value) if isinstance(value, int) else int(number)


def _string(value: Any, path: _Path) -> str:
    if not isinstance(value, str):
        raise path.fail(f"expected a string, got {json.dumps(value)}")
    return value


def _build(path: _Path, factory, *args):
    try:
        return factory(*args)
    except DomainError as exc:
        raise path.fail(str(exc)) from exc


def _parse_law(value: Any, path: _Path):
    if not isinstance(value, dict):
        raise path.fail("expected an object with a 'kind' field")
    kind = _string(value.get("kind"), path / "kind")
    if kind == "power":
        _object(value, path, ("kind", "x"))
        x = _number(value["x"], path / "x")
        if x <= 0:
            raise (path / "x").fail(
                f"power-law x must be > 0, got {value['x']!r}; for zero extensibility "
                'use {"kind": "exponential", "k": <rate>}'
            )
        return _build(path / "x", PowerLaw, x)
    if kind == "exponential":
        _object(value, path, ("kind", "k"))
        return _build(path / "k", Exponential, _number(value["k"], path / "k"))
    raise (path / "kind").fail(f"expected 'power' or 'exponential', got {kind!r}")


def _parse_resource(value: Any, path: _Path) -> Resource:
    obj = _object(value, path, ("name", "r_initial", "r_max", "law"))
    name = _string(obj["name"], path / "name")
    r_initial = _number(obj["r_initial"], path / "r_initial")
    r_max = _number(obj["r_max"], path / "r_max")
    law = _parse_law(obj["law"], path / "law")
    if r_initial <= 0:
        raise (path / "r_initial").fail(f"must be > 0, got {obj['r_initial']!r}")
    if r_max <= 0:
        raise (path / "r_max").fail(f"must be > 0, got {obj['r_max']!r}")
    if r_initial > r_max:
        raise (path / "r_initial").fail(f"r_initial ({obj['r_initial']!r}) exceeds r_max ({obj['r_max']!r})")
    return _build(path, Resource, name, r_initial, r_max, law)


def _parse_thresholds(value: Any, path: _Path) -> RegimeThresholds:
    keys = ("classical_sim_bound", "simulation_vq", "universal_vq")
    obj = _object(value, path, keys)
    ints = [_integer(obj[k], path / k) for k in keys]
    for key, v in zip(keys, ints):
        if v < 1:
            raise (path / key).fail(f"must be a positive integer, got {v}")
    return _build(path, RegimeThresholds, *ints)


def _parse_model(value: Any, path: _Path, depth: int = 0) -> ArchitectureModel:
    if not isinstance(value, dict):
        raise path.fail("expected an object with a 'kind' field")
    kind = _string(value.get("kind"), path / "kind")
    if kind == "direct":
        obj = _object(value, path, ("kind", "terminals_per_qubit"))
        return _build(path / "terminals_per_qubit", DirectControl,
                      _number(obj["terminals_per_qubit"], path / "terminals_per_qubit"))
    if kind == "crossbar":
        obj = _object(value, path, ("kind", "lines_per_row_col"))
        return _build(path / "lines_per_row_col", Crossbar2d,
                      _number(obj["lines_per_row_col"], path / "lines_per_row_col"))
    if kind == "multiplexed":
        obj = _object(value, path, ("kind", "inner", "address_base"))
        if depth >= 1:
            raise path.fail("multiplexed models cannot be nested")
        inner = _parse_model(obj["inner"], path / "inner", depth + 1)
        if isinstance(inner, MultiplexedIo):
            raise (path / "inner").fail("multiplexed models cannot be nested")
        base = _integer(obj["address_base"], path / "address_base")
        return _build(path / "address_base", MultiplexedIo, inner, base)
    raise (path / "kind").fail(f"expected 'direct', 'crossbar' or 'multiplexed', got {kind!r}")


def _parse_layer(value: Any, path: _Path) -> StackLayer:
    return _build(path, StackLayer.parse, _string(value, path))


def _parse_series(value: Any, path: _Path) -> TerminalSeries:
    obj = _object(value, path, ("layer", "points"))
    layer = _parse_layer(obj["layer"], path / "layer")
    raw = obj["points"]
    if not isinstance(raw, list):
        raise (path / "points").fail("expected a list of [g, T] pairs")
    points = []
    for i, pair in enumerate(raw):
        p = path / "points" / i
        if not isinstance(pair, list) or len(pair) != 2:
            raise p.fail("expected a [g, T] pair")
        points.append((_integer(pair[0], p), _number(pair[1], p)))
    return _build(path / "points", TerminalSeries, layer, tuple(points))


def _parse_architecture(value: Any, path: _Path) -> ArchitectureStack:
    obj = _object(value, path, ("g_values", "layers"))
    raw_g = obj["g_values"]
    if not isinstance(raw_g, list):
        raise (path / "g_values").fail("expected a list of integers")
    g_values = tuple(_integer(g, path / "g_values" / i) for i, g in enumerate(raw_g))
    layers_obj = obj["layers"]
    if not isinstance(layers_obj, dict) or not layers_obj:
        raise (path / "layers").fail("expected a non-empty object mapping layer -> model")
    layers = []
    seen = set()
    for key, model in layers_obj.items():
        layer = _parse_layer(key, path / "layers")
        if layer in seen:
            raise (path / "layers" / key).fail("layer given more than once")
        seen.add(layer)
        layers.append((layer, _parse_model(model, path / "layers" / key)))
    layers.sort(key=lambda item: item[0].rank)
    stack = ArchitectureStack(g_values, tuple(layers))
    try:
        stack.series()
    except DomainError as exc:
        raise path.fail(str(exc)) from exc
    return stack


def parse_platform(text: str) -> PlatformDocument:
    """Parse and fully validate a platform document.

    Raises:
        ParseError: on malformed JSON (with line and column), unknown or
            missing fields, or any violated invariant (with the field path).
    """
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    root = _Path()
    obj = _object(
        raw,
        root,
        ("schema_version", "name", "vq_initial", "resources"),
        ("initial_point", "thresholds", "terminal_series", "architecture"),
    )
    version = _integer(obj["schema_version"], root / "schema_version")
    if version != SCHEMA_VERSION:
        raise (root / "schema_version").fail(f"unsupported version {version} (expected {SCHEMA_VERSION})")
    name = _string(obj["name"], root / "name")
    vq_initial = _number(obj["vq_initial"], root / "vq_initial")
    if vq_initial < 1:
        raise (root / "vq_initial").fail(f"must be >= 1, got {obj['vq_initial']!r}")

    initial_point = None
    if "initial_point" in obj:
        p = root / "initial_point"
        ip = _object(obj["initial_point"], p, ("n_qubits", "depth"))
        initial_point = _build(
            p, VolumePoint, _integer(ip["n_qubits"], p / "n_qubits"), _integer(ip["depth"], p / "depth")
        )

    if not isinstance(obj["resources"], list) or not obj["resources"]:
        raise (root / "resources").fail("expected a non-empty list")
    resources = []
    names: set[str] = set()
    for i, item in enumerate(obj["resources"]):
        res = _parse_resource(item, root / "resources" / i)
        if res.name in names:
            raise (root / "resources" / i / "name").fail(f"duplicate resource name {res.name!r}")
        names.add(res.name)
        resources.append(res)
    platform = _build(root, PlatformModel, name, vq_initial, tuple(resources), initial_point)

    thresholds = None
    if "thresholds" in obj:
        thresholds = _parse_thresholds(obj["thresholds"], root / "thresholds")

    series: list[TerminalSeries] = []
    if "terminal_series" in obj:
        raw_series = obj["terminal_series"]
        if not isinstance(raw_series, list):
            raise (root / "terminal_series").fail("expected a list")
        for i, item in enumerate(raw_series):
            series.append(_parse_series(item, root / "terminal_series" / i))

    architecture = None
    if "architecture" in obj:
        architecture = _parse_architecture(obj["architecture"], root / "architecture")

    return PlatformDocument(platform, thresholds, tuple(series), architecture, version)


def parse_thresholds(text: str) -> RegimeThresholds:
    """Thresholds from a bare JSON object, or from a platform document's ``thresholds``."""
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if isinstance(raw, dict) and "schema_version" in raw:
        doc = parse_platform(text)
        if doc.thresholds is None:
            raise ParseError("thresholds: platform document has no thresholds")
        return doc.thresholds
    return _parse_thresholds(raw, _Path())


def _law_json(law) -> dict:
    if isinstance(law, PowerLaw):
        return {"kind": "power", "x": float(law.x_r)}
    return {"kind": "exponential", "k": float(law.k)}


def _model_json(model: ArchitectureModel) -> dict:
    if isinstance(model, DirectControl):
        return {"kind": "direct", "terminals_per_qubit": float(model.terminals_per_qubit)}
    if isinstance(model, Crossbar2d):
        return {"kind": "crossbar", "lines_per_row_col": float(model.lines_per_row_col)}
    return {"kind": "multiplexed", "address_base": model.address_base, "inner": _model_json(model.inner)}


def platform_to_dict(doc: PlatformDocument) -> dict:
    platform = doc.platform
    out: dict[str, Any] = {
        "schema_version": doc.schema_version,
        "name": platform.name,
        "vq_initial": float(platform.vq_initial),
    }
    if platform.initial_point is not None:
        out["initial_point"] = {
            "n_qubits": platform.initial_point.n_qubits,
            "depth": platform.initial_point.depth,
        }
    out["resources"] = [
        {
            "name": res.name,
            "r_initial": float(res.r_initial),
            "r_max": float(res.r_max),
            "law": _law_json(res.law),
        }
        for res in platform.resources
    ]
    if doc.thresholds is not None:
        t = doc.thresholds
        out["thresholds"] = {
            "classical_sim_bound": t.classical_sim_bound,
            "simulation_vq": t.simulation_vq,
            "universal_vq": t.universal_vq,
        }
    if doc.terminal_series:
        out["terminal_series"] = [
            {"layer": s.layer.value, "points": [[g, t] for g, t in s.points]} for s in doc.terminal_series
        ]
    if doc.architecture is not None:
        out["architecture"] = {
            "g_values": list(doc.architecture.g_values),
            "layers": {layer.value: _model_json(model) for layer, model in doc.architecture.layers},
        }
    return out


def emit_platform(doc: PlatformDocument) -> str:
    # json uses repr() for floats: shortest string that round-trips (<= 17 digits)
    return json.dumps(platform_to_dict(doc), indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# CSV terminal series


def _csv_number(value: float) -> str:
    if float(value).is_integer() and abs(value) < 2**53:
        return str(int(value))
    return repr(float(value))


def parse_series_csv(text: str, layer: StackLayer) -> TerminalSeries:
    """Parse ``g,T`` rows into a series; row numbers in errors are 1-based file lines."""
    rows = list(csv.reader(io.StringIO(text)))
    while rows and not any(cell.strip() for cell in rows[-1]):
        rows.pop()
    if not rows:
        raise ParseError("line 1: empty input, expected header 'g,T'")
    header = [cell.strip() for cell in rows[0]]
    if header != ["g", "T"]:
        raise ParseError(f"line 1: expected header 'g,T', got {','.join(rows[0])!r}")
    points: list[tuple[int, float]] = []
    seen: dict[int, int] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise ParseError(f"line {lineno}: expected 2 cells, got {len(row)}")
        try:
            g_num = float(row[0])
            t_num = float(row[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-numeric cell in {','.join(row)!r}") from None
        if not (math.isfinite(g_num) and g_num.is_integer() and g_num >= 1):
            raise ParseError(f"line {lineno}: g must be a positive integer, got {row[0]!r}")
        if not (math.isfinite(t_num) and t_num > 0):
            raise ParseError(f"line {lineno}: T must be positive, got {row[1]!r}")
        g = int(g_num)
        if g in seen:
            raise ParseError(f"line {lineno}: duplicate g={g} (first on line {seen[g]})")
        if points and g < points[-1][0]:
            raise ParseError(f"line {lineno}: g={g} is out of order (previous g={points[-1][0]})")
        seen[g] = lineno
        points.append((g, t_num))
    if len(points) < 2:
        raise ParseError(f"need at least 2 data rows, got {len(points)}")
    return TerminalSeries(layer, tuple(points))


def emit_series_csv(series: TerminalSeries) -> str:
    lines = ["g,T"] + [f"{g},{_csv_number(t)}" for g, t in series.points]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reports


def _fmt(value: Optional[float], spec: str = ".6g") -> str:
    if value is None:
        return "-"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, spec)


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_value(v) for v in row])
    return buf.getvalue()


def _table(header: Sequence[str], rows: Sequence[Sequence[str]], numeric: Sequence[bool]) -> list[str]:
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(len(header))]

    def line(cells: Sequence[str]) -> str:
        out = []
        for cell, width, right in zip(cells, widths, numeric):
            out.append(cell.rjust(width) if right else cell.ljust(width))
        return "  ".join(out).rstrip()

    return [line(header)] + [line(r) for r in rows]


_EXT_HEADER = ("resource", "law", "r_initial", "r_max", "r_i", "X", "k", "vq_max", "X<=1")


def _extensibility_text(report: ExtensibilityReport) -> str:
    rows = [
        (
            row.name,
            row.law,
            _fmt(row.r_initial),
            _fmt(row.r_max),
            _fmt(row.r_i),
            _fmt(row.extensibility),
            _fmt(row.rate),
            _fmt(row.vq_max),
            "yes" if row.not_sublinear else "no",
        )
        for row in report.rows
    ]
    table = _table(_EXT_HEADER, rows, (False, False, True, True, True, True, True, True, False))
    marked = ["  " + table[0]] + [
        ("* " if row.limiting else "  ") + text for row, text in zip(report.rows, table[1:])
    ]
    lines = [
        f"platform           {report.platform_name}",
        f"vq_initial         {_fmt(report.vq_initial)}",
        f"system_vq_max      {_fmt(report.system_vq_max)}",
        f"limiting_resource  {report.limiting_resource}",
        f"overall_x          {_fmt(report.overall_x)}",
        "",
        *marked,
        "",
        "* limiting resource; X<=1 marks resources that do not scale sublinearly",
    ]
    return "\n".join(lines) + "\n"


def _extensibility_csv_rows(report: ExtensibilityReport, prefix: Sequence[Any] = ()) -> list[list[Any]]:
    return [
        [
            *prefix,
            row.name,
            row.law,
            row.r_initial,
            row.r_max,
            row.r_i,
            row.extensibility,
            row.rate,
            row.vq_max,
            row.limiting,
            row.not_sublinear,
        ]
        for row in report.rows
    ]


_EXT_CSV_HEADER = (
    "resource", "law", "r_initial", "r_max", "r_i", "extensibility", "rate", "vq_max", "limiting", "not_sublinear",
)


def _rent_text(report: RentReport) -> str:
    def fit_line(fit: RentFit) -> str:
        return f"t={_fmt(fit.t_coeff, '.10g')} p={_fmt(fit.p_exponent, '.10g')} r2={_fmt(fit.r_squared, '.10g')}"

    if len(report.fits) == 1 and report.ordering is None:
        return fit_line(report.fits[0][1]) + "\n"
    lines = [f"{layer.value} {fit_line(fit)}" for layer, fit in report.fits]
    if report.ordering is not None:
        if report.ordering.ordered:
            lines.append("ordering ok")
        else:
            for v in report.ordering.violations:
                lines.append(
                    f"ordering violated: {v.upper.value} exceeds {v.lower.value} by {_fmt(v.gap, '.10g')}"
                )
    return "\n".join(lines) + "\n"


def _regime_text(result: RegimeResult) -> str:
    return (
        f"n_qubits  {result.point.n_qubits}\n"
        f"depth     {result.point.depth}\n"
        f"vq        {result.vq}\n"
        f"regime    {result.regime.label}\n"
    )


def _what_if_text(result: WhatIfResult) -> str:
    before, after = result.before, result.after
    ratio = after.system_vq_max / before.system_vq_max
    return (
        "== before ==\n"
        + _extensibility_text(before)
        + "\n== after ==\n"
        + _extensibility_text(after)
        + f"\nsystem_vq_max {_fmt(before.system_vq_max)} -> {_fmt(after.system_vq_max)} "
        f"(x{_fmt(ratio)}); limiting {before.limiting_resource} -> {after.limiting_resource}\n"
    )


Report = Union[ExtensibilityReport, RentReport, RegimeResult, WhatIfResult, Mapping]


def emit_report(report: Report, fmt: ReportFormat = ReportFormat.PLAIN_TEXT) -> str:
    """Render ``report`` as aligned text, CSV, or (for regime results) SVG.

    A mapping of ``StackLayer -> RentFit`` is accepted as a Rent report.

    Raises:
        UnsupportedFormatError: SVG requested for a report that has no plot.
    """
    if isinstance(report, Mapping):
        report = RentReport.from_fits(report)
    if isinstance(fmt, str):
        fmt = ReportFormat.parse(fmt)

    if isinstance(report, ExtensibilityReport):
        if fmt is ReportFormat.PLAIN_TEXT:
            return _extensibility_text(report)
        if fmt is ReportFormat.CSV:
            return _csv_text(_EXT_CSV_HEADER, _extensibility_csv_rows(report))
    elif isinstance(report, WhatIfResult):
        if fmt is ReportFormat.PLAIN_TEXT:
            return _what_if_text(report)
        if fmt is ReportFormat.CSV:
            rows = _extensibility_csv_rows(report.before, ("before",)) + _extensibility_csv_rows(
                report.after, ("after",)
            )
            return _csv_text(("scenario",) + _EXT_CSV_HEADER, rows)
    elif isinstance(report, RentReport):
        if fmt is ReportFormat.PLAIN_TEXT:
            return _rent_text(report)
        if fmt is ReportFormat.CSV:
            rows = [[layer.value, fit.t_coeff, fit.p_exponent, fit.r_squared] for layer, fit in report.fits]
            return _csv_text(("layer", "t", "p", "r_squared"), rows)
    elif isinstance(report, RegimeResult):
        if fmt is ReportFormat.PLAIN_TEXT:
            return _regime_text(report)
        if fmt is ReportFormat.CSV:
            t = report.thresholds
            row = [report.point.n_qubits, report.point.depth, report.vq, report.regime.label,
                   t.classical_sim_bound, t.simulation_vq, t.universal_vq]
            header = ("n_qubits", "depth", "vq", "regime", "classical_sim_bound", "simulation_vq", "universal_vq")
            return _csv_text(header, [row])
        return emit_regime_svg(report)
    else:
        raise DomainError(f"cannot emit a report of type {type(report).__name__}")
    raise UnsupportedFormatError(f"{fmt.value} output is not available for {type(report).__name__}")


def envelope_rows(points: Sequence[EnvelopePoint], platform: PlatformModel) -> str:
    """CSV of the envelope with every resource's normalized usage as extra columns."""
    names = platform.resource_names
    header = ("vq", "critical", "normalized_usage", "local_x", "crossover", "extrapolated", *names)
    rows = []
    for p in points:
        usages = [normalized_usage(res, p.vq, platform.vq_initial) for res in platform.resources]
        rows.append([p.vq, p.critical, p.normalized_usage, p.local_x, p.crossover, p.extrapolated, *usages])
    return _csv_text(header, rows)
