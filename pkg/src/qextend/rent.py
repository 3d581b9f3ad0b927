"""Rent's-rule fitting and terminal-count generators for qubit control stacks.

A block with ``g`` components exposes ``T = t * g**p`` terminals. The module
fits ``(t, p)`` from observed series, generates series from simple wiring
architectures, and checks that exponents shrink going up the stack.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from qextend.errors import DegenerateInputError, DomainError, ShapeError
from qextend.fitting import fit_loglog


class StackLayer(enum.Enum):
    """Boundaries at which terminals are counted, lowest first."""

    DEVICE_GATES = "device"
    CHIP_IO = "io"
    ROOM_TEMPERATURE = "rt"

    @property
    def rank(self) -> int:
        return _LAYER_ORDER.index(self)

    @classmethod
    def parse(cls, text: str) -> "StackLayer":
        key = text.strip().lower()
        for layer in cls:
            if key in (layer.value, layer.name.lower(), _LAYER_ALIASES[layer]):
                return layer
        names = ", ".join(layer.value for layer in cls)
        raise DomainError(f"unknown stack layer {text!r} (expected one of {names})")


_LAYER_ORDER = (StackLayer.DEVICE_GATES, StackLayer.CHIP_IO, StackLayer.ROOM_TEMPERATURE)
_LAYER_ALIASES = {
    StackLayer.DEVICE_GATES: "devicegates",
    StackLayer.CHIP_IO: "chipio",
    StackLayer.ROOM_TEMPERATURE: "roomtemperature",
}


@dataclass(frozen=True)
class TerminalSeries:
    """Observed ``(g, T)`` pairs for one stack layer, ``g`` strictly increasing."""

    layer: StackLayer
    points: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        pts = tuple((g, float(t)) for g, t in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise DomainError(f"a terminal series needs at least 2 points, got {len(pts)}")
        for i, (g, t) in enumerate(pts):
            if isinstance(g, bool) or not isinstance(g, int) or g < 1:
                raise DomainError(f"point {i}: g must be a positive integer, got {g!r}")
            if not (math.isfinite(t) and t > 0):
                raise DomainError(f"point {i}: T must be positive and finite, got {t!r}")
            if i and g <= pts[i - 1][0]:
                raise DomainError(
                    f"point {i}: g must be strictly increasing ({pts[i - 1][0]} then {g})"
                )

    @property
    def g_values(self) -> list[int]:
        return [g for g, _ in self.points]

    @property
    def terminal_counts(self) -> list[float]:
        return [t for _, t in self.points]


@dataclass(frozen=True)
class RentFit:
    t_coeff: float
    p_exponent: float
    r_squared: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_coeff) and self.t_coeff > 0):
            raise DomainError(f"t_coeff must be positive, got {self.t_coeff!r}")
        if not math.isfinite(self.p_exponent):
            raise DomainError(f"p_exponent must be finite, got {self.p_exponent!r}")
        if not 0.0 <= self.r_squared <= 1.0:
            raise DomainError(f"r_squared must lie in [0, 1], got {self.r_squared!r}")


# ---------------------------------------------------------------------------
# architecture models


@dataclass(frozen=True)
class DirectControl:
    """Every qubit wired individually: ``T = terminals_per_qubit * g``."""

    terminals_per_qubit: float

    def __post_init__(self) -> None:
        _require_positive("terminals_per_qubit", self.terminals_per_qubit)


@dataclass(frozen=True)
class Crossbar2d:
    """Square ``n x n`` array driven by shared row and column lines."""

    lines_per_row_col: float

    def __post_init__(self) -> None:
        _require_positive("lines_per_row_col", self.lines_per_row_col)


@dataclass(frozen=True)
class MultiplexedIo:
    """Inner lines reached through base-``address_base`` addressing plus one data line."""

    inner: Union[DirectControl, Crossbar2d]
    address_base: int = 2

    def __post_init__(self) -> None:
        if isinstance(self.inner, MultiplexedIo):
            raise DomainError("MultiplexedIo cannot wrap another MultiplexedIo")
        if not isinstance(self.inner, (DirectControl, Crossbar2d)):
            raise DomainError(f"unsupported inner model {self.inner!r}")
        base = self.address_base
        if isinstance(base, bool) or not isinstance(base, int) or base < 2:
            raise DomainError(f"address_base must be an integer >= 2, got {base!r}")


ArchitectureModel = Union[DirectControl, Crossbar2d, MultiplexedIo]


def _require_positive(name: str, value: float) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


def address_lines(n_lines: float, base: int) -> int:
    """Smallest ``k`` with ``base**k >= n_lines`` (digits needed to address every line)."""
    k = 0
    reach = 1
    while reach < n_lines:
        reach *= base
        k += 1
    return k


def terminals(model: ArchitectureModel, g: int) -> float:
    """Terminal count of ``model`` driving ``g`` qubits.

    Raises:
        ShapeError: for a crossbar when ``g`` is not a perfect square.
    """
    if isinstance(g, bool) or not isinstance(g, int) or g < 1:
        raise DomainError(f"g must be a positive integer, got {g!r}")
    if isinstance(model, DirectControl):
        return model.terminals_per_qubit * g
    if isinstance(model, Crossbar2d):
        n = math.isqrt(g)
        if n * n != g:
            raise ShapeError(
                f"crossbar needs a square qubit count; g={g} lies between "
                f"{n * n} ({n}x{n}) and {(n + 1) ** 2} ({n + 1}x{n + 1})"
            )
        return model.lines_per_row_col * 2 * n
    if isinstance(model, MultiplexedIo):
        inner = terminals(model.inner, g)
        return float(address_lines(inner, model.address_base) + 1)
    raise DomainError(f"unknown architecture model {model!r}")


def min_gate_layers_2d(g: int) -> int:
    """Lower bound ``ceil(sqrt(g) / 2)`` on gate layers addressing a 2D array of ``g`` qubits."""
    if isinstance(g, bool) or not isinstance(g, int) or g < 1:
        raise DomainError(f"g must be a positive integer, got {g!r}")
    side = math.isqrt(g)
    if side * side < g:
        side += 1
    # smallest k with (2k)**2 >= g is ceil(side / 2), side = ceil(sqrt(g))
    return (side + 1) // 2


def fit_rent(series: TerminalSeries) -> RentFit:
    line = fit_loglog(series.g_values, series.terminal_counts)
    return RentFit(t_coeff=math.exp(line.intercept), p_exponent=line.slope, r_squared=line.r_squared)


def predict_terminals(fit: RentFit, g: int | float) -> float:
    if g <= 0:
        raise DomainError(f"g must be positive, got {g!r}")
    return fit.t_coeff * g**fit.p_exponent


def generate_terminal_series(
    model: ArchitectureModel, layer: StackLayer, g_values: Iterable[int]
) -> TerminalSeries:
    g_list = list(g_values)
    if len(g_list) < 2:
        raise DomainError(f"need at least 2 g values, got {len(g_list)}")
    for prev, cur in zip(g_list, g_list[1:]):
        if cur <= prev:
            raise DomainError(f"g values must be strictly increasing ({prev} then {cur})")
    points = []
    for g in g_list:
        try:
            points.append((g, terminals(model, g)))
        except ShapeError as exc:
            raise ShapeError(f"g={g}: {exc}") from exc
    return TerminalSeries(layer, tuple(points))


# ---------------------------------------------------------------------------
# stack ordering


@dataclass(frozen=True)
class OrderingViolation:
    lower: StackLayer
    upper: StackLayer
    gap: float  # p_upper - p_lower, positive when violated


@dataclass(frozen=True)
class LayerOrderingReport:
    exponents: tuple[tuple[StackLayer, float], ...]
    tolerance: float
    violations: tuple[OrderingViolation, ...] = field(default=())

    @property
    def ordered(self) -> bool:
        return not self.violations


def check_layer_ordering(
    fits: Mapping[StackLayer, RentFit], tolerance: float = 1e-6
) -> LayerOrderingReport:
    """Check ``p_device >= p_io >= p_rt`` between consecutive layers present.

    A pair is violated when the higher layer's exponent exceeds the lower
    one's by more than ``tolerance``.
    """
    if len(fits) < 2:
        raise DomainError("layer ordering needs fits for at least two layers")
    if tolerance < 0:
        raise DomainError(f"tolerance must be non-negative, got {tolerance!r}")
    present = sorted(fits, key=lambda layer: layer.rank)
    exponents = tuple((layer, fits[layer].p_exponent) for layer in present)
    violations = []
    for (lower, p_lower), (upper, p_upper) in zip(exponents, exponents[1:]):
        gap = p_upper - p_lower
        if gap > tolerance:
            violations.append(OrderingViolation(lower, upper, gap))
    return LayerOrderingReport(exponents, tolerance, tuple(violations))


def fit_layers(series: Sequence[TerminalSeries]) -> dict[StackLayer, RentFit]:
    fits: dict[StackLayer, RentFit] = {}
    for s in series:
        if s.layer in fits:
            raise DegenerateInputError(f"layer {s.layer.value!r} appears more than once")
        fits[s.layer] = fit_rent(s)
    return fits


# ---------------------------------------------------------------------------
# compact textual model specs, e.g. "direct:2", "crossbar:0.5", "mux:2:direct:1"


def parse_model_spec(text: str) -> ArchitectureModel:
    parts = [p.strip() for p in text.strip().split(":")]
    kind = parts[0].lower()
    try:
        if kind in ("direct", "directcontrol") and len(parts) == 2:
            return DirectControl(float(parts[1]))
        if kind in ("crossbar", "crossbar2d") and len(parts) == 2:
            return Crossbar2d(float(parts[1]))
        if kind in ("mux", "multiplexed") and len(parts) >= 4:
            return MultiplexedIo(parse_model_spec(":".join(parts[2:])), int(parts[1]))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad number in model spec {text!r}: {exc}") from exc
    raise DomainError(
        f"cannot parse model spec {text!r}; expected direct:<t>, crossbar:<lines>, "
        "or mux:<base>:<inner spec>"
    )


def format_model_spec(model: ArchitectureModel) -> str:
    if isinstance(model, DirectControl):
        return f"direct:{model.terminals_per_qubit!r}"
    if isinstance(model, Crossbar2d):
        return f"crossbar:{model.lines_per_row_col!r}"
    return f"mux:{model.address_base}:{format_model_spec(model.inner)}"
