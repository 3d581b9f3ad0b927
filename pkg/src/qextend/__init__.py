"""Scaling-law toolkit for qubit platforms.

Fits Rent exponents to terminal counts, computes quantum volume and its
regime, and finds the resource that caps a platform's quantum volume.
"""

from qextend.errors import (
    DegenerateInputError,
    DomainError,
    ParseError,
    QextendError,
    RangeError,
    ShapeError,
    UnknownResourceError,
    UnsupportedFormatError,
)
from qextend.extensibility import (
    EnvelopePoint,
    Exponential,
    ExtensibilityReport,
    PlatformModel,
    PowerLaw,
    Resource,
    compute_envelope,
    critical_resource,
    fit_extensibility,
    local_extensibility,
    normalized_usage,
    resource_usage,
    system_report,
    vq_max_for_resource,
    what_if,
)
from qextend.rent import (
    Crossbar2d,
    DirectControl,
    MultiplexedIo,
    RentFit,
    StackLayer,
    TerminalSeries,
    check_layer_ordering,
    fit_rent,
    generate_terminal_series,
    min_gate_layers_2d,
    predict_terminals,
    terminals,
)
from qextend.volume import (
    Regime,
    RegimeThresholds,
    VolumePoint,
    classify_regime,
    depth_from_error_rate,
    logical_to_physical,
    quantum_volume,
)

__version__ = "0.1.0"

__all__ = [
    "Crossbar2d",
    "DegenerateInputError",
    "DirectControl",
    "DomainError",
    "EnvelopePoint",
    "Exponential",
    "ExtensibilityReport",
    "MultiplexedIo",
    "ParseError",
    "PlatformModel",
    "PowerLaw",
    "QextendError",
    "RangeError",
    "Regime",
    "RegimeThresholds",
    "RentFit",
    "Resource",
    "ShapeError",
    "StackLayer",
    "TerminalSeries",
    "UnknownResourceError",
    "UnsupportedFormatError",
    "VolumePoint",
    "check_layer_ordering",
    "classify_regime",
    "compute_envelope",
    "critical_resource",
    "depth_from_error_rate",
    "fit_extensibility",
    "fit_rent",
    "generate_terminal_series",
    "local_extensibility",
    "logical_to_physical",
    "min_gate_layers_2d",
    "normalized_usage",
    "predict_terminals",
    "quantum_volume",
    "resource_usage",
    "system_report",
    "terminals",
    "vq_max_for_resource",
    "what_if",
]
