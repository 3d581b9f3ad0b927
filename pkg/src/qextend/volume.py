"""Quantum volume arithmetic, depth from error rate, regime map, QEC overhead.

Quantum volume here is the simple square score ``min(N, d) ** 2`` computed in
exact integer arithmetic so that regime boundaries compare without rounding.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, Decimal

from qextend.errors import DomainError, RangeError

#: Largest value any integer result may take (signed 64-bit).
INT_LIMIT = 2**63 - 1

# relative slack when 1/epsilon lands within rounding noise of an integer
_RECIPROCAL_RTOL = 1e-12


@dataclass(frozen=True)
class VolumePoint:
    """Qubit count ``n_qubits`` and achievable circuit depth ``depth``."""

    n_qubits: int
    depth: int

    def __post_init__(self) -> None:
        for field in ("n_qubits", "depth"):
            value = getattr(self, field)
            if isinstance(value, bool) or not isinstance(value, int):
                raise DomainError(f"{field} must be an integer, got {value!r}")
            if value < 1:
                raise DomainError(f"{field} must be >= 1, got {value}")


class Regime(enum.IntEnum):
    """Regions of the N-d plane, ordered from least to most capable."""

    CLASSICALLY_SIMULABLE = 0
    SUPREMACY_NISQ = 1
    QUANTUM_SIMULATION = 2
    FAULT_TOLERANT_UNIVERSAL = 3

    @property
    def label(self) -> str:
        return _REGIME_LABELS[self]


_REGIME_LABELS = {
    Regime.CLASSICALLY_SIMULABLE: "ClassicallySimulable",
    Regime.SUPREMACY_NISQ: "SupremacyNisq",
    Regime.QUANTUM_SIMULATION: "QuantumSimulation",
    Regime.FAULT_TOLERANT_UNIVERSAL: "FaultTolerantUniversal",
}


@dataclass(frozen=True)
class RegimeThresholds:
    """Boundaries of the regime map.

    ``classical_sim_bound`` applies to ``min(N, d)``; the other two bound the
    quantum volume itself. Each lower bound belongs to the higher regime.
    """

    classical_sim_bound: int = 50
    simulation_vq: int = 10**6
    universal_vq: int = 10**7

    def __post_init__(self) -> None:
        for field in ("classical_sim_bound", "simulation_vq", "universal_vq"):
            value = getattr(self, field)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise DomainError(f"{field} must be a positive integer, got {value!r}")
        if not self.classical_sim_bound**2 <= self.simulation_vq <= self.universal_vq:
            raise DomainError(
                "thresholds must satisfy classical_sim_bound**2 <= simulation_vq <= universal_vq, "
                f"got {self.classical_sim_bound}**2, {self.simulation_vq}, {self.universal_vq}"
            )


@dataclass(frozen=True)
class RegimeResult:
    """A classified point, bundled for reporting."""

    point: VolumePoint
    vq: int
    regime: Regime
    thresholds: RegimeThresholds


def quantum_volume(point: VolumePoint) -> int:
    """Return ``min(N, d) ** 2``.

    Raises:
        RangeError: if the square exceeds the signed 64-bit range.
    """
    side = min(point.n_qubits, point.depth)
    vq = side * side
    if vq > INT_LIMIT:
        raise RangeError(f"quantum volume {side}**2 exceeds 2**63 - 1")
    return vq


def depth_from_error_rate(epsilon: float) -> int:
    """Operations completed before one error is expected: ``floor(1/epsilon)``.

    A reciprocal within 1e-12 (relative) of an integer snaps to that integer,
    so that ``depth_from_error_rate(1/k) == k`` despite binary rounding.
    """
    if not isinstance(epsilon, (int, float)) or isinstance(epsilon, bool):
        raise DomainError(f"error rate must be a real number, got {epsilon!r}")
    if not (0.0 < epsilon <= 1.0):
        raise DomainError(f"error rate must lie in (0, 1], got {epsilon!r}")
    reciprocal = 1.0 / epsilon
    if math.isinf(reciprocal):
        raise RangeError(f"depth for error rate {epsilon!r} is unbounded")
    nearest = round(reciprocal)
    if abs(reciprocal - nearest) <= _RECIPROCAL_RTOL * reciprocal:
        depth = nearest
    else:
        depth = math.floor(reciprocal)
    if depth > INT_LIMIT:
        raise RangeError(f"depth for error rate {epsilon!r} exceeds 2**63 - 1")
    return max(1, depth)


def classify_regime(point: VolumePoint, thresholds: RegimeThresholds | None = None) -> Regime:
    thresholds = thresholds or RegimeThresholds()
    if min(point.n_qubits, point.depth) < thresholds.classical_sim_bound:
        return Regime.CLASSICALLY_SIMULABLE
    vq = quantum_volume(point)
    if vq >= thresholds.universal_vq:
        return Regime.FAULT_TOLERANT_UNIVERSAL
    if vq >= thresholds.simulation_vq:
        return Regime.QUANTUM_SIMULATION
    return Regime.SUPREMACY_NISQ


def regime_result(point: VolumePoint, thresholds: RegimeThresholds | None = None) -> RegimeResult:
    thresholds = thresholds or RegimeThresholds()
    return RegimeResult(point, quantum_volume(point), classify_regime(point, thresholds), thresholds)


def logical_to_physical(n_logical: int, physical_per_logical: float) -> int:
    """Physical qubits needed for ``n_logical`` logical qubits.

    The product is rounded up. The overhead factor is taken at its shortest
    decimal representation, so ``10 * 1.1`` gives 11 rather than 12.
    """
    if isinstance(n_logical, bool) or not isinstance(n_logical, int) or n_logical < 1:
        raise DomainError(f"n_logical must be a positive integer, got {n_logical!r}")
    if isinstance(physical_per_logical, bool) or not isinstance(physical_per_logical, (int, float)):
        raise DomainError(f"overhead must be a real number, got {physical_per_logical!r}")
    if not math.isfinite(physical_per_logical) or physical_per_logical < 1:
        raise DomainError(f"overhead must be a finite factor >= 1, got {physical_per_logical!r}")
    exact = Decimal(n_logical) * Decimal(repr(physical_per_logical))
    physical = int(exact.to_integral_value(rounding=ROUND_CEILING))
    if physical > INT_LIMIT:
        raise RangeError(f"{n_logical} x {physical_per_logical!r} exceeds 2**63 - 1")
    return physical
