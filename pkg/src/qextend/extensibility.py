"""Resource scaling with quantum volume and the resulting volume ceiling.

Each resource grows with quantum volume either as a power law,
``R = R_I * (V/V_I) ** (1/X)``, or exponentially, which is assigned
extensibility zero. The first resource to reach its hard limit fixes the
largest achievable quantum volume of the platform; the resource with the
highest normalized usage at a given volume is the critical one.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, NamedTuple, Optional, Union

from qextend.errors import DegenerateInputError, DomainError, UnknownResourceError
from qextend.fitting import fit_loglog
from qextend.volume import VolumePoint, quantum_volume

#: Relative tolerance for comparing usages and volumes against each other.
REL_TOL = 1e-12

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")


@dataclass(frozen=True)
class PowerLaw:
    x_r: float

    def __post_init__(self) -> None:
        if isinstance(self.x_r, bool) or not isinstance(self.x_r, (int, float)):
            raise DomainError(f"extensibility must be a real number, got {self.x_r!r}")
        if not (math.isfinite(self.x_r) and self.x_r > 0):
            raise DomainError(
                f"power-law extensibility must be positive and finite, got {self.x_r!r}; "
                "zero extensibility is expressed with the exponential law"
            )

    @property
    def extensibility(self) -> float:
        return float(self.x_r)


@dataclass(frozen=True)
class Exponential:
    k: float

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, (int, float)):
            raise DomainError(f"exponential rate must be a real number, got {self.k!r}")
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"exponential rate must be positive and finite, got {self.k!r}")

    @property
    def extensibility(self) -> float:
        return 0.0


ScalingLaw = Union[PowerLaw, Exponential]


@dataclass(frozen=True)
class Resource:
    name: str
    r_initial: float
    r_max: float
    law: ScalingLaw

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _NAME_RE.match(self.name):
            raise DomainError(
                f"resource name must be an identifier (letters, digits, '_', '-', '.'), got {self.name!r}"
            )
        for fld in ("r_initial", "r_max"):
            value = getattr(self, fld)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DomainError(f"{self.name}: {fld} must be a real number, got {value!r}")
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{self.name}: {fld} must be positive and finite, got {value!r}")
        if self.r_initial > self.r_max:
            raise DomainError(
                f"{self.name}: r_initial ({self.r_initial!r}) exceeds r_max ({self.r_max!r})"
            )
        if not isinstance(self.law, (PowerLaw, Exponential)):
            raise DomainError(f"{self.name}: unknown scaling law {self.law!r}")

    @property
    def r_i(self) -> float:
        """Initial usage as a fraction of the limit."""
        return self.r_initial / self.r_max

    @property
    def extensibility(self) -> float:
        return self.law.extensibility


@dataclass(frozen=True)
class PlatformModel:
    name: str
    vq_initial: float
    resources: tuple[Resource, ...]
    initial_point: Optional[VolumePoint] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "resources", tuple(self.resources))
        if not isinstance(self.name, str) or not self.name.strip():
            raise DomainError("platform name must be a non-empty string")
        vqi = self.vq_initial
        if isinstance(vqi, bool) or not isinstance(vqi, (int, float)):
            raise DomainError(f"vq_initial must be a real number, got {vqi!r}")
        if not (math.isfinite(vqi) and vqi >= 1):
            raise DomainError(f"vq_initial must be finite and >= 1, got {vqi!r}")
        if not self.resources:
            raise DomainError("a platform needs at least one resource")
        seen: set[str] = set()
        for res in self.resources:
            if res.name in seen:
                raise DomainError(f"duplicate resource name {res.name!r}")
            seen.add(res.name)
        if self.initial_point is not None:
            vq = quantum_volume(self.initial_point)
            if vq != round(vqi):
                raise DomainError(
                    f"initial_point gives quantum volume {vq}, but vq_initial is {vqi!r}"
                )

    @property
    def resource_names(self) -> list[str]:
        return [res.name for res in self.resources]

    def resource(self, name: str) -> Resource:
        for res in self.resources:
            if res.name == name:
                return res
        raise UnknownResourceError(
            f"unknown resource {name!r}; valid names: {', '.join(self.resource_names)}"
        )


# ---------------------------------------------------------------------------
# single-resource laws


def _check_vq(vq: float, vq_initial: float) -> None:
    if not vq > 0:
        raise DomainError(f"quantum volume must be positive, got {vq!r}")
    if not vq_initial > 0:
        raise DomainError(f"initial quantum volume must be positive, got {vq_initial!r}")


def resource_usage(res: Resource, vq: float, vq_initial: float) -> float:
    """Absolute usage of ``res`` at volume ``vq`` (may be ``inf`` on overflow)."""
    _check_vq(vq, vq_initial)
    ratio = vq / vq_initial
    if ratio == 1.0:
        return float(res.r_initial)
    try:
        if isinstance(res.law, PowerLaw):
            return res.r_initial * ratio ** (1.0 / res.law.x_r)
        return res.r_initial * math.exp(res.law.k * (ratio - 1.0))
    except OverflowError:
        return math.inf


def normalized_usage(res: Resource, vq: float, vq_initial: float) -> float:
    return resource_usage(res, vq, vq_initial) / res.r_max


def log_growth_rate(res: Resource, vq: float, vq_initial: float) -> float:
    """``d ln R / d ln V`` at ``vq``: ``1/X`` for a power law, ``k V/V_I`` for exponential."""
    if isinstance(res.law, PowerLaw):
        return 1.0 / res.law.x_r
    return res.law.k * vq / vq_initial


def vq_max_for_resource(res: Resource, vq_initial: float) -> float:
    """Volume at which ``res`` reaches its limit."""
    headroom = res.r_max / res.r_initial
    if isinstance(res.law, PowerLaw):
        try:
            return headroom**res.law.x_r * vq_initial
        except OverflowError:
            return math.inf
    return vq_initial * (1.0 + math.log(headroom) / res.law.k)


# ---------------------------------------------------------------------------
# platform-level analysis


def _tie_key(res: Resource, vq: float, vq_initial: float) -> tuple[float, float, str]:
    # faster-growing resource binds an instant later; then smaller X; then name
    return (-log_growth_rate(res, vq, vq_initial), res.extensibility, res.name)


def _argmax_usage(platform: PlatformModel, vq: float) -> tuple[Resource, float]:
    usages = [(res, normalized_usage(res, vq, platform.vq_initial)) for res in platform.resources]
    top = max(u for _, u in usages)
    tied = [res for res, u in usages if u >= top * (1.0 - REL_TOL) or u == top]
    best = min(tied, key=lambda res: _tie_key(res, vq, platform.vq_initial))
    return best, normalized_usage(best, vq, platform.vq_initial)


def critical_resource(platform: PlatformModel, vq: float) -> str:
    """Name of the resource closest to its limit at ``vq``.

    Near-ties (relative 1e-12) go to the resource that is critical just
    above ``vq``, then to the smaller extensibility, then by name.
    """
    _check_vq(vq, platform.vq_initial)
    return _argmax_usage(platform, vq)[0].name


def local_extensibility(platform: PlatformModel, vq: float) -> float:
    """Extensibility of the critical resource at ``vq`` (0 when it grows exponentially)."""
    _check_vq(vq, platform.vq_initial)
    return _argmax_usage(platform, vq)[0].extensibility


@dataclass(frozen=True)
class ResourceRow:
    name: str
    r_initial: float
    r_max: float
    r_i: float
    law: str
    extensibility: float
    rate: Optional[float]
    vq_max: float
    not_sublinear: bool
    limiting: bool


@dataclass(frozen=True)
class ExtensibilityReport:
    platform_name: str
    vq_initial: float
    rows: tuple[ResourceRow, ...]
    system_vq_max: float
    limiting_resource: str
    overall_x: float

    @property
    def per_resource_vq_max(self) -> dict[str, float]:
        return {row.name: row.vq_max for row in self.rows}

    @property
    def sublinear_flags(self) -> dict[str, bool]:
        """``True`` marks resources with extensibility <= 1 (not sublinear)."""
        return {row.name: row.not_sublinear for row in self.rows}


def system_report(platform: PlatformModel) -> ExtensibilityReport:
    vqi = platform.vq_initial
    maxima = [(res, vq_max_for_resource(res, vqi)) for res in platform.resources]
    system_max = min(v for _, v in maxima)
    tied = [res for res, v in maxima if v <= system_max * (1.0 + REL_TOL)]
    limiter = min(tied, key=lambda res: _tie_key(res, system_max, vqi))
    rows = tuple(
        ResourceRow(
            name=res.name,
            r_initial=float(res.r_initial),
            r_max=float(res.r_max),
            r_i=res.r_i,
            law="power" if isinstance(res.law, PowerLaw) else "exponential",
            extensibility=res.extensibility,
            rate=None if isinstance(res.law, PowerLaw) else float(res.law.k),
            vq_max=vmax,
            not_sublinear=res.extensibility <= 1.0,
            limiting=res is limiter,
        )
        for res, vmax in maxima
    )
    return ExtensibilityReport(
        platform_name=platform.name,
        vq_initial=float(vqi),
        rows=rows,
        system_vq_max=system_max,
        limiting_resource=limiter.name,
        overall_x=limiter.extensibility,
    )


# ---------------------------------------------------------------------------
# envelope


@dataclass(frozen=True)
class EnvelopePoint:
    vq: float
    critical: str
    normalized_usage: float
    local_x: float
    crossover: bool = False
    extrapolated: bool = False


def _log_norm(res: Resource, s: float) -> float:
    """``ln(R/R_max)`` as a function of ``s = V/V_I``; overflow-free."""
    if isinstance(res.law, PowerLaw):
        return math.log(res.r_i) + math.log(s) / res.law.x_r
    return math.log(res.r_i) + res.law.k * (s - 1.0)


def _bisect_log(f, lo: float, hi: float) -> float:
    """Root of ``f`` on ``[lo, hi]`` (sign change assumed), bisecting in ``ln s``."""
    flo = f(lo)
    a, b = math.log(lo), math.log(hi)
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid in (a, b):
            break
        fmid = f(math.exp(mid))
        if fmid == 0.0:
            return math.exp(mid)
        if (fmid < 0) == (flo < 0):
            a, flo = mid, fmid
        else:
            b = mid
    return math.exp(0.5 * (a + b))


def pair_crossovers(a: Resource, b: Resource, s_lo: float, s_hi: float) -> list[float]:
    """Ratios ``s = V/V_I`` in ``(s_lo, s_hi)`` where ``a`` and ``b`` have equal normalized usage."""
    la, lb = math.log(a.r_i), math.log(b.r_i)
    roots: list[float] = []
    if isinstance(a.law, PowerLaw) and isinstance(b.law, PowerLaw):
        xa, xb = a.law.x_r, b.law.x_r
        if xa == xb:
            return []
        log_s = (lb - la) * xa * xb / (xb - xa)
        if log_s > 709.0 or log_s < -745.0:
            return []
        roots = [math.exp(log_s)]
    elif isinstance(a.law, Exponential) and isinstance(b.law, Exponential):
        if a.law.k == b.law.k:
            return []
        s = 1.0 + (lb - la) / (a.law.k - b.law.k)
        if s > 0:
            roots = [s]
    else:
        exp_res, pow_res = (a, b) if isinstance(a.law, Exponential) else (b, a)

        def gap(s: float) -> float:
            return _log_norm(exp_res, s) - _log_norm(pow_res, s)

        # gap is convex in s with its minimum at 1/(k X)
        s_turn = 1.0 / (exp_res.law.k * pow_res.law.x_r)
        edges = [s_lo] + ([s_turn] if s_lo < s_turn < s_hi else []) + [s_hi]
        for left, right in zip(edges, edges[1:]):
            g_left, g_right = gap(left), gap(right)
            if g_left == 0.0 or g_right == 0.0 or (g_left < 0) == (g_right < 0):
                continue
            roots.append(_bisect_log(gap, left, right))
    return [s for s in roots if s_lo < s < s_hi]


def envelope_crossovers(platform: PlatformModel, vq_lo: float, vq_hi: float) -> list[tuple[float, str]]:
    """Volumes in ``(vq_lo, vq_hi)`` where the critical resource changes, with the new critical name."""
    vqi = platform.vq_initial
    s_lo, s_hi = vq_lo / vqi, vq_hi / vqi
    found: list[tuple[float, str]] = []
    res_list = platform.resources
    for i, a in enumerate(res_list):
        for b in res_list[i + 1 :]:
            for s in pair_crossovers(a, b, s_lo, s_hi):
                vq = s * vqi
                if not vq_lo < vq < vq_hi:
                    continue
                ua = normalized_usage(a, vq, vqi)
                ub = normalized_usage(b, vq, vqi)
                here = max(ua, ub)
                others = [normalized_usage(r, vq, vqi) for r in res_list if r is not a and r is not b]
                if any(u > here * (1.0 + 1e-9) for u in others):
                    continue  # pair meets below the envelope
                if log_growth_rate(a, vq, vqi) == log_growth_rate(b, vq, vqi):
                    continue  # tangency, no change of leader
                winner = min((a, b), key=lambda r: _tie_key(r, vq, vqi))
                found.append((vq, winner.name))
    found.sort()
    deduped: list[tuple[float, str]] = []
    for vq, name in found:
        if deduped and vq <= deduped[-1][0] * (1.0 + REL_TOL):
            continue
        deduped.append((vq, name))
    return deduped


def compute_envelope(
    platform: PlatformModel, vq_lo: float, vq_hi: float, samples_per_decade: int = 20
) -> list[EnvelopePoint]:
    """Critical-resource envelope sampled geometrically over ``[vq_lo, vq_hi]``.

    Exact crossover volumes are inserted between samples and flagged.
    """
    if not 0 < vq_lo < vq_hi or not math.isfinite(vq_hi):
        raise DomainError(f"need 0 < vq_lo < vq_hi, got {vq_lo!r}, {vq_hi!r}")
    if isinstance(samples_per_decade, bool) or not isinstance(samples_per_decade, int):
        raise DomainError(f"samples_per_decade must be an integer, got {samples_per_decade!r}")
    if samples_per_decade < 2:
        raise DomainError(f"samples_per_decade must be >= 2, got {samples_per_decade}")

    vqi = platform.vq_initial
    n = max(1, math.ceil(math.log10(vq_hi / vq_lo) * samples_per_decade))
    span = math.log(vq_hi / vq_lo)
    samples = [vq_lo * math.exp(span * i / n) for i in range(n + 1)]
    samples[0], samples[-1] = float(vq_lo), float(vq_hi)

    crossings = envelope_crossovers(platform, vq_lo, vq_hi)
    by_name = {res.name: res for res in platform.resources}
    points: list[EnvelopePoint] = []
    for vq in samples:
        if any(abs(vq - c) <= REL_TOL * c for c, _ in crossings):
            continue
        best, usage = _argmax_usage(platform, vq)
        points.append(EnvelopePoint(vq, best.name, usage, best.extensibility, False, vq < vqi))
    for vq, name in crossings:
        res = by_name[name]
        points.append(
            EnvelopePoint(vq, name, normalized_usage(res, vq, vqi), res.extensibility, True, vq < vqi)
        )
    points.sort(key=lambda p: p.vq)
    return points


# ---------------------------------------------------------------------------
# estimation and what-if


@dataclass(frozen=True)
class ExtensibilityFit:
    x_hat: float
    r_initial_hat: float
    r_squared: float
    slope: float
    physical: bool


def fit_extensibility(
    observations: Iterable[tuple[float, float]], vq_initial: float
) -> ExtensibilityFit:
    """Estimate extensibility from ``(vq, R)`` observations.

    A non-positive log-log slope cannot come from a power law with positive
    extensibility; the fit then reports ``physical=False`` and ``x_hat`` is
    ``1/slope`` (``inf`` for a flat line).
    """
    obs = list(observations)
    if not vq_initial > 0:
        raise DomainError(f"vq_initial must be positive, got {vq_initial!r}")
    if len({vq for vq, _ in obs}) < 2:
        raise DegenerateInputError("need observations at two or more distinct volumes")
    line = fit_loglog([vq for vq, _ in obs], [r for _, r in obs])
    slope = line.slope
    x_hat = math.inf if slope == 0.0 else 1.0 / slope
    r_initial_hat = math.exp(line.intercept + slope * math.log(vq_initial))
    return ExtensibilityFit(x_hat, r_initial_hat, line.r_squared, slope, slope > 0)


class WhatIfResult(NamedTuple):
    before: ExtensibilityReport
    after: ExtensibilityReport
    platform: PlatformModel


_OVERRIDE_FIELDS = ("r_max", "r_initial", "x", "k")


def apply_overrides(
    platform: PlatformModel, overrides: Mapping[str, Mapping[str, float]]
) -> PlatformModel:
    """Copy of ``platform`` with resource fields replaced.

    ``x`` switches the resource to a power law with that extensibility and
    ``k`` to an exponential law with that rate.
    """
    for name, fields in overrides.items():
        platform.resource(name)
        unknown = sorted(set(fields) - set(_OVERRIDE_FIELDS))
        if unknown:
            raise DomainError(
                f"{name}: cannot override {', '.join(unknown)} "
                f"(allowed: {', '.join(_OVERRIDE_FIELDS)})"
            )
        if "x" in fields and "k" in fields:
            raise DomainError(f"{name}: set either x or k, not both")
    updated = []
    for res in platform.resources:
        fields = overrides.get(res.name)
        if not fields:
            updated.append(res)
            continue
        law: ScalingLaw = res.law
        if "x" in fields:
            law = PowerLaw(fields["x"])
        elif "k" in fields:
            law = Exponential(fields["k"])
        updated.append(
            replace(
                res,
                r_initial=fields.get("r_initial", res.r_initial),
                r_max=fields.get("r_max", res.r_max),
                law=law,
            )
        )
    return replace(platform, resources=tuple(updated))


def what_if(platform: PlatformModel, overrides: Mapping[str, Mapping[str, float]]) -> WhatIfResult:
    changed = apply_overrides(platform, overrides)
    return WhatIfResult(system_report(platform), system_report(changed), changed)


def default_envelope_range(platform: PlatformModel, report: ExtensibilityReport | None = None) -> tuple[float, float]:
    """``[vq_initial, system_vq_max]``, widened by a decade when the system is already saturated."""
    report = report or system_report(platform)
    lo = float(platform.vq_initial)
    hi = report.system_vq_max
    if not math.isfinite(hi) or hi <= lo * (1.0 + REL_TOL):
        hi = lo * 10.0 if hi <= lo * (1.0 + REL_TOL) else lo * 1e12
    return lo, hi
