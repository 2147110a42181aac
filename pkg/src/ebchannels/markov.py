"""Markovian semigroup channel families and their time-resolved EB analysis.

Three families are covered: pure dephasing-with-rotation (decoherence),
isotropic depolarization, and homogenization (contraction towards a
fixed state of purity w with separate decay and decoherence times).
Times are dimensionless multiples of a caller-chosen unit shared by all
time constants; only ratios t/T enter the physics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import QubitChannelAffine, canonical_form
from .ebtest import is_eb_numeric, pt_margin, uniaxial_eb_condition
from .errors import InvalidParameter, NegativeTime

__all__ = [
    "Decoherence",
    "Depolarization",
    "Homogenization",
    "DynamicalFamily",
    "HomogenizationF",
    "ScanRow",
    "TimeScan",
    "channel_at",
    "eb_onset",
    "homogenization_f",
    "homogenization_eb_condition",
    "scan",
    "scan_to_csv",
    "scan_to_dict",
]


@dataclass(frozen=True)
class Decoherence:
    """Phase damping at rate 1/T with Larmor rotation omega about z."""

    T: float
    omega: float = 0.0

    def __post_init__(self):
        if not self.T > 0.0:
            raise InvalidParameter(f"T must be positive, got {self.T}")


@dataclass(frozen=True)
class Depolarization:
    """Isotropic contraction of the Bloch sphere at rate 1/T."""

    T: float

    def __post_init__(self):
        if not self.T > 0.0:
            raise InvalidParameter(f"T must be positive, got {self.T}")


@dataclass(frozen=True)
class Homogenization:
    """Contraction towards a fixed state of purity w on the z axis.

    T1 is the decay time (z relaxation towards the fixed point), T2 the
    decoherence time (transverse damping), omega a rotation about z.
    """

    T1: float
    T2: float
    w: float
    omega: float = 0.0

    def __post_init__(self):
        if not (self.T1 > 0.0 and self.T2 > 0.0):
            raise InvalidParameter("T1 and T2 must be positive")
        if not 0.0 <= self.w <= 1.0:
            raise InvalidParameter(f"w must lie in [0, 1], got {self.w}")


DynamicalFamily = Decoherence | Depolarization | Homogenization


def _rotation_block(damping: float, angle: float) -> np.ndarray:
    c = damping * math.cos(angle)
    s = damping * math.sin(angle)
    return np.array([[c, s], [-s, c]])


def channel_at(family: DynamicalFamily, t: float) -> QubitChannelAffine:
    """The family's channel at time t (identity at t = 0)."""
    if t < 0.0:
        raise NegativeTime(f"time must be nonnegative, got {t}")
    if isinstance(family, Decoherence):
        m = np.eye(3)
        m[:2, :2] = _rotation_block(math.exp(-t / family.T), family.omega * t)
        return QubitChannelAffine(np.zeros(3), m)
    if isinstance(family, Depolarization):
        return QubitChannelAffine(np.zeros(3), math.exp(-t / family.T) * np.eye(3))
    if isinstance(family, Homogenization):
        e1 = math.exp(-t / family.T1)
        m = np.eye(3)
        m[:2, :2] = _rotation_block(math.exp(-t / family.T2), family.omega * t)
        m[2, 2] = e1
        return QubitChannelAffine(
            np.array([0.0, 0.0, family.w * (1.0 - e1)]), m
        )
    raise TypeError(f"unknown dynamical family {family!r}")


def eb_onset(
    family: DynamicalFamily, t_max: float, coarse_steps: int = 1000
) -> float | None:
    """Earliest time in [0, t_max] at which the channel becomes EB.

    Locates the first zero crossing of the partial-transpose margin by a
    coarse scan followed by bisection to 1e-9 relative precision, and
    returns None when the margin stays negative over the whole window.
    The crossing test is strict (margin >= 0 rather than the verdict
    tolerance): families whose margin approaches zero from below without
    ever reaching it must not report a spurious finite onset.
    """
    if not t_max > 0.0:
        raise InvalidParameter(f"t_max must be positive, got {t_max}")
    if coarse_steps < 2:
        raise InvalidParameter("coarse_steps must be at least 2")

    def margin(t: float) -> float:
        return pt_margin(channel_at(family, t))

    times = np.linspace(0.0, t_max, coarse_steps)
    previous = times[0]
    if margin(previous) >= 0.0:
        return float(previous)
    hit = None
    for t in times[1:]:
        if margin(t) >= 0.0:
            hit = t
            break
        previous = t
    if hit is None:
        return None
    lo, hi = float(previous), float(hit)
    while hi - lo > 1e-9 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if margin(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class HomogenizationF:
    """The two homogenization EB indicator expressions and their minimum."""

    f1: float
    f2: float
    f: float


def homogenization_f(t: float, T1: float, T2: float, w: float) -> HomogenizationF:
    """Literal indicator pair for the homogenization family, f = min(f1, f2).

    f1 >= 0 is equivalent to the single-axis closed-form EB criterion for
    this family.  f2 as written mixes the two damping factors in a way
    that does not follow from that criterion; it is kept verbatim as a
    reported diagnostic, and scans carry it next to the oracle verdict so
    the disagreement is visible rather than silently patched.
    """
    e1 = math.exp(-t / T1)
    e2 = math.exp(-t / T2)
    f1 = (1.0 - w * w) * (1.0 - e1) ** 2 - 4.0 * e2 * e2
    f2 = 1.0 - e2 - math.sqrt((e1 + e2) ** 2 + w * w * (1.0 - e1) ** 2)
    return HomogenizationF(f1=f1, f2=f2, f=min(f1, f2))


def homogenization_eb_condition(t: float, T1: float, T2: float, w: float) -> bool:
    """Closed-form EB verdict for homogenization at time t.

    Plugs the family's singular values (e^{-t/T2}, e^{-t/T2}, e^{-t/T1})
    and translation w(1 - e^{-t/T1}) into the single-axis criterion; this
    is the authoritative closed-form verdict for the family.
    """
    e1 = math.exp(-t / T1)
    e2 = math.exp(-t / T2)
    return uniaxial_eb_condition(
        np.array([e2, e2, e1]), w * (1.0 - e1), axis=2
    )


@dataclass(frozen=True)
class ScanRow:
    """One time sample: canonical singular-value magnitudes and verdicts."""

    t: float
    lam: tuple[float, float, float]
    margin: float
    is_eb: bool
    f1: float | None = None
    f2: float | None = None
    f: float | None = None
    cf_eb: bool | None = None


@dataclass(frozen=True)
class TimeScan:
    """Uniform time grid of EB diagnostics for one dynamical family."""

    family: DynamicalFamily
    times: np.ndarray
    rows: list[ScanRow] = field(repr=False)


def scan(
    family: DynamicalFamily, t_min: float, t_max: float, steps: int
) -> TimeScan:
    """Sample the family on a uniform grid of `steps` times.

    Homogenization rows additionally carry the f1/f2/f diagnostics and
    the closed-form verdict column cf_eb.
    """
    if steps < 2:
        raise InvalidParameter(f"steps must be at least 2, got {steps}")
    if not t_min < t_max:
        raise InvalidParameter(f"need t_min < t_max, got [{t_min}, {t_max}]")
    if t_min < 0.0:
        raise NegativeTime(f"t_min must be nonnegative, got {t_min}")
    times = np.linspace(t_min, t_max, steps)
    rows = []
    homog = isinstance(family, Homogenization)
    for t in times:
        phi = channel_at(family, float(t))
        verdict = is_eb_numeric(phi)
        lam = np.abs(canonical_form(phi).lam)
        row = {
            "t": float(t),
            "lam": (float(lam[0]), float(lam[1]), float(lam[2])),
            "margin": verdict.margin,
            "is_eb": verdict.is_eb,
        }
        if homog:
            fvals = homogenization_f(float(t), family.T1, family.T2, family.w)
            row.update(
                f1=fvals.f1,
                f2=fvals.f2,
                f=fvals.f,
                cf_eb=homogenization_eb_condition(
                    float(t), family.T1, family.T2, family.w
                ),
            )
        rows.append(ScanRow(**row))
    return TimeScan(family=family, times=times, rows=rows)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def scan_to_csv(result: TimeScan) -> str:
    """Render a scan in the published CSV row format (17 significant digits)."""
    homog = isinstance(result.family, Homogenization)
    header = "t,lam1,lam2,lam3,margin,is_eb"
    if homog:
        header += ",f1,f2,f,cf_eb"
    lines = [header]
    for row in result.rows:
        cells = [
            _fmt(row.t),
            _fmt(row.lam[0]),
            _fmt(row.lam[1]),
            _fmt(row.lam[2]),
            _fmt(row.margin),
            "true" if row.is_eb else "false",
        ]
        if homog:
            cells += [
                _fmt(row.f1),
                _fmt(row.f2),
                _fmt(row.f),
                "true" if row.cf_eb else "false",
            ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _family_dict(family: DynamicalFamily) -> dict:
    if isinstance(family, Decoherence):
        return {"family": "decoherence", "T": family.T, "omega": family.omega}
    if isinstance(family, Depolarization):
        return {"family": "depolarization", "T": family.T}
    return {
        "family": "homogenization",
        "T1": family.T1,
        "T2": family.T2,
        "w": family.w,
        "omega": family.omega,
    }


def scan_to_dict(result: TimeScan) -> dict:
    """JSON-ready representation of a scan."""
    homog = isinstance(result.family, Homogenization)
    rows = []
    for row in result.rows:
        d = {
            "t": row.t,
            "lam1": row.lam[0],
            "lam2": row.lam[1],
            "lam3": row.lam[2],
            "margin": row.margin,
            "is_eb": row.is_eb,
        }
        if homog:
            d.update(f1=row.f1, f2=row.f2, f=row.f, cf_eb=row.cf_eb)
        rows.append(d)
    return {**_family_dict(result.family), "rows": rows}
