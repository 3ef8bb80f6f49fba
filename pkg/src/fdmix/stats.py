"""Binomial comparison of simulated flow rates against the closed form.

Each measured flow is treated as a Bernoulli rate over its observation
count, which ignores slot-to-slot correlation introduced by the queue.  The
acceptance threshold ``z_max`` of 4 standard errors is wide enough to absorb
that approximation for configurations away from the head-saturation
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analytic import NetworkConfig, ThroughputReport
from .simulator import SimStats

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not applicable"


@dataclass(frozen=True)
class FlowEstimate:
    """A rate estimate with its binomial standard error."""

    mean: float
    std_error: float


@dataclass(frozen=True)
class FlowComparison:
    """One flow's theory value against its estimate.

    ``z`` is the standardised deviation, or None when the estimate has zero
    standard error (the verdict then comes from exact equality) or when the
    flow is not applicable to the configuration.
    """

    name: str
    theory: float
    estimate: FlowEstimate | None
    z: float | None
    verdict: str


@dataclass(frozen=True)
class ComparisonResult:
    flows: list[FlowComparison]
    z_max: float
    overall: bool


def estimate(count: int, total: int) -> FlowEstimate:
    """Bernoulli rate estimate for ``count`` successes in ``total`` trials."""
    if total <= 0:
        raise ValueError(f"total must be positive, got {total}")
    mean = count / total
    q = min(mean, 1.0)
    return FlowEstimate(mean=mean, std_error=math.sqrt(max(q * (1.0 - q), 0.0) / total))


def _judge(
    name: str, theory_value: float, est: FlowEstimate | None, z_max: float
) -> FlowComparison:
    if est is None:
        return FlowComparison(name, theory_value, None, None, NOT_APPLICABLE)
    if est.std_error > 0.0:
        z = (est.mean - theory_value) / est.std_error
        return FlowComparison(
            name, theory_value, est, z, PASS if abs(z) <= z_max else FAIL
        )
    # A degenerate estimate (every trial identical) must match exactly.
    return FlowComparison(
        name, theory_value, est, None, PASS if est.mean == theory_value else FAIL
    )


def compare(
    theory: ThroughputReport,
    stats: SimStats,
    config: NetworkConfig,
    z_max: float = 4.0,
) -> ComparisonResult:
    """Judge every flow of ``stats`` against ``theory`` at ``z_max``.

    Flows of an absent station class are reported as not applicable, as is
    the head composition when the AP never won a slot.  The aggregate is
    split into its downlink and uplink slot fractions, whose variances add.
    """
    if stats.total_slots <= 0:
        raise ValueError("stats cover no measured slots")
    n, m, t = config.n, config.m, stats.total_slots

    hd_down = estimate(sum(stats.down_slots[:n]), n * t) if n > 0 else None
    hd_up = estimate(sum(stats.up_slots[:n]), n * t) if n > 0 else None
    fd_down = estimate(sum(stats.down_slots[n:]), m * t) if m > 0 else None
    fd_up = estimate(sum(stats.up_slots[n:]), m * t) if m > 0 else None
    p = (
        estimate(stats.ap_wins_hd_head, stats.ap_wins)
        if stats.ap_wins > 0
        else None
    )
    down_frac = estimate(sum(stats.down_slots), t)
    up_frac = estimate(sum(stats.up_slots), t)
    total = FlowEstimate(
        mean=down_frac.mean + up_frac.mean,
        std_error=math.hypot(down_frac.std_error, up_frac.std_error),
    )

    flows = [
        _judge("hd_down", theory.hd_down, hd_down, z_max),
        _judge("hd_up", theory.hd_up, hd_up, z_max),
        _judge("fd_down", theory.fd_down, fd_down, z_max),
        _judge("fd_up", theory.fd_up, fd_up, z_max),
        _judge("p", theory.p, p, z_max),
        _judge("sum", theory.sum, total, z_max),
    ]
    overall = all(f.verdict != FAIL for f in flows)
    return ComparisonResult(flows=flows, z_max=z_max, overall=overall)
