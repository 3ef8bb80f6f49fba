"""Closed-form slot throughput for one full-duplex AP serving a station mix.

The network runs slotted random access: in every slot the access point
transmits with probability ``p_A``, each of the ``m`` full-duplex stations
with probability ``p_F``, and each of the ``n`` half-duplex stations with
probability ``p_H``.  Exactly one of these events fires per slot, so the
probabilities close to one.  The AP keeps an infinite backlog of downlink
packets with uniformly random destinations and serves it in FIFO order,
except that a winning full-duplex station pulls its own packet out of turn,
which it answers with a simultaneous uplink.

All flows below are per-station probabilities that a slot carries a packet
in the given direction, in steady state.
"""

from __future__ import annotations

from dataclasses import dataclass

# Absolute slack allowed on p_A + m*p_F + n*p_H = 1.
CLOSURE_TOL = 1e-9

# Relative slack under which the head fraction is snapped to exactly 1.
# The saturation argument can land on 1 mathematically yet round to
# 1 +/- 2 ulp in floats; downstream code branches on p == 1.
_SNAP_TOL = 1e-12


class InvalidConfigError(ValueError):
    """Raised when an operation receives a config that fails validation."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class NetworkConfig:
    """Station counts and per-slot access probabilities.

    ``m`` counts full-duplex stations, ``n`` half-duplex stations.  The
    probability of an unused class must be zero: ``p_F == 0`` when
    ``m == 0`` and ``p_H == 0`` when ``n == 0``.
    """

    m: int
    n: int
    p_A: float
    p_F: float
    p_H: float


@dataclass(frozen=True)
class ThroughputReport:
    """Per-station flow rates plus the aggregate slot usage.

    ``p`` is the probability that the packet at the head of the AP queue is
    destined to a half-duplex station.  ``sum`` counts delivered packets per
    slot over the whole network (downlink plus uplink), so it lives in
    [1, 2]: 1 when every slot carries one packet, 2 when every slot carries
    a full-duplex pair.
    """

    p: float
    hd_down: float
    hd_up: float
    fd_down: float
    fd_up: float
    sum: float


def validate(config: NetworkConfig) -> list[str]:
    """Return every invariant violated by ``config``, empty when valid.

    Never raises; callers that need a hard failure use
    :func:`require_valid`.
    """
    out: list[str] = []
    m, n = config.m, config.n
    if not isinstance(m, int) or isinstance(m, bool):
        out.append(f"m must be an integer, got {m!r}")
        m = 0
    if not isinstance(n, int) or isinstance(n, bool):
        out.append(f"n must be an integer, got {n!r}")
        n = 0
    if m < 0:
        out.append(f"m must be >= 0, got {m}")
    if n < 0:
        out.append(f"n must be >= 0, got {n}")
    if m >= 0 and n >= 0 and m + n < 1:
        out.append("need at least one station (m + n >= 1)")
    for name in ("p_A", "p_F", "p_H"):
        value = getattr(config, name)
        if not 0.0 <= value <= 1.0:
            out.append(f"{name} must lie in [0, 1], got {value!r}")
    if m == 0 and config.p_F != 0.0:
        out.append(f"p_F must be 0 when m == 0, got {config.p_F!r}")
    if n == 0 and config.p_H != 0.0:
        out.append(f"p_H must be 0 when n == 0, got {config.p_H!r}")
    if m >= 0 and n >= 0:
        closure = config.p_A + m * config.p_F + n * config.p_H
        if abs(closure - 1.0) > CLOSURE_TOL:
            out.append(
                f"p_A + m*p_F + n*p_H must equal 1 within {CLOSURE_TOL}, "
                f"got {closure!r}"
            )
    return out


def require_valid(config: NetworkConfig) -> NetworkConfig:
    """Return ``config`` unchanged or raise :class:`InvalidConfigError`."""
    violations = validate(config)
    if violations:
        raise InvalidConfigError(violations)
    return config


def head_fraction(config: NetworkConfig) -> float:
    """Stationary probability that the AP queue head targets a half-duplex station.

    Full-duplex stations remove their own packets out of turn, so
    half-duplex packets pile up at the head beyond their n/(n+m) share.  The
    fraction saturates at 1 once full-duplex pull-outs outpace the head
    service rate.

    Conventions for degenerate inputs: 1 when there are no full-duplex
    stations, 0 when there are no half-duplex stations, and 0 when the AP
    never transmits (the queue head is then never observed).
    """
    require_valid(config)
    if config.m == 0:
        return 1.0
    if config.n == 0:
        return 0.0
    if config.p_A == 0.0:
        return 0.0
    share = config.n / (config.n + config.m)
    pressure = (config.p_A + config.m * config.p_F) / config.p_A
    raw = share * pressure
    if raw >= 1.0 - _SNAP_TOL:
        return 1.0
    return raw


def throughputs(config: NetworkConfig) -> ThroughputReport:
    """Closed-form per-station flows for ``config``.

    Flows of an absent station class are reported as 0.  ``fd_down`` and
    ``fd_up`` are equal by construction: a full-duplex downlink is answered
    by an uplink in the same slot and vice versa.
    """
    require_valid(config)
    p = head_fraction(config)
    m, n = config.m, config.n
    hd_down = config.p_A * p / n if n > 0 else 0.0
    hd_up = config.p_H if n > 0 else 0.0
    fd = config.p_A * (1.0 - p) / m + config.p_F if m > 0 else 0.0
    total = 1.0 + m * config.p_F + config.p_A * (1.0 - p)
    return ThroughputReport(
        p=p,
        hd_down=hd_down,
        hd_up=hd_up,
        fd_down=fd,
        fd_up=fd,
        sum=total,
    )


def dca_config(m: int, n: int) -> NetworkConfig:
    """Uniform contention: every contender, AP included, gets 1/(1+m+n).

    This is what a decentralised backoff scheme converges to when all
    1 + m + n contenders are treated alike.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise InvalidConfigError(
            [f"need m >= 0, n >= 0, m + n >= 1, got m={m}, n={n}"]
        )
    q = 1.0 / (1 + m + n)
    return NetworkConfig(
        m=m,
        n=n,
        p_A=q,
        p_F=q if m > 0 else 0.0,
        p_H=q if n > 0 else 0.0,
    )


def fairness_config(m: int, n: int) -> NetworkConfig:
    """Access probabilities that equalise all four per-station flows.

    With half-duplex stations present the solution is p_H = p_F = 1/(2n+m)
    and p_A = n/(2n+m), which drives the queue head composition exactly to
    its saturation point.  Every flow then equals 1/(2n+m).  Without
    half-duplex stations the AP can stay silent and let the m full-duplex
    stations split the medium evenly.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise InvalidConfigError(
            [f"need m >= 0, n >= 0, m + n >= 1, got m={m}, n={n}"]
        )
    if n == 0:
        return NetworkConfig(m=m, n=0, p_A=0.0, p_F=1.0 / m, p_H=0.0)
    denom = 2 * n + m
    return NetworkConfig(
        m=m,
        n=n,
        p_A=n / denom,
        p_F=1.0 / denom if m > 0 else 0.0,
        p_H=1.0 / denom,
    )


def dca_gain(m: int, n: int) -> float:
    """Aggregate throughput under uniform contention: 1 + m/(1+m+n).

    Equals ``throughputs(dca_config(m, n)).sum`` whenever half-duplex
    stations are present; the surplus over 1 is the fraction of slots won
    by a full-duplex station, each carrying two packets.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise InvalidConfigError(
            [f"need m >= 0, n >= 0, m + n >= 1, got m={m}, n={n}"]
        )
    return 1.0 + m / (1 + m + n)
