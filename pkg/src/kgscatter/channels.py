"""Asymptotic channels and the five scattering regimes.

A channel is propagating when (E - V)^2 > m^2. Its wavenumber carries the sign
of E - V so that the group velocity k / (E - V) is positive.
"""

import enum
import math
from dataclasses import dataclass

__all__ = [
    "ChannelState",
    "EnergyRegime",
    "channel_state",
    "classify",
    "has_superradiant_band",
    "regime_bands",
]


@dataclass(frozen=True)
class ChannelState:
    propagating: bool
    k_signed: float = 0.0
    kappa: float = 0.0
    e_minus_v: float = 0.0

    @property
    def log_derivative(self):
        """Log-derivative of the outgoing/decaying wave in this channel."""
        if self.propagating:
            return complex(0.0, self.k_signed)
        return complex(-self.kappa, 0.0)

    @property
    def wavenumber(self):
        """Complex wavenumber: signed k if propagating, i*kappa if evanescent."""
        if self.propagating:
            return complex(self.k_signed, 0.0)
        return complex(0.0, self.kappa)


class EnergyRegime(enum.Enum):
    ABOVE_POSITIVE_THRESHOLD = "above+"
    RIGHT_EVANESCENT = "evanR"
    SUPERRADIANT = "super"
    LEFT_EVANESCENT = "evanL"
    BELOW_NEGATIVE_THRESHOLD = "below-"

    @property
    def expected_behavior(self):
        return _EXPECTED[self]


_EXPECTED = {
    EnergyRegime.ABOVE_POSITIVE_THRESHOLD: "R<1",
    EnergyRegime.RIGHT_EVANESCENT: "R=1",
    EnergyRegime.SUPERRADIANT: "R>1",
    EnergyRegime.LEFT_EVANESCENT: "R=1 (conv)",
    EnergyRegime.BELOW_NEGATIVE_THRESHOLD: "R<1",
}


def channel_state(E, v_asym, m):
    """Channel in an asymptotic region of potential ``v_asym``.

    Exactly at threshold (|E - V| == m) the channel is propagating with k = 0.
    """
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m!r}")
    d = float(E) - float(v_asym)
    q = d * d - m * m
    if q >= 0.0:
        return ChannelState(True, math.copysign(math.sqrt(q), d), 0.0, d)
    return ChannelState(False, 0.0, math.sqrt(-q), d)


def _classify_by_channels(E, v_l, v_r, m):
    left = channel_state(E, v_l, m)
    right = channel_state(E, v_r, m)
    if not left.propagating:
        # also covers both-evanescent energies: nothing is incident
        return EnergyRegime.LEFT_EVANESCENT
    if not right.propagating:
        return EnergyRegime.RIGHT_EVANESCENT
    sl = left.e_minus_v > 0
    sr = right.e_minus_v > 0
    if sl and sr:
        return EnergyRegime.ABOVE_POSITIVE_THRESHOLD
    if not sl and not sr:
        return EnergyRegime.BELOW_NEGATIVE_THRESHOLD
    # opposite signs on the two sides: Klein band
    return EnergyRegime.SUPERRADIANT


def regime_bands(th):
    """Regime intervals ``[(label, lo, hi), ...]`` in increasing energy.

    Adjacent intervals with the same label are merged; the outer intervals
    extend to -inf / +inf.
    """
    m = th.mass
    edges = sorted(set(th.sorted()))
    bounds = [-math.inf, *edges, math.inf]
    bands = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if math.isinf(lo):
            probe = hi - 1.0
        elif math.isinf(hi):
            probe = lo + 1.0
        else:
            probe = 0.5 * (lo + hi)
        label = _classify_by_channels(probe, th.v_l, th.v_r, m)
        if bands and bands[-1][0] is label:
            bands[-1] = (label, bands[-1][1], hi)
        else:
            bands.append((label, lo, hi))
    return bands


def classify(E, th):
    """Regime of energy ``E``; a threshold energy belongs to the band above it."""
    for label, lo, hi in regime_bands(th):
        if lo <= E < hi:
            return label
    raise ValueError(f"cannot classify energy {E!r}")


def has_superradiant_band(th):
    """Whether the Klein band between the two plateaus is non-empty (|V_R - V_L| > 2m)."""
    return abs(th.v_r - th.v_l) > 2.0 * th.mass
