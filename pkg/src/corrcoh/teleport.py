"""Standard teleportation through a shared two-qubit channel state."""

import logging
from dataclasses import dataclass

import numpy as np

from .linalg import SpectrumTriple, singular_values_3x3
from .measures import correlated_coherence, geometric_discord
from .states import pauli_decompose

log = logging.getLogger(__name__)

USELESS_CC = 1e-12
BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class TeleportReport:
    fidelity: float
    singular_values: SpectrumTriple
    bound_lower: float
    bound_upper: float
    bounds_satisfied: bool
    correlated_coherence: float
    renormalized_discord: float

    def to_dict(self):
        return {
            "fidelity": self.fidelity,
            "singular_values": list(self.singular_values),
            "bound_lower": self.bound_lower,
            "bound_upper": self.bound_upper,
            "bounds_satisfied": self.bounds_satisfied,
            "correlated_coherence": self.correlated_coherence,
        }


def _fidelity_from_spectrum(sv):
    return 0.5 * (1.0 + sv.sum() / 3.0)


def teleport_fidelity(rho):
    """Best average teleportation fidelity, ``(1 + tr|E| / 3) / 2``."""
    return _fidelity_from_spectrum(singular_values_3x3(pauli_decompose(rho).E))


def fidelity_discord_bounds(rho):
    """Evaluate ``(1 + D)/2 <= F <= (2 + sqrt(D))/3`` with D the 1/3-normalized geometric discord.

    This is reported, never enforced: the inequality fails on maximally
    entangled states for this normalization.
    """
    sv = singular_values_3x3(pauli_decompose(rho).E)
    fid = _fidelity_from_spectrum(sv)
    _, dg, _ = geometric_discord(rho)
    lower = 0.5 * (1.0 + dg)
    upper = (2.0 + float(np.sqrt(dg))) / 3.0
    ok = lower - BOUND_SLACK <= fid <= upper + BOUND_SLACK
    return TeleportReport(
        fidelity=fid,
        singular_values=sv,
        bound_lower=lower,
        bound_upper=upper,
        bounds_satisfied=bool(ok),
        correlated_coherence=correlated_coherence(rho),
        renormalized_discord=dg,
    )


def zero_cc_certificate(rho):
    """``(is_useless, fidelity)``; useless means no correlated coherence at all."""
    cc = correlated_coherence(rho)
    return cc <= USELESS_CC, teleport_fidelity(rho)


@dataclass
class BoundScan:
    trials: int
    violations: int
    lower_violations: int
    upper_violations: int
    worst_upper_excess: float
    worst_lower_excess: float


def scan_bound_violations(states):
    """Evaluate the discord-fidelity bounds on every state and log each violation."""
    scan = BoundScan(0, 0, 0, 0, 0.0, 0.0)
    for i, rho in enumerate(states):
        rep = fidelity_discord_bounds(rho)
        scan.trials += 1
        low = rep.bound_lower - rep.fidelity
        high = rep.fidelity - rep.bound_upper
        scan.worst_lower_excess = max(scan.worst_lower_excess, low)
        scan.worst_upper_excess = max(scan.worst_upper_excess, high)
        if not rep.bounds_satisfied:
            scan.violations += 1
            scan.lower_violations += low > BOUND_SLACK
            scan.upper_violations += high > BOUND_SLACK
            log.info(
                "bound violation #%d: F=%.15g lower=%.15g upper=%.15g D=%.15g",
                i, rep.fidelity, rep.bound_lower, rep.bound_upper, rep.renormalized_discord,
            )
    return scan
