"""Quartic scalar model with a symmetry-breaking vacuum.

The potential V(Phi) = -sigma/2 Phi^2 + lambda/24 Phi^4 (sigma, lambda > 0)
has its minimum shifted to Phi1 = sqrt(6 sigma/lambda); the excitation on
that vacuum carries mass m_sigma = sqrt(2 sigma).  The sign-flipped
configuration +m^2/2 Phi^2 + lambda/24 Phi^4 is the symmetric case with a
single mass scale.  At one loop the coupling runs to
lambda_R = lambda (1 + 9 lambda / 32 pi^2), while the bare lambda keeps the
scale-ratio meaning lambda = 3 (m_sigma/Phi1)^2 at every order.

Chain (bubble) resummation is modelled by the running form

    lambda(mu) = lambda0 / (1 - b lambda0 ln(mu^2/mu0^2)),

whose first-order expansion reproduces the one-loop relation when
b = 9/(32 pi^2) (the default, kept configurable: the resummation kernel is
a minimal stand-in, not a unique choice).  Every finite-order truncation is
regular; only the resummed form has a pole, at mu_c = mu0 exp(1/(2 b
lambda0)).  Beyond mu_c the broken vacuum is reported as restored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BETA_ONE_LOOP",
    "VACUUM_BROKEN",
    "VACUUM_RESTORED",
    "LandauPoleError",
    "SSBPotential",
    "ResummationState",
    "HiggsReference",
    "potential",
    "ssb_vacuum",
    "lambda_renormalized",
    "lambda_invariant_ratio",
    "geometric_partial_sum",
    "resum_chain",
    "resum_first_order",
    "critical_scale",
    "symmetry_status",
]

#: One-loop coefficient 9/(32 pi^2) in the coupling relation.
BETA_ONE_LOOP = 9.0 / (32.0 * math.pi**2)

VACUUM_BROKEN = "ssb-vacuum"
VACUUM_RESTORED = "symmetry-restoration"


class LandauPoleError(RuntimeError):
    """The resummed coupling was requested at or beyond its pole."""

    def __init__(self, mu: float, critical: float):
        self.mu = mu
        self.critical = critical
        super().__init__(
            f"resummed coupling has a pole: mu = {mu:g} reaches the critical scale {critical:g}"
        )


def potential(phi: float, mass_sq_term: float, lam: float) -> float:
    """V(Phi) = mass_sq_term/2 Phi^2 + lam/24 Phi^4.

    mass_sq_term > 0 is the symmetric configuration; the broken one uses
    mass_sq_term = -sigma.
    """
    return 0.5 * mass_sq_term * phi * phi + lam / 24.0 * phi**4


@dataclass(frozen=True)
class SSBPotential:
    """Wrong-sign mass parameter sigma (GeV^2) and quartic coupling lam."""

    sigma: float
    lam: float

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam!r}")

    @property
    def phi1(self) -> float:
        return math.sqrt(6.0 * self.sigma / self.lam)

    @property
    def m_sigma(self) -> float:
        return math.sqrt(2.0 * self.sigma)

    def __call__(self, phi: float) -> float:
        return potential(phi, -self.sigma, self.lam)


def ssb_vacuum(pot: SSBPotential) -> tuple[float, float]:
    """(Phi1, m_sigma) = (sqrt(6 sigma/lambda), sqrt(2 sigma))."""
    return pot.phi1, pot.m_sigma


def lambda_renormalized(lam: float) -> float:
    """One-loop coupling lambda (1 + 9 lambda / 32 pi^2); finite and nonzero
    for every lambda > 0."""
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam!r}")
    return lam * (1.0 + BETA_ONE_LOOP * lam)


def lambda_invariant_ratio(m_sigma: float, phi1: float) -> float:
    """Scale-ratio meaning of the coupling: 3 (m_sigma/Phi1)^2."""
    if not (m_sigma > 0 and phi1 > 0):
        raise ValueError("m_sigma and phi1 must be positive")
    return 3.0 * (m_sigma / phi1) ** 2


def geometric_partial_sum(r: float, n: int) -> float:
    """sum_{k=0..n} r^k, finite for every finite n (n+1 at r = 1).

    Uses the Horner recurrence for stability; the closed form only takes
    over for very long, strictly contracting sums whose tail is below
    double-precision resolution anyway.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if r == 1.0:
        return float(n + 1)
    if n > 100_000:
        try:
            return (1.0 - r ** (n + 1)) / (1.0 - r)
        except OverflowError:
            if r > 1.0:
                return math.inf
            return -math.inf if (n + 1) % 2 == 0 else math.inf
    acc = 1.0
    for _ in range(n):
        acc = 1.0 + r * acc
    return acc


@dataclass(frozen=True)
class ResummationState:
    """Reference coupling lambda0 at scale mu0 (GeV) with resummation
    coefficient b."""

    lambda0: float
    mu0: float
    beta_coeff: float = BETA_ONE_LOOP

    def __post_init__(self) -> None:
        if not self.lambda0 > 0:
            raise ValueError(f"lambda0 must be positive, got {self.lambda0!r}")
        if not self.mu0 > 0:
            raise ValueError(f"mu0 must be positive, got {self.mu0!r}")
        if not self.beta_coeff > 0:
            raise ValueError(f"beta_coeff must be positive, got {self.beta_coeff!r}")


def resum_chain(state: ResummationState, mu: float) -> float:
    """Resummed running coupling lambda0 / (1 - b lambda0 ln(mu^2/mu0^2)).

    Raises LandauPoleError once the denominator is no longer positive.
    """
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu!r}")
    log_ratio = 2.0 * math.log(mu / state.mu0)
    denominator = 1.0 - state.beta_coeff * state.lambda0 * log_ratio
    if denominator <= 0.0:
        raise LandauPoleError(mu=mu, critical=critical_scale(state))
    return state.lambda0 / denominator


def resum_first_order(state: ResummationState, mu: float) -> float:
    """First-order truncation lambda0 (1 + b lambda0 ln(mu^2/mu0^2)).

    Finite for every finite mu; at ln(mu^2/mu0^2) = 1 and b = 9/(32 pi^2) it
    coincides with lambda_renormalized(lambda0).
    """
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu!r}")
    log_ratio = 2.0 * math.log(mu / state.mu0)
    return state.lambda0 * (1.0 + state.beta_coeff * state.lambda0 * log_ratio)


def critical_scale(state: ResummationState) -> float:
    """Pole position mu_c = mu0 exp(1/(2 b lambda0)) of the resummed coupling."""
    exponent = 1.0 / (2.0 * state.beta_coeff * state.lambda0)
    try:
        return state.mu0 * math.exp(exponent)
    except OverflowError:
        return math.inf


def symmetry_status(state: ResummationState, mu: float) -> str:
    """VACUUM_BROKEN below the critical scale, VACUUM_RESTORED beyond it."""
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu!r}")
    return VACUUM_RESTORED if mu > critical_scale(state) else VACUUM_BROKEN


@dataclass(frozen=True)
class HiggsReference:
    """Reference mass window and point value in GeV (stored inputs, not
    derived here)."""

    lower_bound: float = 76.0
    upper_bound: float = 170.0
    predicted: float = 138.0

    def __post_init__(self) -> None:
        if not self.lower_bound < self.predicted < self.upper_bound:
            raise ValueError(
                f"reference ordering violated: {self.lower_bound} < {self.predicted} < {self.upper_bound} must hold"
            )
