"""Collective jump operators of two decaying atoms.

The symmetric decay matrix ``[[gamma1, gamma12], [gamma12, gamma2]]`` is
diagonalized into two statistically independent decay channels.  For
equal single-atom rates these are the superradiant (symmetric) and
subradiant (antisymmetric) combinations of the lowering operators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import S1_MINUS, S2_MINUS

__all__ = ["DecayMatrix", "JumpBasis", "decompose", "jump_probabilities"]

#: relative threshold below which the decay matrix counts as degenerate
_DEGENERATE_EPS = 1e-12


@dataclass(frozen=True)
class DecayMatrix:
    """Single-atom rates and the collective cross-damping, in gamma_ref units."""

    gamma1: float
    gamma2: float
    gamma12: float = 0.0

    def __post_init__(self) -> None:
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValueError("decay rates must be non-negative")
        if self.gamma1 * self.gamma2 < self.gamma12**2 * (1.0 - 1e-12):
            raise ValueError(
                "unphysical decay matrix: gamma1*gamma2 < gamma12^2 "
                "(negative subradiant rate)"
            )


@dataclass(frozen=True)
class JumpBasis:
    """Eigen-rates and mixing coefficients of the two collective channels.

    ``l1 = sqrt(lambda1) (alpha S1- + beta S2-)`` and
    ``l2 = sqrt(lambda2) (-beta S1- + alpha S2-)`` as 4x4 matrices.
    """

    lambda1: float
    lambda2: float
    alpha: float
    beta: float
    l1: np.ndarray
    l2: np.ndarray

    @property
    def operators(self) -> tuple[np.ndarray, np.ndarray]:
        return self.l1, self.l2


def decompose(d: DecayMatrix) -> JumpBasis:
    """Diagonalize the decay matrix into the two collective jump channels.

    The degenerate point gamma12 = 0, gamma1 = gamma2 uses the
    independent-channel convention alpha = 1, beta = 0 (the limit
    gamma12 -> 0 at fixed rate asymmetry).  beta carries the sign of
    gamma12.
    """
    gbar = 0.5 * (d.gamma1 + d.gamma2)
    dg = 0.5 * (d.gamma1 - d.gamma2)
    s = np.hypot(d.gamma12, dg)
    lam1 = gbar + s
    lam2 = max(gbar - s, 0.0)  # clip roundoff; genuine negatives are rejected above

    scale = _DEGENERATE_EPS * gbar
    if abs(d.gamma12) <= scale and abs(dg) <= scale:
        alpha, beta = 1.0, 0.0
    elif abs(d.gamma12) <= scale:
        # diagonal decay matrix: channels are the individual atoms
        alpha, beta = (1.0, 0.0) if dg > 0 else (0.0, 1.0)
    else:
        denom = np.hypot(d.gamma12, dg + s)
        alpha = (dg + s) / denom
        beta = d.gamma12 / denom

    l1 = np.sqrt(lam1) * (alpha * S1_MINUS + beta * S2_MINUS)
    l2 = np.sqrt(lam2) * (-beta * S1_MINUS + alpha * S2_MINUS)
    return JumpBasis(lambda1=lam1, lambda2=lam2, alpha=alpha, beta=beta, l1=l1, l2=l2)


def jump_probabilities(
    psi: np.ndarray, basis: JumpBasis, dt: float
) -> tuple[float, float]:
    """Per-step jump probabilities p_m = <psi|L_m^dag L_m|psi> dt."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    p1 = float(np.vdot(basis.l1 @ psi, basis.l1 @ psi).real) * dt
    p2 = float(np.vdot(basis.l2 @ psi, basis.l2 @ psi).real) * dt
    return p1, p2
