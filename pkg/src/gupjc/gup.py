"""GUP parameterization and construction of the modified Hamiltonians.

The minimal-length deformation [q, p] = i*hbar*(1 - 2*delta*gamma*p
+ 4*epsilon*gamma^2*p^2) modifies the quantized single-mode field.  After
expressing everything through the modified ladder operators, the corrections
enter through four derived coefficients evaluated at the field frequency:

    phi    = hbar*omega*gamma^2 * (3*delta^2 - 2*epsilon)
    chi    = hbar*omega*gamma^2 / 2 * (delta^2 - epsilon)
    beta   = hbar*omega*gamma^2 / 2 * (delta^2 - 2*epsilon)
    |xi|   = delta*gamma*sqrt(2*hbar*omega)

with the identity 8*chi = phi + 2*beta.  phi and chi/beta carry the quadratic
(momentum-squared) channel; xi carries the linear channel, which survives
only in the counter-rotating two-photon terms.

All quantities are SI: frequencies in rad/s, gamma in J^(-1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import (
    GAMMA0_ELECTROWEAK_BOUND,
    GAMMA_SI_DIVISOR,
    HBAR,
    PLANCK_LENGTH,
)
from .fock import (
    OperatorMatrix,
    SIGMA_3,
    SIGMA_PLUS,
    build_annihilation,
    field_identity,
    tensor_with_atom,
)


@dataclass(frozen=True)
class GupParams:
    """Physical GUP inputs: dimensionless strength and the two channel weights.

    ``gamma`` is the SI-valued strength gamma0 / (sqrt(M_Planck) * c); delta
    and epsilon weight the linear and quadratic momentum corrections.  The
    common quadratic-only model corresponds to delta = 0, epsilon = 1/4.
    """

    gamma0: float
    delta: float
    epsilon: float

    def __post_init__(self):
        if self.gamma0 < 0:
            raise ValueError("gamma0 must be non-negative")
        if not (math.isfinite(self.delta) and math.isfinite(self.epsilon)):
            raise ValueError("delta and epsilon must be finite")

    @property
    def gamma(self) -> float:
        """GUP strength in SI units, J^(-1/2)."""
        return self.gamma0 / GAMMA_SI_DIVISOR

    @classmethod
    def from_gamma(cls, gamma: float, delta: float, epsilon: float) -> "GupParams":
        """Build from the SI-valued gamma instead of gamma0."""
        return cls(gamma0=gamma * GAMMA_SI_DIVISOR, delta=delta, epsilon=epsilon)


@dataclass(frozen=True)
class GupCoefficients:
    """Derived dimensionless coefficients at a given field frequency."""

    phi: float
    chi: float
    beta: float
    omega: float
    xi_mag: float = 0.0

    @property
    def xi(self) -> complex:
        """Complex linear-channel coefficient, purely imaginary by convention."""
        return 1j * self.xi_mag


@dataclass(frozen=True)
class InteractionConfig:
    """Atom-field interaction parameters: frequencies and dipole coupling.

    ``coupling`` is the dipole rate lambda = d*g/hbar in rad/s, taken as a
    direct input; the detuning is omega0 - omega.
    """

    omega: float
    omega0: float
    coupling: float

    def __post_init__(self):
        if self.omega <= 0 or self.omega0 <= 0:
            raise ValueError("omega and omega0 must be positive")
        if self.coupling < 0:
            raise ValueError("coupling must be non-negative")

    @property
    def detuning(self) -> float:
        return self.omega0 - self.omega

    @property
    def mu(self) -> float:
        """Dispersive rate coupling^2 / detuning (rad/s)."""
        if self.detuning == 0.0:
            raise ZeroDivisionError("mu is undefined at zero detuning")
        return self.coupling**2 / self.detuning


@dataclass(frozen=True)
class LengthScaleBounds:
    length_scale: float  # metres
    gamma_upper_ok: bool


def derive_coefficients(p: GupParams, omega: float) -> GupCoefficients:
    """Evaluate phi, chi, beta and |xi| at field frequency omega (rad/s)."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    base = HBAR * omega * p.gamma**2
    d2 = p.delta**2
    return GupCoefficients(
        phi=base * (3.0 * d2 - 2.0 * p.epsilon),
        chi=0.5 * base * (d2 - p.epsilon),
        beta=0.5 * base * (d2 - 2.0 * p.epsilon),
        omega=omega,
        xi_mag=p.delta * p.gamma * math.sqrt(2.0 * HBAR * omega),
    )


def length_scale_bounds(p: GupParams) -> LengthScaleBounds:
    """Length scale gamma0^2 * l_Planck at which the deformation becomes O(1).

    ``gamma_upper_ok`` reports whether gamma0 respects the electroweak bound
    gamma0 <= 1e8 (length scales below ~1e-18 m are experimentally excluded).
    """
    if p.gamma0 <= 0:
        raise ValueError("length scale requires gamma0 > 0")
    return LengthScaleBounds(
        length_scale=p.gamma0**2 * PLANCK_LENGTH,
        gamma_upper_ok=p.gamma0 <= GAMMA0_ELECTROWEAK_BOUND,
    )


def _modified_field_diagonal(c: GupCoefficients, omega: float, ncut: int,
                             include_zero_point: bool) -> np.ndarray:
    """Diagonal field energies omega*[n (+1/2) - 4(n^2+n)chi - beta], rad/s."""
    n = np.arange(ncut + 1, dtype=float)
    diag = n - 4.0 * (n**2 + n) * c.chi - c.beta
    if include_zero_point:
        diag = diag + 0.5
    return omega * diag


def build_modified_free_field(c: GupCoefficients, omega: float, ncut: int) -> OperatorMatrix:
    """GUP-corrected free-field Hamiltonian (H/hbar, field space only).

    Diagonal with entries omega*[(n + 1/2) - 4*(n^2 + n)*chi - beta]; the
    quadratic channel compresses the level spacing, E_1 - E_0 =
    hbar*omega*(1 - 8*chi).
    """
    if ncut < 1:
        raise ValueError("ncut must be at least 1")
    diag = _modified_field_diagonal(c, omega, ncut, include_zero_point=True)
    return OperatorMatrix(ncut, np.diag(diag).astype(complex), hermitian=True)


def _rwa_coupling_block(c: GupCoefficients, ncut: int) -> np.ndarray:
    """Field part of the co-rotating coupling: a*(1 - N*phi)."""
    a = build_annihilation(ncut).entries
    n_diag = np.arange(ncut + 1, dtype=float)
    return a @ np.diag(1.0 - n_diag * c.phi).astype(complex)


def build_rwa_hamiltonian(cfg: InteractionConfig, c: GupCoefficients, ncut: int) -> OperatorMatrix:
    """Rotating-wave GUP Hamiltonian on the atom+field space (H/hbar, rad/s).

    H/hbar = omega0/2 * sigma3 + omega*[N - 4(N^2+N)chi - beta]
             + coupling * (sigma+ a(1 - N phi) + h.c.)

    The field part is diagonal; the coupling connects |e,n> and |g,n+1> with
    matrix element coupling*sqrt(n+1)*(1 - (n+1)*phi).
    """
    if ncut < 2:
        raise ValueError("ncut must be at least 2")
    field_diag = _modified_field_diagonal(c, cfg.omega, ncut, include_zero_point=False)
    diag_part = tensor_with_atom(0.5 * cfg.omega0 * SIGMA_3, field_identity(ncut))
    diag_part += tensor_with_atom(np.eye(2), np.diag(field_diag))
    raising = cfg.coupling * tensor_with_atom(SIGMA_PLUS, _rwa_coupling_block(c, ncut))
    entries = diag_part + raising + raising.conj().T
    return OperatorMatrix(ncut, entries, hermitian=True)


def build_full_interaction_hamiltonian(
    cfg: InteractionConfig, c: GupCoefficients, ncut: int
) -> OperatorMatrix:
    """Pre-RWA dipole interaction with both GUP channels (H/hbar, rad/s).

    H_I/hbar = coupling * [sigma+ (a^dag + a - phi*a*N + xi*a^2) + h.c.]

    Counter-rotating one-photon terms and the linear-channel two-photon terms
    (xi = i*|xi|) are kept; cubic ladder terms are dropped since they are both
    rapidly rotating and gamma^2-suppressed.  Hermiticity holds exactly
    because xi is purely imaginary.
    """
    if ncut < 3:
        raise ValueError("ncut must be at least 3")
    a = build_annihilation(ncut).entries
    adag = a.conj().T
    n_diag = np.diag(np.arange(ncut + 1, dtype=float)).astype(complex)
    block = adag + a - c.phi * (a @ n_diag) + c.xi * (a @ a)
    raising = cfg.coupling * tensor_with_atom(SIGMA_PLUS, block)
    entries = raising + raising.conj().T
    return OperatorMatrix(ncut, entries, hermitian=True)
