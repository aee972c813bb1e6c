"""Electromagnetics of a driven dielectric nanosphere and nearby emitters.

The fiber tip is modeled as a polarizable subwavelength sphere at the
origin.  The scattered dipole field of the sphere sets the local drive
(Rabi frequency, calibrated to gamma0 at the tip surface) and the dipole
orientations; the sphere also Purcell-modifies the single-atom decay
rates.  Pair coefficients gamma12/delta12 use the free-space two-dipole
expressions with the Purcell-modified rates substituted.

Lengths are in nanometers, wavenumbers in 1/nm, rates in units of the
free-space decay rate gamma0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .operators import PhysicalParams

__all__ = [
    "TipGeometry",
    "AtomSite",
    "PairGeometry",
    "polarizability",
    "local_field",
    "dipole_orientation",
    "purcell_rate",
    "pair_coefficients",
    "rabi_at",
    "sample_sites",
    "make_site",
    "realize_parameters",
    "parameter_map",
    "save_map_csv",
    "save_sites_csv",
]

#: calibration point for the Rabi frequency: tip surface, equatorial, in the
#: polarization plane (r = r_tip, theta = 90 deg, phi = 90 deg)
_CAL_THETA = np.pi / 2
_CAL_PHI = np.pi / 2


@dataclass(frozen=True)
class TipGeometry:
    """Sphere radius [nm], permittivity, wavenumber [1/nm], drive amplitude."""

    r_tip: float
    epsilon: float
    k0: float
    e0: float = 1.0
    gamma0: float = 1.0

    def __post_init__(self) -> None:
        if self.r_tip <= 0 or self.k0 <= 0:
            raise ValueError("r_tip and k0 must be positive")
        if self.epsilon <= 0:
            raise ValueError("permittivity must be real and positive")
        # subwavelength check on r_tip/lambda; the default tip geometry
        # (100 nm sphere at 780 nm) sits at 0.128
        size = self.k0 * self.r_tip / (2 * np.pi)
        if size >= 0.5:
            raise ValueError(
                f"r_tip/wavelength = {size:.3g} breaks the subwavelength-sphere model"
            )
        if size > 0.3:
            warnings.warn(
                f"r_tip/wavelength = {size:.3g}: subwavelength approximation is marginal",
                stacklevel=2,
            )

    @classmethod
    def for_wavelength(
        cls, r_tip_nm: float, epsilon: float, wavelength_nm: float, **kw
    ) -> "TipGeometry":
        return cls(r_tip=r_tip_nm, epsilon=epsilon, k0=2 * np.pi / wavelength_nm, **kw)


@dataclass(frozen=True)
class AtomSite:
    """One emitter: spherical position, cartesian dipole axis, local rates."""

    position: tuple[float, float, float]  # (r, theta, phi)
    dipole: np.ndarray  # cartesian unit vector
    gamma: float  # Purcell-modified decay rate [gamma0]
    rabi: float  # local Rabi frequency [gamma0]

    def __post_init__(self) -> None:
        d = np.asarray(self.dipole, dtype=float)
        if abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise ValueError("dipole must be a unit vector")
        object.__setattr__(self, "dipole", d)

    @property
    def cartesian(self) -> np.ndarray:
        return _to_cartesian(*self.position)


@dataclass(frozen=True)
class PairGeometry:
    """Two sites plus their separation and collective coefficients [gamma0]."""

    site1: AtomSite
    site2: AtomSite
    r12: float
    gamma12: float
    delta12: float


def _to_cartesian(r: float, theta: float, phi: float) -> np.ndarray:
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    return np.array([r * st * cp, r * st * sp, r * ct])


def _to_spherical(v: np.ndarray) -> tuple[float, float, float]:
    r = float(np.linalg.norm(v))
    theta = float(np.arccos(np.clip(v[2] / r, -1.0, 1.0))) if r > 0 else 0.0
    phi = float(np.arctan2(v[1], v[0]))
    return r, theta, phi


def _spherical_basis(theta: float, phi: float):
    """Cartesian components of (r_hat, theta_hat, phi_hat)."""
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    r_hat = np.array([st * cp, st * sp, ct])
    t_hat = np.array([ct * cp, ct * sp, -st])
    p_hat = np.array([-sp, cp, 0.0])
    return r_hat, t_hat, p_hat


def polarizability(tip: TipGeometry, k: float | None = None) -> complex:
    """Sphere polarizability [nm^3] with the radiation-damping correction."""
    if k is None:
        k = tip.k0
    alpha0 = 4 * np.pi * tip.r_tip**3 * (tip.epsilon - 1) / (tip.epsilon + 2)
    return alpha0 / (1 - 1j * (k**3 / (6 * np.pi)) * alpha0)


def local_field(tip: TipGeometry, pos: tuple[float, float, float]) -> np.ndarray:
    """Scattered drive field at (r, theta, phi), components on (r, theta, phi).

    E_r = E0 alpha/(4 pi r^3) e^{i k r} 2 cos(theta) (1 - i k r)
    E_theta = E0 alpha/(4 pi r^3) e^{i k r} sin(theta) (1 - i k r - (k r)^2)
    E_phi = 0
    """
    r, theta, _phi = pos
    if r < tip.r_tip:
        raise ValueError("field point lies inside the sphere")
    kr = tip.k0 * r
    pref = tip.e0 * polarizability(tip) / (4 * np.pi * r**3) * np.exp(1j * kr)
    e_r = pref * 2 * np.cos(theta) * (1 - 1j * kr)
    e_t = pref * np.sin(theta) * (1 - 1j * kr - kr**2)
    return np.array([e_r, e_t, 0.0 + 0.0j])


def dipole_orientation(field: np.ndarray) -> np.ndarray:
    """Real unit vector along the major axis of the polarization ellipse.

    Maximizes ||Re(e^{i phi} E)|| over the global phase; invariant under
    multiplication of the field by any complex phase.  Sign convention:
    positive second (theta-hat) component, ties broken toward a positive
    first (r-hat) component.
    """
    e = np.asarray(field, dtype=complex)
    if np.linalg.norm(e) == 0:
        raise ValueError("zero field has no direction")
    # phase that makes sum(E_k^2) real and positive: major-axis alignment
    s = np.sum(e * e)
    if abs(s) < 1e-30 * np.sum(np.abs(e) ** 2):
        # circular polarization: every axis in the ellipse plane is major;
        # the convention picks the one closest to theta-hat (then r-hat)
        basis = []
        for cand in (e.real, e.imag):
            for b in basis:
                cand = cand - (cand @ b) * b
            norm = np.linalg.norm(cand)
            if norm > 1e-15 * np.linalg.norm(np.abs(e)):
                basis.append(cand / norm)
        for axis in (np.array([0.0, 1.0, 0.0]), np.array([1.0, 0.0, 0.0])):
            v = sum((axis @ b) * b for b in basis)
            if np.linalg.norm(v) > 1e-12:
                break
    else:
        phase = np.exp(-0.5j * np.angle(s))
        v = (phase * e).real
    v = v / np.linalg.norm(v)
    if v[1] < 0 or (v[1] == 0 and v[0] < 0):
        v = -v
    return v


def purcell_rate(
    tip: TipGeometry, site_pos: tuple[float, float, float], dipole_radial: float
) -> float:
    """Decay rate near the sphere, interpolating radial/tangential dipoles.

    ``dipole_radial`` is the projection d_hat . r_hat of the dipole axis on
    the radial direction at the site.
    """
    r = site_pos[0]
    if r < tip.r_tip:
        raise ValueError("emitter lies inside the sphere")
    k = tip.k0
    kr = k * r
    alpha = polarizability(tip)
    osc = alpha * np.exp(2j * kr)
    g_perp = 1 + (3 * k**3 / (2 * np.pi)) * np.imag(
        osc * (-1 / kr**4 + 2 / (1j * kr**5) + 1 / kr**6)
    )
    g_par = 1 + (3 * k**3 / (8 * np.pi)) * np.imag(
        osc
        * (1 / kr**2 - 2 / (1j * kr**3) - 3 / kr**4 + 2 / (1j * kr**5) + 1 / kr**6)
    )
    proj = dipole_radial**2
    rate = (g_perp * proj + g_par * (1 - proj)) * tip.gamma0
    if rate <= 0:
        raise ValueError("non-positive decay rate; geometry outside model validity")
    return float(rate)


def pair_coefficients(site1: AtomSite, site2: AtomSite, k0: float) -> tuple[float, float]:
    """Collective decay correction and dipole-dipole shift of two emitters.

    Free-space two-dipole expressions at arbitrary separation, evaluated
    with the sites' (Purcell-modified) decay rates in the sqrt(gamma1
    gamma2) prefactor.  Returns (gamma12, delta12) in gamma0 units.
    """
    r1 = site1.cartesian
    r2 = site2.cartesian
    sep = r2 - r1
    r12 = float(np.linalg.norm(sep))
    if r12 == 0:
        raise ValueError("coincident emitter positions")
    n = sep / r12
    d1, d2 = site1.dipole, site2.dipole
    dd = float(d1 @ d2)
    dn1 = float(d1 @ n)
    dn2 = float(d2 @ n)
    x = k0 * r12
    sx, cx = np.sin(x), np.cos(x)
    transverse = dd - dn1 * dn2
    longitudinal = dd - 3 * dn1 * dn2
    g12 = 1.5 * (transverse * sx / x + longitudinal * (cx / x**2 - sx / x**3))
    d12 = 0.75 * (-transverse * cx / x + longitudinal * (sx / x**2 + cx / x**3))
    pref = np.sqrt(site1.gamma * site2.gamma)
    return float(pref * g12), float(pref * d12)


def rabi_at(
    site_pos: tuple[float, float, float], tip: TipGeometry, d_eg_scale: float = 1.0
) -> float:
    """Local Rabi frequency, calibrated to gamma0 at the tip surface.

    The calibration point is (r = r_tip, theta = 90 deg, phi = 90 deg);
    ``d_eg_scale`` rescales the drive power relative to that calibration.
    """
    ref = local_field(tip, (tip.r_tip, _CAL_THETA, _CAL_PHI))
    ref_norm = np.linalg.norm(ref)
    if ref_norm == 0:
        raise ValueError("vanishing field at the calibration point")
    here = np.linalg.norm(local_field(tip, site_pos))
    return float(d_eg_scale * tip.gamma0 * here / ref_norm)


def sample_sites(
    tip: TipGeometry,
    r_inner: float,
    r_outer: float,
    count: int,
    seed: int,
) -> np.ndarray:
    """Positions uniform in volume over the forward (y > 0) half-sphere shell.

    Returns an array of shape (count, 3) of (r, theta, phi) tuples;
    deterministic for a given seed.
    """
    if not tip.r_tip <= r_inner < r_outer:
        raise ValueError("need r_tip <= r_inner < r_outer")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    u = rng.random(count)
    r = np.cbrt(r_inner**3 + u * (r_outer**3 - r_inner**3))
    # isotropic direction, folded onto the propagation side y > 0
    cos_t = rng.uniform(-1.0, 1.0, count)
    phi = rng.uniform(0.0, 2 * np.pi, count)
    theta = np.arccos(cos_t)
    y = np.sin(theta) * np.sin(phi)
    phi = np.where(y < 0, (2 * np.pi - phi) % (2 * np.pi), phi)
    return np.column_stack([r, theta, phi])


def make_site(
    tip: TipGeometry, pos: tuple[float, float, float], d_eg_scale: float = 1.0
) -> AtomSite:
    """Resolve field, dipole axis, Purcell rate and Rabi frequency at one site."""
    field = local_field(tip, pos)
    d_sph = dipole_orientation(field)
    r_hat, t_hat, p_hat = _spherical_basis(pos[1], pos[2])
    d_cart = d_sph[0] * r_hat + d_sph[1] * t_hat + d_sph[2] * p_hat
    gamma = purcell_rate(tip, pos, d_sph[0])
    rabi = rabi_at(pos, tip, d_eg_scale)
    return AtomSite(position=tuple(pos), dipole=d_cart, gamma=gamma, rabi=rabi)


def realize_parameters(
    positions, tip: TipGeometry, d_eg_scale: float = 1.0
) -> PhysicalParams:
    """Compose the electromagnetic layer into drive/decay parameters.

    One position: second atom disabled (omega2 = gamma12 = delta12 = 0,
    gamma2 kept at gamma0 but never excited).  Two positions: full pair
    parameters.  The detuning is zero throughout.
    """
    positions = [tuple(p) for p in np.atleast_2d(np.asarray(positions, dtype=float))]
    if len(positions) == 1:
        site = make_site(tip, positions[0], d_eg_scale)
        return PhysicalParams(
            omega1=site.rabi, omega2=0.0, delta=0.0,
            gamma1=site.gamma, gamma2=tip.gamma0, gamma12=0.0, delta12=0.0,
        )
    if len(positions) != 2:
        raise ValueError("expected one or two atom positions")
    s1 = make_site(tip, positions[0], d_eg_scale)
    s2 = make_site(tip, positions[1], d_eg_scale)
    g12, d12 = pair_coefficients(s1, s2, tip.k0)
    # guard tiny numerical overshoot of the physical bound
    bound = np.sqrt(s1.gamma * s2.gamma)
    g12 = float(np.clip(g12, -bound, bound))
    return PhysicalParams(
        omega1=s1.rabi, omega2=s2.rabi, delta=0.0,
        gamma1=s1.gamma, gamma2=s2.gamma, gamma12=g12, delta12=d12,
    )


def parameter_map(
    tip: TipGeometry,
    geometry: str,
    r_grid: np.ndarray,
    theta_grid: np.ndarray,
    r12: float = 50.0,
):
    """gamma12/delta12 over a polar grid of first-atom positions.

    The second atom sits at a fixed offset ``r12`` along z (geometry "A")
    or y (geometry "B") from the first atom at (r, theta, phi = 90 deg).
    Grid points that put the displaced atom inside the sphere are flagged
    invalid rather than raised.

    Returns (gamma12, delta12, valid) arrays of shape (len(r), len(theta)).
    """
    if geometry not in ("A", "B"):
        raise ValueError("geometry must be 'A' or 'B'")
    offset = np.array([0.0, 0.0, r12]) if geometry == "A" else np.array([0.0, r12, 0.0])
    nr, nt = len(r_grid), len(theta_grid)
    g12 = np.full((nr, nt), np.nan)
    d12 = np.full((nr, nt), np.nan)
    valid = np.zeros((nr, nt), dtype=bool)
    for i, r in enumerate(r_grid):
        for j, th in enumerate(theta_grid):
            pos1 = (float(r), float(th), np.pi / 2)
            if pos1[0] < tip.r_tip:
                continue
            pos2_cart = _to_cartesian(*pos1) + offset
            pos2 = _to_spherical(pos2_cart)
            if pos2[0] < tip.r_tip:
                continue
            s1 = make_site(tip, pos1)
            s2 = make_site(tip, pos2)
            g12[i, j], d12[i, j] = pair_coefficients(s1, s2, tip.k0)
            valid[i, j] = True
    return g12, d12, valid


def save_map_csv(path, r_grid, theta_grid, g12, d12, valid) -> None:
    """Write `r_nm,theta_deg,gamma12_over_gamma0,delta12_over_gamma0,valid` rows."""
    with open(path, "w") as fh:
        fh.write("r_nm,theta_deg,gamma12_over_gamma0,delta12_over_gamma0,valid\n")
        for i, r in enumerate(r_grid):
            for j, th in enumerate(theta_grid):
                fh.write(
                    f"{r:.12g},{np.degrees(th):.12g},"
                    f"{g12[i, j]:.12g},{d12[i, j]:.12g},{int(valid[i, j])}\n"
                )


def save_sites_csv(path, positions) -> None:
    """Write sampled positions as `x_nm,y_nm,z_nm` rows."""
    with open(path, "w") as fh:
        fh.write("x_nm,y_nm,z_nm\n")
        for pos in positions:
            x, y, z = _to_cartesian(*pos)
            fh.write(f"{x:.12g},{y:.12g},{z:.12g}\n")
