"""Monodromy, self-linking, slope arithmetic, and lens-space classification.

The binding knot of a lens space L(p, q) is the image of the z-circle; it
bounds an explicit immersed disk whose boundary covers it p:1.  The
self-linking number of the binding is computed both from the closed formula
sl = p * wind and by numerical phase tracking along a boundary collar of
that disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionViolation
from .geometry import LensParams, ambient_rotation, lambda0_eval
from .index import wind_relative


# ---------------------------------------------------------------------------
# integer arithmetic of windings and slopes


def monodromy_from_winding(p: int, w: int) -> int:
    """Reduce a section winding to its residue class in {0, ..., p-1}."""
    if p < 1:
        raise PreconditionViolation("p must be >= 1")
    return w % p


def lens_binding_monodromy(L: LensParams) -> int:
    """Monodromy class of the binding circle of L(p, q): (-q) mod p."""
    return (-L.q) % L.p


def self_linking_from_winding(p: int, wind: int) -> int:
    """Self-linking of an order-p knot from the relative winding in a disk frame."""
    if p < 1:
        raise PreconditionViolation("p must be >= 1")
    return p * wind


def slope_intersection(p: int, q: int, p2: int, q2: int) -> int:
    """Unsigned intersection number of torus curves of slopes q/p and q2/p2."""
    return abs(p2 * q - p * q2)


def lens_homeomorphic(p: int, q1: int, q2: int) -> bool:
    """Whether L(p, q1) and L(p, q2) are homeomorphic: q1 = +-q2^{+-1} mod p."""
    if p == 1:
        return True
    q1 %= p
    q2 %= p
    if q1 == q2 % p or q1 == (-q2) % p:
        return True
    return (q1 * q2) % p in (1 % p, (-1) % p)


def lens_homotopy_equivalent(p: int, q1: int, q2: int) -> bool:
    """Whether L(p, q1) and L(p, q2) are homotopy equivalent: q1 = +-k^2 q2 mod p."""
    if p == 1:
        return True
    q1 %= p
    q2 %= p
    for k in range(1, p):
        if (k * k * q2) % p == q1 or (-k * k * q2) % p == q1:
            return True
    return False


def coprime_residues(p: int) -> list[int]:
    return [q for q in range(1, p) if math.gcd(q, p) == 1] or [1]


def classification_tables(p: int) -> dict:
    """Homeomorphism / homotopy-equivalence matrices over coprime residues."""
    if p < 2:
        raise PreconditionViolation("classification tables need p >= 2")
    qs = coprime_residues(p)
    homeo = [[lens_homeomorphic(p, a, b) for b in qs] for a in qs]
    homot = [[lens_homotopy_equivalent(p, a, b) for b in qs] for a in qs]

    def classes(matrix):
        seen: list[list[int]] = []
        for i, a in enumerate(qs):
            for group in seen:
                if matrix[i][qs.index(group[0])]:
                    group.append(a)
                    break
            else:
                seen.append([a])
        return seen

    return {
        "p": p,
        "residues": qs,
        "homeomorphic": homeo,
        "homotopy_equivalent": homot,
        "homeomorphism_classes": classes(homeo),
        "homotopy_classes": classes(homot),
    }


@dataclass(frozen=True)
class KnotData:
    """Invariant package of an order-p rational unknot."""

    p: int
    monodromy: int
    sl: int

    def __post_init__(self):
        if self.p < 1:
            raise PreconditionViolation("p must be >= 1")
        if self.p > 1 and math.gcd(self.monodromy % self.p, self.p) != 1:
            raise PreconditionViolation("monodromy must be invertible mod p")
        if self.sl % self.p != 0:
            raise PreconditionViolation("self-linking of an order-p knot is divisible by p")


def binding_knot_data(L: LensParams) -> KnotData:
    """Invariants of the binding circle of L(p, q): mon = -q, sl = -p."""
    return KnotData(L.p, lens_binding_monodromy(L), self_linking_from_winding(L.p, -1))


# ---------------------------------------------------------------------------
# the explicit spanning disk


def _smoothstep(u: np.ndarray) -> np.ndarray:
    u = np.clip(u, 0.0, 1.0)
    return u * u * (3.0 - 2.0 * u)


def _smoothstep_deriv(u: np.ndarray) -> np.ndarray:
    inside = (u > 0.0) & (u < 1.0)
    return np.where(inside, 6.0 * u * (1.0 - u), 0.0)


@dataclass(frozen=True)
class PDisk:
    """The immersed disk spanning the binding of L(p, q).

    The radial profile interpolates between f(r) = r near the center and
    f(r) = cos(pi/2 (1 - r)) near the boundary with a cubic smoothstep blend
    on [blend_lo, blend_hi].
    """

    lens: LensParams
    blend_lo: float = 0.2
    blend_hi: float = 0.8

    def __post_init__(self):
        if not (0.0 < self.blend_lo < self.blend_hi < 1.0):
            raise PreconditionViolation("blend window must satisfy 0 < lo < hi < 1")

    def profile(self, r):
        r = np.asarray(r, dtype=float)
        s = _smoothstep((r - self.blend_lo) / (self.blend_hi - self.blend_lo))
        return (1.0 - s) * r + s * np.cos(0.5 * math.pi * (1.0 - r))

    def profile_deriv(self, r):
        r = np.asarray(r, dtype=float)
        u = (r - self.blend_lo) / (self.blend_hi - self.blend_lo)
        s = _smoothstep(u)
        ds = _smoothstep_deriv(u) / (self.blend_hi - self.blend_lo)
        g2 = np.cos(0.5 * math.pi * (1.0 - r))
        dg2 = 0.5 * math.pi * np.sin(0.5 * math.pi * (1.0 - r))
        return (1.0 - s) + s * dg2 + ds * (g2 - r)


def pdisk_point(disk: PDisk, r: float, theta: float) -> np.ndarray:
    """Lift to the sphere of the disk point at polar coordinates (r, theta)."""
    if not (0.0 <= r <= 1.0):
        raise PreconditionViolation("need 0 <= r <= 1")
    f = float(disk.profile(r))
    g = math.sqrt(max(0.0, 1.0 - f * f))
    return np.array([f * math.cos(theta), f * math.sin(theta), g, 0.0])


def pdisk_radial_tangent(disk: PDisk, r: float, theta: float) -> np.ndarray:
    """Radial derivative of the lifted parametrization at (r, theta)."""
    f = float(disk.profile(r))
    df = float(disk.profile_deriv(r))
    g = math.sqrt(max(1e-300, 1.0 - f * f))
    dg = -f * df / g
    return np.array([df * math.cos(theta), df * math.sin(theta), dg, 0.0])


def binding_sl_numeric(
    disk: PDisk, n_samples: int = 4096, collar: float = 1e-3
) -> int:
    """Self-linking of the binding from phase tracking along a boundary collar.

    The pushed-forward global section is compared against the radial
    derivative of the disk on the collar circle r = 1 - collar; the
    self-linking number is p times their relative winding.
    """
    p = disk.lens.p
    r0 = 1.0 - collar
    thetas = 2.0 * math.pi * np.arange(n_samples) / n_samples
    x_coords = np.empty((n_samples, 2))
    n_coords = np.empty((n_samples, 2))
    for j, th in enumerate(thetas):
        pt = pdisk_point(disk, r0, th)
        rad = pdisk_radial_tangent(disk, r0, th)
        # project the radial vector to the contact plane along the Reeb direction
        R = 2.0 * ambient_rotation(pt)
        rad = rad - (rad @ pt) * pt
        rad = rad - lambda0_eval(pt, rad) * R
        e1 = np.array([-pt[2], pt[3], pt[0], -pt[1]])  # the global section at pt
        e2 = ambient_rotation(e1)
        x_coords[j] = (1.0, 0.0)
        n_coords[j] = (rad @ e1, rad @ e2)
    wind = wind_relative(n_coords, x_coords)
    return self_linking_from_winding(p, wind)
