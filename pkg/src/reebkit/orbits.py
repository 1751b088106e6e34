"""Closed Reeb orbits, transverse linearized flow, asymptotic-operator loops.

The supported systems have exactly two prime closed orbits, the principal
circles K = {w = 0} and K' = {z = 0}; on a quotient their prime periods
divide by the order of the deck group.  The linearized flow along an orbit
is integrated variationally in the ambient space, projected to the contact
plane, and expressed in a unitary frame built from the global section
W(z, w) = (-conj(w), conj(z)) of the contact structure.  That section
extends over the spanning disks of the principal circles, so the frame
represents the capping-disk trivialization class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from .errors import DegenerateInput, IllConditioned, IntegrationFailure, PreconditionViolation
from .geometry import (
    ContactSystem,
    ambient_rotation,
    check_point,
    deck_action,
    dlambda_eval,
    flow,
    lambda_eval,
    reeb_vector,
)
from .index import (
    MINUS_I,
    FrameClass,
    SymmetricLoop,
    SymplecticPath,
    cz_geometric,
    mu_tilde,
    rotation_number,
)
from .integrate import dopri45

CLOSURE_TOL = 1e-8


@dataclass(frozen=True)
class ClosedOrbit:
    """A periodic Reeb trajectory (x, T) with prime period and multiplicity.

    ``deck_power`` is the deck-group element carrying the anchor to its
    image after one prime period; it vanishes for orbits that close on the
    sphere itself.
    """

    system: ContactSystem
    anchor: np.ndarray
    prime_period: float
    multiplicity: int = 1
    deck_power: int = 0
    label: str = "K"

    def __post_init__(self):
        object.__setattr__(self, "anchor", check_point(self.anchor))
        if self.multiplicity < 1:
            raise PreconditionViolation("multiplicity must be >= 1")
        end = flow(self.system, self.anchor, self.prime_period)
        lens = self.system.lens
        target = deck_action(lens, self.deck_power, self.anchor) if lens else self.anchor
        if np.linalg.norm(end - target) > CLOSURE_TOL:
            raise PreconditionViolation(
                "orbit does not close: flow over one prime period misses the deck image "
                f"by {np.linalg.norm(end - target):.3e}"
            )

    @property
    def period(self) -> float:
        return self.multiplicity * self.prime_period

    def iterate(self, k: int) -> "ClosedOrbit":
        if k < 1:
            raise PreconditionViolation("iterate exponent must be >= 1")
        return replace(self, multiplicity=self.multiplicity * k)

    def point(self, t: float) -> np.ndarray:
        return flow(self.system, self.anchor, t)


def orbit_to_json(orbit: ClosedOrbit, k_max: int = 0) -> dict:
    """JSON record of the orbit; with ``k_max`` > 0 an indices table is attached."""
    out = {
        "label": orbit.label,
        "anchor": [float(v) for v in orbit.anchor],
        "prime_period": float(orbit.prime_period),
        "multiplicity": int(orbit.multiplicity),
        "deck_power": int(orbit.deck_power),
        "period": float(orbit.period),
    }
    if k_max > 0:
        out["indices"] = index_table(orbit, k_max)
    return out


# ---------------------------------------------------------------------------
# the closed-orbit catalog


def principal_orbits(sys: ContactSystem) -> tuple[ClosedOrbit, ClosedOrbit]:
    """The two prime orbits: the z-circle K and the w-circle K'."""
    if sys.family != "ellipsoid":
        raise DegenerateInput(
            "degenerate: orbit families not isolated for the round form"
        )
    p, q = sys.p, sys.q
    k_anchor = np.array([1.0, 0.0, 0.0, 0.0])
    kp_anchor = np.array([0.0, 0.0, 1.0, 0.0])
    if p == 1:
        K = ClosedOrbit(sys, k_anchor, sys.a, label="K")
        Kp = ClosedOrbit(sys, kp_anchor, sys.b, label="K'")
    else:
        K = ClosedOrbit(sys, k_anchor, sys.a / p, deck_power=1, label="K")
        Kp = ClosedOrbit(
            sys, kp_anchor, sys.b / p, deck_power=pow(q, -1, p), label="K'"
        )
    return K, Kp


def catalog(sys: ContactSystem, C: float, resolution: float = 1e-9) -> list[ClosedOrbit]:
    """All iterates of the principal orbits with total period <= C."""
    if C <= 0:
        raise PreconditionViolation("the action bound must be positive")
    if sys.family == "ellipsoid" and abs(sys.a - sys.b) <= resolution:
        raise DegenerateInput("degenerate: orbit families not isolated for a = b")
    K, Kp = principal_orbits(sys)
    out: list[ClosedOrbit] = []
    for prime in (K, Kp):
        k = 1
        while k * prime.prime_period <= C + 1e-15:
            out.append(prime.iterate(k))
            k += 1
    out.sort(key=lambda o: o.period)
    for o1, o2 in zip(out, out[1:]):
        if o2.period - o1.period < resolution and o1.label != o2.label:
            raise DegenerateInput(
                f"periods {o1.period} and {o2.period} are numerically indistinguishable"
            )
    return out


# ---------------------------------------------------------------------------
# transverse frames


@dataclass
class TransverseFrame:
    """Two contact-plane sections along an orbit on a uniform time grid.

    Normalized so dlambda(e1, e2) = 1 at every sample; ``cls`` records the
    trivialization class relative to the capping-disk class.
    """

    points: np.ndarray  # (N+1, 4)
    e1: np.ndarray      # (N+1, 4)
    e2: np.ndarray      # (N+1, 4)
    cls: FrameClass = FrameClass(0)

    def __post_init__(self):
        n = self.points.shape[0]
        if not (self.e1.shape == self.e2.shape == (n, 4)):
            raise PreconditionViolation("frame arrays must share the grid shape")

    @property
    def n_intervals(self) -> int:
        return self.points.shape[0] - 1

    def shifted(self, m: int) -> "TransverseFrame":
        """Rotate the sections by m full turns over the period."""
        ts = np.linspace(0.0, 1.0, self.points.shape[0])
        c = np.cos(2.0 * math.pi * m * ts)[:, None]
        s = np.sin(2.0 * math.pi * m * ts)[:, None]
        return TransverseFrame(
            points=self.points,
            e1=c * self.e1 + s * self.e2,
            e2=-s * self.e1 + c * self.e2,
            cls=self.cls.shifted(m),
        )


def _section_W(pt: np.ndarray) -> np.ndarray:
    """The global non-vanishing contact-plane section (z, w) -> (-conj w, conj z)."""
    x1, y1, x2, y2 = pt
    return np.array([-x2, y2, x1, -y1])


def disk_frame(orbit: ClosedOrbit, n: int = 512) -> TransverseFrame:
    """Unitary frame along the orbit in the capping-disk class.

    The first section is the global section W normalized so that the frame
    is dlambda-symplectic; the second is its rotation by the complex
    structure.  W extends over the spanning disk of each principal circle,
    so the induced class is the disk class (offset 0).
    """
    sys = orbit.system
    T = orbit.period
    pts = np.array([flow(sys, orbit.anchor, T * j / n) for j in range(n + 1)])
    e1 = np.empty_like(pts)
    e2 = np.empty_like(pts)
    for j, pt in enumerate(pts):
        w = _section_W(pt)
        iw = ambient_rotation(w)
        norm = dlambda_eval(sys, pt, w, iw)
        if norm <= 1e-12:
            raise IllConditioned("frame section degenerates along the orbit")
        e1[j] = w / math.sqrt(norm)
        e2[j] = iw / math.sqrt(norm)
    return TransverseFrame(points=pts, e1=e1, e2=e2, cls=FrameClass(0))


def frame_pairing(sys: ContactSystem, frame: TransverseFrame) -> np.ndarray:
    return np.array(
        [
            dlambda_eval(sys, frame.points[j], frame.e1[j], frame.e2[j])
            for j in range(frame.points.shape[0])
        ]
    )


# ---------------------------------------------------------------------------
# linearized flow


def _dreeb_matrix(sys: ContactSystem) -> np.ndarray:
    """Ambient Jacobian of the Reeb field (a constant matrix for these families)."""
    w1, w2 = sys.plane_rates()
    A = np.zeros((4, 4))
    A[0, 1] = -w1
    A[1, 0] = w1
    A[2, 3] = -w2
    A[3, 2] = w2
    return A


def linearized_path(
    orbit: ClosedOrbit,
    frame: Optional[TransverseFrame] = None,
    rtol: float = 1e-11,
    det_tol: float = 1e-6,
) -> SymplecticPath:
    """The transverse linearized flow over one period, expressed in the frame.

    The variational equations are integrated alongside the flow in a single
    12-dimensional state; the images of the frame vectors are projected to
    the contact plane along the Reeb direction and re-expanded in the frame.
    """
    sys = orbit.system
    if frame is None:
        frame = disk_frame(orbit)
    n = frame.n_intervals
    T = orbit.period
    A = _dreeb_matrix(sys)

    def rhs(_t, y):
        pt = y[:4]
        out = np.empty(12)
        out[:4] = reeb_vector(sys, pt / np.linalg.norm(pt))
        out[4:8] = A @ y[4:8]
        out[8:12] = A @ y[8:12]
        return out

    def project(y):
        y = y.copy()
        pt = y[:4]
        y[:4] = pt / np.linalg.norm(pt)
        for sl in (slice(4, 8), slice(8, 12)):
            y[sl] -= (y[sl] @ y[:4]) * y[:4]
        return y

    y0 = np.concatenate([orbit.anchor, frame.e1[0], frame.e2[0]])
    t_eval = np.linspace(0.0, T, n + 1)
    w1, w2 = sys.plane_rates()
    res = dopri45(
        rhs, 0.0, y0, T, rtol=rtol, atol=rtol, project=project,
        t_eval=t_eval, max_step=0.5 / max(w1, w2),
    )

    mats = np.empty((n + 1, 2, 2))
    for j in range(n + 1):
        pt = frame.points[j]
        R = reeb_vector(sys, pt)
        for col, sl in enumerate((slice(4, 8), slice(8, 12))):
            v = res.ys[j][sl]
            u = v - lambda_eval(sys, pt, v) * R
            mats[j, 0, col] = dlambda_eval(sys, pt, u, frame.e2[j])
            mats[j, 1, col] = dlambda_eval(sys, pt, frame.e1[j], u)
    dets = np.linalg.det(mats)
    if np.max(np.abs(dets - 1.0)) > det_tol:
        raise IntegrationFailure(
            f"determinant drift {np.max(np.abs(dets - 1.0)):.3e} exceeds {det_tol}"
        )
    mats /= np.sqrt(dets)[:, None, None]
    mats[0] = np.eye(2)
    return SymplecticPath(mats)


def asymptotic_loop(
    orbit: Optional[ClosedOrbit],
    frame: Optional[TransverseFrame] = None,
    path: Optional[SymplecticPath] = None,
    sym_tol: float = 1e-6,
) -> SymmetricLoop:
    """Extract S(t) = -i phi'(t) phi(t)^{-1} from the linearized path.

    S is symmetric exactly when the frame is unitary; the symmetry defect is
    checked against ``sym_tol`` and the symmetrized samples are returned.
    When ``path`` is given the orbit is not needed.
    """
    if path is None:
        if orbit is None:
            raise PreconditionViolation("need an orbit or a precomputed path")
        path = linearized_path(orbit, frame)
    mats = path.mats
    n = path.n_intervals
    A = path.monodromy
    Ainv = np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]])
    ext = np.empty((n + 4, 2, 2))
    ext[2 : n + 2] = mats[:n]
    ext[0] = mats[n - 2] @ Ainv
    ext[1] = mats[n - 1] @ Ainv
    ext[n + 2] = mats[0] @ A
    ext[n + 3] = mats[1] @ A
    h = 1.0 / n
    dphi = (-ext[4:] + 8 * ext[3:-1] - 8 * ext[1:-3] + ext[:-4]) / (12 * h)
    S = np.einsum("ij,njk,nkl->nil", MINUS_I, dphi, np.linalg.inv(mats[:n]))
    defect = np.max(np.abs(S - np.transpose(S, (0, 2, 1))))
    scale = max(1.0, float(np.max(np.abs(S))))
    if defect > sym_tol * scale:
        raise IllConditioned(
            f"extracted S(t) has symmetry defect {defect:.3e}; frame is not unitary"
        )
    return SymmetricLoop(0.5 * (S + np.transpose(S, (0, 2, 1))))


# ---------------------------------------------------------------------------
# orbit indices


class OrbitIndexResult(NamedTuple):
    mu: int
    rho: float
    degenerate: bool
    convention: str  # "disk" or "fractional-disk"


def _closure_order(orbit: ClosedOrbit) -> int:
    """Smallest m with the m-th iterate closing on the sphere."""
    p = orbit.system.p
    d = orbit.deck_power % p if p > 1 else 0
    if d == 0:
        return 1
    return p // math.gcd(d, p)


def orbit_index(
    orbit: ClosedOrbit,
    k: int = 1,
    frame_offset: int = 0,
    n: int = 512,
) -> OrbitIndexResult:
    """Conley-Zehnder index and rotation number of the k-th iterate.

    Both are computed in the capping-disk trivialization class (optionally
    shifted by ``frame_offset`` whole turns).  For quotient orbits the class
    is induced by the spanning disk of the iterate that closes on the
    sphere; iterates that do not close upstairs are reported in the
    fractional-disk convention mu_tilde({k * rho_prime}).
    """
    if k < 1:
        raise PreconditionViolation("iterate exponent must be >= 1")
    k_eff = k * orbit.multiplicity
    m_close = _closure_order(orbit)
    base = replace(orbit, multiplicity=m_close)
    frame = disk_frame(base, n=n)
    if frame_offset:
        frame = frame.shifted(frame_offset)
    lift_path = linearized_path(base, frame)
    rho_lift = rotation_number(lift_path)

    if k_eff % m_close == 0:
        path = lift_path.iterate(k_eff // m_close) if k_eff > m_close else lift_path
        mu, degenerate = cz_geometric(path)
        rho = rho_lift * (k_eff // m_close)
        return OrbitIndexResult(mu, rho, degenerate, "disk")

    theta = rho_lift / m_close
    rho = k_eff * theta
    degenerate = abs(rho - round(rho)) < 1e-9
    return OrbitIndexResult(mu_tilde((rho, rho)), rho, degenerate, "fractional-disk")


def index_table(orbit: ClosedOrbit, k_max: int, frame_offset: int = 0) -> list[dict]:
    """Index/rotation table for iterates 1..k_max, as JSON-ready records."""
    rows = []
    for k in range(1, k_max + 1):
        res = orbit_index(orbit, k, frame_offset=frame_offset)
        rows.append(
            {
                "k": k,
                "mu_cz": res.mu,
                "rho": res.rho,
                "degenerate": res.degenerate,
                "convention": res.convention,
            }
        )
    return rows
