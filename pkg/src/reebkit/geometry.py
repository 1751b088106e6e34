"""Contact geometry of the unit 3-sphere and its cyclic quotients.

Points of S^3 in R^4 = C^2 are plain numpy arrays ``(x1, y1, x2, y2)`` with
``z = x1 + i y1`` and ``w = x2 + i y2``.  Two families of contact forms are
supported on the sphere:

* ``round``     -- the standard Liouville form, Reeb flow ``(z,w) -> (e^{2it}z, e^{2it}w)``;
* ``ellipsoid`` -- the weighted form pulled back from the ellipsoid with
  capacities ``(a, b)``; the Reeb flow rotates the z-plane at angular rate
  ``2*pi/a`` and the w-plane at ``2*pi/b``, entirely on the unit sphere.

A quotient by the free Z_p action ``(z, w) -> (e^{2pi i/p} z, e^{2pi i q/p} w)``
turns the system into a lens space; points are always stored as lifts to S^3
and lens-space equality is tested through the deck orbit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import PreconditionViolation, ReebkitError
from .integrate import dopri45

SPHERE_TOL = 1e-12
TANGENT_TOL = 1e-10


@dataclass(frozen=True)
class LensParams:
    """Coprime integers ``p >= q >= 1`` describing the cyclic quotient."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or not (1 <= self.q <= self.p):
            raise PreconditionViolation(f"need p >= 1 and 1 <= q <= p, got ({self.p}, {self.q})")
        if math.gcd(self.p, self.q) != 1:
            raise PreconditionViolation(f"p and q must be coprime, got ({self.p}, {self.q})")


@dataclass(frozen=True)
class ContactSystem:
    """A contact form on S^3, optionally quotiented to a lens space."""

    family: str = "round"
    a: float = 1.0
    b: float = 1.0
    lens: Optional[LensParams] = None

    def __post_init__(self):
        if self.family not in ("round", "ellipsoid"):
            raise PreconditionViolation(f"unknown family {self.family!r}")
        if not (self.a > 0 and self.b > 0):
            raise PreconditionViolation("capacities a, b must be positive")

    @property
    def p(self) -> int:
        return self.lens.p if self.lens is not None else 1

    @property
    def q(self) -> int:
        return self.lens.q if self.lens is not None else 1

    def plane_rates(self) -> tuple[float, float]:
        """Angular rates of the Reeb rotation in the z- and w-planes."""
        if self.family == "round":
            return 2.0, 2.0
        return 2.0 * math.pi / self.a, 2.0 * math.pi / self.b


def system_to_json(sys: ContactSystem) -> dict:
    out: dict = {"family": sys.family, "a": sys.a, "b": sys.b}
    if sys.lens is not None:
        out["lens"] = {"p": sys.lens.p, "q": sys.lens.q}
    return out


def system_from_json(data) -> ContactSystem:
    if isinstance(data, str):
        data = json.loads(data)
    lens = None
    if data.get("lens"):
        lens = LensParams(int(data["lens"]["p"]), int(data["lens"]["q"]))
    return ContactSystem(
        family=data["family"],
        a=float(data.get("a", 1.0)),
        b=float(data.get("b", 1.0)),
        lens=lens,
    )


# ---------------------------------------------------------------------------
# points and tangent vectors


def check_point(pt, tol: float = SPHERE_TOL) -> np.ndarray:
    pt = np.asarray(pt, dtype=float)
    if pt.shape != (4,):
        raise PreconditionViolation("points are length-4 arrays")
    if abs(pt @ pt - 1.0) > tol:
        raise PreconditionViolation(f"point is off the unit sphere by {abs(pt @ pt - 1.0):.3e}")
    return pt


def check_tangent(pt, v, tol: float = TANGENT_TOL) -> np.ndarray:
    pt = check_point(pt)
    v = np.asarray(v, dtype=float)
    if v.shape != (4,):
        raise PreconditionViolation("tangent vectors are length-4 arrays")
    if abs(pt @ v) > tol * max(1.0, float(np.linalg.norm(v))):
        raise PreconditionViolation(f"vector is not tangent to the sphere (<pt, v> = {pt @ v:.3e})")
    return v


def to_complex(pt) -> tuple[complex, complex]:
    pt = np.asarray(pt, dtype=float)
    return complex(pt[0], pt[1]), complex(pt[2], pt[3])


def from_complex(z: complex, w: complex) -> np.ndarray:
    return np.array([z.real, z.imag, w.real, w.imag])


def ambient_rotation(v: np.ndarray) -> np.ndarray:
    """Multiplication by i on C^2 in real coordinates."""
    return np.array([-v[1], v[0], -v[3], v[2]])


def tangent_basis(pt) -> np.ndarray:
    """Three orthonormal vectors spanning the tangent space at ``pt``."""
    pt = check_point(pt)
    idx = int(np.argmax(np.abs(pt)))
    cols = [e for i, e in enumerate(np.eye(4)) if i != idx]
    basis = []
    for c in cols:
        v = c - (c @ pt) * pt
        for b in basis:
            v = v - (v @ b) * b
        n = np.linalg.norm(v)
        if n < 1e-8:
            raise ReebkitError("degenerate tangent basis")
        basis.append(v / n)
    return np.array(basis)


# ---------------------------------------------------------------------------
# the contact form and its differential


def lambda0_eval(pt, v) -> float:
    """The Liouville form (x1 dy1 - y1 dx1 + x2 dy2 - y2 dx2)/2 on a tangent vector."""
    v = check_tangent(pt, v)
    pt = np.asarray(pt, dtype=float)
    return 0.5 * (pt[0] * v[1] - pt[1] * v[0] + pt[2] * v[3] - pt[3] * v[2])


def _weight_H(sys: ContactSystem, pt: np.ndarray) -> float:
    return (math.pi / sys.a) * (pt[0] ** 2 + pt[1] ** 2) + (math.pi / sys.b) * (
        pt[2] ** 2 + pt[3] ** 2
    )


def weight(sys: ContactSystem, pt) -> float:
    """Conformal factor f with lambda = f * lambda0 for this system."""
    if sys.family == "round":
        return 1.0
    return 1.0 / _weight_H(sys, np.asarray(pt, dtype=float))


def lambda_eval(sys: ContactSystem, pt, v) -> float:
    """The system's contact form evaluated on a tangent vector."""
    return weight(sys, pt) * lambda0_eval(pt, v)


def _omega0(u: np.ndarray, v: np.ndarray) -> float:
    # standard symplectic form dx1^dy1 + dx2^dy2
    return u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]


def dlambda_eval(sys: ContactSystem, pt, u, v) -> float:
    """d(lambda) on a pair of tangent vectors at ``pt``."""
    u = check_tangent(pt, u)
    v = check_tangent(pt, v)
    pt = np.asarray(pt, dtype=float)
    if sys.family == "round":
        return _omega0(u, v)
    H = _weight_H(sys, pt)
    gradH = np.array(
        [
            2 * math.pi / sys.a * pt[0],
            2 * math.pi / sys.a * pt[1],
            2 * math.pi / sys.b * pt[2],
            2 * math.pi / sys.b * pt[3],
        ]
    )
    dfu = -(gradH @ u) / H**2
    dfv = -(gradH @ v) / H**2
    lam_u = 0.5 * (pt[0] * u[1] - pt[1] * u[0] + pt[2] * u[3] - pt[3] * u[2])
    lam_v = 0.5 * (pt[0] * v[1] - pt[1] * v[0] + pt[2] * v[3] - pt[3] * v[2])
    return dfu * lam_v - dfv * lam_u + _omega0(u, v) / H


# ---------------------------------------------------------------------------
# the Reeb vector field


def reeb_vector(sys: ContactSystem, pt, method: str = "closed") -> np.ndarray:
    """The Reeb vector field at ``pt``: i_R dlambda = 0 and lambda(R) = 1.

    ``method='closed'`` returns the toric rotation field; ``method='solve'``
    recovers R from the defining equations as a least-squares system in an
    orthonormal tangent frame (used as an independent cross-check).
    """
    pt = check_point(pt)
    if method == "closed":
        w1, w2 = sys.plane_rates()
        return np.array([-w1 * pt[1], w1 * pt[0], -w2 * pt[3], w2 * pt[2]])
    if method != "solve":
        raise ValueError(f"unknown method {method!r}")
    # i_R dlambda = 0 against every tangent basis vector plus lambda(R) = 1;
    # the dlambda rows have rank 2, the normalization row completes them
    basis = tangent_basis(pt)
    rows = np.empty((4, 3))
    rhs = np.array([0.0, 0.0, 0.0, 1.0])
    for j in range(3):
        rows[0, j] = dlambda_eval(sys, pt, basis[j], basis[0])
        rows[1, j] = dlambda_eval(sys, pt, basis[j], basis[1])
        rows[2, j] = dlambda_eval(sys, pt, basis[j], basis[2])
        rows[3, j] = lambda_eval(sys, pt, basis[j])
    coef, residual, rank, svals = np.linalg.lstsq(rows, rhs, rcond=None)
    if rank < 3 or svals[-1] < 1e-10 * svals[0]:
        raise ReebkitError("singular linear system while solving for the Reeb field")
    R = coef @ basis
    defect = np.linalg.norm(rows @ coef - rhs)
    if defect > 1e-8 * max(1.0, float(np.linalg.norm(R))):
        raise ReebkitError("solved field does not satisfy the defining equations")
    return R


# ---------------------------------------------------------------------------
# flows


def flow_closed(sys: ContactSystem, pt, t: float) -> np.ndarray:
    """Closed-form Reeb flow: rotate the z- and w-planes at the family rates."""
    pt = check_point(pt)
    z, w = to_complex(pt)
    w1, w2 = sys.plane_rates()
    return from_complex(z * complex(math.cos(w1 * t), math.sin(w1 * t)),
                        w * complex(math.cos(w2 * t), math.sin(w2 * t)))


def _project_sphere(y: np.ndarray) -> np.ndarray:
    return y / np.linalg.norm(y)


def flow(sys: ContactSystem, pt, t: float, tol: float = 1e-10, method: str = "auto") -> np.ndarray:
    """Time-``t`` Reeb flow of ``pt``.

    ``method='auto'`` uses the closed form available for both families;
    ``'numeric'`` integrates the Reeb field with the adaptive stepper and
    post-step renormalization to the sphere (error bound ~ tol per unit time).
    """
    if tol <= 0:
        raise PreconditionViolation("tol must be positive")
    pt = check_point(pt)
    if t == 0.0:
        return pt.copy()
    if method in ("auto", "closed"):
        return flow_closed(sys, pt, t)
    if method != "numeric":
        raise ValueError(f"unknown method {method!r}")

    def rhs(_t, y):
        return reeb_vector(sys, _project_sphere(y))

    w1, w2 = sys.plane_rates()
    res = dopri45(
        rhs,
        0.0,
        pt,
        t,
        rtol=tol,
        atol=tol,
        project=_project_sphere,
        max_step=0.5 / max(w1, w2),
    )
    return res.y_end


# ---------------------------------------------------------------------------
# the deck action


def deck_action(L: LensParams, k: int, pt) -> np.ndarray:
    """Apply the k-th power of the deck transformation generator."""
    pt = np.asarray(pt, dtype=float)
    k = k % L.p
    z, w = to_complex(pt)
    az = 2.0 * math.pi * k / L.p
    aw = 2.0 * math.pi * k * L.q / L.p
    return from_complex(z * complex(math.cos(az), math.sin(az)),
                        w * complex(math.cos(aw), math.sin(aw)))


def lens_equivalent(L: LensParams, pt1, pt2, tol: float = 1e-9) -> bool:
    """True when some deck power carries ``pt1`` to ``pt2`` within ``tol``."""
    pt1 = check_point(pt1)
    pt2 = check_point(pt2)
    for k in range(L.p):
        if np.linalg.norm(deck_action(L, k, pt1) - pt2) <= tol:
            return True
    return False
