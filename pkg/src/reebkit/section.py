"""Disk-like global surfaces of section, return maps, and the GSS verifier.

Pages live over the w-phase: on the sphere the page at phase c is the slice
{arg(w) = c} closed up with the binding circle {w = 0}; on a quotient by
Z_p the p slices {c + 2 pi j / p} project to a single page, an immersed
disk whose boundary covers the binding p:1.  Crossings of a trajectory
through the page are detected by monitoring the unwrapped w-phase on lifts
and refining each bracket by root finding in time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import (
    DegenerateInput,
    IntegrationFailure,
    PreconditionViolation,
    ReebkitError,
)
from .geometry import (
    ContactSystem,
    LensParams,
    check_point,
    deck_action,
    flow,
    to_complex,
)
from .knots import PDisk, binding_sl_numeric, lens_binding_monodromy, pdisk_point
from .orbits import ClosedOrbit, catalog, orbit_index, principal_orbits

PAGE_TOL = 1e-8


# ---------------------------------------------------------------------------
# vectorized evaluation of the contact form on sampled data


def _lambda0_rows(pts: np.ndarray, vs: np.ndarray) -> np.ndarray:
    return 0.5 * (
        pts[:, 0] * vs[:, 1]
        - pts[:, 1] * vs[:, 0]
        + pts[:, 2] * vs[:, 3]
        - pts[:, 3] * vs[:, 2]
    )


def _omega0_rows(us: np.ndarray, vs: np.ndarray) -> np.ndarray:
    return (
        us[:, 0] * vs[:, 1]
        - us[:, 1] * vs[:, 0]
        + us[:, 2] * vs[:, 3]
        - us[:, 3] * vs[:, 2]
    )


def _H_rows(sys: ContactSystem, pts: np.ndarray) -> np.ndarray:
    return (math.pi / sys.a) * (pts[:, 0] ** 2 + pts[:, 1] ** 2) + (math.pi / sys.b) * (
        pts[:, 2] ** 2 + pts[:, 3] ** 2
    )


def _lambda_rows(sys: ContactSystem, pts: np.ndarray, vs: np.ndarray) -> np.ndarray:
    lam = _lambda0_rows(pts, vs)
    if sys.family == "round":
        return lam
    return lam / _H_rows(sys, pts)


def _dlambda_rows(
    sys: ContactSystem, pts: np.ndarray, us: np.ndarray, vs: np.ndarray
) -> np.ndarray:
    om = _omega0_rows(us, vs)
    if sys.family == "round":
        return om
    H = _H_rows(sys, pts)
    grad = np.empty_like(pts)
    grad[:, 0] = 2 * math.pi / sys.a * pts[:, 0]
    grad[:, 1] = 2 * math.pi / sys.a * pts[:, 1]
    grad[:, 2] = 2 * math.pi / sys.b * pts[:, 2]
    grad[:, 3] = 2 * math.pi / sys.b * pts[:, 3]
    dfu = -np.sum(grad * us, axis=1) / H**2
    dfv = -np.sum(grad * vs, axis=1) / H**2
    return dfu * _lambda0_rows(pts, vs) - dfv * _lambda0_rows(pts, us) + om / H


# ---------------------------------------------------------------------------
# pages


@dataclass
class Page:
    """One page of the open book: the w-phase slice at ``phase`` (on lifts)."""

    system: ContactSystem
    disk: PDisk
    phase: float
    orientation: int = 1
    min_transverse: float = 0.0

    @property
    def p(self) -> int:
        return self.system.p


def _page_arrays(page: Page, rs: np.ndarray, thetas: np.ndarray):
    """Sampled points and coordinate tangents of the page parametrization."""
    R, TH = np.meshgrid(rs, thetas, indexing="ij")
    f = page.disk.profile(R)
    df = page.disk.profile_deriv(R)
    g = np.sqrt(np.clip(1.0 - f * f, 0.0, None))
    dg = -f * df / np.maximum(g, 1e-15)
    cp, sp = math.cos(page.phase), math.sin(page.phase)
    pts = np.stack([f * np.cos(TH), f * np.sin(TH), g * cp, g * sp], axis=-1)
    d_r = np.stack([df * np.cos(TH), df * np.sin(TH), dg * cp, dg * sp], axis=-1)
    d_th = np.stack([-f * np.sin(TH), f * np.cos(TH), np.zeros_like(f), np.zeros_like(f)], axis=-1)
    return pts, d_r, d_th


def page_point(page: Page, r: float, theta: float) -> np.ndarray:
    """Lift of the page point with polar coordinates (r, theta)."""
    base = pdisk_point(page.disk, r, theta)
    g = math.hypot(base[2], base[3])
    return np.array(
        [base[0], base[1], g * math.cos(page.phase), g * math.sin(page.phase)]
    )


def _profile_inverse(disk: PDisk, value: float) -> float:
    value = min(max(value, 0.0), 1.0)
    if value <= 0.0:
        return 0.0
    if value >= 1.0:
        return 1.0
    return brentq(lambda r: float(disk.profile(r)) - value, 0.0, 1.0, xtol=1e-14)


def page_coords(page: Page, pt, tol: float = PAGE_TOL) -> tuple[float, float]:
    """Polar page coordinates of a lifted point lying on the page's deck orbit."""
    pt = check_point(pt)
    p = page.p
    z, w = to_complex(pt)
    level = 2.0 * math.pi / p
    off = (math.atan2(w.imag, w.real) - page.phase) / level
    j = round(off)
    if abs(off - j) * level > tol and abs(w) > tol:
        raise PreconditionViolation("point does not lie on the page")
    if p > 1 and j % p != 0:
        L = page.system.lens
        k = (-(j % p) * pow(L.q, -1, p)) % p
        pt = deck_action(L, k, pt)
        z, w = to_complex(pt)
    r = _profile_inverse(page.disk, abs(z))
    return r, math.atan2(z.imag, z.real)


def build_page(sys: ContactSystem, phase: float = 0.0, n_check: int = 100) -> Page:
    """Construct the page at ``phase`` and verify Reeb transversality on its interior."""
    lens = sys.lens if sys.lens is not None else LensParams(1, 1)
    page = Page(system=sys, disk=PDisk(lens), phase=float(phase))
    rs = np.linspace(1e-3, 1.0 - 1e-3, n_check)
    ths = np.linspace(0.0, 2.0 * math.pi, n_check, endpoint=False)
    pts, _, _ = _page_arrays(page, rs, ths)
    pts = pts.reshape(-1, 4)
    w1, w2 = sys.plane_rates()
    # transverse component of the Reeb field = rate of the w-phase
    wz = pts[:, 2] + 1j * pts[:, 3]
    rw = 1j * w2 * wz
    rate = np.imag(np.conj(wz) * rw) / np.abs(wz) ** 2
    min_rate = float(np.min(np.abs(rate)))
    if min_rate <= 0.0 or np.any(rate * np.sign(rate[0]) <= 0):
        raise ReebkitError("Reeb field is not transverse to the page interior")
    page.min_transverse = min_rate
    page.orientation = int(np.sign(rate[0]))
    return page


# ---------------------------------------------------------------------------
# crossings and the return map


def _w_phase(pt: np.ndarray) -> float:
    return math.atan2(pt[3], pt[2])


def _first_crossing(
    sys: ContactSystem,
    pt0: np.ndarray,
    direction: int,
    level: float,
    time_budget: float,
    tol: float,
    flow_method: str = "closed",
) -> tuple[float, np.ndarray]:
    """First positive time at which the w-phase moves by a multiple of ``level``.

    Scans the trajectory with steps small against the phase rate and refines
    the bracketing interval by root finding to ``tol`` in time.
    """
    w1, w2 = sys.plane_rates()
    dt = level / max(w1, w2) / 16.0

    def phase_rel(t: float, href: float) -> float:
        # w-phase at time t, unwrapped against a reference value
        pt = flow(sys, pt0, direction * t, method=flow_method)
        h = _w_phase(pt)
        return href + math.remainder(h - href, 2.0 * math.pi)

    h0 = _w_phase(pt0)
    h_prev = h0
    t_prev = 0.0
    g_prev = 0.0
    t = 0.0
    while t < time_budget:
        t = min(t_prev + dt, time_budget)
        h = phase_rel(t, h_prev)
        ell = (h - h0) / level
        g = math.sin(math.pi * ell)
        if t_prev > 0.0 and (g == 0.0 or (g_prev != 0.0 and math.copysign(1, g) != math.copysign(1, g_prev))):
            href = h_prev

            def gfun(tc: float) -> float:
                return math.sin(math.pi * (phase_rel(tc, href) - h0) / level)

            t_star = brentq(gfun, t_prev, t, xtol=tol)
            pt_star = flow(sys, pt0, direction * t_star, method=flow_method)
            return t_star, pt_star
        t_prev, h_prev, g_prev = t, h, g
    raise IntegrationFailure(
        f"return failure: no page crossing within time budget {time_budget:g}"
    )


@dataclass
class ReturnRecord:
    """One application of the page return map."""

    start: tuple[float, float]
    return_time: float
    image: tuple[float, float]
    direction: str

    def __post_init__(self):
        if self.return_time <= 0.0:
            raise PreconditionViolation("return time must be positive")


def return_map(
    page: Page,
    start: tuple[float, float],
    direction: str = "forward",
    tol: float = 1e-10,
    time_budget: Optional[float] = None,
    flow_method: str = "closed",
) -> ReturnRecord:
    """Flow from an interior page point to its next crossing of the page."""
    r, theta = start
    if not (0.0 < r < 1.0):
        raise PreconditionViolation("start must be an interior page point (0 < r < 1)")
    if direction not in ("forward", "backward"):
        raise PreconditionViolation("direction must be 'forward' or 'backward'")
    sys = page.system
    if time_budget is None:
        max_period = math.pi if sys.family == "round" else max(sys.a, sys.b)
        time_budget = 100.0 * max_period
    pt0 = page_point(page, r, theta)
    sgn = 1 if direction == "forward" else -1
    level = 2.0 * math.pi / page.p
    t_star, pt_star = _first_crossing(
        sys, pt0, sgn, level, time_budget, tol, flow_method=flow_method
    )
    image = page_coords(page, pt_star)
    return ReturnRecord(start=(r, theta), return_time=t_star, image=image, direction=direction)


def fixed_point(
    page: Page,
    tol: float = 1e-8,
    start: tuple[float, float] = (0.5, 0.0),
    damping: float = 0.5,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Fixed point of the forward return map from its displacement field.

    The page coordinates are embedded in the plane as zeta = r e^{i theta}
    and the displacement d(zeta) = F(zeta) - zeta is driven to zero by a
    damped iteration accelerated with complex secant jumps; for
    rotation-like return maps the secant model is exact and convergence
    takes a couple of returns even when the rotation angle is tiny.
    """

    def displacement(zeta: complex) -> complex:
        r = abs(zeta)
        if r < 1e-12:
            return 0.0j
        rec = return_map(page, (r, math.atan2(zeta.imag, zeta.real)))
        ri, ti = rec.image
        return ri * complex(math.cos(ti), math.sin(ti)) - zeta

    r, theta = start
    zeta = r * complex(math.cos(theta), math.sin(theta))
    disp = displacement(zeta)
    trace: list[float] = [abs(disp)]
    for _ in range(max_iter):
        if abs(disp) < tol:
            return abs(zeta), math.atan2(zeta.imag, zeta.real)
        zeta2 = zeta + damping * disp
        if abs(zeta2) >= 0.98:
            zeta2 = zeta2 / abs(zeta2) * 0.9
        disp2 = displacement(zeta2)
        trace.append(abs(disp2))
        slope = (disp2 - disp) / (zeta2 - zeta) if zeta2 != zeta else 0.0j
        zeta, disp = zeta2, disp2
        if abs(slope) > 1e-12:
            cand = zeta2 - disp2 / slope
            if abs(cand) < 0.98:
                cand_disp = displacement(cand)
                trace.append(abs(cand_disp))
                if abs(cand_disp) < abs(disp2):
                    zeta, disp = cand, cand_disp
    raise IntegrationFailure(
        "fixed-point iteration did not converge; displacement trace tail "
        f"{['%.3e' % d for d in trace[-5:]]}"
    )


def linking_with_binding(
    sys: ContactSystem,
    orbit: ClosedOrbit,
    page: Page,
    tol: float = 1e-6,
) -> int:
    """Signed count of page crossings of the orbit over one (total) period.

    Equals the linking number of the orbit with the binding.  Tangential
    crossings (transverse phase speed below ``tol``) are rejected.
    """
    level = 2.0 * math.pi / page.p
    w1, w2 = sys.plane_rates()
    # generic time offset so the scan does not start on a crossing
    t_off = 0.37 * level / max(w1, w2)
    pt0 = flow(sys, orbit.anchor, t_off)
    if math.hypot(pt0[2], pt0[3]) < 1e-12:
        raise PreconditionViolation("orbit coincides with the binding")
    T = orbit.period
    dt = level / max(w1, w2) / 16.0
    h0_page = page.phase
    h_prev = _w_phase(pt0)
    t_prev = 0.0
    count = 0
    t = 0.0
    while t_prev < T:
        t = min(t_prev + dt, T + 1e-12)
        pt = flow(sys, pt0, t)
        h = h_prev + math.remainder(_w_phase(pt) - h_prev, 2.0 * math.pi)
        ell_prev = (h_prev - h0_page) / level
        ell = (h - h0_page) / level
        lo, hi = min(ell_prev, ell), max(ell_prev, ell)
        for k in range(math.floor(lo) + 1, math.floor(hi) + 1):
            speed = (ell - ell_prev) / (t - t_prev)
            if abs(speed) * level < tol:
                raise DegenerateInput("tangential page crossing; refine or perturb")
            count += 1 if speed > 0 else -1
        t_prev, h_prev = t, h
    return count


# ---------------------------------------------------------------------------
# areas


_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(32)


def _edge_action(page: Page, a: tuple[float, float], b: tuple[float, float]) -> float:
    """Integral of the contact form along a straight page-coordinate segment."""
    ra, ta = a
    rb, tb = b
    s = 0.5 * (_GAUSS_X + 1.0)
    rs = ra + (rb - ra) * s
    ths = ta + (tb - ta) * s
    f = page.disk.profile(rs)
    df = page.disk.profile_deriv(rs)
    g = np.sqrt(np.clip(1.0 - f * f, 0.0, None))
    dg = -f * df / np.maximum(g, 1e-15)
    cp, sp = math.cos(page.phase), math.sin(page.phase)
    pts = np.stack([f * np.cos(ths), f * np.sin(ths), g * cp, g * sp], axis=-1)
    vel = np.stack(
        [
            df * np.cos(ths) * (rb - ra) - f * np.sin(ths) * (tb - ta),
            df * np.sin(ths) * (rb - ra) + f * np.cos(ths) * (tb - ta),
            dg * cp * (rb - ra),
            dg * sp * (rb - ra),
        ],
        axis=-1,
    )
    vals = _lambda_rows(page.system, pts, vel)
    return float(np.sum(_GAUSS_W * vals) * 0.5)


def quad_dlambda_area(page: Page, corners: list[tuple[float, float]]) -> float:
    """dlambda-area of a small page quadrilateral via the boundary action.

    Corner angles are unwrapped relative to the first corner so a quad
    straddling the theta branch cut is handled correctly; edges must be
    shorter than a half turn.
    """
    unwrapped = [corners[0]]
    for r, th in corners[1:]:
        prev_th = unwrapped[-1][1]
        unwrapped.append((r, prev_th + math.remainder(th - prev_th, 2.0 * math.pi)))
    total = 0.0
    for a, b in zip(unwrapped, unwrapped[1:] + unwrapped[:1]):
        total += _edge_action(page, a, b)
    return total


def page_form_samples(page: Page, n_r: int, n_th: int, interior_margin: float = 0.0):
    """The pulled-back area form dlambda(d_r u, d_th u) on a product grid."""
    rs = np.linspace(interior_margin, 1.0 - interior_margin, n_r)
    ths = np.linspace(0.0, 2.0 * math.pi, n_th, endpoint=False)
    pts, d_r, d_th = _page_arrays(page, rs, ths)
    shape = pts.shape[:2]
    vals = _dlambda_rows(
        page.system, pts.reshape(-1, 4), d_r.reshape(-1, 4), d_th.reshape(-1, 4)
    ).reshape(shape)
    return rs, ths, vals


def _page_form_integral(page: Page, n_r: int, n_th: int) -> float:
    """Quadrature of |pullback of dlambda| with panels aligned to profile knots.

    The radial profile is piecewise analytic with breaks at the blend window
    endpoints; composite Simpson per panel keeps full order there.  The
    theta direction is periodic and handled by the trapezoid rule.
    """
    knots = [0.0, page.disk.blend_lo, page.disk.blend_hi, 1.0]
    ths = np.linspace(0.0, 2.0 * math.pi, n_th, endpoint=False)
    total = 0.0
    for a, b in zip(knots, knots[1:]):
        rs = np.linspace(a, b, n_r + 1)
        pts, d_r, d_th = _page_arrays(page, rs, ths)
        shape = pts.shape[:2]
        vals = np.abs(
            _dlambda_rows(
                page.system, pts.reshape(-1, 4), d_r.reshape(-1, 4), d_th.reshape(-1, 4)
            ).reshape(shape)
        )
        th_int = vals.mean(axis=1) * 2.0 * math.pi
        h = (b - a) / n_r
        weights = np.ones(n_r + 1)
        weights[1:-1:2] = 4.0
        weights[2:-1:2] = 2.0
        total += float(np.sum(weights * th_int) * h / 3.0)
    return total


def disk_area_bound(page: Page, rel_tol: float = 1e-6, max_level: int = 9) -> float:
    """The constant 1 + integral of |pullback of dlambda| over the page.

    The 2d quadrature is refined by grid doubling until two successive
    levels agree to ``rel_tol`` relative.
    """
    prev = None
    n_r, n_th = 32, 64
    for _ in range(max_level):
        cur = _page_form_integral(page, n_r, n_th)
        if prev is not None and abs(cur - prev) <= rel_tol * max(abs(cur), 1e-300):
            return 1.0 + cur
        prev = cur
        n_r *= 2
        n_th *= 2
    raise IntegrationFailure("quadrature did not converge under refinement")


# ---------------------------------------------------------------------------
# the verifier


def sample_starts(rng: np.random.Generator, n: int, r_lo: float = 0.05, r_hi: float = 0.95):
    """Page starts approximately area-uniform: uniform in (r^2, theta)."""
    r2 = rng.uniform(r_lo**2, r_hi**2, size=n)
    th = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return [(float(math.sqrt(a)), float(b)) for a, b in zip(r2, th)]


def _return_sample(args) -> dict:
    page, start, tol = args
    fwd = return_map(page, start, "forward", tol=tol)
    bwd = return_map(page, start, "backward", tol=tol)
    return {
        "start": [start[0], start[1]],
        "forward_time": fwd.return_time,
        "forward_image": [fwd.image[0], fwd.image[1]],
        "backward_time": bwd.return_time,
        "backward_image": [bwd.image[0], bwd.image[1]],
    }


def _run_return_batch(page: Page, starts, tol: float, jobs: int) -> list[dict]:
    """Evaluate return samples, optionally across a worker pool.

    Results are merged by input index so the output is deterministic for any
    job count.
    """
    work = [(page, s, tol) for s in starts]
    if jobs <= 1 or len(work) < 2:
        return [_return_sample(w) for w in work]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_return_sample, work))


def verify_gss_conditions(
    sys: ContactSystem,
    C: float,
    n_samples: int = 100,
    seed: int = 0,
    tol: float = 1e-10,
    n_quads: int = 20,
    jobs: int = 1,
    progress: Optional[Callable[[str], None]] = None,
) -> tuple[dict, list[dict]]:
    """Numerically check the disk-like global surface of section conditions.

    For the binding K of the quotient system the report contains: the
    numerically computed self-linking (expected -p), the index of K^p
    (expected >= 3), linking numbers of catalogued rotation-number-1 orbits
    with K up to the action cutoff C, forward/backward return sampling, the
    sign of dlambda over the page interior, return-map area distortion, and
    the page area constant.  Any failed check is named in ``violated``.
    """

    def note(msg: str) -> None:
        if progress is not None:
            progress(msg)

    if sys.family != "ellipsoid":
        raise DegenerateInput("the verifier needs a nondegenerate (ellipsoid) system")
    lens = sys.lens if sys.lens is not None else LensParams(1, 1)
    p = lens.p
    rng = np.random.default_rng(seed)
    report: dict = {
        "system": {
            "family": sys.family,
            "a": sys.a,
            "b": sys.b,
            "lens": {"p": lens.p, "q": lens.q},
        },
        "action_cutoff": C,
        "n_samples": n_samples,
        "seed": seed,
    }
    checks: dict[str, bool] = {}

    note("binding invariants")
    disk = PDisk(lens)
    sl = binding_sl_numeric(disk)
    K, _Kp = principal_orbits(sys)
    idx = orbit_index(K, p)
    report["binding"] = {
        "label": K.label,
        "prime_period": K.prime_period,
        "sl_numeric": sl,
        "sl_expected": -p,
        "monodromy": lens_binding_monodromy(lens),
        "monodromy_signed": -lens.q,
        "mu_cz_Kp": idx.mu,
        "rho_Kp": idx.rho,
        "degenerate": idx.degenerate,
    }
    checks["sl"] = sl == -p
    checks["index"] = idx.mu >= 3 and not idx.degenerate

    note("page construction")
    page = build_page(sys, 0.0)
    _rs, _ths, form = page_form_samples(page, 101, 100, interior_margin=1e-3)
    report["page"] = {
        "phase": page.phase,
        "min_transverse": page.min_transverse,
        "dlambda_min": float(form.min()),
        "dlambda_max": float(form.max()),
        "area_bound": disk_area_bound(page),
    }
    checks["dlambda_positive"] = bool(form.min() > 0.0)

    note("catalogued orbits and linking")
    entries = catalog(sys, C)
    orb_rows = []
    pstar_ok = True
    for entry in entries:
        res = orbit_index(entry)
        contractible = (entry.multiplicity * entry.deck_power) % p == 0
        row = {
            "label": entry.label,
            "multiplicity": entry.multiplicity,
            "period": entry.period,
            "rho": res.rho,
            "mu_cz": res.mu,
            "contractible": contractible,
            "in_complement": entry.label != K.label,
        }
        member = (
            row["in_complement"] and contractible and abs(res.rho - 1.0) <= 1e-6
        )
        row["rotation_one"] = member
        if member:
            lk = linking_with_binding(sys, entry, page)
            row["linking_with_binding"] = lk
            if lk <= 0:
                pstar_ok = False
        orb_rows.append(row)
    report["pstar"] = {
        "note": (
            "rotation-number-1 condition checked for catalogued orbits with "
            f"action <= {C:g} only"
        ),
        "orbits": orb_rows,
        "members": [r for r in orb_rows if r["rotation_one"]],
    }
    checks["pstar_linking"] = pstar_ok

    samples: list[dict] = []
    if n_samples > 0:
        note("return sampling")
        samples = _run_return_batch(page, sample_starts(rng, n_samples), tol, jobs)
        ok_fwd = sum(1 for s in samples if s["forward_time"] > 0)
        ok_bwd = sum(1 for s in samples if s["backward_time"] > 0)
        report["gss_sampling"] = {
            "n": n_samples,
            "forward_ok": ok_fwd,
            "backward_ok": ok_bwd,
        }
        checks["gss_returns"] = ok_fwd == n_samples and ok_bwd == n_samples
    else:
        report["gss_sampling"] = {"status": "skipped"}

    note("area preservation")
    if n_quads > 0:
        max_dist = 0.0
        for _ in range(n_quads):
            r0 = float(rng.uniform(0.15, 0.8))
            th0 = float(rng.uniform(0.0, 2.0 * math.pi))
            s = 0.02
            corners = [(r0, th0), (r0 + s, th0), (r0 + s, th0 + s), (r0, th0 + s)]
            area0 = quad_dlambda_area(page, corners)
            mapped = [return_map(page, c, tol=tol).image for c in corners]
            area1 = quad_dlambda_area(page, mapped)
            max_dist = max(max_dist, abs(area1 - area0) / abs(area0))
        report["area_preservation"] = {"n_quads": n_quads, "max_rel_distortion": max_dist}
        checks["area_preservation"] = max_dist < 1e-4

    note("fixed point")
    fp = fixed_point(page, tol=1e-8)
    fp_time = return_map(page, (max(fp[0], 1e-3), fp[1])).return_time
    report["fixed_point"] = {
        "coords": [fp[0], fp[1]],
        "distance_to_center": fp[0],
        "return_time": fp_time,
    }

    report["checks"] = checks
    report["violated"] = sorted(name for name, ok in checks.items() if not ok)
    report["all_pass"] = not report["violated"]
    return report, samples
