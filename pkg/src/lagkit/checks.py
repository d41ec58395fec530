"""Residual checks certifying the defining identities of an immersion.

Every check samples deterministic interior points, evaluates a named residual
at each, and reports max/mean together with the worst offender.  run_suite
wires the checks together in dependency order and emits a CheckReport whose
JSON form is byte-stable for a fixed seed.

Check names are stable API: lagrangian, spherical, legendrian, horizontal,
cubic_symmetry, gauss, codazzi, structure_v_tangent, structure_v_unit,
structure_h_mixed, structure_h_vv, structure_v_parallel, product_metric,
umbilical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .ambient import AmbientQuadric, apply_j_flat, inner_flat, metric_diagonal
from .dsl import ImmersionSpec
from .errors import DimensionMismatchError, LagkitError
from .geometry import (
    build_frame,
    codazzi_residual,
    gauss_residual,
    project,
    tangent_field_jets,
)
from .products import dilate, translate
from .sampling import sample_points

__all__ = [
    "SampleConfig",
    "CheckEntry",
    "SphereFit",
    "Transform",
    "CheckReport",
    "check_lagrangian",
    "fit_hypersphere",
    "check_legendrian",
    "check_horizontal",
    "check_cubic_symmetry",
    "check_theorem_structure",
    "check_product_metric",
    "check_umbilical_relation",
    "run_suite",
]

DEFAULT_TOL = 1e-8
DEFAULT_TOL_THIRD = 1e-6

# checks whose residuals rest on third derivatives of the immersion
_THIRD_ORDER_CHECKS = frozenset({"gauss", "codazzi"})

STRUCTURE_CHECKS = (
    "structure_v_tangent",
    "structure_v_unit",
    "structure_h_mixed",
    "structure_h_vv",
    "structure_v_parallel",
)


@dataclass(frozen=True)
class SampleConfig:
    """Sampling and tolerance knobs shared by all checks."""

    num_points: int = 20
    seed: int = 42
    interior_margin: float = 1e-3
    tol: float = DEFAULT_TOL
    tol_third: float = DEFAULT_TOL_THIRD
    tol_overrides: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_points < 1:
            raise ValueError("num_points must be >= 1")

    def tolerance_for(self, check_name: str) -> float:
        if check_name in self.tol_overrides:
            return float(self.tol_overrides[check_name])
        if check_name in _THIRD_ORDER_CHECKS:
            return self.tol_third
        return self.tol


@dataclass
class CheckEntry:
    """Outcome of one named residual check."""

    name: str
    max_residual: float | None
    mean_residual: float | None
    points_evaluated: int
    tolerance: float
    passed: bool | None
    status: str = "ok"  # ok | skipped | error
    reason: str | None = None
    worst_point: tuple[float, ...] | None = None
    details: dict = field(default_factory=dict)


@dataclass
class SphereFit:
    """Least-squares central quadric through the sampled image points."""

    center: np.ndarray  # interleaved (2n,)
    radius_sq_signed: float
    rms_residual: float


@dataclass
class Transform:
    """Recenter/rescale applied before the classification-structure checks."""

    center: np.ndarray  # interleaved (2n,)
    scale: float


def _finish(name, cfg, residuals, points, extra_details=None, tol=None) -> CheckEntry:
    tol = cfg.tolerance_for(name) if tol is None else tol
    arr = np.asarray(residuals, dtype=float)
    worst = int(np.argmax(arr))
    entry = CheckEntry(
        name=name,
        max_residual=float(arr[worst]),
        mean_residual=float(arr.mean()),
        points_evaluated=len(points),
        tolerance=tol,
        passed=bool(arr[worst] <= tol),
        worst_point=tuple(points[worst]),
    )
    if extra_details:
        entry.details.update(extra_details)
    return entry


def _skipped(name, cfg, reason) -> CheckEntry:
    return CheckEntry(
        name=name,
        max_residual=None,
        mean_residual=None,
        points_evaluated=0,
        tolerance=cfg.tolerance_for(name),
        passed=None,
        status="skipped",
        reason=reason,
    )


def _errored(name, cfg, reason) -> CheckEntry:
    return CheckEntry(
        name=name,
        max_residual=None,
        mean_residual=None,
        points_evaluated=0,
        tolerance=cfg.tolerance_for(name),
        passed=False,
        status="error",
        reason=reason,
    )


def _samples(spec, cfg):
    return sample_points(spec, cfg.num_points, cfg.seed, cfg.interior_margin)


def check_lagrangian(spec: ImmersionSpec, cfg: SampleConfig) -> CheckEntry:
    """Isotropy of the image: <J dL_i, dL_j> vanishes for all i, j.

    Requires the half-dimensional parameter count and a nondegenerate induced
    metric at every sampled point.
    """
    if spec.num_params != spec.signature.n:
        raise DimensionMismatchError(
            f"Lagrangian check needs n = {spec.signature.n} parameters, "
            f"spec has {spec.num_params} (not half-dimensional)"
        )
    points = _samples(spec, cfg)
    residuals = []
    for pt in points:
        fr = build_frame(spec, pt)
        jfirst = apply_j_flat(fr.first)
        bracket = (jfirst * fr.eta) @ fr.first.T
        residuals.append(float(np.max(np.abs(bracket))))
    return _finish("lagrangian", cfg, residuals, points)


def fit_hypersphere(spec: ImmersionSpec, cfg: SampleConfig):
    """Least-squares fit of <L - p, L - p> = r^2 (signed) over sampled points.

    <L, L> - 2 <L, p> = k is linear in (p, k); the signed square radius is
    k + <p, p>.  Returns (SphereFit | None, CheckEntry named "spherical").
    """
    dim = spec.signature.real_dim
    needed = dim + 2
    if cfg.num_points < needed:
        return None, _errored(
            "spherical", cfg, f"need at least {needed} sample points, have {cfg.num_points}"
        )
    points = _samples(spec, cfg)
    eta = metric_diagonal(spec.signature)
    positions = []
    for pt in points:
        fr = build_frame(spec, pt)
        positions.append(fr.position)
    pos = np.array(positions)
    rows = np.hstack([2.0 * pos * eta, np.ones((len(points), 1))])
    rhs = np.einsum("pa,a,pa->p", pos, eta, pos)
    sol, _, rank, _ = np.linalg.lstsq(rows, rhs, rcond=None)
    if rank < dim + 1:
        return None, _errored(
            "spherical", cfg, f"fit normal system is rank deficient (rank {rank})"
        )
    center = sol[:dim]
    k = float(sol[dim])
    radius_sq = k + inner_flat(center, center, eta)
    residuals = np.abs(rows @ sol - rhs)
    rms = float(np.sqrt(np.mean(residuals**2)))
    fit = SphereFit(center=center, radius_sq_signed=radius_sq, rms_residual=rms)
    entry = _finish(
        "spherical",
        cfg,
        residuals,
        points,
        extra_details={"rms_residual": rms, "radius_sq_signed": radius_sq},
    )
    return fit, entry


def check_legendrian(
    spec: ImmersionSpec, cfg: SampleConfig, quadric: AmbientQuadric
) -> CheckEntry:
    """Legendrian conditions on a declared quadric: membership, J-position
    normal to the image, J of tangents normal to the image."""
    if spec.num_params != spec.signature.n - 1:
        raise DimensionMismatchError(
            f"Legendrian check needs n-1 = {spec.signature.n - 1} parameters, "
            f"spec has {spec.num_params}"
        )
    points = _samples(spec, cfg)
    target = quadric.radius_sq_signed
    residuals = []
    for pt in points:
        fr = build_frame(spec, pt)
        jpos = apply_j_flat(fr.position)
        membership = abs(inner_flat(fr.position, fr.position, fr.eta) - target)
        v_normal = np.abs(fr.first @ (fr.eta * jpos))
        jfirst = apply_j_flat(fr.first)
        p_normal = np.abs((jfirst * fr.eta) @ fr.first.T)
        residuals.append(max(membership, float(v_normal.max()), float(p_normal.max())))
    return _finish("legendrian", cfg, residuals, points)


def check_horizontal(spec: ImmersionSpec, cfg: SampleConfig) -> CheckEntry:
    """Horizontality over the circle action: tangents orthogonal to J-position."""
    points = _samples(spec, cfg)
    residuals = []
    for pt in points:
        fr = build_frame(spec, pt)
        jpos = apply_j_flat(fr.position)
        residuals.append(float(np.max(np.abs(fr.first @ (fr.eta * jpos)))))
    return _finish("horizontal", cfg, residuals, points)


def check_cubic_symmetry(spec: ImmersionSpec, cfg: SampleConfig) -> CheckEntry:
    """Total symmetry of <h(X, Y), JZ> in its three slots.

    With h already symmetric it suffices to compare the cyclic rotation,
    <h_ij, J dL_k> = <h_jk, J dL_i>.
    """
    points = _samples(spec, cfg)
    residuals = []
    for pt in points:
        fr = build_frame(spec, pt)
        jfirst = apply_j_flat(fr.first)
        cubic = np.einsum("ija,a,ka->ijk", fr.sff, fr.eta, jfirst)
        residuals.append(float(np.max(np.abs(cubic - np.einsum("jki->ijk", cubic)))))
    return _finish("cubic_symmetry", cfg, residuals, points)


def _structure_entries(spec_n, cfg, epsilon):
    """Classification-structure residuals on a recentered, rescaled spec."""
    points = _samples(spec_n, cfg)
    res = {name: [] for name in STRUCTURE_CHECKS}
    for pt in points:
        fr = build_frame(spec_n, pt)
        jpos = apply_j_flat(fr.position)
        coeffs, normal = project(fr, jpos)
        res["structure_v_tangent"].append(float(np.max(np.abs(normal))))
        vv = float(coeffs @ fr.metric @ coeffs)
        res["structure_v_unit"].append(abs(vv - epsilon))
        jfirst = apply_j_flat(fr.first)
        hv = np.einsum("k,ika->ia", coeffs, fr.sff)
        res["structure_h_mixed"].append(float(np.max(np.abs(hv - jfirst))))
        hvv = np.einsum("j,k,jka->a", coeffs, coeffs, fr.sff)
        res["structure_h_vv"].append(float(np.max(np.abs(hvv + fr.position))))
        values, grads = tangent_field_jets(spec_n, pt)
        nabla_v = grads + np.einsum("kim,m->ik", fr.christoffels, values)
        res["structure_v_parallel"].append(float(np.max(np.abs(nabla_v))))
    entries = {}
    for name in STRUCTURE_CHECKS:
        extra = {"epsilon": epsilon} if name == "structure_v_unit" else None
        entries[name] = _finish(name, cfg, res[name], points, extra_details=extra)
    return entries


def _normalized_spec(spec, fit):
    """Recenter by the fitted center and rescale to a unit quadric."""
    n = spec.signature.n
    center = [complex(fit.center[2 * j], fit.center[2 * j + 1]) for j in range(n)]
    scale = math.sqrt(abs(fit.radius_sq_signed))
    moved = translate(spec, [-c for c in center])
    normalized = dilate(moved, 1.0 / scale)
    return normalized, Transform(center=fit.center.copy(), scale=scale)


def check_theorem_structure(spec: ImmersionSpec, cfg: SampleConfig):
    """Structural identities of unit-quadric Lagrangian immersions.

    After recentering/rescaling via the quadric fit, the tangential part V of
    J L must satisfy: V actually tangential, <V, V> = epsilon, h(Z, V) = JZ,
    h(V, V) = -position, and nabla V = 0 (coefficient field differentiated
    through the metric solve with jets).  Returns (entries dict, Transform or
    None); failed prerequisites produce skipped entries, not exceptions.
    """
    try:
        lag = check_lagrangian(spec, cfg)
    except LagkitError as exc:
        return (
            {n: _skipped(n, cfg, f"Lagrangian check unavailable: {exc}") for n in STRUCTURE_CHECKS},
            None,
        )
    fit, fit_entry = fit_hypersphere(spec, cfg)
    return _structure_with_fit(spec, cfg, lag, fit, fit_entry)


def _structure_with_fit(spec, cfg, lag_entry, fit, fit_entry):
    reason = None
    if not lag_entry.passed:
        reason = "requires the Lagrangian check to pass"
    elif fit is None or not fit_entry.passed:
        reason = "image is not contained in a central quadric"
    elif abs(fit.radius_sq_signed) < 1e-6:
        reason = "fitted quadric is degenerate (signed r^2 ~ 0)"
    if reason is not None:
        return {n: _skipped(n, cfg, reason) for n in STRUCTURE_CHECKS}, None
    epsilon = 1.0 if fit.radius_sq_signed > 0 else -1.0
    spec_n, transform = _normalized_spec(spec, fit)
    return _structure_entries(spec_n, cfg, epsilon), transform


def check_product_metric(spec: ImmersionSpec, cfg: SampleConfig) -> CheckEntry:
    """Product block structure in adapted coordinates (first parameter = angle).

    Checks g_{t u_j} = 0, the u-block independent of t, and g_tt constant of
    modulus one; the g_tt value lands in the entry details.
    """
    points = _samples(spec, cfg)
    residuals = []
    gtt_values = []
    for pt in points:
        fr = build_frame(spec, pt)
        g, dg = fr.metric, fr.dmetric
        cross = float(np.max(np.abs(g[0, 1:]))) if fr.num_params > 1 else 0.0
        block_drift = (
            float(np.max(np.abs(dg[0, 1:, 1:]))) if fr.num_params > 1 else 0.0
        )
        gtt_drift = float(np.max(np.abs(dg[:, 0, 0])))
        unit = abs(abs(float(g[0, 0])) - 1.0)
        gtt_values.append(float(g[0, 0]))
        residuals.append(max(cross, block_drift, gtt_drift, unit))
    return _finish(
        "product_metric",
        cfg,
        residuals,
        points,
        extra_details={"g_tt": float(np.mean(gtt_values))},
    )


def check_umbilical_relation(
    spec: ImmersionSpec, cfg: SampleConfig, quadric: AmbientQuadric
) -> CheckEntry:
    """Consistency of the flat and in-quadric second fundamental forms.

    For an immersion inside <L, L> = 1/c the in-quadric form h + c g L must be
    tangent to the quadric: <h_ij + c g_ij L, L> = 0.  Membership is verified
    first; the factor c equals the usual sign epsilon on unit quadrics.
    """
    points = _samples(spec, cfg)
    c = quadric.c
    target = quadric.radius_sq_signed
    membership_tol = max(cfg.tolerance_for("umbilical"), 1e-10)
    residuals = []
    for pt in points:
        fr = build_frame(spec, pt)
        membership = abs(inner_flat(fr.position, fr.position, fr.eta) - target)
        if membership > 1e4 * membership_tol:
            return _errored(
                "umbilical",
                cfg,
                f"membership failure at {pt}: |<L,L> - 1/c| = {membership:.3e}",
            )
        inquadric = fr.sff + c * fr.metric[:, :, None] * fr.position[None, None, :]
        residuals.append(
            float(np.max(np.abs(np.einsum("ija,a,a->ij", inquadric, fr.eta, fr.position))))
        )
    return _finish("umbilical", cfg, residuals, points)


def _identity_check(spec, cfg, name, fn) -> CheckEntry:
    """Shared driver for the curvature identities (need third derivatives)."""
    points = _samples(spec, cfg)
    residuals = []
    for pt in points:
        fr = build_frame(spec, pt, need_third=True)
        residuals.append(fn(fr))
    return _finish(name, cfg, residuals, points)


def check_gauss(spec: ImmersionSpec, cfg: SampleConfig) -> CheckEntry:
    return _identity_check(spec, cfg, "gauss", gauss_residual)


def check_codazzi(spec: ImmersionSpec, cfg: SampleConfig) -> CheckEntry:
    return _identity_check(spec, cfg, "codazzi", codazzi_residual)


@dataclass
class CheckReport:
    """All check outcomes for one spec, JSON-serializable and byte-stable."""

    spec_name: str
    checks: dict[str, CheckEntry]
    sphere_fit: SphereFit | None = None
    transform: Transform | None = None

    @property
    def passed(self) -> bool:
        return all(
            entry.passed for entry in self.checks.values() if entry.status != "skipped"
        )

    def to_dict(self) -> dict:
        checks = {}
        for name, e in self.checks.items():
            item = {
                "max": e.max_residual,
                "mean": e.mean_residual,
                "tol": e.tolerance,
                "pass": e.passed,
                "worst_point": list(e.worst_point) if e.worst_point is not None else None,
                "status": e.status,
            }
            if e.reason is not None:
                item["reason"] = e.reason
            if e.details:
                item["details"] = {k: _plain(v) for k, v in e.details.items()}
            checks[name] = item
        fit = None
        if self.sphere_fit is not None:
            fit = {
                "center": [float(x) for x in self.sphere_fit.center],
                "radius_sq_signed": float(self.sphere_fit.radius_sq_signed),
                "rms_residual": float(self.sphere_fit.rms_residual),
            }
        transform = None
        if self.transform is not None:
            transform = {
                "center": [float(x) for x in self.transform.center],
                "scale": float(self.transform.scale),
            }
        return {
            "spec_name": self.spec_name,
            "transform": transform,
            "checks": checks,
            "sphere_fit": fit,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return float(v)
    return v


def _quadric_from_fit(fit: SphereFit) -> AmbientQuadric | None:
    center_mag = float(np.max(np.abs(fit.center)))
    if center_mag > 1e-6 or abs(fit.radius_sq_signed) < 1e-6:
        return None
    if fit.radius_sq_signed > 0:
        return AmbientQuadric("pseudo_sphere", 1.0 / fit.radius_sq_signed)
    return AmbientQuadric("pseudo_hyperbolic", 1.0 / fit.radius_sq_signed)


def _guard(entries, name, cfg, fn):
    """Run one check, turning kernel errors into an error entry."""
    try:
        entries[name] = fn()
    except LagkitError as exc:
        entries[name] = _errored(name, cfg, str(exc))


def run_suite(
    spec: ImmersionSpec,
    cfg: SampleConfig | None = None,
    quadric: AmbientQuadric | None = None,
) -> CheckReport:
    """All applicable checks in dependency order.

    Half-dimensional specs run the Lagrangian chain (isotropy, quadric fit,
    curvature identities, cubic symmetry, then the structure bundle, product
    metric and umbilical relation on the re-normalized spec).  Specs with one
    parameter fewer run the Legendrian chain against the declared quadric, or
    against the fitted one when the fit lands on a central quadric.
    """
    cfg = cfg or SampleConfig()
    entries: dict[str, CheckEntry] = {}
    sphere_fit = None
    transform = None
    m, n = spec.num_params, spec.signature.n

    fit = None
    if m == n:
        _guard(entries, "lagrangian", cfg, lambda: check_lagrangian(spec, cfg))
        lag = entries["lagrangian"]
        try:
            fit, entries["spherical"] = fit_hypersphere(spec, cfg)
        except LagkitError as exc:
            entries["spherical"] = _errored("spherical", cfg, str(exc))
        sphere_fit = fit
        _guard(entries, "gauss", cfg, lambda: check_gauss(spec, cfg))
        _guard(entries, "codazzi", cfg, lambda: check_codazzi(spec, cfg))
        if lag.status == "ok" and lag.passed:
            _guard(entries, "cubic_symmetry", cfg, lambda: check_cubic_symmetry(spec, cfg))
        else:
            entries["cubic_symmetry"] = _skipped(
                "cubic_symmetry", cfg, "requires the Lagrangian check to pass"
            )
        bundle, transform = _structure_with_fit(
            spec, cfg, lag, fit, entries["spherical"]
        )
        entries.update(bundle)
        structure_ok = transform is not None
        if structure_ok:
            spec_n, _ = _normalized_spec(spec, fit)
            _guard(entries, "product_metric", cfg, lambda: check_product_metric(spec_n, cfg))
            unit_quadric = _quadric_for_epsilon(fit)
            _guard(
                entries,
                "umbilical",
                cfg,
                lambda: check_umbilical_relation(spec_n, cfg, unit_quadric),
            )
        else:
            reason = "requires the quadric fit and Lagrangian check to pass"
            entries["product_metric"] = _skipped("product_metric", cfg, reason)
            if quadric is not None:
                _guard(
                    entries,
                    "umbilical",
                    cfg,
                    lambda: check_umbilical_relation(spec, cfg, quadric),
                )
            else:
                entries["umbilical"] = _skipped("umbilical", cfg, reason)
    elif m == n - 1:
        q = quadric
        if quadric is not None:
            # A declared quadric is authoritative; low-dimensional images
            # rarely determine the fit anyway (real curves never do).
            entries["spherical"] = _skipped(
                "spherical", cfg, "quadric declared by the caller"
            )
        else:
            try:
                fit, entries["spherical"] = fit_hypersphere(spec, cfg)
            except LagkitError as exc:
                entries["spherical"] = _errored("spherical", cfg, str(exc))
            sphere_fit = fit
            if fit is not None and entries["spherical"].passed:
                q = _quadric_from_fit(fit)
        if q is not None:
            _guard(entries, "legendrian", cfg, lambda: check_legendrian(spec, cfg, q))
            if q.kind == "pseudo_sphere":
                _guard(entries, "horizontal", cfg, lambda: check_horizontal(spec, cfg))
            _guard(
                entries, "umbilical", cfg, lambda: check_umbilical_relation(spec, cfg, q)
            )
        else:
            reason = "no quadric declared and the fit found none"
            for name in ("legendrian", "horizontal", "umbilical"):
                entries[name] = _skipped(name, cfg, reason)
        _guard(entries, "gauss", cfg, lambda: check_gauss(spec, cfg))
        _guard(entries, "codazzi", cfg, lambda: check_codazzi(spec, cfg))
    else:
        _guard(entries, "gauss", cfg, lambda: check_gauss(spec, cfg))
        _guard(entries, "codazzi", cfg, lambda: check_codazzi(spec, cfg))

    return CheckReport(
        spec_name=spec.name,
        checks=entries,
        sphere_fit=sphere_fit,
        transform=transform,
    )


def _quadric_for_epsilon(fit: SphereFit) -> AmbientQuadric:
    """Unit quadric matching the sign of the fitted signed square radius."""
    if fit.radius_sq_signed > 0:
        return AmbientQuadric("pseudo_sphere", 1.0)
    return AmbientQuadric("pseudo_hyperbolic", -1.0)
