"""Induced geometry of an immersion: metric, connection, curvature.

A GeometryFrame bundles the derivative data of the immersion at one point,
in interleaved real coordinates, together with the induced metric, the
Christoffel symbols, and the second fundamental form of the flat ambient
space.  Curvature and the classical compatibility identities (Gauss and
Codazzi equations) are computed from the frame.

Index conventions, pinned by tests on the round-sphere factor:
  dmetric[k, i, j]      = d_k g_ij
  christoffels[k, i, j] = Gamma^k_ij
  riemann R[i, j, k, l] = <R(d_i, d_j) d_k, d_l>, so the Gauss identity reads
  R[i, j, k, l] = <h_il, h_jk> - <h_ik, h_jl>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import metric_diagonal
from .dsl import ImmersionSpec, evaluate_map_jets
from .errors import DegenerateMetricError
from .jets import ComplexJet, Jet, derivative_jet, jet_solve, truncate

__all__ = [
    "GeometryFrame",
    "build_frame",
    "riemann_tensor",
    "sectional_curvature",
    "gauss_residual",
    "codazzi_residual",
    "project",
    "tangent_field_jets",
]

DET_THRESHOLD = 1e-10


@dataclass
class GeometryFrame:
    """Derivative and metric data of an immersion at a single point."""

    spec: ImmersionSpec
    point: tuple[float, ...]
    position: np.ndarray  # (2n,)
    first: np.ndarray  # (m, 2n)
    second: np.ndarray  # (m, m, 2n)
    third: np.ndarray | None  # (m, m, m, 2n) when requested
    eta: np.ndarray  # (2n,)
    metric: np.ndarray  # (m, m)
    metric_inv: np.ndarray
    dmetric: np.ndarray  # (m, m, m): d_k g_ij
    christoffels: np.ndarray  # (m, m, m): Gamma^k_ij
    sff: np.ndarray  # (m, m, 2n): second fundamental form vectors

    @property
    def num_params(self) -> int:
        return self.first.shape[0]


def _real_blocks(cjets: list[ComplexJet], order: int):
    """Interleave (re, im) jets of each component into flat real tensors."""
    n = len(cjets)
    m = cjets[0].re.num_vars
    position = np.empty(2 * n)
    first = np.empty((m, 2 * n)) if order >= 1 else None
    second = np.empty((m, m, 2 * n)) if order >= 2 else None
    third = np.empty((m, m, m, 2 * n)) if order >= 3 else None
    for j, cj in enumerate(cjets):
        for off, part in ((0, cj.re), (1, cj.im)):
            a = 2 * j + off
            position[a] = part.value
            if order >= 1:
                first[:, a] = part.gradient
            if order >= 2:
                second[:, :, a] = part.hessian
            if order >= 3:
                third[:, :, :, a] = part.third
    return position, first, second, third


def build_frame(spec: ImmersionSpec, point, need_third: bool = False) -> GeometryFrame:
    """Evaluate the immersion at a point and assemble its geometric data.

    Raises DegenerateMetricError when |det g| < 1e-10 * (max |g_ij|)^m.
    """
    order = 3 if need_third else 2
    cjets = evaluate_map_jets(spec, point, order)
    position, first, second, third = _real_blocks(cjets, order)
    eta = metric_diagonal(spec.signature)
    m = spec.num_params

    weighted = first * eta
    metric = weighted @ first.T
    metric = 0.5 * (metric + metric.T)
    scale = float(np.max(np.abs(metric)))
    det = float(np.linalg.det(metric))
    if scale == 0.0 or abs(det) < DET_THRESHOLD * scale**m:
        raise DegenerateMetricError(
            f"induced metric degenerate at {tuple(point)}: |det| = {abs(det):.3e}"
        )
    metric_inv = np.linalg.inv(metric)

    # d_k g_ij = <L_ik, L_j> + <L_i, L_jk>
    half = np.einsum("ika,a,ja->kij", second, eta, first)
    dmetric = half + half.transpose(0, 2, 1)

    # Gamma^k_ij = (1/2) g^{kl} (d_i g_lj + d_j g_li - d_l g_ij)
    bracket = (
        np.einsum("ilj->lij", dmetric)
        + np.einsum("jli->lij", dmetric)
        - dmetric
    )
    christoffels = 0.5 * np.einsum("kl,lij->kij", metric_inv, bracket)

    sff = second - np.einsum("kij,ka->ija", christoffels, first)

    return GeometryFrame(
        spec=spec,
        point=tuple(float(x) for x in point),
        position=position,
        first=first,
        second=second,
        third=third,
        eta=eta,
        metric=metric,
        metric_inv=metric_inv,
        dmetric=dmetric,
        christoffels=christoffels,
        sff=sff,
    )


def _require_third(frame: GeometryFrame):
    if frame.third is None:
        raise ValueError("frame was built without third derivatives; pass need_third=True")


def _christoffel_derivatives(frame: GeometryFrame) -> np.ndarray:
    """d_p Gamma^k_ij as array [p, k, i, j]; needs third derivatives."""
    _require_third(frame)
    eta = frame.eta
    first, second, third = frame.first, frame.second, frame.third
    ginv, dg = frame.metric_inv, frame.dmetric

    # d_p d_q g_ij
    d2g = (
        np.einsum("pqia,a,ja->pqij", third, eta, first)
        + np.einsum("pia,a,qja->pqij", second, eta, second)
        + np.einsum("qia,a,pja->pqij", second, eta, second)
        + np.einsum("ia,a,pqja->pqij", first, eta, third)
    )
    dginv = -np.einsum("ka,pab,bl->pkl", ginv, dg, ginv)
    bracket = (
        np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg
    )
    dbracket = (
        np.einsum("pilj->plij", d2g)
        + np.einsum("pjli->plij", d2g)
        - np.einsum("plij->plij", d2g)
    )
    return 0.5 * np.einsum("pkl,lij->pkij", dginv, bracket) + 0.5 * np.einsum(
        "kl,plij->pkij", ginv, dbracket
    )


def riemann_tensor(frame: GeometryFrame) -> np.ndarray:
    """Fully lowered curvature R[i,j,k,l] = <R(d_i, d_j) d_k, d_l>."""
    dgamma = _christoffel_derivatives(frame)
    gamma = frame.christoffels
    up = (
        np.einsum("iljk->ijkl", dgamma)
        - np.einsum("jlik->ijkl", dgamma)
        + np.einsum("mjk,lim->ijkl", gamma, gamma)
        - np.einsum("mik,ljm->ijkl", gamma, gamma)
    )
    return np.einsum("ijkm,ml->ijkl", up, frame.metric)


def sectional_curvature(frame: GeometryFrame, i: int, j: int, riemann=None) -> float:
    """Sectional curvature of the coordinate 2-plane spanned by d_i, d_j."""
    r = riemann_tensor(frame) if riemann is None else riemann
    g = frame.metric
    denom = g[i, i] * g[j, j] - g[i, j] ** 2
    if abs(denom) < 1e-14:
        raise DegenerateMetricError(f"coordinate plane ({i},{j}) is metrically degenerate")
    return float(r[i, j, j, i] / denom)


def gauss_residual(frame: GeometryFrame) -> float:
    """Max deviation in the Gauss identity R_ijkl = <h_il,h_jk> - <h_ik,h_jl>."""
    r = riemann_tensor(frame)
    h, eta = frame.sff, frame.eta
    rhs = np.einsum("ila,a,jka->ijkl", h, eta, h) - np.einsum(
        "ika,a,jla->ijkl", h, eta, h
    )
    return float(np.max(np.abs(r - rhs)))


def codazzi_residual(frame: GeometryFrame) -> float:
    """Max asymmetry of the covariant derivative of the second fundamental form.

    (nabla h)(X, Y, Z) = D_X h(Y, Z) - h(nabla_X Y, Z) - h(Y, nabla_X Z) must be
    symmetric in X, Y for an immersion into a flat ambient space.
    """
    _require_third(frame)
    gamma = frame.christoffels
    dgamma = _christoffel_derivatives(frame)
    first, second, third = frame.first, frame.second, frame.third
    h, eta, ginv = frame.sff, frame.eta, frame.metric_inv

    # ambient derivative d_i h_jk, then its normal projection
    dh = (
        third
        - np.einsum("imjk,ma->ijka", dgamma, first)
        - np.einsum("mjk,ima->ijka", gamma, second)
    )
    coeff = np.einsum("ml,la,a,ijka->ijkm", ginv, first, eta, dh)
    dh_normal = dh - np.einsum("ijkm,ma->ijka", coeff, first)

    nabla_h = (
        dh_normal
        - np.einsum("mij,mka->ijka", gamma, h)
        - np.einsum("mik,jma->ijka", gamma, h)
    )
    return float(np.max(np.abs(nabla_h - nabla_h.transpose(1, 0, 2, 3))))


def project(frame: GeometryFrame, v: np.ndarray):
    """Split an ambient vector into tangential coefficients and a normal part.

    Solves g a = (dL | v) with the pseudo metric pairing; returns (a, normal).
    """
    rhs = frame.first @ (frame.eta * v)
    coeffs = frame.metric_inv @ rhs
    normal = v - coeffs @ frame.first
    return coeffs, normal


def tangent_field_jets(spec: ImmersionSpec, point) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient field of the tangential part of J L, with first derivatives.

    The coefficients a^k solve g_kl a^l = <J L, L_k>.  Building the solve out
    of order-1 jets differentiates straight through it, giving d_i a^k without
    any finite differencing.  Returns (values (m,), gradients (m, m) with
    grad[i, k] = d_i a^k).
    """
    cjets = evaluate_map_jets(spec, point, 2)
    m = spec.num_params
    eta = metric_diagonal(spec.signature)

    flat: list[Jet] = []
    for cj in cjets:
        flat.append(cj.re)
        flat.append(cj.im)
    pos = [truncate(f, 1) for f in flat]
    jpos = []
    for j in range(len(cjets)):
        jpos.append(-pos[2 * j + 1])
        jpos.append(pos[2 * j])
    firsts = [[derivative_jet(f, k) for f in flat] for k in range(m)]

    def pair(u: list[Jet], v: list[Jet]) -> Jet:
        acc = None
        for w, a, b in zip(eta, u, v):
            term = (a * b) * float(w)
            acc = term if acc is None else acc + term
        return acc

    gram = [[pair(firsts[k], firsts[l]) for l in range(m)] for k in range(m)]
    rhs = [pair(jpos, firsts[k]) for k in range(m)]
    sol = jet_solve(gram, rhs)
    values = np.array([s.value for s in sol])
    grads = np.stack([s.gradient for s in sol], axis=1)  # grads[i, k] = d_i a^k
    return values, grads
