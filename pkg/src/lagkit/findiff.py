"""Finite-difference cross-check for the jet evaluator.

This module is the independent second route: expressions are evaluated with
plain complex arithmetic (cmath), and derivatives come from nested 4-point
central difference stencils of order h^4.  Nothing here touches the jet code
it is meant to check.

The 4-point stencil matters: third derivatives of some catalog maps are large
(Whitney-type factors have fifth derivatives of order 10^2), and the plain
3-point stencil would lose the order-3 agreement budget at step 1e-2.
"""

from __future__ import annotations

import cmath

import numpy as np

from .dsl import Bin, Call, Imag, ImmersionSpec, Neg, Num, Pow, Ref, check_point_in_domain
from .errors import DomainError

__all__ = [
    "eval_map_numeric",
    "finite_difference_oracle",
    "jet_fd_deviation",
]

# offsets in units of h and weights for the O(h^4) central first derivative
_OFFSETS = (-2.0, -1.0, 1.0, 2.0)
_WEIGHTS = (1.0, -8.0, 8.0, -1.0)
_NORM = 12.0
_REACH = 2.0  # stencil reach per differentiation level, in units of h

_CFUNCS = {
    "exp": cmath.exp,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
    "sqrt": cmath.sqrt,
}


def _ev(e, env) -> complex:
    if isinstance(e, Num):
        return complex(e.value)
    if isinstance(e, Imag):
        return 1j
    if isinstance(e, Ref):
        return complex(env[e.name])
    if isinstance(e, Neg):
        return -_ev(e.arg, env)
    if isinstance(e, Bin):
        a = _ev(e.left, env)
        b = _ev(e.right, env)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        return a / b
    if isinstance(e, Pow):
        return _ev(e.base, env) ** e.exponent
    if isinstance(e, Call):
        return _CFUNCS[e.fn](_ev(e.arg, env))
    raise TypeError(f"not an expression node: {e!r}")


def eval_map_numeric(spec: ImmersionSpec, point) -> np.ndarray:
    """All components at a point, as a complex vector, via direct evaluation."""
    check_point_in_domain(spec, point)
    env = {p.name: float(x) for p, x in zip(spec.params, point)}
    return np.array([_ev(c, env) for c in spec.components], dtype=complex)


def _central(f, x: np.ndarray, axes: tuple[int, ...], h: float) -> np.ndarray:
    if not axes:
        return f(x)
    i, rest = axes[0], axes[1:]
    acc = None
    for off, w in zip(_OFFSETS, _WEIGHTS):
        xp = x.copy()
        xp[i] += off * h
        term = w * _central(f, xp, rest, h)
        acc = term if acc is None else acc + term
    return acc / (_NORM * h)


def finite_difference_oracle(
    spec: ImmersionSpec, point, order: int, step: float
) -> dict[int, np.ndarray]:
    """Derivative tensors of the component map by central differences.

    Returns {0: (n,), 1: (m, n), 2: (m, m, n), 3: (m, m, m, n)} up to `order`,
    complex-valued.  The whole stencil must stay inside the domain box.
    """
    if order not in (1, 2, 3):
        raise ValueError(f"finite-difference order must be 1..3, got {order}")
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    m = spec.num_params
    n = spec.signature.n
    x = np.asarray([float(v) for v in point], dtype=float)
    if x.shape != (m,):
        raise DomainError(f"point has {x.shape[0]} coordinates, spec has {m} parameters")
    reach = _REACH * step * order
    for p, v in zip(spec.params, x):
        if v - reach < p.lo - 1e-12 or v + reach > p.hi + 1e-12:
            raise DomainError(
                f"stencil of half-width {reach} around {p.name}={v} "
                f"leaves [{p.lo}, {p.hi}]"
            )

    def f(pt):
        return eval_map_numeric(spec, pt)

    out: dict[int, np.ndarray] = {0: f(x)}
    out[1] = np.array([_central(f, x, (i,), step) for i in range(m)])
    if order >= 2:
        out[2] = np.array(
            [[_central(f, x, (i, j), step) for j in range(m)] for i in range(m)]
        )
    if order >= 3:
        out[3] = np.array(
            [
                [[_central(f, x, (i, j, k), step) for k in range(m)] for j in range(m)]
                for i in range(m)
            ]
        )
    return out


def _jet_tensors(spec: ImmersionSpec, point, order: int) -> dict[int, np.ndarray]:
    from .dsl import evaluate_map_jets

    cjets = evaluate_map_jets(spec, point, order)
    m = spec.num_params
    n = spec.signature.n
    out = {0: np.array([cj.value for cj in cjets], dtype=complex)}
    if order >= 1:
        first = np.empty((m, n), dtype=complex)
        for j, cj in enumerate(cjets):
            first[:, j] = cj.re.gradient + 1j * cj.im.gradient
        out[1] = first
    if order >= 2:
        second = np.empty((m, m, n), dtype=complex)
        for j, cj in enumerate(cjets):
            second[:, :, j] = cj.re.hessian + 1j * cj.im.hessian
        out[2] = second
    if order >= 3:
        third = np.empty((m, m, m, n), dtype=complex)
        for j, cj in enumerate(cjets):
            third[:, :, :, j] = cj.re.third + 1j * cj.im.third
        out[3] = third
    return out


def jet_fd_deviation(
    spec: ImmersionSpec, point, order: int, step: float
) -> dict[int, float]:
    """Max |jet - finite difference| per derivative order (1..order)."""
    fd = finite_difference_oracle(spec, point, order, step)
    jt = _jet_tensors(spec, point, order)
    return {
        k: float(np.max(np.abs(jt[k] - fd[k]))) for k in range(1, order + 1)
    }
