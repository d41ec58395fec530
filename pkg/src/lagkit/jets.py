"""Truncated multivariate Taylor arithmetic up to third order.

A Jet holds the value of a scalar quantity together with its partial
derivatives with respect to m variables, up to a fixed order in {0, 1, 2, 3}.
Blocks store plain partial derivatives: gradient (m,), symmetric Hessian
(m, m), symmetric third-order tensor (m, m, m).  Arithmetic propagates the
blocks exactly (Leibniz rule, Faa di Bruno), so any quantity assembled from
jets carries exact derivatives up to rounding.

ComplexJet is a pair of real jets (re, im); complex arithmetic is spelled out
on the pair so derivative propagation never depends on a complex-number
facility.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import DimensionMismatchError, SingularEvaluationError

__all__ = [
    "Jet",
    "ComplexJet",
    "jet_seed",
    "jet_arith",
    "jet_func",
    "truncate",
    "derivative_jet",
    "jet_solve",
]

_DIV_GUARD = 1e-300
_DIV_WARN = 1e-12
_SQRT_GUARD = 1e-12


class Jet:
    """Value plus derivative blocks of a scalar function of m variables."""

    __slots__ = ("num_vars", "order", "value", "gradient", "hessian", "third")

    def __init__(self, num_vars, order, value, gradient=None, hessian=None, third=None):
        if order not in (0, 1, 2, 3):
            raise ValueError(f"jet order must be in 0..3, got {order}")
        if num_vars < 1:
            raise ValueError(f"jet needs at least one variable, got {num_vars}")
        m = num_vars
        self.num_vars = m
        self.order = order
        self.value = float(value)
        self.gradient = _block(gradient, (m,)) if order >= 1 else None
        self.hessian = _block(hessian, (m, m)) if order >= 2 else None
        self.third = _block(third, (m, m, m)) if order >= 3 else None

    @classmethod
    def constant(cls, value, num_vars, order) -> "Jet":
        return cls(num_vars, order, value)

    @classmethod
    def seed(cls, var_index, value, num_vars, order) -> "Jet":
        """Jet of the coordinate function x_{var_index} at the given value."""
        if not 0 <= var_index < num_vars:
            raise DimensionMismatchError(
                f"seed index {var_index} out of range for {num_vars} variables"
            )
        out = cls(num_vars, order, value)
        if order >= 1:
            out.gradient[var_index] = 1.0
        return out

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        _check_compat(self, other)
        return _combine(self, other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        _check_compat(self, other)
        return _combine(self, other, lambda a, b: a - b)

    def __rsub__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __neg__(self):
        return _map_blocks(self, lambda a: -a)

    def __mul__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        _check_compat(self, other)
        a, b = self, other
        out = Jet(a.num_vars, a.order, a.value * b.value)
        if a.order >= 1:
            out.gradient = a.value * b.gradient + b.value * a.gradient
        if a.order >= 2:
            out.hessian = (
                a.value * b.hessian
                + b.value * a.hessian
                + np.outer(a.gradient, b.gradient)
                + np.outer(b.gradient, a.gradient)
            )
        if a.order >= 3:
            out.third = a.value * b.third + b.value * a.third
            out.third += _sym_hess_grad(a.hessian, b.gradient)
            out.third += _sym_hess_grad(b.hessian, a.gradient)
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        _check_compat(self, other)
        return self * _reciprocal(other)

    def __rtruediv__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return NotImplemented
        return other * _reciprocal(self)

    def __repr__(self):
        return f"Jet(m={self.num_vars}, order={self.order}, value={self.value})"


def _block(data, shape):
    if data is None:
        return np.zeros(shape)
    arr = np.asarray(data, dtype=float)
    if arr.shape != shape:
        raise DimensionMismatchError(f"expected block shape {shape}, got {arr.shape}")
    return arr.copy()


def _coerce(other, like: Jet):
    if isinstance(other, Jet):
        return other
    if isinstance(other, (int, float)):
        return Jet.constant(float(other), like.num_vars, like.order)
    return NotImplemented


def _check_compat(a: Jet, b: Jet):
    if a.num_vars != b.num_vars or a.order != b.order:
        raise DimensionMismatchError(
            f"jet mismatch: (m={a.num_vars}, order={a.order}) vs "
            f"(m={b.num_vars}, order={b.order})"
        )


def _combine(a: Jet, b: Jet, op) -> Jet:
    out = Jet(a.num_vars, a.order, op(a.value, b.value))
    if a.order >= 1:
        out.gradient = op(a.gradient, b.gradient)
    if a.order >= 2:
        out.hessian = op(a.hessian, b.hessian)
    if a.order >= 3:
        out.third = op(a.third, b.third)
    return out


def _map_blocks(a: Jet, fn) -> Jet:
    out = Jet(a.num_vars, a.order, fn(a.value))
    if a.order >= 1:
        out.gradient = fn(a.gradient)
    if a.order >= 2:
        out.hessian = fn(a.hessian)
    if a.order >= 3:
        out.third = fn(a.third)
    return out


def _sym_hess_grad(H: np.ndarray, g: np.ndarray) -> np.ndarray:
    # sum over the three placements of the gradient index: H_ij g_k sym.
    base = H[:, :, None] * g[None, None, :]
    return base + base.transpose(0, 2, 1) + base.transpose(2, 0, 1)


def _compose(u: Jet, f0, f1, f2=0.0, f3=0.0) -> Jet:
    """Chain rule for f(u) given derivatives of f at u.value."""
    out = Jet(u.num_vars, u.order, f0)
    if u.order >= 1:
        out.gradient = f1 * u.gradient
    if u.order >= 2:
        out.hessian = f1 * u.hessian + f2 * np.outer(u.gradient, u.gradient)
    if u.order >= 3:
        g = u.gradient
        out.third = (
            f1 * u.third
            + f2 * _sym_hess_grad(u.hessian, g)
            + f3 * g[:, None, None] * g[None, :, None] * g[None, None, :]
        )
    return out


def _reciprocal(u: Jet) -> Jet:
    v = u.value
    if abs(v) < _DIV_GUARD:
        raise SingularEvaluationError(f"division by {v!r}")
    if abs(v) < _DIV_WARN:
        warnings.warn(
            f"division by poorly conditioned value {v!r}", RuntimeWarning, stacklevel=3
        )
    inv = 1.0 / v
    return _compose(u, inv, -inv * inv, 2.0 * inv**3, -6.0 * inv**4)


def exp(u: Jet) -> Jet:
    e = math.exp(u.value)
    return _compose(u, e, e, e, e)


def sin(u: Jet) -> Jet:
    s, c = math.sin(u.value), math.cos(u.value)
    return _compose(u, s, c, -s, -c)


def cos(u: Jet) -> Jet:
    s, c = math.sin(u.value), math.cos(u.value)
    return _compose(u, c, -s, -c, s)


def sinh(u: Jet) -> Jet:
    s, c = math.sinh(u.value), math.cosh(u.value)
    return _compose(u, s, c, s, c)


def cosh(u: Jet) -> Jet:
    s, c = math.sinh(u.value), math.cosh(u.value)
    return _compose(u, c, s, c, s)


def sqrt(u: Jet) -> Jet:
    if u.value < _SQRT_GUARD:
        raise SingularEvaluationError(f"sqrt at non-positive or tiny value {u.value!r}")
    r = math.sqrt(u.value)
    return _compose(u, r, 0.5 / r, -0.25 / r**3, 0.375 / r**5)


def ipow(u: Jet, k: int) -> Jet:
    """Integer power by repeated multiplication (negative via reciprocal)."""
    if k < 0:
        return _reciprocal(ipow(u, -k))
    out = Jet.constant(1.0, u.num_vars, u.order)
    base = u
    while k:
        if k & 1:
            out = out * base
        base = base * base if k > 1 else base
        k >>= 1
    return out


def truncate(u: Jet, order: int) -> Jet:
    """Forget derivative blocks above `order`."""
    if order > u.order:
        raise DimensionMismatchError(f"cannot extend jet of order {u.order} to {order}")
    return Jet(
        u.num_vars,
        order,
        u.value,
        u.gradient if order >= 1 else None,
        u.hessian if order >= 2 else None,
        u.third if order >= 3 else None,
    )


def derivative_jet(u: Jet, i: int) -> Jet:
    """Jet of the partial derivative d_i u, one order lower."""
    if u.order < 1:
        raise DimensionMismatchError("need order >= 1 to take a derivative jet")
    if not 0 <= i < u.num_vars:
        raise DimensionMismatchError(f"axis {i} out of range")
    return Jet(
        u.num_vars,
        u.order - 1,
        u.gradient[i],
        u.hessian[i] if u.order >= 2 else None,
        u.third[i] if u.order >= 3 else None,
    )


# -- spec-surface wrappers --------------------------------------------------

def jet_seed(var_index, value, num_vars, order) -> Jet:
    return Jet.seed(var_index, value, num_vars, order)


_ARITH = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}

_FUNCS = {
    "exp": exp,
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "sqrt": sqrt,
    "neg": lambda u: -u,
}


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    try:
        fn = _ARITH[op]
    except KeyError:
        raise ValueError(f"unknown jet operation {op!r}") from None
    return fn(a, b)


def jet_func(a: Jet, name: str, factor: float | None = None) -> Jet:
    if name == "scale":
        if factor is None:
            raise ValueError("scale needs a factor")
        return a * float(factor)
    try:
        fn = _FUNCS[name]
    except KeyError:
        raise ValueError(f"unknown jet function {name!r}") from None
    return fn(a)


def jet_solve(matrix: list[list[Jet]], rhs: list[Jet]) -> list[Jet]:
    """Solve a small linear system with jet entries.

    Gaussian elimination with partial pivoting on the value block; derivative
    blocks ride along through the jet arithmetic, so the solution jets carry
    the derivatives of the solution field.
    """
    n = len(rhs)
    A = [row[:] for row in matrix]
    b = list(rhs)
    scale = max((abs(A[r][c].value) for r in range(n) for c in range(n)), default=0.0)
    if scale == 0.0:
        raise SingularEvaluationError("zero matrix in jet solve")
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(A[r][col].value))
        if abs(A[pivot][col].value) < 1e-14 * scale:
            raise SingularEvaluationError("jet solve pivot below threshold")
        if pivot != col:
            A[col], A[pivot] = A[pivot], A[col]
            b[col], b[pivot] = b[pivot], b[col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            for c in range(col, n):
                A[r][c] = A[r][c] - f * A[col][c]
            b[r] = b[r] - f * b[col]
    x: list[Jet | None] = [None] * n
    for r in range(n - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, n):
            acc = acc - A[r][c] * x[c]
        x[r] = acc / A[r][r]
    return x  # type: ignore[return-value]


class ComplexJet:
    """Complex scalar as a (re, im) pair of real jets."""

    __slots__ = ("re", "im")

    def __init__(self, re: Jet, im: Jet):
        _check_compat(re, im)
        self.re = re
        self.im = im

    @classmethod
    def constant(cls, value: complex, num_vars, order) -> "ComplexJet":
        value = complex(value)
        return cls(
            Jet.constant(value.real, num_vars, order),
            Jet.constant(value.imag, num_vars, order),
        )

    @classmethod
    def from_real(cls, re: Jet) -> "ComplexJet":
        return cls(re, Jet.constant(0.0, re.num_vars, re.order))

    @property
    def value(self) -> complex:
        return complex(self.re.value, self.im.value)

    def __add__(self, other: "ComplexJet") -> "ComplexJet":
        return ComplexJet(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexJet") -> "ComplexJet":
        return ComplexJet(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexJet":
        return ComplexJet(-self.re, -self.im)

    def __mul__(self, other: "ComplexJet") -> "ComplexJet":
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexJet(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "ComplexJet") -> "ComplexJet":
        c, d = other.re, other.im
        modsq = c * c + d * d
        inv = _reciprocal(modsq)
        num = self * ComplexJet(c, -d)
        return ComplexJet(num.re * inv, num.im * inv)

    def __repr__(self):
        return f"ComplexJet(value={self.value})"


def cexp(z: ComplexJet) -> ComplexJet:
    er = exp(z.re)
    return ComplexJet(er * cos(z.im), er * sin(z.im))


def csin(z: ComplexJet) -> ComplexJet:
    return ComplexJet(sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im))


def ccos(z: ComplexJet) -> ComplexJet:
    return ComplexJet(cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im)))


def csinh(z: ComplexJet) -> ComplexJet:
    return ComplexJet(sinh(z.re) * cos(z.im), cosh(z.re) * sin(z.im))


def ccosh(z: ComplexJet) -> ComplexJet:
    return ComplexJet(cosh(z.re) * cos(z.im), sinh(z.re) * sin(z.im))


def csqrt(z: ComplexJet) -> ComplexJet:
    """Square root for numerically real, positive arguments.

    The DSL only needs sqrt on positive real subexpressions (constants like
    sqrt(3)); a general complex branch would not stay differentiable across
    the cut, so anything else is rejected loudly.
    """
    scale = max(1.0, abs(z.re.value))
    im_mag = abs(z.im.value)
    if z.im.order >= 1:
        im_mag = max(im_mag, float(np.max(np.abs(z.im.gradient))))
    if z.im.order >= 2:
        im_mag = max(im_mag, float(np.max(np.abs(z.im.hessian))))
    if z.im.order >= 3:
        im_mag = max(im_mag, float(np.max(np.abs(z.im.third))))
    if im_mag > 1e-9 * scale:
        raise SingularEvaluationError("sqrt of a non-real expression")
    return ComplexJet.from_real(sqrt(z.re))


def cipow(z: ComplexJet, k: int) -> ComplexJet:
    if k < 0:
        one = ComplexJet.constant(1.0, z.re.num_vars, z.re.order)
        return one / cipow(z, -k)
    out = ComplexJet.constant(1.0, z.re.num_vars, z.re.order)
    base = z
    while k:
        if k & 1:
            out = out * base
        base = base * base if k > 1 else base
        k >>= 1
    return out
