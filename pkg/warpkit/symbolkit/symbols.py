"""Symbols on R^k x R^k with derivative access and declared order/type."""

import itertools
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import sympy

from warpkit.errors import WarpkitError
from warpkit.symbolkit.expr import CompiledExpression, VariableSet, parse_expression

logger = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]

# Highest order served analytically by expression-backed symbols.
ANALYTIC_ORDER = 32
# Highest total order reachable through finite differences.
FD_CEILING = 8

# Plain partial derivatives: (theta, xi, alpha, beta) -> d_theta^beta d_xi^alpha s.
PartialFn = Callable[[np.ndarray, np.ndarray, MultiIndex, MultiIndex], np.ndarray]


class UnsupportedOrderError(WarpkitError):
    """Derivative order beyond what a symbol can provide."""


class SymbolEvaluationError(WarpkitError):
    """A symbol produced non-finite values on finite inputs."""


class IncompatibleSymbolsError(WarpkitError):
    """Symbols with different k or type cannot be combined."""


@dataclass(frozen=True)
class BilinearForm:
    """Non-degenerate bilinear form eta(theta, xi) = theta^T M xi on R^k."""

    matrix: np.ndarray
    det_floor: float = 1e-12

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError(f"Bilinear form needs a square matrix, got shape {m.shape}")
        if abs(np.linalg.det(m)) <= self.det_floor:
            raise ValueError(f"Bilinear form is degenerate: |det| <= {self.det_floor}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def euclidean(cls, k: int) -> "BilinearForm":
        return cls(np.eye(k))

    @classmethod
    def minkowski(cls, d: int) -> "BilinearForm":
        return cls(np.diag([1.0] + [-1.0] * (d - 1)))

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, theta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        return np.einsum("...i,ij,...j->...", theta, self.matrix, xi)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BilinearForm) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())


def multi_index(value: Sequence[int] | None, k: int) -> MultiIndex:
    if value is None:
        return (0,) * k
    index = tuple(int(v) for v in value)
    if len(index) != k or any(v < 0 for v in index):
        raise ValueError(f"Multi-index {value} is not a non-negative {k}-tuple")
    return index


def multi_indices(k: int, max_order: int) -> list[MultiIndex]:
    """All k-multi-indices with total order <= max_order, sorted by order."""
    out = [m for m in itertools.product(range(max_order + 1), repeat=k) if sum(m) <= max_order]
    return sorted(out, key=lambda m: (sum(m), tuple(-v for v in m)))


@dataclass(frozen=True)
class Symbol:
    """A symbol s in S^m_rho on R^k x R^k.

    ``partial`` returns plain partial derivatives; ``eval_symbol`` applies the
    (-i)^{|alpha|+|beta|} factor of D = -i d.
    """

    k: int
    order: float
    rho: float
    partial: PartialFn = field(compare=False)
    max_derivative_order: int = ANALYTIC_ORDER
    expr: sympy.Expr | None = field(default=None, compare=False)
    label: str = ""

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError(f"Symbol half-dimension must be positive, got {self.k}")
        if not -1.0 < self.rho <= 1.0:
            raise ValueError(f"Symbol type must lie in (-1, 1], got {self.rho}")
        if self.max_derivative_order < 0:
            raise ValueError("max_derivative_order must be non-negative")

    @classmethod
    def from_expression(
        cls,
        node: Any,
        k: int,
        order: float,
        rho: float,
        label: str = "",
    ) -> "Symbol":
        """Build a symbol from a grammar node or a sympy expression in theta/xi."""
        variables = VariableSet(k=k)
        expr = node if isinstance(node, sympy.Basic) else parse_expression(node, variables).expr
        return cls._from_sympy(sympy.sympify(expr), k, order, rho, label or str(expr))

    @classmethod
    def _from_sympy(cls, expr: sympy.Expr, k: int, order: float, rho: float, label: str) -> "Symbol":
        compiled = CompiledExpression(expr, VariableSet(k=k))

        def partial(theta, xi, alpha, beta):
            return compiled(tuple(beta) + tuple(alpha), *np.moveaxis(theta, -1, 0), *np.moveaxis(xi, -1, 0))

        return cls(k=k, order=order, rho=rho, partial=partial, expr=expr, label=label)

    @classmethod
    def constant(cls, value: complex, k: int, order: float = 0.0, rho: float = 1.0) -> "Symbol":
        return cls.from_expression(sympy.sympify(value), k, order, rho, label=f"const({value})")

    @classmethod
    def from_config(cls, data: dict) -> "Symbol":
        """Read ``{"k", "order", "type", "expr"}`` as found in symbol JSON files."""
        return cls.from_expression(
            data["expr"],
            k=int(data["k"]),
            order=float(data.get("order", 0.0)),
            rho=float(data.get("type", 1.0)),
            label=data.get("label", ""),
        )

    def __call__(self, theta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        return eval_symbol(self, theta, xi)

    def with_class(self, order: float, rho: float) -> "Symbol":
        """Same function, different declared (order, type)."""
        return Symbol(self.k, order, rho, self.partial, self.max_derivative_order, self.expr, self.label)

    def scaled(self, c: complex) -> "Symbol":
        if self.expr is not None:
            return Symbol._from_sympy(sympy.sympify(c) * self.expr, self.k, self.order, self.rho, self.label)

        def partial(theta, xi, alpha, beta):
            return c * self.partial(theta, xi, alpha, beta)

        return Symbol(self.k, self.order, self.rho, partial, self.max_derivative_order, None, self.label)


def _as_points(values: np.ndarray, k: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0 and k == 1:
        arr = arr.reshape(1)
    if arr.shape[-1:] != (k,):
        raise ValueError(f"{what} must have trailing dimension {k}, got shape {arr.shape}")
    return arr


def _raw_partial(
    s: Symbol, theta: np.ndarray, xi: np.ndarray, alpha: MultiIndex, beta: MultiIndex, ceiling: int
) -> np.ndarray:
    n = sum(alpha) + sum(beta)
    if n <= s.max_derivative_order:
        return np.asarray(s.partial(theta, xi, alpha, beta), dtype=complex)
    if n > ceiling:
        raise UnsupportedOrderError(
            f"Derivative order {n} exceeds finite-difference ceiling {ceiling}",
            order=n,
            ceiling=ceiling,
        )
    # Peel one derivative off and take a central difference of the rest.
    norm = np.sqrt(np.sum(theta**2, axis=-1) + np.sum(xi**2, axis=-1))
    step = np.finfo(float).eps ** (1 / 3) * (1 + norm)
    if any(beta):
        i = next(j for j, b in enumerate(beta) if b)
        lower = beta[:i] + (beta[i] - 1,) + beta[i + 1 :]
        shift = np.zeros_like(theta)
        shift[..., i] = step
        plus = _raw_partial(s, theta + shift, xi, alpha, lower, ceiling)
        minus = _raw_partial(s, theta - shift, xi, alpha, lower, ceiling)
    else:
        i = next(j for j, a in enumerate(alpha) if a)
        lower = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
        shift = np.zeros_like(xi)
        shift[..., i] = step
        plus = _raw_partial(s, theta, xi + shift, lower, beta, ceiling)
        minus = _raw_partial(s, theta, xi - shift, lower, beta, ceiling)
    return (plus - minus) / (2 * step)


def partial_derivative(
    s: Symbol,
    theta: np.ndarray,
    xi: np.ndarray,
    alpha: Sequence[int] | None = None,
    beta: Sequence[int] | None = None,
    *,
    ceiling: int = FD_CEILING,
) -> np.ndarray:
    """Plain partial d_theta^beta d_xi^alpha s, analytic where available."""
    theta = _as_points(theta, s.k, "theta")
    xi = _as_points(xi, s.k, "xi")
    theta, xi = np.broadcast_arrays(theta, xi)
    values = _raw_partial(s, theta, xi, multi_index(alpha, s.k), multi_index(beta, s.k), ceiling)
    return np.broadcast_to(values, theta.shape[:-1])


def eval_symbol(
    s: Symbol,
    theta: np.ndarray,
    xi: np.ndarray,
    alpha: Sequence[int] | None = None,
    beta: Sequence[int] | None = None,
    *,
    ceiling: int = FD_CEILING,
) -> np.ndarray:
    """Evaluate D_theta^beta D_xi^alpha s at (theta, xi), with D = -i d.

    ``theta`` and ``xi`` may be single k-vectors or stacks of shape (..., k).
    """
    alpha = multi_index(alpha, s.k)
    beta = multi_index(beta, s.k)
    values = partial_derivative(s, theta, xi, alpha, beta, ceiling=ceiling)
    values = (-1j) ** (sum(alpha) + sum(beta)) * values
    if not np.all(np.isfinite(values)):
        raise SymbolEvaluationError(
            f"Symbol {s.label or '<anonymous>'} is not finite at sampled points",
            alpha=list(alpha),
            beta=list(beta),
        )
    return values


def symbol_product(s: Symbol, t: Symbol) -> Symbol:
    """Pointwise product; order adds, type is shared."""
    if s.k != t.k or s.rho != t.rho:
        raise IncompatibleSymbolsError(
            f"Cannot multiply symbols with (k, rho) = ({s.k}, {s.rho}) and ({t.k}, {t.rho})",
            left=[s.k, s.rho],
            right=[t.k, t.rho],
        )
    order = s.order + t.order
    label = f"({s.label})*({t.label})"
    if s.expr is not None and t.expr is not None:
        return Symbol._from_sympy(s.expr * t.expr, s.k, order, s.rho, label)

    def partial(theta, xi, alpha, beta):
        total = 0
        for a in itertools.product(*(range(n + 1) for n in alpha)):
            for b in itertools.product(*(range(n + 1) for n in beta)):
                weight = math.prod(math.comb(n, j) for n, j in zip(alpha + beta, a + b, strict=True))
                rest_a = tuple(n - j for n, j in zip(alpha, a, strict=True))
                rest_b = tuple(n - j for n, j in zip(beta, b, strict=True))
                total = total + weight * _raw_partial(s, theta, xi, a, b, FD_CEILING) * _raw_partial(
                    t, theta, xi, rest_a, rest_b, FD_CEILING
                )
        return total

    depth = min(s.max_derivative_order, t.max_derivative_order)
    return Symbol(s.k, order, s.rho, partial, depth, None, label)


def symbol_derivative(
    s: Symbol,
    alpha: Sequence[int] | None = None,
    beta: Sequence[int] | None = None,
    *,
    ceiling: int = FD_CEILING,
) -> Symbol:
    """The symbol D_theta^beta D_xi^alpha s of order m - rho(|alpha|+|beta|)."""
    alpha = multi_index(alpha, s.k)
    beta = multi_index(beta, s.k)
    n = sum(alpha) + sum(beta)
    if n == 0:
        return s
    if n > max(s.max_derivative_order, ceiling):
        raise UnsupportedOrderError(f"Derivative order {n} exceeds ceiling {ceiling}", order=n)
    order = s.order - s.rho * n
    label = f"D^{beta},{alpha}({s.label})"
    factor = (-1j) ** n
    if s.expr is not None:
        variables = VariableSet(k=s.k)
        spec = [(v, m) for v, m in zip(variables.theta + variables.xi, beta + alpha, strict=True) if m]
        return Symbol._from_sympy(factor * sympy.diff(s.expr, *spec), s.k, order, s.rho, label)

    def partial(theta, xi, a, b):
        shifted_a = tuple(x + y for x, y in zip(a, alpha, strict=True))
        shifted_b = tuple(x + y for x, y in zip(b, beta, strict=True))
        return factor * _raw_partial(s, theta, xi, shifted_a, shifted_b, ceiling)

    depth = max(s.max_derivative_order - n, 0)
    return Symbol(s.k, order, s.rho, partial, depth, None, label)
