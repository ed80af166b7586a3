"""JSON expression grammar for symbols, profiles and test functions."""

import logging
import threading
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np
import sympy

from warpkit.errors import WarpkitError

logger = logging.getLogger(__name__)

THETA = "theta"
XI = "xi"
X = "x"
ALL = "all"

GROUPS = (THETA, XI, X, ALL)


class ExpressionError(WarpkitError):
    """Raised for malformed expression nodes."""

    invalid_input = True


@dataclass(frozen=True)
class VariableSet:
    """Named sympy variables for the (x, theta, xi) groups.

    ``k`` is the half-dimension of the (theta, xi) domain and ``s`` the
    dimension of the base space. Symbols are real and named deterministically
    so expressions built from different VariableSets combine.
    """

    k: int
    s: int = 0

    @cached_property
    def theta(self) -> tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(f"theta{i}", real=True) for i in range(self.k))

    @cached_property
    def xi(self) -> tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(f"xi{i}", real=True) for i in range(self.k))

    @cached_property
    def x(self) -> tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(f"x{i}", real=True) for i in range(self.s))

    @property
    def ordered(self) -> tuple[sympy.Symbol, ...]:
        """Argument order used by every compiled function: x, then theta, then xi."""
        return self.x + self.theta + self.xi

    def group(self, name: str) -> tuple[sympy.Symbol, ...]:
        if name == THETA:
            return self.theta
        if name == XI:
            return self.xi
        if name == X:
            return self.x
        if name == ALL:
            return self.theta + self.xi
        raise ExpressionError(f"Unknown variable group: {name}", group=name)


@dataclass(frozen=True)
class ParsedExpression:
    expr: sympy.Expr
    breakpoints: dict[int, tuple[float, ...]] = field(default_factory=dict)


def _number(value: Any) -> sympy.Expr:
    if isinstance(value, bool):
        raise ExpressionError(f"Boolean is not a number: {value}")
    if isinstance(value, int):
        return sympy.Integer(value)
    if isinstance(value, float):
        return sympy.Float(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        return _number(re) + sympy.I * _number(im)
    raise ExpressionError(f"Not a numeric constant: {value!r}")


def _vector(values: Sequence[float], size: int, what: str) -> list[sympy.Expr]:
    if len(values) != size:
        raise ExpressionError(f"{what} needs {size} entries, got {len(values)}")
    return [_number(v) for v in values]


def _matrix(rows: Sequence[Sequence[float]], n_rows: int, n_cols: int, what: str) -> sympy.Matrix:
    if len(rows) != n_rows or any(len(r) != n_cols for r in rows):
        raise ExpressionError(f"{what} must be {n_rows}x{n_cols}")
    return sympy.Matrix([[_number(v) for v in row] for row in rows])


def _centered(group: tuple[sympy.Symbol, ...], center: Sequence[float] | None) -> list[sympy.Expr]:
    if center is None:
        return list(group)
    return [v - c for v, c in zip(group, _vector(center, len(group), "center"), strict=True)]


class _Builder:
    def __init__(self, variables: VariableSet):
        self.variables = variables
        self.breakpoints: dict[int, set[float]] = {}

    def _mark(self, index: int, point: float) -> None:
        self.breakpoints.setdefault(index, set()).add(float(point))

    def build(self, node: Any) -> sympy.Expr:
        if not isinstance(node, dict):
            return _number(node)
        if len(node) != 1:
            raise ExpressionError(f"Expression node must have exactly one key: {sorted(node)}")
        (kind, arg), = node.items()
        handler = getattr(self, f"_node_{kind}", None)
        if handler is None:
            raise ExpressionError(f"Unknown expression node: {kind}", node=kind)
        return handler(arg)

    def _x_index(self, arg: dict) -> int:
        index = int(arg.get("index", 0))
        if not 0 <= index < self.variables.s:
            raise ExpressionError(f"x index {index} out of range for s={self.variables.s}")
        return index

    def _node_const(self, arg):
        return _number(arg)

    def _node_var(self, arg):
        group, index = arg
        symbols = self.variables.group(group)
        if not 0 <= int(index) < len(symbols):
            raise ExpressionError(f"Variable {group}[{index}] out of range")
        return symbols[int(index)]

    def _node_sum(self, arg):
        return sympy.Add(*[self.build(a) for a in arg])

    def _node_prod(self, arg):
        return sympy.Mul(*[self.build(a) for a in arg])

    def _node_pow(self, arg):
        base, exponent = arg
        return sympy.Pow(self.build(base), self.build(exponent))

    def _node_neg(self, arg):
        return -self.build(arg)

    def _node_exp(self, arg):
        return sympy.exp(self.build(arg))

    def _node_iexp(self, arg):
        return sympy.exp(sympy.I * self.build(arg))

    def _node_sqrt(self, arg):
        return sympy.sqrt(self.build(arg))

    def _node_log(self, arg):
        return sympy.log(self.build(arg))

    def _node_sin(self, arg):
        return sympy.sin(self.build(arg))

    def _node_cos(self, arg):
        return sympy.cos(self.build(arg))

    def _node_gauss(self, arg):
        z = _centered(self.variables.group(arg.get("over", ALL)), arg.get("center"))
        scale = _number(arg.get("scale", 1))
        return sympy.exp(-scale * sum((v**2 for v in z), sympy.Integer(0)))

    def _node_expquad(self, arg):
        z = sympy.Matrix(self.variables.group(arg.get("over", ALL)))
        a = _matrix(arg["matrix"], len(z), len(z), "expquad matrix")
        return sympy.exp(-(z.T * a * z)[0, 0])

    def _node_bump(self, arg):
        z = _centered(self.variables.group(arg.get("over", ALL)), arg.get("center"))
        radius = _number(arg.get("radius", 1))
        t = sum((v**2 for v in z), sympy.Integer(0)) / radius**2
        return sympy.Piecewise((sympy.exp(1 - 1 / (1 - t)), t < 1), (0, True))

    def _node_japanese(self, arg):
        z = self.variables.group(arg.get("over", ALL))
        power = _number(arg.get("power", 1))
        return (1 + sum((v**2 for v in z), sympy.Integer(0))) ** (power / 2)

    def _node_phase(self, arg):
        total = sympy.Integer(0)
        for group in (THETA, XI, X):
            if group in arg:
                symbols = self.variables.group(group)
                coeffs = _vector(arg[group], len(symbols), f"phase[{group}]")
                total += sum((c * v for c, v in zip(coeffs, symbols, strict=True)), sympy.Integer(0))
        return sympy.exp(sympy.I * total)

    def _node_bilinear(self, arg):
        left = sympy.Matrix(self.variables.group(arg["left"]))
        right = sympy.Matrix(self.variables.group(arg["right"]))
        m = _matrix(arg["matrix"], len(left), len(right), "bilinear matrix")
        return (left.T * m * right)[0, 0]

    def _node_abspow(self, arg):
        index = self._x_index(arg)
        center = float(arg.get("center", 0.0))
        self._mark(index, center)
        return sympy.Abs(self.variables.x[index] - center) ** _number(arg["exponent"])

    def _node_heaviside(self, arg):
        index = self._x_index(arg)
        at = float(arg.get("at", 0.0))
        self._mark(index, at)
        return sympy.Heaviside(self.variables.x[index] - at, 1)


def parse_expression(node: Any, variables: VariableSet) -> ParsedExpression:
    """Parse a JSON expression node into a sympy expression.

    Example:
        >>> parse_expression({"gauss": {"over": "xi"}}, VariableSet(k=1)).expr
        exp(-xi0**2)
    """
    builder = _Builder(variables)
    expr = builder.build(node)
    breakpoints = {i: tuple(sorted(points)) for i, points in builder.breakpoints.items()}
    return ParsedExpression(expr=expr, breakpoints=breakpoints)


class CompiledExpression:
    """A sympy expression with cached, lambdified partial derivatives.

    Derivative orders are tuples over ``variables.ordered`` (x, theta, xi).
    """

    def __init__(self, expr: sympy.Expr, variables: VariableSet):
        self.expr = sympy.sympify(expr)
        self.variables = variables
        self._functions: dict[tuple[int, ...], Callable[..., Any]] = {}
        self._lock = threading.Lock()

    @property
    def arity(self) -> int:
        return len(self.variables.ordered)

    def depends_on(self, group: str) -> bool:
        return bool(self.expr.free_symbols & set(self.variables.group(group)))

    def derivative(self, orders: tuple[int, ...]) -> sympy.Expr:
        if len(orders) != self.arity:
            raise ExpressionError(f"Expected {self.arity} derivative orders, got {len(orders)}")
        spec = [(v, n) for v, n in zip(self.variables.ordered, orders, strict=True) if n > 0]
        return sympy.diff(self.expr, *spec) if spec else self.expr

    def function(self, orders: tuple[int, ...]) -> Callable[..., Any]:
        orders = tuple(int(n) for n in orders)
        with self._lock:
            fn = self._functions.get(orders)
        if fn is None:
            fn = sympy.lambdify(self.variables.ordered, self.derivative(orders), "numpy", cse=True)
            with self._lock:
                self._functions[orders] = fn
            logger.debug(f"Compiled derivative {orders} of {self.expr}")
        return fn

    def __call__(self, orders: tuple[int, ...], *arrays: np.ndarray) -> np.ndarray:
        """Evaluate a partial derivative; arrays broadcast against each other."""
        shape = np.broadcast_shapes(*(np.shape(a) for a in arrays)) if arrays else ()
        with np.errstate(all="ignore"):
            values = self.function(orders)(*arrays)
        return np.broadcast_to(np.asarray(values, dtype=complex), shape).copy()
