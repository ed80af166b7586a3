"""Extended symbols: x-indexed families of symbols, locally integrable in x."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import sympy
from scipy.integrate import quad

from warpkit.errors import WarpkitError
from warpkit.symbolkit.expr import CompiledExpression, VariableSet, parse_expression
from warpkit.symbolkit.seminorms import SamplingSpec, estimate_seminorm, sample_points
from warpkit.symbolkit.symbols import ANALYTIC_ORDER, Symbol, multi_index
from warpkit.symbolkit.testfunction import (
    Profile,
    TestFunction,
    XQuadratureSpec,
    box_quadrature,
    merge_breakpoints,
)

logger = logging.getLogger(__name__)

# (x, theta, xi, alpha, beta) -> d_theta^beta d_xi^alpha u(x)(theta, xi)
ExtendedPartialFn = Callable[[np.ndarray, np.ndarray, np.ndarray, tuple, tuple], np.ndarray]

# Upper bound on node x sample evaluations held in memory at once.
_CHUNK = 2_000_000


class LocalIntegrabilityError(WarpkitError):
    """A fiber semi-norm is not finite on the exhaustion box."""


class SupportError(WarpkitError):
    """A test function reaches outside the exhaustion range."""


@dataclass(frozen=True)
class ExtendedSymbol:
    """u: R^s -> S^m_rho(R^k x R^k), exhausted by boxes [-jL, jL]^s for j <= max_box.

    Separable symbols u(x) = g(x) s keep ``profile`` and ``base`` so that
    semi-norms and pairings factor.
    """

    s: int
    k: int
    order: float
    rho: float
    partial: ExtendedPartialFn = field(compare=False)
    breakpoints: dict[int, tuple[float, ...]] = field(default_factory=dict, compare=False)
    exhaustion_length: float = 1.0
    max_box: int = 4
    profile: Profile | None = field(default=None, compare=False)
    base: Symbol | None = field(default=None, compare=False)
    label: str = ""

    def __post_init__(self):
        if self.s <= 0 or self.k <= 0:
            raise ValueError(f"Extended symbol needs positive (s, k), got ({self.s}, {self.k})")
        if not -1.0 < self.rho <= 1.0:
            raise ValueError(f"Symbol type must lie in (-1, 1], got {self.rho}")
        if self.exhaustion_length <= 0 or self.max_box < 1:
            raise ValueError("Exhaustion needs L > 0 and at least one box")

    @property
    def is_separable(self) -> bool:
        return self.profile is not None and self.base is not None

    @classmethod
    def separable(
        cls,
        profile: Profile,
        base: Symbol,
        s: int = 1,
        breakpoints: dict[int, tuple[float, ...]] | None = None,
        label: str = "",
        **exhaustion,
    ) -> "ExtendedSymbol":
        """u(x) = profile(x) * base, with profile evaluated on (..., s) arrays."""

        def partial(x, theta, xi, alpha, beta):
            return profile(x) * base.partial(theta, xi, alpha, beta)

        return cls(
            s=s,
            k=base.k,
            order=base.order,
            rho=base.rho,
            partial=partial,
            breakpoints=breakpoints or {},
            profile=profile,
            base=base,
            label=label or f"g(x)*{base.label}",
            **exhaustion,
        )

    @classmethod
    def from_profile_expression(cls, node: Any, base: Symbol, s: int = 1, **exhaustion) -> "ExtendedSymbol":
        """Separable symbol whose x-profile comes from the expression grammar."""
        variables = VariableSet(k=0, s=s)
        parsed = parse_expression(node, variables)
        compiled = CompiledExpression(parsed.expr, variables)
        zeros = (0,) * s

        def profile(x):
            return compiled(zeros, *np.moveaxis(np.asarray(x, dtype=float), -1, 0))

        return cls.separable(profile, base, s, parsed.breakpoints, f"({parsed.expr})*{base.label}", **exhaustion)

    @classmethod
    def from_expression(
        cls, node: Any, s: int, k: int, order: float, rho: float, label: str = "", **exhaustion
    ) -> "ExtendedSymbol":
        """General u from an expression over x, theta and xi."""
        variables = VariableSet(k=k, s=s)
        parsed = parse_expression(node, variables) if not isinstance(node, sympy.Basic) else None
        expr = parsed.expr if parsed else node
        compiled = CompiledExpression(expr, variables)
        x_zero = (0,) * s

        def partial(x, theta, xi, alpha, beta):
            x, theta, xi = _broadcast_groups(x, theta, xi)
            args = [*np.moveaxis(x, -1, 0), *np.moveaxis(theta, -1, 0), *np.moveaxis(xi, -1, 0)]
            return compiled(x_zero + tuple(beta) + tuple(alpha), *args)

        return cls(
            s=s,
            k=k,
            order=order,
            rho=rho,
            partial=partial,
            breakpoints=parsed.breakpoints if parsed else {},
            label=label or str(expr),
            **exhaustion,
        )

    @classmethod
    def from_config(cls, data: dict) -> "ExtendedSymbol":
        """Read ``{"s", "profile", "symbol"}`` (separable) or ``{"s", "k", "order", "type", "expr"}``."""
        exhaustion = {key: data[key] for key in ("exhaustion_length", "max_box") if key in data}
        if "profile" in data:
            base = Symbol.from_config(data["symbol"])
            return cls.from_profile_expression(data["profile"], base, int(data.get("s", 1)), **exhaustion)
        return cls.from_expression(
            data["expr"],
            int(data.get("s", 1)),
            int(data["k"]),
            float(data.get("order", 0.0)),
            float(data.get("type", 1.0)),
            data.get("label", ""),
            **exhaustion,
        )

    def fiber(self, x) -> Symbol:
        """The symbol u(x) at a single base point."""
        x = np.asarray(x, dtype=float).reshape(self.s)
        if self.is_separable:
            g = complex(np.asarray(self.profile(x)))
            return self.base.scaled(g)

        def partial(theta, xi, alpha, beta):
            return self.partial(x, theta, xi, alpha, beta)

        return Symbol(self.k, self.order, self.rho, partial, ANALYTIC_ORDER, None, f"{self.label}@{x.tolist()}")

    def multiply(self, g: Profile, breakpoints: dict[int, tuple[float, ...]] | None = None) -> "ExtendedSymbol":
        """Module action of a locally bounded function g(x)."""
        breakpoints = merge_breakpoints(self.breakpoints, breakpoints or {})
        if self.is_separable:
            profile = self.profile
            return ExtendedSymbol.separable(
                lambda x: g(x) * profile(x),
                self.base,
                self.s,
                breakpoints,
                f"g*{self.label}",
                exhaustion_length=self.exhaustion_length,
                max_box=self.max_box,
            )
        parent = self.partial
        return ExtendedSymbol(
            s=self.s,
            k=self.k,
            order=self.order,
            rho=self.rho,
            partial=lambda x, theta, xi, a, b: g(x) * parent(x, theta, xi, a, b),
            breakpoints=breakpoints,
            exhaustion_length=self.exhaustion_length,
            max_box=self.max_box,
            label=f"g*{self.label}",
        )

    def exhaustion_box(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """K_j = [-jL, jL]^s."""
        if not 1 <= j <= self.max_box:
            raise ValueError(f"Box index {j} outside exhaustion range 1..{self.max_box}")
        half = j * self.exhaustion_length
        return np.full(self.s, -half), np.full(self.s, half)


def _broadcast_groups(x, theta, xi) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Broadcast (..., s), (..., k), (..., k) arrays over their leading axes."""
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    xi = np.asarray(xi, dtype=float)
    lead = np.broadcast_shapes(x.shape[:-1], theta.shape[:-1], xi.shape[:-1])
    return (
        np.broadcast_to(x, lead + x.shape[-1:]),
        np.broadcast_to(theta, lead + theta.shape[-1:]),
        np.broadcast_to(xi, lead + xi.shape[-1:]),
    )


def _fiber_sup(
    u: ExtendedSymbol, nodes: np.ndarray, alpha, beta, sampling: SamplingSpec
) -> np.ndarray:
    theta, xi, radius = sample_points(sampling, u.k)
    weight = (1.0 + radius) ** (-u.order + u.rho * (sum(alpha) + sum(beta)))
    step = max(1, _CHUNK // max(len(radius), 1))
    out = np.empty(len(nodes))
    for start in range(0, len(nodes), step):
        x = nodes[start : start + step, None, :]
        values = np.abs(u.partial(x, theta[None], xi[None], alpha, beta)) * weight
        out[start : start + step] = values.max(axis=1)
    return out


def extended_seminorm(
    u: ExtendedSymbol,
    alpha=None,
    beta=None,
    j: int = 1,
    x_quadrature: XQuadratureSpec | None = None,
    sampling: SamplingSpec | None = None,
) -> float:
    """q_{alpha,beta,K_j}(u): the integral over K_j of the fiber semi-norms."""
    sampling = sampling or SamplingSpec()
    alpha = multi_index(alpha, u.k)
    beta = multi_index(beta, u.k)
    lo, hi = u.exhaustion_box(j)
    nodes, weights = box_quadrature(lo, hi, u.breakpoints, x_quadrature)
    if u.is_separable:
        base = estimate_seminorm(u.base, alpha, beta, sampling).value
        sup = np.abs(u.profile(nodes)) * base
    else:
        sup = _fiber_sup(u, nodes, alpha, beta, sampling)
    if not np.all(np.isfinite(sup)):
        bad = nodes[~np.isfinite(sup)][0]
        raise LocalIntegrabilityError(
            f"Fiber semi-norm of {u.label} is not finite at x={bad.tolist()}",
            alpha=list(alpha),
            beta=list(beta),
            box=j,
        )
    value = float(np.sum(weights * sup))
    logger.debug(f"q_{alpha},{beta},K_{j}({u.label}) = {value}")
    return value


def pairing_quadrature(
    u: ExtendedSymbol, f: TestFunction, x_quadrature: XQuadratureSpec | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights times f over supp f, refined at the breakpoints of both."""
    if f.s != u.s:
        raise SupportError(f"Test function lives on R^{f.s}, symbol on R^{u.s}")
    lo, hi = f.box
    limit = u.max_box * u.exhaustion_length
    if np.any(lo < -limit - 1e-12) or np.any(hi > limit + 1e-12):
        raise SupportError(
            f"Support of {f.label} leaves the exhaustion box [-{limit}, {limit}]^{u.s}",
            support=[lo.tolist(), hi.tolist()],
        )
    nodes, weights = box_quadrature(lo, hi, merge_breakpoints(u.breakpoints, f.breakpoints), x_quadrature)
    return nodes, weights * f(nodes)


def pair_symbolic_distribution(
    u: ExtendedSymbol,
    f: TestFunction,
    x_quadrature: XQuadratureSpec | None = None,
) -> Symbol:
    """The symbol (theta, xi) -> int u(x)(theta, xi) f(x) dx."""
    if f.s != u.s:
        raise SupportError(f"Test function lives on R^{f.s}, symbol on R^{u.s}")
    if f.radius == 0:
        return Symbol.constant(0, u.k, u.order, u.rho)
    nodes, fw = pairing_quadrature(u, f, x_quadrature)
    label = f"<{u.label}, {f.label}>"
    if u.is_separable:
        c = complex(np.sum(fw * u.profile(nodes)))
        paired = u.base.scaled(c)
        return Symbol(paired.k, u.order, u.rho, paired.partial, paired.max_derivative_order, paired.expr, label)

    def partial(theta, xi, alpha, beta):
        theta = np.asarray(theta, dtype=float)
        xi = np.asarray(xi, dtype=float)
        lead = np.broadcast_shapes(theta.shape[:-1], xi.shape[:-1])
        x = nodes.reshape((len(nodes),) + (1,) * len(lead) + (u.s,))
        values = u.partial(x, theta[None], xi[None], alpha, beta)
        return np.tensordot(fw, np.broadcast_to(values, (len(nodes),) + lead), axes=1)

    return Symbol(u.k, u.order, u.rho, partial, ANALYTIC_ORDER, None, label)


def adaptive_profile_pairing(u: ExtendedSymbol, f: TestFunction) -> complex:
    """int g(x) f(x) dx for a separable u = g(x) s on R^1, split at every breakpoint.

    Uses adaptive quadrature, independent of the graded panels of pairing_quadrature.
    """
    if not u.is_separable or u.s != 1 or f.s != 1:
        raise SupportError(f"Adaptive pairing needs a separable symbol on R^1, got {u.label}")
    lo, hi = (float(v[0]) for v in f.box)
    inner = {p for p in (*u.breakpoints.get(0, ()), *f.breakpoints.get(0, ())) if lo < p < hi}
    cuts = sorted({lo, hi} | inner)

    def integrand(x: float) -> complex:
        point = np.array([x])
        return complex(np.asarray(u.profile(point))) * complex(f(point))

    total = 0j
    for a, b in zip(cuts, cuts[1:], strict=False):
        value, _ = quad(integrand, a, b, complex_func=True, limit=200)
        total += value
    return total
