"""Regularization of I_eta by repeated integration by parts outside a ball.

With Xi = phi^{-1} (M xi, M^T theta) and phi = |M xi|^2 + |M^T theta|^2, the
operator i Xi.grad leaves e^{-i eta} invariant away from the origin. Its formal
adjoint M* g = Xi.grad g + div(Xi) g is applied h times outside B(delta); every
application leaves one surface term on the sphere |z| = delta.

(M*)^j s is kept as phi^{-2j} sum_gamma P_gamma d^gamma s with polynomial
numerators P_gamma, homogeneous of degree |gamma| + 2j.
"""

import logging
import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy
from pydantic import BaseModel, Field
from scipy.special import gamma as gamma_fn
from scipy.special import roots_legendre
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from warpkit.errors import WarpkitError
from warpkit.oscint.result import ROUNDOFF, OscDiagnostics, OscResult
from warpkit.symbolkit.expr import CompiledExpression, VariableSet
from warpkit.symbolkit.symbols import BilinearForm, Symbol, UnsupportedOrderError

logger = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]

# Entries of the monomial table built per block when evaluating a numerator.
_GATHER_BLOCK = 4_000_000


class InsufficientRegularizationError(WarpkitError):
    """Too few iterations for an absolutely convergent bulk integral."""


class GeometryError(WarpkitError):
    """phi is too small outside the ball, i.e. eta is numerically degenerate."""


def required_iterations(m: float, rho: float, k: int) -> int:
    """Smallest h >= 0 with h > (m + 2k) / (rho + 1)."""
    if rho <= -1:
        raise ValueError(f"Symbol type must exceed -1, got {rho}")
    bound = (m + 2 * k) / (rho + 1)
    return max(0, math.floor(bound) + 1)


def bulk_decay(m: float, rho: float, h: int) -> float:
    return m - h * (rho + 1)


class RegularizationSpec(BaseModel):
    """Split radius, iteration count and quadrature for the regularized path."""

    delta: float = Field(0.5, gt=0, description="Radius of the ball kept untransformed")
    h: int | None = Field(None, ge=0, description="Iterations; default is the smallest sufficient count")
    extra_iterations: int = Field(0, ge=0, description="Iterations added on top of the default count")
    bulk_radius: float | None = Field(None, gt=0, description="Truncation radius R of the bulk (16 for k=1, 8 for k=2)")
    nodes_per_panel: int = Field(8, ge=2, description="Gauss-Legendre nodes per radial panel")
    min_angles: int = Field(64, ge=8, description="Minimum trapezoid nodes per angle")
    geometry_floor: float = Field(1e-12, gt=0, description="Smallest admissible phi on the sphere")
    decay_slack: float = Field(0.5, ge=0, description="Tolerated excess of the observed bulk decay exponent")

    def radius_for(self, k: int) -> float:
        if self.bulk_radius is not None:
            return self.bulk_radius
        return 16.0 if k == 1 else 8.0


# (matrix bytes, k, active coordinates) -> numerator maps, one per iteration count
_COEFFICIENTS: dict[tuple[bytes, int, tuple[int, ...]], list[dict[MultiIndex, PolyElement]]] = {}
_COEFFICIENT_LOCK = threading.Lock()


@dataclass(frozen=True)
class VectorField:
    """Xi, div Xi and phi as sympy expressions in (theta, xi)."""

    variables: VariableSet
    xi_field: tuple[sympy.Expr, ...]
    divergence: sympy.Expr
    phi: sympy.Expr

    @property
    def coordinates(self) -> tuple[sympy.Symbol, ...]:
        return self.variables.theta + self.variables.xi


def _exact_matrix(matrix: np.ndarray) -> sympy.Matrix:
    return sympy.Matrix(matrix.shape[0], matrix.shape[1], lambda i, j: sympy.nsimplify(float(matrix[i, j]), rational=True))


def vector_field(eta: BilinearForm) -> VectorField:
    k = eta.dimension
    variables = VariableSet(k=k)
    m = _exact_matrix(eta.matrix)
    m_xi = m * sympy.Matrix(variables.xi)
    mt_theta = m.T * sympy.Matrix(variables.theta)
    phi = sympy.expand((m_xi.T * m_xi)[0, 0] + (mt_theta.T * mt_theta)[0, 0])
    components = tuple(c / phi for c in list(m_xi) + list(mt_theta))
    coords = variables.theta + variables.xi
    div = sympy.cancel(sum(sympy.diff(c, v) for c, v in zip(components, coords, strict=True)))
    return VectorField(variables, components, div, phi)


def apply_m_to_phase(eta: BilinearForm, theta: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """Evaluate (i Xi.grad) e^{-i eta} at sample points; equals e^{-i eta} away from 0."""
    field_ = vector_field(eta)
    coords = field_.coordinates
    theta_vec = sympy.Matrix(field_.variables.theta)
    xi_vec = sympy.Matrix(field_.variables.xi)
    eta_expr = (theta_vec.T * _exact_matrix(eta.matrix) * xi_vec)[0, 0]
    phase = sympy.exp(-sympy.I * eta_expr)
    image = sympy.I * sum(c * sympy.diff(phase, v) for c, v in zip(field_.xi_field, coords, strict=True))
    compiled = CompiledExpression(image, field_.variables)
    theta = np.atleast_2d(np.asarray(theta, dtype=float))
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    return compiled((0,) * len(coords), *theta.T, *xi.T)


@dataclass(frozen=True)
class FlowPolynomials:
    """F = (M xi, M^T theta), phi = |F|^2, F.grad phi and div F over QQ[theta, xi]."""

    ring: PolyRing
    gens: tuple[PolyElement, ...]
    flow: tuple[PolyElement, ...]
    phi: PolyElement
    transport: PolyElement
    trace: PolyElement


@lru_cache(maxsize=16)
def flow_polynomials(eta: BilinearForm) -> FlowPolynomials:
    k = eta.dimension
    variables = VariableSet(k=k)
    poly_ring, *gens = ring(variables.theta + variables.xi, QQ)
    m = _exact_matrix(eta.matrix)
    theta, xi = gens[:k], gens[k:]
    m_xi = [sum((QQ.from_sympy(m[i, j]) * xi[j] for j in range(k)), poly_ring.zero) for i in range(k)]
    mt_theta = [sum((QQ.from_sympy(m[j, i]) * theta[j] for j in range(k)), poly_ring.zero) for i in range(k)]
    flow = tuple(m_xi + mt_theta)
    phi = sum((f * f for f in flow), poly_ring.zero)
    transport = sum((f * phi.diff(x) for f, x in zip(flow, gens, strict=True)), poly_ring.zero)
    trace = sum((f.diff(x) for f, x in zip(flow, gens, strict=True)), poly_ring.zero)
    return FlowPolynomials(poly_ring, tuple(gens), flow, phi, transport, trace)


def active_coordinates(s: Symbol) -> tuple[int, ...]:
    """Indices into (theta, xi) of the coordinates s depends on; all of them without an expression."""
    if s.expr is None:
        return tuple(range(2 * s.k))
    variables = VariableSet(k=s.k)
    free = s.expr.free_symbols
    return tuple(i for i, v in enumerate(variables.theta + variables.xi) if v in free)


def _accumulate(target: dict[MultiIndex, PolyElement], gamma: MultiIndex, p: PolyElement) -> None:
    target[gamma] = target[gamma] + p if gamma in target else p


def adjoint_coefficients(
    eta: BilinearForm, h: int, active: tuple[int, ...] | None = None
) -> list[dict[MultiIndex, PolyElement]]:
    """Numerators P_gamma with (M*)^j s = phi^{-2j} sum_gamma P_gamma d^gamma s, for j = 0..h.

    gamma runs over (theta, xi) multi-indices supported on ``active`` (every
    coordinate by default); derivatives in the other directions vanish.
    Results are cached per form and active set.
    """
    k = eta.dimension
    active = tuple(range(2 * k)) if active is None else tuple(sorted(active))
    key = (eta.matrix.tobytes(), k, active)
    fp = flow_polynomials(eta)
    with _COEFFICIENT_LOCK:
        history = _COEFFICIENTS.setdefault(key, [{(0,) * (2 * k): fp.ring.one}])
        while len(history) <= h:
            n = 2 * (len(history) - 1)
            nxt: dict[MultiIndex, PolyElement] = {}
            for gamma, p in history[-1].items():
                along = sum((f * p.diff(x) for f, x in zip(fp.flow, fp.gens, strict=True)), fp.trace * p)
                _accumulate(nxt, gamma, along * fp.phi - (n + 1) * fp.transport * p)
                for l in active:
                    raised = gamma[:l] + (gamma[l] + 1,) + gamma[l + 1 :]
                    _accumulate(nxt, raised, fp.flow[l] * fp.phi * p)
            history.append({g: p for g, p in nxt.items() if p})
            logger.debug(f"(M*)^{len(history) - 1}: {len(history[-1])} coefficients")
        return history[: h + 1]


@dataclass(frozen=True, eq=False)
class Numerator:
    """A real polynomial in z = (theta, xi) as exponent rows and coefficients."""

    exponents: np.ndarray
    coefficients: np.ndarray

    @classmethod
    def from_poly(cls, p: PolyElement) -> "Numerator":
        terms = p.terms()
        exponents = np.array([monom for monom, _ in terms], dtype=int).reshape(len(terms), p.ring.ngens)
        return cls(exponents, np.array([float(c) for _, c in terms], dtype=float))

    @property
    def degree(self) -> int:
        return int(self.exponents.sum(axis=1).max(initial=0))

    def __call__(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        flat = z.reshape(-1, z.shape[-1])
        out = np.zeros(len(flat))
        n_terms = len(self.coefficients)
        if n_terms:
            orders = np.arange(int(self.exponents.max()) + 1)
            rows = max(1, _GATHER_BLOCK // n_terms)
            for start in range(0, len(flat), rows):
                block = flat[start : start + rows]
                powers = block[:, :, None] ** orders
                monomials = np.ones((len(block), n_terms))
                for v in range(flat.shape[1]):
                    monomials *= powers[:, v, self.exponents[:, v]]
                out[start : start + rows] = monomials @ self.coefficients
        return out.reshape(z.shape[:-1])

    def on_torus(self, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
        """Values at theta = cos a (cos b, sin b), xi = sin a (cos c, sin c) on the a x b x c grid; k = 2 only."""
        if not len(self.coefficients):
            return np.zeros((len(a), len(b), len(c)))
        theta_keys, rows = np.unique(self.exponents[:, :2], axis=0, return_inverse=True)
        xi_keys, cols = np.unique(self.exponents[:, 2:], axis=0, return_inverse=True)
        table = np.zeros((len(theta_keys), len(xi_keys)))
        np.add.at(table, (rows.reshape(-1), cols.reshape(-1)), self.coefficients)
        wb = np.cos(b)[:, None] ** theta_keys[:, 0] * np.sin(b)[:, None] ** theta_keys[:, 1]
        wc = np.cos(c)[:, None] ** xi_keys[:, 0] * np.sin(c)[:, None] ** xi_keys[:, 1]
        ca = np.cos(a)[:, None] ** theta_keys.sum(axis=1)
        sa = np.sin(a)[:, None] ** xi_keys.sum(axis=1)
        return wb @ (ca[:, :, None] * table * sa[:, None, :]) @ wc.T


@dataclass(frozen=True, eq=False)
class CompiledTerm:
    """g = phi^{-2j} sum_gamma P_gamma d^gamma s, evaluated on stacked points."""

    symbol: Symbol
    j: int
    numerators: dict[MultiIndex, Numerator]
    phi: Numerator
    active: tuple[int, ...]

    def derivative(self, gamma: MultiIndex, theta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        k = self.symbol.k
        shape = np.broadcast_shapes(theta.shape[:-1], xi.shape[:-1])
        return np.broadcast_to(self.symbol.partial(theta, xi, gamma[k:], gamma[:k]), shape)

    def __call__(self, theta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        theta, xi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(xi, dtype=float))
        z = np.concatenate([theta, xi], axis=-1)
        denominator = self.phi(z) ** (2 * self.j)
        total = np.zeros(z.shape[:-1], dtype=complex)
        for gamma, numerator in self.numerators.items():
            total += numerator(z) / denominator * self.derivative(gamma, theta, xi)
        return total


@dataclass(frozen=True)
class RegularizedDecomposition:
    """Ball term, one boundary term per iteration and the transformed bulk."""

    symbol: Symbol
    eta: BilinearForm
    delta: float
    h: int
    vectors: VectorField
    terms: tuple[CompiledTerm, ...]
    decay_observed: float | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def decay_declared(self) -> float:
        return bulk_decay(self.symbol.order, self.symbol.rho, self.h)

    def ball_term(self, theta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        return self.terms[0](theta, xi)

    @property
    def boundary_terms(self) -> tuple[CompiledTerm, ...]:
        """(M*)^j s for j < h; each is integrated against e^{-i eta} Xi.n on the sphere."""
        return self.terms[: self.h]

    def bulk_integrand(self, theta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        return self.terms[self.h](theta, xi)

    def normal_flux(self, theta: np.ndarray, xi: np.ndarray) -> np.ndarray:
        """Xi.n on |z| = delta with n = -z/delta, the outward normal of the bulk region."""
        eta = self.eta(theta, xi)
        phi = np.sum((xi @ self.eta.matrix.T) ** 2, axis=-1) + np.sum((theta @ self.eta.matrix) ** 2, axis=-1)
        return -2.0 * eta / (self.delta * phi)


def _sigma_min(eta: BilinearForm) -> float:
    return float(np.linalg.svd(eta.matrix, compute_uv=False).min())


def _torus_axes(n_polar: int, n_angles: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes a in (0, pi/2) with S^3 weights, and trapezoid angles."""
    t, w = roots_legendre(n_polar)
    a = np.pi / 4 * (t + 1)
    wa = np.pi / 4 * w * np.sin(a) * np.cos(a)
    return a, wa, 2 * np.pi * np.arange(n_angles) / n_angles


def _sphere_points(k: int, r: float, n_angles: int, n_polar: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Points on |z| = r and surface weights (without the r^{2k-1} factor)."""
    if k == 1:
        a = 2 * np.pi * np.arange(n_angles) / n_angles
        theta = r * np.cos(a)[:, None]
        xi = r * np.sin(a)[:, None]
        return theta, xi, np.full(n_angles, 2 * np.pi / n_angles)
    if k == 2:
        a, wa, b = _torus_axes(n_polar, n_angles)
        aa, bb, cc = np.meshgrid(a, b, b, indexing="ij")
        weight = np.broadcast_to(wa[:, None, None], aa.shape) * (2 * np.pi / n_angles) ** 2
        theta = r * np.stack([np.cos(aa) * np.cos(bb), np.cos(aa) * np.sin(bb)], axis=-1).reshape(-1, 2)
        xi = r * np.stack([np.sin(aa) * np.cos(cc), np.sin(aa) * np.sin(cc)], axis=-1).reshape(-1, 2)
        return theta, xi, weight.reshape(-1)
    raise ValueError(f"The regularized path supports k = 1 and k = 2, got k = {k}")


def _angular_resolution(k: int, r: float, norm: float, spec: RegularizationSpec) -> tuple[int, int]:
    if k == 1:
        return max(spec.min_angles, math.ceil(2 * r * r * norm) + spec.min_angles), 0
    # eta = r^2 cos a sin a (w_b . M w_c) on |z| = r
    n_angles = max(spec.min_angles // 2, math.ceil(r * r * norm / 2) + 32)
    n_polar = max(16, math.ceil(r * r * norm * math.pi / 4) + 20)
    return n_angles, n_polar


def _radial_panels(lo: float, hi: float, norm: float, n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    t, w = roots_legendre(n)
    panels = []
    a = lo
    while a < hi - 1e-14:
        width = min(0.5, 0.5 * math.pi / (norm * max(a, 1e-12)))
        if a > 0:
            # geometric near the inner sphere, where the bulk integrand peaks
            width = min(width, 0.5 * a)
        b = min(a + width, hi)
        half = 0.5 * (b - a)
        panels.append((a + half * (t + 1), half * w))
        a = b
    return panels


def _shell_panels(
    lo: float, hi: float, norm: float, n: int, outer_from: float | None
) -> list[tuple[np.ndarray, np.ndarray, bool]]:
    """Radial panels over (lo, hi), flagged when they lie beyond outer_from."""
    if outer_from is None or not lo < outer_from < hi:
        beyond = outer_from is not None and lo >= outer_from
        return [(nodes, weights, beyond) for nodes, weights in _radial_panels(lo, hi, norm, n)]
    inner = [(nodes, weights, False) for nodes, weights in _radial_panels(lo, outer_from, norm, n)]
    return inner + [(nodes, weights, True) for nodes, weights in _radial_panels(outer_from, hi, norm, n)]


def _hopf_shell(
    term: CompiledTerm,
    eta: BilinearForm,
    lo: float,
    hi: float,
    spec: RegularizationSpec,
    outer_from: float | None = None,
) -> tuple[complex, float]:
    """Shell integral on R^4 along rays r u, u = (cos a w_b, sin a w_c).

    The coefficients of ``term`` are homogeneous of degree |gamma| - 2j, so
    they are tabulated once on the unit sphere and rescaled along each ray.
    Derivatives of s are only sampled over the angles s depends on.
    """
    k = 2
    norm = float(np.linalg.norm(eta.matrix, 2))
    n_angles, n_polar = _angular_resolution(k, hi, norm, spec)
    a, wa, b = _torus_axes(n_polar, n_angles)
    cell = (2 * np.pi / n_angles) ** 2
    circle = np.stack([np.cos(b), np.sin(b)], axis=-1)
    form = circle @ eta.matrix @ circle.T
    denominator = term.phi.on_torus(a, b, b) ** (2 * term.j)
    coefficients = {gamma: p.on_torus(a, b, b) / denominator for gamma, p in term.numerators.items()}
    theta_on = any(i < k for i in term.active)
    xi_on = any(i >= k for i in term.active)
    total, outer = 0j, 0.0
    for i, (ca, sa) in enumerate(zip(np.cos(a), np.sin(a), strict=True)):
        phase = ca * sa * form
        for nodes, weights, beyond in _shell_panels(lo, hi, 2 * norm * ca * sa, spec.nodes_per_panel, outer_from):
            r = nodes[:, None, None, None]
            theta = r * ca * circle[None, :, None, :] if theta_on else np.zeros((len(nodes), 1, 1, k))
            xi = r * sa * circle[None, None, :, :] if xi_on else np.zeros((len(nodes), 1, 1, k))
            theta, xi = np.broadcast_arrays(theta, xi)
            values = np.zeros((len(nodes), n_angles, n_angles), dtype=complex)
            for gamma, grid in coefficients.items():
                scale = nodes ** (sum(gamma) - 2 * term.j)
                values += scale[:, None, None] * grid[i] * term.derivative(gamma, theta, xi)
            weight = (weights * nodes**3 * wa[i] * cell)[:, None, None]
            total += complex(np.sum(weight * np.exp(-1j * nodes[:, None, None] ** 2 * phase) * values))
            if beyond:
                outer += float(np.sum(weight * np.abs(values)))
    return total, outer


def _shell_integral(
    term: CompiledTerm,
    eta: BilinearForm,
    lo: float,
    hi: float,
    spec: RegularizationSpec,
    outer_from: float | None = None,
) -> tuple[complex, float]:
    """int_{lo < |z| < hi} e^{-i eta} g, and int |g| over outer_from < |z| < hi."""
    k = term.symbol.k
    if k == 2:
        return _hopf_shell(term, eta, lo, hi, spec, outer_from)
    norm = float(np.linalg.norm(eta.matrix, 2))
    total, outer = 0j, 0.0
    for nodes, weights, beyond in _shell_panels(lo, hi, norm, spec.nodes_per_panel, outer_from):
        n_angles, n_polar = _angular_resolution(k, float(nodes[-1]), norm, spec)
        for r, wr in zip(nodes, weights, strict=True):
            theta, xi, wa = _sphere_points(k, float(r), n_angles, n_polar)
            values = term(theta, xi)
            scale = wr * r ** (2 * k - 1)
            total += scale * complex(np.sum(wa * np.exp(-1j * eta(theta, xi)) * values))
            if beyond:
                outer += scale * float(np.sum(wa * np.abs(values)))
    return total, outer


def _decay_spot_check(term: CompiledTerm, k: int, r: float) -> float | None:
    n_angles, n_polar = (64, 0) if k == 1 else (16, 8)
    peaks = []
    for radius in (r, 2 * r):
        theta, xi, _ = _sphere_points(k, radius, n_angles, n_polar)
        peaks.append(float(np.max(np.abs(term(theta, xi)))))
    if peaks[0] <= 0 or peaks[1] <= 0:
        return None
    return math.log2(peaks[1] / peaks[0])


def build_regularization(
    s: Symbol,
    eta: BilinearForm,
    delta: float = 0.5,
    h: int | None = None,
    *,
    geometry_floor: float = 1e-12,
    decay_slack: float = 0.5,
) -> RegularizedDecomposition:
    """Split I_eta(s) into ball, boundary and bulk parts with h adjoint applications."""
    if delta <= 0:
        raise ValueError(f"Ball radius must be positive, got {delta}")
    if s.k != eta.dimension:
        raise ValueError(f"Symbol has k={s.k} but the form acts on R^{eta.dimension}")
    needed = required_iterations(s.order, s.rho, s.k)
    h = needed if h is None else h
    if h < needed:
        raise InsufficientRegularizationError(
            f"h={h} leaves bulk decay {bulk_decay(s.order, s.rho, h)} >= -2k = {-2 * s.k}; need h >= {needed}",
            h=h,
            required=needed,
        )
    if s.max_derivative_order < h:
        raise UnsupportedOrderError(
            f"Symbol {s.label} has analytic derivatives to order {s.max_derivative_order}, needs {h}",
            order=h,
        )
    if _sigma_min(eta) ** 2 * delta**2 < geometry_floor:
        raise GeometryError(
            f"phi >= sigma_min^2 delta^2 = {_sigma_min(eta) ** 2 * delta**2:.3g} is below {geometry_floor:.3g}",
            delta=delta,
        )
    active = active_coordinates(s)
    phi = Numerator.from_poly(flow_polynomials(eta).phi)
    terms = tuple(
        CompiledTerm(s, j, {g: Numerator.from_poly(p) for g, p in numerators.items()}, phi, active)
        for j, numerators in enumerate(adjoint_coefficients(eta, h, active))
    )
    notes = []
    observed = None
    if h > 0:
        observed = _decay_spot_check(terms[h], s.k, max(4.0, 2 * delta))
        declared = bulk_decay(s.order, s.rho, h)
        if observed is not None and observed > declared + decay_slack:
            note = f"Observed bulk decay {observed:.2f} is slower than declared {declared:.2f}"
            notes.append(note)
            logger.warning(f"{s.label}: {note}")
    logger.info(f"Regularization of {s.label or '<anonymous>'}: h={h}, delta={delta}, {len(terms[h].numerators)} bulk coefficients")
    return RegularizedDecomposition(s, eta, delta, h, vector_field(eta), terms, observed, tuple(notes))


def eval_regularized(
    decomp: RegularizedDecomposition,
    eta: BilinearForm | None = None,
    spec: RegularizationSpec | None = None,
) -> OscResult:
    """(2 pi)^{-k} [ball + sum_j i (-i)^j S_j + (-i)^h bulk], bulk truncated at R."""
    spec = spec or RegularizationSpec()
    if eta is not None and eta != decomp.eta:
        raise ValueError("Decomposition was built for a different bilinear form")
    eta = decomp.eta
    s = decomp.symbol
    k = s.k
    decay = decomp.decay_declared
    if decay >= -2 * k:
        raise InsufficientRegularizationError(
            f"Bulk decay order {decay} is not below -2k = {-2 * k}", decay=decay, h=decomp.h
        )
    big_r = spec.radius_for(k)
    if big_r <= 2 * decomp.delta:
        raise ValueError(f"Bulk radius {big_r} must exceed twice the ball radius {decomp.delta}")
    norm = float(np.linalg.norm(eta.matrix, 2))

    ball, _ = _shell_integral(decomp.terms[0], eta, 0.0, decomp.delta, spec)

    n_angles, n_polar = _angular_resolution(k, decomp.delta, norm, spec)
    theta, xi, wa = _sphere_points(k, decomp.delta, n_angles, n_polar)
    surface = decomp.delta ** (2 * k - 1) * wa * np.exp(-1j * eta(theta, xi)) * decomp.normal_flux(theta, xi)
    boundary = [complex(np.sum(surface * term(theta, xi))) for term in decomp.boundary_terms]

    bulk, outer = _shell_integral(decomp.terms[decomp.h], eta, decomp.delta, big_r, spec, outer_from=big_r / 2)
    p = decay + 2 * k - 1
    tail = outer / (2.0 ** (-(p + 1)) - 1.0)

    norm_factor = (2 * math.pi) ** (-k)
    boundary_sum = sum(1j * (-1j) ** j * b for j, b in enumerate(boundary))
    bulk_weighted = (-1j) ** decomp.h * bulk
    value = norm_factor * (ball + boundary_sum + bulk_weighted)
    if not np.isfinite(value):
        raise InsufficientRegularizationError(f"Regularized value of {s.label} is not finite")
    error = norm_factor * tail + ROUNDOFF * max(1.0, abs(value))
    contributions = {"ball": norm_factor * ball, "bulk": norm_factor * bulk_weighted}
    for j, b in enumerate(boundary):
        contributions[f"boundary_{j}"] = norm_factor * 1j * (-1j) ** j * b
    diagnostics = OscDiagnostics(contributions=contributions, notes=list(decomp.notes))
    logger.info(f"Regularized value of {s.label or '<anonymous>'}: {value} +- {error:.2g}")
    return OscResult(
        value=value,
        error_estimate=float(error),
        method="regularized",
        converged=not decomp.notes,
        diagnostics=diagnostics,
    )


def unit_sphere_area(n: int) -> float:
    """Surface area of S^{n-1} in R^n."""
    return float(2 * math.pi ** (n / 2) / gamma_fn(n / 2))


class TruncationSequence(BaseModel):
    order: float
    k: int
    radii: list[float]
    values: list[float]
    growth_exponent: float = Field(description="log2 of the ratio of the last two increments")
    converging: bool


def absolute_truncation_sequence(
    m: float, k: int, radii: list[float] | None = None, *, tolerance: float = 0.05
) -> TruncationSequence:
    """Integrals of (1+|z|)^m over B(R) on R^{2k} for doubling radii R.

    Increments shrink like 2^{m+2k}; the sequence converges iff m < -2k.
    """
    radii = radii or [2.0**j for j in range(4, 21)]
    t, w = roots_legendre(32)
    area = unit_sphere_area(2 * k)
    values = []
    total = 0.0
    edges = [0.0, *radii]
    for lo, hi in zip(edges, edges[1:], strict=False):
        half = 0.5 * (hi - lo)
        r = lo + half * (t + 1)
        total += float(np.sum(half * w * (1 + r) ** m * r ** (2 * k - 1))) * area
        values.append(total)
    increments = np.diff(values)
    growth = float(np.log2(increments[-1] / increments[-2]))
    return TruncationSequence(
        order=m,
        k=k,
        radii=list(radii),
        values=values,
        growth_exponent=growth,
        converging=growth < -tolerance,
    )


def regularize(s: Symbol, eta: BilinearForm, spec: RegularizationSpec | None = None) -> OscResult:
    """Build and evaluate in one step; h defaults to the required count plus spec.extra_iterations."""
    spec = spec or RegularizationSpec()
    h = spec.h if spec.h is not None else required_iterations(s.order, s.rho, s.k) + spec.extra_iterations
    decomp = build_regularization(
        s, eta, spec.delta, h, geometry_floor=spec.geometry_floor, decay_slack=spec.decay_slack
    )
    return eval_regularized(decomp, eta, spec)
