"""Quadrature grids and function containers.

Functions on the hemisphere, the ball, and the slice space are stored as a
smooth sample array times an analytic boundary factor: (1 - |x'|^2)^e on the
ball chart, (1 - t^2)^e on the t axis.  Keeping the exponent symbolic makes
the chart maps between the hemisphere and the ball exact and lets every
weighted inner product fold the combined boundary power into a quadrature
rule built for exactly that power.
"""

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .specfun import jacobi_poly, log_gamma

RADIAL_RULES = ("gauss_jacobi", "uniform")
T_RULES = ("chebyshev", "gauss_legendre")


@dataclass(frozen=True)
class GridSpec:
    """Declarative description of the angular/radial/t-axis quadrature."""

    n: int
    n_angular: int
    n_radial: int
    n_t: int
    radial_rule: str = "gauss_jacobi"
    t_rule: str = "chebyshev"

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError("only n = 2 and n = 3 are supported")
        if min(self.n_angular, self.n_radial, self.n_t) < 4:
            raise ValueError("all node counts must be >= 4")
        if self.radial_rule not in RADIAL_RULES:
            raise ValueError("radial_rule must be one of %r" % (RADIAL_RULES,))
        if self.t_rule not in T_RULES:
            raise ValueError("t_rule must be one of %r" % (T_RULES,))

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def default_spec(n):
    """Grid sizes that keep every shipped reconstruction within tolerance."""
    if n == 2:
        return GridSpec(2, 256, 96, 128)
    if n == 3:
        return GridSpec(3, 32, 48, 64)
    raise ValueError("only n = 2 and n = 3 are supported")


def _symmetrize(x):
    # enforce exact node symmetry under reflection so sign flips are bitwise
    return 0.5 * (x - x[::-1])


def _exact_weights(nodes, a, b, total):
    """Quadrature weights on fixed nodes, exact for polynomials of degree < len(nodes).

    The target integral is against a Jacobi weight (1-x)^a (1+x)^b on (-1, 1)
    whose total mass is `total`.  Solving in the Jacobi-polynomial basis keeps
    the Vandermonde system well conditioned: every row j >= 1 integrates to
    zero by orthogonality, so the right-hand side is total * e_0.
    """
    nodes = np.asarray(nodes, dtype=float)
    npts = len(nodes)
    mat = np.empty((npts, npts))
    rhs = np.zeros(npts)
    rhs[0] = total
    for j in range(npts):
        row = jacobi_poly(j, a, b, nodes)
        scale = np.max(np.abs(row))
        mat[j] = row / scale
        rhs[j] /= scale
    return np.linalg.solve(mat, rhs)


class Grid:
    """Quadrature nodes and weights for one GridSpec; immutable after build.

    Angular layout: n=2 is a uniform grid on the circle, n=3 is Gauss-Legendre
    in the polar cosine crossed with a uniform azimuth of twice as many nodes,
    flattened in polar-major order.  Radial nodes live in u = r^2 so that even
    polynomial profiles integrate exactly; t nodes sit strictly inside (-1, 1).
    """

    def __init__(self, spec):
        self.spec = spec
        n = spec.n

        if n == 2:
            A = spec.n_angular
            self.angles = 2.0 * np.pi * np.arange(A) / A
            self.ang = np.stack([np.cos(self.angles), np.sin(self.angles)], axis=-1)
            self.ang_weight = np.full(A, 2.0 * np.pi / A)
            self.n_polar = None
            self.n_azim = None
        else:
            npol = spec.n_angular
            nazi = 2 * npol
            c, wc = roots_legendre(npol)
            c = _symmetrize(c)  # ascending and exactly antisymmetric
            beta = 2.0 * np.pi * np.arange(nazi) / nazi
            s = np.sqrt(1.0 - c * c)
            pts = np.empty((npol, nazi, 3))
            pts[:, :, 0] = s[:, None] * np.cos(beta)[None, :]
            pts[:, :, 1] = s[:, None] * np.sin(beta)[None, :]
            pts[:, :, 2] = c[:, None]
            self.ang = pts.reshape(npol * nazi, 3)
            self.ang_weight = np.repeat(wc * (2.0 * np.pi / nazi), nazi)
            self.polar_cos = c
            self.polar_weight = wc
            self.azim = beta
            self.n_polar = npol
            self.n_azim = nazi

        self.n_ang_total = self.ang.shape[0]

        R = spec.n_radial
        if spec.radial_rule == "gauss_jacobi":
            x, wj = roots_jacobi(R, 0.0, (n - 2) / 2.0)
            self.u = (x + 1.0) / 2.0
            # sum w h(u) = int_0^1 h(r^2) r^(n-1) dr for polynomial h
            self._radial_base = wj * 2.0 ** (-(n + 2) / 2.0)
        else:
            r = (np.arange(R) + 0.5) / R
            self.u = r * r
            self._radial_base = r ** (n - 1) / R
        self.r = np.sqrt(self.u)

        M = spec.n_t
        if spec.t_rule == "chebyshev":
            t = np.cos((2.0 * np.arange(M) + 1.0) * np.pi / (2.0 * M))[::-1]
        else:
            t, _ = roots_legendre(M)
        self.t = _symmetrize(t)

        self._radial_w = {}
        self._t_w = {}
        self._bfac = {}

    # -- weight families -------------------------------------------------

    def radial_weights(self, extra=0.0):
        """Weights w with sum w[i] h(u[i]) = int_0^1 h(r^2) (1-r^2)^extra r^(n-1) dr.

        Exact for polynomial h up to degree n_radial - 1 on the Gauss-Jacobi
        rule; the uniform rule just multiplies the midpoint weights pointwise.
        Requires extra > -1.
        """
        extra = float(extra)
        if extra <= -1.0:
            raise ValueError("radial weight exponent must exceed -1")
        w = self._radial_w.get(extra)
        if w is None:
            if self.spec.radial_rule == "uniform" or extra == 0.0:
                w = self._radial_base * (1.0 - self.u) ** extra
            else:
                n = self.spec.n
                b = (n - 2) / 2.0
                total = 0.5 * math.exp(
                    log_gamma(extra + 1.0) + log_gamma(b + 1.0) - log_gamma(extra + b + 2.0)
                )
                w = _exact_weights(2.0 * self.u - 1.0, extra, b, total)
            w.setflags(write=False)
            self._radial_w[extra] = w
        return w

    def t_weights(self, extra=0.0):
        """Weights w with sum w[j] h(t[j]) = int_{-1}^{1} h(t) (1-t^2)^extra dt.

        Exact for polynomial h up to degree n_t - 1; requires extra > -1.
        """
        extra = float(extra)
        if extra <= -1.0:
            raise ValueError("t weight exponent must exceed -1")
        w = self._t_w.get(extra)
        if w is None:
            total = math.sqrt(math.pi) * math.exp(
                log_gamma(extra + 1.0) - log_gamma(extra + 1.5)
            )
            w = _exact_weights(self.t, extra, extra, total)
            w.setflags(write=False)
            self._t_w[extra] = w
        return w

    def boundary_factor(self, exponent, axis="radial"):
        """(1-u)^exponent on radial nodes, or (1-t^2)^exponent on t nodes."""
        key = (axis, float(exponent))
        f = self._bfac.get(key)
        if f is None:
            if axis == "radial":
                f = (1.0 - self.u) ** exponent
            else:
                f = (1.0 - self.t * self.t) ** exponent
            f.setflags(write=False)
            self._bfac[key] = f
        return f

    # -- node geometry ----------------------------------------------------

    @property
    def ball_points(self):
        """Chart nodes x' in B_n, shape (n_ang_total, n_radial, n)."""
        pts = getattr(self, "_ball_points", None)
        if pts is None:
            pts = self.ang[:, None, :] * self.r[None, :, None]
            pts.setflags(write=False)
            self._ball_points = pts
        return pts

    @property
    def antipodal_index(self):
        """Permutation p of angular indices with ang[p] = -ang (exact)."""
        p = getattr(self, "_antipodal", None)
        if p is None:
            if self.spec.n == 2:
                A = self.n_ang_total
                if A % 2:
                    raise ValueError("antipodal map needs an even angular count")
                p = (np.arange(A) + A // 2) % A
            else:
                i = np.arange(self.n_polar)[:, None]
                j = np.arange(self.n_azim)[None, :]
                p = (
                    (self.n_polar - 1 - i) * self.n_azim + (j + self.n_azim // 2) % self.n_azim
                ).ravel()
            p.setflags(write=False)
            self._antipodal = p
        return p

    @property
    def t_reflect_index(self):
        """Permutation q with t[q] = -t (exact by construction)."""
        return np.arange(self.spec.n_t)[::-1]

    def __eq__(self, other):
        return isinstance(other, Grid) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)


@lru_cache(maxsize=64)
def make_grid(spec):
    """Build (and memoize) the Grid for a GridSpec."""
    return Grid(spec)


# -- function containers ---------------------------------------------------


def _check_pair(a, b):
    if a.grid is not b.grid and a.grid.spec != b.grid.spec:
        raise ValueError("grid mismatch")


def _combine(a, b, op):
    _check_pair(a, b)
    if a.boundary_exponent == b.boundary_exponent:
        ev = None
        if a.evaluator is not None and b.evaluator is not None:
            ea, eb = a.evaluator, b.evaluator
            ev = lambda p: op(ea(p), eb(p))
        return type(a)(a.grid, op(a.smooth, b.smooth), a.boundary_exponent, ev)
    return type(a)(a.grid, op(a.values, b.values), 0.0)


class _ChartFunction:
    """Shared behaviour of the three sampled-function containers."""

    def __init__(self, grid, smooth, boundary_exponent=0.0, evaluator=None):
        smooth = np.asarray(smooth, dtype=float)
        if smooth.shape != self._shape(grid):
            raise ValueError(
                "value array has shape %r, expected %r" % (smooth.shape, self._shape(grid))
            )
        if not np.all(np.isfinite(smooth)):
            raise ValueError("values must be finite")
        self.grid = grid
        self.smooth = smooth
        self.boundary_exponent = float(boundary_exponent)
        self.evaluator = evaluator

    @property
    def spec(self):
        return self.grid.spec

    @property
    def values(self):
        return self.smooth * self._factor()[None, :]

    def __add__(self, other):
        return _combine(self, other, np.add)

    def __sub__(self, other):
        return _combine(self, other, np.subtract)

    def __mul__(self, c):
        c = float(c)
        ev = None
        if self.evaluator is not None:
            e = self.evaluator
            ev = lambda p: c * e(p)
        return type(self)(self.grid, c * self.smooth, self.boundary_exponent, ev)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


class BallFunction(_ChartFunction):
    """phi on the unit ball: smooth * (1-|x'|^2)^boundary_exponent at the grid nodes.

    `evaluator`, when present, maps arbitrary chart points of shape (..., n)
    to the smooth part, letting the transforms quadrature off-grid honestly.
    """

    @staticmethod
    def _shape(grid):
        return (grid.n_ang_total, grid.spec.n_radial)

    def _factor(self):
        return self.grid.boundary_factor(self.boundary_exponent, "radial")

    @classmethod
    def from_function(cls, grid, fn, boundary_exponent=0.0):
        return cls(grid, fn(grid.ball_points), boundary_exponent, evaluator=fn)


class SphereFunction(_ChartFunction):
    """Even function on S^n stored through its upper-hemisphere ball chart.

    values[a, i] = f(x', sqrt(1-|x'|^2)) at x' = r_i * ang_a; evenness in the
    last coordinate is implied, so this determines f on the whole sphere.
    """

    @staticmethod
    def _shape(grid):
        return (grid.n_ang_total, grid.spec.n_radial)

    def _factor(self):
        return self.grid.boundary_factor(self.boundary_exponent, "radial")

    @classmethod
    def from_function(cls, grid, fn, boundary_exponent=0.0):
        return cls(grid, fn(grid.ball_points), boundary_exponent, evaluator=fn)


class SliceData(_ChartFunction):
    """Sinogram F(theta_i, t_j) on the slice cylinder S^(n-1) x (-1, 1)."""

    @staticmethod
    def _shape(grid):
        return (grid.n_ang_total, grid.spec.n_t)

    def _factor(self):
        return self.grid.boundary_factor(self.boundary_exponent, "t")


# -- chart maps -------------------------------------------------------------


def lift(f):
    """Hemisphere chart -> ball: phi(x') = f(x', sqrt(1-|x'|^2)) / sqrt(1-|x'|^2).

    Exact: only the stored boundary exponent changes, the smooth samples are
    shared, so project(lift(f)) returns f's values bitwise.
    """
    if not isinstance(f, SphereFunction):
        raise TypeError("lift expects a SphereFunction")
    return BallFunction(f.grid, f.smooth, f.boundary_exponent - 0.5, f.evaluator)


def project(phi):
    """Ball -> even sphere function: f(x', x_{n+1}) = |x_{n+1}| * phi(x')."""
    if not isinstance(phi, BallFunction):
        raise TypeError("project expects a BallFunction")
    return SphereFunction(phi.grid, phi.smooth, phi.boundary_exponent + 0.5, phi.evaluator)


# -- weighted inner products -------------------------------------------------


def inner_product_ball(a, b, lam=None):
    """int_{B_n} a b (1-|x'|^2)^(n/2-lam) dx', exact for polynomial smooth parts."""
    _check_pair(a, b)
    n = a.grid.spec.n
    if lam is None:
        lam = n / 2.0
    extra = a.boundary_exponent + b.boundary_exponent + n / 2.0 - lam
    if extra <= -1.0:
        raise ValueError("weight (1-|x'|^2)^%g is not integrable" % extra)
    w = a.grid.radial_weights(extra)
    return float(np.einsum("a,ai,ai,i->", a.grid.ang_weight, a.smooth, b.smooth, w))


def inner_product_sphere(a, b):
    """Plain L^2(S^n) product of the even extensions: 2 int_{S^n_+} a b dsigma."""
    _check_pair(a, b)
    extra = a.boundary_exponent + b.boundary_exponent - 0.5
    if extra <= -1.0:
        raise ValueError("surface integrand is not integrable at the equator")
    w = a.grid.radial_weights(extra)
    return 2.0 * float(np.einsum("a,ai,ai,i->", a.grid.ang_weight, a.smooth, b.smooth, w))


def inner_product_slices(A, B, weight="w", lam=None):
    """int int A B weight(t) dtheta dt with weight w = (1-t^2)^(1/2-lam) or
    w_tilde = (1-t^2)^(-1/2-lam); unnormalized angular measure."""
    _check_pair(A, B)
    n = A.grid.spec.n
    if lam is None:
        lam = n / 2.0
    if lam <= n / 2.0 - 1.0:
        raise ValueError("need lam > n/2 - 1")
    if weight == "w":
        p = 0.5 - lam
    elif weight == "w_tilde":
        p = -0.5 - lam
    else:
        raise ValueError("weight must be 'w' or 'w_tilde'")
    extra = A.boundary_exponent + B.boundary_exponent + p
    if extra <= -1.0:
        raise ValueError("t-weight (1-t^2)^%g is not integrable" % extra)
    w = A.grid.t_weights(extra)
    return float(np.einsum("a,aj,aj,j->", A.grid.ang_weight, A.smooth, B.smooth, w))


def norm_ball(a, lam=None):
    return math.sqrt(max(inner_product_ball(a, a, lam), 0.0))


def norm_sphere(a):
    return math.sqrt(max(inner_product_sphere(a, a), 0.0))


def norm_slices(A, weight="w", lam=None):
    return math.sqrt(max(inner_product_slices(A, A, weight, lam), 0.0))
