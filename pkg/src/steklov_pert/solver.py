"""Direct spectral Steklov eigensolver on star-shaped perturbed domains.

The method expands trial functions in global harmonic polynomials
{1, r^j cos(j theta), r^j sin(j theta)} and enforces the boundary condition
weakly: with S the boundary flux form and B the boundary mass form, the
Steklov eigenvalues solve the generalized symmetric problem S x = lambda B x.
Both forms are evaluated with periodic trapezoid quadrature, which is
spectrally accurate for these smooth integrands.  Per-mode scaling of the
basis by (max R)^{-j} controls the conditioning of B.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import geometry
from .errors import IllConditioned, InsufficientGrid
from .kernels import boundary_traces

log = logging.getLogger("steklov_pert.solver")

MAX_BASIS_SIZE = 48
CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class SolverConfig:
    """Discretization parameters.

    basis_size is the number of harmonic mode pairs K (total dimension
    2K+1); quad_points defaults to max(512, 8K).  The scaling rule 'radius'
    divides mode j by (max R)^j; 'none' disables scaling.
    """

    basis_size: int = 16
    quad_points: int = None
    scaling: str = "radius"

    def __post_init__(self):
        if self.basis_size < 1:
            raise ValueError("basis_size must be >= 1")
        if self.basis_size > MAX_BASIS_SIZE:
            raise ValueError(
                f"basis_size {self.basis_size} exceeds the conditioning cap {MAX_BASIS_SIZE}"
            )
        if self.scaling not in ("radius", "none"):
            raise ValueError(f"unknown scaling rule {self.scaling!r}")
        if self.quad_points is not None and self.quad_points < 4 * self.basis_size + 8:
            raise ValueError("quad_points must be >= 4*basis_size + 8")

    @property
    def npoints(self):
        if self.quad_points is not None:
            return self.quad_points
        return max(512, 8 * self.basis_size)


@dataclass
class FitResult:
    branch: int
    lambda0: float
    lambda1: float
    lambda2: float
    residual: float

    def to_dict(self):
        return {
            "branch": self.branch,
            "lambda0": self.lambda0,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "residual": self.residual,
        }


@dataclass
class EigencurveSet:
    """Eigenvalue branches over an eps grid, continuity-matched.

    branches[i, j] is the i-th tracked nonzero branch at eps_grid[j]; the
    eps = 0 column carries the disk spectrum without the trivial zero.
    """

    eps_grid: np.ndarray
    branches: np.ndarray
    fitted: list = field(default=None)


def _radius_samples(rho, eps, num_points, normalize):
    theta = np.linspace(0.0, 2.0 * np.pi, num_points, endpoint=False)
    rv = rho.evaluate(theta)
    rp = rho.derivative().evaluate(theta)
    radius = 1.0 + eps * rv
    radius_prime = eps * rp
    if normalize:
        scale = 1.0 / math.sqrt(geometry.area_value(rho, eps))
        radius = radius * scale
        radius_prime = radius_prime * scale
    return theta, radius, radius_prime


def assemble(rho, eps, cfg=None, normalize=True):
    """Boundary flux matrix S and boundary mass matrix B for the domain at eps.

    S_kl = contour integral of (d_nu phi_k) phi_l ds, which equals the
    interior Dirichlet energy by Green's identity and is therefore
    symmetric; B is the boundary Gram matrix of the basis.  Raises
    NonStarShaped for invalid eps and IllConditioned when B degenerates.
    """
    cfg = cfg or SolverConfig()
    geometry.check_star_shaped(rho, eps)
    n = cfg.npoints
    theta, radius, radius_prime = _radius_samples(rho, eps, n, normalize)
    k = cfg.basis_size
    if cfg.scaling == "radius":
        rmax = float(np.max(radius))
        scales = rmax ** -np.arange(k + 1, dtype=float)
    else:
        scales = np.ones(k + 1)
    values, traces = boundary_traces(theta, radius, radius_prime, k, scales)
    weight = np.sqrt(radius * radius + radius_prime * radius_prime)
    h = 2.0 * np.pi / n
    smat = h * (traces.T @ values)
    bmat = h * ((values * weight[:, None]).T @ values)
    _check_conditioning(bmat)
    return smat, bmat


def _check_conditioning(bmat):
    evals = np.linalg.eigvalsh(0.5 * (bmat + bmat.T))
    if evals[0] <= 0.0 or evals[-1] / evals[0] > CONDITION_LIMIT:
        raise IllConditioned(
            f"boundary mass matrix condition estimate {evals[-1] / max(evals[0], 1e-300):.3e} "
            f"exceeds {CONDITION_LIMIT:.0e}"
        )


def solve(smat, bmat):
    """Ascending eigenvalues of S x = lambda B x (B symmetric positive definite)."""
    s_sym = 0.5 * (smat + smat.T)
    b_sym = 0.5 * (bmat + bmat.T)
    try:
        eigenvalues = scipy.linalg.eigh(s_sym, b_sym, eigvals_only=True)
    except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
        raise IllConditioned(f"generalized eigensolve failed: {exc}") from None
    return np.sort(eigenvalues)


def steklov_eigenvalues(rho, eps, cfg=None, normalize=True):
    """Convenience: assemble and solve in one call."""
    return solve(*assemble(rho, eps, cfg, normalize=normalize))


def _validate_grid(eps_grid, require_count=1):
    grid = np.asarray(sorted(float(e) for e in eps_grid))
    if grid.size < require_count:
        raise InsufficientGrid(f"eps grid needs at least {require_count} points")
    if not np.any(np.isclose(grid, 0.0, atol=1e-15)):
        raise ValueError("eps grid must include 0")
    if not np.allclose(grid, -grid[::-1], atol=1e-12):
        raise ValueError("eps grid must be symmetric about 0")
    return grid


def _greedy_match(predictions, candidates):
    """Assign each predicted branch value the nearest unused candidate."""
    nb = predictions.size
    dist = np.abs(predictions[:, None] - candidates[None, :])
    assigned = np.full(nb, -1)
    used = np.zeros(candidates.size, dtype=bool)
    order = np.dstack(np.unravel_index(np.argsort(dist, axis=None), dist.shape))[0]
    remaining = nb
    for i, j in order:
        if assigned[i] >= 0 or used[j]:
            continue
        assigned[i] = j
        used[j] = True
        remaining -= 1
        if remaining == 0:
            break
    return candidates[assigned]


def _track_side(values0, slope_hint, columns):
    """Track branches outward from the degenerate point along one side.

    The first step is matched against values0 + slope_hint (slope_hint may be
    zero); subsequent steps against linear extrapolation from the previous
    two points.  This keeps analytic branches smooth through the eps = 0
    crossing instead of sorting them into |eps|-kinked curves.
    """
    rows = [values0]
    for idx, candidates in enumerate(columns):
        if idx == 0:
            prediction = values0 + slope_hint
        else:
            prev2 = rows[-2] if len(rows) >= 2 else rows[-1]
            prediction = 2.0 * rows[-1] - prev2
        rows.append(_greedy_match(prediction, candidates))
    return rows[1:]


def _match_branches(grid, columns, n_branches):
    """Continuity-match per-eps candidate spectra into branch rows."""
    i0 = int(np.argmin(np.abs(grid)))
    base = columns[i0][:n_branches]
    right_cols = columns[i0 + 1 :]
    left_cols = columns[:i0][::-1]
    # seed the first step on each side with the mirrored slope of the other
    right_hint = np.zeros(n_branches)
    left_hint = np.zeros(n_branches)
    if right_cols and left_cols:
        first_right = _track_side(base, np.zeros(n_branches), right_cols[:1])[0]
        left_hint = base - first_right
        right_hint = -left_hint
    right = _track_side(base, right_hint, right_cols)
    left = _track_side(base, left_hint, left_cols)
    rows = left[::-1] + [base] + right
    branches = np.array(rows).T
    # deterministic branch order: ascending at eps = 0, ties by rightmost value
    order = np.lexsort((branches[:, -1], branches[:, i0]))
    return branches[order]


def sweep(rho, eps_grid, cfg=None, n_branches=4):
    """Track the lowest nonzero eigenvalue branches over a symmetric eps grid."""
    cfg = cfg or SolverConfig()
    if n_branches < 1:
        raise ValueError("n_branches must be >= 1")
    if cfg.basis_size < 2 * n_branches + 4:
        raise ValueError(
            f"basis_size {cfg.basis_size} too small for {n_branches} branches "
            f"(needs >= {2 * n_branches + 4})"
        )
    grid = _validate_grid(eps_grid)
    pool = n_branches + 8
    columns = []
    for eps in grid:
        eigenvalues = steklov_eigenvalues(rho, float(eps), cfg)
        if abs(eigenvalues[0]) > 0.1 * math.sqrt(math.pi):
            raise IllConditioned(
                f"lowest eigenvalue {eigenvalues[0]:.3e} at eps={eps:g} is not the "
                "trivial zero; discretization is unreliable"
            )
        columns.append(eigenvalues[1 : pool + 1])
        log.debug("sweep eps=%g first branches %s", eps, eigenvalues[1 : n_branches + 1])
    branches = _match_branches(grid, columns, n_branches)
    return EigencurveSet(eps_grid=grid, branches=branches)


def fit_derivatives(curves, order=2):
    """Cubic least-squares fit of each branch; returns per-branch FitResult.

    The linear and quadratic coefficients estimate the first- and
    second-order eigenvalue corrections.  For a pair that is degenerate at
    eps = 0 the two branch labels are arbitrary, so callers compare the
    fitted values of a pair set-wise.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    grid = curves.eps_grid
    if grid.size < 5:
        raise InsufficientGrid("derivative fits need at least 5 grid points")
    if not np.allclose(grid, -grid[::-1], atol=1e-12):
        raise InsufficientGrid("derivative fits need a grid symmetric about 0")
    design = np.vander(grid, 4, increasing=True)  # 1, eps, eps^2, eps^3
    fits = []
    for i, branch in enumerate(curves.branches):
        coef, *_ = np.linalg.lstsq(design, branch, rcond=None)
        resid = float(np.sqrt(np.mean((design @ coef - branch) ** 2)))
        fits.append(
            FitResult(
                branch=i,
                lambda0=float(coef[0]),
                lambda1=float(coef[1]),
                lambda2=float(coef[2]),
                residual=resid,
            )
        )
    curves.fitted = fits
    return fits


def symmetric_grid(eps_max, count):
    """Uniform symmetric grid with an odd number of points including 0."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if count % 2 == 0:
        raise ValueError("count must be odd so the grid includes 0")
    if count == 1:
        return np.array([0.0])
    return np.linspace(-eps_max, eps_max, count)
