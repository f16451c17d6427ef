"""Eigenvalue corrections of the perturbed disk, through second order.

On the unit-area disk every nonzero Steklov eigenvalue n*sqrt(pi) is double,
with eigenspace spanned by cos(n theta) and sin(n theta) traces.  Perturbing
the boundary splits each pair; the first- and second-order corrections are
the eigenvalues of 2x2 matrices acting on that eigenspace, assembled here
from the boundary integral constants.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FirstOrderSplit, InvalidMode
from .integrals import (
    coupled_constants,
    quadrature_coupled_table,
    quadrature_single_table,
    single_constants,
)
from .series import FourierSeries

SPLIT_TOL = 1e-14  # on sqrt(a_{2n}^2 + b_{2n}^2); treated as an exact-zero test
SYMMETRY_RTOL = 1e-10


@dataclass(frozen=True)
class TwoByTwoSym:
    """Real 2x2 matrix on the span of cos(n theta), sin(n theta)."""

    m11: float
    m12: float
    m21: float
    m22: float

    def as_array(self):
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    def eigenvalues(self):
        """(low, high) eigenvalue pair via the trace/determinant formula."""
        tr = self.m11 + self.m22
        det = self.m11 * self.m22 - self.m12 * self.m21
        disc = tr * tr - 4.0 * det
        root = math.sqrt(max(disc, 0.0))
        return (0.5 * (tr - root), 0.5 * (tr + root))

    def max_entry(self):
        return max(abs(self.m11), abs(self.m12), abs(self.m21), abs(self.m22))


@dataclass(frozen=True)
class PerturbationReport:
    """Full expansion record for one eigenvalue pair; immutable once built."""

    n: int
    lambda0: float
    lambda1: tuple
    m1: TwoByTwoSym
    eigvec1: list
    beta_mu: list
    lambda2: tuple = None
    m2: TwoByTwoSym = None
    rho: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "n": self.n,
            "rho": self.rho,
            "lambda0": self.lambda0,
            "lambda1": list(self.lambda1),
            "lambda2": list(self.lambda2) if self.lambda2 is not None else None,
            "M1": self.m1.as_array().tolist(),
            "M2": self.m2.as_array().tolist() if self.m2 is not None else None,
            "eigvec1": [list(v) for v in self.eigvec1],
            "beta_mu": [
                {str(m): [bm, mm] for m, (bm, mm) in sorted(branch.items())}
                for branch in self.beta_mu
            ],
        }


def _require_mode(n):
    if n < 1:
        raise InvalidMode(f"mode index n must be >= 1, got {n}")


def lambda0(n):
    """Unperturbed eigenvalue n*sqrt(pi) of the unit-area disk."""
    _require_mode(n)
    return n * math.sqrt(math.pi)


def matrix_first_order(rho, n):
    """First-order pair matrix: -(n^2 + n/2)*sqrt(pi) * [[b_2n, a_2n], [a_2n, -b_2n]]."""
    _require_mode(n)
    a2n, b2n = rho.coeff(2 * n)
    c = -(n * n + 0.5 * n) * math.sqrt(math.pi)
    return TwoByTwoSym(m11=c * b2n, m12=c * a2n, m21=c * a2n, m22=-c * b2n)


def matrix_first_order_quadrature(rho, n, num_points=None):
    """First-order matrix assembled from the defining integrals (oracle route)."""
    _require_mode(n)
    s = quadrature_single_table(rho, n, num_points)
    b0 = rho.coeff(0)[1]
    rt = math.sqrt(math.pi)
    return TwoByTwoSym(
        m11=n * (s["E"] - s["B"]) + n * rt * b0,
        m12=n * (-s["J"] - s["G"]),
        m21=n * (s["P"] - s["G"]),
        m22=n * (-s["E"] - s["R"]) + n * rt * b0,
    )


def lambda1(rho, n):
    """First-order correction pair +/- (n^2 + n/2) * sqrt(pi*(a_2n^2 + b_2n^2))."""
    _require_mode(n)
    a2n, b2n = rho.coeff(2 * n)
    mag = (n * n + 0.5 * n) * math.sqrt(math.pi * (a2n * a2n + b2n * b2n))
    pair = (-mag, mag)
    # the closed form is the eigenvalue pair of the first-order matrix
    lo, hi = matrix_first_order(rho, n).eigenvalues()
    scale = max(mag, 1.0)
    if abs(lo - pair[0]) > 1e-9 * scale or abs(hi - pair[1]) > 1e-9 * scale:
        raise RuntimeError("first-order closed form disagrees with its matrix eigenvalues")
    return pair


def first_order_coefficients(rho, n, eigvec, m):
    """Order-eps eigenfunction coefficients (beta_m, mu_m) at frequency m != n.

    beta_m = (pi^{(m-n-1)/2} / (n-m)) * n * [(-L + V)*alpha + (-U - M)*gamma]
    mu_m   = (pi^{(m-n-1)/2} / (n-m)) * n * [(-N + T)*alpha + (-W - K)*gamma]

    with the coupled constants taken at (n, m).  mu_0 is 0 since sin(0) == 0.
    """
    _require_mode(n)
    if m < 0:
        raise InvalidMode(f"frequency m must be >= 0, got {m}")
    if m == n:
        raise InvalidMode("beta/mu are undefined at m = n (that mode carries the eigenvector)")
    alpha, gamma = eigvec
    if alpha == 0.0 and gamma == 0.0:
        raise ValueError("eigvec must be nonzero")
    c = coupled_constants(rho, n, m)
    pref = math.pi ** (0.5 * (m - n - 1)) * n / (n - m)
    beta = pref * ((-c["L"] + c["V"]) * alpha + (-c["U"] - c["M"]) * gamma)
    mu = pref * ((-c["N"] + c["T"]) * alpha + (-c["W"] - c["K"]) * gamma) if m > 0 else 0.0
    return beta, mu


def _check_no_split(rho, n):
    a2n, b2n = rho.coeff(2 * n)
    if a2n * a2n + b2n * b2n > SPLIT_TOL * SPLIT_TOL:
        raise FirstOrderSplit(
            f"pair n={n} splits at first order (coefficients at mode {2 * n} are nonzero); "
            "the second-order matrix is only defined on non-split pairs"
        )


def _assemble_m2(rho, n, single, coupled_at):
    """Entry assembly shared by the closed-form and quadrature-backed routes."""
    rt = math.sqrt(math.pi)
    b0 = rho.coeff(0)[1]
    sq = rho.sum_of_squares()
    common = n * (n - 1.0) * b0 * b0 * rt + 0.25 * n * rt * sq
    m11 = -n * (n - 1.0) * single["A"] - 0.5 * n * single["C"] + n * (n - 2.0) * single["D"] + common
    m12 = -n * (n - 1.0) * single["F"] - 0.5 * n * single["H"] - n * (n - 2.0) * single["I"]
    m21 = -n * (n - 1.0) * single["F"] - 0.5 * n * single["H"] + n * (n - 2.0) * single["O"]
    m22 = -n * (n - 2.0) * single["D"] - n * (n - 1.0) * single["Q"] - 0.5 * n * single["S"] + common

    # only k with a rho coefficient at |k - n| or k + n contribute; all lie in 0..n+max_mode
    for k in range(n + rho.max_mode + 1):
        if k == n or k == 0:
            continue
        c = coupled_at(k)
        pref = n * k / (rt * (n - k))
        row1_a = c["K"] + (k - n - 1.0) * c["L"]
        row1_b = -c["M"] + (k - n - 1.0) * c["N"]
        row2_a = c["T"] + (k - n - 1.0) * c["U"]
        row2_b = -c["V"] + (k - n - 1.0) * c["W"]
        col_beta_cos = -c["L"] + c["V"]
        col_beta_sin = -c["N"] + c["T"]
        col_mu_cos = -c["U"] - c["M"]
        col_mu_sin = -c["W"] - c["K"]
        m11 += pref * (row1_a * col_beta_cos + row1_b * col_beta_sin)
        m12 += pref * (row1_a * col_mu_cos + row1_b * col_mu_sin)
        m21 += pref * (row2_a * col_beta_cos + row2_b * col_beta_sin)
        m22 += pref * (row2_a * col_mu_cos + row2_b * col_mu_sin)
    return TwoByTwoSym(m11=m11, m12=m12, m21=m21, m22=m22)


def _checked_symmetric(mat):
    scale = max(mat.max_entry(), 1e-300)
    if abs(mat.m12 - mat.m21) > SYMMETRY_RTOL * scale:
        raise RuntimeError(
            f"second-order matrix lost symmetry: |m12 - m21| = {abs(mat.m12 - mat.m21):.3e}"
        )
    return mat


def matrix_second_order(rho, n):
    """Second-order pair matrix from the closed-form constants.

    Requires the pair not to split at first order (a_2n = b_2n = 0); raises
    FirstOrderSplit otherwise.  The result is symmetric; an internal check
    enforces |m12 - m21| <= 1e-10 * max entry.
    """
    _require_mode(n)
    _check_no_split(rho, n)
    single = single_constants(rho, n)
    return _checked_symmetric(
        _assemble_m2(rho, n, single, lambda k: coupled_constants(rho, n, k))
    )


def matrix_second_order_quadrature(rho, n, num_points=None):
    """Second-order matrix with every constant replaced by its quadrature oracle."""
    _require_mode(n)
    _check_no_split(rho, n)
    single = quadrature_single_table(rho, n, num_points)
    return _checked_symmetric(
        _assemble_m2(rho, n, single, lambda k: quadrature_coupled_table(rho, n, k, num_points))
    )


def lambda2(rho, n):
    """Second-order correction pair (ascending); requires a non-split pair."""
    return matrix_second_order(rho, n).eigenvalues()


def special_rho(n):
    """Single-cosine profile cos((n + ceil(n/2)) theta) that lifts pair n at second order."""
    if n < 2:
        raise InvalidMode(f"the single-mode profile is defined for n >= 2, got {n}")
    mode = n + math.ceil(0.5 * n)
    return FourierSeries.cosine(mode, cap=max(64, mode))


def closed_form_lambda2_special(n):
    """Second-order correction of pair n under special_rho(n), in closed form.

    even n: (sqrt(pi)/4) * ((3/4) n^3 + 4 n^2 + (7/3) n)
    odd n:  (sqrt(pi)/8) * (9n^5 + 108n^4 + 138n^3 + 36n^2 - 3n) / (6n^2 - 4n - 2)

    Strictly positive for every n >= 2.
    """
    if n < 2:
        raise InvalidMode(f"the closed form is defined for n >= 2, got {n}")
    rt = math.sqrt(math.pi)
    if n % 2 == 0:
        return 0.25 * rt * (0.75 * n**3 + 4.0 * n**2 + (7.0 / 3.0) * n)
    num = 9.0 * n**5 + 108.0 * n**4 + 138.0 * n**3 + 36.0 * n**2 - 3.0 * n
    den = 6.0 * n**2 - 4.0 * n - 2.0
    return 0.125 * rt * num / den


def _first_order_eigvecs(m1):
    """Eigenvectors paired with the ascending eigenvalue order.

    Degenerate (zero) matrix: canonical basis vectors.  Otherwise normalized
    eigenvectors with the first nonzero component made positive.
    """
    if m1.max_entry() == 0.0:
        return [(1.0, 0.0), (0.0, 1.0)]
    w, v = np.linalg.eigh(m1.as_array())
    vecs = []
    for i in np.argsort(w):
        col = v[:, i]
        lead = col[0] if abs(col[0]) > 1e-12 else col[1]
        if lead < 0:
            col = -col
        vecs.append((float(col[0]), float(col[1])))
    return vecs


def contributing_frequencies(rho, n):
    """Frequencies m != n at which some coupled constant of (n, m) is nonzero."""
    out = []
    for m in range(n + rho.max_mode + 1):
        if m == n:
            continue
        c = coupled_constants(rho, n, m)
        if any(abs(val) > 0.0 for val in c.values()):
            out.append(m)
    return out


def expand(rho, n):
    """Full perturbation report for eigenvalue pair n.

    Always fills the zeroth- and first-order data; the second-order matrix
    and pair are present only when the pair does not split at first order.
    """
    _require_mode(n)
    lam0 = lambda0(n)
    m1 = matrix_first_order(rho, n)
    pair1 = lambda1(rho, n)
    vecs = _first_order_eigvecs(m1)
    a2n, b2n = rho.coeff(2 * n)
    split = math.hypot(a2n, b2n) > SPLIT_TOL
    m2 = pair2 = None
    if not split:
        m2 = matrix_second_order(rho, n)
        pair2 = m2.eigenvalues()
    beta_mu = []
    for vec in vecs:
        table = {}
        for m in contributing_frequencies(rho, n):
            bm, mm = first_order_coefficients(rho, n, vec, m)
            if bm != 0.0 or mm != 0.0:
                table[m] = (bm, mm)
        beta_mu.append(table)
    return PerturbationReport(
        n=n,
        lambda0=lam0,
        lambda1=pair1,
        m1=m1,
        eigvec1=vecs,
        beta_mu=beta_mu,
        lambda2=pair2,
        m2=m2,
        rho=rho.to_dict(),
    )
