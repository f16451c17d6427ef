"""Boundary integral constants of the perturbation expansion.

Each constant is a weighted boundary integral of rho, rho', their squares or
their product against trigonometric weights at mode n (and a second mode k
for the coupled family), normalized by 1/sqrt(pi).  Fifteen single-index
kinds and eight coupled kinds are exposed, each with a closed form in the
Fourier coefficients of rho and an independent trapezoid-quadrature oracle.

Negative coefficient indices in the coupled closed forms follow the signed
convention a_{-j} = -a_j, b_{-j} = b_j.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidMode

SINGLE_KINDS = ("A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "O", "P", "Q", "R", "S")
COUPLED_KINDS = ("K", "L", "M", "N", "T", "U", "V", "W")
ALL_KINDS = SINGLE_KINDS + COUPLED_KINDS

# (base factor, trig weight) of each defining integrand; "sc" = sin(n.)cos(n.)
_SINGLE_DEF = {
    "A": ("rho2", "cos2"),
    "B": ("rho", "cos2"),
    "C": ("rhop2", "cos2"),
    "D": ("rhorhop", "sc"),
    "E": ("rhop", "sc"),
    "F": ("rho2", "sc"),
    "G": ("rho", "sc"),
    "H": ("rhop2", "sc"),
    "I": ("rhorhop", "cos2"),
    "J": ("rhop", "cos2"),
    "O": ("rhorhop", "sin2"),
    "P": ("rhop", "sin2"),
    "Q": ("rho2", "sin2"),
    "R": ("rho", "sin2"),
    "S": ("rhop2", "sin2"),
}

# (base factor, k-trig, n-trig)
_COUPLED_DEF = {
    "K": ("rhop", "sin", "cos"),
    "L": ("rho", "cos", "cos"),
    "M": ("rhop", "cos", "cos"),
    "N": ("rho", "sin", "cos"),
    "T": ("rhop", "sin", "sin"),
    "U": ("rho", "cos", "sin"),
    "V": ("rhop", "cos", "sin"),
    "W": ("rho", "sin", "sin"),
}


def _require_mode(n):
    if n < 1:
        raise InvalidMode(f"mode index n must be >= 1, got {n}")


def single_constants(rho, n):
    """Closed forms of the 15 single-index constants at mode n.

    The infinite sums of the defining formulas truncate exactly at the max
    mode of rho; every higher term vanishes for band-limited rho.
    """
    _require_mode(n)
    rt = math.sqrt(math.pi)
    a = lambda j: rho.coeff(j)[0]
    b = lambda j: rho.coeff(j)[1]
    big_j = rho.max_mode
    b0 = b(0)

    sq = rho.sum_of_squares()
    sq_w = sum(j * j * (a(j) ** 2 + b(j) ** 2) for j in range(1, big_j + 1))

    mid_bb_aa = sum(b(j) * b(2 * n - j) - a(j) * a(2 * n - j) for j in range(2 * n + 1))
    mid_aa_bb_w = sum(
        j * (2 * n - j) * (a(j) * a(2 * n - j) - b(j) * b(2 * n - j)) for j in range(2 * n + 1)
    )
    mid_aa_bb_lin = sum(
        (2 * n - j) * (a(j) * a(2 * n - j) - b(j) * b(2 * n - j)) for j in range(2 * n + 1)
    )
    mid_ab = sum(a(j) * b(2 * n - j) + b(j) * a(2 * n - j) for j in range(2 * n + 1))
    mid_ab_w = sum(
        j * (2 * n - j) * (a(j) * b(2 * n - j) + b(j) * a(2 * n - j)) for j in range(2 * n + 1)
    )
    mid_ab_lin = sum(
        (2 * n - j) * (a(j) * b(2 * n - j) + b(j) * a(2 * n - j)) for j in range(2 * n + 1)
    )

    tail = sum(
        b(j - n) * b(j + n) + a(j - n) * a(j + n) for j in range(n, n + big_j + 1)
    )
    tail_w = sum(
        (j * j - n * n) * (a(j - n) * a(j + n) + b(j - n) * b(j + n))
        for j in range(n, n + big_j + 1)
    )
    tail_x = sum(
        b(j - n) * a(j + n) - a(j - n) * b(j + n) for j in range(n, n + big_j + 1)
    )
    tail_x_w = sum(
        (j * j - n * n) * (b(j - n) * a(j + n) - a(j - n) * b(j + n))
        for j in range(n, n + big_j + 1)
    )

    a2n, b2n = rho.coeff(2 * n)
    i_val = 0.25 * rt * (mid_ab_lin + 2 * n * tail_x)
    j_val = n * rt * a2n
    return {
        "A": 0.25 * rt * (4 * b0 * b0 + 2 * sq + mid_bb_aa + 2 * tail),
        "B": 0.5 * rt * (2 * b0 + b2n),
        "C": 0.25 * rt * (2 * sq_w + mid_aa_bb_w + 2 * tail_w),
        "D": 0.25 * rt * (mid_aa_bb_lin - 2 * n * tail),
        "E": -n * rt * b2n,
        "F": 0.25 * rt * (mid_ab + 2 * tail_x),
        "G": 0.5 * rt * a2n,
        "H": 0.25 * rt * (-mid_ab_w + 2 * tail_x_w),
        "I": i_val,
        "J": j_val,
        "O": -i_val,
        "P": -j_val,
        "Q": 0.25 * rt * (4 * b0 * b0 + 2 * sq - mid_bb_aa - 2 * tail),
        "R": 0.5 * rt * (2 * b0 - b2n),
        "S": 0.25 * rt * (2 * sq_w - mid_aa_bb_w - 2 * tail_w),
    }


def coupled_constants(rho, n, k):
    """Closed forms of the 8 coupled constants at modes (n, k), k != n."""
    _require_mode(n)
    if k < 0:
        raise InvalidMode(f"coupled mode index k must be >= 0, got {k}")
    if k == n:
        raise InvalidMode("coupled constants are undefined at k = n; use the single-index family")
    rt2 = 0.5 * math.sqrt(math.pi)
    am, bm = rho.signed_coefficient(k - n)
    ap, bp = rho.signed_coefficient(k + n)
    return {
        "K": rt2 * (-(k - n) * bm - (k + n) * bp),
        "L": rt2 * (bm + bp),
        "M": rt2 * ((k - n) * am + (k + n) * ap),
        "N": rt2 * (am + ap),
        "T": rt2 * ((k - n) * am - (k + n) * ap),
        "U": rt2 * (-am + ap),
        "V": rt2 * ((k - n) * bm - (k + n) * bp),
        "W": rt2 * (bm - bp),
    }


def _grid_points(rho, n, k, num_points):
    if num_points is None:
        num_points = max(512, 4 * (2 * rho.max_mode + 2 * n + 2 * (k or 0)))
    return num_points


def _base_samples(rho, theta):
    rv = rho.evaluate(theta)
    rp = rho.derivative().evaluate(theta)
    return {
        "rho": rv,
        "rhop": rp,
        "rho2": rv * rv,
        "rhop2": rp * rp,
        "rhorhop": rv * rp,
    }


def _single_weights(n, theta):
    cn = np.cos(n * theta)
    sn = np.sin(n * theta)
    return {"cos2": cn * cn, "sin2": sn * sn, "sc": sn * cn}


def quadrature_single_table(rho, n, num_points=None):
    """All 15 single-index constants via periodic trapezoid quadrature."""
    _require_mode(n)
    num_points = _grid_points(rho, n, None, num_points)
    theta = np.linspace(0.0, 2.0 * np.pi, num_points, endpoint=False)
    base = _base_samples(rho, theta)
    weights = _single_weights(n, theta)
    scale = (2.0 * np.pi / num_points) / math.sqrt(math.pi)
    return {
        kind: float(np.dot(base[bk], weights[wk]) * scale)
        for kind, (bk, wk) in _SINGLE_DEF.items()
    }


def quadrature_coupled_table(rho, n, k, num_points=None):
    """All 8 coupled constants at (n, k) via periodic trapezoid quadrature."""
    _require_mode(n)
    if k < 0:
        raise InvalidMode(f"coupled mode index k must be >= 0, got {k}")
    if k == n:
        raise InvalidMode("coupled constants are undefined at k = n")
    num_points = _grid_points(rho, n, k, num_points)
    theta = np.linspace(0.0, 2.0 * np.pi, num_points, endpoint=False)
    base = _base_samples(rho, theta)
    trig = {
        ("sin", k): np.sin(k * theta),
        ("cos", k): np.cos(k * theta),
        ("sin", n): np.sin(n * theta),
        ("cos", n): np.cos(n * theta),
    }
    scale = (2.0 * np.pi / num_points) / math.sqrt(math.pi)
    return {
        kind: float(np.dot(base[bk], trig[(tk, k)] * trig[(tn, n)]) * scale)
        for kind, (bk, tk, tn) in _COUPLED_DEF.items()
    }


def quadrature_constant(kind, rho, n, k=None, num_points=None):
    """Trapezoid value of one constant's defining integral (oracle route)."""
    if kind in _SINGLE_DEF:
        if k is not None:
            raise InvalidMode(f"constant {kind} takes no coupled index k")
        return quadrature_single_table(rho, n, num_points)[kind]
    if kind in _COUPLED_DEF:
        if k is None:
            raise InvalidMode(f"constant {kind} requires a coupled index k")
        return quadrature_coupled_table(rho, n, k, num_points)[kind]
    raise InvalidMode(f"unknown constant kind {kind!r}")


@dataclass(frozen=True)
class ConstantTable:
    """Closed-form constant values for one mode n: 15 single + 8 per coupled k."""

    n: int
    single: dict = field(default_factory=dict)
    coupled: dict = field(default_factory=dict)  # k -> {kind: value}


def constant_table(rho, n, ks=None):
    """Full closed-form table; ks defaults to 0..n+max_mode without n."""
    _require_mode(n)
    if ks is None:
        ks = [k for k in range(n + rho.max_mode + 1) if k != n]
    return ConstantTable(
        n=n,
        single=single_constants(rho, n),
        coupled={k: coupled_constants(rho, n, k) for k in ks},
    )
