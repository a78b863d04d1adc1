"""Closed-form and brute-force optimization of the fronthaul split.

The symmetric-network objective is maximized over the fiber capacity
coefficient n and the fiber count m_of. Closed forms come from the
stationarity conditions of a log-linearized objective; a grid search serves
as the independent oracle and an alternating loop refines the joint pair.

The capacity-coefficient closed form solves a quadratic in
chi = 2^(-n c_fso). A typeset single-expression variant of the same root
circulates with inconsistent operator placement; it is implemented verbatim
as n_from_typeset_formula for cross-checking and is NOT used by the
planner, which always solves the quadratic itself.
"""

import math
from dataclasses import dataclass

import numpy as np

from .energy import ee_symmetric

LN2 = math.log(2.0)


@dataclass(frozen=True)
class CapacityCoeffIntermediates:
    """Intermediates of the capacity-coefficient closed form.

    lambda1..lambda4 feed the quadratic u1 chi^2 + u2 chi + u3 = 0 in
    chi = 2^(-n c_fso). chi is the selected root (nan when none is valid),
    n_star the resulting coefficient clamped to [1, inf), fallback_used
    marks configurations where no real root landed in (0, 1] and a fine
    one-dimensional grid decided instead.
    """

    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    u1: float
    u2: float
    u3: float
    chi: float
    n_star: float
    fallback_used: bool


@dataclass(frozen=True)
class FiberCountIntermediates:
    """Intermediates of the fiber-count closed form.

    kappa1 - kappa2 * m_of is the SINR denominator and kappa3 + kappa4 * m_of
    the power-plus-cost denominator; m_cont is the unconstrained stationary
    point (nan when degenerate).
    """

    kappa1: float
    kappa2: float
    kappa3: float
    kappa4: float
    m_cont: float


@dataclass(frozen=True)
class PlanOptimum:
    """Optimization outcome; method is one of closed-form, grid, alternating."""

    n_star: float
    m_of_star: int
    ee_star: float
    method: str
    converged: bool = True


def _ee(n, m_of, agg, m, c_fso):
    # comparisons only need relative EE, so k = 1 and b_s = 1
    return ee_symmetric(n, m_of, agg, m, 1, 1.0, c_fso)


def capacity_coeff_quadratic(m_of, agg, m, c_fso):
    """Solve the capacity-coefficient stationarity quadratic for fixed m_of.

    Among real roots in (0, 1] the one with the higher objective wins and
    maps to n = -log2(chi) / c_fso, clamped to [1, inf). Without a valid
    root, a fine grid over n in [1, 10] decides and fallback_used is set.
    """
    if m_of < 1:
        raise ValueError("capacity coefficient is immaterial without fiber links")
    lam2 = agg.l2 + (m - m_of) * agg.alpha_fso
    lam3 = lam2 / (agg.alpha_of * m_of * LN2)
    lam4 = agg.gamma_ep + (m - m_of) * agg.gamma_fso
    lam1 = 2.443 + math.log2(lam2 / agg.l1) + lam4 * c_fso / (agg.gamma_of * m_of)
    scale = agg.gamma_of * agg.alpha_of * m_of
    u1 = scale * (agg.alpha_of * m_of / lam2 - 1.0 / LN2)
    u2 = scale * lam1
    u3 = scale * (lam2 / (agg.alpha_of * m_of)) * math.log2(lam2 / agg.l1)

    roots = []
    if u1 == 0.0:
        if u2 != 0.0:
            roots = [-u3 / u2]
    else:
        disc = u2 * u2 - 4.0 * u1 * u3
        if disc >= 0.0:
            sq = math.sqrt(disc)
            roots = [(-u2 + sq) / (2.0 * u1), (-u2 - sq) / (2.0 * u1)]

    candidates = [(max(1.0, -math.log2(r) / c_fso), r) for r in roots if 0.0 < r <= 1.0]
    if candidates:
        n_star, chi = max(candidates, key=lambda c: _ee(c[0], m_of, agg, m, c_fso))
        fallback = False
    else:
        ns = np.arange(1.0, 10.0 + 5e-3, 0.01)
        n_star = float(ns[np.argmax(_ee(ns, m_of, agg, m, c_fso))])
        chi = float("nan")
        fallback = True
    return CapacityCoeffIntermediates(lam1, lam2, lam3, lam4, u1, u2, u3,
                                      chi, float(n_star), fallback)


def optimal_n_closed_form(m_of, agg, m, c_fso):
    """Best fiber capacity coefficient at fixed m_of; nan when m_of = 0."""
    if m_of == 0:
        return float("nan")
    return capacity_coeff_quadratic(m_of, agg, m, c_fso).n_star


def n_from_typeset_formula(m_of, agg, m, c_fso):
    """Verbatim single-expression variant of the capacity-coefficient root.

    Kept only to quantify its disagreement with the quadratic route; returns
    nan whenever the expression is undefined or produces chi outside (0, 1].
    """
    if m_of < 1:
        return float("nan")
    inter = capacity_coeff_quadratic(m_of, agg, m, c_fso)
    lam1, lam2, lam3 = inter.lambda1, inter.lambda2, inter.lambda3
    disc = lam1 ** 2 - 4.0 * (1.0 - lam3) * math.log2(lam2 / agg.l1)
    if disc < 0 or lam3 == 0 or lam3 == 1.0:
        return float("nan")
    chi = (-agg.gamma_of * agg.alpha_of * m_of * lam1
           + math.sqrt(disc) / (2.885 * (1.0 - 1.0 / lam3)))
    if not 0.0 < chi <= 1.0:
        return float("nan")
    return max(1.0, -math.log2(chi) / c_fso)


def fiber_count_intermediates(n, agg, m, c_fso):
    """kappa scalars and the unconstrained stationary fiber count at fixed n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    kappa1 = agg.l2 + m * agg.alpha_fso
    kappa2 = agg.alpha_fso - agg.alpha_of / (2.0 ** (n * c_fso) - 1.0)
    kappa3 = agg.gamma_ep + m * agg.gamma_fso
    kappa4 = n * agg.gamma_of - agg.gamma_fso
    if kappa2 != 0.0 and kappa4 != 0.0:
        m_cont = (kappa1 * kappa4 - kappa2 * kappa3) / (2.0 * kappa2 * kappa4)
    else:
        m_cont = float("nan")
    return FiberCountIntermediates(kappa1, kappa2, kappa3, kappa4, m_cont)


def optimal_m_of_closed_form(n, agg, m, c_fso):
    """Best fiber count at fixed n, by direct objective comparison.

    Candidates are the clamped floor/ceil of the stationary point plus both
    endpoints 0 and m; the endpoints decide degenerate cases (kappa2 or
    kappa4 zero) and ties go to the smaller, cheaper count.
    """
    inter = fiber_count_intermediates(n, agg, m, c_fso)
    candidates = {0, int(m)}
    if math.isfinite(inter.m_cont):
        lo = int(math.floor(inter.m_cont))
        hi = int(math.ceil(inter.m_cont))
        candidates.update(c for c in (lo, hi) if 0 <= c <= m)
    best = min(candidates)
    best_ee = _ee(float(n), best, agg, m, c_fso)
    for cand in sorted(candidates):
        ee = _ee(float(n), cand, agg, m, c_fso)
        if ee > best_ee:
            best, best_ee = cand, ee
    return best


def parse_range(lo, hi, step):
    """Inclusive arithmetic range with float-tolerant endpoint."""
    if step <= 0 or hi < lo:
        raise ValueError("range must satisfy lo <= hi and step > 0")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def grid_cells(agg, m, n_range, k, b_s, c_fso):
    """Exhaustive objective evaluation over {0..m} x n_range.

    Returns (n_grid, m_of_grid, ee, sum_rate) with shape
    (len(n_range), m + 1) each.
    """
    ns = np.asarray(n_range, dtype=float)
    mofs = np.arange(0, m + 1)
    nn, mm = np.meshgrid(ns, mofs, indexing="ij")
    ee = ee_symmetric(nn, mm, agg, m, k, b_s, c_fso)
    power = agg.gamma_ep + (m - mm) * agg.gamma_fso + nn * mm * agg.gamma_of
    sum_rate = ee * power / b_s
    return nn, mm, ee, sum_rate


def grid_search(agg, m, n_range, k, b_s, c_fso):
    """Brute-force oracle for the joint (n, m_of) optimum.

    n_range is (lo, hi, step). Ties resolve to the smallest n, then the
    smallest m_of, independent of evaluation order.
    """
    ns = parse_range(*n_range)
    nn, mm, ee, _ = grid_cells(agg, m, ns, k, b_s, c_fso)
    order = np.lexsort((mm.ravel(), nn.ravel(), -ee.ravel()))
    idx = order[0]
    return PlanOptimum(float(nn.ravel()[idx]), int(mm.ravel()[idx]),
                       float(ee.ravel()[idx]), "grid")


def alternating_optimize(agg, m, init_n, init_m_of, max_iters, tol, *,
                         k, b_s, c_fso):
    """Joint optimum by alternating the two closed forms.

    Each half-step is accepted only if it does not decrease the objective;
    a decreasing step stops the loop at the best point seen. Runs until the
    pair is stationary (n within tol, m_of exact) or max_iters.
    """
    if not 0 <= init_m_of <= m:
        raise ValueError("init_m_of must lie in [0, m]")
    if init_n < 1:
        raise ValueError("init_n must be at least 1")
    n, m_of = float(init_n), int(init_m_of)
    ee = ee_symmetric(n, m_of, agg, m, k, b_s, c_fso)
    converged = False
    for _ in range(max_iters):
        n_prev, m_prev = n, m_of

        if m_of > 0:
            n_cand = optimal_n_closed_form(m_of, agg, m, c_fso)
            ee_cand = ee_symmetric(n_cand, m_of, agg, m, k, b_s, c_fso)
            if ee_cand < ee:
                break
            n, ee = n_cand, ee_cand

        m_cand = optimal_m_of_closed_form(n, agg, m, c_fso)
        ee_cand = ee_symmetric(n, m_cand, agg, m, k, b_s, c_fso)
        if ee_cand < ee:
            break
        m_of, ee = m_cand, ee_cand

        if abs(n - n_prev) <= tol and m_of == m_prev:
            converged = True
            break
    return PlanOptimum(n, m_of, ee, "alternating", converged)
