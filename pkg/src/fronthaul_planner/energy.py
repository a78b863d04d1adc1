"""Network power, deployment cost and energy efficiency.

Energy efficiency is delivered bits per Joule: bandwidth times sum rate
over total consumed power plus a deployment-cost penalty for the fronthaul
links. The symmetric (equal-gain) special case collapses to seven aggregate
scalars and a two-variable objective in the fiber capacity coefficient and
the fiber count, which is what the planner optimizes.
"""

from dataclasses import dataclass

import numpy as np

# Link capacities are carried in bits/s/Hz; bandwidth * capacity is bps and
# the traffic-dependent power is specified per Gbps.
GBPS_PER_BPS = 1e-9


@dataclass(frozen=True)
class PowerCostParams:
    """Power and deployment-cost model of APs and fronthaul links.

    p_circuit and p0 are per-AP constant powers (Watt). p_fh_fso / p_fh_of
    are traffic-dependent link powers in Watt per Gbps; mu_fso / mu_of are
    deployment-cost coefficients in Watt per bps/Hz. FSO links cost less to
    deploy but burn more power per bit than fiber.
    """

    p_circuit: float = 0.2
    p0: float = 0.825
    p_fh_fso: float = 0.3
    p_fh_of: float = 0.25
    mu_fso: float = 0.003
    mu_of: float = 0.03
    b_s: float = 20e6

    def __post_init__(self):
        vals = (self.p_circuit, self.p0, self.p_fh_fso, self.p_fh_of,
                self.mu_fso, self.mu_of, self.b_s)
        if any(v < 0 for v in vals):
            raise ValueError("power and cost parameters must be nonnegative")
        if self.mu_fso > self.mu_of:
            raise ValueError("mu_fso must not exceed mu_of")
        if self.p_fh_fso < self.p_fh_of:
            raise ValueError("p_fh_fso must be at least p_fh_of")


@dataclass(frozen=True)
class AggregateParams:
    """Scalars of the symmetric-network objective.

    l1 is the coherent-gain numerator scale and l2 the interference plus
    receiver-noise floor of the SINR. alpha_fso is the quantization penalty
    of one FSO link; a fiber at coefficient n contributes
    alpha_of / (2^(n c_fso) - 1). gamma_ep collects the link-independent
    power, gamma_fso / gamma_of the per-link power-plus-cost rates.
    """

    l1: float
    l2: float
    alpha_fso: float
    alpha_of: float
    gamma_ep: float
    gamma_fso: float
    gamma_of: float


def network_power(sig, pc, plan):
    """Total consumed power in Watt.

    Sums user transmit power, per-AP circuit power, traffic-dependent
    fronthaul power (bandwidth * capacity, converted to Gbps) and the
    constant fronthaul power.
    """
    if plan.m != sig.m:
        raise ValueError("plan does not cover all APs")
    ue = sig.rho_u * float(np.sum(sig.eta))
    circuit = plan.m * pc.p_circuit
    p_fh = np.where(plan.is_fiber, pc.p_fh_of, pc.p_fh_fso)
    traffic = float(np.sum(pc.b_s * plan.capacities() * GBPS_PER_BPS * p_fh))
    constant = plan.m * pc.p0
    return ue + circuit + traffic + constant


def fronthaul_cost(plan, pc):
    """Deployment-cost penalty: capacity times per-type cost coefficient."""
    mu = np.where(plan.is_fiber, pc.mu_of, pc.mu_fso)
    return float(np.sum(plan.capacities() * mu))


def energy_efficiency(rates, p_net, omega, b_s):
    """Energy efficiency in bits per Joule."""
    den = p_net + omega
    if den <= 0:
        raise ValueError("power plus cost must be positive")
    return b_s * rates.sum_rate / den


def aggregate_params(beta_scalar, sig, pc, m, k, c_fso):
    """Aggregate scalars for a symmetric network with gain beta_scalar.

    Requires equal power control and equal noise across the network; the
    per-user and per-AP structure then collapses to seven scalars.
    """
    if beta_scalar <= 0:
        raise ValueError("beta_scalar must be positive")
    if c_fso <= 0:
        raise ValueError("c_fso must be positive")
    eta = float(sig.eta[0])
    delta_sq = float(sig.delta_sq[0])
    if not (np.all(sig.eta == eta) and np.all(sig.delta_sq == delta_sq)):
        raise ValueError("aggregate parameters require symmetric eta and delta_sq")
    beta = float(beta_scalar)
    l1 = m ** 2 * sig.rho_u * eta * beta ** 2
    l2 = m * k * sig.rho_u * eta * beta ** 2 + m * delta_sq * beta
    alpha_of = (k * sig.rho_u * eta * beta + delta_sq) * beta
    alpha_fso = alpha_of / (2.0 ** c_fso - 1.0)
    gamma_ep = k * sig.rho_u * eta + m * (pc.p_circuit + pc.p0)
    gamma_fso = c_fso * (pc.b_s * pc.p_fh_fso * GBPS_PER_BPS + pc.mu_fso)
    gamma_of = c_fso * (pc.b_s * pc.p_fh_of * GBPS_PER_BPS + pc.mu_of)
    return AggregateParams(l1, l2, alpha_fso, alpha_of, gamma_ep, gamma_fso, gamma_of)


def ee_symmetric(n, m_of, agg, m, k, b_s, c_fso):
    """Symmetric-network energy efficiency at fiber coefficient n and count m_of.

    Vectorized over n and m_of (broadcasting). m_of = 0 makes the value
    independent of n; n = 0 with m_of > 0 is rejected (a zero-capacity
    fiber has unbounded distortion).
    """
    n_arr = np.asarray(n, dtype=float)
    m_arr = np.asarray(m_of, dtype=float)
    if np.any(n_arr < 0):
        raise ValueError("n must be nonnegative")
    if np.any((m_arr < 0) | (m_arr > m)):
        raise ValueError("m_of must lie in [0, m]")
    if np.any((n_arr == 0) & (m_arr > 0)):
        raise ValueError("n = 0 with fiber links deployed is out of model")
    n_b, m_b = np.broadcast_arrays(n_arr, m_arr)
    # n is immaterial without fiber links; substitute 1 there so the fiber
    # term evaluates cleanly before being zeroed out. Overflow of 2^(n c)
    # for huge n correctly drives the fiber distortion to zero.
    n_safe = np.where(m_b > 0, n_b, 1.0)
    with np.errstate(over="ignore"):
        fiber_gain = np.where(
            m_b > 0, m_b * agg.alpha_of / (2.0 ** (n_safe * c_fso) - 1.0), 0.0)
    sinr = agg.l1 / (agg.l2 + (m - m_b) * agg.alpha_fso + fiber_gain)
    power = agg.gamma_ep + (m - m_b) * agg.gamma_fso + n_b * m_b * agg.gamma_of
    out = k * b_s * np.log2(1.0 + sinr) / power
    return out if out.ndim else float(out)
