"""Scenario runners: EE surfaces, rate CDFs and rate/EE trade-off curves.

Every scenario is a pure function of its spec and seed; re-running writes
byte-identical CSV files. Output files start with a provenance comment
carrying the scenario tag, the seed and a hash of the effective config.
"""

from dataclasses import dataclass

import numpy as np

from .config import (SystemConfig, draw_fading, power_cost_params,
                     signal_params, symmetric_beta)
from .energy import aggregate_params, ee_symmetric
from .fronthaul import FronthaulPlan, per_ap_distortions
from .optimizer import grid_cells, grid_search, parse_range
from .rate import achievable_rates
from .seeds import derive_rng

SCENARIOS = ("ee_surface", "ee_vs_mof", "rate_cdf", "ee_vs_sumrate")

# Fiber/FSO cost scenarios compared by the surface study: cheap fiber,
# baseline, premium fiber.
SURFACE_COST_SETS = ((0.01, 0.001), (0.03, 0.003), (0.05, 0.003))

# Capacity-coefficient / fiber-count pairs compared by the CDF and
# trade-off studies, defined for a 100-AP network and scaled to others.
COMPARED_SPLITS = ((2.0, 48), (3.0, 30), (4.0, 20), (7.0, 5), (8.0, 0))

# Transmit-power sweep of the trade-off study: rho_u * eta product in Watt.
SWEEP_RHO_ETA_W = (0.001, 0.1, 100)

# Capacity coefficients compared by the fiber-count study.
FIBER_COUNT_STUDY_NS = (1.0, 2.0, 3.0, 4.0, 7.0, 8.0)

_F = "%.9g"


def compared_splits_for(m):
    """COMPARED_SPLITS with fiber counts rescaled to an m-AP network."""
    return tuple((n, round(m_of * m / 100)) for n, m_of in COMPARED_SPLITS)


@dataclass(frozen=True)
class ExperimentSpec:
    """One scenario run: which study, under which config, where to write."""

    scenario: str
    config: SystemConfig
    drops: int = 200
    seed: int = 0
    output_path: str = "out.csv"

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario '{self.scenario}'")
        if self.drops < 1:
            raise ValueError("drops must be at least 1")


@dataclass(frozen=True, eq=False)
class EmpiricalCdf:
    """Empirical distribution: sorted sample values and cumulative steps."""

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        p = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "probs", p)
        if v.size == 0:
            raise ValueError("need at least one sample")
        if v.shape != p.shape or np.any(np.diff(v) < 0):
            raise ValueError("values must be sorted and aligned with probs")
        if np.any(np.diff(p) <= 0) or p[-1] != 1.0 or p[0] <= 0:
            raise ValueError("probs must increase to exactly 1")

    @classmethod
    def from_samples(cls, samples):
        v = np.sort(np.asarray(samples, dtype=float))
        if v.size == 0:
            raise ValueError("need at least one sample")
        p = np.arange(1, v.size + 1) / v.size
        return cls(v, p)

    def dominates(self, other):
        """First-order dominance: every quantile at least as large."""
        if self.values.size != other.values.size:
            raise ValueError("dominance check needs equal sample counts")
        return bool(np.all(self.values >= other.values))


def _open_out(path):
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise OSError(f"cannot write experiment output '{path}': {exc}") from exc


def _header(fh, spec, extra=()):
    fh.write(f"# scenario={spec.scenario} seed={spec.seed} "
             f"config_sha={spec.config.sha()}\n")
    for line in extra:
        fh.write(f"# {line}\n")


def run_ee_surface(spec):
    """Objective surface over (n, m_of) for each fiber/FSO cost set.

    Returns {(mu_of, mu_fso): PlanOptimum} with the per-set argmax; the CSV
    holds one row per grid cell for all three sets.
    """
    cfg = spec.config
    beta = symmetric_beta(cfg, spec.seed)
    sig = signal_params(cfg)
    ns = parse_range(1.0, 10.0, 0.1)
    optima = {}
    rows = []
    for mu_of, mu_fso in SURFACE_COST_SETS:
        pc = power_cost_params(cfg, mu_of=mu_of, mu_fso=mu_fso)
        agg = aggregate_params(beta, sig, pc, cfg.m, cfg.k, cfg.c_fso)
        nn, mm, ee, sr = grid_cells(agg, cfg.m, ns, cfg.k, cfg.b_s_hz, cfg.c_fso)
        optima[(mu_of, mu_fso)] = grid_search(agg, cfg.m, (1.0, 10.0, 0.1),
                                              cfg.k, cfg.b_s_hz, cfg.c_fso)
        for n_v, m_v, ee_v, sr_v in zip(nn.ravel(), mm.ravel(),
                                        ee.ravel(), sr.ravel()):
            rows.append((mu_of, mu_fso, n_v, m_v, ee_v, sr_v))

    with _open_out(spec.output_path) as fh:
        extra = [f"beta_scalar={_F % beta} policy={cfg.beta_policy}"]
        for (mu_of, mu_fso), opt in optima.items():
            extra.append(f"argmax mu_of={_F % mu_of} mu_fso={_F % mu_fso} "
                         f"n_star={_F % opt.n_star} m_of_star={opt.m_of_star} "
                         f"ee_star={_F % opt.ee_star}")
        _header(fh, spec, extra)
        fh.write("mu_of,mu_fso,n,m_of,ee_bits_per_joule,sum_rate_bps_hz\n")
        for r in rows:
            fh.write(f"{_F % r[0]},{_F % r[1]},{_F % r[2]},{int(r[3])},"
                     f"{_F % r[4]},{_F % r[5]}\n")
    return optima


def run_ee_vs_mof(spec):
    """Objective against fiber count, one curve per studied coefficient.

    Returns {n: (m_of array, ee array)} and writes one CSV row per point,
    with the per-curve argmax recorded in the header.
    """
    cfg = spec.config
    beta = symmetric_beta(cfg, spec.seed)
    agg = aggregate_params(beta, signal_params(cfg), power_cost_params(cfg),
                           cfg.m, cfg.k, cfg.c_fso)
    curves = {}
    for n in FIBER_COUNT_STUDY_NS:
        _, mm, ee, _ = grid_cells(agg, cfg.m, np.array([n]), cfg.k,
                                  cfg.b_s_hz, cfg.c_fso)
        curves[n] = (mm.ravel().astype(int), ee.ravel())

    with _open_out(spec.output_path) as fh:
        extra = [f"beta_scalar={_F % beta} policy={cfg.beta_policy}"]
        for n, (mofs, ee) in curves.items():
            best = int(np.argmax(ee))
            extra.append(f"argmax n={_F % n} m_of_star={mofs[best]} "
                         f"ee_star={_F % ee[best]}")
        _header(fh, spec, extra)
        fh.write("n,m_of,ee_bits_per_joule\n")
        for n, (mofs, ee) in curves.items():
            for m_v, ee_v in zip(mofs, ee):
                fh.write(f"{_F % n},{m_v},{_F % ee_v}\n")
    return curves


def _split_rates(fading, sig, cfg, n, m_of):
    plan = FronthaulPlan.fso_first(cfg.m, m_of, cfg.c_fso, max(1.0, n))
    dist = per_ap_distortions(fading.beta, sig, plan)
    return achievable_rates(fading.beta, sig, dist)


def run_rate_cdf(spec):
    """Sum-rate and per-user-rate CDFs for the compared capacity splits.

    All splits are evaluated on the same random drops (common random
    numbers), one topology and shadowing realization per drop.

    Returns {(n, m_of): (sum_rate_cdf, per_user_cdf)}.
    """
    cfg = spec.config
    sig = signal_params(cfg)
    splits = compared_splits_for(cfg.m)
    sums = {c: [] for c in splits}
    users = {c: [] for c in splits}
    for i in range(spec.drops):
        rng = derive_rng(spec.seed, "drop", i)
        _, fading = draw_fading(cfg, rng)
        for split in splits:
            rates = _split_rates(fading, sig, cfg, *split)
            sums[split].append(rates.sum_rate)
            users[split].extend(rates.per_user_rate.tolist())

    result = {c: (EmpiricalCdf.from_samples(sums[c]),
                  EmpiricalCdf.from_samples(users[c]))
              for c in splits}

    with _open_out(spec.output_path) as fh:
        _header(fh, spec, [f"drops={spec.drops} common random drops across splits"])
        fh.write("n,m_of,kind,value,cum_prob\n")
        for (n, m_of), (cdf_s, cdf_u) in result.items():
            for kind, cdf in (("sum_rate", cdf_s), ("per_user_rate", cdf_u)):
                for v, p in zip(cdf.values, cdf.probs):
                    fh.write(f"{_F % n},{m_of},{kind},{_F % v},{_F % p}\n")
    return result


def run_ee_vs_sumrate(spec):
    """Energy efficiency against sum rate, traced by sweeping transmit power.

    The swept control is the rho_u * eta product over SWEEP_RHO_ETA_W,
    evaluated on the symmetric model for each compared split.

    Returns {(n, m_of): array of (rho_eta_w, sum_rate, ee) rows}.
    """
    cfg = spec.config
    beta = symmetric_beta(cfg, spec.seed)
    pc = power_cost_params(cfg)
    lo, hi, count = SWEEP_RHO_ETA_W
    # eta = product / rho_u must stay within [0, 1]
    hi = min(hi, cfg.rho_u_w)
    sweep = np.linspace(lo, hi, count)
    curves = {}
    for n, m_of in compared_splits_for(cfg.m):
        pts = []
        for p in sweep:
            sig = signal_params(cfg, eta=p / cfg.rho_u_w)
            agg = aggregate_params(beta, sig, pc, cfg.m, cfg.k, cfg.c_fso)
            ee = ee_symmetric(max(1.0, n), m_of, agg, cfg.m, cfg.k,
                              cfg.b_s_hz, cfg.c_fso)
            power = (agg.gamma_ep + (cfg.m - m_of) * agg.gamma_fso
                     + max(1.0, n) * m_of * agg.gamma_of)
            pts.append((p, ee * power / cfg.b_s_hz, ee))
        curves[(n, m_of)] = np.array(pts)

    with _open_out(spec.output_path) as fh:
        _header(fh, spec, [
            f"sweep rho_u*eta over [{_F % lo}, {_F % hi}] W, {count} points",
            f"beta_scalar={_F % beta} policy={cfg.beta_policy}",
        ])
        fh.write("n,m_of,rho_eta_w,sum_rate_bps_hz,ee_bits_per_joule\n")
        for (n, m_of), pts in curves.items():
            for p, sr, ee in pts:
                fh.write(f"{_F % n},{m_of},{_F % p},{_F % sr},{_F % ee}\n")
    return curves
