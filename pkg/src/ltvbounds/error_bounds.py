"""Approximate-eigenstructure error and every bound on it.

The error of interest is ``E_p = ||H S_mu gamma - lambda(mu) S_mu g||_p``
for a channel ``H`` with compactly supported spreading.  This module
evaluates ``E_p`` along two independent routes, the bound hierarchy
(optimal-B bound, its sup-norm relaxations, the Kozek-type bound, the
coarse Hoelder bound), the fidelity quantities, the feasibility and
support conditions, and an implicit-inequality solver for the admissible
support size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import CellSpreading, apply_channel, lambda_value
from .core_tf import Signal, TFShift, ambiguity_on_points, shift, shift_many
from .errors import (
    DomainError,
    NoSolution,
    OracleMismatch,
    PreconditionFailed,
)

#: Support-size threshold above which the B = 1 feasibility condition
#: (inf Re A >= 1/2 on U) is impossible for any pulse pair.
C2_MEASURE_LIMIT = 2.0 * math.e * math.log(2.0)


def conjugate_exponent(a: float) -> float:
    """b with 1/a + 1/b = 1 (b = inf for a = 1)."""
    if np.isinf(a):
        return 1.0
    if a < 1:
        raise ValueError("a must satisfy a >= 1")
    if a == 1.0:
        return np.inf
    return a / (a - 1.0)


@dataclass(frozen=True)
class ErrorConfig:
    """Exponents and smoothing choice for one error evaluation.

    ``mode`` selects the smoothing: "C1" uses B = cross ambiguity of the
    pulse pair, "C2" uses B = 1 (plain Weyl symbol).  ``b`` is derived from
    ``a`` by conjugacy.
    """

    p: float = 2.0
    a: float = 2.0
    mode: str = "C2"
    alpha: float = 0.0
    mu: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not 1.0 <= self.p < np.inf:
            raise ValueError("p must satisfy 1 <= p < inf")
        if not (self.a >= 1.0 or np.isinf(self.a)):
            raise ValueError("a must satisfy 1 <= a <= inf")
        if self.mode not in ("C1", "C2"):
            raise ValueError("mode must be 'C1' or 'C2'")

    @property
    def b(self) -> float:
        return conjugate_exponent(self.a)


@dataclass
class BoundReport:
    """Evaluated error, bounds and intermediate quantities of one instance.

    Fields that could not be evaluated are ``None`` with the reason under
    ``errors`` keyed by field name.
    """

    e_p: float | None = None
    ratio: float | None = None
    thm2_bound: float | None = None
    kozek_simplified: float | None = None
    general_bound: float | None = None
    r_inf_bound: float | None = None
    rho_bar_inf: float | None = None
    r_inf: float | None = None
    fidelity2: float | None = None
    fidelity1: float | None = None
    c2_feasible: bool | None = None
    r1: float | None = None
    r2: float | None = None
    necessary_level: float | None = None
    errors: dict = field(default_factory=dict)


def _require_unit(g: Signal, gamma: Signal):
    if not g.is_unit() or not gamma.is_unit():
        raise PreconditionFailed("g and gamma must have unit 2-norm")


class _Instance:
    """Shared per-(spreading, pulses, config) quantities on the subcell grid."""

    def __init__(self, s: CellSpreading, g: Signal, gamma: Signal, cfg: ErrorConfig, subdiv: int):
        _require_unit(g, gamma)
        self.s, self.g, self.gamma, self.cfg, self.subdiv = s, g, gamma, cfg, subdiv
        self.nu1, self.nu2, self.sigma, self.w = s.subcells(subdiv)
        # columns: S_nu(alpha) gamma at every subcell center
        self.batch = shift_many(gamma, self.nu1, self.nu2, cfg.alpha)
        self.A = np.conj(g.samples) @ self.batch * g.grid.dt
        self.B = self.A if cfg.mode == "C1" else np.ones_like(self.A)
        # R = 1 + |A - B|^2 - |A|^2 = 1 + |B|^2 - 2 Re(A conj(B))
        self.R = 1.0 + np.abs(self.B) ** 2 - 2.0 * np.real(self.A * np.conj(self.B))
        self.R = np.maximum(self.R, 0.0)  # clip -1e-16 roundoff

    @property
    def deviation(self) -> np.ndarray:
        # columns: S_nu gamma - B(nu) g
        return self.batch - np.outer(self.g.samples, self.B)

    def rho_bar_inf(self) -> float:
        return float(np.abs(self.deviation).max())

    def rho2(self) -> np.ndarray:
        """rho_2(nu) = ||S_nu gamma - B(nu) g||_2 on the support."""
        d = self.deviation
        return np.sqrt(np.sum(np.abs(d) ** 2, axis=0) * self.g.grid.dt)

    def norm_on_support(self, values: np.ndarray, q: float) -> float:
        """Riemann q-norm over U of subcell samples; sup for q = inf."""
        mag = np.abs(values)
        if np.isinf(q):
            return float(mag.max())
        return float((np.sum(mag**q) * self.w) ** (1.0 / q))

    def rho_factor(self, exponent: float) -> float:
        """rho_bar_inf ** exponent, skipping the sup when the exponent is 0."""
        if exponent == 0.0:
            return 1.0
        return self.rho_bar_inf() ** exponent


def _power_1_over_b(x: float, b: float) -> float:
    # limit convention for b = inf: x^(1/inf) = 1 for x > 0
    if np.isinf(b):
        return 1.0 if x > 0 else 0.0
    return x ** (1.0 / b)


def error_ep(s: CellSpreading, g: Signal, gamma: Signal, cfg: ErrorConfig, subdiv: int = 4) -> float:
    """The approximation error ``E_p``, computed along two routes.

    Route one is the definition ``||H S_mu gamma - lambda(mu) S_mu g||_p``;
    route two drops the outer isometric shift and integrates the spreading
    against ``S_nu gamma - B(nu) g`` directly.  The routes must agree to
    1e-6 relative, otherwise :class:`OracleMismatch` is raised.
    """
    if s.alpha != cfg.alpha:
        raise ValueError("spreading alpha and config alpha must agree")
    inst = _Instance(s, g, gamma, cfg, subdiv)
    mu = cfg.mu
    phase = np.exp(-2j * np.pi * (inst.nu1 * mu[1] - inst.nu2 * mu[0]))
    reduced_samples = inst.deviation @ (inst.sigma * phase * inst.w)
    reduced = Signal(g.grid, reduced_samples).norm(cfg.p)

    b_arr = None if cfg.mode == "C2" else inst.A
    lam = lambda_value(s, b_arr, mu, subdiv)
    if mu == (0.0, 0.0):
        h_gam = inst.batch @ (inst.sigma * inst.w)
        direct_samples = h_gam - lam * g.samples
    else:
        tf_mu = TFShift(mu[0], mu[1], 0.5)
        h_gam = apply_channel(s, shift(gamma, tf_mu), subdiv)
        direct_samples = h_gam.samples - lam * shift(g, tf_mu).samples
    direct = Signal(g.grid, direct_samples).norm(cfg.p)

    scale = max(direct, reduced, 1e-300)
    if abs(direct - reduced) / scale > 1e-6:
        raise OracleMismatch(
            f"E_p routes disagree: direct={direct!r} reduced={reduced!r}"
        )
    return direct


def rho_bar_inf(
    g: Signal,
    gamma: Signal,
    s: CellSpreading,
    mode: str = "C2",
    alpha: float = 0.0,
    subdiv: int = 4,
    refine: bool = False,
) -> float:
    """Sup over the support of ``sup_x |S_nu gamma (x) - B(nu) g(x)|``.

    With ``refine=True`` the subcell sampling is doubled until the value
    moves by less than 0.5 %.
    """
    cfg = ErrorConfig(mode=mode, alpha=alpha)
    val = _Instance(s, g, gamma, cfg, subdiv).rho_bar_inf()
    if refine:
        for _ in range(3):
            subdiv *= 2
            new = _Instance(s, g, gamma, cfg, subdiv).rho_bar_inf()
            if abs(new - val) <= 0.005 * max(new, 1e-300):
                return new
            val = new
    return val


def thm2_bound(s: CellSpreading, g: Signal, gamma: Signal, cfg: ErrorConfig, subdiv: int = 4) -> float:
    """The optimal-smoothing bound on ``E_p / ||Sigma||_a``.

    Evaluates ``(rho_bar_inf^(p-2) ||(1 + |B|^2 - 2 Re(A conj B)) chi_U||_{b/p})^(1/p)``.
    For ``b/p < 1`` the same formal expression is used.
    """
    inst = _Instance(s, g, gamma, cfg, subdiv)
    q = np.inf if np.isinf(cfg.b) else cfg.b / cfg.p
    weighted = inst.norm_on_support(inst.R, q)
    return (inst.rho_factor(cfg.p - 2.0) * weighted) ** (1.0 / cfg.p)


def kozek_simplified(s: CellSpreading, gamma: Signal, cfg: ErrorConfig, subdiv: int = 4) -> float:
    """Kozek's bound on ``E_2^2 / ||Sigma||_1^2`` in its simplified form.

    ``2 sin(pi |U| / 4) + 3 sup_U |A_gamma,gamma - 1|``; valid only for the
    plain Weyl symbol (mode C2), p = 2, a = 1, alpha = 0 and a rectangular
    support centered at the origin with measure at most 1.
    """
    if cfg.mode != "C2" or cfg.p != 2.0 or cfg.a != 1.0 or cfg.alpha != 0.0:
        raise DomainError("Kozek bound requires mode C2, p=2, a=1, alpha=0")
    if not s.centered:
        raise DomainError("Kozek bound requires a centered rectangular support")
    measure = s.support_measure
    if measure > 1.0:
        raise DomainError(f"Kozek bound requires |U| <= 1, got {measure}")
    nu1, nu2, _, _ = s.subcells(subdiv)
    auto = ambiguity_on_points(gamma, gamma, nu1, nu2, 0.0)
    eps_gamma = float(np.abs(auto - 1.0).max())
    return 2.0 * math.sin(math.pi * measure / 4.0) + 3.0 * eps_gamma


def general_bound(s: CellSpreading, g: Signal, gamma: Signal, cfg: ErrorConfig) -> float:
    """Coarse Hoelder bound ``2 C |U|^(1/b)`` with ``C = max(||g||_p, ||gamma||_p)``."""
    _require_unit(g, gamma)
    c = max(g.norm(cfg.p), gamma.norm(cfg.p))
    return 2.0 * c * _power_1_over_b(s.support_measure, cfg.b)


def r_inf_bound(s: CellSpreading, g: Signal, gamma: Signal, cfg: ErrorConfig, subdiv: int = 4) -> float:
    """Sup-norm relaxation ``rho_bar_inf^((p-2)/p) R_inf^(1/p) |U|^(1/b)``."""
    inst = _Instance(s, g, gamma, cfg, subdiv)
    r_inf = float(inst.R.max())
    return (
        inst.rho_factor((cfg.p - 2.0) / cfg.p)
        * r_inf ** (1.0 / cfg.p)
        * _power_1_over_b(s.support_measure, cfg.b)
    )


def _fidelities(inst: _Instance):
    # 2-channel fidelity int |A|^2 over U and 1-channel fidelity int Re A over U
    fid2 = float(np.sum(np.abs(inst.A) ** 2) * inst.w)
    fid1 = float(np.sum(np.real(inst.A)) * inst.w)
    return fid2, fid1


def fidelity_bounds(s: CellSpreading, g: Signal, gamma: Signal, cfg: ErrorConfig, subdiv: int = 4):
    """The fidelity-form quantities ``(r1, r2)``.

    ``r1 = rho_bar_inf^((p-2)/p) (|U| - ||A^2 chi_U||_1)^(1/b)`` (smoothing
    by the ambiguity) and ``r2`` its B = 1 counterpart built from the
    1-channel fidelity.  Requires ``b >= p`` and ``R_inf <= 1``; ``r2``
    additionally requires the B = 1 feasibility condition.
    """
    if not (np.isinf(cfg.b) or cfg.b >= cfg.p):
        raise PreconditionFailed("fidelity bounds require b >= p")
    inst_c1 = _Instance(s, g, gamma, ErrorConfig(cfg.p, cfg.a, "C1", cfg.alpha, cfg.mu), subdiv)
    inst_c2 = _Instance(s, g, gamma, ErrorConfig(cfg.p, cfg.a, "C2", cfg.alpha, cfg.mu), subdiv)
    inst = inst_c1 if cfg.mode == "C1" else inst_c2
    if float(inst.R.max()) > 1.0 + 1e-12:
        raise PreconditionFailed("fidelity bounds require R_inf <= 1")
    measure = s.support_measure
    fid2, fid1 = _fidelities(inst_c1)
    exp_p = (cfg.p - 2.0) / cfg.p
    r1 = inst_c1.rho_factor(exp_p) * _power_1_over_b(max(measure - fid2, 0.0), cfg.b)
    if float(np.real(inst_c1.A).min()) < 0.5:
        raise PreconditionFailed("r2 requires inf_U Re A >= 1/2 (B = 1 feasibility)")
    r2 = inst_c2.rho_factor(exp_p) * _power_1_over_b(max(2.0 * (measure - fid1), 0.0), cfg.b)
    return r1, r2


def ambiguity_mass_check(
    g: Signal,
    gamma: Signal,
    r: float,
    U_measure: float,
    alpha: float = 0.0,
    extent: float = 4.0,
    n_grid: int = 256,
):
    """Worst-case weighted ambiguity mass against its exponential bound.

    Computes ``||  |A|^r chi_U ||_1`` with ``U`` the super-level set of
    ``|A|`` of measure ``U_measure`` (the mass-maximizing support) by
    quadrature on a ``n_grid x n_grid`` grid over ``[-extent, extent]^2``,
    and returns ``(lhs, rhs)`` with ``rhs = |U| exp(-|U| r / (2 e))``.

    Valid for ``|U| <= e min(1, 2/r)``.
    """
    if U_measure <= 0:
        raise ValueError("U_measure must be positive")
    limit = math.e * min(1.0, 2.0 / r)
    if U_measure > limit * (1.0 + 1e-12):
        raise DomainError(f"requires |U| <= e*min(1, 2/r) = {limit}")
    step = 2.0 * extent / n_grid
    centers = -extent + (np.arange(n_grid) + 0.5) * step
    m1, m2 = np.meshgrid(centers, centers, indexing="ij")
    mag = np.abs(ambiguity_on_points(g, gamma, m1.ravel(), m2.ravel(), alpha))
    order = np.argsort(mag)[::-1]
    area = step * step
    n_full = int(U_measure // area)
    chosen = mag[order[:n_full]]
    lhs = float(np.sum(chosen**r) * area)
    remainder = U_measure - n_full * area
    if remainder > 0 and n_full < mag.size:
        lhs += float(mag[order[n_full]] ** r * remainder)
    rhs = U_measure * math.exp(-U_measure * r / (2.0 * math.e))
    return lhs, rhs


@dataclass(frozen=True)
class C2Feasibility:
    """Outcome of the B = 1 feasibility test on a spreading support."""

    feasible: bool
    inf_re_ambiguity: float
    measure_ok: bool
    measure: float

    def __bool__(self) -> bool:
        return self.feasible


def c2_feasibility(
    g: Signal,
    gamma: Signal,
    s: CellSpreading,
    alpha: float = 0.0,
    subdiv: int = 4,
) -> C2Feasibility:
    """Whether ``inf_U Re A >= 1/2`` holds on the sampled support.

    Also pre-screens against the necessary condition ``|U| <= 2 e ln 2``,
    below which alone the condition can possibly hold.
    """
    nu1, nu2, _, _ = s.subcells(subdiv)
    vals = np.real(ambiguity_on_points(g, gamma, nu1, nu2, alpha))
    inf_re = float(vals.min())
    measure = s.support_measure
    measure_ok = bool(measure <= C2_MEASURE_LIMIT)
    return C2Feasibility(bool(measure_ok and inf_re >= 0.5), inf_re, measure_ok, measure)


@dataclass(frozen=True)
class NecessarySupportRoot:
    """Largest admissible support size for a target error level."""

    u_measure: float
    saturated: bool


def necessary_u_level(u_measure: float, k: int, p: float, b: float, rho_inf: float) -> float:
    """Left side of the implicit necessary-condition inequality."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    inner = k * u_measure * (1.0 - math.exp(-u_measure / (math.e * k)))
    factor = 1.0 if p == 2.0 else rho_inf ** ((p - 2.0) / p)
    return factor * _power_1_over_b(inner, b)


def necessary_u_bound(delta: float, k: int, p: float = 2.0, b: float = 1.0, rho_bar_inf: float = 1.0) -> NecessarySupportRoot:
    """Largest ``|U| in (0, e]`` whose necessary-condition level stays <= delta.

    Solved by bisection to 1e-10 absolute; the left side is strictly
    increasing in ``|U|`` for finite b.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if np.isinf(b):
        raise DomainError("the implicit inequality is constant in |U| for b = inf")
    level = lambda u: necessary_u_level(u, k, p, b, rho_bar_inf)
    hi = math.e
    if level(hi) <= delta:
        return NecessarySupportRoot(hi, True)
    lo = 0.0
    if level(1e-300) > delta:
        raise NoSolution("no admissible support size")
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if level(mid) <= delta:
            lo = mid
        else:
            hi = mid
    return NecessarySupportRoot(0.5 * (lo + hi), False)


def full_report(s: CellSpreading, g: Signal, gamma: Signal, cfg: ErrorConfig, subdiv: int = 4) -> BoundReport:
    """Evaluate the error and every bound, recording failures per field."""
    report = BoundReport()

    def attempt(name, fn):
        try:
            setattr(report, name, fn())
            return getattr(report, name)
        except Exception as exc:  # recorded, not fatal
            report.errors[name] = f"{type(exc).__name__}: {exc}"
            return None

    inst = _Instance(s, g, gamma, cfg, subdiv)

    def _ep():
        return error_ep(s, g, gamma, cfg, subdiv)

    e_p = attempt("e_p", _ep)
    if e_p is not None:
        report.ratio = e_p / s.norm(cfg.a)

    q = np.inf if np.isinf(cfg.b) else cfg.b / cfg.p
    attempt(
        "thm2_bound",
        lambda: (inst.rho_factor(cfg.p - 2.0) * inst.norm_on_support(inst.R, q)) ** (1.0 / cfg.p),
    )
    attempt("kozek_simplified", lambda: kozek_simplified(s, gamma, cfg, subdiv))
    attempt("general_bound", lambda: general_bound(s, g, gamma, cfg))
    report.rho_bar_inf = inst.rho_bar_inf()
    report.r_inf = float(inst.R.max())
    attempt(
        "r_inf_bound",
        lambda: inst.rho_factor((cfg.p - 2.0) / cfg.p)
        * report.r_inf ** (1.0 / cfg.p)
        * _power_1_over_b(s.support_measure, cfg.b),
    )
    inst_c1 = inst if cfg.mode == "C1" else _Instance(
        s, g, gamma, ErrorConfig(cfg.p, cfg.a, "C1", cfg.alpha, cfg.mu), subdiv
    )
    report.fidelity2, report.fidelity1 = _fidelities(inst_c1)
    feas = c2_feasibility(g, gamma, s, cfg.alpha, subdiv)
    report.c2_feasible = bool(feas)

    exp_p = (cfg.p - 2.0) / cfg.p
    measure = s.support_measure
    if np.isinf(cfg.b) or cfg.b >= cfg.p:
        report.r1 = inst_c1.rho_factor(exp_p) * _power_1_over_b(
            max(measure - report.fidelity2, 0.0), cfg.b
        )
        if feas.feasible:
            inst_c2 = inst if cfg.mode == "C2" else _Instance(
                s, g, gamma, ErrorConfig(cfg.p, cfg.a, "C2", cfg.alpha, cfg.mu), subdiv
            )
            report.r2 = inst_c2.rho_factor(exp_p) * _power_1_over_b(
                max(2.0 * (measure - report.fidelity1), 0.0), cfg.b
            )
        else:
            report.errors["r2"] = "PreconditionFailed: inf_U Re A >= 1/2 does not hold"
    else:
        report.errors["r1"] = "PreconditionFailed: fidelity bounds require b >= p"
        report.errors["r2"] = "PreconditionFailed: fidelity bounds require b >= p"

    k = 1 if cfg.mode == "C1" else 2
    attempt(
        "necessary_level",
        lambda: necessary_u_level(measure, k, cfg.p, cfg.b, report.rho_bar_inf),
    )
    return report
