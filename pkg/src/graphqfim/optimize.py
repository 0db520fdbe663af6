"""Seeded particle swarm minimization of ``Tr(F^-1)`` over a parameter box."""

import itertools
from dataclasses import asdict, dataclass, field

import numpy as np

from .dynamics import DynamicsSpec, param_generators_exact
from .errors import OptimizationFailedError, ValidationError
from .metrology import qfim


@dataclass(frozen=True)
class PsoConfig:
    """Swarm hyperparameters.

    Defaults are the usual constriction-coefficient values.  ``bounds`` is a
    sequence of ``(low, high)`` pairs, or ``None`` for ``[-pi, pi]`` on every
    axis.
    """

    swarm_size: int = 50
    iterations: int = 200
    inertia: float = 0.729
    cognitive: float = 1.494
    social: float = 1.494
    bounds: tuple = None
    seed: int = 0

    def __post_init__(self):
        if self.swarm_size < 2:
            raise ValidationError("swarm_size must be at least 2")
        if self.iterations < 0:
            raise ValidationError("iterations must be non-negative")
        if min(self.inertia, self.cognitive, self.social) <= 0:
            raise ValidationError("PSO coefficients must be positive")
        if self.bounds is not None:
            b = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
            if not b or any(hi <= lo for lo, hi in b):
                raise ValidationError("bounds must be non-empty intervals with low < high")
            object.__setattr__(self, "bounds", b)

    def box(self, d):
        if self.bounds is None:
            return np.full(d, -np.pi), np.full(d, np.pi)
        if len(self.bounds) == 1 and d > 1:
            lo, hi = self.bounds[0]
            return np.full(d, lo), np.full(d, hi)
        if len(self.bounds) != d:
            raise ValidationError(f"{len(self.bounds)} bounds for a {d}-dimensional search")
        arr = np.array(self.bounds)
        return arr[:, 0].copy(), arr[:, 1].copy()

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class OptResult:
    best_theta: np.ndarray
    best_value: float
    history: np.ndarray
    evaluations: int
    config: PsoConfig = field(default=None, repr=False)


def pso_minimize(objective, d, cfg=PsoConfig()):
    """Global-best PSO on ``objective: R^d -> R`` (``inf`` marks bad points).

    Positions are clipped to the box and velocities to half its width.  The
    random stream comes from ``numpy.random.default_rng(cfg.seed)`` so runs
    are reproducible.
    """
    lo, hi = cfg.box(d)
    width = hi - lo
    vmax = width / 2
    rng = np.random.default_rng(cfg.seed)

    x = lo + rng.random((cfg.swarm_size, d)) * width
    v = (rng.random((cfg.swarm_size, d)) - 0.5) * width * 0.1
    y = np.array([objective(p) for p in x], dtype=float)
    evaluations = cfg.swarm_size

    pbest_x = x.copy()
    pbest_y = y.copy()
    g = int(np.argmin(pbest_y))
    gbest_x = pbest_x[g].copy()
    gbest_y = pbest_y[g]
    history = [gbest_y]

    for _ in range(cfg.iterations):
        r1 = rng.random(x.shape)
        r2 = rng.random(x.shape)
        v = (
            cfg.inertia * v
            + cfg.cognitive * r1 * (pbest_x - x)
            + cfg.social * r2 * (gbest_x - x)
        )
        v = np.clip(v, -vmax, vmax)
        x = np.clip(x + v, lo, hi)
        y = np.array([objective(p) for p in x], dtype=float)
        evaluations += cfg.swarm_size

        better = y < pbest_y
        pbest_x[better] = x[better]
        pbest_y[better] = y[better]
        g = int(np.argmin(pbest_y))
        if pbest_y[g] < gbest_y:
            gbest_y = pbest_y[g]
            gbest_x = pbest_x[g].copy()
        history.append(gbest_y)

    if not np.isfinite(gbest_y):
        raise OptimizationFailedError("objective was infinite at every sampled point")
    return OptResult(gbest_x, float(gbest_y), np.array(history), evaluations, cfg)


def crb_objective(rho0, ops):
    """``theta -> Tr(F(theta)^-1)``, ``inf`` where the QFIM is singular."""

    def objective(theta):
        res = qfim(rho0, param_generators_exact(DynamicsSpec(ops, theta)))
        return res.crb_trace if res.invertible else np.inf

    return objective


def minimize_crb(rho0, ops, cfg=PsoConfig()):
    """PSO estimate of ``min_theta Tr(F^-1)`` for the dynamics ``ops``."""
    return pso_minimize(crb_objective(rho0, ops), len(ops), cfg)


def grid_scan(objective, lo, hi, points=41):
    """Exhaustive evaluation on a ``points``-per-axis grid.

    Returns ``(best_theta, best_value)``; the reference against which the
    swarm is checked.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    axes = [np.linspace(a, b, points) for a, b in zip(lo, hi)]
    best_v = np.inf
    best_t = None
    for t in itertools.product(*axes):
        val = objective(np.array(t))
        if val < best_v:
            best_v, best_t = val, np.array(t)
    return best_t, float(best_v)


def compare_sun_minima(rho0, families, cfg=PsoConfig()):
    """Minimize ``Tr(F^-1)`` for each family and compare neighbors.

    ``families`` maps a name to an :class:`OperatorSet`, in the order the
    comparison should run (usually increasing ``N``).  The report lists the
    entries in that order, the names sorted by minimum, and for each adjacent
    pair whether ``min[i] <= min[i+1]``.
    """
    entries = []
    for name, ops in families.items():
        res = minimize_crb(rho0, ops, cfg)
        entries.append(
            {
                "family": name,
                "best_value": res.best_value,
                "best_theta": res.best_theta.tolist(),
                "evaluations": res.evaluations,
            }
        )
    verdicts = []
    for a, b in zip(entries, entries[1:]):
        verdicts.append(
            {
                "lhs": a["family"],
                "rhs": b["family"],
                "holds": bool(a["best_value"] <= b["best_value"]),
            }
        )
    order = [e["family"] for e in sorted(entries, key=lambda e: e["best_value"])]
    return {"entries": entries, "sorted": order, "verdicts": verdicts, "config": cfg.to_dict()}
