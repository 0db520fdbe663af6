"""Figure datasets: each figure is a list of curves written as CSV.

A :class:`Curve` carries a metadata header (graph, dynamics, theta grid,
seed) and a rectangular table.  Everything is deterministic.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .dynamics import DynamicsSpec, param_generators_exact
from .graphs import catalog, graph_state_stabilizer
from .measurement import bell_basis, cfim_vs_qfim
from .metrology import f_ave, qfi_single, qfim, qfim_limit, search_commuting_sets
from .optimize import PsoConfig, minimize_crb
from .sun import collective_set, collective_spin, local_set, spin_j_operators, sun_set

FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig6")

# documented generator choices (0-based, scale 1/2 unless noted)
SU2_SINGLE_INDEX = 0
FIG3_FIXED = (0.4, -0.3)
FIG4_SUBSETS = {3: (35, 12, 51), 4: (0, 121, 240, 2)}
FIG5_FAMILIES = {
    2: {"su2": ("x", "z"), "su4": (11, 13)},
    3: {"su2": ("x", "y", "z"), "su4": (12, 13, 14), "su8": (35, 12, 51)},
}
FIG5_BOUNDS = ((-0.5, 0.5),)


@dataclass
class Curve:
    name: str
    columns: list
    rows: list
    header: dict = field(default_factory=dict)

    def to_csv(self):
        lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in self.header.items()]
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"


def _fmt(v):
    if v is None:
        return "nan"
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % v


def _crb(res):
    return res.crb_trace if res.invertible else None


def fig2(ns=range(2, 7)):
    """Single-parameter QFI on complete graphs versus ``n``."""
    half, spinj, sun = [], [], []
    for n in ns:
        rho = graph_state_stabilizer(catalog("complete", n))
        qx, qy, qz = (qfi_single(rho, collective_spin(n, a)) for a in "xyz")
        half.append([n, qx, qy, qz, n, n * n])
        spinj.append([n, qfi_single(rho, spin_j_operators(1 << n)[1]), n * n])
        lam = sun_set(n, 1 << n, [SU2_SINGLE_INDEX], scale=1.0)[0]
        sun.append([n, qfi_single(rho, lam), n])
    meta = {"graph": "complete", "theta": "single parameter, theta-independent"}
    return [
        Curve(
            "fig2_spin_half",
            ["n", "qfi_jx", "qfi_jy", "qfi_jz", "sql", "heisenberg"],
            half,
            {**meta, "dynamics": "collective J_a = sum_j sigma_j^a / 2"},
        ),
        Curve(
            "fig2_spin_j",
            ["n", "qfi_sy", "heisenberg"],
            spinj,
            {**meta, "dynamics": "spin-(2^n-1)/2 S_y on the full register"},
        ),
        Curve(
            "fig2_sun",
            ["n", "qfi_lambda", "sql"],
            sun,
            {**meta, "dynamics": f"SU(2^n) generator {SU2_SINGLE_INDEX}, scale 1"},
        ),
    ]


def _sweep_curve(name, rho, ops, thetas, fixed, header):
    rows = []
    for t in thetas:
        res = qfim(rho, param_generators_exact(DynamicsSpec(ops, (t, *fixed))))
        rows.append([t, _crb(res), res.rank])
    return Curve(name, ["theta1", "crb", "rank"], rows, header)


def fig3(points=50):
    """``Tr(F^-1)`` along a ``theta_1`` sweep for three commuting families on
    the 3-qubit complete graph."""
    rho = graph_state_stabilizer(catalog("complete", 3))
    thetas = np.linspace(-np.pi, np.pi, points)
    grid = {"theta1": [-np.pi, np.pi, points], "theta2_theta3": list(FIG3_FIXED)}
    curves = [
        _sweep_curve(
            "fig3_local_x",
            rho,
            local_set(3, "x"),
            thetas,
            FIG3_FIXED,
            {"graph": "complete n=3", "dynamics": "sigma_x/2 on each qubit", "grid": grid, "expected": 3},
        )
    ]
    for N, offset, target in ((4, "sliding", 11 / 3), (8, 0, 12.0)):
        found = search_commuting_sets(rho, 3, N, offset=offset, scale=0.5, target=target)
        pick = found["match"] or (found["hits"][0] if found["hits"] else None)
        header = {
            "graph": "complete n=3",
            "dynamics": f"SU({N}) generators x 1/2, offset {offset}",
            "grid": grid,
            "expected": target,
            "target_matched": found["match"] is not None,
            "commuting_invertible_subsets": len(found["hits"]),
        }
        if pick is None:
            curves.append(Curve(f"fig3_su{N}", ["theta1", "crb", "rank"], [], header))
            continue
        header["indices"] = pick["indices"]
        ops = sun_set(3, N, pick["indices"], offset=offset, scale=0.5)
        curves.append(_sweep_curve(f"fig3_su{N}", rho, ops, thetas, FIG3_FIXED, header))
    return curves


def fig4(ns=range(2, 7)):
    """Averaged QFI as an entanglement witness, and its SU(2^n) invariance."""
    witness = []
    for n in ns:
        j = collective_set(n)
        fc = f_ave(graph_state_stabilizer(catalog("complete", n)), j)
        fl = f_ave(graph_state_stabilizer(catalog("chain", n)), j)
        witness.append([n, fc, fl, (n * n + 2 * n) / 3, n])
    curves = [
        Curve(
            "fig4_witness",
            ["n", "fave_complete", "fave_chain", "max_bound", "sql"],
            witness,
            {"dynamics": "collective J_x, J_y, J_z", "theta": "limit"},
        )
    ]
    classes = {3: ("chain", "complete", "ring"), 4: ("chain", "star", "triangle_pendant", "ring", "diamond", "complete")}
    for n, names in classes.items():
        idx = FIG4_SUBSETS[n]
        ops = sun_set(n, 1 << n, idx, scale=0.5)
        rows = []
        for name in names:
            rho = graph_state_stabilizer(catalog(name, n))
            res = qfim_limit(rho, ops)
            rows.append([name, f_ave(rho, collective_set(n)), f_ave(rho, ops), _crb(res)])
        curves.append(
            Curve(
                f"fig4_classes_n{n}",
                ["graph", "fave_collective", "fave_sun", "crb_sun_limit"],
                rows,
                {"dynamics": f"SU({1 << n}) generators {list(idx)} x 1/2", "theta": "limit"},
            )
        )
    return curves


def fig5_families(n):
    fams = {}
    for name, sel in FIG5_FAMILIES[n].items():
        if name == "su2":
            fams[name] = collective_set(n, sel)
        else:
            N = int(name[2:])
            offset = "sliding" if (1 << n) != N else 0
            fams[name] = sun_set(n, N, sel, offset=offset, scale=0.5)
    return fams


def fig5(seed=0):
    """PSO minima of ``Tr(F^-1)`` per dynamics family."""
    cfg = PsoConfig(bounds=FIG5_BOUNDS, seed=seed)
    curves = []
    for n in (2, 3):
        rho = graph_state_stabilizer(catalog("complete", n))
        rows = []
        for name, ops in fig5_families(n).items():
            res = minimize_crb(rho, ops, cfg)
            rows.append([name, res.best_value, " ".join("%.17g" % t for t in res.best_theta), res.evaluations])
        curves.append(
            Curve(
                f"fig5_n{n}",
                ["family", "min_crb", "best_theta", "evaluations"],
                rows,
                {
                    "graph": f"complete n={n}",
                    "dynamics": {k: list(v) for k, v in FIG5_FAMILIES[n].items()},
                    "pso": cfg.to_dict(),
                    "seed": seed,
                },
            )
        )
    return curves


def fig6(points=31):
    """Bell-measurement CFIM against the QFIM for three collective pairs."""
    rho = graph_state_stabilizer(catalog("complete", 2))
    povm = bell_basis()
    ts = np.logspace(-3, 0, points)
    curves = []
    for axes in (("x", "y"), ("x", "z"), ("y", "z")):
        ops = collective_set(2, axes)
        rows = []
        for t in ts:
            rep = cfim_vs_qfim(rho, DynamicsSpec(ops, (t, t)), povm)
            rows.append([t, rep["crb_quantum"], rep["crb_classical"], rep["max_abs_difference"]])
        curves.append(
            Curve(
                f"fig6_j{axes[0]}_j{axes[1]}",
                ["theta", "crb_quantum", "crb_classical", "max_abs_difference"],
                rows,
                {
                    "graph": "complete n=2",
                    "dynamics": f"theta (J_{axes[0]} + J_{axes[1]})",
                    "measurement": "bell",
                    "grid": {"logspace": [-3, 0, points]},
                },
            )
        )
    return curves


def build(figure, seed=0):
    if figure not in FIGURES:
        raise KeyError(figure)
    if figure == "fig5":
        return fig5(seed)
    return globals()[figure]()
