"""Command-line interface.

Subcommands ``graph``, ``qfim``, ``qfi``, ``fave``, ``cfim``, ``optimize`` and
``reproduce``.  Computation commands accept either flags or ``--job FILE``, a
JSON job description::

    {"graph": {"catalog": "complete", "n": 3},          # or {"edges": "g.txt"}
     "dynamics": {"family": "su2_collective", "axes": ["x", "y", "z"]},
     "theta": [0.1, 0.2, 0.3],                         # or "limit", or
                                                       # {"start", "stop", "points", "axis", "base"}
     "measurement": "bell",                            # or "computational", {"povm": "file.json"}
     "optimize": {"seed": 0, "bounds": [[-0.5, 0.5]]},
     "output": {"format": "json", "path": null}}

Dynamics families: ``su2_collective`` (``axes``), ``su2_local_axis``
(``axis``, optional ``qubits``, ``scale``), ``spin_j`` (``axes``),
``suN_global`` (``N``, ``indices``, ``scale``) and ``suN_embedded`` (same plus
``offset``, an integer or ``"sliding"``).

Exit codes: 0 success, 2 invalid input, 3 singular QFIM (the record is still
written, with ``crb`` null), 4 file I/O failure, 5 optimization failure.
"""

import argparse
import copy
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, figures
from ._config import MAX_QUBITS_ENV
from .dynamics import DynamicsSpec, param_generators_exact
from .errors import (
    DomainError,
    GraphQfimError,
    OptimizationFailedError,
    ParseError,
    ResourceError,
    ValidationError,
)
from .graphs import (
    catalog,
    graph_state_stabilizer,
    read_edge_list,
    stabilizer_generators,
    topological_number,
)
from .measurement import bell_basis, cfim_vs_qfim, computational_basis, load_povm
from .metrology import f_ave, qfi_single, qfim
from .optimize import PsoConfig, minimize_crb
from .sun import AXES, collective_set, local_set, spin_j_set, sun_set

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SINGULAR = 3
EXIT_IO = 4
EXIT_OPTIMIZE = 5

FAMILIES = ("su2_collective", "su2_local_axis", "spin_j", "suN_global", "suN_embedded")


class SingularResult(Exception):
    """Raised after output is written when some QFIM was singular."""


# -- JSON helpers ----------------------------------------------------------


def _plain(obj):
    """Recursively convert numpy values into JSON-ready Python values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if np.isfinite(v) else None
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def dumps(obj):
    """Canonical JSON text; floats use the shortest round-trip repr."""
    return json.dumps(_plain(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


# -- job normalization -------------------------------------------------------


def _default_job():
    return {
        "graph": {"catalog": "complete", "n": 3},
        "dynamics": {"family": "su2_collective", "axes": list(AXES)},
        "theta": "limit",
        "measurement": None,
        "optimize": {},
        "output": {"format": "json", "path": None},
    }


def load_job(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read job file {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, str(path))
    if not isinstance(doc, dict):
        raise ParseError("job file must hold a JSON object", None, str(path))
    job = _default_job()
    for key, val in doc.items():
        if key not in job:
            raise ValidationError(f"unknown job field {key!r}")
        job[key] = val
    return job


def _parse_floats(text):
    try:
        return [float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ValidationError(f"expected a list of numbers, got {text!r}")


def _parse_ints(text):
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ValidationError(f"expected a list of integers, got {text!r}")


def job_from_args(args):
    job = load_job(args.job) if getattr(args, "job", None) else _default_job()
    g = job["graph"]
    if getattr(args, "edges", None):
        g = {"edges": args.edges}
    elif getattr(args, "catalog", None):
        g = {"catalog": args.catalog, "n": args.n if args.n is not None else g.get("n", 4)}
    elif getattr(args, "n", None) is not None and "catalog" in g:
        g = {**g, "n": args.n}
    job["graph"] = g

    dyn = dict(job["dynamics"])
    if getattr(args, "family", None):
        dyn = {"family": args.family}
    for key in ("axes", "axis", "N", "indices", "offset", "scale", "qubits"):
        val = getattr(args, key, None)
        if val is None:
            continue
        if key in ("axes",):
            val = list(val)
        elif key in ("indices", "qubits"):
            val = _parse_ints(val)
        elif key == "offset":
            val = val if val == "sliding" else int(val)
        dyn[key] = val
    job["dynamics"] = dyn

    if getattr(args, "theta", None) is not None:
        job["theta"] = "limit" if args.theta == "limit" else _parse_floats(args.theta)
    if getattr(args, "sweep", None):
        parts = args.sweep.split(":")
        if len(parts) != 4:
            raise ValidationError("--sweep expects START:STOP:POINTS:AXIS")
        base = job["theta"] if isinstance(job["theta"], list) else None
        job["theta"] = {
            "start": float(parts[0]),
            "stop": float(parts[1]),
            "points": int(parts[2]),
            "axis": int(parts[3]),
            "base": base,
        }
    if getattr(args, "measurement", None):
        job["measurement"] = args.measurement
    if getattr(args, "povm", None):
        job["measurement"] = {"povm": args.povm}

    opt = dict(job.get("optimize") or {})
    for key in ("seed", "swarm_size", "iterations"):
        val = getattr(args, key, None)
        if val is not None:
            opt[key] = val
    if getattr(args, "bounds", None):
        lo, hi = _parse_floats(args.bounds.replace(":", " "))
        opt["bounds"] = [[lo, hi]]
    job["optimize"] = opt

    out = dict(job.get("output") or {})
    if getattr(args, "format", None):
        out["format"] = args.format
    if getattr(args, "output", None):
        out["path"] = args.output
    out.setdefault("format", "json")
    out.setdefault("path", None)
    if out["format"] not in ("json", "csv"):
        raise ValidationError(f"output format must be json or csv, got {out['format']!r}")
    job["output"] = out
    return job


def resolve_graph(spec):
    if not isinstance(spec, dict):
        raise ValidationError("graph must be an object with 'catalog' or 'edges'")
    if "edges" in spec:
        return read_edge_list(spec["edges"])
    if "catalog" in spec:
        return catalog(spec["catalog"], int(spec.get("n", 4)))
    raise ValidationError("graph needs 'catalog' or 'edges'")


def resolve_dynamics(spec, n):
    fam = spec.get("family")
    if fam not in FAMILIES:
        raise ValidationError(f"unknown dynamics family {fam!r}; expected one of {FAMILIES}")
    if fam == "su2_collective":
        return collective_set(n, tuple(spec.get("axes", AXES)))
    if fam == "spin_j":
        return spin_j_set(n, tuple(spec.get("axes", AXES)))
    if fam == "su2_local_axis":
        axis = spec.get("axis", "x")
        if axis not in AXES:
            raise ValidationError(f"axis must be one of {AXES}, got {axis!r}")
        return local_set(n, axis, spec.get("qubits"), float(spec.get("scale", 0.5)))
    if "indices" not in spec:
        raise ValidationError(f"{fam} needs generator 'indices'")
    N = int(spec.get("N", 1 << n))
    offset = spec.get("offset", 0) if fam == "suN_embedded" else 0
    if fam == "suN_global" and N != 1 << n:
        raise ValidationError(f"suN_global needs N = 2^n = {1 << n}, got {N}")
    return sun_set(n, N, spec["indices"], offset=offset, scale=float(spec.get("scale", 0.5)))


def theta_points(theta, d):
    """List of ``(theta vector, mode)`` pairs described by the job."""
    if theta == "limit":
        return [(np.zeros(d), "limit")]
    if isinstance(theta, dict):
        pts = int(theta["points"])
        if pts < 2:
            raise ValidationError("a sweep needs at least 2 points")
        axis = int(theta["axis"])
        if not 0 <= axis < d:
            raise ValidationError(f"sweep axis {axis} out of range for {d} parameters")
        base = np.asarray(theta.get("base") or np.zeros(d), dtype=float)
        if base.shape != (d,):
            raise ValidationError(f"sweep base needs {d} entries")
        out = []
        for t in np.linspace(float(theta["start"]), float(theta["stop"]), pts):
            v = base.copy()
            v[axis] = t
            out.append((v, "general"))
        return out
    vec = np.asarray(theta, dtype=float).reshape(-1)
    if vec.shape != (d,):
        raise ValidationError(f"theta has {vec.size} entries, dynamics has {d} operators")
    return [(vec, "general")]


def resolve_measurement(spec, n):
    if spec is None:
        raise ValidationError("this command needs a measurement (bell, computational or a POVM file)")
    if spec == "bell":
        if n != 2:
            raise ValidationError("the Bell measurement needs a 2-qubit state")
        return bell_basis()
    if spec == "computational":
        return computational_basis(n)
    if isinstance(spec, dict) and "povm" in spec:
        return load_povm(spec["povm"])
    raise ValidationError(f"unknown measurement {spec!r}")


# -- output ----------------------------------------------------------------


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def _csv(columns, rows):
    lines = [",".join(columns)]
    for r in rows:
        lines.append(",".join(figures._fmt(v) for v in r))
    return "\n".join(lines) + "\n"


def emit(doc, job, columns=None, rows=None):
    out = job["output"]
    if out["format"] == "csv" and columns is not None:
        _write(_csv(columns, rows), out["path"])
    else:
        _write(dumps(doc), out["path"])


# -- commands --------------------------------------------------------------


def cmd_graph(args):
    if args.edges:
        g = read_edge_list(args.edges)
    else:
        g = catalog(args.catalog or "complete", args.n if args.n is not None else 4)
    doc = {
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "neighborhoods": [sorted(s) for s in g.neighborhoods],
        "stabilizers": [p.label for p in stabilizer_generators(g).generators],
        "topological_number": topological_number(g),
        "isolated_vertices": list(g.isolated),
        "duplicate_neighborhoods": [list(p) for p in g.duplicate_neighborhoods()],
    }
    _write(dumps(doc), args.output)
    return EXIT_OK


def _setup(job):
    g = resolve_graph(job["graph"])
    ops = resolve_dynamics(job["dynamics"], g.n)
    rho = graph_state_stabilizer(g)
    return g, ops, rho


def cmd_qfim(job):
    g, ops, rho = _setup(job)
    records = []
    for theta, mode in theta_points(job["theta"], len(ops)):
        spec = DynamicsSpec(ops, theta, mode)
        res = qfim(rho, param_generators_exact(spec))
        rec = {
            "theta": theta,
            "mode": mode,
            "qfim": res.matrix,
            "rank": res.rank,
            "invertible": res.invertible,
            "crb": res.crb_trace,
            "attainability": res.attainability,
        }
        if not res.invertible:
            rec["null_space"] = res.null_space().T
        records.append(rec)
    d = len(ops)
    cols = [f"theta{j}" for j in range(d)] + [f"F{j}{k}" for j in range(d) for k in range(d)]
    cols += ["rank", "crb", "attainability"]
    rows = [
        list(r["theta"]) + list(np.asarray(r["qfim"]).ravel()) + [r["rank"], r["crb"], r["attainability"]]
        for r in records
    ]
    emit({"job": job, "labels": ops.labels, "records": records}, job, cols, rows)
    if any(not r["invertible"] for r in records):
        raise SingularResult()
    return EXIT_OK


def cmd_qfi(job):
    g, ops, rho = _setup(job)
    values = [qfi_single(rho, h) for h in ops]
    emit(
        {"job": job, "labels": ops.labels, "qfi": values, "n": g.n, "heisenberg": g.n**2},
        job,
        ["label", "qfi"],
        [[lab, v] for lab, v in zip(ops.labels, values)],
    )
    return EXIT_OK


def cmd_fave(job):
    g, ops, rho = _setup(job)
    val = f_ave(rho, ops)
    emit(
        {"job": job, "labels": ops.labels, "fave": val, "n": g.n, "bound": (g.n**2 + 2 * g.n) / 3},
        job,
        ["n", "fave"],
        [[g.n, val]],
    )
    return EXIT_OK


def cmd_cfim(job):
    g, ops, rho = _setup(job)
    povm = resolve_measurement(job["measurement"], g.n)
    records = []
    for theta, mode in theta_points(job["theta"], len(ops)):
        if mode == "limit":
            raise ValidationError("the CFIM needs an explicit theta (outcome statistics are singular at 0)")
        rep = cfim_vs_qfim(rho, DynamicsSpec(ops, theta), povm)
        rep["theta"] = theta
        rep["dropped_outcomes"] = [povm.labels[k] for k in rep["dropped_outcomes"]]
        records.append(rep)
    d = len(ops)
    cols = [f"theta{j}" for j in range(d)] + ["crb_quantum", "crb_classical", "max_abs_difference"]
    rows = [list(r["theta"]) + [r["crb_quantum"], r["crb_classical"], r["max_abs_difference"]] for r in records]
    emit({"job": job, "labels": ops.labels, "outcomes": povm.labels, "records": records}, job, cols, rows)
    return EXIT_OK


def cmd_optimize(job):
    g, ops, rho = _setup(job)
    try:
        cfg = PsoConfig(**job["optimize"])
    except TypeError as exc:
        raise ValidationError(f"bad optimize settings: {exc}")
    res = minimize_crb(rho, ops, cfg)
    doc = {
        "job": job,
        "labels": ops.labels,
        "best_theta": res.best_theta,
        "best_value": res.best_value,
        "evaluations": res.evaluations,
        "history": res.history,
        "config": cfg.to_dict(),
    }
    cols = [f"theta{j}" for j in range(len(ops))] + ["best_value", "evaluations"]
    emit(doc, job, cols, [list(res.best_theta) + [res.best_value, res.evaluations]])
    return EXIT_OK


def cmd_reproduce(args):
    outdir = Path(args.outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create {outdir}: {exc.strerror}") from exc
    names = figures.FIGURES if args.figure == "all" else (args.figure,)
    written = []
    for fig in names:
        for curve in figures.build(fig, seed=args.seed):
            path = outdir / f"{curve.name}.csv"
            try:
                path.write_text(curve.to_csv())
            except OSError as exc:
                raise OSError(f"cannot write {path}: {exc.strerror}") from exc
            written.append(str(path))
    sys.stdout.write("\n".join(written) + "\n")
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _add_graph_flags(p):
    p.add_argument("--catalog", choices=("complete", "chain", "ring", "star", "triangle_pendant", "diamond"))
    p.add_argument("--n", type=int, help="number of vertices (catalog graphs)")
    p.add_argument("--edges", help="edge-list file")


def _add_job_flags(p, theta=True):
    p.add_argument("--job", help="JSON job file; flags override its fields")
    _add_graph_flags(p)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--axes", help="axes for collective or spin-j families, e.g. xyz")
    p.add_argument("--axis", choices=AXES, help="axis for su2_local_axis")
    p.add_argument("--qubits", help="qubits for su2_local_axis, e.g. 0,2")
    p.add_argument("--N", type=int, help="SU(N) dimension")
    p.add_argument("--indices", help="generator indices, e.g. 12,13,14")
    p.add_argument("--offset", help="embedding offset (integer or 'sliding')")
    p.add_argument("--scale", type=float, help="prefactor on SU(N) or local generators")
    if theta:
        p.add_argument("--theta", help="comma-separated values or 'limit'")
        p.add_argument(
            "--sweep",
            help="START:STOP:POINTS:AXIS, other entries from --theta (write --sweep=-1:1:9:0 for a negative start)",
        )
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--output", "-o", help="output file (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphqfim",
        description="Quantum Fisher information of graph states under SU(N) dynamics.",
        epilog=f"Set {MAX_QUBITS_ENV} to change the dense-matrix qubit cap.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="describe a graph and its stabilizers")
    _add_graph_flags(p)
    p.add_argument("--output", "-o")

    p = sub.add_parser("qfim", help="QFIM, rank, Tr(F^-1) and attainability")
    _add_job_flags(p)
    p = sub.add_parser("qfi", help="single-parameter QFI of each operator")
    _add_job_flags(p, theta=False)
    p = sub.add_parser("fave", help="averaged QFI over the operator set")
    _add_job_flags(p, theta=False)

    p = sub.add_parser("cfim", help="classical Fisher information of a measurement")
    _add_job_flags(p)
    p.add_argument("--measurement", choices=("bell", "computational"))
    p.add_argument("--povm", help="POVM JSON file")

    p = sub.add_parser("optimize", help="PSO minimum of Tr(F^-1)")
    _add_job_flags(p, theta=False)
    p.add_argument("--seed", type=int)
    p.add_argument("--swarm-size", dest="swarm_size", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--bounds", help="LOW:HIGH applied to every parameter (write --bounds=-0.5:0.5)")

    p = sub.add_parser("reproduce", help="write the figure datasets as CSV")
    p.add_argument("figure", choices=figures.FIGURES + ("all",))
    p.add_argument("--outdir", default=".")
    p.add_argument("--seed", type=int, default=0)
    return parser


JOB_COMMANDS = {
    "qfim": cmd_qfim,
    "qfi": cmd_qfi,
    "fave": cmd_fave,
    "cfim": cmd_cfim,
    "optimize": cmd_optimize,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "graph":
            return cmd_graph(args)
        if args.command == "reproduce":
            return cmd_reproduce(args)
        job = job_from_args(args)
        return JOB_COMMANDS[args.command](copy.deepcopy(job))
    except SingularResult:
        print("error: QFIM is singular; crb reported as null", file=sys.stderr)
        return EXIT_SINGULAR
    except OptimizationFailedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZE
    except (ValidationError, DomainError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GraphQfimError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
