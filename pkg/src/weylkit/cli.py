"""Command-line interface: run scenario documents and sample functions.

Documents are JSON::

    {"version": 1, "seed": 0,
     "objects": {"name": {"type": "...", ...}, ...},
     "tasks": [{"op": "...", "args": {...}, "tol": 1e-12, "probes": ...}, ...]}

Matrices are row-major nested arrays whose entries are numbers or
``[re, im]`` pairs.  Probe sets are a list of such entries, a grid string
``"START:STOP:N"`` of Python complex literals, or ``"upper:N"`` for ``N``
seeded points in the upper half-plane.

Exit codes: 0 all tasks pass, 2 some task fails, 1 input error.
"""
import argparse
import csv
import datetime
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import equivalence, herglotz, measures, realization, triplets
from ._linalg import SingularityError, norm
from .reports import ScenarioReport

VERSION = 1
DEFAULT_TOL = 1e-10
EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


class DocumentError(Exception):
    """Malformed document, unresolved name or inconsistent dimensions."""


# ---------------------------------------------------------------- parsing

def parse_scalar(v, where="value"):
    if isinstance(v, bool):
        raise DocumentError("%s: booleans are not numbers" % where)
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise DocumentError("%s: expected a number or [re, im], got %r" % (where, v))


def parse_matrix(v, where="matrix", dim=None):
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        m = np.array([[complex(v)]])
    elif isinstance(v, list) and v and all(isinstance(r, list) for r in v):
        rows = [[parse_scalar(x, where) for x in r] for r in v]
        if len({len(r) for r in rows}) != 1 or not rows[0]:
            raise DocumentError("%s: ragged or empty rows" % where)
        m = np.array(rows, dtype=complex)
    else:
        raise DocumentError("%s: expected a nested array, got %r" % (where, v))
    if dim is not None and m.shape != dim:
        raise DocumentError("%s: expected shape %s, got %s" % (where, dim, m.shape))
    return m


def dump_scalar(c):
    c = complex(c)
    return float(c.real) if c.imag == 0 else [float(c.real), float(c.imag)]


def dump_matrix(m):
    return [[dump_scalar(x) for x in row] for row in np.asarray(m)]


def parse_grid(spec, seed=0):
    """Probe points from a grid description (see module docstring)."""
    if isinstance(spec, list):
        return [parse_scalar(v, "probe") for v in spec]
    if not isinstance(spec, str):
        raise DocumentError("probe grid must be a list or a string, got %r" % (spec,))
    parts = spec.split(":")
    try:
        if len(parts) == 2 and parts[0] == "upper":
            return equivalence.upper_grid(int(parts[1]), seed)
        if len(parts) == 3:
            start, stop, count = complex(parts[0]), complex(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError
            return list(np.linspace(start, stop, count))
    except ValueError:
        pass
    raise DocumentError("cannot read grid %r (expected START:STOP:N or upper:N)" % spec)


class Document:
    """Parsed scenario document with lazily built, named objects."""

    def __init__(self, raw, seed=None):
        if not isinstance(raw, dict):
            raise DocumentError("document must be a JSON object")
        if raw.get("version") != VERSION:
            raise DocumentError("unsupported version %r (expected %d)" % (raw.get("version"), VERSION))
        self.raw = raw
        self.seed = int(raw.get("seed", 0) if seed is None else seed)
        self.objects = raw.get("objects", {})
        self.tasks = raw.get("tasks", [])
        if not isinstance(self.objects, dict) or not isinstance(self.tasks, list):
            raise DocumentError("'objects' must be a mapping and 'tasks' a list")
        self._built = {}

    @classmethod
    def load(cls, path, seed=None):
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise DocumentError("cannot read %s: %s" % (path, exc.strerror)) from exc
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError("parse error at line %d, column %d: %s"
                                % (exc.lineno, exc.colno, exc.msg)) from exc
        return cls(raw, seed)

    def get(self, name, types=None):
        if isinstance(name, dict):
            obj = build_object(name, self, "<inline>")
        else:
            if name not in self.objects:
                raise DocumentError("undefined object %r" % (name,))
            if name not in self._built:
                self._built[name] = build_object(self.objects[name], self, name)
            obj = self._built[name]
        if types and not isinstance(obj, types):
            raise DocumentError("object %r has the wrong type for this use" % (name,))
        return obj


def _field(d, key, where, default=None, required=True):
    if key in d:
        return d[key]
    if required and default is None:
        raise DocumentError("%s: missing field %r" % (where, key))
    return default


def _build_measure(d, doc, where):
    dim = int(_field(d, "dim", where))
    atoms = [(float(t), parse_matrix(w, where + ".atoms", (dim, dim)))
             for t, w in _field(d, "atoms", where, [], False)]
    pieces = [(float(a), float(b), parse_matrix(m, where + ".pieces", (dim, dim)))
              for a, b, m in _field(d, "pieces", where, [], False)]
    leb = d.get("lebesgue")
    leb = None if leb is None else parse_matrix(leb, where + ".lebesgue", (dim, dim))
    return measures.MatrixMeasure(dim, tuple(atoms), tuple(pieces), leb)


def _build_herglotz(d, doc, where):
    if "constant" in d:
        return herglotz.HerglotzMatrixFunction.constant(parse_matrix(d["constant"], where))
    dim = int(_field(d, "dim", where))
    opt = {}
    for key in ("C", "D", "S"):
        if key in d:
            opt[key] = parse_matrix(d[key], "%s.%s" % (where, key), (dim, dim))
    sigma = d.get("sigma")
    if sigma is not None:
        sigma = doc.get(sigma, measures.MatrixMeasure) if isinstance(sigma, str) else \
            _build_measure(sigma, doc, where + ".sigma")
    return herglotz.HerglotzMatrixFunction(dim, sigma=sigma, **opt)


def _build_spec(d, doc, where):
    b = parse_matrix(_field(d, "B", where), where + ".B")
    k = d.get("K")
    return herglotz.WeylTransformSpec(b, None if k is None else parse_matrix(k, where + ".K", b.shape))


def _build_base(d, where):
    return triplets.NondenseSymmetric(parse_matrix(_field(d, "A00", where), where + ".A00"),
                                      parse_matrix(_field(d, "A10", where), where + ".A10"))


def _build_model(d, doc, where):
    base = _build_base(d, where)
    g = d.get("gamma")
    return triplets.ordinary_model(base, None if g is None else
                                   parse_matrix(g, where + ".gamma", (base.k, base.k)))


def _build_bt_inf(d, doc, where):
    base = _build_base(d, where)
    k = base.k
    b0 = parse_matrix(d.get("B0", [[0] * k] * k), where + ".B0", (k, k))
    g = parse_matrix(d.get("gamma", np.eye(k).tolist()), where + ".gamma", (k, k))
    f = parse_matrix(d.get("F", [[0] * k] * k), where + ".F", (k, k))
    return triplets.BTInfTriplet(base, b0, base.N @ g, f)


def _build_system(d, doc, where):
    a = parse_matrix(_field(d, "A", where), where + ".A")
    kk = parse_matrix(_field(d, "K", where), where + ".K")
    f = d.get("F")
    return realization.PqsSystem(a, kk, None if f is None else parse_matrix(f, where + ".F"))


class Transform:
    """Named ``z ↦ K*(B - F(z))⁻¹K``."""

    def __init__(self, function, spec):
        self.function, self.spec = function, spec

    def __call__(self, z):
        return herglotz.weyl_transform(self.function, self.spec, z)


def _build_transform(d, doc, where):
    return Transform(doc.get(_field(d, "function", where)), doc.get(_field(d, "spec", where),
                                                                   herglotz.WeylTransformSpec))


_BUILDERS = {"measure": _build_measure, "herglotz": _build_herglotz,
             "transform_spec": _build_spec, "model": _build_model, "bt_inf": _build_bt_inf,
             "system": _build_system, "transform": _build_transform}


def build_object(d, doc, where):
    if not isinstance(d, dict) or "type" not in d:
        raise DocumentError("%s: object needs a 'type'" % where)
    builder = _BUILDERS.get(d["type"])
    if builder is None:
        raise DocumentError("%s: unknown type %r" % (where, d["type"]))
    try:
        return builder(d, doc, where)
    except DocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise DocumentError("%s: %s" % (where, exc)) from exc


def dump_object(obj):
    """JSON-ready description of a built object (inverse of the builders)."""
    if isinstance(obj, measures.MatrixMeasure):
        out = {"type": "measure", "dim": obj.dim,
               "atoms": [[t, dump_matrix(w)] for t, w in obj.atoms],
               "pieces": [[a, b, dump_matrix(m)] for a, b, m in obj.pieces]}
        if obj.has_lebesgue:
            out["lebesgue"] = dump_matrix(obj.lebesgue)
        return out
    if isinstance(obj, herglotz.HerglotzMatrixFunction):
        out = dump_object(obj.sigma)
        return {"type": "herglotz", "dim": obj.dim, "C": dump_matrix(obj.C),
                "D": dump_matrix(obj.D), "S": dump_matrix(obj.S),
                "sigma": {k: v for k, v in out.items()}}
    if isinstance(obj, herglotz.WeylTransformSpec):
        return {"type": "transform_spec", "B": dump_matrix(obj.B), "K": dump_matrix(obj.K)}
    if isinstance(obj, realization.PqsSystem):
        return {"type": "system", "A": dump_matrix(obj.A), "K": dump_matrix(obj.K),
                "F": dump_matrix(obj.F)}
    if isinstance(obj, triplets.BTInfTriplet):
        b = obj.base
        return {"type": "bt_inf", "A00": dump_matrix(b.A00), "A10": dump_matrix(b.A10),
                "B0": dump_matrix(obj.B0), "gamma": dump_matrix(b.N.conj().T @ obj.gamma),
                "F": dump_matrix(obj.F)}
    if isinstance(obj, triplets.OrdinaryTriplet) and obj.gamma is not None:
        b = obj.base
        return {"type": "model", "A00": dump_matrix(b.A00), "A10": dump_matrix(b.A10),
                "gamma": dump_matrix(b.N.conj().T @ obj.gamma)}
    raise TypeError("cannot serialise %r" % type(obj).__name__)


# ------------------------------------------------------------------ tasks

def _evaluator(obj):
    """Point evaluator for anything with a matrix value at ``z``."""
    if isinstance(obj, herglotz.HerglotzMatrixFunction):
        return obj
    if isinstance(obj, realization.PqsSystem):
        return obj
    if isinstance(obj, Transform):
        return obj
    if isinstance(obj, triplets.DualPairTriplet):
        return obj.weyl_function
    raise DocumentError("object cannot be evaluated at points")


def _side(doc, d):
    model = doc.get(d["model"], triplets.OrdinaryTriplet) if "model" in d else None
    weyl = doc.get(d["weyl"], herglotz.HerglotzMatrixFunction) if "weyl" in d else None
    spec = doc.get(_field(d, "spec", "side"), herglotz.WeylTransformSpec)
    return equivalence.PipelineSide(weyl, spec, model)


def _pair(doc, args):
    return (doc.get(args["f1"]), doc.get(args["spec1"], herglotz.WeylTransformSpec),
            doc.get(args["f2"]), doc.get(args["spec2"], herglotz.WeylTransformSpec))


def task_momentum_golden(doc, args, tol, probes):
    return equivalence.momentum_golden(int(args.get("k", 2)), probes, tol, doc.seed)


def task_basic_lemma(doc, args, tol, probes):
    return herglotz.basic_lemma_check(*_pair(doc, args), probes, tol)


def task_full_equality(doc, args, tol, probes):
    lower = parse_grid(_field(args, "lower", "full_equality"), doc.seed)
    return herglotz.full_equality_check(*_pair(doc, args), probes, lower, tol)


def task_weak_derivative(doc, args, tol, probes):
    return herglotz.weak_derivative_check(doc.get(args["f1"]), doc.get(args["f2"]),
                                          float(args["t0"]), args.get("heights", [0.1, 0.05, 0.025]),
                                          tol)


def task_herglotz_probe(doc, args, tol, probes):
    return herglotz.herglotz_probe_check(_evaluator(doc.get(args["f"])), probes, doc.seed, tol)


def task_counterexample(doc, args, tol, probes):
    m1 = doc.get(args["m1"], herglotz.HerglotzMatrixFunction)
    b1 = parse_matrix(args.get("b1", np.zeros((m1.dim, m1.dim)).tolist()), "b1", (m1.dim, m1.dim))
    ce = equivalence.construct_counterexample(m1, b1)
    return equivalence.counterexample_report(ce, probes, tol, seed=doc.seed)


def task_uniqueness(doc, args, tol, probes):
    lower = args.get("lower")
    lower = parse_grid(lower, doc.seed) if lower is not None else None
    window = tuple(float(x) for x in args.get("window", (-10.0, 10.0)))
    rep = equivalence.uniqueness_pipeline(_side(doc, args["side1"]), _side(doc, args["side2"]),
                                          probes, args.get("case", "a1"), tol, window, lower,
                                          args.get("t0"))
    return rep


def task_similarity(doc, args, tol, probes):
    s1 = doc.get(args["s1"], realization.PqsSystem)
    s2 = doc.get(args["s2"], realization.PqsSystem)
    rep = ScenarioReport("similarity")
    u = realization.decide_unitary_similarity(s1, s2, tol)
    rep.flag("equivalent", u is not None)
    if u is not None:
        res = realization.verify_similarity(s1, s2, u)
        rep.le("unitarity", res.unitarity, tol)
        rep.le("K", res.K, tol)
        rep.le("A", res.A, tol)
        rep.le("F", res.F, tol)
    return rep


def task_triplet_identities(doc, args, tol, probes):
    t = doc.get(args["triplet"], triplets.DualPairTriplet)
    rep = ScenarioReport("triplet_identities")
    rep.le("green", t.green_residual(), tol)
    rep.le("joint_kernel", t.joint_kernel_residual(), tol)
    gap = 0.0
    for z in probes:
        gap = max(gap, norm(t.weyl_function(z) - triplets.DualPairTriplet.weyl_function(t, z)))
    rep.le("weyl_closed_vs_relation", gap, tol)
    return rep


def task_spectral_measure(doc, args, tol, probes):
    h = parse_matrix(args["H"], "H")
    sm = measures.spectral_measure(h)
    rep = ScenarioReport("spectral_measure")
    recon = sum((t * w for t, w in sm.atoms), np.zeros_like(h))
    rep.le("reconstruction", norm(recon - h), tol)
    rep.le("total", norm(sm.total_atomic_mass() - np.eye(h.shape[0])), tol)
    rep.le("projections", max(norm(w @ w - w) for _, w in sm.atoms), tol)
    return rep


def task_stieltjes(doc, args, tol, probes):
    f = _evaluator(doc.get(args["f"]))
    window = tuple(float(x) for x in args["window"])
    heights = args.get("heights", [0.1, 0.05, 0.025, 0.0125])
    est = measures.stieltjes_invert(measures.imag_sampler(f), window, heights, tol)
    rep = ScenarioReport("stieltjes")
    rep.flag("converged", est.converged, "extrapolation error %.3e" % est.error)
    if "expected" in args:
        expect = parse_matrix(args["expected"], "expected", est.mass.shape)
        rep.le("mass", norm(est.mass - expect) / max(1.0, norm(expect)), tol)
    rep.data["atoms"] = len(est.atoms)
    return rep


TASKS = {"momentum_golden": task_momentum_golden, "basic_lemma": task_basic_lemma,
         "full_equality": task_full_equality, "weak_derivative": task_weak_derivative,
         "herglotz_probe": task_herglotz_probe, "counterexample": task_counterexample,
         "uniqueness": task_uniqueness, "similarity": task_similarity,
         "triplet_identities": task_triplet_identities,
         "spectral_measure": task_spectral_measure, "stieltjes": task_stieltjes}


def _resolve(doc, default_tol):
    """Validate every task and object up front so input errors exit with 1."""
    jobs = []
    for i, task in enumerate(doc.tasks):
        where = "task %d" % i
        if not isinstance(task, dict) or "op" not in task:
            raise DocumentError("%s: needs an 'op'" % where)
        op = task["op"]
        if op not in TASKS:
            raise DocumentError("%s: unknown op %r" % (where, op))
        args = task.get("args", {})
        for key, value in args.items():
            if isinstance(value, str) and key in _NAME_KEYS:
                doc.get(value)
            if isinstance(value, dict) and key in ("side1", "side2"):
                for sub in ("model", "weyl", "spec"):
                    if sub in value:
                        doc.get(value[sub])
        tol = float(task.get("tol", default_tol))
        probes = parse_grid(task.get("probes", "upper:20"), doc.seed)
        expect = task.get("expect", "pass")
        if expect not in ("pass", "fail"):
            raise DocumentError("%s: 'expect' must be 'pass' or 'fail'" % where)
        jobs.append((i, op, args, tol, probes, expect, task.get("expect_failed", [])))
    return jobs


_NAME_KEYS = {"f", "f1", "f2", "spec1", "spec2", "m1", "s1", "s2", "triplet"}


def _header():
    stamp = datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return "# generated %s" % stamp


def _run_job(doc, job):
    i, op, args, tol, probes, expect, expect_failed = job
    try:
        rep = TASKS[op](doc, args, tol, probes)
    except DocumentError:
        raise
    except (SingularityError, ValueError, KeyError) as exc:
        rep = ScenarioReport(op)
        rep.flag("error", False, "%s: %s" % (type(exc).__name__, exc))
    if expect == "pass":
        ok = rep.verdict
    else:
        failed = {c.label for c in rep.failed()}
        ok = (not rep.verdict) and set(expect_failed) <= failed
    return rep, ok


def run(document, out_dir, tol=None, seed=None):
    """Execute a document; returns an exit code."""
    try:
        doc = Document.load(document, seed)
        jobs = _resolve(doc, DEFAULT_TOL if tol is None else tol)
    except DocumentError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summary = []
    all_ok = True
    for job in jobs:
        try:
            rep, ok = _run_job(doc, job)
        except DocumentError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return EXIT_INPUT
        i, op, _, _, _, expect, _ = job
        all_ok &= ok
        lines = [_header(), "task = %d" % i, "op = %s" % op, "expect = %s" % expect,
                 "outcome = %s" % ("pass" if ok else "fail")] + rep.lines()
        name = "%02d_%s.txt" % (i, op)
        (out / name).write_text("\n".join(lines) + "\n")
        summary.append("%s = %s" % (name, "pass" if ok else "fail"))
    (out / "summary.txt").write_text("\n".join([_header()] + summary) + "\n")
    return EXIT_OK if all_ok else EXIT_FAIL


def sample(document, name, grid, out_path, seed=None):
    """Write ``re(z), im(z), status`` and the row-major ``re/im`` entries per grid point.

    Points where the evaluation is singular get ``status = 1`` and ``nan``
    entries; the exit code stays 0.
    """
    try:
        doc = Document.load(document, seed)
        f = _evaluator(doc.get(name))
        points = parse_grid(grid, doc.seed)
    except DocumentError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    rows, shape = [], None
    for z in points:
        try:
            v = np.asarray(f(z), dtype=complex)
            shape = v.shape
            rows.append((z, 0, v))
        except (SingularityError, np.linalg.LinAlgError):
            rows.append((z, 1, None))
    if shape is None:
        shape = (1, 1)
    with open(out_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        head = ["re_z", "im_z", "status"]
        for r in range(shape[0]):
            for c in range(shape[1]):
                head += ["m%d%d_re" % (r, c), "m%d%d_im" % (r, c)]
        w.writerow(head)
        for z, status, v in rows:
            vals = [np.nan] * (2 * shape[0] * shape[1]) if v is None else \
                [x for e in v.ravel() for x in (e.real, e.imag)]
            w.writerow(["%.16e" % z.real, "%.16e" % z.imag, status] + ["%.16e" % x for x in vals])
    return EXIT_OK


def bundled_scenario(name):
    return resources.files("weylkit").joinpath("scenarios", "%s.scenario" % name)


def bundled_scenarios():
    folder = resources.files("weylkit").joinpath("scenarios")
    return sorted(p.name[: -len(".scenario")] for p in folder.iterdir()
                  if p.name.endswith(".scenario"))


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def main(argv=None):
    """Entry point.  Grids starting with ``-`` need the ``--grid=...`` form."""
    parser = _Parser(prog="weylkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p_run = sub.add_parser("run", help="execute a scenario document")
    p_run.add_argument("document")
    p_run.add_argument("--out", required=True)
    p_sample = sub.add_parser("sample", help="tabulate an object on a grid")
    p_sample.add_argument("document")
    p_sample.add_argument("--object", required=True)
    p_sample.add_argument("--grid", required=True)
    p_sample.add_argument("--out", required=True)
    p_gold = sub.add_parser("golden", help="run a bundled scenario")
    p_gold.add_argument("name", choices=bundled_scenarios())
    p_gold.add_argument("--out", required=True)
    for p in (p_run, p_sample, p_gold):
        p.add_argument("--tol", type=float, default=None,
                       help="default tolerance for tasks without their own 'tol'")
        p.add_argument("--seed", type=int, default=None)
    args = parser.parse_args(argv)
    if args.command == "run":
        return run(args.document, args.out, args.tol, args.seed)
    if args.command == "sample":
        return sample(args.document, args.object, args.grid, args.out, args.seed)
    with resources.as_file(bundled_scenario(args.name)) as path:
        return run(path, args.out, args.tol, args.seed)


if __name__ == "__main__":
    sys.exit(main())
