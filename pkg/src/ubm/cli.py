"""Command-line front end: ``ubm {moments,density,atoms,convolve,verify}``.

Exit codes: 0 success, 2 usage error, 3 numerical failure (including a
failed verification check).
"""

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import boolean, checks, convolution, monotone
from .boolean import BracketFailure, TruncationNotReached, TruncationPolicy
from .monotone import QuadratureNonConvergence
from .ode import StepInstability
from .transforms import DomainError, MomentSequence

SCHEMA_VERSION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

NUMERICAL_ERRORS = (
    BracketFailure,
    TruncationNotReached,
    QuadratureNonConvergence,
    StepInstability,
    FloatingPointError,
)


class UsageError(Exception):
    pass


def _fmt(x):
    return format(float(x), ".17g")


# -- moment-sequence files -------------------------------------------------------


def moments_to_json_obj(m):
    m = np.asarray(m, dtype=complex)
    return {"order": int(m.size), "moments": [[float(v.real), float(v.imag)] for v in m]}


def read_moments(path):
    """Read a moment sequence written as JSON {order, moments} or CSV n,re,im."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        pairs = obj["moments"]
        if len(pairs) != obj.get("order", len(pairs)):
            raise UsageError(f"{path}: order does not match the number of moments")
        return MomentSequence([complex(re, im) for re, im in pairs])
    rows = list(csv.DictReader(io.StringIO(text)))
    rows.sort(key=lambda r: int(r["n"]))
    if [int(r["n"]) for r in rows] != list(range(1, len(rows) + 1)):
        raise UsageError(f"{path}: moment indices must run 1..N")
    return MomentSequence([complex(float(r["re"]), float(r["im"])) for r in rows])


def _emit(text, output):
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _json_dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _csv(header, rows, preamble=()):
    buf = io.StringIO()
    for line in preamble:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k not in ("func",)}
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(cfg.items())}


# -- validation ------------------------------------------------------------------


def _require(cond, message):
    if not cond:
        raise UsageError(message)


def _check_t(t, positive=False):
    _require(math.isfinite(t), f"--t must be finite, got {t}")
    if positive:
        _require(t > 0, f"--t must be > 0, got {t}")
    else:
        _require(t >= 0, f"--t must be >= 0, got {t}")


# -- commands --------------------------------------------------------------------


def cmd_moments(args):
    _check_t(args.t)
    _require(args.order >= 1, f"--order must be >= 1, got {args.order}")
    if args.family == "monotone":
        m = monotone.monotone_moments(args.t, args.order)
    else:
        m = boolean.boolean_moments(args.t, args.order)
    if args.format == "csv":
        rows = [(n, _fmt(v), _fmt(0.0)) for n, v in enumerate(m, 1)]
        return _csv(["n", "re", "im"], rows)
    obj = moments_to_json_obj(m)
    obj.update(schema_version=SCHEMA_VERSION, config=_config(args), family=args.family)
    return _json_dump(obj)


def cmd_density(args):
    _check_t(args.t, positive=True)
    _require(args.samples >= 2, f"--samples must be >= 2, got {args.samples}")
    S = args.samples
    # symmetric midpoint grid on (-pi, pi): theta_{S-1-j} = -theta_j exactly
    thetas = [(2 * j + 1 - S) * math.pi / S for j in range(S)]
    lo, hi = monotone.monotone_support(args.t)
    records = []
    for th in thetas:
        d = monotone.monotone_density(args.t, th)
        unbounded = d == monotone.UNBOUNDED
        records.append({"theta": th, "density": None if unbounded else d, "unbounded": unbounded})
    if args.format == "csv":
        rows = [
            (_fmt(r["theta"]), "" if r["unbounded"] else _fmt(r["density"]), int(r["unbounded"]))
            for r in records
        ]
        pre = [f"support_min={_fmt(lo)}", f"support_max={_fmt(hi)}"]
        return _csv(["theta", "density", "unbounded"], rows, pre)
    return _json_dump(
        {
            "schema_version": SCHEMA_VERSION,
            "config": _config(args),
            "support": {"theta_min": lo, "theta_max": hi},
            "samples": records,
        }
    )


def cmd_atoms(args):
    _check_t(args.t, positive=True)
    _require(0 < args.truncation_mass < 1, f"--truncation-mass must lie in (0, 1), got {args.truncation_mass}")
    atoms = boolean.solve_atoms(args.t, TruncationPolicy(mass_tol=1.0 - args.truncation_mass))
    summary = {"captured_mass": atoms.captured_mass, "truncation_index": atoms.truncation_index}
    if args.format == "csv":
        rows = [(n, _fmt(a), _fmt(x), _fmt(w)) for n, a, x, w in atoms.entries()]
        pre = [f"captured_mass={_fmt(atoms.captured_mass)}", f"truncation_index={atoms.truncation_index}"]
        return _csv(["n", "alpha", "x", "weight"], rows, pre)
    return _json_dump(
        {
            "schema_version": SCHEMA_VERSION,
            "config": _config(args),
            "summary": summary,
            "atoms": [{"n": n, "alpha": a, "x": x, "weight": w} for n, a, x, w in atoms.entries()],
        }
    )


def cmd_convolve(args):
    m1, m2 = read_moments(args.file1), read_moments(args.file2)
    if args.order is not None:
        _require(args.order >= 1, "--order must be >= 1")
        _require(
            args.order <= min(m1.order, m2.order),
            f"--order {args.order} exceeds the input orders ({m1.order}, {m2.order})",
        )
        m1, m2 = MomentSequence(m1.m[: args.order]), MomentSequence(m2.m[: args.order])
    _require(m1.order == m2.order, f"input orders differ ({m1.order} vs {m2.order}); pass --order")
    _require(m1.order <= convolution.MAX_ORDER, f"order must be <= {convolution.MAX_ORDER}")
    fn = convolution.monotone_convolve if args.mode == "monotone" else convolution.boolean_convolve
    out = fn(m1, m2)
    if args.format == "csv":
        rows = [(n, _fmt(v.real), _fmt(v.imag)) for n, v in enumerate(out.m, 1)]
        return _csv(["n", "re", "im"], rows)
    obj = moments_to_json_obj(out.m)
    obj.update(schema_version=SCHEMA_VERSION, config=_config(args), mode=args.mode)
    return _json_dump(obj)


def cmd_verify(args):
    if args.tolerance is not None:
        _require(args.tolerance > 0, "--tolerance must be > 0")
    if args.grid is not None:
        _require(args.grid >= 64 and args.grid % 8 == 0, f"--grid must be a multiple of 8 and >= 64, got {args.grid}")
    results = checks.run(args.suite, args.tolerance, args.grid)
    ok = all(c.passed for c in results)
    if args.format == "csv":
        rows = [(c.name, int(c.passed), _fmt(c.value), _fmt(c.tolerance), c.detail) for c in results]
        text = _csv(["check", "passed", "value", "tolerance", "detail"], rows)
    else:
        text = _json_dump(
            {
                "schema_version": SCHEMA_VERSION,
                "config": _config(args),
                "passed": ok,
                "checks": [c.as_dict() for c in results],
            }
        )
    return text, (0 if ok else EXIT_NUMERICAL)


# -- parser ----------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="ubm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", default=None, help="output path (default: stdout)")

    sp = sub.add_parser("moments", help="closed-form moments of mu_t or nu_t")
    sp.add_argument("family", choices=("monotone", "boolean"))
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--order", type=int, default=10)
    common(sp)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("density", help="density of mu_t on a uniform grid")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--samples", type=int, default=513)
    common(sp)
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("atoms", help="atoms and weights of nu_t")
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--truncation-mass", type=float, default=1 - 1e-6)
    common(sp)
    sp.set_defaults(func=cmd_atoms)

    sp = sub.add_parser("convolve", help="monotone or boolean convolution of two moment files")
    sp.add_argument("file1", type=Path)
    sp.add_argument("file2", type=Path)
    sp.add_argument("--mode", choices=("monotone", "boolean"), required=True)
    sp.add_argument("--order", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_convolve)

    sp = sub.add_parser("verify", help="run cross-validation suites")
    sp.add_argument("--suite", choices=("ode", "semigroup", "quadrature", "fock", "lem", "all"), default="all")
    sp.add_argument("--tolerance", type=float, default=None,
                    help="override the absolute tolerance of agreement checks")
    sp.add_argument("--grid", type=int, default=None,
                    help="finest Fock grid size for the fock suite (default 2048)")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (UsageError, DomainError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"ubm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NUMERICAL_ERRORS as exc:
        print(f"ubm {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    code = 0
    if isinstance(result, tuple):
        result, code = result
    _emit(result, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
