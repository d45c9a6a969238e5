"""Command-line front end.

Every subcommand prints a JSON run report to stdout: the command, the input
and output files, a list of (name, pass, defect) checks, and a
command-specific result payload.  Dilation subcommands always embed a
verification check; an unverified dilation is never emitted.

Exit codes: 0 success with all checks passing, 1 usage or I/O error,
2 validation or verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import (
    core,
    entropy as entropy_mod,
    env_dilation,
    matrices,
    sinkhorn as sinkhorn_mod,
)
from .coarse_grain import Partition, RightInverse, coarse_grain, uniform_dilation, uniform_right_inverse
from .core import EXACT, FLOAT, ProbVec, StochMatrix
from .errors import BistochError, DemoMismatch


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(value):
    """Report formatting: 12 significant digits for floats, p/q for rationals."""
    if isinstance(value, Fraction):
        return str(value) if value.denominator > 1 else value.numerator
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.12g}")
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    return value


def _fmt_vector(p):
    return [_fmt(v) for v in p.a]


def _fmt_matrix(M):
    return [[_fmt(v) for v in row] for row in M.a]


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_matrix(path, mode=None):
    M = core.matrix_from_json(_load_json(path))
    return _convert(M, mode)


def _load_vector(path, mode=None):
    p = core.vector_from_json(_load_json(path))
    if mode == FLOAT and p.mode == EXACT:
        return p.to_float()
    if mode == EXACT and p.mode == FLOAT:
        return ProbVec(p.a, mode=EXACT)
    return p


def _convert(M, mode):
    if mode is None or M.mode == mode:
        return M
    if mode == FLOAT:
        return M.to_float()
    return StochMatrix(M.a, mode=EXACT)


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


class Report:
    def __init__(self, command, inputs):
        self.body = {
            "command": command,
            "inputs": list(inputs),
            "outputs": [],
            "checks": [],
            "result": {},
        }

    def check(self, name, passed, defect=0):
        self.body["checks"].append({"name": name, "pass": bool(passed), "defect": _fmt(defect)})
        return bool(passed)

    def output(self, path):
        self.body["outputs"].append(path)

    @property
    def ok(self):
        return all(c["pass"] for c in self.body["checks"])

    def emit(self):
        json.dump(self.body, sys.stdout, indent=1)
        sys.stdout.write("\n")
        return 0 if self.ok else 2


def _emit_matrix(report, M, key, out):
    payload = core.matrix_to_json(M)
    if out:
        _write_json(out, payload)
        report.output(out)
    else:
        report.body["result"][key] = payload


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def cmd_validate(args):
    M = _load_matrix(args.matrix, args.mode)
    rep = core.validate(M, args.tol)
    report = Report("validate", [args.matrix])
    report.body["result"] = {
        "left": rep.left,
        "right": rep.right,
        "bi": rep.bi,
        "irreducible": rep.irreducible,
        "max_column_defect": _fmt(rep.max_column_defect),
        "max_row_defect": _fmt(rep.max_row_defect),
    }
    return report.emit()


def cmd_fixed_point(args):
    T = _load_matrix(args.matrix, args.mode)
    res = core.fixed_point(T)
    report = Report("fixed-point", [args.matrix])
    report.body["result"] = {
        "representative": _fmt_vector(res.representative),
        "face_dimension": res.face_dimension,
        "is_unique": res.is_unique,
        "basis": [[_fmt(v) for v in b] for b in res.basis],
    }
    resid = np.max(np.abs(T.to_float().a @ res.representative.to_float().a - res.representative.to_float().a))
    report.check("fixed_point_residual", resid <= 1e-10, resid)
    return report.emit()


def cmd_apply(args):
    T = _load_matrix(args.matrix, args.mode)
    p = _load_vector(args.vector, args.mode or T.mode)
    q = core.apply(T, p)
    report = Report("apply", [args.matrix, args.vector])
    report.body["result"] = {"image": _fmt_vector(q)}
    return report.emit()


def cmd_iterate(args):
    T = _load_matrix(args.matrix, args.mode)
    p = _load_vector(args.vector, args.mode or T.mode)
    trajectory, converged = core.iterate(T, p, args.steps)
    report = Report("iterate", [args.matrix, args.vector])
    report.body["result"] = {
        "steps": args.steps,
        "converged": converged,
        "final": _fmt_vector(trajectory[-1]),
        "trajectory": [_fmt_vector(q) for q in trajectory],
    }
    return report.emit()


def cmd_coarse_grain(args):
    S = _load_matrix(args.matrix, args.mode)
    partition = Partition.from_json(_load_json(args.partition))
    if args.right_inverse:
        Y = RightInverse(partition=partition, matrix=_load_matrix(args.right_inverse, S.mode))
        inputs = [args.matrix, args.partition, args.right_inverse]
    else:
        Y = uniform_right_inverse(partition, mode=S.mode)
        inputs = [args.matrix, args.partition]
    T = coarse_grain(S, partition, Y)
    report = Report("coarse-grain", inputs)
    rep = core.validate(T)
    report.check("left_stochastic", rep.left, rep.max_column_defect)
    _emit_matrix(report, T, "matrix", args.out)
    return report.emit()


def cmd_dilate(args):
    T = _load_matrix(args.matrix, args.mode)
    report = Report(f"dilate {args.kind}", [args.matrix])
    if args.kind == "uniform":
        if args.vec:
            p = _load_vector(args.vec, EXACT)
            report.body["inputs"].append(args.vec)
        else:
            p = core.fixed_point(_convert(T, EXACT)).representative
        dil = uniform_dilation(_convert(T, EXACT), p)
        report.body["result"]["partition"] = dil.partition.to_json()
        report.check("bi_stochastic", dil.checks["bi_stochastic"])
        report.check("coarse_grain_roundtrip", dil.checks["coarse_grain_roundtrip"])
        _emit_matrix(report, dil.matrix, "matrix", args.out)
    elif args.kind == "noisy":
        E = env_dilation.noisy_dilation(T)
        rep = core.validate(E.matrix)
        report.check("bi_stochastic", rep.bi, max(rep.max_column_defect, rep.max_row_defect))
        extracted = env_dilation.extract_dilated(E.matrix, 0)
        if T.mode == EXACT:
            report.check("extract_dilated == input", extracted == T)
        else:
            defect = np.max(np.abs(extracted.a - T.a))
            report.check("extract_dilated == input", defect <= 1e-12, defect)
        report.check("marginal_identity", env_dilation.verify_env_dilation(T, E))
        _emit_matrix(report, E.matrix, "matrix", args.out)
    else:  # unistochastic
        dil = env_dilation.unistochastic_dilation(_convert(T, FLOAT))
        ortho = dil.orthogonality_defect()
        report.check("orthogonal", ortho <= 1e-12, ortho)
        rep = core.validate(dil.matrix, 1e-12)
        report.check("bi_stochastic", rep.bi, max(rep.max_column_defect, rep.max_row_defect))
        defect = np.max(np.abs(env_dilation.extract_dilated(dil.matrix, 0).a - T.to_float().a))
        report.check("extract_dilated == input", defect <= 1e-12, defect)
        _emit_matrix(report, dil.matrix, "matrix", args.out)
    return report.emit()


def cmd_extract(args):
    R = _load_matrix(args.matrix, args.mode)
    T = env_dilation.extract_dilated(R, args.zero_index)
    report = Report("extract", [args.matrix])
    rep = core.validate(T)
    report.check("left_stochastic", rep.left, rep.max_column_defect)
    _emit_matrix(report, T, "matrix", args.out)
    return report.emit()


def cmd_verify_dilation(args):
    T = _load_matrix(args.matrix, args.mode)
    R = _load_matrix(args.dilation, args.mode)
    if args.rho:
        rho = _load_vector(args.rho, T.mode)
        inputs = [args.matrix, args.dilation, args.rho]
    else:
        rho = ProbVec.point_mass(R.rows // T.rows, 0, mode=T.mode)
        inputs = [args.matrix, args.dilation]
    E = env_dilation.EnvDilation(env_size=rho.n, rho=rho, matrix=R)
    report = Report("verify-dilation", inputs)
    report.check("marginal_identity", env_dilation.verify_env_dilation(T, E, trials=args.trials))
    return report.emit()


def cmd_entropy(args):
    p = _load_vector(args.vec, args.mode)
    report = Report("entropy", [args.vec])
    report.body["result"] = {"entropy": _fmt(entropy_mod.shannon_entropy(p))}
    return report.emit()


def cmd_entropy_region(args):
    T = _load_matrix(args.matrix, FLOAT)
    n = T.rows
    anchor = ProbVec.uniform(n)
    directions = [ProbVec.point_mass(n, k) for k in range(n)]
    points = entropy_mod.region_boundary_scan(T, anchor, directions, resolution=args.grid)
    report = Report("entropy-region", [args.matrix])
    header = "t," + ",".join(f"p{k}" for k in range(n)) + ",H(p),H(Tp)"
    lines = [header]
    Tf = T.a
    for q in directions:
        for k in range(args.grid + 1):
            t = k / args.grid
            pt = (1.0 - t) * anchor.a + t * q.a
            h_p = entropy_mod.shannon_entropy(pt)
            h_tp = entropy_mod.shannon_entropy(Tf @ pt)
            row = [f"{t:.12g}"] + [f"{v:.12g}" for v in pt] + [f"{h_p:.12g}", f"{h_tp:.12g}"]
            lines.append(",".join(row))
    csv = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(csv)
        report.output(args.out)
    else:
        report.body["result"]["csv"] = csv
    report.body["result"]["boundary"] = [
        {
            "t": _fmt(b.t),
            "point": [_fmt(v) for v in b.point],
            "H(p)": _fmt(b.h_p),
            "H(Tp)": _fmt(b.h_tp),
            "full_segment_inside": b.full_segment_inside,
        }
        for b in points
    ]
    return report.emit()


def cmd_ledger(args):
    T = _load_matrix(args.matrix, args.mode)
    p = _load_vector(args.vector, T.mode)
    led = entropy_mod.entropy_ledger(T, p)
    report = Report("ledger", [args.matrix, args.vector])
    report.body["result"] = {
        "h_input": _fmt(led.h_input),
        "h_lifted": _fmt(led.h_lifted),
        "h_evolved": _fmt(led.h_evolved),
        "h_marginal_1": _fmt(led.h_marginal_1),
        "h_marginal_2": _fmt(led.h_marginal_2),
        "h_output": _fmt(led.h_output),
        "marginal_sum": _fmt(led.h_marginal_1 + led.h_marginal_2),
        "marginal_1": _fmt_vector(led.marginal_1),
        "marginal_2": _fmt_vector(led.marginal_2),
    }
    report.check("evolved_not_below_lifted", led.h_evolved >= led.h_lifted - 1e-12)
    return report.emit()


def cmd_birkhoff(args):
    S = _load_matrix(args.matrix, args.mode)
    dec = entropy_mod.birkhoff_decompose(S, tol=args.tol)
    report = Report("birkhoff", [args.matrix])
    recon = dec.reconstruct(mode=S.mode)
    if S.mode == EXACT:
        defect = float(np.max(np.abs((recon.a - S.a).astype(float))))
    else:
        defect = float(np.max(np.abs(recon.a - S.a)))
    report.body["result"] = {
        "terms": [{"weight": _fmt(w), "permutation": list(sigma)} for w, sigma in dec.terms],
        "term_count": len(dec.terms),
        "weight_sum": _fmt(dec.weight_sum()),
    }
    report.check("reconstruction", defect <= 1e-10, defect)
    report.check("weights_sum_to_one", abs(float(dec.weight_sum()) - 1.0) <= 1e-12)
    return report.emit()


def cmd_sinkhorn(args):
    T = _load_matrix(args.matrix, FLOAT)
    res = sinkhorn_mod.sinkhorn_knopp(T, tol=args.tol, max_iter=args.max_iter)
    report = Report("sinkhorn", [args.matrix])
    report.body["result"] = {
        "d1": [_fmt(v) for v in res.d1],
        "d2": [_fmt(v) for v in res.d2],
        "iterations": res.iterations,
        "final_defect": _fmt(res.final_defect),
    }
    report.check("bi_stochastic", res.final_defect <= args.tol, res.final_defect)
    scaled = np.diag(res.d1) @ T.a @ np.diag(res.d2)
    defect = float(np.max(np.abs(scaled - res.matrix.a)))
    report.check("diagonal_factorization", defect <= 10 * args.tol, defect)
    _emit_matrix(report, res.matrix, "matrix", args.out)
    return report.emit()


def cmd_demo_maxwell(args):
    """Reproduce the Maxwell-demon worked example end to end."""
    report = Report("demo maxwell", [])
    T = matrices.maxwell_demon(mode=EXACT)
    uniform = ProbVec.uniform(4, mode=EXACT)
    failures = []

    def expect(name, passed, defect=0):
        if not report.check(name, passed, defect) and not failures:
            failures.append(name)

    fp = core.fixed_point(T)
    expect("fixed_point_face_dimension", fp.face_dimension == 1)
    expect("fixed_point_representative", fp.representative == ProbVec([Fraction(1, 2), 0, 0, Fraction(1, 2)], mode=EXACT))

    one_step = core.apply(T, uniform)
    expected_step = ProbVec([Fraction(3, 8), Fraction(1, 8), Fraction(1, 8), Fraction(3, 8)], mode=EXACT)
    expect("one_step_image", one_step == expected_step)
    h_step = entropy_mod.shannon_entropy(one_step)
    expect("one_step_entropy", abs(h_step - 1.25548) <= 1e-4, abs(h_step - 1.25548))

    trajectory, _ = core.iterate(T.to_float(), uniform.to_float(), 60)
    limit = np.array([0.5, 0.0, 0.0, 0.5])
    limit_defect = float(np.max(np.abs(trajectory[-1].a - limit)))
    expect("iterate_limit", limit_defect <= 1e-10, limit_defect)
    h_limit = entropy_mod.shannon_entropy(trajectory[-1])
    expect("limit_entropy", abs(h_limit - math.log(2)) <= 1e-4, abs(h_limit - math.log(2)))

    E = env_dilation.noisy_dilation(T)
    expect("noisy_dilation_matrix", E.matrix == matrices.maxwell_demon_dilation(mode=EXACT))

    led = entropy_mod.entropy_ledger(T, uniform)
    for name, got, want in [
        ("ledger_h_input", led.h_input, 1.38629),
        ("ledger_h_evolved", led.h_evolved, 1.73287),
        ("ledger_h_marginal_1", led.h_marginal_1, 1.25548),
        ("ledger_h_marginal_2", led.h_marginal_2, 1.38629),
        ("ledger_marginal_sum", led.h_marginal_1 + led.h_marginal_2, 2.64178),
    ]:
        expect(name, abs(got - want) <= 1e-4, abs(got - want))
    expect("ledger_second_marginal_is_input", led.marginal_2.allclose(uniform.to_float()))

    report.body["result"] = {
        "fixed_point_face": "{(a, 0, 0, 1-a)}",
        "one_step_image": _fmt_vector(one_step),
        "one_step_entropy": _fmt(h_step),
        "limit": _fmt_vector(trajectory[-1]),
        "limit_entropy": _fmt(h_limit),
        "ledger": {
            "h_input": _fmt(led.h_input),
            "h_evolved": _fmt(led.h_evolved),
            "h_marginal_1": _fmt(led.h_marginal_1),
            "h_marginal_2": _fmt(led.h_marginal_2),
            "marginal_sum": _fmt(led.h_marginal_1 + led.h_marginal_2),
        },
    }
    code = report.emit()
    if failures:
        raise DemoMismatch(failures[0])
    return code


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="bistoch", description="Analyze and dilate stochastic matrices.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--mode", choices=[EXACT, FLOAT], default=None, help="convert inputs to this mode")
        return p

    p = add("validate", cmd_validate, help="classify a matrix as left/right/bi-stochastic")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=core.DEFAULT_TOL)

    p = add("fixed-point", cmd_fixed_point, help="fixed point and fixed-point face of a stochastic matrix")
    p.add_argument("matrix")

    p = add("apply", cmd_apply, help="apply a stochastic matrix to a distribution")
    p.add_argument("matrix")
    p.add_argument("vector")

    p = add("iterate", cmd_iterate, help="iterate a stochastic matrix on a distribution")
    p.add_argument("matrix")
    p.add_argument("vector")
    p.add_argument("--steps", type=int, default=1)

    p = add("coarse-grain", cmd_coarse_grain, help="coarse grain a matrix over a partition")
    p.add_argument("matrix")
    p.add_argument("partition")
    p.add_argument("--right-inverse", default=None, help="custom right-inverse matrix JSON")
    p.add_argument("--out", default=None)

    p = add("dilate", cmd_dilate, help="dilate a stochastic matrix to a bi-stochastic one")
    p.add_argument("kind", choices=["uniform", "noisy", "unistochastic"])
    p.add_argument("matrix")
    p.add_argument("--vec", default=None, help="exact rational fixed point (uniform dilation)")
    p.add_argument("--out", default=None)

    p = add("extract", cmd_extract, help="recover the dilated matrix from a standard dilation")
    p.add_argument("matrix")
    p.add_argument("--zero-index", type=int, default=0)
    p.add_argument("--out", default=None)

    p = add("verify-dilation", cmd_verify_dilation, help="check the marginal identity of a dilation")
    p.add_argument("matrix")
    p.add_argument("dilation")
    p.add_argument("--rho", default=None, help="environment distribution (default: point mass at 0)")
    p.add_argument("--trials", type=int, default=20)

    p = add("entropy", cmd_entropy, help="Shannon entropy of a distribution (nats)")
    p.add_argument("--vec", required=True)

    p = add("entropy-region", cmd_entropy_region, help="scan the entropy-decreasing region along vertex rays")
    p.add_argument("matrix")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--out", default=None, help="CSV output path")

    p = add("ledger", cmd_ledger, help="entropy ledger of the noisy dilation")
    p.add_argument("matrix")
    p.add_argument("vector")

    p = add("birkhoff", cmd_birkhoff, help="Birkhoff-von Neumann decomposition")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=1e-9)

    p = add("sinkhorn", cmd_sinkhorn, help="Sinkhorn-Knopp balancing")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=sinkhorn_mod.DEFAULT_SINKHORN_TOL)
    p.add_argument("--max-iter", type=int, default=sinkhorn_mod.DEFAULT_MAX_ITER)
    p.add_argument("--out", default=None)

    p = add("demo", cmd_demo_maxwell, help="worked Maxwell-demon example with self-checks")
    p.add_argument("name", choices=["maxwell"])

    return parser


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DemoMismatch as exc:
        print(f"demo mismatch: {exc}", file=sys.stderr)
        return 2
    except BistochError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
