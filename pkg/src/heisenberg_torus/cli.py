"""Command-line entry point.

Complex arguments are written ``RE,IM``; complex numbers in JSON output are
``[re, im]`` pairs.  Reports go to stdout, diagnostics to stderr.  Exit
status is 0 on success, 1 when a residual exceeds its tolerance and 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from . import deltamodel as dm
from . import matsushima as ms
from . import oscillator as osc
from .gauss import gauss_sum, multiplicativity_terms
from .linalg import gram_rank, to_csv, to_json
from .modarith import CoprimePair, crt_join, crt_split
from .nctorus import clock_shift_rep, verify_rep
from .suite import run_suite
from .thetafun import theta_eval

SEED_ENV = "HEISENBERG_TORUS_SEED"


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from None


def parse_grid(text: str) -> tuple[int, int]:
    try:
        nx, ny = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NX,NY, got {text!r}") from None
    if nx < 1 or ny < 1:
        raise argparse.ArgumentTypeError("grid sizes must be positive")
    return nx, ny


def _cpair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _check(residual, tol, identity) -> dict:
    residual = float(residual)
    return {"identity": identity, "residual": residual, "tol": tol, "ok": bool(residual <= tol)}


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _status(checks: dict) -> int:
    return 0 if all(c["ok"] for c in checks.values()) else 1


def _dump_matrices(mats: dict, fmt: str) -> None:
    if fmt == "json":
        _emit({name: to_json(m) for name, m in mats.items()})
    else:
        for name, m in mats.items():
            sys.stdout.write(f"# {name}\n")
            sys.stdout.write(to_csv(m))


def _pair(args) -> CoprimePair:
    return CoprimePair(args.r, args.q)


# subcommands ------------------------------------------------------------------

def cmd_crt(args) -> int:
    pair = _pair(args)
    if args.k is not None:
        l, m = crt_split(pair, args.k)
        _emit({"l": l, "m": m})
    else:
        _emit({"k": crt_join(pair, *args.lm)})
    return 0


def cmd_gauss(args) -> int:
    if args.check:
        if args.q is None:
            raise ValueError("--check needs --q")
        pair = CoprimePair(args.r, args.q)
        a, b, c = multiplicativity_terms(args.mu, pair)
        tol = 1e-9 * (1 + np.sqrt(pair.n))
        checks = {"multiplicativity": _check(abs(a * b - c), tol, "S(mu q, r) S(mu r, q) = S(mu, rq)")}
        _emit({"values": {"S(mu q,r)": _cpair(a), "S(mu r,q)": _cpair(b), "S(mu,rq)": _cpair(c)},
               "checks": checks})
        return _status(checks)
    out = {"value": _cpair(gauss_sum(args.mu, args.r))}
    if args.q is not None:
        out["value_q"] = _cpair(gauss_sum(args.mu, args.q))
    _emit(out)
    return 0


def cmd_rep(args) -> int:
    rep = clock_shift_rep(_pair(args), args.s, args.t)
    if args.dump:
        _dump_matrices({"U": rep.U, "V": rep.V}, args.dump)
        return 0
    res = verify_rep(rep)
    checks = {
        "unitarity": _check(max(res["unitarity_U"], res["unitarity_V"]), args.tol, "U, V unitary"),
        "commutation": _check(res["commutation"], args.tol, "VU = e^{2 pi i q/r} UV"),
        "scalar_powers": _check(max(res["scalar_U_power"], res["scalar_V_power"]), args.tol,
                                "U^r = a I, V^r = b I"),
    }
    _emit({"a": _cpair(rep.a), "b": _cpair(rep.b), "dim": rep.dim, "checks": checks})
    return _status(checks)


def cmd_theta(args) -> int:
    nx, ny = args.grid
    x, y = np.meshgrid(np.arange(nx) / nx, np.arange(ny) / ny, indexing="ij")
    z = x + args.tau * y
    vals = theta_eval(args.k, args.l, z, args.tau)
    buf = io.StringIO()
    buf.write("x,y,re,im\n")
    for xi, yi, v in zip(x.ravel(), y.ravel(), vals.ravel()):
        buf.write(f"{float(xi)!r},{float(yi)!r},{float(v.real)!r},{float(v.imag)!r}\n")
    sys.stdout.write(buf.getvalue())
    return 0


def cmd_vtheta(args) -> int:
    basis = ms.build_vector_thetas(_pair(args), args.tau)
    nx, ny = args.grid
    x, y = np.meshgrid(np.arange(nx) / nx, np.arange(ny) / ny, indexing="ij")
    z = (x + basis.tau * y).ravel()
    if args.dump == "csv":
        buf = io.StringIO()
        buf.write("m,j,x,y,re,im\n")
        for m, s in enumerate(basis.sections):
            vals = s.evaluate(z)
            for j in range(args.r):
                for xi, yi, v in zip(x.ravel(), y.ravel(), vals[j]):
                    buf.write(f"{m},{j},{float(xi)!r},{float(yi)!r},{float(v.real)!r},{float(v.imag)!r}\n")
        sys.stdout.write(buf.getvalue())
        return 0
    b1, bt = basis.boundary
    G = basis.gram(64)
    rank = gram_rank(G / np.max(np.abs(G)), 1e-6)
    checks = {
        "boundary_1": _check(b1, 1e-8, "s(z+1) = e^{alpha(z+1/2)} U^* s(z)"),
        "boundary_tau": _check(bt, 1e-8, "s(z+tau) = e^{alpha(z conj(tau)+|tau|^2/2)} V^* s(z)"),
        "rank_deficit": _check(args.q - rank, 0, "h^0(E_{r,q}) = q"),
    }
    _emit({"sections": len(basis.sections), "truncation": basis.trunc, "gram_rank": rank,
           "checks": checks})
    return _status(checks)


def cmd_deltamodel(args) -> int:
    pair = _pair(args)
    if args.dump:
        if args.dump == "family":
            mats = dm.build_operator_family(pair).matrices()
        else:
            build = {"A": dm.build_A, "B": dm.build_B, "C": dm.build_C}[args.dump]
            mats = {args.dump: build(pair, args.mu)}
        _dump_matrices(mats, args.format)
        return 0
    ti = dm.verify_tensor_identity(pair, args.mu)
    checks = {
        "tensor_identity": _check(ti["matrix"], 1e-12, "C = U (A x B) U^-1"),
        "trace_identity": _check(ti["trace"], 1e-10, "tr C = tr A tr B"),
    }
    if args.verify:
        fam = dm.build_operator_family(pair)
        for name, res in dm.family_residuals(fam).items():
            checks[f"family_{name}"] = _check(res, 1e-12, f"delta-model relation {name}")
        checks["phase_law"] = _check(dm.phase_law_residual(fam), 1e-12,
                                     "UU^k VV^k' = e^{-2 pi i k k'/rq} VV^k' UU^k")
    _emit({"checks": checks})
    return _status(checks)


def cmd_landau(args) -> int:
    basis = ms.build_vector_thetas(_pair(args), args.tau, seed=args.seed)
    try:
        level = osc.landau_level(basis, args.n, seed=args.seed)
    except ArithmeticError as exc:
        print(f"landau: {exc}", file=sys.stderr)
        return 1
    pres = osc.level_preservation(level)
    checks = {
        "eigenvalue_residual": _check(level.eigen_residual, 1e-8, "Delta phi = n alpha phi"),
        "preservation_residual": _check(pres, 1e-6, "u^, v^ preserve the level"),
        "rank_deficit": _check(args.q - level.rank, 0, "level has dimension q"),
    }
    _emit({"rank": level.rank, "eigenvalue": level.eigenvalue,
           "eigenvalue_residual": level.eigen_residual, "preservation_residual": pres,
           "checks": checks})
    return _status(checks)


def cmd_fmn(args) -> int:
    _emit(ms.fmn_star(_pair(args)))
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.r, args.q, args.tau, args.seed)
    _emit(report)
    return 0 if report["ok"] else 1


# parser -----------------------------------------------------------------------

def _seed_default() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        print(f"ignoring non-integer {SEED_ENV}={env!r}", file=sys.stderr)
        return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heisenberg-torus",
                                description="Residual checks for rational noncommutative tori.")
    sub = p.add_subparsers(dest="command", required=True)

    def rq(sp, q_required=True):
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--q", type=int, required=q_required)

    sp = sub.add_parser("crt", help="CRT bijection Z_r x Z_q <-> Z_rq")
    rq(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--lm", type=int, nargs=2, metavar=("L", "M"))
    sp.set_defaults(func=cmd_crt)

    sp = sub.add_parser("gauss", help="quadratic Gauss sums")
    sp.add_argument("--mu", type=int, required=True)
    rq(sp, q_required=False)
    sp.add_argument("--check", action="store_true")
    sp.set_defaults(func=cmd_gauss)

    sp = sub.add_parser("rep", help="clock/shift representation")
    rq(sp)
    sp.add_argument("--s", type=parse_complex, default=1 + 0j)
    sp.add_argument("--t", type=parse_complex, default=1 + 0j)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--dump", choices=("csv", "json"))
    sp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("theta", help="classical theta values on a grid (CSV)")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--tau", type=parse_complex, required=True)
    sp.add_argument("--grid", type=parse_grid, default=(16, 16))
    sp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("vtheta", help="vector theta functions")
    rq(sp)
    sp.add_argument("--tau", type=parse_complex, required=True)
    sp.add_argument("--grid", type=parse_grid, default=(8, 8))
    sp.add_argument("--dump", choices=("csv",))
    sp.set_defaults(func=cmd_vtheta)

    sp = sub.add_parser("deltamodel", help="finite delta model and Gauss matrices")
    rq(sp)
    sp.add_argument("--mu", type=int, default=1)
    sp.add_argument("--dump", choices=("A", "B", "C", "family"))
    sp.add_argument("--format", choices=("csv", "json"), default="json")
    sp.add_argument("--verify", action="store_true")
    sp.set_defaults(func=cmd_deltamodel)

    sp = sub.add_parser("landau", help="Landau level n")
    rq(sp)
    sp.add_argument("--tau", type=parse_complex, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=_seed_default())
    sp.set_defaults(func=cmd_landau)

    sp = sub.add_parser("fmn", help="star-duality data")
    rq(sp)
    sp.set_defaults(func=cmd_fmn)

    sp = sub.add_parser("verify", help="full residual suite")
    rq(sp)
    sp.add_argument("--tau", type=parse_complex, required=True)
    sp.add_argument("--seed", type=int, default=_seed_default())
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
