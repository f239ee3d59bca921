"""Batch command-line front end.

Subcommands: generate, paircorr, converge, check-tse, matrices,
witness-digital, witness-halton, search-k, search-near-integer.

Outputs are deterministic: CSV files start with a `# config: {...}` comment
echoing the resolved configuration, floats are printed with 17 significant
digits, and JSON reports carry the config under a "config" key.  Exit
codes: 0 success, 1 failed verification verdict, 2 usage error, 3 budget
exceeded.

Polynomials are written in the grammar `c0+c1*x+c2*x^2` (any term order,
coefficients are digits 0..q-1), joined by `;` for several coordinates,
e.g. --polys "x;x+1".
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import genmat, paircorr, sequences, witness
from .fields import Field, is_prime
from .polys import monic_irreducibles, poly_from_string


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _parse_int_list(text: str) -> List[int]:
    return [int(t) for t in text.split(",") if t != ""]


def _parse_float_list(text: str) -> List[float]:
    return [float(t) for t in text.split(",") if t != ""]


def _parse_s_grid(text: str) -> List[float]:
    """Either `lo:step:hi` (inclusive) or a comma-separated list."""
    if ":" in text:
        lo, step, hi = (float(t) for t in text.split(":"))
        if step <= 0:
            raise ValueError("s grid step must be positive")
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return [lo + i * step for i in range(count)]
    return _parse_float_list(text)


def _field_from_q(q: int, modulus: Optional[str]) -> Field:
    if is_prime(q):
        if modulus is not None:
            raise ValueError("--modulus is only accepted for prime-power q")
        return Field(q)
    p = 2
    while q % p:
        p += 1
    k = 0
    qq = q
    while qq % p == 0:
        qq //= p
        k += 1
    if qq != 1:
        raise ValueError(f"q = {q} is not a prime power")
    if modulus is None:
        raise ValueError(f"q = {q} needs --modulus (a monic irreducible over GF({p}))")
    mod_poly = poly_from_string(Field(p), modulus)
    return Field(p, k, list(mod_poly.coeffs))


def _seqdef_from_args(args) -> genmat.SeqDef:
    field = _field_from_q(args.q, getattr(args, "modulus", None))
    if args.polys:
        polys = tuple(
            poly_from_string(field, t) for t in args.polys.split(";") if t
        )
    elif getattr(args, "d", None):
        polys = tuple(monic_irreducibles(field, args.d))
    else:
        raise ValueError("either --polys or --d is required")
    return genmat.SeqDef(field, polys, method=args.method)


def _source_from_args(args):
    chosen = [
        name
        for name in ("halton", "digital", "vdc", "kronecker", "random")
        if getattr(args, name, None) not in (None, False)
    ]
    if len(chosen) != 1:
        raise ValueError(f"exactly one source is required, got {chosen or 'none'}")
    kind = chosen[0]
    if kind == "halton":
        return sequences.HaltonSource(_parse_int_list(args.halton))
    if kind == "vdc":
        return sequences.VdcSource(args.base)
    if kind == "kronecker":
        return sequences.KroneckerSource(_parse_float_list(args.kronecker))
    if kind == "random":
        if args.seed is None:
            raise ValueError("--random requires --seed for reproducibility")
        return sequences.RandomSource(args.random, args.seed)
    sd = _seqdef_from_args(args)
    n_end = args.start + args.n - 1 if hasattr(args, "start") else args.n - 1
    width = 1
    while sd.field.q**width <= max(n_end, 1):
        width += 1
    prec = args.prec if args.prec else width
    args.prec = prec  # echo the resolved value in the config header
    mats = sd.matrices(max(prec, width), width)
    return sequences.DigitalSource(sd.field, mats, prec)


def _source_args(p: argparse.ArgumentParser, with_digital: bool = True):
    p.add_argument("--halton", metavar="B1,B2,..", help="Halton sequence bases")
    p.add_argument("--vdc", action="store_true", help="van der Corput sequence")
    p.add_argument("--base", type=int, default=2, help="base for --vdc")
    p.add_argument("--kronecker", metavar="A1,A2,..", help="Kronecker sequence alphas")
    p.add_argument("--random", type=int, metavar="D", help="seeded uniform baseline")
    p.add_argument("--seed", type=int, help="seed for --random (mandatory)")
    if with_digital:
        p.add_argument("--digital", action="store_true", help="digital sequence")
        _seqdef_args(p)
        p.add_argument("--prec", type=int, default=0, help="digits per coordinate")


def _seqdef_args(p: argparse.ArgumentParser):
    p.add_argument("--q", type=int, help="field order (prime power)")
    p.add_argument("--modulus", help="modulus polynomial over GF(p) when q = p^k")
    p.add_argument("--polys", help="defining polynomials, `;`-separated")
    p.add_argument("--d", type=int, help="use the first d monic irreducibles")
    p.add_argument(
        "--method",
        choices=(genmat.NIEDERREITER, genmat.CBC),
        default=genmat.NIEDERREITER,
    )


def _config_dict(args, skip=("out", "func")) -> dict:
    return {
        k: v for k, v in sorted(vars(args).items())
        if k not in skip and v is not None and k != "command"
    }


def _open_out(path: Optional[str]):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w"), True


def _write_csv(args, header: Sequence[str], rows) -> None:
    out, close = _open_out(args.out)
    try:
        out.write("# config: " + json.dumps(_config_dict(args), sort_keys=True) + "\n")
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(row) + "\n")
    finally:
        if close:
            out.close()


def _write_json(args, payload: dict) -> None:
    out, close = _open_out(args.out)
    try:
        doc = {"config": _config_dict(args)}
        doc.update(payload)
        json.dump(doc, out, sort_keys=True, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()


# -- subcommands -----------------------------------------------------------------


def _cmd_generate(args) -> int:
    source = _source_from_args(args)
    d = source.dim
    header = ["n"] + [f"x{j + 1}" for j in range(d)]
    rows = []
    exact = hasattr(source, "exact_point") and not args.float
    if exact:
        for n in range(args.start, args.start + args.n):
            p = source.exact_point(n)
            rows.append(
                [str(n)]
                + [f"{p.numerator(j)}/{p.denominator(j)}" for j in range(d)]
            )
    else:
        pts = source.float_points(args.start, args.n)
        for i, row in enumerate(pts):
            rows.append([str(args.start + i)] + [_fmt(v) for v in row])
    _write_csv(args, header, rows)
    return 0


def _cmd_paircorr(args) -> int:
    source = _source_from_args(args)
    s_grid = _parse_s_grid(args.s)
    pts = source.float_points(0, args.n)
    method = "naive" if args.naive else "grid"
    curve = paircorr.ppc_curve(pts, s_grid, method=method)
    rows = [
        [str(curve.N), _fmt(e.s), str(e.count), _fmt(e.F), _fmt(e.target)]
        for e in curve.entries
    ]
    _write_csv(args, ["N", "s", "count", "F", "target"], rows)
    return 0


def _cmd_converge(args) -> int:
    source = _source_from_args(args)
    s_grid = _parse_s_grid(args.s)
    n_list = _parse_int_list(args.n_list)
    method = "naive" if args.naive else "grid"
    rows = [
        [str(n), _fmt(s), str(count), _fmt(F), _fmt(target), _fmt(err)]
        for n, s, count, F, target, err in paircorr.ppc_convergence(
            source, n_list, s_grid, method=method
        )
    ]
    _write_csv(args, ["N", "s", "count", "F", "target", "abs_error"], rows)
    return 0


def _build_matrices(args, sd: genmat.SeqDef, rows: int, cols: int):
    mats = sd.matrices(rows, cols)
    if args.scramble:
        S = genmat.scrambler_matrix(sd, cols)
        mats = [genmat.mat_mul(C, S) for C in mats]
    return mats


def _cmd_check_tse(args) -> int:
    sd = _seqdef_from_args(args)
    mats = _build_matrices(args, sd, args.m_max, args.m_max)
    res = genmat.tse_check(mats, sd.e, args.t, args.m_max)
    payload = {
        "ok": res.ok,
        "certificate": None if res.ok else {"m": res.m, "r": list(res.r)},
    }
    _write_json(args, payload)
    return 0 if res.ok else 1


def _cmd_matrices(args) -> int:
    sd = _seqdef_from_args(args)
    mats = _build_matrices(args, sd, args.rows, args.cols)
    payload = {"matrices": [m.to_json_dict() for m in mats]}
    if args.with_scrambler:
        payload["scrambler"] = genmat.scrambler_matrix(sd, args.cols).to_json_dict()
    _write_json(args, payload)
    return 0


def _cmd_witness_digital(args) -> int:
    sd = _seqdef_from_args(args)
    eps = Fraction(args.eps) if args.eps else None
    wit = witness.digital_witness_params(sd, args.u, eps)
    prec = wit.m + 1
    mats = sd.matrices(prec, prec)
    report = witness.digital_witness_verify(wit, mats, budget=args.budget)
    _write_json(args, report.to_json_dict())
    return 0 if report.verdict else 1


def _cmd_witness_halton(args) -> int:
    wit = witness.halton_witness_params(
        _parse_int_list(args.bases), args.u, _parse_int_list(args.k)
    )
    report = witness.halton_witness_verify(wit, budget=args.budget)
    _write_json(args, report.to_json_dict())
    return 0 if report.verdict else 1


def _cmd_search_k(args) -> int:
    hits = witness.halton_k_search(_parse_int_list(args.bases), args.u, args.k1_max)
    payload = {
        "hits": [
            {
                "k1": h.k1,
                "k": list(h.kvec),
                "delta": list(h.deltas),
                "degenerate": h.degenerate,
            }
            for h in hits
        ]
    }
    _write_json(args, payload)
    return 0


def _cmd_search_near_integer(args) -> int:
    hits = witness.near_integer_search(
        _parse_float_list(args.alphas), args.eps, args.n_max
    )
    payload = {
        "hits": [{"n": n, "frac": [_fmt(f) for f in fr]} for n, fr in hits]
    }
    _write_json(args, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qmcpairs",
        description="Exact low-discrepancy sequences and pair-correlation checks",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit sequence points as CSV")
    _source_args(p)
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--start", type=int, default=0, help="first index")
    p.add_argument("--float", action="store_true", help="doubles instead of exact")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("paircorr", help="F_N(s) curve for one N")
    _source_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", required=True, help="`lo:step:hi` or comma list")
    p.add_argument("--naive", action="store_true", help="O(N^2) reference counter")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_paircorr)

    p = sub.add_parser("converge", help="F_N(s) curves over increasing N")
    _source_args(p)
    p.add_argument("--n-list", required=True, help="comma-separated N values")
    p.add_argument("--s", required=True)
    p.add_argument("--naive", action="store_true")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("check-tse", help="rank condition for the interval property")
    _seqdef_args(p)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--m-max", type=int, default=10)
    p.add_argument("--scramble", action="store_true", help="check C*S instead of C")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_check_tse)

    p = sub.add_parser("matrices", help="emit generating matrix slices as JSON")
    _seqdef_args(p)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--scramble", action="store_true")
    p.add_argument("--with-scrambler", action="store_true")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_matrices)

    p = sub.add_parser("witness-digital", help="verify the digital witness")
    _seqdef_args(p)
    p.add_argument("--u", type=int, required=True, help="power of the characteristic")
    p.add_argument("--eps", help="window half-width (exact decimal, e.g. 0.01)")
    p.add_argument("--budget", type=int, default=2**21)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_witness_digital)

    p = sub.add_parser("witness-halton", help="verify the Halton witness")
    p.add_argument("--bases", required=True, help="e.g. 2,3")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--k", required=True, help="exponent vector, e.g. 1,1")
    p.add_argument("--budget", type=int, default=2**22)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_witness_halton)

    p = sub.add_parser("search-k", help="scan k_1 for admissible exponent vectors")
    p.add_argument("--bases", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--k1-max", type=int, required=True)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_search_k)

    p = sub.add_parser(
        "search-near-integer", help="n with all {n alpha_j} near 0 or 1"
    )
    p.add_argument("--alphas", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=_cmd_search_near_integer)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except witness.BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, witness.InfeasibleWitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
