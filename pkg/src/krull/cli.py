"""Command-line front end.

Exit codes: 0 success, 1 mathematical refusal (hypothesis fails, no
certificate, or verification rejects), 2 resource budget exceeded,
3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import latdim, spectra
from .certs import ReductionCert, dim_cert_json, verify_any
from .errors import Budget, BudgetExceeded, InputError, KrullError, Refusal
from .genred import bass_stable_range, kronecker_reduce, unimodular_to_e1
from .groebner import IdealRep
from .jsonio import (diagram_from_file, load_json, matrix_from_file,
                     parse_poly_list, poset_from_file, ring_from_file,
                     save_json)
from .lattices import FinDistLattice, glue, quotient
from .splitoff import bass_cancel, forster_swan_generate, serre_split
from .zariski import RadQuotientRing, dim_cert_search


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None or getattr(args, "func", None) is None:
        parser.print_help()
        return 3
    try:
        out = args.func(args)
    except Refusal as exc:
        print(f"refusal: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except KrullError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    return out if isinstance(out, int) else 0


def _budget(args) -> Budget:
    if getattr(args, "budget", None):
        parts = str(args.budget).split(",")
        spairs = int(parts[0])
        degree = int(parts[1]) if len(parts) > 1 else None
        return Budget(spairs=spairs, degree=degree)
    return Budget()


def _emit(args, data: dict) -> None:
    text = json.dumps(data, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        save_json(args.out, data)
    print(text)


def _ring_context(args):
    ring = ring_from_file(args.ring)
    modulus = parse_poly_list(ring, args.modulus) if getattr(args, "modulus", "") else []
    return ring, RadQuotientRing(ring, IdealRep(ring, modulus))


def _emit_cert(args, cert: ReductionCert) -> int:
    _emit(args, cert.to_json())
    return 0


# --- lattice ---

def cmd_lattice_dim(args) -> int:
    T = FinDistLattice(poset_from_file(args.poset))
    if args.kind == "kdim":
        value = latdim.kdim(T)
        chain = _longest_chain_names(T)
        witness = {"kind": "kdim", "value": value, "chain": chain}
    elif args.kind == "jdim":
        value = latdim.jdim(T)
        s = spectra.spec_subsets(T)
        witness = {"kind": "jdim", "value": value,
                   "jspec_points": s["Jspec"].names()}
    else:
        value = latdim.hdim(T)
        witness = {"kind": "hdim", "value": value}
    print(value)
    if args.witness:
        save_json(args.witness, witness)
    return 0


def _longest_chain_names(T: FinDistLattice) -> list[str]:
    base = T.base
    order = base.linear_extension()
    best: list[int] = []
    chains: dict[int, list[int]] = {}
    for i in order:
        pred = [j for j in range(base.n) if j != i and base.le(j, i)]
        chains[i] = max((chains[j] for j in pred), key=len, default=[]) + [i]
        if len(chains[i]) > len(best):
            best = chains[i]
    return [base.names[i] for i in best]


def cmd_lattice_info(args) -> int:
    p = poset_from_file(args.poset)
    T = FinDistLattice(p)
    _emit(args, {
        "points": list(p.names),
        "covers": [list(c) for c in p.covers()],
        "elements": T.size(),
        "kdim": latdim.kdim(T),
        "jdim": latdim.jdim(T),
        "hdim": latdim.hdim(T),
    })
    return 0


def cmd_lattice_glue(args) -> int:
    diagram = diagram_from_file(args.diagram)
    T, _ = glue(diagram)
    _emit(args, T.base.to_json())
    return 0


def cmd_lattice_quotient(args) -> int:
    T = FinDistLattice(poset_from_file(args.poset))
    zeros = [T.elem_from_points(_split_points(g)) for g in _groups(args.zeros)]
    ones = [T.elem_from_points(_split_points(g)) for g in _groups(args.ones)]
    q = quotient(T, zeros, ones)
    _emit(args, q.target.base.to_json())
    return 0


def _groups(text: str) -> list[str]:
    return [g for g in (text or "").split(";") if g.strip()]


def _split_points(group: str) -> list[str]:
    return [p.strip() for p in group.split(",") if p.strip()]


# --- spectra ---

def cmd_spectra_info(args) -> int:
    p = poset_from_file(args.poset)
    T = FinDistLattice(p)
    s = spectra.spec_subsets(T)
    _emit(args, {
        "points": list(p.names),
        "max": s["max"].names(),
        "min": s["min"].names(),
        "jspec": s["jspec"].names(),
        "Jspec": s["Jspec"].names(),
        "kdim": latdim.kdim(T),
        "jdim": latdim.jdim(T),
        "hdim": latdim.hdim(T),
    })
    return 0


def cmd_spectra_glue(args) -> int:
    diagram = diagram_from_file(args.diagram)
    if diagram.mode != "filter":
        diagram.mode = "filter"  # spectra glue along opens
    T, _ = glue(diagram)
    _emit(args, T.base.to_json())
    return 0


# --- ring ---

def cmd_ring_kdim_cert(args) -> int:
    ring, R = _ring_context(args)
    xs = parse_poly_list(ring, args.seq)
    budget = _budget(args)
    cert = dim_cert_search(R, xs, degree_bound=args.degree_bound, budget=budget)
    if cert is None:
        print("no-collapse")
        return 1
    _emit(args, dim_cert_json(ring, list(R.modulus.gens), cert, budget))
    return 0


def cmd_ring_kronecker(args) -> int:
    ring, R = _ring_context(args)
    gens = parse_poly_list(ring, args.gens)
    return _emit_cert(args, kronecker_reduce(R, gens,
                                             degree_bound=args.degree_bound,
                                             budget=_budget(args)))


def cmd_ring_bass(args) -> int:
    ring, R = _ring_context(args)
    a = ring.parse(args.a)
    bs = parse_poly_list(ring, args.bs)
    return _emit_cert(args, bass_stable_range(R, a, bs, _budget(args)))


def cmd_ring_unimod(args) -> int:
    ring, R = _ring_context(args)
    v = parse_poly_list(ring, args.vector)
    return _emit_cert(args, unimodular_to_e1(R, v, _budget(args)))


def cmd_ring_serre(args) -> int:
    ring, R = _ring_context(args)
    F = matrix_from_file(ring, args.matrix)
    return _emit_cert(args, serre_split(R, F, args.k, _budget(args)))


def cmd_ring_swan(args) -> int:
    ring, R = _ring_context(args)
    F = matrix_from_file(ring, args.presentation)
    return _emit_cert(args, forster_swan_generate(R, F, args.target, _budget(args)))


def cmd_ring_cancel(args) -> int:
    ring, R = _ring_context(args)
    F = matrix_from_file(ring, args.matrix)
    C = parse_poly_list(ring, args.c)
    a = ring.parse(args.a)
    return _emit_cert(args, bass_cancel(R, F, C, a, args.k, _budget(args)))


def cmd_verify(args) -> int:
    data = load_json(args.cert)
    ok = verify_any(data, _budget(args))
    print("verified" if ok else "failed")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krull",
        description="Finite distributive lattices, Krull/Heitmann dimension, "
                    "and certificate-producing generator reduction.")
    parser.set_defaults(command=None)
    sub = parser.add_subparsers(dest="command")

    lattice = sub.add_parser("lattice").add_subparsers(dest="subcommand")
    p = lattice.add_parser("dim")
    p.add_argument("--kind", choices=["kdim", "jdim", "hdim"], required=True)
    p.add_argument("--poset", required=True)
    p.add_argument("--witness")
    p.set_defaults(func=cmd_lattice_dim)
    p = lattice.add_parser("info")
    p.add_argument("--poset", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice_info)
    p = lattice.add_parser("glue")
    p.add_argument("--diagram", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice_glue)
    p = lattice.add_parser("quotient")
    p.add_argument("--poset", required=True)
    p.add_argument("--zeros", default="")
    p.add_argument("--ones", default="")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice_quotient)

    spectra_p = sub.add_parser("spectra").add_subparsers(dest="subcommand")
    p = spectra_p.add_parser("info")
    p.add_argument("--poset", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectra_info)
    p = spectra_p.add_parser("glue")
    p.add_argument("--diagram", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectra_glue)

    ring = sub.add_parser("ring").add_subparsers(dest="subcommand")

    def ring_parser(name):
        q = ring.add_parser(name)
        q.add_argument("--ring", required=True)
        q.add_argument("--modulus", default="")
        q.add_argument("--budget")
        q.add_argument("--seed", type=int, default=0)  # determinism echo
        q.add_argument("--out")
        return q

    p = ring_parser("kdim-cert")
    p.add_argument("--seq", required=True)
    p.add_argument("--degree-bound", type=int, default=30)
    p.set_defaults(func=cmd_ring_kdim_cert)
    p = ring_parser("kronecker")
    p.add_argument("--gens", required=True)
    p.add_argument("--degree-bound", type=int, default=30)
    p.set_defaults(func=cmd_ring_kronecker)
    p = ring_parser("bass")
    p.add_argument("--a", required=True)
    p.add_argument("--bs", required=True)
    p.set_defaults(func=cmd_ring_bass)
    p = ring_parser("unimod-e1")
    p.add_argument("--vector", required=True)
    p.set_defaults(func=cmd_ring_unimod)
    p = ring_parser("serre-split")
    p.add_argument("--matrix", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_ring_serre)
    p = ring_parser("swan")
    p.add_argument("--presentation", required=True)
    p.add_argument("--target", type=int, required=True)
    p.set_defaults(func=cmd_ring_swan)
    p = ring_parser("cancel")
    p.add_argument("--matrix", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_ring_cancel)

    p = sub.add_parser("verify")
    p.add_argument("--cert", required=True)
    p.add_argument("--budget")
    p.set_defaults(func=cmd_verify)
    return parser


if __name__ == "__main__":
    sys.exit(main())
