"""Command-line surface, on-disk formats, and OEIS b-file cross-checks.

Exit codes: 0 success, 1 verification mismatch or failed certificate,
2 usage error, 3 resource-cap refusal.  All commands are deterministic for
identical flags (Monte Carlo answers record their seed).

Config: a key=value file (one per line, '#' comments) named by the
WARING_CONFIG environment variable or --config.  Recognized keys:
ram_cap_gib, cache_dir, quad_tol, mc_samples, mc_seed.  Flags override the
file; the file overrides defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import struct
import sys
from dataclasses import dataclass
from pathlib import Path

from .bsets import (
    bset_stats,
    check_conjectures,
    extract_bset,
    reduce_bset,
    stabilize,
)
from .core import (
    BSet,
    CertificateError,
    PreconditionError,
    RepSieve,
    ResourceCapError,
    SearchBudgetError,
    WaringError,
    known_bounds,
)
from .heur import (
    DEFAULT_MC_SAMPLES,
    DEFAULT_MC_SEED,
    DEFAULT_QUAD_TOL,
    HeuristicModel,
    Outlook,
    density,
    expected_coincidences,
    volume,
)
from .nstar import search_candidates
from .repfind import find_representation, verify_nstar
from .sieve import DEFAULT_RAM_CAP, sieve_at_most, sieve_exact

ENV_CONFIG = "WARING_CONFIG"

SIEVE_MAGIC = b"WRS1"
SIEVE_VERSION = 1
_HEADER = struct.Struct("<4sHHIQQ")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


# ---------------------------------------------------------------- formats

def save_sieve(sieve: RepSieve, path: str | Path) -> None:
    """Persist a sieve: 28-byte header then packed little-endian 64-bit words.

    Bit n lives at word n//64, position n%64, which for little-endian words
    is byte-identical to the little-endian serialization of the bit integer.
    """
    if sieve.at_most:
        raise PreconditionError("the sieve file format stores exact-j sieves only")
    payload_len = ((sieve.limit + 63) // 64) * 8
    header = _HEADER.pack(
        SIEVE_MAGIC, SIEVE_VERSION, sieve.k, sieve.j, sieve.limit, payload_len
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(sieve.bits.to_bytes(payload_len, "little"))


def load_sieve(path: str | Path) -> RepSieve:
    """Load a sieve saved by save_sieve; round-trips bit-exactly."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise PreconditionError(f"{path}: truncated sieve file")
    magic, version, k, j, limit, payload_len = _HEADER.unpack_from(raw)
    if magic != SIEVE_MAGIC:
        raise PreconditionError(f"{path}: bad magic {magic!r}")
    if version != SIEVE_VERSION:
        raise PreconditionError(f"{path}: unsupported version {version}")
    if payload_len != ((limit + 63) // 64) * 8:
        raise PreconditionError(f"{path}: payload length disagrees with limit")
    payload = raw[_HEADER.size : _HEADER.size + payload_len]
    if len(payload) != payload_len:
        raise PreconditionError(f"{path}: truncated payload")
    return RepSieve(k=k, j=j, limit=limit, bits=int.from_bytes(payload, "little"))


@dataclass(frozen=True)
class BFileEntry:
    index: int
    value: int


def parse_bfile(path: str | Path) -> list[BFileEntry]:
    """Parse an OEIS b-file: 'index value' per line, '#' comments allowed.

    Indices must be strictly increasing; values are returned in file order.
    """
    entries: list[BFileEntry] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) < 2:
                raise PreconditionError(f"{path}:{lineno}: expected 'index value'")
            try:
                idx, val = int(fields[0]), int(fields[1])
            except ValueError:
                raise PreconditionError(f"{path}:{lineno}: non-integer b-file entry") from None
            if entries and idx <= entries[-1].index:
                raise PreconditionError(f"{path}:{lineno}: indices must be strictly increasing")
            entries.append(BFileEntry(index=idx, value=val))
    return entries


def read_integer_lines(path: str | Path) -> list[int]:
    """One integer per line; '#' comments and blanks ignored."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(int(line))
            except ValueError:
                raise PreconditionError(f"{path}:{lineno}: not an integer: {line!r}") from None
    return out


def write_integer_lines(values, path: str | Path, header: str = "") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for v in values:
            fh.write(f"{v}\n")


# ----------------------------------------------------------------- config

_DEFAULTS = {
    "ram_cap_gib": DEFAULT_RAM_CAP / (1 << 30),
    "cache_dir": ".",
    "quad_tol": DEFAULT_QUAD_TOL,
    "mc_samples": DEFAULT_MC_SAMPLES,
    "mc_seed": DEFAULT_MC_SEED,
}

_COERCE = {
    "ram_cap_gib": float,
    "cache_dir": str,
    "quad_tol": float,
    "mc_samples": int,
    "mc_seed": int,
}


def load_config(path: str | None) -> dict:
    """Defaults, overlaid with the config file (explicit path or $WARING_CONFIG)."""
    cfg = dict(_DEFAULTS)
    chosen = path or os.environ.get(ENV_CONFIG)
    if not chosen:
        return cfg
    with open(chosen, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PreconditionError(f"{chosen}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _COERCE:
                raise PreconditionError(f"{chosen}:{lineno}: unknown key {key!r}")
            cfg[key] = _COERCE[key](value.strip())
    return cfg


# ------------------------------------------------------------ subcommands

def _bset_payload(bs: BSet) -> dict:
    return {
        "k": bs.k,
        "j": bs.j,
        "limit": bs.limit,
        "complete": bs.complete,
        "count": bs.size,
        "max": bs.max_element if bs.elements else None,
        "elements": list(bs.elements),
    }


def _emit(args, payload: dict, text_lines) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_sieve(args, cfg) -> int:
    sieve = sieve_exact(args.k, args.j, args.limit, ram_cap=args.ram_cap)
    out = Path(args.out) if args.out else (
        Path(cfg["cache_dir"]) / f"sieve_k{args.k}_j{args.j}_N{args.limit}.wrs"
    )
    out.parent.mkdir(parents=True, exist_ok=True)
    save_sieve(sieve, out)
    payload = {
        "k": args.k,
        "j": args.j,
        "limit": args.limit,
        "representable": sieve.count(),
        "path": str(out),
    }
    _emit(args, payload, [f"wrote {out} ({sieve.count()} representable below {args.limit})"])
    return EXIT_OK


def _cmd_bset(args, cfg) -> int:
    builder = sieve_at_most if args.at_most else sieve_exact
    sieve = builder(args.k, args.j, args.limit, ram_cap=args.ram_cap)
    bs = extract_bset(sieve)
    if args.base:
        base_elements = tuple(read_integer_lines(args.base))
        base = BSet(
            k=args.k,
            j=0,
            limit=max(base_elements) + 1 if base_elements else 1,
            elements=base_elements,
            complete=True,
        )
        bs = reduce_bset(bs, base)
    if args.out:
        write_integer_lines(bs.elements, args.out)
    _emit(args, _bset_payload(bs), [str(n) for n in bs.elements])
    return EXIT_OK


def _cmd_stabilize(args, cfg) -> int:
    result = stabilize(args.k, args.limit, args.jmax, ram_cap=args.ram_cap)
    if not result.stabilized:
        _emit(
            args,
            {"k": args.k, "limit": args.limit, "stabilized": False, "jmax": args.jmax},
            [f"no stabilization for k={args.k} below j={args.jmax} at limit {args.limit}"],
        )
        return EXIT_MISMATCH
    bs = result.bset
    stats = bset_stats(bs)
    verdict = result.verdict
    payload = {
        "k": args.k,
        "limit": args.limit,
        "stabilized": True,
        "j": result.stabilized_at,
        "m": verdict.m,
        "floor_scaled": verdict.floor_scaled,
        "floor_max": verdict.floor_max,
        "a_k": stats.max_element,
        "b_k": stats.size,
        "conjectures": check_conjectures(bs),
        "elements": list(bs.elements),
    }
    lines = [
        f"stabilized at j={result.stabilized_at} (m={verdict.m}, "
        f"floors {verdict.floor_scaled}={verdict.floor_max})",
        f"a_{args.k}={stats.max_element} b_{args.k}={stats.size}",
    ]
    if bs.size <= 100:
        lines.append("B = {" + ", ".join(str(n) for n in bs.elements) + "}")
    if args.out:
        write_integer_lines(
            bs.elements,
            args.out,
            header=f"stabilized set for k={args.k}, window {args.limit}, j={result.stabilized_at}",
        )
        lines.append(f"wrote {args.out}")
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_repr(args, cfg) -> int:
    try:
        rep = find_representation(args.n, args.j, args.k, node_budget=args.node_budget)
    except SearchBudgetError as exc:
        _emit(args, {"n": args.n, "j": args.j, "k": args.k, "inconclusive": str(exc)},
              [f"inconclusive: {exc}"])
        return EXIT_MISMATCH
    if rep is None:
        _emit(args, {"n": args.n, "j": args.j, "k": args.k, "parts": None}, ["none"])
        return EXIT_OK
    text = f"{args.n} = " + " + ".join(f"{p}^{args.k}" for p in rep.parts)
    _emit(args, {"n": args.n, "j": args.j, "k": args.k, "parts": list(rep.parts)}, [text])
    return EXIT_OK


def _cmd_nstar(args, cfg) -> int:
    jmax = args.jmax
    if jmax is None:
        try:
            jmax = known_bounds(args.k).verified_jmax
        except WaringError:
            jmax = None
        if jmax is None:
            print("no tabulated ladder height; pass --jmax", file=sys.stderr)
            return EXIT_USAGE
    candidates = search_candidates(
        args.k, args.d, (args.lo, args.hi), stages=args.stages, ram_cap=args.ram_cap
    )
    report = []
    any_verified = False
    for n in candidates:
        try:
            verify_nstar(n, args.k, args.d, jmax, node_budget=args.node_budget)
            report.append({"candidate": n, "verified_to": jmax, "status": "verified"})
            any_verified = True
        except CertificateError as exc:
            report.append({"candidate": n, "failed_at": exc.j, "status": "missing"})
        except SearchBudgetError:
            report.append({"candidate": n, "status": "budget-exhausted"})
    payload = {
        "k": args.k,
        "d": args.d,
        "window": [args.lo, args.hi],
        "stages": args.stages,
        "jmax": jmax,
        "candidates": report,
    }
    lines = [f"{len(candidates)} candidate(s) in ({args.lo}, {args.hi})"]
    for entry in report:
        if entry["status"] == "verified":
            lines.append(f"n*={entry['candidate']}: verified for j={args.d}..{jmax}")
        elif entry["status"] == "missing":
            lines.append(f"n*={entry['candidate']}: no representation at j={entry['failed_at']}")
        else:
            lines.append(f"n*={entry['candidate']}: search budget exhausted (inconclusive)")
    _emit(args, payload, lines)
    if candidates and not any_verified:
        return EXIT_MISMATCH
    return EXIT_OK


def _cmd_heur(args, cfg) -> int:
    if args.heur_cmd == "volume":
        est = volume(
            args.j,
            args.k,
            method=args.method,
            tol=args.tol,
            samples=args.samples if args.samples else cfg["mc_samples"],
            seed=args.seed if args.seed is not None else cfg["mc_seed"],
        )
        payload = {
            "j": est.j, "k": est.k, "value": est.value, "method": est.method,
            "error": est.error, "samples": est.samples, "seed": est.seed,
        }
        _emit(args, payload, [f"V({est.j},{est.k}) = {est.value:.8f} "
                              f"[{est.method}, err<={est.error:.2e}]"])
        return EXIT_OK
    if args.heur_cmd == "density":
        model = HeuristicModel.build(args.k, args.j, tol=cfg["quad_tol"])
        val = density(args.n, args.j, args.k, model)
        const = model.density_constant(args.j)
        payload = {"n": args.n, "j": args.j, "k": args.k, "density": val, "constant": const}
        _emit(args, payload, [f"density({args.n}, {args.j}, {args.k}) = {val:.8g} "
                              f"(constant {const:.6g})"])
        return EXIT_OK
    # expect
    pairs = []
    for token in args.pairs:
        j_str, _, k_str = token.partition("/")
        try:
            pairs.append((int(j_str), int(k_str)))
        except ValueError:
            print(f"bad pair {token!r}; expected j/k", file=sys.stderr)
            return EXIT_USAGE
    model = HeuristicModel.build(pairs[0][1], max(j for j, _ in pairs), tol=cfg["quad_tol"])
    est = expected_coincidences(args.bound, pairs, model)
    payload = {
        "lower_bound": est.lower_bound,
        "pairs": [list(p) for p in pairs],
        "exponent": str(est.exponent),
        "outlook": est.outlook.value,
        "coefficient": est.coefficient,
        "value": est.value if est.value != float("inf") else "infinite",
    }
    text = (
        f"E = {est.exponent} ({est.outlook.value}); expected count "
        + (f"{est.value:.6g}" if est.outlook is Outlook.FINITE else "infinite")
    )
    _emit(args, payload, [text])
    return EXIT_OK


def _cmd_verify_oeis(args, cfg) -> int:
    entries = parse_bfile(args.bfile)
    values = [e.value for e in entries]
    builder = sieve_at_most if args.at_most else sieve_exact
    sieve = builder(args.k, args.j, args.limit, ram_cap=args.ram_cap)
    computed = list(extract_bset(sieve).elements)
    # compare only where both sides have coverage
    effective = min(args.limit, (max(values) + 1) if values else args.limit)
    want = [v for v in values if v < effective]
    got = [v for v in computed if v < effective]
    for pos, (w, g) in enumerate(zip(want, got)):
        if w != g:
            _emit(args, {"match": False, "position": pos, "bfile": w, "computed": g},
                  [f"mismatch at position {pos}: b-file has {w}, computed {g}"])
            return EXIT_MISMATCH
    if len(want) != len(got):
        pos = min(len(want), len(got))
        if len(want) > len(got):
            longer, extra = "b-file", want[pos]
        else:
            longer, extra = "computed", got[pos]
        _emit(args, {"match": False, "position": pos, "longer": longer, "value": extra},
              [f"mismatch at position {pos}: {longer} side has extra value {extra}"])
        return EXIT_MISMATCH
    _emit(args, {"match": True, "below": effective, "terms": len(want)},
          [f"match below {effective} ({len(want)} terms)"])
    return EXIT_OK


def _cmd_report(args, cfg) -> int:
    from .report import generate_report

    written = generate_report(Path(args.out), ram_cap=args.ram_cap, quad_tol=cfg["quad_tol"])
    _emit(args, {"out": args.out, "files": [str(p) for p in written]},
          [f"wrote {p}" for p in written])
    return EXIT_OK


# ---------------------------------------------------------------- parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="waring",
        description="Integers that are not sums of j positive k-th powers: "
        "sieves, B-sets, witness searches and density heuristics.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--config", help=f"config file (default: ${ENV_CONFIG})")
    parser.add_argument("--ram-cap-gib", type=float, default=None,
                        help="refuse sieves needing more than 75%% of this cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="build and persist a representability sieve")
    p.add_argument("k", type=int)
    p.add_argument("j", type=int)
    p.add_argument("limit", type=int)
    p.add_argument("--out", help="output path (default: cache_dir)")
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("bset", help="extract the non-representable set below a limit")
    p.add_argument("k", type=int)
    p.add_argument("j", type=int)
    p.add_argument("limit", type=int)
    p.add_argument("--base", help="stabilized-set file; emit the reduced tail instead")
    p.add_argument("--at-most", action="store_true",
                   help="treat j as 'at most j parts' (nonnegative convention)")
    p.add_argument("--out", help="also write the elements to this file")
    p.set_defaults(func=_cmd_bset)

    p = sub.add_parser("stabilize", help="advance j until the two stabilization conditions hold")
    p.add_argument("k", type=int)
    p.add_argument("limit", type=int)
    p.add_argument("--jmax", type=int, default=80)
    p.add_argument("--out", help="write the stabilized set as decimal lines")
    p.set_defaults(func=_cmd_stabilize)

    p = sub.add_parser("repr", help="find one representation as j positive k-th powers")
    p.add_argument("n", type=int)
    p.add_argument("j", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--node-budget", type=int, default=10**9)
    p.set_defaults(func=_cmd_repr)

    p = sub.add_parser("nstar", help="search a window for witness candidates and verify them")
    p.add_argument("k", type=int)
    p.add_argument("d", type=int)
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--jmax", type=int, default=None,
                   help="verify up to this j (default: tabulated G(k)+d)")
    p.add_argument("--stages", type=int, default=4,
                   help="consecutive part-counts required in the window scan")
    p.add_argument("--node-budget", type=int, default=10**9)
    p.set_defaults(func=_cmd_nstar)

    p = sub.add_parser("heur", help="density-model queries")
    hsub = p.add_subparsers(dest="heur_cmd", required=True)
    pv = hsub.add_parser("volume", help="orthant volume V(j,k)")
    pv.add_argument("j", type=int)
    pv.add_argument("k", type=int)
    pv.add_argument("--method", choices=("quadrature", "monte-carlo"), default="quadrature")
    pv.add_argument("--tol", type=float, default=None)
    pv.add_argument("--samples", type=int, default=None)
    pv.add_argument("--seed", type=int, default=None)
    pv.set_defaults(func=_cmd_heur)
    pd = hsub.add_parser("density", help="local density of (j,k)-representable integers")
    pd.add_argument("n", type=int)
    pd.add_argument("j", type=int)
    pd.add_argument("k", type=int)
    pd.set_defaults(func=_cmd_heur)
    pe = hsub.add_parser("expect", help="expected simultaneous representations above a bound")
    pe.add_argument("bound", type=int)
    pe.add_argument("pairs", nargs="+", help="part-count/exponent pairs, e.g. 2/5 3/5 4/5")
    pe.set_defaults(func=_cmd_heur)

    p = sub.add_parser("verify-oeis", help="compare a b-file against the computed complement")
    p.add_argument("bfile")
    p.add_argument("k", type=int)
    p.add_argument("j", type=int)
    p.add_argument("limit", type=int)
    p.add_argument("--at-most", action="store_true")
    p.set_defaults(func=_cmd_verify_oeis)

    p = sub.add_parser("report", help="desk-scale computation report with figures and CSVs")
    p.add_argument("--out", default="report")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        cap_gib = args.ram_cap_gib if args.ram_cap_gib is not None else cfg["ram_cap_gib"]
        args.ram_cap = int(cap_gib * (1 << 30))
        return args.func(args, cfg)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except WaringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
