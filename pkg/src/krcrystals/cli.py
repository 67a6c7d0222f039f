"""Command line interface ``krc``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource guard, 4 out-of-scope request, 5 internal consistency error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import energy, xk
from .classical import TableauSyntaxError, InadmissibleColumn
from .combinat import Partition
from .errors import AmbiguousSigma, GuardError, NoSigma, OutOfScope
from .kr import CACHE_ENV, AlgebraSpec, TensorProduct, clear_cache, list_cache

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD, EXIT_SCOPE, EXIT_INTERNAL = 0, 1, 2, 3, 4, 5


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- argument helpers


def _pair(text: str) -> tuple[int, int]:
    try:
        r, s = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected r,s but got {text!r}")
    return r, s


def _weight(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "0", "empty", "[]"):
        return ()
    try:
        return tuple(Partition(int(x) for x in text.strip("[]").split(",") if x.strip()))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}")


def _ranks(text: str) -> list[int]:
    if "-" in text:
        lo, hi = (int(x) for x in text.split("-"))
        return list(range(lo, hi + 1))
    return [int(x) for x in text.split(",")]


def _algebra(args) -> AlgebraSpec:
    return AlgebraSpec(args.alg, args.n)


def _load_payload(texts: list[str], factors: int):
    """Element payload: one JSON list of factor tableaux, or one tableau per argument."""
    items = []
    for t in texts:
        if t.startswith("@"):
            t = Path(t[1:]).read_text()
        try:
            items.append(json.loads(t))
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse element payload {t!r}: {exc}")
    if len(items) == 1 and _depth(items[0]) == 3:
        items = items[0]
    if len(items) != factors:
        raise UsageError(f"expected {factors} factor tableaux, got {len(items)}")
    return items


def _depth(x) -> int:
    d = 0
    while isinstance(x, list):
        d += 1
        x = x[0] if x else None
    return d


def _tensor(alg, shapes) -> TensorProduct:
    return xk.tensor(alg, shapes)


def _element(T: TensorProduct, texts):
    try:
        return T.element(_load_payload(texts, len(T)))
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))


# ---------------------------------------------------------------- commands


def cmd_sigma(args):
    alg = _algebra(args)
    T = _tensor(alg, args.shapes)
    b = _element(T, args.element)
    s = T.sigma(b)
    h, path = T.to_highest(s)
    rec = {
        "element": T.columns(b),
        "sigma": T.columns(s),
        "high_of_sigma": T.columns(h),
        "weight_of_high": list(T.weight(h)),
        "raising_path": energy.format_path(path),
        "in_max": T.is_max(h),
    }
    text = [
        f"b            = {T.render(b)}",
        f"sigma(b)     = {T.render(s)}",
        f"High(sigma)  = {T.render(h)}   weight {list(T.weight(h))}",
        f"in max(B)    = {rec['in_max']}",
    ]
    return EXIT_OK, rec, text


def cmd_r(args):
    alg = _algebra(args)
    T = _tensor(alg, [args.left, args.right])
    b = _element(T, args.element)
    res = energy.combinatorial_R(T, b)
    T2 = T.reversed_pair()
    h = energy.local_H(T, b)
    d = energy.intrinsic_D(T, b)
    k1, k2 = T.factors
    rec = {
        "image": T2.columns(res.image),
        "H": h,
        "D": d,
        "D_left": energy.single_D(k1, b[0]),
        "D_image_first": energy.single_D(k2, res.image[0]),
        "certificate": res.certificate(T),
    }
    text = [
        f"R(b)  = {T2.render(res.image)}",
        f"H     = {h}",
        f"D     = {d}   (D(b1) = {rec['D_left']}, D(b2') = {rec['D_image_first']})",
    ]
    for k, x in enumerate(res.iterates):
        text.append(f"Phi^{k} = {T.render(x)}")
    if args.oracle:
        energy.guard_pair_oracles(alg, [args.left, args.right], args.limit)
        oracle = energy.pair_oracle(k1, k2)
        rec["oracle_image"] = T2.columns(oracle.r_of(b))
        rec["oracle_H"] = oracle.h_of(b)
        agree = oracle.r_of(b) == res.image and oracle.h_of(b) == h
        rec["oracle_agrees"] = agree
        text.append(f"oracle agrees: {agree}")
        if not agree:
            return EXIT_FAIL, rec, text
    return EXIT_OK, rec, text


def cmd_energy(args):
    alg = _algebra(args)
    if args.method == "oracle":
        energy.guard_pair_oracles(alg, args.shapes, args.limit)
    T = _tensor(alg, args.shapes)
    b = _element(T, args.element)
    d = energy.intrinsic_D(T, b, args.method)
    h, _ = T.to_highest(b)
    rec = {"element": T.columns(b), "high": T.columns(h), "weight": list(T.weight(h)), "D": d,
           "method": args.method}
    text = [f"High(b) = {T.render(h)}   weight {list(T.weight(h))}", f"D = {d}"]
    if alg.family != "A" and len(T) > 1:
        iterates, _ = energy.contraction_sequence(T, h)
        rec["iterates"] = [T.columns(x) for x in iterates]
        text += [f"Phi^{k} = {T.render(x)}" for k, x in enumerate(iterates)]
    return EXIT_OK, rec, text


def cmd_xsum(args):
    alg = _algebra(args)
    if args.method == "oracle":
        energy.guard_pair_oracles(alg, args.shapes, args.limit)
    T = _tensor(alg, args.shapes)
    poly = xk.one_dim_sum(args.weight, T, args.method, limit=args.limit)
    rec = {"lambda": list(args.weight), "shapes": [list(s) for s in args.shapes], "sum": poly.to_json()}
    return EXIT_OK, rec, [f"X = {poly}"]


def cmd_verify(args):
    alg = _algebra(args)
    if args.what == "xk":
        if args.weight is None:
            raise UsageError("--weight is required")
        rep = xk.verify_xk(args.weight, args.shapes, alg)
        rec = rep.to_json()
        text = [f"lhs = {rep.lhs}", f"rhs = {rep.rhs}",
                f"rank bound {rep.bound} (n {'>' if rep.above_bound else '<='} bound)",
                f"verdict {rec['verdict']}"]
        return (EXIT_OK if rep.verdict else EXIT_FAIL), rec, text
    energy.guard_pair_oracles(alg, args.shapes, args.limit)
    T = _tensor(alg, args.shapes)
    if args.what == "strange":
        rep = xk.verify_strange(T, limit=args.limit, sample=args.sample, seed=args.seed)
        rec = rep.to_json()
        text = [f"checked {len(rep.rows)} highest elements of {T}",
                f"violations {len(rep.violations)}", f"verdict {rec['verdict']}"]
        return (EXIT_OK if rep.verdict else EXIT_FAIL), rec, text
    if args.weight is None:
        raise UsageError("--weight is required")
    res = xk.verify_properties(T, args.weight, limit=args.limit)
    rec = {"properties": res, "verdict": "PASS" if res["ok"] else "FAIL",
           "rank_bound": xk.rank_bound(args.weight, args.shapes)}
    text = [f"property ({k}): {'PASS' if res[k]['ok'] else 'FAIL'}" for k in ("i", "ii", "iii", "iv")]
    text.append(f"verdict {rec['verdict']}")
    return (EXIT_OK if res["ok"] else EXIT_FAIL), rec, text


def cmd_rankprobe(args):
    rep = xk.rank_probe(args.weight, args.shapes, args.alg.upper().rstrip("1"), args.ranks,
                        properties=not args.no_properties)
    text = [f"rank bound {rep['rank_bound']}"]
    for row in rep["rows"]:
        if "skipped" in row:
            text.append(f"n={row['n']}: skipped ({row['skipped']})")
        else:
            props = ""
            if "properties" in row:
                verdict = {True: "PASS", False: "FAIL", None: "skipped (guard)"}[row["properties"]]
                props = f" properties={verdict}"
            text.append(f"n={row['n']}: X=K {'PASS' if row['xk'] else 'FAIL'}{props}")
    text.append(f"minimal passing rank {rep['minimal_passing_rank']}")
    return EXIT_OK, rep, text


def cmd_cache(args):
    if args.action == "list":
        entries = list_cache()
        text = [f"{e['file']}  {e['bytes']} bytes" + ("  CORRUPT" if e.get("corrupt") else "") for e in entries]
        return EXIT_OK, {"entries": entries}, text or ["(empty)"]
    removed = clear_cache()
    return EXIT_OK, {"removed": removed}, [f"removed {removed} files"]


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache-dir", help=f"cache directory (default: ${CACHE_ENV} or ~/.cache/krcrystals)")
    common.add_argument("--limit", type=int, default=10**6, help="enumeration guard")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--alg", required=True, help="A1, C1 or D1")
    alg.add_argument("--n", type=int, required=True)

    p = argparse.ArgumentParser(prog="krc", description="KR crystals, R-matrices and coenergy")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sigma", parents=[common, alg], help="flip automorphism of a tensor element")
    s.add_argument("--shapes", type=_pair, nargs="+", required=True)
    s.add_argument("--element", nargs="+", required=True)
    s.set_defaults(func=cmd_sigma)

    s = sub.add_parser("r", parents=[common, alg], help="combinatorial R-matrix and coenergy")
    s.add_argument("--left", type=_pair, required=True)
    s.add_argument("--right", type=_pair, required=True)
    s.add_argument("--element", nargs="+", required=True)
    s.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    s.set_defaults(func=cmd_r)

    s = sub.add_parser("energy", parents=[common, alg], help="intrinsic coenergy of an element")
    s.add_argument("--shapes", type=_pair, nargs="+", required=True)
    s.add_argument("--element", nargs="+", required=True)
    s.add_argument("--method", choices=("contraction", "pairwise", "oracle"), default="contraction")
    s.set_defaults(func=cmd_energy)

    s = sub.add_parser("xsum", parents=[common, alg], help="one-dimensional sum")
    s.add_argument("--shapes", type=_pair, nargs="+", required=True)
    s.add_argument("--weight", type=_weight, required=True)
    s.add_argument("--method", choices=("contraction", "pairwise", "oracle"), default="contraction")
    s.set_defaults(func=cmd_xsum)

    s = sub.add_parser("verify", parents=[common, alg], help="X=K, strange relation or properties")
    s.add_argument("what", choices=("xk", "strange", "props"))
    s.add_argument("--shapes", type=_pair, nargs="+", required=True)
    s.add_argument("--weight", type=_weight)
    s.add_argument("--sample", type=int, default=0, help="check a seeded random sample of highest elements")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("rankprobe", parents=[common], help="X=K and properties across ranks")
    s.add_argument("--alg", required=True)
    s.add_argument("--ranks", type=_ranks, required=True, help="e.g. 4-8 or 4,6,8")
    s.add_argument("--shapes", type=_pair, nargs="+", required=True)
    s.add_argument("--weight", type=_weight, required=True)
    s.add_argument("--no-properties", action="store_true")
    s.set_defaults(func=cmd_rankprobe)

    s = sub.add_parser("cache", parents=[common], help="inspect or clear the crystal cache")
    s.add_argument("action", choices=("list", "clear"))
    s.set_defaults(func=cmd_cache)
    return p


def _emit(fmt, rec, text, stream=None):
    stream = sys.stdout if stream is None else stream
    if fmt == "json":
        json.dump(rec, stream, indent=2, sort_keys=True, default=_json_default)
        stream.write("\n")
    else:
        stream.write("\n".join(text) + "\n")


def _json_default(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    try:
        return int(x)
    except (TypeError, ValueError):
        return str(x)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    previous = os.environ.get(CACHE_ENV)
    if args.cache_dir:
        os.environ[CACHE_ENV] = args.cache_dir
    try:
        code, rec, text = args.func(args)
    except (UsageError, TableauSyntaxError, InadmissibleColumn) as exc:
        print(f"krc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"krc: refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except OutOfScope as exc:
        print(f"krc: out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except NotImplementedError as exc:
        print(f"krc: out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (AmbiguousSigma, NoSigma) as exc:
        print(f"krc: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if args.cache_dir:
            if previous is None:
                os.environ.pop(CACHE_ENV, None)
            else:
                os.environ[CACHE_ENV] = previous
    _emit(args.format, rec, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
