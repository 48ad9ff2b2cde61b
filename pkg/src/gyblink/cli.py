"""``gyblink`` command line: verification reports, invariants, oracle comparison, benchmarks."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .braidkit import BraidError, closure_components, default_catalog, format_braid, load_catalog, parse_braid, writhe
from .gybcore import (
    StructureError,
    apply_word_dense,
    apply_word_structured,
    check_enhancement,
    check_far_commutativity,
    check_gybe,
    min_poly_check,
    operator_from_json,
    rep_trace,
    spectrum_check,
)
from .linkinv import SCHEMES, evaluate, standard_egyb
from .numkit import SpectrumMismatchError
from .reports import CheckReport
from .skein_oracle import compare_invariants, dubrovnik, parse_pd, specialization_params
from .so_n2 import build_gyb, compare_with_rnu, default_data

DEFAULT_TOL = 1e-10
TOL_ENV = "GYBLINK_TOL"


# -- argument types ------------------------------------------------------------------

def _odd(text: str) -> int:
    value = int(text)
    if value < 3 or value % 2 == 0:
        raise argparse.ArgumentTypeError(f"N must be odd and >= 3, got {value}")
    return value


def parse_n_spec(text: str) -> list[int]:
    """``"5"``, ``"3,5,7"`` or the inclusive range ``"3..13"`` (odd values only)."""
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = _odd(lo_text), _odd(hi_text)
            if lo > hi:
                raise argparse.ArgumentTypeError(f"range {text!r} is not ascending")
            return list(range(lo, hi + 1, 2))
        values = sorted({_odd(part) for part in text.split(",") if part.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse N specification {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty N specification")
    return values


def parse_int_range(text: str) -> list[int]:
    """``"8"``, ``"3,5"`` or ``"3..10"`` (every integer, at least 1)."""
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
            values = list(range(lo, hi + 1))
        else:
            values = sorted({int(part) for part in text.split(",") if part.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse range {text!r}") from None
    if not values or values[0] < 1:
        raise argparse.ArgumentTypeError(f"range {text!r} must be nonempty with values >= 1")
    return values


def default_tol() -> float:
    text = os.environ.get(TOL_ENV)
    if text is None:
        return DEFAULT_TOL
    try:
        value = float(text)
    except ValueError:
        raise SystemExit(f"gyblink: {TOL_ENV}={text!r} is not a number") from None
    if not value > 0:
        raise SystemExit(f"gyblink: {TOL_ENV} must be positive")
    return value


# -- output ------------------------------------------------------------------------

def _jsonable(value: Any) -> Any:
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, np.bool_)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _fmt(value: Any) -> str:
    if isinstance(value, (complex, np.complexfloating)):
        return f"{value.real:+.12f}{value.imag:+.12f}i"
    if isinstance(value, float):
        return f"{value:.3e}"
    return str(value)


@dataclass
class Output:
    """Collects records in a fixed field order and tracks the overall verdict."""

    structured: bool
    ok: bool = True
    stream: Any = field(default=sys.stdout)

    def record(self, fields: dict[str, Any], passed: bool | None = None) -> None:
        if passed is False:
            self.ok = False
        if self.structured:
            self.stream.write(json.dumps(_jsonable(fields)) + "\n")
        else:
            mark = "" if passed is None else ("PASS " if passed else "FAIL ")
            self.stream.write(mark + "  ".join(f"{k}={_fmt(v)}" for k, v in fields.items()) + "\n")

    def report(self, N: int, rep: CheckReport) -> None:
        self.record({"N": N, "check": rep.name, "passed": rep.passed, "residual": rep.residual, "tol": rep.tol}, rep.passed)


# -- commands -------------------------------------------------------------------------

def cmd_verify(args, out: Output) -> None:
    for N in args.N:
        op = build_gyb(N)
        reports: list[Callable[[], CheckReport]] = [
            lambda: check_gybe(op, args.tol),
            lambda: check_far_commutativity(op, args.tol),
            lambda: check_enhancement(standard_egyb(N, op), tol=args.tol),
            lambda: min_poly_check(N, args.tol),
            lambda: spectrum_check(op, list(default_data(N).r_symbols.values()), args.tol),
            lambda: compare_with_rnu(N, args.tol),
        ]
        for make in reports:
            try:
                rep = make()
            except (SpectrumMismatchError, ValueError) as exc:
                rep = CheckReport(type(exc).__name__, False, math.inf, args.tol, {"error": str(exc)})
            out.report(N, rep)


def _resolve_links(args) -> list[tuple[str, Any]]:
    catalog = load_catalog(args.catalog) if args.catalog else default_catalog()
    if args.word is not None:
        try:
            return [("word", parse_braid(args.word))]
        except BraidError as exc:
            raise _UsageError(f"cannot parse braid word: {exc}") from None
    names = []
    if getattr(args, "link", None):
        names.append(args.link)
    if args.links:
        names += [n.strip() for n in args.links.split(",") if n.strip()]
    if not names:
        return sorted((name, spec.word) for name, spec in catalog.items())
    resolved = []
    for name in names:
        if name in catalog:
            resolved.append((name, catalog[name].word))
            continue
        try:
            resolved.append((name, parse_braid(name)))
        except BraidError:
            raise _UsageError(f"unknown link {name!r} (catalog has {', '.join(sorted(catalog))})") from None
    return sorted(resolved)


def cmd_invariant(args, out: Output) -> None:
    links = _resolve_links(args)
    for N in args.N:
        s = standard_egyb(N)
        for name, w in links:
            raw = evaluate(s, w, "raw").value
            framed = evaluate(s, w, "framed").value
            normalized = evaluate(s, w, args.scheme).value
            out.record(
                {
                    "N": N,
                    "link": name,
                    "word": format_braid(w),
                    "strands": w.strands,
                    "writhe": writhe(w),
                    "components": closure_components(w),
                    "raw": raw,
                    "framed": framed,
                    "scheme": args.scheme,
                    "normalized": normalized,
                }
            )


def cmd_compare(args, out: Output) -> None:
    if args.pd:
        with open(args.pd, encoding="utf-8") as fh:
            diagram = parse_pd(fh.read())
        for N in args.N:
            sign = args.sign or 1
            value = dubrovnik(diagram, specialization_params(N, sign))
            out.record({"N": N, "pd": args.pd, "sign": sign, "oracle": value})
        return
    catalog = load_catalog(args.catalog) if args.catalog else default_catalog()
    if args.links:
        wanted = [n.strip() for n in args.links.split(",") if n.strip()]
        missing = [n for n in wanted if n not in catalog]
        if missing:
            raise _UsageError(f"unknown links {missing}")
        catalog = {n: catalog[n] for n in wanted}
    for N in args.N:
        rep = compare_invariants(N, catalog, tol=args.tol, force_sign=args.sign)
        for name in sorted(rep.details["links"]):
            row = rep.details["links"][name]
            passed = row["deviation"] <= args.tol
            out.record(
                {
                    "N": N,
                    "link": name,
                    "artifact": row["artifact"],
                    "oracle": row["oracle"],
                    "deviation": row["deviation"],
                    "sign": rep.details["sign"],
                },
                passed,
            )


def cmd_bench(args, out: Output) -> None:
    if args.operator:
        with open(args.operator, encoding="utf-8") as fh:
            op = operator_from_json(fh.read())
    else:
        op = build_gyb(args.N[0])
    if op.middle_blocks is None:
        raise _UsageError("operator lacks the middle-coupling structure; structured application is unavailable")
    rng = np.random.default_rng(args.seed)
    crossover = None
    for n in args.n:
        w = _bench_word(n, args.length, rng)
        dim = op.ty.space_dim(n)
        fields: dict[str, Any] = {"n": n, "dim": dim, "word_length": len(w.letters)}
        # the dense path caches one full matrix per distinct letter
        if len(set(w.letters)) * dim * dim * 16 > args.max_dense_bytes:
            fields.update({"dense_s": None, "structured_s": None, "agreement": None, "note": "dense skipped: memory guard"})
            out.record(fields)
            break
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        t0 = time.perf_counter()
        dense = apply_word_dense(op, w, v)
        t1 = time.perf_counter()
        structured = apply_word_structured(op, w, v)
        t2 = time.perf_counter()
        dev = float(np.abs(dense - structured).max())
        if n > 1:
            reference = rep_trace(op, w, method="dense") if n <= 8 else rep_trace(op, w, method="structured")
            tr_dev = abs(reference - rep_trace(op, w, method="network"))
        else:
            tr_dev = 0.0
        worst = max(dev, tr_dev)
        passed = worst <= args.tol * max(1.0, float(np.abs(dense).max()))
        fields.update({"dense_s": t1 - t0, "structured_s": t2 - t1, "agreement": worst})
        out.record(fields, passed)
        if crossover is None and t2 - t1 < t1 - t0:
            crossover = n
    out.record({"crossover_n": crossover})


def _bench_word(n: int, length: int, rng: np.random.Generator):
    from .braidkit import BraidWord

    if n == 1:
        return BraidWord(1, ())
    gens = rng.integers(1, n, size=length)
    signs = rng.choice([-1, 1], size=length)
    return BraidWord(n, tuple(int(g * s) for g, s in zip(gens, signs)))


def cmd_catalog(args, out: Output) -> None:
    catalog = load_catalog(args.catalog) if args.catalog else default_catalog()
    for name in sorted(catalog):
        w = catalog[name].word
        out.record(
            {"link": name, "strands": w.strands, "word": format_braid(w), "writhe": writhe(w), "components": closure_components(w)}
        )


class _UsageError(Exception):
    pass


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    tol = default_tol()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=tol, help=f"absolute tolerance (default {tol:g}; env {TOL_ENV})")
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--catalog", help="catalog JSON file (default: bundled catalog)")

    def with_n(p, default="5"):
        p.add_argument("--N", type=parse_n_spec, default=parse_n_spec(default), help="odd N: value, list or range a..b")

    parser = argparse.ArgumentParser(prog="gyblink", description="Generalized Yang-Baxter link invariants")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="operator identities for each N")
    with_n(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariant", parents=[common], help="invariant of a catalog link or braid word")
    with_n(p)
    p.add_argument("link", nargs="?", help="catalog name or braid text such as '1 1 1'")
    p.add_argument("--word", help="braid word, e.g. '1 -2 1 -2'")
    p.add_argument("--links", help="comma-separated catalog names")
    p.add_argument("--scheme", choices=[s for s in SCHEMES if s not in ("raw", "framed")], default="unit-knot")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("compare", parents=[common], help="compare with the Dubrovnik oracle")
    with_n(p, "3,5,7")
    p.add_argument("--links", help="comma-separated catalog names")
    p.add_argument("--sign", type=int, choices=(1, -1), help="force the sign of z instead of calibrating")
    p.add_argument("--pd", help="evaluate the oracle on a planar-diagram file instead")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", parents=[common], help="dense versus structured application")
    with_n(p)
    p.add_argument("--n", type=parse_int_range, default=parse_int_range("3..8"), help="strand counts, e.g. 3..10")
    p.add_argument("--length", type=int, default=20, help="word length")
    p.add_argument("--operator", help="operator JSON file (default: the SO(N)_2 operator)")
    p.add_argument("--max-dense-bytes", type=int, default=3 << 29, help="memory guard for the dense path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("catalog", parents=[common], help="list catalog links")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(structured=args.format == "structured", stream=sys.stdout)
    try:
        args.func(args, out)
    except (_UsageError, StructureError, OSError) as exc:
        parser.exit(2, f"gyblink: error: {exc}\n")
    return 0 if out.ok else 1


if __name__ == "__main__":
    sys.exit(main())
