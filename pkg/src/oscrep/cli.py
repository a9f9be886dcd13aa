"""``oscrep`` command line: classify, build, table, chain.

Exit codes: 0 decided / passed, 1 usage or input error, 2 inconclusive,
3 no unirrep, 4 not unitarizable (or a built matrix failing verification).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import scalar as sc
from .algebra import AlgebraSpec, DeformationChain, chain_extend
from .catalog import ALGEBRAS, check_reference_chain, classify_catalog, regime_of
from .classifier import DEFAULT_WINDOW, FD, INCONCLUSIVE, NO_UNIRREP, Seed, classify
from .errors import NonUnitarizableError, OscrepError
from .exppoly import ExpPolynomial, format_exppoly, parse_exppoly
from .golden import TABLE_POINTS, check_table, table_rows
from .repbuilder import DEFAULT_TOL, build, dump_json, dump_text, verify
from .schemas import (
    validate_chain_report,
    validate_descriptor,
    validate_matrix_dump,
    validate_sweep_report,
    validate_table_report,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2
EXIT_NO_UNIRREP = 3
EXIT_NON_UNITARIZABLE = 4

DEFAULT_DIM = 10

# flags whose values may legitimately start with "-", e.g. --c -1/2
_SCALAR_FLAGS = ("--q", "--q2", "--c", "--nu0", "--f", "--steps", "--sweep")


class UsageError(OscrepError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    algebra: str | None = None
    f_text: str | None = None
    q: sc.Scalar | None = None
    q2: sc.Scalar | None = None
    c: sc.Scalar | None = None
    nu0: sc.Scalar | None = None
    window: int = DEFAULT_WINDOW
    dim: int | None = None
    mode: str = sc.EXACT
    fmt: str = "text"
    output: str | None = None
    tol: float = DEFAULT_TOL


# -- input handling --------------------------------------------------------------


def _parse_input(text: str | None, name: str):
    if text is None:
        return None
    try:
        return sc.parse_scalar(text, sc.EXACT)
    except OscrepError as exc:
        raise UsageError(f"--{name}: {exc}") from None
    except (SyntaxError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"--{name}: cannot parse {text!r} ({exc})") from None


def make_config(args: argparse.Namespace) -> RunConfig:
    """Parse scalar flags; the mode defaults to exact iff every input is rational."""
    raw = {k: _parse_input(getattr(args, k, None), k) for k in ("q", "q2", "c", "nu0")}
    f_text = getattr(args, "f", None)
    values = [v for v in raw.values() if v is not None]
    if f_text is not None:
        try:
            values.extend(t[0] for t in parse_exppoly(f_text).terms)
        except (OscrepError, SyntaxError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError(f"--f: cannot parse {f_text!r} ({exc})") from None
    default = sc.EXACT if all(sc.is_exact(v) for v in values) else sc.FLOAT
    try:
        mode = sc.resolve_mode(getattr(args, "mode", None), default)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    conv = {k: None if v is None else sc.coerce(v, mode) for k, v in raw.items()}
    return RunConfig(
        command=args.command,
        algebra=getattr(args, "algebra", None),
        f_text=f_text,
        mode=mode,
        window=getattr(args, "window", DEFAULT_WINDOW),
        dim=getattr(args, "dim", None),
        fmt=getattr(args, "format", "text"),
        output=getattr(args, "output", None),
        tol=getattr(args, "tol", DEFAULT_TOL),
        **conv,
    )


def make_spec(cfg: RunConfig) -> AlgebraSpec:
    if cfg.f_text is not None:
        if cfg.algebra is not None:
            raise UsageError("give either --algebra or --f, not both")
        f = parse_exppoly(cfg.f_text, mode=cfg.mode)
        q = cfg.q if cfg.q is not None else sc.coerce(1, cfg.mode)
        return AlgebraSpec(q, f, name="custom")
    if cfg.algebra is None:
        raise UsageError("one of --algebra or --f is required")
    from .catalog import get_algebra

    return get_algebra(cfg.algebra, cfg.q, cfg.q2).coerce(cfg.mode)


def _seed(cfg: RunConfig) -> Seed:
    if cfg.c is None or cfg.nu0 is None:
        raise UsageError("--c and --nu0 are required")
    return Seed(cfg.c, cfg.nu0)


def _emit(text: str, cfg: RunConfig) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


# -- commands --------------------------------------------------------------------


def _descriptor_text(d) -> str:
    lines = [
        f"class: {d.kind}",
        f"nu0_tilde: {'-' if d.nu0_tilde is None else sc.fmt(d.nu0_tilde)}",
        f"c: {sc.fmt(d.c)}",
        f"p: {'-' if d.p is None else d.p}",
        f"fock: {'yes' if d.is_fock else 'no'}",
        f"mode: {d.mode}",
        f"window: {d.window}",
    ]
    if d.kind in ("UB", "DegenerateUB"):
        lines.append(f"offset: {d.offset}")
    if d.lam is not None:
        lines.append(f"lambda(m): {format_exppoly(d.lam)}")
    if d.decided:
        for n, v in d.lambda_samples().items():
            lines.append(f"lambda~_{n}: {'undefined' if v is None else sc.fmt(v)}")
    if d.extra_zeros:
        lines.append(f"extra_zeros: {' '.join(map(str, d.extra_zeros))}")
    if d.reason:
        lines.append(f"reason: {d.reason}")
    return "\n".join(lines)


def _classify_exit(d) -> int:
    if d.kind == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    if d.kind == NO_UNIRREP:
        return EXIT_NO_UNIRREP
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    spec = make_spec(cfg)
    d = classify(spec, _seed(cfg), cfg.window)
    if cfg.fmt == "json":
        data = d.to_dict()
        validate_descriptor(data)
        _emit(_dumps(data), cfg)
    else:
        _emit(_descriptor_text(d), cfg)
    return _classify_exit(d)


def cmd_build(cfg: RunConfig) -> int:
    spec = make_spec(cfg)
    d = classify(spec, _seed(cfg), cfg.window)
    if not d.decided:
        sys.stderr.write(f"no representation to build: {d.kind} ({d.reason})\n")
        return _classify_exit(d)
    dim = cfg.dim if cfg.dim is not None else (d.p + 1 if d.kind == FD else DEFAULT_DIM)
    rep = build(d, spec, dim)
    report = verify(rep, spec, cfg.tol)
    if cfg.fmt == "json":
        data = json.loads(dump_json(rep, spec, report))
        validate_matrix_dump(data)
        _emit(_dumps(data), cfg)
    else:
        lines = [dump_text(rep, spec).rstrip("\n"), "# verify"]
        lines.append(f"# passed {'yes' if report['passed'] else 'no'} (tol {report['tol']:g}, {report['mode']})")
        lo, hi = report["interior"]
        lines.append(f"# interior {lo}..{hi}")
        for name, value in report["residuals"].items():
            lines.append(f"# residual {name} {'-' if value is None else '%.3g' % value}")
        edge = report["edge_residual"]
        if edge is not None:
            lines.append(f"# edge_residual {edge:.3g}")
        cas = report["casimir"]
        if cas.get("defined", True):
            lines.append(f"# casimir constant={'yes' if cas['constant'] else 'no'} matches_c={'yes' if cas['matches_c'] else 'no'}")
        else:
            lines.append(f"# casimir undefined: {cas['reason']}")
        _emit("\n".join(lines), cfg)
    return EXIT_OK if report["passed"] else EXIT_NON_UNITARIZABLE


def _table_report(algebra: str, q, check: bool) -> dict:
    families = classify_catalog(algebra, q)
    q_val = sc.coerce(1, sc.mode_of(q)) if q is None else q
    out = {
        "algebra": algebra.lower(),
        "q": sc.to_json(q_val),
        "regime": regime_of(algebra, q_val),
        "empty": not families,
        "families": [fam.describe() for fam in families],
    }
    if check:
        golden = table_rows(algebra, q_val)
        report = check_table(algebra, q_val)
        out["golden"] = [r.to_dict() for r in golden.rows]
        out["check"] = {"ok": report.ok, "matched_rows": report.matched, "problems": report.problems}
    return out


def _table_text(rep: dict) -> str:
    lines = [f"{rep['algebra']}  q={rep['q']}  regime {rep['regime']}"]
    if rep["empty"]:
        lines.append("  (no unirreps)")
    for fam in rep["families"]:
        tag = fam["type"] + (" (degenerate)" if fam["degenerate"] else "")
        if "p" in fam:
            tag += f" p={fam['p']}"
        lines.append(f"  {tag:<18} nu0~ in {fam['nu0']:<6} {fam['c']:<32} lambda~_n = {fam['lambda']}")
    if "check" in rep:
        chk = rep["check"]
        if chk["ok"]:
            lines.append(f"  check: ok ({chk['matched_rows']} rows match the golden table)")
        else:
            lines.append("  check: MISMATCH")
            lines.extend(f"    {p}" for p in chk["problems"])
    return "\n".join(lines)


def _sweep_points(cfg: RunConfig, text: str | None):
    if text:
        pts = [_parse_input(t.strip(), "sweep") for t in text.split(",") if t.strip()]
        return [sc.coerce(p, cfg.mode) for p in pts]
    key = cfg.algebra.lower()
    if key not in TABLE_POINTS:
        return [sc.coerce(1, cfg.mode)]
    return [sc.coerce(p, cfg.mode) for p in TABLE_POINTS[key]]


def cmd_table(cfg: RunConfig, check: bool = False, sweep: str | None = None, do_sweep: bool = False) -> int:
    if cfg.algebra is None:
        raise UsageError("--algebra is required")
    if do_sweep:
        points = _sweep_points(cfg, sweep)
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(lambda q: _table_report(cfg.algebra, q, check), points))
        data = {"algebra": cfg.algebra.lower(), "points": reports}
        validate_sweep_report(data)
        if cfg.fmt == "json":
            _emit(_dumps(data), cfg)
        else:
            _emit("\n".join(_table_text(r) for r in reports), cfg)
        ok = all(r.get("check", {"ok": True})["ok"] for r in reports)
        return EXIT_OK if ok else EXIT_USAGE
    rep = _table_report(cfg.algebra, cfg.q, check)
    validate_table_report(rep)
    _emit(_dumps(rep) if cfg.fmt == "json" else _table_text(rep), cfg)
    if check and not rep["check"]["ok"]:
        return EXIT_USAGE
    return EXIT_OK


def cmd_chain(cfg: RunConfig, steps_text: str | None = None) -> int:
    steps = []
    if steps_text:
        steps = [sc.coerce(_parse_input(t.strip(), "steps"), cfg.mode) for t in steps_text.split(",") if t.strip()]
    else:
        if cfg.q is None:
            raise UsageError("chain needs --q (and optionally --q2) or --steps")
        steps = [cfg.q] + ([cfg.q2] if cfg.q2 is not None else [])
    base = parse_exppoly(cfg.f_text, mode=cfg.mode) if cfg.f_text else ExpPolynomial.constant(sc.coerce(1, cfg.mode))
    chain = DeformationChain.start(base)
    for q in steps:
        chain = chain_extend(chain, q)
    rows = []
    for k in range(chain.depth + 1):
        q = sc.coerce(1, cfg.mode) if k == 0 else chain.steps[k - 1]
        rows.append({"k": k, "q": sc.to_json(q), "F": format_exppoly(chain.F(k)), "f": format_exppoly(chain.f(k))})
    data = {"steps": rows}
    if cfg.f_text is None and not steps_text:
        data["checks"] = check_reference_chain(steps[0])
    validate_chain_report(data)
    if cfg.fmt == "json":
        _emit(_dumps(data), cfg)
    else:
        lines = [f"k={r['k']}  q={r['q']}\n  F_{r['k']}(n) = {r['F']}\n  f_{r['k']}(n) = {r['f']}" for r in rows]
        for name, ok in data.get("checks", {}).items():
            lines.append(f"check {name}: {'ok' if ok else 'FAILED'}")
        _emit("\n".join(lines), cfg)
    if not all(data.get("checks", {}).values()):
        return EXIT_USAGE
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------


def _common(p: argparse.ArgumentParser, seed: bool = True) -> None:
    p.add_argument("--algebra", help=f"named algebra: {', '.join(sorted(ALGEBRAS))}")
    p.add_argument("--f", help="custom deformation function f(n), e.g. '2^n + n'")
    p.add_argument("--q", help="deformation parameter (for --f: the quommutator parameter)")
    p.add_argument("--q2", help="second parameter (chakrabarti-jagannathan)")
    if seed:
        p.add_argument("--c", help="Casimir eigenvalue of the seed")
        p.add_argument("--nu0", help="N eigenvalue of the seed")
        p.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="scan steps per direction")
    p.add_argument("--mode", choices=sc.MODES, help="arithmetic (default: exact iff all inputs are rational)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oscrep", description="Unirreps of deformed oscillator algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the unirrep through a seed (c, nu0)")
    _common(p)

    p = sub.add_parser("build", help="build and verify matrices for a classified unirrep")
    _common(p)
    p.add_argument("--dim", type=int, help="number of basis states (FD: must be p+1)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("table", help="closed-form unirrep families of a named algebra")
    _common(p, seed=False)
    p.add_argument("--check", action="store_true", help="diff against the golden tables")
    p.add_argument(
        "--sweep",
        nargs="?",
        const="",
        default=None,
        help="comma-separated q values (default: one point per tabulated regime)",
    )

    p = sub.add_parser("chain", help="iterate minimal deformations from f (default f = 1)")
    _common(p, seed=False)
    p.add_argument("--steps", help="comma-separated deformation parameters q1,q2,...")
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--c -1/2`` into ``--c=-1/2`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SCALAR_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = make_config(args)
        if cfg.command == "classify":
            return cmd_classify(cfg)
        if cfg.command == "build":
            return cmd_build(cfg)
        if cfg.command == "table":
            return cmd_table(cfg, args.check, args.sweep, args.sweep is not None)
        return cmd_chain(cfg, args.steps)
    except NonUnitarizableError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NON_UNITARIZABLE
    except (OscrepError, ValueError, ZeroDivisionError, SyntaxError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
