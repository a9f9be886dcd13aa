"""Golden classification tables and the comparison against the closed-form catalog.

The records in ``data/tables.json`` are a literal transcription with formulas
kept as text; they are parsed here with :func:`oscrep.exppoly.parse_exppoly`
and never touch the catalog's hand-coded families.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from . import scalar as sc
from .catalog import TABULATED, Family, Interval, classify_catalog, regime_of
from .classifier import DEGENERATE_UB
from .errors import DomainError, RegimeError, UnknownAlgebraError
from .exppoly import parse_constant, parse_exppoly
from .scalar import Scalar

LAMBDA_RANGE = range(-5, 6)

# integer sample points per domain keep the comparison exact
DOMAIN_SAMPLES = {
    "R": (-3, -2, -1, 0, 1, 2, 3),
    "Z": (-3, -2, -1, 0, 1, 2, 3),
    "2Z": (-4, -2, 0, 2, 4),
    "2Z+1": (-3, -1, 1, 3),
    "[0,1)": (0,),
    "{0}": (0,),
}


@lru_cache(maxsize=1)
def load_tables() -> dict:
    text = resources.files("oscrep").joinpath("data/tables.json").read_text(encoding="utf-8")
    data = json.loads(text)
    from .schemas import validate_golden

    validate_golden(data)
    return data


def parse_interval(text: str, env: dict | None = None, mode: str = sc.EXACT) -> Interval:
    """``"(-inf, 1/(q-1)]"`` -> :class:`Interval`; endpoints may use names from ``env``."""
    text = text.strip()
    if len(text) < 2 or text[0] not in "([" or text[-1] not in ")]":
        raise ValueError(f"bad interval {text!r}")
    depth, split = 0, None
    for i, ch in enumerate(text[1:-1], start=1):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            split = i
    if split is None:
        raise ValueError(f"bad interval {text!r}")

    def endpoint(s):
        s = s.strip()
        if s in ("inf", "+inf", "-inf"):
            return None
        return parse_constant(s, env or {}, mode)

    return Interval(endpoint(text[1:split]), endpoint(text[split + 1 : -1]), text[0] == "[", text[-1] == "]")


@dataclass(frozen=True)
class GoldenRow:
    algebra: str
    regime: str
    type: str
    nu0_domain: str
    degenerate: bool = False
    p: int | None = None
    c_text: str | None = None
    c_range_text: tuple = ()
    lambda_text: str = ""
    q: Scalar = Fraction(1)

    @property
    def kind(self) -> str:
        return DEGENERATE_UB if self.degenerate else self.type

    def c_of(self, nu0: Scalar) -> Scalar:
        return parse_constant(self.c_text, {"q": self.q, "nu0": nu0}, sc.mode_of(self.q, nu0))

    def c_range(self) -> tuple:
        mode = sc.mode_of(self.q)
        return tuple(parse_interval(t, {"q": self.q}, mode) for t in self.c_range_text)

    def lambda_tilde(self, nu0: Scalar, c: Scalar, n: int) -> Scalar:
        env = {"q": self.q, "nu0": nu0, "c": c}
        return parse_exppoly(self.lambda_text, env, sc.mode_of(self.q, nu0, c))(n)

    def to_dict(self) -> dict:
        out = {"type": self.type, "degenerate": self.degenerate, "nu0": self.nu0_domain, "lambda": self.lambda_text}
        if self.p is not None:
            out["p"] = self.p
        if self.c_text is not None:
            out["c"] = self.c_text
        else:
            out["c_range"] = list(self.c_range_text)
        return out


@dataclass(frozen=True)
class TableRows:
    """Golden rows for one algebra at one ``q``; ``empty`` marks a regime with no unirreps."""

    algebra: str
    q: Scalar
    regime: str
    rows: tuple = ()
    empty: bool = False

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "q": sc.to_json(self.q),
            "regime": self.regime,
            "empty": self.empty,
            "rows": [r.to_dict() for r in self.rows],
        }


def _in_q_range(q: Scalar, ranges) -> bool:
    return any(parse_interval(r).contains(q, eps=0.0) for r in ranges)


def table_rows(name: str, q=None) -> TableRows:
    """The transcribed table rows covering ``(name, q)``."""
    key = name.lower()
    if key not in TABULATED:
        from .catalog import ALGEBRAS

        if key in ALGEBRAS:
            raise RegimeError(f"{name} has no tabulated classification")
        raise UnknownAlgebraError(f"unknown algebra {name!r}")
    q = Fraction(1) if q is None else q
    if isinstance(q, int):
        q = Fraction(q)
    if q == 0:
        raise DomainError("q must be nonzero")
    records = [
        r for r in load_tables()["records"] if r["algebra"] == key and _in_q_range(q, r["q_range"])
    ]
    if not records:
        raise RegimeError(f"{name} has no table row for q = {sc.fmt(q)}")
    first = records[0]
    if first["type"] is None:
        return TableRows(key, q, first["regime"], (), True)
    rows = tuple(
        GoldenRow(
            algebra=key,
            regime=r["regime"],
            type=r["type"],
            nu0_domain=r["nu0"],
            degenerate=r.get("degenerate", False),
            p=r.get("p"),
            c_text=r.get("c"),
            c_range_text=tuple(r.get("c_range", ())),
            lambda_text=r["lambda"],
            q=q,
        )
        for r in records
    )
    return TableRows(key, q, first["regime"], rows, False)


# -- comparison ------------------------------------------------------------------


def _row_key(kind: str, domain: str, p) -> tuple:
    return (kind, domain, p)


def _sample_cs(intervals) -> list:
    """A few c values inside a union of intervals."""
    out = []
    for iv in intervals:
        lo, hi = iv.lo, iv.hi
        if lo is None and hi is None:
            pts = [Fraction(0)]
        elif lo is None:
            pts = [hi - 5, hi - 1, hi - Fraction(1, 3)]
        elif hi is None:
            pts = [lo + Fraction(1, 3), lo + 1, lo + 5]
        else:
            pts = [lo + (hi - lo) * Fraction(k, 4) for k in (1, 2, 3)]
        pts += [e for e, closed in ((lo, iv.lo_closed), (hi, iv.hi_closed)) if closed and e is not None]
        out.extend(pts)
    return out


def _safe(fn, *args):
    try:
        return fn(*args)
    except (DomainError, ZeroDivisionError):
        return None


def _same(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return sc.approx_equal(a, b, 0.0 if sc.is_exact(a) and sc.is_exact(b) else sc.EPS_CMP)


def compare_family(fam: Family, row: GoldenRow) -> list[str]:
    """Mismatches between one catalog family and one golden row (empty list if identical)."""
    problems = []
    where = f"{row.algebra} q={sc.fmt(row.q)} {row.kind} nu0 in {row.nu0_domain}"
    if fam.table_type != row.type:
        problems.append(f"{where}: type {fam.table_type} != {row.type}")
    if (fam.c_of is None) != (row.c_text is None):
        problems.append(f"{where}: c given as formula in one and as a range in the other")
        return problems
    samples = []
    if fam.c_of is not None:
        for nu in DOMAIN_SAMPLES[row.nu0_domain]:
            nu = Fraction(nu)
            got, want = _safe(fam.c_of, nu), _safe(row.c_of, nu)
            if not _same(got, want):
                problems.append(f"{where}: c(nu0={nu}) {sc.fmt(got) if got is not None else None} != {want}")
            samples.append((nu, want))
    else:
        got_iv, want_iv = fam.c_range, row.c_range()
        if tuple(got_iv) != tuple(want_iv):
            problems.append(
                f"{where}: c range {' U '.join(map(str, got_iv))} != {' U '.join(map(str, want_iv))}"
            )
        for nu in DOMAIN_SAMPLES[row.nu0_domain]:
            samples.extend((Fraction(nu), c) for c in _sample_cs(want_iv))
    for nu, c in samples:
        if c is None:
            continue
        for n in LAMBDA_RANGE:
            got = _safe(fam.lambda_tilde, nu, c, n)
            want = _safe(row.lambda_tilde, nu, c, n)
            if not _same(got, want):
                problems.append(f"{where}: lambda~_{n}(nu0={nu}, c={sc.fmt(c)}) {got} != {want}")
    return problems


@dataclass
class CheckReport:
    algebra: str
    q: Scalar
    regime: str
    matched: int = 0
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "q": sc.to_json(self.q),
            "regime": self.regime,
            "matched_rows": self.matched,
            "ok": self.ok,
            "problems": list(self.problems),
        }


def check_table(name: str, q=None) -> CheckReport:
    """Diff :func:`classify_catalog` against the golden rows at ``q``."""
    golden = table_rows(name, q)
    families = classify_catalog(name, golden.q)
    report = CheckReport(golden.algebra, golden.q, golden.regime)
    if golden.regime != regime_of(golden.algebra, golden.q):
        report.problems.append(f"regime {regime_of(golden.algebra, golden.q)} != {golden.regime}")
    if golden.empty:
        if families:
            report.problems.append(f"golden table is empty but catalog has {len(families)} families")
        return report
    by_key = {}
    for row in golden.rows:
        by_key.setdefault(_row_key(row.kind, row.nu0_domain, row.p), []).append(row)
    fam_keys = {}
    for fam in families:
        fam_keys.setdefault(_row_key(fam.kind, fam.nu0_domain, fam.p), []).append(fam)
    for key in sorted(set(by_key) | set(fam_keys), key=str):
        rows, fams = by_key.get(key, []), fam_keys.get(key, [])
        if len(rows) != len(fams):
            report.problems.append(f"row {key}: {len(fams)} catalog families vs {len(rows)} golden rows")
            continue
        for fam, row in zip(fams, rows):
            issues = compare_family(fam, row)
            report.problems.extend(issues)
            if not issues:
                report.matched += 1
    return report


# q sample points hitting every tabulated regime
TABLE_POINTS = {
    "arik-coon": (Fraction(2), Fraction(1), Fraction(1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-2)),
    "chaturvedi-srinivasan": (Fraction(2), Fraction(1, 2), Fraction(-1, 2), Fraction(-1), Fraction(-2)),
    "tamm-dancoff": (Fraction(1, 2), Fraction(2), Fraction(-1, 2)),
}


__all__ = [
    "CheckReport",
    "GoldenRow",
    "TABLE_POINTS",
    "TableRows",
    "check_table",
    "compare_family",
    "load_tables",
    "parse_interval",
    "table_rows",
]
