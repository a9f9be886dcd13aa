"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed in the summary."""

import random
import time
from collections import Counter
from fractions import Fraction

import numpy as np

from oscrep import scalar as sc
from oscrep.algebra import brute_force_structure, solve_structure
from oscrep.catalog import classify_catalog, get_algebra
from oscrep.classifier import BFA, BFB, FD, NO_UNIRREP, UB, Seed, classify
from oscrep.errors import DomainError, PreconditionError
from oscrep.exppoly import ExpPolynomial, q_number
from oscrep.golden import TABLE_POINTS, check_table, table_rows
from oscrep.repbuilder import K_element, build, casimir_matrix, verify

H = Fraction(1, 2)
WINDOW = 10_000


def _table_check(name, state, budget=None):
    start = time.perf_counter()
    reports = [check_table(name, q) for q in TABLE_POINTS[name]]
    elapsed = time.perf_counter() - start
    rows = sum(r.matched for r in reports)
    state["detail"] = f"{len(reports)} q-points, {rows} rows, {elapsed:.3f}s"
    for r in reports:
        assert r.ok, (r.q, r.problems)
    if budget is not None:
        assert elapsed < budget
    return reports


def test_criterion_01_arik_coon_table(criterion):
    with criterion(1, "arik-coon table regenerated exactly") as state:
        _table_check("arik-coon", state, budget=1.0)


def test_criterion_02_chaturvedi_srinivasan_table(criterion):
    with criterion(2, "chaturvedi-srinivasan table regenerated exactly, q<-1 BFA row") as state:
        reports = _table_check("chaturvedi-srinivasan", state)
        assert len(reports) == 5
        for q in (Fraction(-2), Fraction(-3)):
            (bfa,) = [f for f in classify_catalog("chaturvedi-srinivasan", q) if f.kind == BFA]
            for nu in (Fraction(-3), Fraction(1), Fraction(5)):
                for n in range(-5, 6):
                    expected = q ** (nu + 1) * q_number(n - 1, q)
                    assert bfa.lambda_tilde(nu, bfa.c_of(nu), n) == expected
                d = classify(get_algebra("chaturvedi-srinivasan", q), Seed(bfa.c_of(nu), nu - 3), WINDOW)
                assert (d.kind, d.nu0_tilde) == (BFA, nu)


def test_criterion_03_tamm_dancoff(criterion):
    with criterion(3, "tamm-dancoff: one BFB family for q>0, NoUnirrep for q<0") as state:
        for q in (H, Fraction(2)):
            (fam,) = classify_catalog("tamm-dancoff", q)
            (row,) = table_rows("tamm-dancoff", q).rows
            assert fam.kind == row.kind == BFB
            for nu in (Fraction(0), Fraction(3, 2), Fraction(-2)):
                for n in range(-5, 6):
                    assert fam.lambda_tilde(nu, fam.c_of(nu), n) == q ** (nu + n - 1) * n
        rng = random.Random(2024)
        kinds = []
        for q in (-H, Fraction(-2)):
            spec = get_algebra("tamm-dancoff", q)
            assert classify_catalog("tamm-dancoff", q) == []
            admissible = drawn = 0
            while admissible < 200:
                drawn += 1
                nu0 = Fraction(rng.randint(-30, 30))
                if drawn % 2:
                    # c that puts a zero of lambda at an integer
                    m = nu0 + rng.randint(-5, 5)
                    c = spec.q_power(-m) * spec.F(m)
                else:
                    c = Fraction(rng.randint(-400, 400), rng.randint(1, 40))
                try:
                    kinds.append(classify(spec, Seed(c, nu0), WINDOW).kind)
                except PreconditionError:
                    # lambda_0 < 0: no state at nu0 at all
                    continue
                admissible += 1
        state["detail"] = f"{len(kinds)} admissible seeds"
        assert kinds.count(NO_UNIRREP) == len(kinds)


def _random_problem(rng):
    bases = [Fraction(b) for b in (1, -1, 2, -2, 3)] + [Fraction(1, 2), Fraction(-1, 3), Fraction(5, 4)]
    q = rng.choice(bases + [Fraction(7, 5), Fraction(-3, 2)])
    terms = []
    for _ in range(rng.randint(1, 4)):
        base = q if rng.random() < 0.3 else rng.choice(bases)
        terms.append((Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)), base, rng.randint(0, 3)))
    return ExpPolynomial(terms), q


def test_criterion_04_oracle_equivalence(criterion):
    with criterion(4, "solver vs brute-force oracle, 200 random (f, q)") as state:
        rng = random.Random(44)
        start = time.perf_counter()
        worst = naive = 0.0
        for _ in range(200):
            f, q = _random_problem(rng)
            F = solve_structure(f, q)
            Ff = solve_structure(f.to_float(), float(q))
            for n in range(21):
                exact = brute_force_structure(f, q, n)
                assert F(n) == exact
                diff = abs(Ff(n) - float(exact))
                # relative to the size of the closed-form terms that cancel in the sum
                worst = max(worst, diff / max(1.0, abs(float(exact)), F.magnitude(n)))
                naive = max(naive, diff / max(1.0, abs(float(exact))))
        elapsed = time.perf_counter() - start
        state["detail"] = f"worst float rel err {worst:.1e} (vs |F| alone {naive:.1e}), {elapsed:.2f}s"
        assert worst <= 1e-12
        assert elapsed < 5.0


def _domain_samples(domain, q):
    integer = {"Z": [-2, 0, 3], "2Z": [-2, 0, 2], "2Z+1": [-1, 1, 3], "{0}": [0]}
    if domain in integer:
        return [Fraction(x) for x in integer[domain]]
    if domain == "[0,1)":
        return [Fraction(0)] if q < 0 else [Fraction(0), Fraction(1, 3)]
    return [Fraction(0), Fraction(2), Fraction(-5, 2), Fraction(1, 3)] if q > 0 else [Fraction(0), Fraction(2)]


def _interval_samples(iv):
    lo, hi = iv.lo, iv.hi
    if lo is None and hi is None:
        pts = [Fraction(-3), Fraction(0), Fraction(5, 2)]
    elif lo is None:
        pts = [hi - 7, hi - Fraction(1, 7)]
    elif hi is None:
        pts = [lo + Fraction(1, 7), lo + 7]
    else:
        pts = [lo + (hi - lo) / 7, (lo + hi) / 2, hi - (hi - lo) / 5]
    if lo is not None and iv.lo_closed:
        pts.append(lo)
    if hi is not None and iv.hi_closed:
        pts.append(hi)
    return pts


def _family_seeds(fam, q):
    for nu in _domain_samples(fam.nu0_domain, q):
        if fam.c_of is not None:
            yield fam.c_of(nu), nu
        else:
            for iv in fam.c_range:
                for c in _interval_samples(iv):
                    yield c, nu


def _catalog_descriptors():
    for name, points in TABLE_POINTS.items():
        for q in points:
            spec = get_algebra(name, q)
            for fam in classify_catalog(name, q):
                for c, nu in _family_seeds(fam, q):
                    d = classify(spec, Seed(c, nu), WINDOW)
                    yield name, q, spec, fam, d


def test_criterion_05_matrix_verification(criterion):
    with criterion(5, "catalog reps verify, Casimir constant and equal to c") as state:
        count = 0
        for name, q, spec, fam, d in _catalog_descriptors():
            assert fam.matches(d), (name, q, d)
            dims = [d.p + 1] if d.kind == FD else [3, 10, 50]
            for mode_spec, mode_d in ((spec, d), (spec.coerce("float"), None)):
                if mode_d is None:
                    mode_d = classify(mode_spec, Seed(sc.coerce(d.c, "float"), sc.coerce(d.nu0_tilde, "float")), WINDOW)
                    assert mode_d.kind == d.kind
                for dim in dims:
                    rep = build(mode_d, mode_spec, dim)
                    report = verify(rep, mode_spec, 1e-10)
                    assert report["passed"], (name, q, d, dim, report)
                    if rep.mode == "exact":
                        assert all(v == 0 for v in report["residuals"].values() if v is not None)
                    cas = casimir_matrix(rep, mode_spec, 1e-10)
                    assert cas["constant"] and cas["matches_c"], (name, q, d, dim, cas)
                    count += 1
        state["detail"] = f"{count} reps"
        assert count > 100


def test_criterion_06_fock_coincidence(criterion):
    with criterion(6, "Fock reps coincide, nu0~=1 reps differ"):
        q = Fraction(2)
        ac, cs = get_algebra("arik-coon", q), get_algebra("chaturvedi-srinivasan", q)
        da, dc = classify(ac, Seed(0, 0)), classify(cs, Seed(0, 0))
        assert da.is_fock and dc.is_fock
        for n in range(21):
            assert da.lambda_tilde(n) == dc.lambda_tilde(n)
        nu = Fraction(1)
        da = classify(ac, Seed(q ** -nu * q_number(nu, q), nu))
        dc = classify(cs, Seed(q_number(nu, q), nu))
        assert (da.kind, da.nu0_tilde, dc.kind, dc.nu0_tilde) == (BFB, nu, BFB, nu)
        assert da.c != dc.c
        assert all(da.lambda_tilde(n) != dc.lambda_tilde(n) for n in range(1, 21))


def test_criterion_07_classical_limit(criterion):
    with criterion(7, "q -> 1 limit of BFB reps, UB bound diverges") as state:
        worst = 0.0
        for name in ("arik-coon", "chaturvedi-srinivasan"):
            for q in (1 - 1e-6, 1 + 1e-6):
                d = classify(get_algebra(name, q), Seed(0.0, 0.0), WINDOW)
                assert (d.kind, d.nu0_tilde) == (BFB, 0.0)
                for n in range(21):
                    rel = abs(d.lambda_tilde(n) - n) / max(1, n)
                    worst = max(worst, rel)
        state["detail"] = f"worst |lambda~_n - n| / max(1, n) = {worst:.1e}"
        assert worst <= 1e-4
        q = 1 - 1e-6
        (ub,) = [f for f in classify_catalog("arik-coon", q) if f.kind == UB and not f.degenerate]
        bound = ub.c_range[0].hi
        assert ub.c_range[0].lo is None
        assert abs(bound - 1 / (q - 1)) <= 1e-6 and bound < -0.99e6
        assert not any(f.kind == UB for f in classify_catalog("arik-coon", 1))


def test_criterion_08_fermion(criterion):
    with criterion(8, "fermion recovered exactly"):
        spec = get_algebra("arik-coon", -1)
        d = classify(spec, Seed(0, 0))
        assert (d.kind, d.p) == (FD, 1)
        rep = build(d, spec, 2)
        assert rep.mode == "exact"
        assert np.array_equal(rep.A @ rep.A, np.zeros((2, 2)))
        assert np.array_equal(rep.A @ rep.Adag + rep.Adag @ rep.A, np.eye(2))
        assert all(v == 0 for v in verify(rep, spec)["residuals"].values())


GRID = {
    "boson": [None],
    "arik-coon": [Fraction(3), Fraction(2), H, Fraction(1, 3), -H, Fraction(-1, 3), Fraction(-1), Fraction(-2), Fraction(-3)],
    "chaturvedi-srinivasan": [Fraction(3), Fraction(2), H, Fraction(1, 3), -H, Fraction(-1), Fraction(-2), Fraction(-3)],
    "tamm-dancoff": [H, Fraction(2), Fraction(3), -H, Fraction(-2)],
}


def _random_nu(rng, domain):
    if domain == "R":
        return Fraction(rng.randint(-40, 40), rng.choice([1, 2, 3, 7]))
    if domain == "Z":
        return Fraction(rng.randint(-6, 6))
    if domain == "2Z":
        return Fraction(2 * rng.randint(-3, 3))
    if domain == "2Z+1":
        return Fraction(2 * rng.randint(-3, 3) + 1)
    if domain == "[0,1)":
        return Fraction(rng.randint(0, 6), 7)
    return Fraction(0)


def _random_c(rng, fam, nu):
    if fam.c_of is not None:
        return fam.c_of(nu)
    iv = rng.choice(fam.c_range)
    pts = _interval_samples(iv)
    return rng.choice(pts)


def _seed_offset(rng, d_kind, p):
    if d_kind == BFB:
        return rng.randint(0, 8)
    if d_kind == BFA:
        return -rng.randint(0, 8)
    if d_kind == FD:
        return rng.randint(0, p)
    return rng.randint(-8, 8)


def _admitting(fams, nu0, c, reach=60):
    """Families with some basis state at ``nu0`` for Casimir ``c``."""
    out = []
    for fam in fams:
        if fam.kind == BFB:
            ks = range(-reach, 1)
        elif fam.kind == BFA:
            ks = range(0, reach + 1)
        elif fam.kind == FD:
            ks = range(-fam.p, 1)
        else:
            ks = range(-reach, reach + 1)
        if any(fam.admits(nu0 + k, c) for k in ks):
            out.append(fam)
    return out


def _q_ok(q, nu):
    return q is None or q > 0 or nu.denominator == 1


def test_criterion_09_generic_vs_closed_form(criterion):
    with criterion(9, "generic classifier agrees with closed-form families") as state:
        rng = random.Random(909)
        cells = [(name, q) for name, qs in GRID.items() for q in qs]
        generated = raw = skipped = 0
        kinds = Counter()
        while generated < 500:
            name, q = rng.choice(cells)
            fams = classify_catalog(name, q)
            if not fams:
                continue
            fam = rng.choice(fams)
            nu = _random_nu(rng, fam.nu0_domain)
            c = _random_c(rng, fam, nu)
            nu0 = nu + _seed_offset(rng, fam.kind, fam.p)
            if not _q_ok(q, nu0):
                continue
            d = classify(get_algebra(name, q), Seed(c, nu0), WINDOW)
            matches = [f for f in fams if f.matches(d)]
            assert fam in matches, (name, q, fam, d)
            # the UB family's closed range includes the degenerate point
            assert len(matches) == 1 or {f.kind for f in matches} == {UB}, (name, q, d, matches)
            generated += 1
        while raw < 500:
            name, q = rng.choice(cells)
            fams = classify_catalog(name, q)
            nu0 = Fraction(rng.randint(-10, 10)) if q is not None and q < 0 else _random_nu(rng, "R")
            c = Fraction(rng.randint(-300, 300), rng.randint(1, 30))
            try:
                d = classify(get_algebra(name, q), Seed(c, nu0), WINDOW)
            except PreconditionError:
                skipped += 1
                continue
            raw += 1
            kinds[d.kind] += 1
            assert d.kind != "Inconclusive", (name, q, c, nu0)
            if d.decided:
                matches = [f for f in fams if f.matches(d)]
                assert len(matches) == 1 or {f.kind for f in matches} == {UB}, (name, q, d, matches)
                assert matches, (name, q, d)
            else:
                assert d.kind == NO_UNIRREP
                assert not _admitting(fams, nu0, c), (name, q, c, nu0)
        spread = ", ".join(f"{k} {v}" for k, v in sorted(kinds.items()))
        state["detail"] = f"{generated} family seeds; {raw} raw seeds ({spread}), {skipped} inadmissible redrawn"


def test_criterion_10_K_identity(criterion):
    with criterion(10, "K = q^N (1 + (1-q) c) on 50 random Arik-Coon reps") as state:
        rng = random.Random(1010)
        qs = [Fraction(3), Fraction(2), H, Fraction(1, 3), -H, Fraction(-1, 3), Fraction(-1), Fraction(-2), 0.7, -0.6, 1.8]
        worst, done = 0.0, 0
        while done < 50:
            q = rng.choice(qs)
            fam = rng.choice(classify_catalog("arik-coon", q))
            nu = _random_nu(rng, fam.nu0_domain)
            if not _q_ok(q if sc.is_exact(q) else Fraction(q).limit_denominator(10), nu):
                continue
            spec = get_algebra("arik-coon", q)
            mode = spec.mode
            c = _random_c(rng, fam, sc.coerce(nu, mode) if mode == "float" and q > 0 else nu)
            seed = Seed(sc.coerce(c, mode), sc.coerce(nu, mode))
            try:
                d = classify(spec, seed, WINDOW)
            except DomainError:
                continue
            dim = d.p + 1 if d.kind == FD else rng.randint(3, 30)
            rep = build(d, spec, dim)
            K = K_element(rep, spec)
            assert K["identity_checked"]
            worst = max(worst, K["residual"])
            assert K["passed"], (q, d, K["residual"])
            done += 1
        state["detail"] = f"worst residual {worst:.1e}"
        assert worst <= 1e-10
