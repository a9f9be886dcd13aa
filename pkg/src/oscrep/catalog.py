"""Named oscillator algebras and their closed-form unirrep families.

The families below are hand-derived sign analyses of ``lambda_n`` for each
algebra, one list per regime of the deformation parameter.  They are the
closed-form counterpart of :func:`oscrep.classifier.classify`; the golden
tables in :mod:`oscrep.golden` are a separate transcription used to check
them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import scalar as sc
from .algebra import AlgebraSpec, DeformationChain, chain_extend, commutator_transform
from .classifier import BFA, BFB, DEGENERATE_UB, FD, UB, UnirrepDescriptor
from .errors import DomainError, RegimeError, UnknownAlgebraError
from .exppoly import ExpPolynomial, q_number
from .scalar import Scalar

BOSON = "boson"
ARIK_COON = "arik-coon"
CHATURVEDI_SRINIVASAN = "chaturvedi-srinivasan"
TAMM_DANCOFF = "tamm-dancoff"
CHAKRABARTI_JAGANNATHAN = "chakrabarti-jagannathan"
BIEDENHARN_MACFARLANE = "biedenharn-macfarlane"

TABULATED = (BOSON, ARIK_COON, CHATURVEDI_SRINIVASAN, TAMM_DANCOFF)

NU0_DOMAINS = ("R", "Z", "2Z", "2Z+1", "[0,1)", "{0}")


def _num(x) -> Scalar:
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def in_domain(domain: str, x: Scalar) -> bool:
    if domain == "R":
        return True
    if domain == "[0,1)":
        return 0 <= x < 1
    if domain == "{0}":
        return x == 0
    k = sc.as_int(x)
    if k is None:
        return False
    if domain == "Z":
        return True
    if domain == "2Z":
        return k % 2 == 0
    if domain == "2Z+1":
        return k % 2 == 1
    raise ValueError(f"unknown domain {domain!r}")


@dataclass(frozen=True)
class Interval:
    """Real interval; ``None`` endpoints are infinite."""

    lo: Scalar | None
    hi: Scalar | None
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, x: Scalar, eps: float = sc.EPS_CMP) -> bool:
        if self.lo is not None:
            if sc.approx_equal(x, self.lo, eps):
                if not self.lo_closed:
                    return False
            elif x < self.lo:
                return False
        if self.hi is not None:
            if sc.approx_equal(x, self.hi, eps):
                if not self.hi_closed:
                    return False
            elif x > self.hi:
                return False
        return True

    def __str__(self):
        lo = "-inf" if self.lo is None else sc.fmt(self.lo)
        hi = "inf" if self.hi is None else sc.fmt(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo}, {hi}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class Family:
    """One row of a classification table, with executable formulas.

    ``lambda_tilde(nu0, c, n)`` and either ``c_of(nu0)`` (c fixed by the
    lowest/highest weight) or ``c_range`` (UB families labelled by c).
    """

    algebra: str
    regime: str
    kind: str
    nu0_domain: str
    lambda_tilde: Callable = field(repr=False)
    c_of: Callable | None = field(default=None, repr=False)
    c_range: tuple = ()
    p: int | None = None
    c_text: str = ""
    lambda_text: str = ""

    @property
    def table_type(self) -> str:
        return UB if self.kind == DEGENERATE_UB else self.kind

    @property
    def degenerate(self) -> bool:
        return self.kind == DEGENERATE_UB

    def admits(self, nu0_tilde: Scalar, c: Scalar) -> bool:
        if not in_domain(self.nu0_domain, nu0_tilde):
            return False
        if self.c_of is not None:
            return sc.approx_equal(c, self.c_of(nu0_tilde), sc.EPS_ZERO)
        return any(iv.contains(c) for iv in self.c_range)

    def matches(self, d: UnirrepDescriptor) -> bool:
        if self.kind == UB:
            if d.kind not in (UB, DEGENERATE_UB):
                return False
        elif d.kind != self.kind:
            return False
        if self.kind == FD and d.p != self.p:
            return False
        return self.admits(d.nu0_tilde, d.c)

    def describe(self) -> dict:
        c = self.c_text if self.c_of is not None else "c in " + " U ".join(str(iv) for iv in self.c_range)
        out = {
            "type": self.table_type,
            "nu0": self.nu0_domain,
            "c": c,
            "lambda": self.lambda_text,
            "degenerate": self.degenerate,
        }
        if self.p is not None:
            out["p"] = self.p
        return out


# -- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraEntry:
    name: str
    parameters: tuple
    tabulated: bool
    build: Callable
    structure: Callable
    description: str


def _check_q(q):
    if q is None:
        raise ValueError("this algebra needs a deformation parameter q")
    q = _num(q)
    if q == 0:
        raise DomainError("q must be nonzero")
    return q


def _one(q=None):
    return Fraction(1) if q is None or sc.is_exact(q) else 1.0


def _boson(q=None, q2=None):
    if q is not None and _num(q) != 1:
        raise RegimeError("the boson algebra has q = 1")
    return AlgebraSpec(Fraction(1), ExpPolynomial.constant(1), BOSON)


def _arik_coon(q=None, q2=None):
    q = _check_q(q)
    return AlgebraSpec(q, ExpPolynomial.constant(_one(q)), ARIK_COON)


def _chaturvedi_srinivasan(q=None, q2=None):
    q = _check_q(q)
    return AlgebraSpec(_one(q), ExpPolynomial.exponential(q, coeff=_one(q)), CHATURVEDI_SRINIVASAN)


def _tamm_dancoff(q=None, q2=None):
    q = _check_q(q)
    return AlgebraSpec(q, ExpPolynomial.exponential(q, coeff=_one(q)), TAMM_DANCOFF)


def _chakrabarti_jagannathan(q=None, q2=None):
    q = _check_q(q)
    q2 = _check_q(q2)
    return AlgebraSpec(q2, ExpPolynomial.exponential(q, coeff=_one(q)), CHAKRABARTI_JAGANNATHAN)


def _biedenharn_macfarlane(q=None, q2=None):
    q = _check_q(q)
    return AlgebraSpec(1 / q, ExpPolynomial.exponential(q, coeff=_one(q)), BIEDENHARN_MACFARLANE)


def _two_parameter_F(q1, q2) -> ExpPolynomial:
    if q1 == q2:
        return ExpPolynomial([(1 / q1, q1, 1)])
    d = q1 - q2
    return ExpPolynomial([(1 / d, q1, 0), (-1 / d, q2, 0)])


ALGEBRAS = {
    BOSON: AlgebraEntry(
        BOSON, (), True, _boson, lambda q=None, q2=None: ExpPolynomial.monomial(1),
        "[a, a+] = 1",
    ),
    ARIK_COON: AlgebraEntry(
        ARIK_COON, ("q",), True, _arik_coon, lambda q=None, q2=None: ExpPolynomial.q_number(_num(q)),
        "[a, a+]_q = 1",
    ),
    CHATURVEDI_SRINIVASAN: AlgebraEntry(
        CHATURVEDI_SRINIVASAN, ("q",), True, _chaturvedi_srinivasan,
        lambda q=None, q2=None: ExpPolynomial.q_number(_num(q)),
        "[a, a+] = q^N",
    ),
    TAMM_DANCOFF: AlgebraEntry(
        TAMM_DANCOFF, ("q",), True, _tamm_dancoff,
        lambda q=None, q2=None: ExpPolynomial([(1 / _num(q), _num(q), 1)]),
        "[a, a+]_q = q^N",
    ),
    CHAKRABARTI_JAGANNATHAN: AlgebraEntry(
        CHAKRABARTI_JAGANNATHAN, ("q", "q2"), False, _chakrabarti_jagannathan,
        lambda q=None, q2=None: _two_parameter_F(_num(q), _num(q2)),
        "[a, a+]_q2 = q^N",
    ),
    BIEDENHARN_MACFARLANE: AlgebraEntry(
        BIEDENHARN_MACFARLANE, ("q",), False, _biedenharn_macfarlane,
        lambda q=None, q2=None: _two_parameter_F(_num(q), 1 / _num(q)),
        "[a, a+]_(1/q) = q^N",
    ),
}


def _entry(name: str) -> AlgebraEntry:
    try:
        return ALGEBRAS[name.lower()]
    except KeyError:
        raise UnknownAlgebraError(
            f"unknown algebra {name!r}; known: {', '.join(sorted(ALGEBRAS))}"
        ) from None


def get_algebra(name: str, q=None, q2=None) -> AlgebraSpec:
    """Build a named algebra.  ``q`` is the algebra's own deformation parameter."""
    return _entry(name).build(q, q2)


def closed_form_structure(name: str, q=None, q2=None) -> ExpPolynomial:
    """Structure function written down directly, independent of the recurrence solver."""
    return _entry(name).structure(q, q2)


# -- closed-form families ----------------------------------------------------


def _pw(q, x):
    return sc.real_power(q, x)


def _alt(n):
    return Fraction((-1) ** n)


def regime_of(name: str, q) -> str:
    name = name.lower()
    _entry(name)
    if name not in TABULATED:
        raise RegimeError(f"{name} has no tabulated classification")
    q = _check_q(q)
    if name == BOSON:
        if q != 1:
            raise RegimeError("the boson algebra has q = 1")
        return "q=1"
    if q == 1:
        return "q=1"
    if name == TAMM_DANCOFF:
        return "0<q!=1" if q > 0 else "q<0"
    if q > 1:
        return "q>1"
    if q > 0:
        return "0<q<1"
    if q > -1:
        return "-1<q<0"
    if q == -1:
        return "q=-1"
    return "q<-1"


def _boson_families(name):
    return [
        Family(name, "q=1", BFB, "R", lambda nu, c, n: _num(n), c_of=lambda nu: nu,
               c_text="c = nu0", lambda_text="n"),
    ]


def _arik_coon_families(q) -> list[Family]:
    name, reg = ARIK_COON, regime_of(ARIK_COON, q)
    if reg == "q=1":
        return _boson_families(name)
    bfb = Family(
        name, reg, BFB, "R" if q > 0 else "Z",
        lambda nu, c, n: q_number(n, q),
        c_of=lambda nu: _pw(q, -nu) * q_number(nu, q),
        c_text="c = q^(-nu0) [nu0]_q", lambda_text="[n]_q",
    )
    degenerate = Family(
        name, reg, DEGENERATE_UB, "[0,1)",
        lambda nu, c, n: 1 / (1 - q), c_of=lambda nu: 1 / (q - 1),
        c_text="c = 1/(q-1)", lambda_text="1/(1-q)",
    )
    if reg == "q>1":
        return [bfb]
    if reg == "0<q<1":
        ub = Family(
            name, reg, UB, "[0,1)",
            lambda nu, c, n: q_number(nu + n, q) - c * _pw(q, nu + n),
            c_range=(Interval(None, 1 / (q - 1), hi_closed=True),),
            lambda_text="[nu0+n]_q - c q^(nu0+n)",
        )
        return [bfb, ub]
    if reg == "-1<q<0":
        return [bfb, degenerate]
    if reg == "q=-1":
        fermion = lambda nu, c, n: (1 - _alt(n)) / 2  # noqa: E731
        half = Fraction(1, 2)
        return [
            Family(name, reg, FD, "2Z", fermion, c_of=lambda nu: Fraction(0), p=1,
                   c_text="c = 0", lambda_text="(1 - (-1)^n)/2"),
            Family(name, reg, FD, "2Z+1", fermion, c_of=lambda nu: Fraction(-1), p=1,
                   c_text="c = -1", lambda_text="(1 - (-1)^n)/2"),
            Family(name, reg, UB, "{0}",
                   lambda nu, c, n: -_alt(n) * c + (1 - _alt(n)) / 2,
                   c_range=(Interval(Fraction(-1), -half), Interval(-half, Fraction(0))),
                   lambda_text="(-1)^(n+1) c + (1 - (-1)^n)/2"),
            Family(name, reg, DEGENERATE_UB, "[0,1)", lambda nu, c, n: half,
                   c_of=lambda nu: -half, c_text="c = -1/2", lambda_text="1/2"),
        ]
    bfa = Family(
        name, reg, BFA, "Z",
        lambda nu, c, n: q_number(n - 1, q),
        c_of=lambda nu: _pw(q, -nu - 1) * q_number(nu + 1, q),
        c_text="c = q^(-nu0-1) [nu0+1]_q", lambda_text="[n-1]_q",
    )
    return [bfa, degenerate]


def _chaturvedi_srinivasan_families(q) -> list[Family]:
    name, reg = CHATURVEDI_SRINIVASAN, regime_of(CHATURVEDI_SRINIVASAN, q)
    if reg == "q=1":
        return _boson_families(name)
    domain = {"q>1": "R", "0<q<1": "R", "-1<q<0": "2Z"}
    if reg in domain:
        fams = [
            Family(name, reg, BFB, domain[reg],
                   lambda nu, c, n: _pw(q, nu) * q_number(n, q),
                   c_of=lambda nu: q_number(nu, q),
                   c_text="c = [nu0]_q", lambda_text="q^nu0 [n]_q"),
        ]
        if reg == "q>1":
            fams.append(
                Family(name, reg, UB, "[0,1)",
                       lambda nu, c, n: q_number(nu + n, q) - c,
                       c_range=(Interval(None, -1 / (q - 1), hi_closed=True),),
                       lambda_text="[nu0+n]_q - c")
            )
        return fams
    if reg == "q=-1":
        return [
            Family(name, reg, FD, "2Z", lambda nu, c, n: (1 - _alt(n)) / 2,
                   c_of=lambda nu: Fraction(0), p=1, c_text="c = 0", lambda_text="(1 - (-1)^n)/2"),
            Family(name, reg, UB, "{0}", lambda nu, c, n: -c + (1 - _alt(n)) / 2,
                   c_range=(Interval(None, Fraction(0)),), lambda_text="-c + (1 - (-1)^n)/2"),
        ]
    return [
        Family(name, reg, BFA, "2Z+1",
               lambda nu, c, n: _pw(q, nu + 1) * q_number(n - 1, q),
               c_of=lambda nu: q_number(nu + 1, q),
               c_text="c = [nu0+1]_q", lambda_text="q^(nu0+1) [n-1]_q"),
    ]


def _tamm_dancoff_families(q) -> list[Family]:
    name, reg = TAMM_DANCOFF, regime_of(TAMM_DANCOFF, q)
    if reg == "q=1":
        return _boson_families(name)
    if reg == "q<0":
        return []
    return [
        Family(name, reg, BFB, "R",
               lambda nu, c, n: _pw(q, nu + n - 1) * n,
               c_of=lambda nu: nu / q,
               c_text="c = nu0/q", lambda_text="q^(nu0+n-1) n"),
    ]


def classify_catalog(name: str, q=None) -> list[Family]:
    """Closed-form unirrep families of a tabulated algebra at deformation ``q``."""
    key = name.lower()
    _entry(key)
    if key == BOSON:
        regime_of(BOSON, 1 if q is None else q)
        return _boson_families(BOSON)
    q = _check_q(q)
    if key == ARIK_COON:
        return _arik_coon_families(q)
    if key == CHATURVEDI_SRINIVASAN:
        return _chaturvedi_srinivasan_families(q)
    if key == TAMM_DANCOFF:
        return _tamm_dancoff_families(q)
    raise RegimeError(f"{name} has no tabulated classification")


def matching_families(descriptor: UnirrepDescriptor, name: str, q=None) -> list[Family]:
    return [fam for fam in classify_catalog(name, q) if fam.matches(descriptor)]


# -- the deformation chain of the examples ------------------------------------


def reference_chain(q1, q2=None) -> DeformationChain:
    """boson -(q1)-> Arik-Coon ~ Chaturvedi-Srinivasan [-(q2)-> Chakrabarti-Jagannathan]."""
    q1 = _check_q(q1)
    chain = DeformationChain.start(ExpPolynomial.constant(_one(q1)))
    chain = chain_extend(chain, q1)
    if q2 is not None:
        chain = chain_extend(chain, _check_q(q2))
    return chain


def check_reference_chain(q1) -> dict:
    """Verify the chain against the closed forms of its named members.

    Returns a mapping ``check name -> bool``.
    """
    q1 = _check_q(q1)
    chain = reference_chain(q1)
    checks = {
        "F0 = n": chain.F(0) == ExpPolynomial.monomial(1),
        "F1 = [n]_q1": chain.F(1) == closed_form_structure(ARIK_COON, q1),
        "f1 = q1^n": chain.f(1) == ExpPolynomial.exponential(q1, coeff=_one(q1)),
        "A1 is Chaturvedi-Srinivasan": chain.commutator_algebra(1).f
        == get_algebra(CHATURVEDI_SRINIVASAN, q1).f,
    }
    td = reference_chain(q1, q1)
    checks["Tamm-Dancoff F2 = n q1^(n-1)"] = td.F(2) == closed_form_structure(TAMM_DANCOFF, q1)
    if q1 * q1 != 1:
        bm = reference_chain(q1, 1 / q1)
        checks["Biedenharn-Macfarlane F2"] = bm.F(2) == closed_form_structure(BIEDENHARN_MACFARLANE, q1)
    checks["f_k = F_k(n+1) - F_k(n)"] = all(
        td.f(k) == commutator_transform(td.F(k)) for k in range(td.depth + 1)
    )
    checks["F_k(0) = 0"] = all(td.F(k)(0) == 0 for k in range(td.depth + 1))
    return checks


__all__ = [
    "ALGEBRAS",
    "ARIK_COON",
    "BIEDENHARN_MACFARLANE",
    "BOSON",
    "CHAKRABARTI_JAGANNATHAN",
    "CHATURVEDI_SRINIVASAN",
    "Family",
    "Interval",
    "TABULATED",
    "TAMM_DANCOFF",
    "check_reference_chain",
    "classify_catalog",
    "closed_form_structure",
    "get_algebra",
    "in_domain",
    "matching_families",
    "reference_chain",
    "regime_of",
]
