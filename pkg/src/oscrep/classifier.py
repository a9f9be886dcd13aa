"""Unitary irreducible representations from a Casimir/number-operator seed.

Starting from a joint eigenvector of ``C`` (eigenvalue ``c``) and ``N``
(eigenvalue ``nu0``), the ladder states ``nu0 + n`` carry

    lambda_n = F(nu0 + n) - q**(nu0 + n) * c        (eigenvalue of a^+ a)

and a unitary representation needs ``lambda_n >= 0`` on every state that
survives.  Walking down from ``n = 0`` the first vanishing ``lambda`` cuts the
ladder from below; walking up, the first vanishing ``lambda`` cuts it from
above.  A negative value met before any zero rules unitarity out.

Each walk stops early once the tail is provably positive: the dominant term
of ``lambda`` (as an exp-polynomial in the N eigenvalue) outweighs the rest
from that point on.  This makes UB/BFB/BFA decisions exact instead of
window-limited whenever such a certificate exists.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import scalar as sc
from .algebra import AlgebraSpec
from .errors import DomainError, PreconditionError
from .exppoly import ExpPolynomial, format_exppoly, parse_exppoly
from .scalar import Scalar

BFB = "BFB"
BFA = "BFA"
FD = "FD"
UB = "UB"
DEGENERATE_UB = "DegenerateUB"
NO_UNIRREP = "NoUnirrep"
INCONCLUSIVE = "Inconclusive"

CLASSES = (BFB, BFA, FD, UB, DEGENERATE_UB, NO_UNIRREP, INCONCLUSIVE)
DECIDED = (BFB, BFA, FD, UB, DEGENERATE_UB)

DEFAULT_WINDOW = 10_000
SAMPLE_RADIUS = 10
_EXTRA_ZERO_LOOKAHEAD = 64


def _scalar(x) -> Scalar:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, float)):
        return x
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


@dataclass(frozen=True)
class Seed:
    """Joint eigenvalues ``(c, nu0)`` of the Casimir operator and ``N``."""

    c: Scalar
    nu0: Scalar

    def __post_init__(self):
        object.__setattr__(self, "c", _scalar(self.c))
        object.__setattr__(self, "nu0", _scalar(self.nu0))

    @property
    def mode(self) -> str:
        return sc.mode_of(self.c, self.nu0)

    def coerce(self, mode: str) -> "Seed":
        return Seed(sc.coerce(self.c, mode), sc.coerce(self.nu0, mode))


@dataclass(frozen=True)
class UnirrepDescriptor:
    """Outcome of a classification.

    ``lam`` is ``lambda`` as a function of the absolute N eigenvalue, so
    ``lambda_tilde(n) == lam(nu0_tilde + n)``.  For UB classes ``offset`` is the
    integer part of the seed's ``nu0``; matrix windows are centred there.
    """

    kind: str
    c: Scalar | None = None
    nu0_tilde: Scalar | None = None
    p: int | None = None
    lam: ExpPolynomial | None = None
    window: int = DEFAULT_WINDOW
    mode: str = sc.EXACT
    offset: int = 0
    extra_zeros: tuple = ()
    reason: str = ""

    def __post_init__(self):
        if self.kind not in CLASSES:
            raise ValueError(f"unknown class tag {self.kind!r}")
        if self.kind == FD and (self.p is None or self.p < 0):
            raise ValueError("FD descriptors need p >= 0")

    @property
    def decided(self) -> bool:
        return self.kind in DECIDED

    @property
    def dimension(self) -> int | None:
        return self.p + 1 if self.kind == FD else None

    @property
    def is_fock(self) -> bool:
        """Bosonic (BFB) or parafermionic (FD) Fock-space representation."""
        return self.kind in (BFB, FD) and self.nu0_tilde == 0 and self.c == 0

    def lambda_tilde(self, n: int) -> Scalar:
        if self.lam is None:
            raise ValueError(f"{self.kind} descriptor carries no lambda")
        return self.lam(self.nu0_tilde + n)

    def lambda_tilde_poly(self) -> ExpPolynomial:
        """``lambda_tilde`` as an exp-polynomial in ``n`` (needs a real shift)."""
        return self.lam.shift(self.nu0_tilde)

    def lambda_samples(self, radius: int = SAMPLE_RADIUS) -> dict:
        out = {}
        for n in range(-radius, radius + 1):
            try:
                out[n] = self.lambda_tilde(n)
            except (DomainError, OverflowError, ZeroDivisionError):
                out[n] = None
        return out

    def to_dict(self) -> dict:
        samples = {}
        if self.decided:
            samples = {str(n): sc.to_json(v) for n, v in self.lambda_samples().items()}
        return {
            "class": self.kind,
            "nu0_tilde": sc.to_json(self.nu0_tilde),
            "c": sc.to_json(self.c),
            "p": self.p,
            "lambda_samples": samples,
            "window": self.window,
            "arithmetic_mode": self.mode,
            "offset": self.offset,
            "fock": self.is_fock,
            "lambda_poly": None if self.lam is None else format_exppoly(self.lam),
            "lambda_poly_mode": None if self.lam is None else self.lam.mode,
            "extra_zeros": list(self.extra_zeros),
            "reason": self.reason,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "UnirrepDescriptor":
        lam = None
        if data.get("lambda_poly") is not None:
            lam = parse_exppoly(data["lambda_poly"], mode=data.get("lambda_poly_mode") or sc.EXACT)
        return cls(
            kind=data["class"],
            c=sc.from_json(data.get("c")),
            nu0_tilde=sc.from_json(data.get("nu0_tilde")),
            p=data.get("p"),
            lam=lam,
            window=data.get("window", DEFAULT_WINDOW),
            mode=data.get("arithmetic_mode", sc.EXACT),
            offset=data.get("offset", 0),
            extra_zeros=tuple(data.get("extra_zeros", ())),
            reason=data.get("reason", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> "UnirrepDescriptor":
        return cls.from_dict(json.loads(text))


def _align(spec: AlgebraSpec, seed: Seed) -> tuple[AlgebraSpec, Seed]:
    mode = sc.EXACT if spec.mode == sc.EXACT and seed.mode == sc.EXACT else sc.FLOAT
    if mode == sc.FLOAT:
        return spec.coerce(sc.FLOAT), seed.coerce(sc.FLOAT)
    return spec, seed


def lambda_n(spec: AlgebraSpec, seed: Seed, n: int) -> Scalar:
    """``F(nu0 + n) - q**(nu0 + n) * c``."""
    spec, seed = _align(spec, seed)
    m = seed.nu0 + n
    return spec.F(m) - spec.q_power(m) * seed.c


def mu_n(spec: AlgebraSpec, seed: Seed, n: int) -> Scalar:
    """Eigenvalue of ``a a^+`` on state ``nu0 + n``; equals ``lambda_(n+1)``."""
    return lambda_n(spec, seed, n + 1)


def _log_abs(x) -> float:
    x = abs(x)
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


_CERT_MARGIN = 1e-9


def tail_positive(lam: ExpPolynomial, m0, direction: int) -> bool:
    """Certify ``lam(m) > 0`` for all ``m >= m0`` (direction +1) or ``m <= m0`` (-1).

    Sufficient, not necessary: a False answer means "not proven".
    """
    poly = lam if direction > 0 else lam.reflect()
    t0 = float(m0) * direction
    terms = poly.terms
    if not terms:
        return False
    dom = max(terms, key=lambda t: (abs(t[1]), t[2], t[1] > 0))
    c_d, b_d, k_d = dom
    if b_d < 0 or c_d <= 0:
        return False
    if k_d > 0 and t0 <= 0:
        return False
    log_b_d, log_c_d = _log_abs(b_d), _log_abs(c_d)
    total = 0.0
    for term in terms:
        if term is dom:
            continue
        c, b, k = term
        e = k - k_d
        if e != 0 and t0 <= 0:
            return False
        log_rho = _log_abs(b) - log_b_d
        if abs(b) == abs(b_d):
            if e > 0:
                return False
            log_rho = 0.0
        elif e > 0 and t0 < e / -log_rho:
            return False
        log_r = _log_abs(c) - log_c_d + t0 * log_rho + (e * math.log(t0) if e else 0.0)
        if log_r > 0:
            return False
        total += math.exp(log_r)
    # every ratio is nonincreasing past t0, so a sum below 1 bounds the tail
    return total < 1.0 - _CERT_MARGIN


def _lambda_scale(spec: AlgebraSpec, c, lam: ExpPolynomial, m) -> float:
    # the term magnitudes bound the roundoff; no absolute floor, so exponentially
    # small but nonzero lambda is not mistaken for a zero
    try:
        return max(abs(float(spec.F(m))), abs(float(spec.q_power(m) * c)), lam.magnitude(m))
    except (DomainError, OverflowError):
        return 0.0


class _Walker:
    def __init__(self, spec: AlgebraSpec, seed: Seed, lam: ExpPolynomial):
        self.spec = spec
        self.seed = seed
        self.lam = lam
        self.exact = True

    def sign(self, n: int) -> int:
        m = self.seed.nu0 + n
        v = self.lam(m)
        if not sc.is_exact(v):
            self.exact = False
            if not math.isfinite(v):
                raise OverflowError("lambda overflowed")
            if sc.is_zero(v, _lambda_scale(self.spec, self.seed.c, self.lam, m), floor=0.0):
                return 0
        return (v > 0) - (v < 0)

    def walk(self, direction: int, window: int) -> tuple[str, int | None]:
        for step in range(1, window + 1):
            n = direction * step
            if tail_positive(self.lam, self.seed.nu0 + n, direction):
                return "unbounded", n
            s = self.sign(n)
            if s == 0:
                return "zero", n
            if s < 0:
                return "negative", n
        return "exhausted", None

    def zeros_below(self, start: int) -> tuple:
        """Further zeros under the cut, up to the next sign change (diagnostic only)."""
        found = []
        for n in range(start - 1, start - 1 - _EXTRA_ZERO_LOOKAHEAD, -1):
            try:
                s = self.sign(n)
            except (DomainError, OverflowError):
                break
            if s < 0:
                return tuple(found)
            if s == 0:
                found.append(n)
        return ()


def _fractional_part(x: Scalar) -> tuple[Scalar, int]:
    whole = math.floor(x)
    return x - whole, whole


def classify(spec: AlgebraSpec, seed: Seed, window: int = DEFAULT_WINDOW) -> UnirrepDescriptor:
    """Classify the unirrep through ``seed`` by scanning ``lambda_n`` downward and upward.

    Raises PreconditionError if ``lambda_0 < 0`` and DomainError for a
    non-integer ``nu0`` when ``q < 0`` (unless lambda has no negative base, as
    in the degenerate UB cases).
    """
    if window < 1:
        raise ValueError("window must be a positive integer")
    spec, seed = _align(spec, seed)
    lam = spec.casimir_poly(seed.c)
    if sc.as_int(seed.nu0) is None and lam.has_negative_base():
        raise DomainError(
            f"nu0={sc.fmt(seed.nu0)} is not an integer but lambda has negative bases (q={sc.fmt(spec.q)})"
        )
    walker = _Walker(spec, seed, lam)
    common = dict(window=window, c=seed.c)

    def finish(**kwargs):
        mode = sc.EXACT if walker.exact else sc.FLOAT
        return UnirrepDescriptor(mode=mode, **common, **kwargs)

    s0 = walker.sign(0)
    if s0 < 0:
        raise PreconditionError(
            f"lambda_0 = {sc.fmt(walker.lam(seed.nu0))} < 0: seed (c={sc.fmt(seed.c)}, nu0={sc.fmt(seed.nu0)}) is inadmissible"
        )
    def scan(direction):
        try:
            return walker.walk(direction, window) + (None,)
        except OverflowError as exc:
            return "overflow", None, exc

    down, n1, err_down = ("zero", 0, None) if s0 == 0 else scan(-1)
    up, n2, err_up = scan(+1)

    # a negative lambda on one side settles the matter whatever the other side did
    if down == "negative" or up == "negative":
        side = "below" if down == "negative" else "above"
        where = n1 if down == "negative" else n2
        return finish(kind=NO_UNIRREP, reason=f"lambda_{where} < 0 with no zero {side} the seed")
    if err_down or err_up:
        return finish(kind=INCONCLUSIVE, reason=f"float overflow during scan: {err_down or err_up}")
    if down == "exhausted" or up == "exhausted":
        return finish(kind=INCONCLUSIVE, reason=f"no decision within window {window}")

    extra = walker.zeros_below(n1) if down == "zero" else ()
    if down == "zero" and up == "zero":
        return finish(kind=FD, nu0_tilde=seed.nu0 + n1, p=n2 - n1 - 1, lam=lam, extra_zeros=extra)
    if down == "zero":
        return finish(kind=BFB, nu0_tilde=seed.nu0 + n1, lam=lam, extra_zeros=extra)
    if up == "zero":
        return finish(kind=BFA, nu0_tilde=seed.nu0 + n2 - 1, lam=lam)
    frac, whole = _fractional_part(seed.nu0)
    kind = DEGENERATE_UB if lam.is_constant() else UB
    return finish(kind=kind, nu0_tilde=frac, lam=lam, offset=whole)


def fd_search(spec: AlgebraSpec, nu0_tilde: Scalar, p_max: int) -> list[tuple[int, Scalar]]:
    """All ``p <= p_max`` admitting a finite-dimensional unirrep with lowest weight ``nu0_tilde``.

    Requires ``q**(-nu0) F(nu0) == q**(-nu0-p-1) F(nu0+p+1)`` and strictly
    positive ``lambda_tilde_n`` for ``1 <= n <= p``.
    """
    if p_max < 1:
        raise ValueError("p_max must be at least 1")
    nu0_tilde = _scalar(nu0_tilde)
    if spec.mode == sc.FLOAT or not sc.is_exact(nu0_tilde):
        spec, nu0_tilde = spec.coerce(sc.FLOAT), float(nu0_tilde)
    q, F = spec.q, spec.F
    if q < 0 and sc.as_int(nu0_tilde) is None:
        raise DomainError("q < 0 requires an integer lowest weight")
    F0 = F(nu0_tilde)
    c_low = spec.q_power(-nu0_tilde) * F0
    found = []
    for p in range(0, p_max + 1):
        top = nu0_tilde + p + 1
        c_high = spec.q_power(-top) * F(top)
        if not sc.is_zero(c_low - c_high, max(abs(c_low), abs(c_high))):
            continue
        interior = [F(nu0_tilde + n) - sc.real_power(q, n) * F0 for n in range(1, p + 1)]
        if all(v > 0 and not sc.is_zero(v) for v in interior):
            found.append((p, c_low))
    return found


__all__ = [
    "BFA",
    "BFB",
    "CLASSES",
    "DECIDED",
    "DEFAULT_WINDOW",
    "DEGENERATE_UB",
    "FD",
    "INCONCLUSIVE",
    "NO_UNIRREP",
    "Seed",
    "UB",
    "UnirrepDescriptor",
    "classify",
    "fd_search",
    "lambda_n",
    "mu_n",
    "tail_positive",
]
