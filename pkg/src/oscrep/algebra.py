"""Structure functions and the minimal-deformation chain.

A deformed oscillator algebra is fixed by a quommutator parameter ``q`` and a
deformation function ``f``::

    [N, a^+] = a^+,   [N, a] = -a,   a a^+ - q a^+ a = f(N)

Its structure function ``F`` obeys ``F(n+1) - q F(n) = f(n)`` with ``F(0) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import scalar as sc
from .errors import DomainError
from .exppoly import ExpPolynomial, q_number
from .scalar import Scalar

__all__ = [
    "AlgebraSpec",
    "DeformationChain",
    "brute_force_structure",
    "chain_extend",
    "commutator_transform",
    "q_number",
    "solve_structure",
]


def _same_base(b, q) -> bool:
    if sc.is_exact(b) and sc.is_exact(q):
        return b == q
    return abs(b - q) <= sc.EPS_CMP * max(abs(b), abs(q))


def _particular(coeff, base, power, q) -> list[tuple]:
    """A particular solution of ``G(n+1) - q G(n) = coeff * base**n * n**power``."""
    if _same_base(base, q):
        # resonant: G = q^n P(n), P(n+1) - P(n) = (coeff/q) n^power, deg P = power + 1
        rhs = coeff / q
        p = [Fraction(0)] * (power + 2)
        for m in range(power, -1, -1):
            acc = rhs if m == power else 0
            for j in range(m + 2, power + 2):
                acc -= p[j] * comb(j, m)
            p[m + 1] = acc / (m + 1)
        return [(pj, q, j) for j, pj in enumerate(p) if pj != 0]
    # non-resonant: G = base^n P(n), base P(n+1) - q P(n) = coeff n^power
    p = [Fraction(0)] * (power + 1)
    for m in range(power, -1, -1):
        acc = coeff if m == power else 0
        for j in range(m + 1, power + 1):
            acc -= base * p[j] * comb(j, m)
        p[m] = acc / (base - q)
    return [(pj, base, j) for j, pj in enumerate(p) if pj != 0]


def solve_structure(f: ExpPolynomial, q: Scalar) -> ExpPolynomial:
    """Unique exp-polynomial ``F`` with ``F(0) = 0`` and ``F(n+1) - q F(n) = f(n)``.

    Terms of ``f`` whose base equals ``q`` are resonant and pick up an extra
    factor of ``n``; e.g. ``f = q^n`` gives ``F = n q^(n-1)``.
    """
    if q == 0:
        raise DomainError("the quommutator parameter q must be nonzero")
    terms = []
    for coeff, base, power in f.terms:
        terms.extend(_particular(coeff, base, power, q))
    particular = ExpPolynomial(terms)
    homogeneous = ExpPolynomial.exponential(q, coeff=-particular(0))
    return particular + homogeneous


def brute_force_structure(f: ExpPolynomial, q: Scalar, n: int) -> Scalar:
    """Literal sum ``sum_{i=0}^{n-1} q**i * f(n-1-i)``; the oracle for :func:`solve_structure`."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = Fraction(0)
    for i in range(n):
        total += q**i * f(n - 1 - i)
    return total


def commutator_transform(F: ExpPolynomial) -> ExpPolynomial:
    """First difference ``F(n+1) - F(n)``: the commutator-form deformation function."""
    return F.shift(1) - F


@dataclass(frozen=True)
class AlgebraSpec:
    """A deformed oscillator algebra ``a a^+ - q a^+ a = f(N)``."""

    q: Scalar
    f: ExpPolynomial
    name: str | None = None
    _F: ExpPolynomial | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        q = self.q
        if isinstance(q, int) and not isinstance(q, bool):
            object.__setattr__(self, "q", Fraction(q))
        elif not isinstance(q, (Fraction, float)):
            raise TypeError("q must be a real scalar")
        if self.q == 0:
            raise DomainError("the quommutator parameter q must be nonzero")
        if not isinstance(self.f, ExpPolynomial):
            raise TypeError("f must be an ExpPolynomial")
        # Hermiticity of f(N): real coefficients and bases
        for c, b, _ in self.f.terms:
            if not isinstance(c, (Fraction, float)) or not isinstance(b, (Fraction, float)):
                raise TypeError("f must have real coefficients")

    @property
    def F(self) -> ExpPolynomial:
        if self._F is None:
            object.__setattr__(self, "_F", solve_structure(self.f, self.q))
        return self._F

    @property
    def mode(self) -> str:
        return sc.mode_of(self.q) if self.f.mode == sc.EXACT else sc.FLOAT

    def coerce(self, mode: str) -> "AlgebraSpec":
        return AlgebraSpec(sc.coerce(self.q, mode), self.f.coerce(mode), self.name)

    def q_power(self, x) -> Scalar:
        return sc.real_power(self.q, x)

    def casimir_poly(self, c: Scalar) -> ExpPolynomial:
        """``F(m) - c q^m`` as a function of the absolute N eigenvalue ``m``."""
        lam = self.F - ExpPolynomial.exponential(self.q, coeff=c)
        return lam.chop() if lam.mode == sc.FLOAT else lam


@dataclass(frozen=True)
class DeformationChain:
    """Iterates ``A_k -> A~_k -> A_{k+1}``.

    ``structures[k]`` and ``deformations[k]`` hold ``F_k`` and ``f_k``;
    index 0 is the commutator algebra built on ``base_f``.
    """

    base_f: ExpPolynomial
    steps: tuple = ()
    structures: tuple = ()
    deformations: tuple = ()

    @classmethod
    def start(cls, base_f: ExpPolynomial) -> "DeformationChain":
        F0 = solve_structure(base_f, Fraction(1) if base_f.mode == sc.EXACT else 1.0)
        return cls(base_f, (), (F0,), (base_f,))

    @property
    def depth(self) -> int:
        return len(self.steps)

    def F(self, k: int) -> ExpPolynomial:
        return self.structures[k]

    def f(self, k: int) -> ExpPolynomial:
        return self.deformations[k]

    def commutator_algebra(self, k: int) -> AlgebraSpec:
        """``A_k``: ``[a, a^+] = f_k(N)``."""
        one = Fraction(1) if self.f(k).mode == sc.EXACT else 1.0
        return AlgebraSpec(one, self.f(k), name=f"A_{k}")

    def quommutator_algebra(self, k: int) -> AlgebraSpec:
        """``A~_k``: ``[a, a^+]_{q_(k+1)} = f_k(N)``; needs ``k < depth``."""
        return AlgebraSpec(self.steps[k], self.f(k), name=f"A~_{k}")


def chain_extend(chain: DeformationChain, q_next: Scalar) -> DeformationChain:
    if q_next == 0:
        raise DomainError("deformation parameter must be nonzero")
    if isinstance(q_next, int):
        q_next = Fraction(q_next)
    F_next = solve_structure(chain.deformations[-1], q_next)
    f_next = commutator_transform(F_next)
    return DeformationChain(
        chain.base_f,
        chain.steps + (q_next,),
        chain.structures + (F_next,),
        chain.deformations + (f_next,),
    )
