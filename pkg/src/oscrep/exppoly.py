"""Exponential polynomials in an integer variable ``n``.

An :class:`ExpPolynomial` is a finite sum ``sum_j c_j * b_j**n * n**k_j``.
This class is closed under addition, multiplication, integer shifts and the
first-order recurrence solved in :mod:`oscrep.algebra`, which is all the
deformation chain ever needs.

Text form: terms ``c*b^n*n^k`` joined by ``+``, e.g. ``(1/2)*(-1)^n + 3*1^n*n^2``.
The parser accepts any arithmetic expression over ``n`` and named constants
(``q``, ``nu0``, ``c``, ...) that stays inside the class.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from . import scalar as sc
from .errors import DomainError, ParseError
from .scalar import Scalar


def _normalize(x) -> Scalar:
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, float)):
        return x
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def _term_key(term):
    coeff, base, power = term
    return (float(base), power)


class ExpPolynomial:
    """Immutable canonical sum of ``coeff * base**n * n**power`` terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[tuple] = ()):
        acc: dict[tuple, Scalar] = {}
        for coeff, base, power in terms:
            coeff, base = _normalize(coeff), _normalize(base)
            power = int(power)
            if power < 0:
                raise ValueError("powers of n must be nonnegative")
            if base == 0:
                raise DomainError("exponential base must be nonzero")
            key = (base, power)
            acc[key] = acc.get(key, 0) + coeff
        items = [(c, b, k) for (b, k), c in acc.items() if c != 0]
        items.sort(key=_term_key)
        self._terms = tuple(items)
        self._hash = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def constant(cls, value) -> "ExpPolynomial":
        return cls([(value, 1, 0)])

    @classmethod
    def exponential(cls, base, coeff=1, power: int = 0) -> "ExpPolynomial":
        return cls([(coeff, base, power)])

    @classmethod
    def monomial(cls, power: int = 1, coeff=1) -> "ExpPolynomial":
        return cls([(coeff, 1, power)])

    @classmethod
    def q_number(cls, q) -> "ExpPolynomial":
        """``[n]_q`` as an exp-polynomial; ``n`` itself when ``q == 1``."""
        q = _normalize(q)
        if q == 1:
            return cls.monomial(1)
        inv = 1 / (q - 1)
        return cls([(inv, q, 0), (-inv, 1, 0)])

    # -- structure -----------------------------------------------------------

    @property
    def terms(self) -> tuple:
        return self._terms

    @property
    def bases(self) -> tuple:
        return tuple(sorted({b for _, b, _ in self._terms}, key=float))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(b == 1 and k == 0 for _, b, k in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms[0][0] if self._terms else Fraction(0)

    @property
    def mode(self) -> str:
        return sc.mode_of(*(v for c, b, _ in self._terms for v in (c, b)))

    def has_negative_base(self) -> bool:
        return any(b < 0 for _, b, _ in self._terms)

    def degree(self) -> int:
        return max((k for _, _, k in self._terms), default=0)

    def canonical(self) -> "ExpPolynomial":
        return ExpPolynomial(self._terms)

    def to_float(self) -> "ExpPolynomial":
        return ExpPolynomial((float(c), float(b), k) for c, b, k in self._terms)

    def to_exact(self) -> "ExpPolynomial":
        return ExpPolynomial((sc.exact(c), sc.exact(b), k) for c, b, k in self._terms)

    def coerce(self, mode: str) -> "ExpPolynomial":
        return self.to_exact() if mode == sc.EXACT else self.to_float()

    def chop(self, rel: float = sc.EPS_CMP) -> "ExpPolynomial":
        """Drop float coefficients negligible next to the largest one."""
        floats = [abs(c) for c, _, _ in self._terms if not sc.is_exact(c)]
        if not floats:
            return self
        scale = max(abs(c) for c, _, _ in self._terms)
        return ExpPolynomial(
            t for t in self._terms if sc.is_exact(t[0]) or abs(t[0]) > rel * scale
        )

    # -- evaluation ----------------------------------------------------------

    def __call__(self, n) -> Scalar:
        return self.evaluate(n)

    def evaluate(self, n) -> Scalar:
        """Value at ``n``.

        Integer ``n`` keeps exact arithmetic.  Non-integer ``n`` requires every
        base to be positive; bases other than 1 then yield floats.
        """
        return _total(self._term_values(n))

    def magnitude(self, n) -> float:
        """Sum of the absolute term values at ``n``: the scale of roundoff in :meth:`evaluate`."""
        return math.fsum(abs(float(v)) for v in self._term_values(n))

    def _term_values(self, n) -> list:
        k = sc.as_int(n)
        if k is not None and not isinstance(n, float):
            return [coeff * base**k * k**power for coeff, base, power in self._terms]
        if isinstance(n, float) and k is not None:
            return [coeff * float(base) ** k * float(k) ** power for coeff, base, power in self._terms]
        if self.has_negative_base():
            raise DomainError(f"cannot evaluate {self} at non-integer n={n}: negative base")
        return [coeff * sc.real_power(base, n) * n**power for coeff, base, power in self._terms]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return ExpPolynomial(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return ExpPolynomial((-c, b, k) for c, b, k in self._terms)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return ExpPolynomial(
            (c1 * c2, b1 * b2, k1 + k2)
            for c1, b1, k1 in self._terms
            for c2, b2, k2 in other._terms
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExpPolynomial):
            if not other.is_constant() or other.is_zero():
                raise ParseError("can only divide by a nonzero constant")
            other = other.constant_value()
        other = _normalize(other)
        if other == 0:
            raise ZeroDivisionError("division of an exp-polynomial by zero")
        return ExpPolynomial((c / other, b, k) for c, b, k in self._terms)

    def __pow__(self, exponent: int):
        k = sc.as_int(exponent)
        if k is None or k < 0:
            raise ParseError("exp-polynomials only take nonnegative integer powers")
        result = ExpPolynomial.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, s) -> "ExpPolynomial":
        """The function ``n -> self(n + s)``."""
        out = []
        for coeff, base, power in self._terms:
            scaled = coeff * sc.real_power(base, s)
            for j in range(power + 1):
                out.append((scaled * comb(power, j) * s ** (power - j), base, j))
        return ExpPolynomial(out)

    def reflect(self) -> "ExpPolynomial":
        """The function ``t -> self(-t)``."""
        return ExpPolynomial(
            (c * (-1) ** k, 1 / b, k) for c, b, k in self._terms
        )

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ExpPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, float)):
            return self == ExpPolynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def approx_equal(self, other: "ExpPolynomial", eps: float = sc.EPS_CMP) -> bool:
        a, b = dict(((bb, k), c) for c, bb, k in self._terms), dict(
            ((bb, k), c) for c, bb, k in other._terms
        )
        keys = set(a) | set(b)
        return all(sc.approx_equal(a.get(key, 0), b.get(key, 0), eps) for key in keys)

    def __repr__(self):
        return f"ExpPolynomial({format_exppoly(self)!r})"

    def __str__(self):
        return format_exppoly(self)


def _total(values) -> Scalar:
    # compensated summation once floats are involved: closed forms cancel heavily
    if all(sc.is_exact(v) for v in values):
        return sum(values, Fraction(0))
    return math.fsum(float(v) for v in values)


def _lift(x):
    if isinstance(x, ExpPolynomial):
        return x
    if isinstance(x, (int, Fraction, float)) and not isinstance(x, bool):
        return ExpPolynomial.constant(x)
    return NotImplemented


# -- text form ---------------------------------------------------------------


def _fmt_atom(x: Scalar) -> str:
    text = sc.fmt(x)
    if text.startswith("-") or "/" in text or "e" in text:
        return f"({text})"
    return text


def format_exppoly(p: ExpPolynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for coeff, base, power in p.terms:
        term = f"{_fmt_atom(coeff)}*{_fmt_atom(base)}^n"
        if power == 1:
            term += "*n"
        elif power > 1:
            term += f"*n^{power}"
        parts.append(term)
    return " + ".join(parts)


_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


class _Evaluator:
    def __init__(self, env: Mapping[str, object], mode: str, var: str):
        self.mode = mode
        self.var = var
        self.env = {}
        for name, value in env.items():
            if value is None:
                continue
            if isinstance(value, ExpPolynomial):
                self.env[name] = value
            else:
                self.env[name] = ExpPolynomial.constant(sc.coerce(value, mode))

    def literal(self, value) -> ExpPolynomial:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"unsupported literal {value!r}")
        return ExpPolynomial.constant(sc.coerce(value, self.mode))

    def visit(self, node) -> ExpPolynomial:
        if isinstance(node, ast.Expression):
            return self.visit(node.body)
        if isinstance(node, ast.Constant):
            return self.literal(node.value)
        if isinstance(node, ast.Name):
            if node.id == self.var:
                return ExpPolynomial.monomial(1)
            if node.id == "inf":
                raise ParseError("infinity is not a scalar")
            try:
                return self.env[node.id]
            except KeyError:
                raise ParseError(f"unbound name {node.id!r}") from None
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = self.visit(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
            left = self.visit(node.left)
            right = self.visit(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
            return self.power(left, right)
        raise ParseError(f"unsupported syntax: {ast.dump(node)}")

    def power(self, base: ExpPolynomial, exponent: ExpPolynomial) -> ExpPolynomial:
        if exponent.is_constant():
            e = exponent.constant_value()
            if base.is_constant():
                b = base.constant_value()
                if b == 0:
                    k = sc.as_int(e)
                    if k is None or k < 0:
                        raise ParseError("0 raised to a non-positive or non-integer power")
                    return ExpPolynomial.constant(0 if k else 1)
                return ExpPolynomial.constant(sc.real_power(b, e))
            return base**e
        # exponent affine in n: b^(a*n + s) = b^s * (b^a)^n
        if not base.is_constant():
            raise ParseError("the base of an n-dependent power must be constant")
        slope, offset = Fraction(0), Fraction(0)
        for coeff, b, k in exponent.terms:
            if b != 1 or k > 1:
                raise ParseError("exponents must be affine in n")
            if k == 1:
                slope = coeff
            else:
                offset = coeff
        b = base.constant_value()
        return ExpPolynomial([(sc.real_power(b, offset), sc.real_power(b, slope), 0)])


def parse_exppoly(
    text: str, env: Mapping[str, object] | None = None, mode: str = sc.EXACT, var: str = "n"
) -> ExpPolynomial:
    """Parse ``text`` into an :class:`ExpPolynomial` after substituting ``env``.

    ``^`` and ``**`` both denote powers.  Literals become exact fractions in
    exact mode (``0.5`` is ``1/2``) and floats in float mode.
    """
    source = text.replace("^", "**").strip()
    if not source:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(source, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    try:
        result = _Evaluator(env or {}, mode, var).visit(tree)
    except (ZeroDivisionError, OverflowError) as exc:
        raise ParseError(f"cannot evaluate {text!r}: {exc}") from None
    return result.coerce(mode) if mode == sc.FLOAT else result


def parse_constant(text: str, env: Mapping[str, object] | None = None, mode: str = sc.EXACT) -> Scalar:
    """Parse a scalar expression such as ``-1/2`` or ``q^(-nu0)*(q^nu0-1)/(q-1)``."""
    value = parse_exppoly(text, env, mode=mode, var="\0")
    if not value.is_constant():
        raise ParseError(f"{text!r} is not a constant")
    v = value.constant_value()
    return float(v) if mode == sc.FLOAT else v


def q_number(n, q) -> Scalar:
    """The q-number ``[n]_q = (q**n - 1)/(q - 1)``, equal to ``n`` at ``q == 1``."""
    q = _normalize(q)
    if q == 0:
        raise DomainError("q must be nonzero")
    if q == 1:
        return _normalize(n) if not isinstance(n, float) else n
    return (sc.real_power(q, n) - 1) / (q - 1)


__all__ = ["ExpPolynomial", "format_exppoly", "parse_exppoly", "parse_constant", "q_number"]
