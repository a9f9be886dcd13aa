"""Explicit matrices for ``a``, ``a^+`` and ``N`` in a classified unirrep.

Basis vectors ``|c, nu0~ + n>`` are indexed by ``n``; ``a`` lowers ``n`` with
amplitude ``sqrt(lambda~_n)``, so ``A`` lives on the first superdiagonal and
``Adag = A.T``.  Infinite unirreps are cut to ``dim`` states; the rows and
columns touching a cut edge are excluded from verification.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import scalar as sc
from .algebra import AlgebraSpec
from .classifier import BFA, BFB, DEGENERATE_UB, FD, UB, UnirrepDescriptor
from .errors import DimensionMismatchError, DomainError, NonUnitarizableError, PreconditionError
from .scalar import Scalar

DEFAULT_TOL = 1e-10
MAX_DIM = 10_000

RESIDUAL_NAMES = ("N_adag", "N_a", "quommutator", "positivity", "fd_edges")

# one interior state plus the clipped edge rows
_MIN_DIM = {BFB: 2, BFA: 2, UB: 3, DEGENERATE_UB: 3}


@dataclass(frozen=True)
class MatrixRep:
    """A (possibly truncated) unirrep as dense real matrices.

    ``lam_sq[i]`` is ``lambda~`` at ``n_start + i`` (the squared amplitude of
    ``a`` acting on basis vector ``i``), kept exact when possible.
    ``interior`` is the inclusive index range unaffected by truncation.
    """

    dim: int
    A: np.ndarray
    Adag: np.ndarray
    Nmat: np.ndarray
    kind: str
    truncated: bool
    interior: tuple
    n_start: int
    n_values: tuple
    lam_sq: tuple
    descriptor: UnirrepDescriptor
    mode: str

    @property
    def N_values(self) -> tuple:
        """Eigenvalues ``nu0~ + n`` of ``N``, exact when the descriptor is."""
        return tuple(self.descriptor.nu0_tilde + n for n in self.n_values)

    @property
    def interior_slice(self) -> slice:
        return slice(self.interior[0], self.interior[1] + 1)

    def interior_block(self, M: np.ndarray) -> np.ndarray:
        s = self.interior_slice
        return M[s, s]


def basis_range(descriptor: UnirrepDescriptor, dim: int) -> tuple[int, bool]:
    """First basis index ``n`` and whether the window is a truncation."""
    kind = descriptor.kind
    if kind == FD:
        if dim != descriptor.p + 1:
            raise DimensionMismatchError(
                f"FD unirrep with p={descriptor.p} has dimension {descriptor.p + 1}, not {dim}"
            )
        return 0, False
    if kind == BFB:
        return 0, True
    if kind == BFA:
        return -(dim - 1), True
    if kind in (UB, DEGENERATE_UB):
        return descriptor.offset - dim // 2, True
    raise PreconditionError(f"cannot build a representation for class {kind}")


def _interior(kind: str, dim: int) -> tuple:
    if kind == FD:
        return (0, dim - 1)
    if kind == BFB:
        return (0, dim - 2)
    if kind == BFA:
        return (1, dim - 1)
    return (1, dim - 2)


def _check_lambda(value: Scalar, n: int) -> Scalar:
    if sc.is_exact(value):
        if value < 0:
            raise NonUnitarizableError(f"lambda~_{n} = {sc.fmt(value)} < 0")
        return value
    if value < 0:
        if not sc.is_zero(value):
            raise NonUnitarizableError(f"lambda~_{n} = {value!r} < 0")
        return 0.0
    return value


def build(descriptor: UnirrepDescriptor, spec: AlgebraSpec, dim: int) -> MatrixRep:
    """Matrices of ``a``, ``a^+``, ``N`` on ``dim`` consecutive basis states."""
    if not descriptor.decided:
        raise PreconditionError(f"cannot build a representation for class {descriptor.kind}")
    if not isinstance(dim, int) or dim < 1:
        raise ValueError("dim must be a positive integer")
    if dim > MAX_DIM:
        raise ValueError(f"dim must not exceed {MAX_DIM}")
    n_start, truncated = basis_range(descriptor, dim)
    if dim < _MIN_DIM.get(descriptor.kind, 1):
        raise ValueError(f"dim {dim} leaves no interior states for class {descriptor.kind}")
    n_values = tuple(range(n_start, n_start + dim))
    lam_sq = []
    for i, n in enumerate(n_values):
        if i == 0:
            # amplitude into the state below the window: never stored
            lam_sq.append(Fraction(0) if descriptor.kind in (BFB, FD) else None)
            continue
        lam_sq.append(_check_lambda(descriptor.lambda_tilde(n), n))
    exact = all(v is None or sc.is_exact(v) for v in lam_sq) and sc.is_exact(descriptor.nu0_tilde)
    exact = exact and spec.mode == sc.EXACT and descriptor.mode == sc.EXACT
    A = np.zeros((dim, dim))
    for i in range(1, dim):
        A[i - 1, i] = math.sqrt(float(lam_sq[i]))
    Adag = A.T.copy()
    Nmat = np.diag([float(descriptor.nu0_tilde + n) for n in n_values])
    return MatrixRep(
        dim=dim,
        A=A,
        Adag=Adag,
        Nmat=Nmat,
        kind=descriptor.kind,
        truncated=truncated,
        interior=_interior(descriptor.kind, dim),
        n_start=n_start,
        n_values=n_values,
        lam_sq=tuple(lam_sq),
        descriptor=descriptor,
        mode=sc.EXACT if exact else sc.FLOAT,
    )


# -- verification -------------------------------------------------------------


def _diag_products(rep: MatrixRep):
    """Exact diagonals of ``A Adag`` and ``Adag A`` from the stored squares."""
    d = rep.dim
    zero = Fraction(0) if rep.mode == sc.EXACT else 0.0
    a_adag = [rep.lam_sq[i + 1] if i + 1 < d else zero for i in range(d)]
    adag_a = [rep.lam_sq[i] if i > 0 else zero for i in range(d)]
    return a_adag, adag_a


def _exact_residuals(rep: MatrixRep, spec: AlgebraSpec) -> dict:
    lo, hi = rep.interior
    N = rep.N_values
    a_adag, adag_a = _diag_products(rep)
    # A and Adag are single bands, so the commutators with N reduce to N differences
    comm = max(
        (abs(N[i] - N[i - 1] - 1) * math.sqrt(float(rep.lam_sq[i])) for i in range(lo + 1, hi + 1)),
        default=0,
    )
    quom = max(
        (abs(a_adag[i] - spec.q * adag_a[i] - spec.f(N[i])) for i in range(lo, hi + 1)),
        default=0,
    )
    neg = min((adag_a[i] for i in range(lo, hi + 1)), default=0)
    return {
        "N_adag": comm,
        "N_a": comm,
        "quommutator": quom,
        "positivity": max(0, -neg),
    }


def _float_residuals(rep: MatrixRep, spec: AlgebraSpec) -> tuple[dict, dict]:
    A, Adag, N = rep.A, rep.Adag, rep.Nmat
    q = float(spec.q)
    block = rep.interior_block
    r_adag = block(N @ Adag - Adag @ N - Adag)
    r_a = block(N @ A - A @ N + A)
    a_adag, adag_a = A @ Adag, Adag @ A
    f_diag = np.diag([float(spec.f(x)) for x in _f_args(rep)])
    r_quom = block(a_adag - q * adag_a - f_diag)
    scale_quom = block(np.abs(a_adag) + abs(q) * np.abs(adag_a) + np.abs(f_diag))
    eig = np.linalg.eigvalsh(block(adag_a)) if rep.interior[1] >= rep.interior[0] else np.zeros(1)
    top = max(1.0, float(np.max(np.abs(eig))))
    raw = {
        "N_adag": float(np.max(np.abs(r_adag), initial=0.0)),
        "N_a": float(np.max(np.abs(r_a), initial=0.0)),
        "quommutator": float(np.max(np.abs(r_quom), initial=0.0)),
        "positivity": max(0.0, -float(np.min(eig))),
    }
    scaled = {
        "N_adag": float(np.max(np.abs(r_adag) / np.maximum(1.0, np.abs(block(Adag))), initial=0.0)),
        "N_a": float(np.max(np.abs(r_a) / np.maximum(1.0, np.abs(block(A))), initial=0.0)),
        "quommutator": float(np.max(np.abs(r_quom) / np.maximum(1.0, scale_quom), initial=0.0)),
        "positivity": raw["positivity"] / top,
    }
    return raw, scaled


def _f_args(rep: MatrixRep):
    N = rep.N_values
    if rep.mode == sc.FLOAT:
        # keep integer N exact so negative bases in f stay defined
        return [x if sc.as_int(x) is not None else float(x) for x in N]
    return N


def edge_residual(rep: MatrixRep, spec: AlgebraSpec) -> float | None:
    """Largest quommutator residual on the clipped edge rows (``None`` for FD)."""
    if not rep.truncated:
        return None
    a_adag, adag_a = _diag_products(rep)
    lo, hi = rep.interior
    edges = [i for i in range(rep.dim) if i < lo or i > hi]
    vals = []
    args = _f_args(rep)
    for i in edges:
        vals.append(abs(float(a_adag[i]) - float(spec.q) * float(adag_a[i]) - float(spec.f(args[i]))))
    return max(vals, default=0.0)


def verify(rep: MatrixRep, spec: AlgebraSpec, tol: float = DEFAULT_TOL) -> dict:
    """Residual report for the defining relations on the interior block.

    Exact reps are checked in rational arithmetic through the band structure;
    float reps use dense products.  Float reps pass on residuals scaled by the
    magnitude of the entries involved, since ``[n]_q`` grows exponentially.
    """
    if rep.mode == sc.EXACT:
        exact = _exact_residuals(rep, spec)
        raw = {k: float(v) for k, v in exact.items()}
        scaled = dict(raw)
    else:
        raw, scaled = _float_residuals(rep, spec)
    if rep.kind == FD:
        top = np.abs(rep.Adag[:, -1]).max(initial=0.0)
        bottom = np.abs(rep.A[:, 0]).max(initial=0.0)
        raw["fd_edges"] = scaled["fd_edges"] = float(max(top, bottom))
    else:
        raw["fd_edges"] = scaled["fd_edges"] = None
    judged = scaled if rep.mode == sc.FLOAT else raw
    passed = all(v is None or v <= tol for v in judged.values())
    try:
        cas = casimir_matrix(rep, spec, tol)
        cas = {k: v for k, v in cas.items() if k != "diagonal"}
    except DomainError as exc:
        # q < 0 with non-integer N: the Casimir is not a real operator here
        cas = {"defined": False, "reason": str(exc)}
    return {
        "passed": bool(passed),
        "tol": float(tol),
        "dim": rep.dim,
        "class": rep.kind,
        "mode": rep.mode,
        "interior": list(rep.interior),
        "residuals": raw,
        "scaled_residuals": scaled,
        "edge_residual": edge_residual(rep, spec),
        "casimir": cas,
    }


# -- Casimir and the K element ---------------------------------------------------


def casimir_matrix(rep: MatrixRep, spec: AlgebraSpec, tol: float = DEFAULT_TOL) -> dict:
    """Diagonal of ``q^(-N) (F(N) - Adag A)`` and a constancy check on the interior.

    Float reps compare relative to ``q^(-N) F(N)``, the size of the terms that
    cancel.
    """
    N = rep.N_values
    _, adag_a = _diag_products(rep)
    lo, hi = rep.interior
    if rep.mode == sc.FLOAT:
        N = _f_args(rep)
    diag, scales = [], []
    for i in range(rep.dim):
        try:
            qn = sc.real_power(spec.q, -N[i])
        except DomainError:
            raise DomainError(f"q^(-N) undefined at N = {sc.fmt(N[i])} for q = {sc.fmt(spec.q)}") from None
        F = spec.F(N[i])
        diag.append(qn * (F - adag_a[i]))
        scales.append(max(1.0, abs(float(qn)) * max(abs(float(F)), abs(float(adag_a[i])))))
    c = rep.descriptor.c
    deviation = 0.0
    for i in range(lo, hi + 1):
        err = abs(diag[i] - c)
        if rep.mode == sc.FLOAT or not sc.is_exact(err):
            err = float(err) / scales[i]
        deviation = max(deviation, float(err))
    spread = 0.0
    for i in range(lo + 1, hi + 1):
        gap = abs(diag[i] - diag[lo])
        if rep.mode == sc.FLOAT or not sc.is_exact(gap):
            gap = float(gap) / max(scales[i], scales[lo])
        spread = max(spread, float(gap))
    # irrational q^(-N) turns an exact rep's diagonal into floats
    exact = rep.mode == sc.EXACT and all(sc.is_exact(v) for v in diag[lo : hi + 1])
    return {
        "diagonal": diag,
        "c": sc.to_json(c),
        "max_deviation": deviation,
        "spread": spread,
        "constant": spread == 0 if exact else spread <= tol,
        "matches_c": deviation == 0 if exact else deviation <= tol,
    }


def K_element(rep: MatrixRep, spec: AlgebraSpec, tol: float = DEFAULT_TOL) -> dict:
    """``K = A Adag - Adag A`` and, for constant ``f = k``, the check ``K = q^N (k + (1-q) c)``.

    ``sign`` is the class of ``k + (1-q) c`` (the sign of ``K`` when ``q > 0``);
    ``M_shift`` is ``M - N`` for ``|K| = q^M`` when ``0 < q != 1`` and ``K != 0``.
    """
    a_adag, adag_a = _diag_products(rep)
    lo, hi = rep.interior
    K = [a_adag[i] - adag_a[i] for i in range(rep.dim)]
    out = {"K": K, "identity_checked": False, "residual": None, "sign": None, "M_shift": None}
    if not spec.f.is_constant():
        return out
    k = spec.f.constant_value()
    q, c = spec.q, rep.descriptor.c
    amp = k + (1 - q) * c
    N = rep.N_values if rep.mode == sc.EXACT else _f_args(rep)
    res = 0.0
    for i in range(lo, hi + 1):
        qN = sc.real_power(q, N[i])
        expected = qN * amp
        diff = abs(K[i] - expected)
        if rep.mode == sc.FLOAT or not sc.is_exact(diff):
            # both sides are differences of larger terms: scale by those
            scale = abs(float(a_adag[i])) + abs(float(adag_a[i])) + abs(float(qN)) * (abs(float(k)) + abs(float((1 - q) * c)))
            diff = float(diff) / max(1.0, scale)
        res = max(res, float(diff))
    if sc.is_zero(amp):
        sign = "K=0"
    elif q < 0:
        sign = "alternating"
    else:
        sign = "K>0" if amp > 0 else "K<0"
    shift = None
    if q > 0 and q != 1 and sign != "K=0":
        shift = math.log(abs(float(amp))) / math.log(float(q))
    out.update(identity_checked=True, residual=res, passed=res <= tol, sign=sign, M_shift=shift)
    return out


# -- dumps -----------------------------------------------------------------------


def _header(rep: MatrixRep, spec: AlgebraSpec) -> dict:
    d = rep.descriptor
    return {
        "class": rep.kind,
        "dim": rep.dim,
        "nu0_tilde": sc.to_json(d.nu0_tilde),
        "c": sc.to_json(d.c),
        "q": sc.to_json(spec.q),
        "n_start": rep.n_start,
        "truncated": rep.truncated,
    }


def dump_text(rep: MatrixRep, spec: AlgebraSpec) -> str:
    """Plain-text header followed by the row-major entries of A, Adag and N (17 digits)."""
    d = rep.descriptor
    buf = io.StringIO()
    buf.write(f"# class {rep.kind}\n# d {rep.dim}\n# nu0_tilde {sc.fmt(d.nu0_tilde)}\n")
    buf.write(f"# c {sc.fmt(d.c)}\n# q {sc.fmt(spec.q)}\n# n_start {rep.n_start}\n")
    for label, M in (("A", rep.A), ("Adag", rep.Adag), ("N", rep.Nmat)):
        buf.write(f"{label}\n")
        for row in M:
            buf.write(" ".join("%.17g" % x for x in row) + "\n")
    return buf.getvalue()


def dump_json(rep: MatrixRep, spec: AlgebraSpec, report: dict | None = None, **kwargs) -> str:
    data = _header(rep, spec)
    data.update(
        A=rep.A.tolist(),
        Adag=rep.Adag.tolist(),
        N=rep.Nmat.tolist(),
        verify=report if report is not None else verify(rep, spec),
    )
    return json.dumps(data, **kwargs)


def load_text(text: str) -> dict:
    """Parse :func:`dump_text` output back into header fields and float arrays."""
    header, blocks, current = {}, {}, None
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(" ")
            header[key] = value
        elif line in ("A", "Adag", "N"):
            current = blocks.setdefault(line, [])
        elif line.strip():
            current.append([float(x) for x in line.split()])
    return {"header": header, **{k: np.array(v) for k, v in blocks.items()}}


__all__ = [
    "DEFAULT_TOL",
    "MatrixRep",
    "K_element",
    "basis_range",
    "build",
    "casimir_matrix",
    "dump_json",
    "dump_text",
    "edge_residual",
    "load_text",
    "verify",
]
