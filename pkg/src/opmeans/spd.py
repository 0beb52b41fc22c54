"""Symmetric eigendecomposition, spectral calculus, and Loewner comparisons.

Everything numerically heavy in this package reduces to the primitives here.
The eigensolver is a cyclic Jacobi iteration: it is self-contained, and for
symmetric matrices it delivers high relative accuracy, which matters more
than speed at the matrix sizes this package targets (n <= 64).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConditioningError, DomainError, StructuralError

SYMMETRY_RTOL = 1e-12      # admissible asymmetry, relative to max(1, ||M||_F)
PD_FLOOR_RTOL = 1e-12      # positive definiteness floor, relative to ||M||_F
OFFDIAG_TARGET = 1e-14     # Jacobi stop: off-diagonal Frobenius mass vs ||M||_F
MAX_SWEEPS = 30


def _as_array(m, name: str = "matrix") -> np.ndarray:
    if isinstance(m, SpdMatrix):
        return m.entries
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise StructuralError(f"{name} must be a square 2-d array, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a)):
        raise StructuralError(f"{name} contains non-finite entries")
    return a


def _require_symmetric(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Reject matrices that are asymmetric beyond roundoff; return (a + a.T)/2."""
    if a.shape[0] == 0:
        raise StructuralError(f"{name} must have at least one row")
    scale = max(1.0, float(np.linalg.norm(a)))
    asym = float(np.max(np.abs(a - a.T)))
    if asym > SYMMETRY_RTOL * scale:
        raise StructuralError(
            f"{name} is not symmetric: max |M - M^T| = {asym:.3e} "
            f"exceeds {SYMMETRY_RTOL:.0e} * max(1, ||M||_F)")
    return 0.5 * (a + a.T)


def _symmetrize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a symmetric matrix.

    Sweeps rotate away every off-diagonal entry in turn until the off-diagonal
    Frobenius mass drops below OFFDIAG_TARGET * ||M||_F, with a hard cap of
    MAX_SWEEPS sweeps. Returns (eigenvalues, V) with a = V diag(w) V^T,
    eigenvalues unsorted.
    """
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return np.array([a[0, 0]]), v
    a = a.copy()
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n), v
    skip = OFFDIAG_TARGET * norm / (n * n)
    for sweep in range(MAX_SWEEPS + 1):
        # measured entrywise; total-minus-diagonal cancels catastrophically
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= OFFDIAG_TARGET * norm:
            break
        if sweep == MAX_SWEEPS:
            raise ConditioningError(
                f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps "
                f"(off-diagonal mass {off:.3e}, target {OFFDIAG_TARGET * norm:.3e})")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                # the rotation is chosen to annihilate this entry exactly
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues (non-ascending) and an orthonormal eigenbasis (columns)."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        w = np.array(self.eigenvalues, dtype=float)
        u = np.array(self.basis, dtype=float)
        w.setflags(write=False)
        u.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "basis", u)

    def apply(self, values) -> np.ndarray:
        """Assemble U diag(values) U^T."""
        vals = np.asarray(values, dtype=float)
        return _symmetrize((self.basis * vals) @ self.basis.T)

    def reconstruct(self) -> np.ndarray:
        return self.apply(self.eigenvalues)


def sym_eigendecompose(m) -> SpectralDecomposition:
    """Eigendecompose a symmetric matrix (positive definiteness not required).

    Eigenvalues come back non-ascending. Eigenvector signs are fixed by making
    the largest-magnitude component of each column positive, so repeated calls
    on equal input give identical output.
    """
    a = _require_symmetric(_as_array(m), "matrix")
    w, v = _jacobi(a)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    for j in range(v.shape[1]):
        k = int(np.argmax(np.abs(v[:, j])))
        if v[k, j] < 0.0:
            v[:, j] = -v[:, j]
    return SpectralDecomposition(eigenvalues=w, basis=v)


@dataclass(frozen=True, eq=False)
class SpdMatrix:
    """A validated symmetric positive definite matrix.

    Construction checks symmetry (within SYMMETRY_RTOL relative) and rejects
    matrices whose smallest eigenvalue is <= PD_FLOOR_RTOL * ||M||_F. The
    stored array is a read-only copy; instances are immutable value objects.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = _require_symmetric(_as_array(self.entries, "SpdMatrix"), "SpdMatrix")
        w, _ = _jacobi(a)
        floor = PD_FLOOR_RTOL * float(np.linalg.norm(a))
        lam_min = float(np.min(w))
        if lam_min <= floor:
            raise StructuralError(
                f"matrix is not positive definite within tolerance: smallest "
                f"eigenvalue {lam_min:.6e} is below the floor {floor:.6e}")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, n: int) -> "SpdMatrix":
        return cls(np.eye(n))

    def to_json_dict(self) -> dict:
        return matrix_to_json_dict(self.entries)

    @classmethod
    def from_json_dict(cls, data: dict) -> "SpdMatrix":
        return cls(matrix_from_json_dict(data))


def as_spd(m) -> SpdMatrix:
    """Coerce an array-like to SpdMatrix, validating on the way in."""
    if isinstance(m, SpdMatrix):
        return m
    return SpdMatrix(m)


def matrix_to_json_dict(m) -> dict:
    a = _as_array(m)
    return {"n": int(a.shape[0]), "rows": [[float(x) for x in row] for row in a]}


def matrix_from_json_dict(data) -> np.ndarray:
    if not isinstance(data, dict) or "n" not in data or "rows" not in data:
        raise StructuralError('matrix JSON must be an object with "n" and "rows"')
    n = data["n"]
    rows = data["rows"]
    if not isinstance(n, int) or n < 1:
        raise StructuralError(f'matrix JSON field "n" must be a positive integer, got {n!r}')
    a = np.asarray(rows, dtype=float)
    if a.shape != (n, n):
        raise StructuralError(f'matrix JSON "rows" has shape {a.shape}, expected ({n}, {n})')
    return a


def apply_spectral_function(m, g) -> np.ndarray:
    """Apply a scalar function to a symmetric matrix through its eigenvalues.

    g may be vectorized over a 1-d array or accept scalars. Any non-finite
    value or evaluation failure raises DomainError naming the eigenvalue.
    """
    dec = sym_eigendecompose(m)
    lam = dec.eigenvalues
    vals = None
    try:
        with np.errstate(all="ignore"):
            out = np.asarray(g(lam), dtype=float)
        if out.shape == lam.shape:
            vals = out
    except Exception:
        vals = None
    if vals is None:
        collected = []
        for x in lam:
            try:
                with np.errstate(all="ignore"):
                    collected.append(float(g(float(x))))
            except Exception as exc:
                raise DomainError(f"function undefined at eigenvalue {x!r}: {exc}") from exc
        vals = np.array(collected)
    if not np.all(np.isfinite(vals)):
        bad = lam[~np.isfinite(vals)][0]
        raise DomainError(f"function undefined at eigenvalue {bad!r}")
    return dec.apply(vals)


def loewner_leq(a, b, tol: float = 1e-8) -> bool:
    """Test A <= B in the Loewner order, up to a relative tolerance.

    True iff the smallest eigenvalue of B - A is >= -tol * max(1, ||B-A||_F).
    """
    am = _as_array(a, "A")
    bm = _as_array(b, "B")
    if am.shape != bm.shape:
        raise StructuralError(f"shape mismatch: {am.shape} vs {bm.shape}")
    d = _symmetrize(bm - am)
    w, _ = _jacobi(d)
    return float(np.min(w)) >= -tol * max(1.0, float(np.linalg.norm(d)))


def min_eig_and_norm(a) -> tuple[float, float]:
    """Smallest eigenvalue and Frobenius norm of a symmetric matrix."""
    m = _symmetrize(_as_array(a))
    w, _ = _jacobi(m)
    return float(np.min(w)), float(np.linalg.norm(m))


def sqrt_pair(m) -> tuple[np.ndarray, np.ndarray]:
    """Return (M^{1/2}, M^{-1/2}) for a positive definite matrix."""
    dec = sym_eigendecompose(m)
    lam = dec.eigenvalues
    if float(np.min(lam)) <= 0.0:
        raise ConditioningError(
            f"matrix square root requires positive spectrum, got {np.min(lam)!r}")
    r = np.sqrt(lam)
    return dec.apply(r), dec.apply(1.0 / r)


def random_spd(n: int, cond_cap: float = 100.0, seed: int = 0) -> SpdMatrix:
    """Deterministic random SPD matrix with condition number <= cond_cap."""
    return random_spd_from(np.random.default_rng(seed), n, cond_cap)


def random_spd_from(rng: np.random.Generator, n: int, cond_cap: float = 100.0) -> SpdMatrix:
    """Draw a random SPD matrix from an existing generator stream."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise StructuralError(f"matrix size must be a positive integer, got {n!r}")
    if not (cond_cap >= 1.0):
        raise StructuralError(f"condition cap must be >= 1, got {cond_cap!r}")
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    q = q * np.where(d >= 0.0, 1.0, -1.0)
    # eigenvalues log-uniform in [1, cond_cap] keeps the condition number capped
    lam = np.exp(rng.uniform(0.0, math.log(cond_cap), size=n)) if cond_cap > 1.0 else np.ones(n)
    return SpdMatrix(_symmetrize((q * lam) @ q.T))
