"""Dense complex linear algebra helpers and reproducible random streams.

Matrices are plain ``numpy.complex128`` arrays stored row-major (C order);
vectors are 1-D arrays.  Everything here is double precision: the scenarios
of interest (antenna counts up to a few thousand, a handful of users) are
far from any precision limit.

Randomness goes through :class:`RngStream`, a thin wrapper around the
counter-based Philox bit generator keyed via ``numpy.random.SeedSequence``.
The same ``(master_seed, key)`` always reproduces the same draws, and
distinct keys give statistically independent streams, so Monte Carlo cells
can be assigned their own streams up front and evaluated in any order.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError, SingularMatrixError

__all__ = [
    "RngStream",
    "cscg_sample",
    "matmul",
    "adjoint",
    "invert_small",
    "frobenius_norm",
]

# Relative pivot tolerance for invert_small (scaled by the largest input entry).
PIVOT_RTOL = 1e-12


class RngStream:
    """A deterministic, splittable random stream.

    Backed by Philox (4x64 counters) seeded through
    ``SeedSequence(master_seed, spawn_key=key)``.  Gaussian variates come
    from ``Generator.standard_normal`` (ziggurat); numpy's stream
    compatibility policy keeps those draws bit-stable, so results reproduce
    exactly for a given numpy build.

    A stream is single-owner mutable: never share one instance across
    workers.  Use :meth:`derive` to split off independent child streams
    (e.g. one per Monte Carlo cell) instead.
    """

    def __init__(self, master_seed: int, key: tuple[int, ...] = ()):
        self.master_seed = int(master_seed)
        self.key = tuple(int(k) for k in key)
        seq = np.random.SeedSequence(self.master_seed, spawn_key=self.key)
        self._generator = np.random.Generator(np.random.Philox(seq))

    def derive(self, *ids: int) -> "RngStream":
        """Return an independent child stream keyed by ``key + ids``."""
        return RngStream(self.master_seed, self.key + tuple(ids))

    @property
    def generator(self) -> np.random.Generator:
        """The underlying numpy Generator (advances on every draw)."""
        return self._generator

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RngStream(master_seed={self.master_seed}, key={self.key})"


def cscg_sample(rng: RngStream, rows: int, cols: int) -> np.ndarray:
    """Sample a ``rows x cols`` matrix of i.i.d. CN(0, 1) entries.

    Each entry has independent real and imaginary parts of variance 1/2
    (circularly symmetric complex Gaussian with unit total variance).
    Draw order: one ``standard_normal`` block of shape ``(rows, cols, 2)``
    consumed row-major, real before imaginary part of every entry.
    """
    if rows < 1 or cols < 1:
        raise ShapeError(f"matrix dimensions must be >= 1, got {rows}x{cols}")
    flat = rng.generator.standard_normal((int(rows), int(cols), 2))
    return flat.view(np.complex128)[:, :, 0] * np.sqrt(0.5)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact complex matrix product ``a @ b`` with an explicit shape check."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"matmul expects 2-D operands, got {a.ndim}-D and {b.ndim}-D")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"incompatible shapes {a.shape} x {b.shape}")
    return a @ b


def adjoint(a: np.ndarray, mode: str = "hermitian") -> np.ndarray:
    """Elementwise conjugate, transpose, or Hermitian (conjugate) transpose."""
    a = np.asarray(a)
    if mode == "conjugate":
        return np.conj(a)
    if mode == "transpose":
        return np.array(a.T)
    if mode == "hermitian":
        return np.array(a.conj().T)
    raise ValueError(f"unknown adjoint mode {mode!r}")


def invert_small(a: np.ndarray) -> np.ndarray:
    """Invert a small square complex matrix by Gauss-Jordan elimination.

    Uses partial pivoting with a relative singularity test: any pivot with
    magnitude below ``PIVOT_RTOL`` times the largest input-entry magnitude
    raises :class:`SingularMatrixError`.  Meant for the K x K Gram matrices
    of linear processing (K of order ten), not for large systems.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"invert_small expects a square matrix, got {a.shape}")
    n = a.shape[0]
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        raise SingularMatrixError("matrix is identically zero")
    tol = PIVOT_RTOL * scale

    aug = np.hstack([a.copy(), np.eye(n, dtype=np.complex128)])
    for col in range(n):
        pivot_row = col + int(np.argmax(np.abs(aug[col:, col])))
        pivot = aug[pivot_row, col]
        if abs(pivot) < tol:
            raise SingularMatrixError(
                f"pivot magnitude {abs(pivot):.3e} below tolerance {tol:.3e} "
                f"at column {col}"
            )
        if pivot_row != col:
            aug[[col, pivot_row]] = aug[[pivot_row, col]]
        aug[col] = aug[col] / aug[col, col]
        factors = aug[:, col].copy()
        factors[col] = 0.0
        aug -= np.outer(factors, aug[col])
    return np.ascontiguousarray(aug[:, n:])


def frobenius_norm(a: np.ndarray) -> float:
    """Square root of the sum of squared entry magnitudes."""
    return float(np.linalg.norm(np.asarray(a)))
