"""Local kernel interpolants with spherical-harmonic augmentation.

One local interpolant over an m-point neighborhood has the form

    Z(x) = sum_i a_i psi(g(x, x_i)) + sum_k b_k Y_k(x)

and is determined by the interpolation conditions Z(x_i) = f_i together
with the moment conditions sum_i a_i Y_k(x_i) = 0, i.e. the saddle-point
system

    [ A   Y ] [a]   [f]
    [ Y^T 0 ] [b] = [0],     A[i,j] = psi(g(x_i, x_j)),  Y[i,k] = Y_k(x_i).

Systems are solved by dense LU with partial pivoting plus iterative
refinement.  On dense node sets the kernel block is nearly flat and its
condition number can pass 1/eps, so neighborhoods that miss the residual
tolerance in double precision are re-solved by an extended-precision LU;
genuinely singular systems fall back to a least-squares solve (flagged on
the result).  A solution that still violates the interpolation or moment
tolerances raises SolveError with the offending neighborhood id.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import harmonics
from .errors import ConfigError, SolveError

DEFAULT_RTOL = 1e-8

# Moment residuals are measured against ||a||; data that is exactly a
# harmonic drives the true a to zero, leaving only solver noise, so a small
# absolute term scaled by ||f|| keeps the check meaningful there.
MOMENT_ABS_FLOOR = 1e-10

_REFINE_STEPS = 3


@dataclass(frozen=True)
class LocalInterpolant:
    """Fitted coefficients of one augmented local interpolant."""

    centers: np.ndarray   # (m, 3) neighborhood nodes, nearest first
    a: np.ndarray         # (m,) kernel coefficients
    b: np.ndarray         # ((L+1)^2,) harmonic coefficients
    kernel: object
    degree: int
    used_fallback: bool = False

    def __call__(self, x) -> np.ndarray:
        return eval_local(self, x)


def eval_local(interp: LocalInterpolant, x) -> np.ndarray:
    """Evaluate Z at x (shape (3,) or (..., 3))."""
    x = np.asarray(x, dtype=float)
    dots = np.clip(x @ interp.centers.T, -1.0, 1.0)
    out = interp.kernel.at_cos(dots) @ interp.a
    if interp.degree >= 0:
        out = out + harmonics.sh_basis(x, interp.degree) @ interp.b
    return out


def _validate_sizes(m: int, degree: int) -> int:
    u = harmonics.sh_dim(degree)
    if m < u:
        raise ConfigError(
            f"augmentation of degree {degree} needs at least (L+1)^2 = {u} "
            f"nodes per neighborhood, got {m}"
        )
    return u


def _refine_keep_best(M, rhs, sol):
    """Iterative refinement that never accepts a worse residual.

    Near-singular systems can make plain refinement oscillate or diverge;
    corrections are applied per row only where they shrink the residual.
    """
    best = sol
    best_norm = np.linalg.norm(rhs - np.einsum("nij,nj->ni", M, best), axis=1)
    for _ in range(_REFINE_STEPS):
        resid = rhs - np.einsum("nij,nj->ni", M, best)
        cand = best + np.linalg.solve(M, resid[..., None])[..., 0]
        cand_norm = np.linalg.norm(rhs - np.einsum("nij,nj->ni", M, cand), axis=1)
        better = cand_norm < best_norm
        if not np.any(better):
            break
        best = np.where(better[:, None], cand, best)
        best_norm = np.where(better, cand_norm, best_norm)
    return best


def _lu_solve_extended(M, rhs):
    """LU with partial pivoting in extended precision; None on zero pivot.

    80-bit arithmetic (where the platform provides it) pushes the residual
    floor far below double rounding, which rescues neighborhoods whose
    double-precision condition number exceeds 1/eps.
    """
    a = np.asarray(M, dtype=np.longdouble).copy()
    x = np.asarray(rhs, dtype=np.longdouble).copy()
    n = a.shape[0]
    for c in range(n):
        p = c + int(np.argmax(np.abs(a[c:, c])))
        if a[p, c] == 0.0:
            return None
        if p != c:
            a[[c, p]] = a[[p, c]]
            x[[c, p]] = x[[p, c]]
        if c + 1 < n:
            mult = a[c + 1 :, c] / a[c, c]
            a[c + 1 :, c + 1 :] -= mult[:, None] * a[c, c + 1 :]
            x[c + 1 :] -= mult * x[c]
    for c in range(n - 1, -1, -1):
        x[c] = (x[c] - a[c, c + 1 :] @ x[c + 1 :]) / a[c, c]
    return x.astype(float)


def solve_saddle_batch(
    kernel, degree, pts, vals, rtol=DEFAULT_RTOL, node_indices=None, strict=True
):
    """Solve the saddle-point systems of many equally-sized neighborhoods.

    pts: (n, m, 3) neighborhoods, vals: (n, m) data.  Returns
    (a, b, fallback) with shapes (n, m), (n, U), (n,); `fallback` marks
    neighborhoods that needed the least-squares path.  A neighborhood whose
    best solution still misses the tolerances raises SolveError, unless
    ``strict=False``, which keeps the lowest-residual attempt and flags it
    (used by parameter sweeps that must stay finite in ill-conditioned
    corners of the shape-parameter range).
    """
    pts = np.asarray(pts, dtype=float)
    vals = np.asarray(vals, dtype=float)
    n, m, _ = pts.shape
    u = _validate_sizes(m, degree)

    dots = np.clip(np.einsum("nik,njk->nij", pts, pts), -1.0, 1.0)
    A = kernel.at_cos(dots)
    Y = harmonics.sh_basis(pts, degree)

    M = np.zeros((n, m + u, m + u))
    M[:, :m, :m] = A
    if u:
        M[:, :m, m:] = Y
        M[:, m:, :m] = np.transpose(Y, (0, 2, 1))
    rhs = np.concatenate([vals, np.zeros((n, u))], axis=1)

    scale = np.linalg.norm(vals, axis=1)
    fallback = np.zeros(n, dtype=bool)
    try:
        sol = np.linalg.solve(M, rhs[..., None])[..., 0]
        sol = _refine_keep_best(M, rhs, sol)
    except np.linalg.LinAlgError:
        # Some neighborhood is exactly singular; rows left at zero fail the
        # residual check below and run through the retry ladder.
        sol = np.zeros_like(rhs)
        for i in range(n):
            try:
                sol_i = np.linalg.solve(M[i], rhs[i])[None]
                sol[i] = _refine_keep_best(M[i][None], rhs[i][None], sol_i)[0]
            except np.linalg.LinAlgError:
                pass

    a, b = sol[:, :m], sol[:, m:]
    for i in np.nonzero(~_residuals_ok(A, Y, vals, a, b, rtol))[0]:
        best = sol[i]
        best_norm = np.linalg.norm(rhs[i] - M[i] @ best)
        extended = _lu_solve_extended(M[i], rhs[i])
        if extended is not None and np.linalg.norm(rhs[i] - M[i] @ extended) < best_norm:
            best = extended
            best_norm = np.linalg.norm(rhs[i] - M[i] @ best)
        a[i], b[i] = best[:m], best[m:]
        if not _row_ok(A, Y, vals, a, b, rtol, i):
            least_squares, *_ = np.linalg.lstsq(M[i], rhs[i], rcond=None)
            fallback[i] = True
            if np.linalg.norm(rhs[i] - M[i] @ least_squares) < best_norm:
                best = least_squares
                a[i], b[i] = best[:m], best[m:]
            if not _row_ok(A, Y, vals, a, b, rtol, i) and strict:
                idx = node_indices[i] if node_indices is not None else i
                resid = np.linalg.norm(A[i] @ a[i] + (Y[i] @ b[i] if u else 0.0) - vals[i])
                raise SolveError(
                    f"saddle-point solution misses tolerance {rtol:g} "
                    f"(interpolation residual {resid:.3e}, data norm {scale[i]:.3e})",
                    node_index=idx,
                )
    return a, b, fallback


def _row_ok(A, Y, vals, a, b, rtol, i) -> bool:
    sl = slice(i, i + 1)
    return bool(_residuals_ok(A[sl], Y[sl], vals[sl], a[sl], b[sl], rtol)[0])


def _residuals_ok(A, Y, vals, a, b, rtol):
    """Per-neighborhood check of interpolation and moment residuals."""
    u = Y.shape[-1]
    pred = np.einsum("nij,nj->ni", A, a)
    if u:
        pred = pred + np.einsum("niu,nu->ni", Y, b)
    scale = np.linalg.norm(vals, axis=1)
    ok = np.linalg.norm(pred - vals, axis=1) <= rtol * scale
    if u:
        moment = np.abs(np.einsum("niu,ni->nu", Y, a)).max(axis=1)
        y_max = np.abs(Y).max(axis=(1, 2))
        ok &= moment <= y_max * (
            rtol * np.linalg.norm(a, axis=1) + MOMENT_ABS_FLOOR * scale
        )
    return ok


def build_local_interpolant(
    nodes, values, kernel, degree: int, rtol: float = DEFAULT_RTOL, node_index=None
) -> LocalInterpolant:
    """Fit one neighborhood: nodes (m, 3), values (m,)."""
    nodes = np.asarray(nodes, dtype=float).reshape(-1, 3)
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.shape[0] != nodes.shape[0]:
        raise ValueError(
            f"got {nodes.shape[0]} nodes but {values.shape[0]} values"
        )
    a, b, fallback = solve_saddle_batch(
        kernel,
        degree,
        nodes[None],
        values[None],
        rtol=rtol,
        node_indices=None if node_index is None else [node_index],
    )
    return LocalInterpolant(
        centers=nodes,
        a=a[0],
        b=b[0],
        kernel=kernel,
        degree=degree,
        used_fallback=bool(fallback[0]),
    )
