"""Rational approximation of sampled loops in RP^m.

A loop is given by samples on the sphere of radius sqrt(m+1) at equally
spaced angles alpha_j = pi + 2 pi j / K, so sample 0 sits at x = tan(alpha/2)
= infinity, the basepoint (1, ..., 1).  The samples are lifted to a
continuous path on the sphere.  A closed lift (even class) is fitted by
integer harmonics of alpha, an antipodal lift (odd class) by half-integer
harmonics; substituting x = tan(alpha/2) turns the fit into m+1 monic
polynomials of degree 2N or 2N+1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from realloops.poly import Polynomial
from realloops.ratmap import RationalMap, validate


class ApproximationError(ValueError):
    pass


@dataclass(frozen=True)
class LiftedLoop:
    points: np.ndarray  # (K, m+1), continuous lift, unit vectors
    odd: bool

    @property
    def m(self) -> int:
        return self.points.shape[1] - 1


def sample_angles(K: int) -> np.ndarray:
    return math.pi + 2 * math.pi * np.arange(K) / K


def _as_array(samples) -> np.ndarray:
    a = np.asarray(samples, dtype=float)
    if a.ndim != 2 or a.shape[1] < 2 or a.shape[0] < 3:
        raise ApproximationError("samples must be a (K, m+1) array with K >= 3, m >= 1")
    if len(a) > 3 and np.allclose(a[0], a[-1]):
        a = a[:-1]  # closing sample repeats the first
    return a


def lift(samples) -> LiftedLoop:
    a = _as_array(samples)
    norms = np.linalg.norm(a, axis=1)
    if np.any(norms == 0):
        raise ApproximationError("a sample is the zero vector")
    u = a / norms[:, None]
    base = np.ones(a.shape[1]) / math.sqrt(a.shape[1])
    if abs(abs(u[0] @ base) - 1) > 1e-9:
        raise ApproximationError("the first sample must be the basepoint (1, ..., 1)")
    if u[0] @ base < 0:
        u[0] = -u[0]
    for j in range(1, len(u)):
        d = u[j] @ u[j - 1]
        if abs(d) < math.cos(math.pi / 8):
            raise ApproximationError(f"samples {j - 1} and {j} are too far apart; sample more densely")
        if d < 0:
            u[j] = -u[j]
    closing = u[-1] @ u[0]
    if abs(closing) < math.cos(math.pi / 8):
        raise ApproximationError("the last sample is too far from the first")
    return LiftedLoop(u, closing < 0)


def _harmonics(alpha: np.ndarray, N: int, odd: bool) -> np.ndarray:
    """Basis columns after eliminating the constraint f(pi) = 1 (see approximate_loop)."""
    cols = []
    if odd:
        s0 = np.sin(alpha / 2)
        for k in range(N + 1):
            cols.append(np.cos((k + 0.5) * alpha))
        for k in range(1, N + 1):
            cols.append(np.sin((k + 0.5) * alpha) - (-1) ** k * s0)
    else:
        for k in range(1, N + 1):
            cols.append(np.cos(k * alpha) - (-1) ** k)
        for k in range(1, N + 1):
            cols.append(np.sin(k * alpha))
    return np.stack(cols, axis=1) if cols else np.zeros((len(alpha), 0))


def _gauss_pow(k: int) -> tuple[Polynomial, Polynomial]:
    """Real and imaginary parts of (1 + i x)^k."""
    re, im = [Fraction(0)] * (k + 1), [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        c = Fraction(math.comb(k, j))
        # (i x)^j = i^j x^j
        r = j % 4
        if r == 0:
            re[j] = c
        elif r == 1:
            im[j] = c
        elif r == 2:
            re[j] = -c
        else:
            im[j] = -c
    return Polynomial(tuple(re)), Polynomial(tuple(im))


def _to_polynomial(cos_c: Sequence[Fraction], sin_c: Sequence[Fraction], N: int, odd: bool) -> Polynomial:
    """sum cos_c[k] cos(w_k a) + sin_c[k] sin(w_k a), times (1+x^2)^(N or N+1/2)."""
    one_x2 = Polynomial((Fraction(1), Fraction(0), Fraction(1)))
    total = Polynomial(())
    for k in range(N + 1):
        e = 2 * k + 1 if odd else 2 * k
        re, im = _gauss_pow(e)
        total = total + (re.scale(cos_c[k]) + im.scale(sin_c[k])) * one_x2 ** (N - k)
    return total


# Harmonic coefficients are rounded to a common grid of 1e-12.  A shared
# denominator keeps the integer polynomials behind the exact root machinery
# short; independent continued-fraction rounding makes them thousands of bits.
_GRID = 10**12


def _rat(v: float) -> Fraction:
    return Fraction(round(float(v) * _GRID), _GRID)


def chordal(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Projective chordal distance between rows of u and v."""
    u = u / np.linalg.norm(u, axis=-1, keepdims=True)
    v = v / np.linalg.norm(v, axis=-1, keepdims=True)
    return np.minimum(np.linalg.norm(u - v, axis=-1), np.linalg.norm(u + v, axis=-1))


def evaluate_on_angles(f: RationalMap, alpha: np.ndarray) -> np.ndarray:
    """Homogeneous values of f at x = tan(alpha/2), finite even at alpha = pi."""
    s, c = np.sin(alpha / 2), np.cos(alpha / 2)
    k = np.arange(f.n + 1)
    basis = s[:, None] ** k * c[:, None] ** (f.n - k)  # (K, n+1)
    coeffs = np.array([[float(a) for a in p.coeffs] + [0.0] * (f.n + 1 - len(p.coeffs)) for p in f.polys])
    return basis @ coeffs.T


def approximate_loop(samples, N: int) -> tuple[RationalMap, float]:
    """Fit a rational map to the sampled loop; returns (map, max chordal error on the samples)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    lifted = lift(samples)
    u, odd, m = lifted.points, lifted.odd, lifted.m
    K = len(u)
    if K < 2 * N + 3:
        raise ApproximationError(f"{K} samples cannot determine degree-{N} harmonics")
    alpha = sample_angles(K)
    y = u * math.sqrt(m + 1)  # basepoint becomes (1, ..., 1)
    A = _harmonics(alpha, N, odd)
    base = np.sin(alpha / 2) if odd else np.ones(K)
    polys = []
    for i in range(m + 1):
        if A.shape[1]:
            coef, *_ = np.linalg.lstsq(A, y[:, i] - base, rcond=None)
        else:
            coef = []
        coef = [_rat(c) for c in coef]
        if odd:
            cos_c = coef[:N + 1]
            sin_c = [Fraction(0)] + coef[N + 1:]
            sin_c[0] = 1 - sum((-1) ** k * sin_c[k] for k in range(1, N + 1))
        else:
            cos_c = [Fraction(0)] + coef[:N]
            sin_c = [Fraction(0)] + coef[N:]
            cos_c[0] = 1 - sum((-1) ** k * cos_c[k] for k in range(1, N + 1))
        polys.append(_to_polynomial(cos_c, sin_c, N, odd))
    n = 2 * N + 1 if odd else 2 * N
    for p in polys:
        if p.degree != n or p.lc != 1:
            raise ApproximationError(f"basepoint defect: leading coefficient {p.lc} in degree {p.degree}")
    f = RationalMap(m, n, tuple(polys))
    v = validate(f)
    if not v.ok:
        raise ApproximationError(f"approximant has a common real root ({v.diagnostic}); increase N")
    err = float(np.max(chordal(evaluate_on_angles(f, alpha), u)))
    return f, err


def crossing_config(samples, k: int) -> list[float]:
    """Parameters x = tan(alpha/2) where coordinate k of the lifted loop changes sign.

    Crossings are linearly interpolated in alpha between samples; a crossing
    across the basepoint seam is reported at x = +inf or -inf.
    """
    lifted = lift(samples)
    u = lifted.points
    if not 0 <= k < u.shape[1]:
        raise ValueError(f"coordinate {k} out of range")
    if np.any(u[:, k] == 0):
        raise ApproximationError(f"a sample lies on the hyperplane y_{k} = 0; perturb the input")
    K = len(u)
    alpha = sample_angles(K)
    vals = np.append(u[:, k], -u[0, k] if lifted.odd else u[0, k])
    angs = np.append(alpha, 3 * math.pi)
    out = []
    for j in range(K):
        a, b = vals[j], vals[j + 1]
        if (a > 0) != (b > 0):
            t = angs[j] + (angs[j + 1] - angs[j]) * a / (a - b)
            out.append(math.tan(t / 2))
    return sorted(out)


__all__ = [
    "ApproximationError", "LiftedLoop", "approximate_loop", "chordal", "crossing_config",
    "evaluate_on_angles", "lift", "sample_angles",
]
