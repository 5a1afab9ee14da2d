"""Independent ground truth: a simultaneous all-roots solver and test families.

The Durand-Kerner (Weierstrass) iteration here shares no code with the
isolation pipeline (no Graeffe squaring, no hull, no bracketed Newton), so it
can serve as the oracle for every derived expectation in the test suite and
for the benchmark's error column.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .poly import Polynomial

__all__ = ["RootSet", "all_roots_oracle", "chebyshev1", "generate_family"]


@dataclass(frozen=True)
class RootSet:
    """All roots of a polynomial with per-root residuals ``|p(root)|``."""

    roots: np.ndarray
    residuals: np.ndarray
    converged: bool
    sweeps: int


def all_roots_oracle(p: Polynomial, tol: float = 1e-12, max_sweeps: int = 500) -> RootSet:
    """Durand-Kerner simultaneous iteration from perturbed-circle starting points.

    Runs in double precision until the largest per-sweep correction drops
    below ``tol`` or ``max_sweeps`` sweeps have passed; non-convergence is
    flagged rather than raised.  Roots at the origin are deflated exactly and
    appended back.
    """
    if p.degree < 1:
        raise ValueError("need degree >= 1")
    c = np.asarray(p.coeffs, dtype=np.complex128)
    nzero = 0
    while c[0] == 0:
        c = c[1:]
        nzero += 1
    n = len(c) - 1
    roots = np.zeros(0, dtype=np.complex128)
    sweeps = 0
    converged = True
    if n >= 1:
        # rescale the variable so the geometric-mean root radius is about 1;
        # keeps the Weierstrass products representable at high degree
        lg = np.log2(np.abs(c), out=np.full(len(c), -np.inf), where=np.abs(c) > 0)
        s = 2.0 ** ((lg[0] - lg[n]) / n)
        d = lg + np.arange(n + 1) * np.log2(s)
        d = d - d.max()
        cs = np.where(np.abs(c) > 0, c / np.where(np.abs(c) > 0, np.abs(c), 1.0), 0.0)
        cs = cs * np.exp2(d)
        cs = cs / cs[n]
        centroid = -cs[n - 1] / n
        ang = 2.0 * np.pi * np.arange(n) / n + 0.4
        radius = 1.0 + 0.05 * np.arange(n) / n
        z0 = centroid + radius * np.exp(1j * ang)
        z, sweeps, converged = _kernels.durand_kerner_kernel(cs, z0, tol, max_sweeps)
        roots = z * s
    if nzero:
        roots = np.concatenate([roots, np.zeros(nzero, dtype=np.complex128)])
    with np.errstate(over="ignore", invalid="ignore"):
        vals = _kernels.horner_points(np.asarray(p.coeffs, dtype=np.complex128), roots)
        residuals = np.abs(vals)
    return RootSet(roots=roots, residuals=residuals, converged=bool(converged), sweeps=int(sweeps))


def chebyshev1(r: int) -> Polynomial:
    """Chebyshev polynomial of the first kind, degree ``r``; roots ``cos((2j-1)pi/(2r))``."""
    if r < 1:
        raise ValueError("need r >= 1")
    t0 = np.array([1.0])
    t1 = np.array([0.0, 1.0])
    for _ in range(r - 1):
        t2 = np.zeros(len(t1) + 1)
        t2[1:] = 2.0 * t1
        t2[: len(t0)] -= t0
        t0, t1 = t1, t2
    return Polynomial(t1)


def generate_family(family_type: int, n: int, r: int, seed: int) -> Polynomial:
    """Benchmark polynomial: Chebyshev of degree ``r`` times a degree ``n-r`` factor.

    family_type 1: real standard Gaussian coefficients;
    family_type 2: complex coefficients with standard Gaussian components;
    family_type 3: integral consecutive coefficients, ``i+1`` for ``x**i``.
    """
    if not 1 <= r < n:
        raise ValueError("need 1 <= r < n")
    if family_type not in (1, 2, 3):
        raise ValueError("family_type must be 1, 2 or 3")
    rng = np.random.default_rng(seed)
    m = n - r
    if family_type == 1:
        f = rng.standard_normal(m + 1)
        while f[-1] == 0.0:
            f[-1] = rng.standard_normal()
    elif family_type == 2:
        f = rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1)
        while f[-1] == 0.0:
            f[-1] = rng.standard_normal() + 1j * rng.standard_normal()
    else:
        f = np.arange(1, m + 2, dtype=np.float64)
    product = np.convolve(chebyshev1(r).coeffs, f)
    return Polynomial(product)
