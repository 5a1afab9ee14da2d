"""Root-radii estimation: Newton polygon plus Graeffe refinement.

The Newton-polygon estimator reads root-radius approximations off the slopes
of the upper convex hull of the points ``(i, log2|p_i|)``; it is accurate
within a factor ``2n``.  Squaring the roots ``k`` times before applying it and
taking ``2**k``-th roots of the results sharpens the factor to
``(2n)**(1/2**k)``.

The squaring iterations run on a per-coefficient (mantissa, exponent)
representation of the polynomial.  After many squarings the coefficient
magnitudes of the iterated polynomial span far more than the ~2000 bits a
float64 can express, while the hull only ever needs ``log2`` of each
coefficient; splitting the exponent out keeps every quantity representable
with no loss relevant to the estimates (coefficient rounding errors shrink by
``2**k`` when the roots are extracted).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _dd, _kernels
from .poly import Polynomial, PrecisionLossError

__all__ = [
    "RadiiEstimate",
    "newton_polygon_radii",
    "choose_iteration_count",
    "refined_radii",
    "distances_from_point",
]


@dataclass(frozen=True)
class RadiiEstimate:
    """Non-increasing root-radius approximations with their guarantee factor.

    Each true radius ``r_j`` satisfies ``1/rel_factor <= radii[j]/r_j <=
    rel_factor`` (zero radii are exact).
    """

    radii: np.ndarray
    rel_factor: float
    squarings_used: int

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=np.float64)
        r = r.copy()
        r.setflags(write=False)
        object.__setattr__(self, "radii", r)


def _to_mantexp(coeffs):
    """Split ``c_i = m_i * 2**e_i`` with ``|m_i| in [1, 2)`` (``m_i = 0`` for zeros)."""
    c = np.asarray(coeffs, dtype=np.complex128)
    m = np.zeros(len(c), dtype=np.complex128)
    e = np.zeros(len(c), dtype=np.int64)
    for i, ci in enumerate(c):
        a = abs(ci)
        if a != 0.0:
            _, ex = math.frexp(a)
            m[i] = ci * math.ldexp(1.0, -(ex - 1))
            e[i] = ex - 1
    return m, e


def _hull_radii(m, e, k):
    """Radii estimates from the upper hull of ``(i, log2|c_i|)`` after ``k`` squarings.

    Ordinate differences are formed as ``float(int64 exponent difference) +
    (mantissa log difference)`` so that a uniform exponent shift (a power-of-
    two rescaling of the polynomial) changes nothing bitwise, no matter how
    large the exponents have grown.  Zero coefficients are simply absent from
    the hull.  Requires nonzero constant and leading coefficients.
    """
    xs = []
    es = []
    gs = []
    for i in range(len(m)):
        if m[i] != 0:
            xs.append(i)
            es.append(int(e[i]))
            gs.append(math.log2(abs(m[i])))

    def ydiff(a, b):
        return float(es[b] - es[a]) + (gs[b] - gs[a])

    hull = []  # indices into xs/es/gs; upper hull, slopes non-increasing
    for idx in range(len(xs)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if ydiff(a, b) * (xs[idx] - xs[b]) <= ydiff(b, idx) * (xs[b] - xs[a]):
                hull.pop()
            else:
                break
        hull.append(idx)
    scale = 2.0**k
    out = []
    for t in range(len(hull) - 1):
        a, b = hull[t], hull[t + 1]
        slope = ydiff(a, b) / (xs[b] - xs[a])
        r = 2.0 ** (-slope / scale)
        out.extend([r] * (xs[b] - xs[a]))
    out.reverse()
    return np.array(out, dtype=np.float64)


def _strip_zero_roots(p: Polynomial):
    """Count roots at the origin and return the deflated coefficient vector."""
    c = p.coeffs
    m = 0
    while m < len(c) - 1 and c[m] == 0:
        m += 1
    return c[m:], m


def newton_polygon_radii(p: Polynomial) -> RadiiEstimate:
    """Estimate all root radii within the factor ``2n`` from the coefficient hull.

    Roots at the origin (vanishing low-order coefficients) are reported as
    exact zero radii.
    """
    if p.coeffs[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    n = p.degree
    if n == 0:
        return RadiiEstimate(np.empty(0), 1.0, 0)
    c, nzero = _strip_zero_roots(p)
    if len(c) == 1:
        return RadiiEstimate(np.zeros(n), float(2 * n), 0)
    m, e = _to_mantexp(c)
    radii = _hull_radii(m, e, 0)
    if nzero:
        radii = np.concatenate([radii, np.zeros(nzero)])
    return RadiiEstimate(radii, float(2 * n), 0)


def choose_iteration_count(n: int, target_rel_error: float) -> int:
    """Smallest ``k`` with ``(2n)**(1/2**k) <= 1 + target_rel_error``."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    if not target_rel_error > 0:
        raise ValueError("target relative error must be positive")
    if 2 * n <= 1 + target_rel_error:
        return 0
    k = max(0, math.ceil(math.log2(math.log(2 * n) / math.log1p(target_rel_error))))
    while k > 0 and (2 * n) ** (2.0 ** -(k - 1)) <= 1 + target_rel_error:
        k -= 1
    while (2 * n) ** (2.0**-k) > 1 + target_rel_error:
        k += 1
    return k


def _squarings(m, e, k):
    """Run up to ``k`` Graeffe steps, stopping early on numeric degradation."""
    done = 0
    for _ in range(k):
        m2, e2 = _kernels.graeffe_step_me(m, e)
        bad = (
            not np.isfinite(m2.real).all()
            or not np.isfinite(m2.imag).all()
            or m2[-1] == 0
            or m2[0] == 0
            or np.abs(e2).max() > 2**60
        )
        if bad:
            break
        m, e = m2, e2
        done += 1
    return m, e, done


def refined_radii(p: Polynomial, target_rel_error: float) -> RadiiEstimate:
    """Root radii within ``1 + target_rel_error`` via Graeffe squaring plus the hull.

    If precision degrades before the planned squaring count, the estimate from
    the last healthy iteration is returned with its honestly larger factor.
    """
    if p.coeffs[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    n = p.degree
    if n == 0:
        return RadiiEstimate(np.empty(0), 1.0, 0)
    c, nzero = _strip_zero_roots(p)
    if len(c) == 1:
        # pure power of x: every radius is exactly zero, nothing to square
        return RadiiEstimate(np.zeros(n), 1.0, 0)
    k = choose_iteration_count(n, target_rel_error)
    m, e = _to_mantexp(c)
    m, e, done = _squarings(m, e, k)
    radii = _hull_radii(m, e, done)
    if nzero:
        radii = np.concatenate([radii, np.zeros(nzero)])
    return RadiiEstimate(radii, float((2 * n) ** (2.0**-done)), done)


def distances_from_point(p: Polynomial, z, target_rel_error: float) -> RadiiEstimate:
    """Distances from ``z`` to all roots of ``p``, non-increasing.

    Mathematically these are the root radii of ``p(x + z)``.  The shift and
    the squaring steps run with double-double significands: for a far shift
    center the distances cluster within a relative band of about ``1/|z|``,
    and a plain float64 coefficient vector cannot hold them (the coefficient
    basis conditions the roots like ``(2|z|)**n / prod(gaps)``).  A vanishing
    constant term of the shifted polynomial reports the corresponding
    distances as exact zeros.
    """
    if p.coeffs[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    n = p.degree
    if n == 0:
        return RadiiEstimate(np.empty(0), 1.0, 0)
    z = complex(z)
    c = np.asarray(p.coeffs, dtype=np.complex128)
    rh, rl, ih, il = _dd.taylor_shift_dd(
        np.ascontiguousarray(c.real), np.ascontiguousarray(c.imag), z.real, z.imag
    )
    if not (
        np.isfinite(rh).all()
        and np.isfinite(rl).all()
        and np.isfinite(ih).all()
        and np.isfinite(il).all()
    ):
        raise PrecisionLossError("taylor shift overflowed double-double range")
    # strip exact roots at the shift center
    nzero = 0
    while nzero < n and rh[nzero] == 0.0 and rl[nzero] == 0.0 and ih[nzero] == 0.0 and il[nzero] == 0.0:
        nzero += 1
    rh, rl, ih, il = rh[nzero:], rl[nzero:], ih[nzero:], il[nzero:]
    if len(rh) == 1:
        return RadiiEstimate(np.zeros(n), 1.0, 0)
    rh, rl, ih, il, e = _dd.mantexp_dd(rh, rl, ih, il)
    k = choose_iteration_count(n, target_rel_error)
    done = 0
    for _ in range(k):
        # the kernel zeroes coefficients whose cancellation exceeds the
        # double-double capacity; losing an anchor (constant or leading
        # coefficient) means the hull frame itself is gone, so stop there
        nrh, nrl, nih, nil, ne, _worst_cancel, anchor_lost = _dd.graeffe_step_me_dd(
            rh, rl, ih, il, e
        )
        if anchor_lost or not np.isfinite(nrh).all() or np.abs(ne).max() > 2**60:
            break
        rh, rl, ih, il, e = nrh, nrl, nih, nil, ne
        done += 1
    m = rh + 1j * ih
    radii = _hull_radii(m, e, done)
    if nzero:
        radii = np.concatenate([radii, np.zeros(nzero)])
    return RadiiEstimate(radii, float((2 * n) ** (2.0**-done)), done)
