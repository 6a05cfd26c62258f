"""The full circle-norm scale: Mahler measure (p=0), L_p for 0<p<inf, sup norm.

Definitions, for P on the unit circle:

    ||P||_p   = ( (1/2pi) \\int_0^{2pi} |P(e^{i t})|^p dt )^{1/p}
    ||P||_inf = max_{|z|=1} |P(z)|
    ||P||_0   = exp( (1/2pi) \\int log|P(e^{i t})| dt )
              = |a_n| * prod_j max(1, |z_j|)      (Jensen's formula)

Every computed norm carries an achieved-tolerance estimate so that inequality
verdicts near ratio 1 can refuse to decide below numerical resolution.

Quadrature notes.  The L_p integrand is periodic, so the uniform trapezoid
rule (equivalently: averaging over the N-th roots of unity) is spectrally
accurate when |P| has no zeros on the circle, and is exact for p = 2 as soon
as N exceeds 2n.  With a circle zero the integrand has an algebraic kink and
the trapezoid error decays like N^(-(1+p)) — *with a coefficient that depends
on where the zero falls between grid nodes*.  Richardson extrapolation of the
doubling sequence therefore only works when the kink sits exactly on a node,
where the coefficient is the same at every level.  `lp_norm` exploits this:
it locates the deepest minimum of |P| on a coarse grid, shifts the whole grid
so that minimum is a node, and keeps the node count a multiple of n so that a
rotationally-spaced family of circle zeros (the az^n + b case — the one whose
norms must come out to 1e-10) is aligned all at once.  Off-node zeros at
unrelated angles fall back to the raw trapezoid value at the node cap, with
the error estimate reported honestly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .polycore import Poly, is_zero_const
from .roots import find_roots

_NODE_CAP = 1 << 20
_DEFAULT_REL_TOL = 1e-11


class RootFindingError(RuntimeError):
    """Root-based Mahler path failed; mahler_quadrature is the fallback."""


class NormKind(enum.Enum):
    MAHLER = "MAHLER"
    FINITE = "FINITE"
    SUP = "SUP"


@dataclass(frozen=True)
class NormExponent:
    """Tagged exponent: Mahler (p=0), finite 0<p<inf, or sup (p=inf)."""

    kind: NormKind
    p: float | None = None

    def __post_init__(self):
        if self.kind is NormKind.FINITE:
            if self.p is None or not math.isfinite(self.p) or self.p <= 0:
                raise ValueError("FINITE exponent requires finite p > 0")
        elif self.p is not None:
            raise ValueError(f"{self.kind.value} exponent carries no p value")

    @classmethod
    def mahler(cls) -> "NormExponent":
        return cls(NormKind.MAHLER)

    @classmethod
    def sup(cls) -> "NormExponent":
        return cls(NormKind.SUP)

    @classmethod
    def finite(cls, p: float) -> "NormExponent":
        return cls(NormKind.FINITE, float(p))

    @classmethod
    def parse(cls, text: str) -> "NormExponent":
        """CLI syntax: '0' is Mahler, 'inf' is sup, anything else a float p."""
        t = text.strip().lower()
        if t in ("inf", "infinity", "sup"):
            return cls.sup()
        try:
            p = float(t)
        except ValueError:
            raise ValueError(f"cannot parse norm exponent {text!r}") from None
        if p == 0:
            return cls.mahler()
        if p < 0 or not math.isfinite(p):
            raise ValueError(f"norm exponent must be 0, positive, or 'inf'; got {text!r}")
        return cls.finite(p)

    def label(self) -> str:
        if self.kind is NormKind.MAHLER:
            return "0"
        if self.kind is NormKind.SUP:
            return "inf"
        return repr(self.p)


@dataclass(frozen=True)
class NormInfo:
    value: float
    achieved_tol: float  # estimated relative error of value
    warnings: tuple[str, ...] = ()


def _pow_inplace(x: np.ndarray, p: float) -> np.ndarray:
    """x ** p in place; sqrt chains for the dyadic small p the norm scale uses."""
    if p == 1.0:
        return x
    if p in (0.5, 0.25, 0.125):
        q = p
        while q < 1.0:
            np.sqrt(x, out=x)
            q *= 2.0
        return x
    return np.power(x, p, out=x)


def _abs_at(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """|P(z)| by Horner, elementwise; in-place accumulator (the grids get big)."""
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc *= z
        acc += c
    return np.abs(acc)


def _unit_grid(count: int, offset: float) -> np.ndarray:
    th = offset + (2.0 * np.pi / count) * np.arange(count)
    z = np.empty(count, dtype=np.complex128)
    z.real = np.cos(th)
    z.imag = np.sin(th)
    return z


def _abs_on_grid(coeffs: np.ndarray, count: int, offset: float) -> np.ndarray:
    """|P| at count uniform angles (offset + 2 pi k / count)."""
    return _abs_at(coeffs, _unit_grid(count, offset))


def _golden_min(coeffs: np.ndarray, lo: float, hi: float) -> float:
    """Angle minimizing |P(e^{i t})| on [lo, hi] (golden section, tol 1e-13)."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc = abs(_horner1(coeffs, c))
    fd = abs(_horner1(coeffs, d))
    while b - a > 1e-13:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = abs(_horner1(coeffs, c))
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = abs(_horner1(coeffs, d))
    return 0.5 * (a + b)


def _horner1(coeffs: np.ndarray, theta: float) -> complex:
    z = complex(math.cos(theta), math.sin(theta))
    acc = 0j
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def lp_norm(P: Poly, p: float, rel_tol: float = _DEFAULT_REL_TOL) -> float:
    return lp_norm_info(P, p, rel_tol).value


def lp_norm_info(P: Poly, p: float, rel_tol: float = _DEFAULT_REL_TOL) -> NormInfo:
    """Trapezoid L_p norm with node doubling and aligned Richardson acceleration.

    Node count starts at max(256, 16(n+1)) — rounded up to a multiple of n so
    grid alignment survives doubling — and doubles until successive norm values
    agree within rel_tol, with a hard cap of 2^20 nodes.  Hitting the cap is a
    warning, not an error: it happens only with zeros on or near the circle
    combined with small p, and the returned achieved tolerance says how far the
    doubling got.
    """
    if not (0 < p < math.inf):
        raise ValueError("lp_norm requires 0 < p < inf")
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    if is_zero_const(P):
        return NormInfo(0.0, 0.0)
    if P.n == 0:
        return NormInfo(abs(P.coeffs[0]), 0.0)

    coeffs = np.asarray(P.coeffs, dtype=np.complex128)
    n = P.n
    base = max(256, 16 * (n + 1))
    count = n * math.ceil(base / n)

    nodes = _unit_grid(count, 0.0)
    samples = _abs_at(coeffs, nodes)
    m0 = float(samples.max())
    # even integer p: |P|^p is a trigonometric polynomial, the rule is exact
    # once the node count clears p*n and no kink alignment can matter
    p_is_even = p == round(p) and round(p) % 2 == 0
    if not p_is_even and float(samples.min()) < 0.25 * m0:
        # suspected circle zero: shift the grid so the deepest minimum of |P|
        # is a node — this pins the trapezoid error coefficient across levels
        k = int(np.argmin(samples))
        step = 2.0 * np.pi / count
        offset = _golden_min(coeffs, k * step - step, k * step + step)
        nodes = _unit_grid(count, offset)
        samples = _abs_at(coeffs, nodes)
        m0 = float(samples.max())

    # normalized powered means; fixed scale m0 keeps all levels comparable
    samples /= m0
    total = float(_pow_inplace(samples, p).sum())
    means = [total / count]
    values = [m0 * means[0] ** (1.0 / p)]
    r1: list[float] = []
    r2: list[float] = []
    acc_values: list[float] = []

    w1 = 2.0 ** (1.0 + p) - 1.0
    w2 = 2.0 ** (2.0 + p) - 1.0

    while count * 2 <= _NODE_CAP:
        count *= 2
        # the nodes a doubling adds are the previous grid rotated half a step;
        # one unit-modulus multiply per level drifts |z| by ~1 ulp per level,
        # far below the quadrature error at any reachable node count
        w = complex(math.cos(2.0 * math.pi / count), math.sin(2.0 * math.pi / count))
        fresh = nodes * w
        odd = _abs_at(coeffs, fresh)
        nodes = np.concatenate([nodes, fresh])
        odd /= m0
        total += float(_pow_inplace(odd, p).sum())
        means.append(total / count)
        values.append(m0 * means[-1] ** (1.0 / p))

        raw_diff = abs(values[-1] - values[-2])
        if raw_diff <= rel_tol * values[-1]:
            return NormInfo(values[-1], raw_diff / values[-1])

        r1.append(means[-1] + (means[-1] - means[-2]) / w1)
        if len(r1) >= 2:
            r2.append(r1[-1] + (r1[-1] - r1[-2]) / w2)
            if r2[-1] > 0 and math.isfinite(r2[-1]):
                acc_values.append(m0 * r2[-1] ** (1.0 / p))
                if (
                    len(acc_values) >= 2
                    and abs(acc_values[-1] - acc_values[-2]) <= 0.3 * rel_tol * acc_values[-1]
                    and abs(acc_values[-1] - values[-1]) <= 0.05 * values[-1]
                ):
                    diff = abs(acc_values[-1] - acc_values[-2])
                    return NormInfo(acc_values[-1], max(diff / acc_values[-1], 1e-16))

    raw_diff = abs(values[-1] - values[-2]) / values[-1]
    best, err = values[-1], raw_diff
    if len(acc_values) >= 2:
        acc_diff = abs(acc_values[-1] - acc_values[-2]) / acc_values[-1]
        if acc_diff < raw_diff and abs(acc_values[-1] - values[-1]) <= 0.05 * values[-1]:
            best, err = acc_values[-1], acc_diff
    return NormInfo(
        best,
        err,
        (f"node cap {_NODE_CAP} reached; estimated relative error {err:.2e}",),
    )


def sup_norm(P: Poly) -> float:
    return sup_norm_info(P).value


def sup_norm_info(P: Poly) -> NormInfo:
    """Global max of |P| on the circle: dense sampling + golden refinement.

    64(n+1) samples bracket every local maximum of the degree-n trigonometric
    modulus; each bracket is refined by golden-section search to angle
    tolerance 1e-12 and the best value wins.
    """
    if is_zero_const(P):
        return NormInfo(0.0, 0.0)
    if P.n == 0:
        return NormInfo(abs(P.coeffs[0]), 0.0)
    coeffs = np.asarray(P.coeffs, dtype=np.complex128)
    count = 64 * (P.n + 1)
    s = _abs_on_grid(coeffs, count, 0.0)
    left = np.roll(s, 1)
    right = np.roll(s, -1)
    peaks = np.flatnonzero((s >= left) & (s >= right))
    step = 2.0 * np.pi / count

    # vectorized golden-section maximization over all peak brackets at once
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a = (peaks - 1.0) * step
    b = (peaks + 1.0) * step

    def f(th: np.ndarray) -> np.ndarray:
        z = np.exp(1j * th)
        acc = np.full_like(z, coeffs[-1])
        for c in coeffs[-2::-1]:
            acc = acc * z + c
        return np.abs(acc)

    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(70):  # 0.618^70 * bracket << 1e-12
        take_c = fc > fd  # maximize: keep the half containing the larger probe
        b = np.where(take_c, d, b)
        a = np.where(take_c, a, c)
        c = b - inv_phi * (b - a)
        d = a + inv_phi * (b - a)
        fc, fd = f(c), f(d)
        if float((b - a).max()) < 1e-12:
            break
    best = max(float(s.max()), float(np.maximum(fc, fd).max()))
    return NormInfo(best, 1e-14)


def mahler_measure(P: Poly) -> float:
    return mahler_measure_info(P).value


def mahler_measure_info(P: Poly) -> NormInfo:
    """Mahler measure via Jensen's formula: |a_n| * prod max(1, |root|).

    Exact for polynomials — this is the primary path; the defining log
    integral is kept as the independent cross-check (`mahler_quadrature`).
    """
    if is_zero_const(P):
        raise ValueError("Mahler measure of the zero constant is undefined")
    if P.n == 0:
        return NormInfo(abs(P.coeffs[0]), 0.0)
    rep = find_roots(P)
    if not rep.converged:
        raise RootFindingError(
            "root finding did not converge; use mahler_quadrature as a fallback"
        )
    log_sum = sum(math.log(abs(z)) for z in rep.roots if abs(z) > 1.0)
    value = abs(P.coeffs[-1]) * math.exp(log_sum)
    achieved = max(1e-14, 10.0 * P.n * max(rep.residuals))
    return NormInfo(value, achieved)


def mahler_quadrature(P: Poly, nodes: int) -> float:
    return mahler_quadrature_info(P, nodes).value


def mahler_quadrature_info(P: Poly, nodes: int) -> NormInfo:
    """exp of the trapezoid mean of log|P| — the defining integral, direct.

    Converges slowly when roots sit near the circle (integrable log
    singularity); a sample landing exactly on a zero is skipped and the result
    flagged approximate.
    """
    if is_zero_const(P):
        raise ValueError("Mahler measure of the zero constant is undefined")
    if nodes < 16:
        raise ValueError("need at least 16 quadrature nodes")
    if P.n == 0:
        return NormInfo(abs(P.coeffs[0]), 0.0)
    coeffs = np.asarray(P.coeffs, dtype=np.complex128)

    def grid_mean(count: int) -> tuple[float, int]:
        s = _abs_on_grid(coeffs, count, 0.0)
        nz = s > 0.0
        skipped = int((~nz).sum())
        if skipped:
            s = s[nz]
        return float(np.exp(np.log(s).mean())), skipped

    value, skipped = grid_mean(nodes)
    half, _ = grid_mean(nodes // 2)
    # a-posteriori error estimate by grid halving.  Roots off the circle give
    # spectral convergence (the difference is at rounding level); a root on or
    # near the circle degrades this to O(log N / N), and the halving
    # difference tracks that honestly.
    achieved = max(1e-10, 3.0 * abs(value - half) / value)
    warnings: list[str] = []
    if skipped:
        warnings.append(
            f"{skipped} sample(s) hit |P| = 0 exactly and were skipped"
        )
    if achieved > 1e-8:
        warnings.append(
            "slow convergence (a zero lies on or near the circle); "
            f"estimated relative error {achieved:.1e}"
        )
    return NormInfo(value, achieved, tuple(warnings))


@lru_cache(maxsize=64)
def _fixed_reference_norm(which: str, p_key: float, rel_tol: float) -> NormInfo:
    # cached norms of the fixed reference polynomials appearing in RHS factors
    if which == "one_plus_z":
        poly = Poly([1.0, 1.0])
    else:  # pragma: no cover - single caller controls the key
        raise KeyError(which)
    return lp_norm_info(poly, p_key, rel_tol)


def one_plus_z_norm_info(e: "NormExponent", rel_tol: float = _DEFAULT_REL_TOL) -> NormInfo:
    """||1 + z||_e, cached: it is the denominator of every zero-free bound."""
    if e.kind is NormKind.MAHLER:
        return NormInfo(1.0, 0.0)  # Jensen: the single root has modulus 1
    if e.kind is NormKind.SUP:
        return NormInfo(2.0, 0.0)
    return _fixed_reference_norm("one_plus_z", e.p, rel_tol)


def norm(P: Poly, e: NormExponent, rel_tol: float = _DEFAULT_REL_TOL) -> float:
    return norm_info(P, e, rel_tol).value


def norm_info(P: Poly, e: NormExponent, rel_tol: float = _DEFAULT_REL_TOL) -> NormInfo:
    """Dispatcher over the three norm kinds.

    The zero constant gets norm 0 of every kind here (the Mahler limit of the
    zero function), even though `mahler_measure` itself refuses it.
    """
    if e.kind is NormKind.MAHLER:
        if is_zero_const(P):
            return NormInfo(0.0, 0.0)
        return mahler_measure_info(P)
    if e.kind is NormKind.SUP:
        return sup_norm_info(P)
    return lp_norm_info(P, e.p, rel_tol)
