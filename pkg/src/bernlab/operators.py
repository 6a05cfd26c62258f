"""Diagonal differential operators and conjugate-side constructions.

D_alpha P = zP' - alpha P acts coefficientwise: a_j -> (j - alpha) a_j.
The composed second-order operator D_gamma(D_alpha P) expands to
z^2 P'' + (1 - alpha - gamma) zP' + alpha gamma P and multiplies a_j by
(j - gamma)(j - alpha).  Everything here is exact coefficient arithmetic —
no polynomial multiplication, no cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polycore import ZERO_CONST, Poly, conj_reciprocal, is_zero_const
from .roots import LocationStatus, classify


@dataclass(frozen=True)
class OperatorParams:
    """alpha/gamma with their admissibility flags relative to degree n.

    Construction never rejects: Re(alpha) > n/2 is exactly the regime the
    alpha-plane exploration maps, so the flags are advisory.
    """

    alpha: complex
    n: int
    gamma: complex | None = None

    @property
    def re_alpha_ok(self) -> bool:
        return self.alpha.real <= self.n / 2

    @property
    def re_gamma_ok(self) -> bool | None:
        if self.gamma is None:
            return None
        return self.gamma.real <= self.n / 2


def _rebuild(coeffs: list[complex]) -> Poly:
    # recompute the asserted degree: the operator may kill top coefficients
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return ZERO_CONST
    return Poly(coeffs)


def d_alpha(P: Poly, alpha: complex) -> Poly:
    """zP' - alpha P, coefficientwise (j - alpha) a_j."""
    if is_zero_const(P):
        return ZERO_CONST
    alpha = complex(alpha)
    return _rebuild([(j - alpha) * c for j, c in enumerate(P.coeffs)])


def d2_compose(P: Poly, alpha: complex, gamma: complex) -> Poly:
    """z^2 P'' + (1 - alpha - gamma) zP' + alpha gamma P.

    Implemented literally as d_alpha(d_alpha(P, alpha), gamma) so the
    composition identity holds with exact coefficient equality; the (alpha,
    gamma) symmetry then holds to a couple of ulps (float products reassociate
    across the two application orders).
    """
    return d_alpha(d_alpha(P, alpha), gamma)


def conj_side(P: Poly, alpha: complex, gamma: complex | None = None) -> Poly:
    """The operator applied to Q = conj_reciprocal(P): zQ' - alpha Q, or the
    second-order composition when gamma is given."""
    q = conj_reciprocal(P)
    if gamma is None:
        return d_alpha(q, alpha)
    return d2_compose(q, alpha, gamma)


@dataclass(frozen=True)
class DominanceReport:
    gate_modulus_ok: bool  # |P| <= |F| held on the circle grid
    gate_roots_ok: bool  # F's roots all in the closed unit disk
    gate_messages: tuple[str, ...]
    checked: bool  # False when a gate failed and no comparison ran
    max_violation: float | None  # max (|op P| - |op F|) / scale; None when unchecked
    samples_circle: int
    samples_outside: int


def pointwise_dominance(
    P: Poly,
    F: Poly,
    alpha: complex,
    gamma: complex | None = None,
    samples: int = 256,
    seed: int = 0,
) -> DominanceReport:
    """Does |P| <= |F| on the circle force |D P| <= |D F| there and beyond?

    Gates first: the modulus comparison on the sample grid itself, and F
    root-free outside the closed unit disk.  Gate failure yields a
    hypothesis-not-met report (checked=False), never an exception.  The
    comparison runs on `samples` uniform circle points plus 64 seeded random
    points with |z| in (1, 3]; violations are normalized by the largest |D F|
    seen.
    """
    if samples < 8:
        raise ValueError("need at least 8 circle samples")
    msgs: list[str] = []

    th = 2.0 * np.pi * np.arange(samples) / samples
    zc = np.exp(1j * th)
    pv = _vals(P, zc)
    fv = _vals(F, zc)
    scale_f = float(fv.max()) if fv.size else 0.0
    mod_ok = bool(np.all(pv <= fv + 1e-12 * max(scale_f, 1.0)))
    if not mod_ok:
        worst = float((pv - fv).max())
        msgs.append(f"|P| exceeds |F| on the circle grid by {worst:.3e}")

    loc = classify(F, 1.0, 1e-9) if F.n >= 1 else None
    roots_ok = loc is None or loc.status in (
        LocationStatus.ALL_IN_CLOSED_DISK,
        LocationStatus.AMBIGUOUS,
    )
    if loc is not None and loc.status is LocationStatus.AMBIGUOUS:
        msgs.append("F has roots within the boundary band; treated as inside")
    if not roots_ok:
        msgs.append(f"F has roots outside the closed unit disk ({loc.status.value})")

    if not (mod_ok and roots_ok):
        return DominanceReport(mod_ok, roots_ok, tuple(msgs), False, None, samples, 64)

    dp = d_alpha(P, alpha) if gamma is None else d2_compose(P, alpha, gamma)
    df = d_alpha(F, alpha) if gamma is None else d2_compose(F, alpha, gamma)

    rng = np.random.default_rng(seed)
    r = 1.0 + 2.0 * rng.random(64)
    phi = 2.0 * np.pi * rng.random(64)
    z_out = r * np.exp(1j * phi)

    z_all = np.concatenate([zc, z_out])
    dpv = _vals(dp, z_all)
    dfv = _vals(df, z_all)
    scale = float(dfv.max()) if float(dfv.max()) > 0 else 1.0
    max_viol = float(((dpv - dfv) / scale).max())
    return DominanceReport(True, True, tuple(msgs), True, max_viol, samples, 64)


def _vals(P: Poly, z: np.ndarray) -> np.ndarray:
    coeffs = np.asarray(P.coeffs, dtype=np.complex128)
    acc = np.full_like(z, coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return np.abs(acc)
