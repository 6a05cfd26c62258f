"""All-roots computation (Aberth-Ehrlich) and zero-location classification.

The hypothesis gates of the inequality catalog are statements about where a
polynomial's zeros sit relative to a disk ("all zeros in |z| <= r", "does not
vanish in |z| <= 1").  `find_roots` computes the full root multiset; `classify`
turns it into one of five statuses with an explicit boundary band so that
near-circle roots are reported as such instead of being silently binned.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .polycore import Poly, is_zero_const

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
_MAX_ITER = 200
_CORRECTION_TOL = 1e-13


@dataclass(frozen=True)
class RootReport:
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    min_modulus: float
    max_modulus: float
    converged: bool

    def to_json(self) -> dict:
        return {
            "roots": [[z.real, z.imag] for z in self.roots],
            "residuals": list(self.residuals),
            "min_modulus": self.min_modulus,
            "max_modulus": self.max_modulus,
            "converged": self.converged,
        }


class LocationStatus(enum.Enum):
    ALL_IN_CLOSED_DISK = "ALL_IN_CLOSED_DISK"
    NONE_IN_CLOSED_DISK = "NONE_IN_CLOSED_DISK"
    NONE_IN_OPEN_DISK_BOUNDARY_TOUCH = "NONE_IN_OPEN_DISK_BOUNDARY_TOUCH"
    MIXED = "MIXED"
    AMBIGUOUS = "AMBIGUOUS"


@dataclass(frozen=True)
class ZeroLocation:
    status: LocationStatus
    band: float


def _eval_many(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def find_roots(P: Poly) -> RootReport:
    """All n roots of P, with multiplicity, by simultaneous iteration.

    Roots at the origin (trailing zero coefficients) are deflated exactly
    first.  The rest start on a circle of radius (|a_0|/|a_m|)^(1/m) with
    golden-angle spacing and are iterated with the Aberth-Ehrlich correction
    until every update is below 1e-13 relative, then polished by one Newton
    pass.  `converged` is False if the 200-iteration cap is hit.

    Residuals are |P(z)| / (max|a_j| * max(1, |z|)^n) — a backward-error-style
    scaling that is fair to roots of any modulus.
    """
    if is_zero_const(P):
        raise ValueError("cannot root-find the zero constant")
    if P.n == 0:
        raise ValueError("degree-0 polynomial has no roots")

    coeffs = np.asarray(P.coeffs, dtype=np.complex128)
    n = P.n

    # exact deflation of roots at the origin
    k0 = 0
    while coeffs[k0] == 0:
        k0 += 1
    work = coeffs[k0:]
    m = len(work) - 1

    if m == 0:
        roots = np.zeros(n, dtype=np.complex128)
        converged = True
    else:
        dwork = work[1:] * np.arange(1, m + 1)
        absw = np.abs(work)
        r0 = (abs(work[0]) / abs(work[-1])) ** (1.0 / m)
        ang = 2.0 * np.pi * np.arange(m) / m + _GOLDEN_ANGLE * np.arange(m) + 0.5
        z = r0 * np.exp(1j * ang)

        converged = False
        for _ in range(_MAX_ITER):
            pv = _eval_many(work, z)
            dv = _eval_many(dwork, z)
            noise = np.abs(_eval_many(absw, np.abs(z)))
            # Newton ratio; a vanishing derivative gets a small deterministic kick
            bad = dv == 0
            if bad.any():
                dv = np.where(bad, 1e-300, dv)
            newt = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            denom = 1.0 - newt * s
            small = np.abs(denom) < 1e-30
            denom = np.where(small, 1.0, denom)  # fall back to plain Newton
            w = newt / denom
            # a root is settled when its correction is tiny OR its value sits
            # at the Horner rounding floor (|a_j| evaluated at |z| scales the
            # achievable |P(z)|; corrections can jitter above the relative
            # tolerance forever for large-modulus roots of wide-range coeffs).
            # Settled roots are frozen: once pv is noise, any further step is
            # a random kick that can walk a cluster member away from its root.
            settled = (np.abs(w) <= _CORRECTION_TOL * (1.0 + np.abs(z))) | (
                np.abs(pv) <= 16.0 * np.finfo(float).eps * noise
            )
            if settled.all():
                converged = True
                break
            z = np.where(settled, z, z - w)

        # Newton polish (helps the last digit); skipped wherever the value is
        # already at the evaluation noise floor, for the same freezing reason
        for _ in range(2):
            pv = _eval_many(work, z)
            dv = _eval_many(dwork, z)
            noise = np.abs(_eval_many(absw, np.abs(z)))
            step = np.where(dv != 0, pv / np.where(dv == 0, 1.0, dv), 0.0)
            ok = (np.abs(step) < 1e-6 * (1.0 + np.abs(z))) & (
                np.abs(pv) > 16.0 * np.finfo(float).eps * noise
            )
            z = z - np.where(ok, step, 0.0)

        # Vieta consistency: small residuals alone cannot detect a root set
        # that collapsed onto a subset of the true roots (every point near a
        # true root has a tiny residual).  The elementary-symmetric checks
        # catch a missing root outright: the sum and the log-product of the
        # computed roots must match -a_{m-1}/a_m and |a_0/a_m|.
        if converged:
            sum_true = -work[-2] / work[-1]
            sum_err = abs(z.sum() - sum_true) / (1.0 + float(np.abs(z).sum()))
            log_true = math.log(abs(work[0]) / abs(work[-1]))
            log_got = float(np.log(np.abs(z)).sum()) if np.all(z != 0) else -math.inf
            log_err = abs(log_got - log_true) / (1.0 + abs(log_true))
            if sum_err > 1e-6 or log_err > 1e-6:
                converged = False

        roots = np.concatenate([np.zeros(k0, dtype=np.complex128), z]) if k0 else z

    scale = float(np.max(np.abs(coeffs)))
    mods_all = np.abs(roots)
    big = mods_all > 1.0
    # |P(z)| / max(1,|z|)^n without overflow: for |z| > 1 this equals the
    # reversed-coefficient polynomial evaluated at 1/z
    inv = np.where(big, 1.0 / np.where(roots == 0, 1.0, roots), 0.0)
    resid_big = np.abs(_eval_many(coeffs[::-1], inv))
    resid_small = np.abs(_eval_many(coeffs, np.where(big, 0.0, roots)))
    resid = np.where(big, resid_big, resid_small) / scale
    mods = mods_all
    if converged and np.any(resid > 1e-10):
        converged = False
    order = np.lexsort((roots.imag, roots.real))
    return RootReport(
        roots=tuple(complex(v) for v in roots[order]),
        residuals=tuple(float(v) for v in resid[order]),
        min_modulus=float(mods.min()),
        max_modulus=float(mods.max()),
        converged=bool(converged),
    )


def classify(P: Poly, r: float, eps: float = 1e-9) -> ZeroLocation:
    """Locate P's zeros relative to the closed disk |z| <= r with band eps.

    Moduli within eps of r are "on the boundary" for classification purposes:
      - no roots (degree 0)                      -> NONE_IN_CLOSED_DISK
      - all < r - eps                            -> ALL_IN_CLOSED_DISK
      - all > r + eps                            -> NONE_IN_CLOSED_DISK
      - none inside, some in the band            -> NONE_IN_OPEN_DISK_BOUNDARY_TOUCH
      - some inside and some outside             -> MIXED
      - some inside, some in band, none outside  -> AMBIGUOUS (ALL_IN or MIXED
        depending on which way the banded roots actually fall)
    A non-converged root find is reported as AMBIGUOUS outright.
    """
    if r <= 0:
        raise ValueError("disk radius must be positive")
    if eps < 0:
        raise ValueError("band must be nonnegative")
    if P.n == 0:
        # a nonzero constant has no roots at all
        return ZeroLocation(LocationStatus.NONE_IN_CLOSED_DISK, eps)
    rep = find_roots(P)
    if not rep.converged:
        return ZeroLocation(LocationStatus.AMBIGUOUS, eps)
    mods = [abs(z) for z in rep.roots]
    inside = sum(1 for m in mods if m < r - eps)
    outside = sum(1 for m in mods if m > r + eps)
    band = len(mods) - inside - outside
    if inside and outside:
        status = LocationStatus.MIXED
    elif band == 0:
        status = (
            LocationStatus.ALL_IN_CLOSED_DISK if inside else LocationStatus.NONE_IN_CLOSED_DISK
        )
    elif inside == 0:
        status = LocationStatus.NONE_IN_OPEN_DISK_BOUNDARY_TOUCH
    else:
        status = LocationStatus.AMBIGUOUS
    return ZeroLocation(status, eps)
