"""Dense complex polynomials on the unit circle and their structural transforms.

A :class:`Poly` is an immutable coefficient vector ``a_0 .. a_n`` in ascending
degree order together with an asserted degree ``n``.  The degree is part of the
value: every inequality constant in this package (``|n - alpha|`` and friends)
depends on the *asserted* degree, so constructors demand ``a_n != 0`` rather
than silently trimming.

The transforms here are the ones the inequality catalog is built from:
differentiation, the conjugate-reciprocal ``Q(z) = z^n * conj(P(1/conj(z)))``,
self-inversive detection, and the Blaschke flip that moves roots from outside
the unit circle to inside without changing ``|P|`` on the circle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

#: Construction refuses degrees above this bound.  Double-precision coefficient
#: expansion and root-finding conditioning degrade beyond it; raise at your own
#: risk (module-level knob, not per-instance).
MAX_DEGREE = 64


class ZeroPolynomialError(ValueError):
    """The all-zero coefficient vector is not a representable Poly."""


class DegreeError(ValueError):
    """Degree out of range, or leading coefficient is zero."""


class InconsistentRootsError(ValueError):
    """Roots handed to blaschke_flip do not divide the polynomial."""


def _as_complex_tuple(coeffs: Iterable[complex]) -> tuple[complex, ...]:
    return tuple(complex(c) for c in coeffs)


@dataclass(frozen=True)
class Poly:
    """Polynomial ``sum_j coeffs[j] * z**j`` with asserted degree ``len-1``.

    Invariants enforced at construction: at least one coefficient, no all-zero
    vector, nonzero leading coefficient, degree within ``MAX_DEGREE``.  The one
    designated exception is :data:`ZERO_CONST`, the degree-0 zero value that
    ``derivative`` of a constant (and coefficient-annihilating operators)
    produce; it is built by a private backdoor and compares unequal to every
    valid Poly.
    """

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable[complex]):
        cs = _as_complex_tuple(coeffs)
        if not cs:
            raise ZeroPolynomialError("empty coefficient sequence")
        if all(c == 0 for c in cs):
            raise ZeroPolynomialError("the zero polynomial is not representable")
        if cs[-1] == 0:
            raise DegreeError(
                "leading coefficient is zero; trim trailing zeros or assert a "
                "smaller degree"
            )
        if len(cs) - 1 > MAX_DEGREE:
            raise DegreeError(f"degree {len(cs) - 1} exceeds cap {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", cs)

    @property
    def nominal_degree(self) -> int:
        return len(self.coeffs) - 1

    # alias used throughout: P.n reads like the math
    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        return eval_at(self, z)

    def __repr__(self) -> str:  # compact, debugging-oriented
        return f"Poly(n={self.n}, coeffs={list(self.coeffs)!r})"


def _make_zero_const() -> Poly:
    p = object.__new__(Poly)
    object.__setattr__(p, "coeffs", (0j,))
    return p


#: Degree-0 zero value: the output of ``derivative`` on a constant and of
#: operators that annihilate every coefficient.  Norms treat it as 0; it is
#: rejected wherever a genuinely nonzero polynomial is required (Mahler
#: measure, root finding).
ZERO_CONST = _make_zero_const()


def is_zero_const(P: Poly) -> bool:
    return all(c == 0 for c in P.coeffs)


@dataclass(frozen=True)
class RootMultiset:
    """A leading coefficient and a root multiset: ``lead * prod (z - r)``."""

    lead: complex
    roots: tuple[complex, ...] = field(default_factory=tuple)

    def __init__(self, lead: complex, roots: Iterable[complex] = ()):
        object.__setattr__(self, "lead", complex(lead))
        object.__setattr__(self, "roots", _as_complex_tuple(roots))

    def to_poly(self) -> Poly:
        return from_roots(self.lead, self.roots)


def eval_at(P: Poly, z: complex) -> complex:
    """Horner evaluation of P at a single point (backward stable)."""
    z = complex(z)
    acc = 0j
    for c in reversed(P.coeffs):
        acc = acc * z + c
    return acc


def derivative(P: Poly) -> Poly:
    """P' with asserted degree max(n-1, 0); constants map to ZERO_CONST."""
    if P.n == 0:
        return ZERO_CONST
    return Poly([j * c for j, c in enumerate(P.coeffs)][1:])


def conj_reciprocal(P: Poly) -> Poly:
    """Q(z) = z^n * conj(P(1/conj(z))): coefficient reversal + conjugation.

    ``|Q(z)| = |P(z)|`` on ``|z| = 1``.  The asserted degree of Q is the index
    of its highest nonzero coefficient (a_0 of P may vanish, so Q's degree can
    drop below n).
    """
    if is_zero_const(P):
        return ZERO_CONST
    rev = [c.conjugate() for c in reversed(P.coeffs)]
    while rev and rev[-1] == 0:
        rev.pop()
    return Poly(rev)


def is_self_inversive(P: Poly, tol: float = 1e-10) -> tuple[bool, complex | None]:
    """Test ``a_j = u * conj(a_{n-j})`` for some unimodular u.

    The witness u is computed from the largest-modulus coefficient pair and
    then verified against every pair with absolute tolerance ``tol`` scaled by
    the max coefficient modulus.  Returns ``(flag, u_or_None)``.
    """
    if is_zero_const(P):
        return False, None
    cs = P.coeffs
    n = P.n
    scale = max(abs(c) for c in cs)
    j_star = max(range(n + 1), key=lambda j: abs(cs[j]))
    partner = cs[n - j_star]
    if abs(partner) <= tol * scale:
        # pairing the dominant coefficient with a (near-)zero one cannot work
        return False, None
    u = cs[j_star] / partner.conjugate()
    mod = abs(u)
    if abs(mod - 1.0) > tol:
        return False, None
    u /= mod
    for j in range(n + 1):
        if abs(cs[j] - u * cs[n - j].conjugate()) > tol * scale:
            return False, None
    return True, u


def from_roots(lead: complex, roots: Iterable[complex]) -> Poly:
    """Expand ``lead * prod (z - r)`` by repeated convolution."""
    lead = complex(lead)
    if lead == 0:
        raise DegreeError("leading coefficient must be nonzero")
    cs = [lead]
    for r in roots:
        r = complex(r)
        # multiply by (z - r): shift up one degree, subtract r * old
        cs = [0j] + cs
        for j in range(len(cs) - 1):
            cs[j] -= r * cs[j + 1]
    if len(cs) - 1 > MAX_DEGREE:
        raise DegreeError(f"degree {len(cs) - 1} exceeds cap {MAX_DEGREE}")
    return Poly(cs)


def _deflate(coeffs: Sequence[complex], r: complex) -> tuple[list[complex], complex]:
    """Synthetic division by (z - r): returns (quotient coeffs, remainder)."""
    quot: list[complex] = [0j] * (len(coeffs) - 1)
    acc = coeffs[-1]
    for j in range(len(coeffs) - 2, -1, -1):
        quot[j] = acc
        acc = coeffs[j] + r * acc
    return quot, acc


def blaschke_flip(P: Poly, outside_roots: Iterable[complex], tol: float = 1e-8) -> Poly:
    """Replace each root z_j outside the unit circle by 1/conj(z_j).

    Divides each factor ``(z - z_j)`` out by synthetic division and multiplies
    ``(1 - conj(z_j) z)`` back in; the result T has all roots in ``|z| <= 1``
    and ``|T| = |P|`` on the circle.  ``outside_roots`` must be exactly the
    multiset of P's roots with modulus > 1 (the caller gets them from the roots
    module); a synthetic-division remainder above ``tol`` (relative to the max
    coefficient modulus) raises :class:`InconsistentRootsError`.
    """
    roots = _as_complex_tuple(outside_roots)
    if not roots:
        return P
    scale = max(abs(c) for c in P.coeffs)
    cs: list[complex] = list(P.coeffs)
    for r in roots:
        if abs(r) <= 1:
            raise InconsistentRootsError(f"root {r!r} is not outside the unit circle")
        if len(cs) < 2:
            raise InconsistentRootsError("more flip roots than polynomial degree")
        cs, rem = _deflate(cs, r)
        if abs(rem) > tol * scale:
            raise InconsistentRootsError(
                f"remainder {abs(rem):.3e} after dividing by (z - {r!r}); "
                "supplied roots do not match the polynomial"
            )
    for r in roots:
        # multiply by (1 - conj(r) z)
        rc = r.conjugate()
        cs = [cs[0]] + [cs[j] - rc * cs[j - 1] for j in range(1, len(cs))] + [-rc * cs[-1]]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs or all(c == 0 for c in cs):
        raise InconsistentRootsError("flip produced the zero polynomial")
    return Poly(cs)


def rotate(P: Poly, phi: float) -> Poly:
    """The rotated polynomial ``z -> P(e^{i phi} z)`` (same degree, same norms)."""
    if is_zero_const(P):
        return ZERO_CONST
    return Poly([c * cmath.exp(1j * phi * j) for j, c in enumerate(P.coeffs)])


def scale(P: Poly, c: complex) -> Poly:
    """c * P for nonzero c."""
    c = complex(c)
    if c == 0:
        raise ZeroPolynomialError("scaling by zero is not representable")
    if is_zero_const(P):
        return ZERO_CONST
    return Poly([c * a for a in P.coeffs])


# --- canonical JSON form -----------------------------------------------------
# {"n": int, "coeffs": [[re, im], ...]} with len(coeffs) == n + 1, ascending.

class PolyJSONError(ValueError):
    """Malformed canonical Poly JSON; the message names the offending field."""


def poly_to_json(P: Poly) -> dict:
    return {"n": P.n, "coeffs": [[c.real, c.imag] for c in P.coeffs]}


def poly_from_json(obj: object) -> Poly:
    if not isinstance(obj, dict):
        raise PolyJSONError("top level: expected an object with keys 'n' and 'coeffs'")
    if "n" not in obj:
        raise PolyJSONError("n: missing")
    if "coeffs" not in obj:
        raise PolyJSONError("coeffs: missing")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise PolyJSONError("n: expected a nonnegative integer")
    raw = obj["coeffs"]
    if not isinstance(raw, list):
        raise PolyJSONError("coeffs: expected a list of [re, im] pairs")
    if len(raw) != n + 1:
        raise PolyJSONError(f"coeffs: expected length n + 1 = {n + 1}, got {len(raw)}")
    out = []
    for j, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise PolyJSONError(f"coeffs[{j}]: expected a [re, im] pair of numbers")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise PolyJSONError(f"coeffs[{j}]: non-finite component")
        out.append(complex(re, im))
    if all(c == 0 for c in out):
        raise PolyJSONError("coeffs: all-zero polynomial is not representable")
    if out[-1] == 0:
        raise PolyJSONError(f"coeffs[{n}]: leading coefficient must be nonzero")
    return Poly(out)
