"""The inequality catalog: evaluate one instance, gate its hypotheses, verdict.

Two right-hand-side shapes cover everything here:

  constant form    ||op P||_p <= C(n, alpha, gamma) * ||P||_p
  zero-free form   ||op P||_p <= ||L(z)||_p * ||P||_p / ||1 + z||_p

where op is the diagonal operator zP' - alpha P or its second-order
composition, C is |n - alpha| or |n(n - alpha - gamma) + alpha gamma|, and L
is the matching linear polynomial ((n - alpha)z + alpha, or
n(n - alpha - gamma)z + alpha gamma).  The zero-free form requires P to not
vanish in the open unit disk (or to be self-inversive, for the THM3 ids).

Verdicts are deliberately conservative: VIOLATED requires the ratio to clear
1 + 1e-8 *and* the combined achieved quadrature tolerance to be at least ten
times smaller than the excess.  Anything closer is INCONCLUSIVE — the
sharpness families sit exactly at ratio 1, and a false VIOLATED from
quadrature noise would poison every fuzz run.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .norms import NormExponent, NormInfo, NormKind, norm_info, one_plus_z_norm_info
from .operators import d2_compose, d_alpha
from .polycore import Poly, derivative, is_self_inversive
from .roots import LocationStatus, classify

_VIOLATION_THRESHOLD = 1e-8


class InequalityId(enum.Enum):
    THM1_FIRST = "THM1_FIRST"
    THM1_SECOND = "THM1_SECOND"
    THM2_FIRST = "THM2_FIRST"
    THM2_SECOND = "THM2_SECOND"
    THM3_FIRST = "THM3_FIRST"
    THM3_SECOND = "THM3_SECOND"
    COR1_FIRST = "COR1_FIRST"
    COR1_SECOND = "COR1_SECOND"
    COR2_FIRST = "COR2_FIRST"
    COR2_SECOND = "COR2_SECOND"
    BERNSTEIN = "BERNSTEIN"
    ZYGMUND = "ZYGMUND"
    JAIN_SUP = "JAIN_SUP"
    JAIN_SUP_NONVANISHING = "JAIN_SUP_NONVANISHING"
    DEBRUIJN = "DEBRUIJN"


class Verdict(enum.Enum):
    HOLDS = "HOLDS"
    VIOLATED = "VIOLATED"
    INCONCLUSIVE = "INCONCLUSIVE"


class GateStatus(enum.Enum):
    PASS = "pass"
    WARN = "warn"
    FAIL = "fail"


@dataclass(frozen=True)
class Gate:
    name: str
    status: GateStatus
    message: str = ""

    def to_json(self) -> dict:
        return {"gate": self.name, "status": self.status.value, "message": self.message}


class DegenerateRHSError(ValueError):
    """The right-hand side bound is identically zero while the left is not.

    Happens at parameter choices that zero the bound's constant (for example
    alpha = gamma = n in the second-order form, where n(n - 2n) + n^2 = 0);
    the instance asserts nothing and is rejected rather than scored.
    """


@dataclass(frozen=True)
class CheckReport:
    inequality_id: InequalityId
    p: NormExponent
    alpha: complex | None
    gamma: complex | None
    lhs: float
    rhs: float
    ratio: float
    hypothesis: tuple[Gate, ...]
    verdict: Verdict
    numeric_margin: float
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "inequality_id": self.inequality_id.value,
            "p": self.p.label(),
            "alpha": None if self.alpha is None else [self.alpha.real, self.alpha.imag],
            "gamma": None if self.gamma is None else [self.gamma.real, self.gamma.imag],
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "hypothesis": [g.to_json() for g in self.hypothesis],
            "verdict": self.verdict.value,
            "numeric_margin": self.numeric_margin,
            "notes": list(self.notes),
        }


def _re_gate(name: str, value: complex, n: int) -> Gate:
    if value.real <= n / 2:
        return Gate(name, GateStatus.PASS)
    return Gate(
        name,
        GateStatus.WARN,
        f"Re({name.split('_')[1]}) = {value.real:g} exceeds n/2 = {n / 2:g}; "
        "outside the stated hypothesis (exploration mode)",
    )


def _zero_free_gate(P: Poly) -> Gate:
    loc = classify(P, 1.0, 1e-9) if P.n >= 1 else None
    if loc is None or loc.status is LocationStatus.NONE_IN_CLOSED_DISK:
        return Gate("zero_free", GateStatus.PASS)
    if loc.status is LocationStatus.NONE_IN_OPEN_DISK_BOUNDARY_TOUCH:
        return Gate(
            "zero_free",
            GateStatus.WARN,
            "zeros on the unit circle; hypothesis taken on its closure "
            "(the equality family az^n + b lives exactly there)",
        )
    if loc.status is LocationStatus.AMBIGUOUS:
        return Gate(
            "zero_free",
            GateStatus.WARN,
            "root location within the boundary band is numerically ambiguous",
        )
    return Gate(
        "zero_free",
        GateStatus.FAIL,
        f"P has zeros in the closed unit disk ({loc.status.value})",
    )


def _self_inversive_gate(P: Poly) -> Gate:
    flag, _ = is_self_inversive(P)
    if flag:
        return Gate("self_inversive", GateStatus.PASS)
    return Gate("self_inversive", GateStatus.FAIL, "P is not self-inversive")


def _linear_poly(a1: complex, a0: complex) -> Poly | None:
    """a1*z + a0 with an honest asserted degree; None when identically zero."""
    if a1 == 0 and a0 == 0:
        return None
    if a1 == 0:
        return Poly([a0])
    return Poly([a0, a1])


def _finish(
    iid: InequalityId,
    e: NormExponent,
    alpha: complex | None,
    gamma: complex | None,
    gates: list[Gate],
    lhs: NormInfo,
    rhs_value: float,
    rhs_achieved: float,
    notes: list[str],
) -> CheckReport:
    if rhs_value == 0.0:
        if lhs.value == 0.0:
            notes.append("degenerate instance: both sides vanish identically; holds trivially")
            return CheckReport(
                iid, e, alpha, gamma, 0.0, 0.0, 0.0, tuple(gates), Verdict.HOLDS, 0.0, tuple(notes)
            )
        raise DegenerateRHSError(
            f"{iid.value}: the bound is identically zero (DEGENERATE_RHS) while "
            f"the left side is {lhs.value:.6g}; the instance asserts nothing"
        )
    ratio = lhs.value / rhs_value
    margin = lhs.achieved_tol + rhs_achieved
    notes.extend(lhs.warnings)
    if any(g.status is GateStatus.FAIL for g in gates):
        verdict = Verdict.INCONCLUSIVE
    elif ratio <= 1.0 + _VIOLATION_THRESHOLD:
        verdict = Verdict.HOLDS
    elif margin < (ratio - 1.0) / 10.0:
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.INCONCLUSIVE
        notes.append(
            f"ratio {ratio:.12g} exceeds 1 but the combined numeric margin "
            f"{margin:.2e} cannot certify a violation"
        )
    return CheckReport(
        iid, e, alpha, gamma, lhs.value, rhs_value, ratio, tuple(gates), verdict, margin,
        tuple(notes),
    )


def _const_form(
    iid: InequalityId,
    P: Poly,
    e: NormExponent,
    alpha: complex | None,
    gamma: complex | None,
    lhs_poly: Poly,
    const: float,
    gates: list[Gate],
    rel_tol: float,
    notes: list[str],
) -> CheckReport:
    lhs = norm_info(lhs_poly, e, rel_tol)
    if const == 0.0:
        return _finish(iid, e, alpha, gamma, gates, lhs, 0.0, 0.0, notes)
    base = norm_info(P, e, rel_tol)
    notes.extend(base.warnings)
    return _finish(iid, e, alpha, gamma, gates, lhs, const * base.value, base.achieved_tol, notes)


def _factor_form(
    iid: InequalityId,
    P: Poly,
    e: NormExponent,
    alpha: complex | None,
    gamma: complex | None,
    lhs_poly: Poly,
    factor: Poly | None,
    gates: list[Gate],
    rel_tol: float,
    notes: list[str],
) -> CheckReport:
    lhs = norm_info(lhs_poly, e, rel_tol)
    if factor is None:
        return _finish(iid, e, alpha, gamma, gates, lhs, 0.0, 0.0, notes)
    fac = norm_info(factor, e, rel_tol)
    base = norm_info(P, e, rel_tol)
    ref = one_plus_z_norm_info(e, rel_tol)
    notes.extend(fac.warnings)
    notes.extend(base.warnings)
    rhs_value = fac.value * base.value / ref.value
    rhs_achieved = fac.achieved_tol + base.achieved_tol + ref.achieved_tol
    return _finish(iid, e, alpha, gamma, gates, lhs, rhs_value, rhs_achieved, notes)


def _sup_limit_note(e: NormExponent, notes: list[str]) -> None:
    if e.kind is NormKind.SUP:
        notes.append("sup-norm instance evaluated as the p -> infinity limit of the L_p bound")


def check_thm1_first(
    P: Poly, alpha: complex, e: NormExponent, rel_tol: float = 1e-11
) -> CheckReport:
    """||zP' - alpha P||_p <= |n - alpha| ||P||_p  (THM1_FIRST)."""
    alpha = complex(alpha)
    n = P.n
    notes: list[str] = []
    _sup_limit_note(e, notes)
    gates = [_re_gate("re_alpha", alpha, n)]
    return _const_form(
        InequalityId.THM1_FIRST, P, e, alpha, None,
        d_alpha(P, alpha), abs(n - alpha), gates, rel_tol, notes,
    )


def check_thm1_second(
    P: Poly, alpha: complex, gamma: complex, e: NormExponent, rel_tol: float = 1e-11
) -> CheckReport:
    """||z^2 P'' + (1-a-g) zP' + ag P||_p <= |n(n-a-g) + ag| ||P||_p  (THM1_SECOND)."""
    alpha, gamma = complex(alpha), complex(gamma)
    n = P.n
    notes: list[str] = []
    _sup_limit_note(e, notes)
    gates = [_re_gate("re_alpha", alpha, n), _re_gate("re_gamma", gamma, n)]
    const = abs(n * (n - alpha - gamma) + alpha * gamma)
    return _const_form(
        InequalityId.THM1_SECOND, P, e, alpha, gamma,
        d2_compose(P, alpha, gamma), const, gates, rel_tol, notes,
    )


def check_thm2_first(
    P: Poly, alpha: complex, e: NormExponent, rel_tol: float = 1e-11
) -> CheckReport:
    """Zero-free sharpening: ||zP'-aP||_p <= ||(n-a)z+a||_p ||P||_p / ||1+z||_p."""
    alpha = complex(alpha)
    n = P.n
    notes: list[str] = []
    _sup_limit_note(e, notes)
    gates = [_zero_free_gate(P), _re_gate("re_alpha", alpha, n)]
    factor = _linear_poly(n - alpha, alpha)
    return _factor_form(
        InequalityId.THM2_FIRST, P, e, alpha, None,
        d_alpha(P, alpha), factor, gates, rel_tol, notes,
    )


def check_thm2_second(
    P: Poly, alpha: complex, gamma: complex, e: NormExponent, rel_tol: float = 1e-11
) -> CheckReport:
    """Second-order zero-free form with linear factor n(n-a-g)z + ag."""
    alpha, gamma = complex(alpha), complex(gamma)
    n = P.n
    notes: list[str] = []
    _sup_limit_note(e, notes)
    gates = [
        _zero_free_gate(P),
        _re_gate("re_alpha", alpha, n),
        _re_gate("re_gamma", gamma, n),
    ]
    factor = _linear_poly(n * (n - alpha - gamma), alpha * gamma)
    return _factor_form(
        InequalityId.THM2_SECOND, P, e, alpha, gamma,
        d2_compose(P, alpha, gamma), factor, gates, rel_tol, notes,
    )


def check_thm3(
    P: Poly,
    alpha: complex,
    e: NormExponent,
    which: str = "first",
    gamma: complex | None = None,
    rel_tol: float = 1e-11,
) -> CheckReport:
    """The zero-free bounds under the self-inversive hypothesis instead.

    which='first' needs alpha only; which='second' needs gamma as well.
    """
    alpha = complex(alpha)
    n = P.n
    notes: list[str] = []
    _sup_limit_note(e, notes)
    if which == "first":
        gates = [_self_inversive_gate(P), _re_gate("re_alpha", alpha, n)]
        factor = _linear_poly(n - alpha, alpha)
        return _factor_form(
            InequalityId.THM3_FIRST, P, e, alpha, None,
            d_alpha(P, alpha), factor, gates, rel_tol, notes,
        )
    if which != "second":
        raise ValueError("which must be 'first' or 'second'")
    if gamma is None:
        raise ValueError("the second-order form needs gamma")
    gamma = complex(gamma)
    gates = [
        _self_inversive_gate(P),
        _re_gate("re_alpha", alpha, n),
        _re_gate("re_gamma", gamma, n),
    ]
    factor = _linear_poly(n * (n - alpha - gamma), alpha * gamma)
    return _factor_form(
        InequalityId.THM3_SECOND, P, e, alpha, gamma,
        d2_compose(P, alpha, gamma), factor, gates, rel_tol, notes,
    )


def check_cor1(P: Poly, e: NormExponent, which: str = "first", rel_tol: float = 1e-11) -> CheckReport:
    """alpha = gamma = n/2 specializations: bound n/2, resp. n^2/4."""
    n = P.n
    half = complex(n / 2)
    notes: list[str] = []
    _sup_limit_note(e, notes)
    if which == "first":
        return _const_form(
            InequalityId.COR1_FIRST, P, e, half, None,
            d_alpha(P, half), n / 2, [Gate("re_alpha", GateStatus.PASS)], rel_tol, notes,
        )
    if which != "second":
        raise ValueError("which must be 'first' or 'second'")
    return _const_form(
        InequalityId.COR1_SECOND, P, e, half, half,
        d2_compose(P, half, half), n * n / 4,
        [Gate("re_alpha", GateStatus.PASS), Gate("re_gamma", GateStatus.PASS)], rel_tol, notes,
    )


def check_cor2(
    P: Poly,
    e: NormExponent,
    which: str = "first",
    alpha: complex | None = None,
    rel_tol: float = 1e-11,
) -> CheckReport:
    """alpha = 1 first-order form; gamma = 0, free alpha second-order form.

    The second form is stated for n >= 2 only (hard gate): at n = 1 the
    operator z^2 P'' + (1 - alpha) zP' is not dominated by n|n - alpha| ||P||
    in any asserted sense.
    """
    n = P.n
    notes: list[str] = []
    _sup_limit_note(e, notes)
    if which == "first":
        if alpha is not None and complex(alpha) != 1:
            raise ValueError("the first form fixes alpha = 1")
        one = complex(1.0)
        gates = [_re_gate("re_alpha", one, n)]
        return _const_form(
            InequalityId.COR2_FIRST, P, e, one, None,
            d_alpha(P, one), abs(n - 1), gates, rel_tol, notes,
        )
    if which != "second":
        raise ValueError("which must be 'first' or 'second'")
    a = complex(1.0) if alpha is None else complex(alpha)
    gates = [_re_gate("re_alpha", a, n)]
    if n < 2:
        gates.append(Gate("degree", GateStatus.FAIL, "stated for degree n >= 2 only"))
    else:
        gates.append(Gate("degree", GateStatus.PASS))
    return _const_form(
        InequalityId.COR2_SECOND, P, e, a, complex(0.0),
        d2_compose(P, a, 0.0), n * abs(n - a), gates, rel_tol, notes,
    )


def check_classical(
    P: Poly,
    e: NormExponent,
    which: InequalityId,
    alpha: complex | None = None,
    rel_tol: float = 1e-11,
) -> CheckReport:
    """The antecedent inequalities: Bernstein, Zygmund, the two sup-norm
    alpha-forms, and the zero-free de Bruijn bound (alpha = 0 reduction)."""
    if isinstance(which, str):
        which = InequalityId(which)
    n = P.n
    notes: list[str] = []
    if which is InequalityId.BERNSTEIN:
        if e.kind is not NormKind.SUP:
            notes.append(f"p = {e.label()} coerced to inf: this is a sup-norm inequality")
            e = NormExponent.sup()
        lhs = norm_info(derivative(P), e, rel_tol)
        base = norm_info(P, e, rel_tol)
        return _finish(
            InequalityId.BERNSTEIN, e, None, None, [], lhs,
            n * base.value, base.achieved_tol, notes,
        )
    if which is InequalityId.ZYGMUND:
        gates = []
        if e.kind is NormKind.FINITE and e.p < 1:
            gates.append(
                Gate("p_range", GateStatus.WARN, "stated for p >= 1; evaluating anyway")
            )
        elif e.kind is NormKind.MAHLER:
            gates.append(
                Gate("p_range", GateStatus.WARN, "stated for p >= 1; p = 0 is the limit case")
            )
        else:
            gates.append(Gate("p_range", GateStatus.PASS))
        lhs = norm_info(derivative(P), e, rel_tol)
        base = norm_info(P, e, rel_tol)
        return _finish(
            InequalityId.ZYGMUND, e, None, None, gates, lhs,
            n * base.value, base.achieved_tol, notes,
        )
    if which in (InequalityId.JAIN_SUP, InequalityId.JAIN_SUP_NONVANISHING):
        if alpha is None:
            raise ValueError(f"{which.value} needs alpha")
        a = complex(alpha)
        if e.kind is not NormKind.SUP:
            notes.append(f"p = {e.label()} coerced to inf: this is a sup-norm inequality")
            e = NormExponent.sup()
        gates = [_re_gate("re_alpha", a, n)]
        if which is InequalityId.JAIN_SUP:
            const = abs(n - a)
        else:
            gates.insert(0, _zero_free_gate(P))
            const = (abs(n - a) + abs(a)) / 2.0
        return _const_form(which, P, e, a, None, d_alpha(P, a), const, gates, rel_tol, notes)
    if which is InequalityId.DEBRUIJN:
        if alpha not in (None, 0, 0.0, 0j):
            raise ValueError("the de Bruijn bound is the alpha = 0 reduction")
        _sup_limit_note(e, notes)
        gates = [_zero_free_gate(P)]
        factor = _linear_poly(complex(n), 0j)
        return _factor_form(
            InequalityId.DEBRUIJN, P, e, complex(0.0), None,
            d_alpha(P, 0.0), factor, gates, rel_tol, notes,
        )
    raise ValueError(f"{which.value} is not a classical variant")


def check(
    iid: InequalityId,
    P: Poly,
    e: NormExponent,
    alpha: complex | None = None,
    gamma: complex | None = None,
    rel_tol: float = 1e-11,
) -> CheckReport:
    """Uniform dispatcher: routes to the right check_* with argument validation."""
    need_alpha = {
        InequalityId.THM1_FIRST, InequalityId.THM1_SECOND, InequalityId.THM2_FIRST,
        InequalityId.THM2_SECOND, InequalityId.THM3_FIRST, InequalityId.THM3_SECOND,
        InequalityId.JAIN_SUP, InequalityId.JAIN_SUP_NONVANISHING, InequalityId.COR2_SECOND,
    }
    need_gamma = {
        InequalityId.THM1_SECOND, InequalityId.THM2_SECOND, InequalityId.THM3_SECOND,
    }
    if iid in need_alpha and alpha is None:
        raise ValueError(f"{iid.value} needs alpha")
    if iid in need_gamma and gamma is None:
        raise ValueError(f"{iid.value} needs gamma")
    if iid is InequalityId.THM1_FIRST:
        return check_thm1_first(P, alpha, e, rel_tol)
    if iid is InequalityId.THM1_SECOND:
        return check_thm1_second(P, alpha, gamma, e, rel_tol)
    if iid is InequalityId.THM2_FIRST:
        return check_thm2_first(P, alpha, e, rel_tol)
    if iid is InequalityId.THM2_SECOND:
        return check_thm2_second(P, alpha, gamma, e, rel_tol)
    if iid is InequalityId.THM3_FIRST:
        return check_thm3(P, alpha, e, "first", None, rel_tol)
    if iid is InequalityId.THM3_SECOND:
        return check_thm3(P, alpha, e, "second", gamma, rel_tol)
    if iid is InequalityId.COR1_FIRST:
        return check_cor1(P, e, "first", rel_tol)
    if iid is InequalityId.COR1_SECOND:
        return check_cor1(P, e, "second", rel_tol)
    if iid is InequalityId.COR2_FIRST:
        return check_cor2(P, e, "first", None, rel_tol)
    if iid is InequalityId.COR2_SECOND:
        return check_cor2(P, e, "second", alpha, rel_tol)
    return check_classical(P, e, iid, alpha, rel_tol)
