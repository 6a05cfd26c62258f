"""Randomized falsification, alpha-plane mapping, and extremal-ratio search.

Reproducibility is the product here: every fuzz instance derives its own RNG
stream from (seed, instance index), so serial and parallel runs agree and any
reported witness can be regenerated from the seed and index alone.  Fuzz
reports serialize byte-identically for identical configs.
"""

from __future__ import annotations

import cmath
import enum
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .inequalities import (
    DegenerateRHSError,
    InequalityId,
    _linear_poly,
    check,
)
from .norms import NormExponent, norm_info, one_plus_z_norm_info
from .operators import d2_compose, d_alpha
from .polycore import Poly, from_roots, poly_from_json, poly_to_json
from .polycore import derivative as poly_derivative


class GeneratorKind(enum.Enum):
    UNRESTRICTED = "UNRESTRICTED"
    ZERO_FREE = "ZERO_FREE"
    ZEROS_IN_DISK = "ZEROS_IN_DISK"
    SELF_INVERSIVE = "SELF_INVERSIVE"
    BOUNDARY = "BOUNDARY"  # stress kind: root moduli in [1.0, 1.01]


class AlphaPolicy(enum.Enum):
    ADMISSIBLE = "ADMISSIBLE"
    FULL_PLANE = "FULL_PLANE"


def _disk_point(rng: np.random.Generator, min_modulus: float = 0.0) -> complex:
    # uniform over the unit disk, optionally resampled to a modulus floor
    while True:
        z = math.sqrt(rng.random()) * cmath.exp(2j * math.pi * rng.random())
        if abs(z) >= min_modulus:
            return z


def self_inversive_from_half(
    u: complex, top: list[complex], middle_t: float | None
) -> Poly:
    """Assemble a self-inversive polynomial from its upper-half coefficients.

    For |u| = 1 the identity a_j = u * conj(a_{n-j}) pins the lower half as
    a_{n-j} = u * conj(a_j); an even-degree middle coefficient must be a real
    multiple of sqrt(u).
    """
    m = len(top)  # top holds a_{h+1} .. a_n where h = n // 2
    n = 2 * m if middle_t is not None else 2 * m - 1
    coeffs: list[complex] = [0j] * (n + 1)
    h = n // 2
    for i, c in enumerate(top):
        j = h + 1 + i
        coeffs[j] = c
        coeffs[n - j] = u * c.conjugate()
    if middle_t is not None:
        coeffs[h] = cmath.sqrt(u) * middle_t
    return Poly(coeffs)


def gen_poly(
    kind: GeneratorKind, n: int, rng: np.random.Generator, disk_radius: float = 1.0
) -> Poly:
    """Draw one degree-n polynomial from the named hypothesis family.

    UNRESTRICTED: coefficients uniform in the unit disk, |a_n| floored at 0.1.
    ZERO_FREE: built from roots with moduli uniform in [1.05, 4].
    ZEROS_IN_DISK: root moduli uniform in [0, disk_radius].
    SELF_INVERSIVE: exact construction from a random unimodular u and random
    upper-half coefficients.
    BOUNDARY: root moduli in [1.0, 1.01] — exercises the boundary-band
    warnings rather than the clean hypothesis set.
    """
    if n < 1:
        raise ValueError("generator degree must be >= 1")
    if kind is GeneratorKind.UNRESTRICTED:
        coeffs = [_disk_point(rng) for _ in range(n)]
        coeffs.append(_disk_point(rng, 0.1))
        return Poly(coeffs)
    if kind is GeneratorKind.SELF_INVERSIVE:
        u = cmath.exp(2j * math.pi * rng.random())
        h = n // 2
        top = [_disk_point(rng) for _ in range(n - h - 1)]
        top.append(_disk_point(rng, 0.1))  # a_n
        middle = float(rng.uniform(-1.0, 1.0)) if n % 2 == 0 else None
        return self_inversive_from_half(u, top, middle)
    if kind is GeneratorKind.ZERO_FREE:
        lo, hi = 1.05, 4.0
    elif kind is GeneratorKind.BOUNDARY:
        lo, hi = 1.0, 1.01
    elif kind is GeneratorKind.ZEROS_IN_DISK:
        lo, hi = 0.0, float(disk_radius)
    else:  # pragma: no cover
        raise ValueError(f"unknown generator kind {kind!r}")
    moduli = rng.uniform(lo, hi, n)
    args = rng.uniform(0.0, 2.0 * math.pi, n)
    roots = [m * cmath.exp(1j * a) for m, a in zip(moduli, args)]
    lead = _disk_point(rng, 0.1)
    return from_roots(lead, roots)


@dataclass(frozen=True)
class FuzzConfig:
    inequality_id: InequalityId
    count: int
    degree_range: tuple[int, int]
    p_grid: tuple[NormExponent, ...]
    generator_kind: GeneratorKind
    seed: int
    alpha_policy: AlphaPolicy = AlphaPolicy.ADMISSIBLE
    disk_radius: float = 1.0
    family: Poly | None = None  # fixed polynomial instead of the generator

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        lo, hi = self.degree_range
        if not (1 <= lo <= hi <= 64):
            raise ValueError("degree_range must sit within [1, 64]")
        if not self.p_grid:
            raise ValueError("p_grid must be nonempty")

    def to_json(self) -> dict:
        return {
            "inequality_id": self.inequality_id.value,
            "count": self.count,
            "degree_range": list(self.degree_range),
            "p_grid": [e.label() for e in self.p_grid],
            "generator_kind": self.generator_kind.value,
            "seed": self.seed,
            "alpha_policy": self.alpha_policy.value,
            "disk_radius": self.disk_radius,
            "family": None if self.family is None else poly_to_json(self.family),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FuzzConfig":
        return cls(
            inequality_id=InequalityId(obj["inequality_id"]),
            count=int(obj["count"]),
            degree_range=(int(obj["degree_range"][0]), int(obj["degree_range"][1])),
            p_grid=tuple(NormExponent.parse(str(t)) for t in obj["p_grid"]),
            generator_kind=GeneratorKind(obj["generator_kind"]),
            seed=int(obj["seed"]),
            alpha_policy=AlphaPolicy(obj.get("alpha_policy", "ADMISSIBLE")),
            disk_radius=float(obj.get("disk_radius", 1.0)),
            family=None if obj.get("family") is None else poly_from_json(obj["family"]),
        )


_NEEDS_ALPHA = {
    InequalityId.THM1_FIRST, InequalityId.THM1_SECOND, InequalityId.THM2_FIRST,
    InequalityId.THM2_SECOND, InequalityId.THM3_FIRST, InequalityId.THM3_SECOND,
    InequalityId.JAIN_SUP, InequalityId.JAIN_SUP_NONVANISHING, InequalityId.COR2_SECOND,
}
_NEEDS_GAMMA = {
    InequalityId.THM1_SECOND, InequalityId.THM2_SECOND, InequalityId.THM3_SECOND,
}


def _draw_param(rng: np.random.Generator, n: int, policy: AlphaPolicy) -> complex:
    if policy is AlphaPolicy.ADMISSIBLE:
        re = rng.uniform(-n, n / 2)
    else:
        re = rng.uniform(-n, 2 * n)
    return complex(re, rng.uniform(-n, n))


def _instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _run_instance(cfg: FuzzConfig, index: int) -> dict:
    rng = _instance_rng(cfg.seed, index)
    lo, hi = cfg.degree_range
    n = int(rng.integers(lo, hi + 1))
    P = cfg.family if cfg.family is not None else gen_poly(
        cfg.generator_kind, n, rng, cfg.disk_radius
    )
    n = P.n
    alpha = _draw_param(rng, n, cfg.alpha_policy) if cfg.inequality_id in _NEEDS_ALPHA else None
    gamma = _draw_param(rng, n, cfg.alpha_policy) if cfg.inequality_id in _NEEDS_GAMMA else None
    checks = []
    for e in cfg.p_grid:
        try:
            rep = check(cfg.inequality_id, P, e, alpha, gamma)
            checks.append(
                {
                    "p": e.label(),
                    "ratio": rep.ratio,
                    "verdict": rep.verdict.value,
                    "lhs": rep.lhs,
                    "rhs": rep.rhs,
                    "numeric_margin": rep.numeric_margin,
                }
            )
        except DegenerateRHSError:
            checks.append(
                {
                    "p": e.label(),
                    "ratio": None,
                    "verdict": "DEGENERATE_RHS",
                    "lhs": None,
                    "rhs": 0.0,
                    "numeric_margin": None,
                }
            )
    return {
        "index": index,
        "poly": poly_to_json(P),
        "alpha": None if alpha is None else [alpha.real, alpha.imag],
        "gamma": None if gamma is None else [gamma.real, gamma.imag],
        "checks": checks,
    }


@dataclass(frozen=True)
class FuzzReport:
    config: FuzzConfig
    counts: dict
    checks_total: int
    max_ratio_instance: dict | None
    violated: tuple[dict, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "counts": dict(self.counts),
            "checks_total": self.checks_total,
            "max_ratio_instance": self.max_ratio_instance,
            "violated": list(self.violated),
        }

    def json_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()


def fuzz(cfg: FuzzConfig, threads: int = 1) -> FuzzReport:
    """Run cfg.count independent instances and tally the verdicts.

    Instance i draws from the RNG stream (seed, i) regardless of execution
    order, and results are merged in index order, so the report is identical
    for any thread count.  INCONCLUSIVE and degenerate instances are counted,
    never dropped.
    """
    indices = range(cfg.count)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(lambda i: _run_instance(cfg, i), indices))
    else:
        records = [_run_instance(cfg, i) for i in indices]

    counts = {"HOLDS": 0, "VIOLATED": 0, "INCONCLUSIVE": 0, "DEGENERATE_RHS": 0}
    checks_total = 0
    best: dict | None = None
    best_ratio = -math.inf
    violated: list[dict] = []
    for rec in records:
        for chk in rec["checks"]:
            checks_total += 1
            counts[chk["verdict"]] += 1
            ratio = chk["ratio"]
            if ratio is not None and ratio > best_ratio:
                best_ratio = ratio
                best = _witness(cfg, rec, chk)
            if chk["verdict"] == "VIOLATED":
                violated.append(_witness(cfg, rec, chk))
    return FuzzReport(cfg, counts, checks_total, best, tuple(violated))


def _witness(cfg: FuzzConfig, rec: dict, chk: dict) -> dict:
    return {
        "seed": cfg.seed,
        "index": rec["index"],
        "poly": rec["poly"],
        "alpha": rec["alpha"],
        "gamma": rec["gamma"],
        "p": chk["p"],
        "ratio": chk["ratio"],
        "verdict": chk["verdict"],
        "lhs": chk["lhs"],
        "rhs": chk["rhs"],
        "numeric_margin": chk["numeric_margin"],
    }


@dataclass(frozen=True)
class AlphaMapResult:
    inequality_id: InequalityId
    p: NormExponent
    rows: tuple[tuple[float, float, float, str], ...]  # (re, im, max_ratio, verdict)

    def to_csv(self) -> str:
        lines = ["re_alpha,im_alpha,max_ratio,verdict"]
        for re, im, ratio, verdict in self.rows:
            lines.append(f"{re!r},{im!r},{ratio!r},{verdict}")
        return "\n".join(lines) + "\n"


def alpha_map(
    family: Poly | list[Poly],
    e: NormExponent,
    re_range: tuple[float, float],
    im_range: tuple[float, float],
    steps: tuple[int, int],
    iid: InequalityId = InequalityId.THM1_FIRST,
    gamma: complex | None = None,
    rel_tol: float = 1e-11,
) -> AlphaMapResult:
    """Exhaustive alpha-grid scan: per cell, the max ratio over the family.

    A cell's verdict is the worst over the family (VIOLATED beats
    INCONCLUSIVE beats HOLDS).  Rows are emitted re-major, im-minor, both
    endpoints included.
    """
    polys = [family] if isinstance(family, Poly) else list(family)
    if not polys:
        raise ValueError("empty family")
    re_steps, im_steps = steps
    if re_steps < 1 or im_steps < 1:
        raise ValueError("steps must be >= 1")
    res = np.linspace(re_range[0], re_range[1], re_steps)
    ims = np.linspace(im_range[0], im_range[1], im_steps)
    severity = {"HOLDS": 0, "INCONCLUSIVE": 1, "DEGENERATE_RHS": 1, "VIOLATED": 2}
    rows = []
    for re in res:
        for im in ims:
            a = complex(float(re), float(im))
            worst = "HOLDS"
            max_ratio = -math.inf
            for P in polys:
                try:
                    rep = check(iid, P, e, a, gamma, rel_tol)
                    verdict = rep.verdict.value
                    max_ratio = max(max_ratio, rep.ratio)
                except DegenerateRHSError:
                    verdict = "DEGENERATE_RHS"
                if severity[verdict] > severity[worst]:
                    worst = verdict
            rows.append((float(re), float(im), max_ratio, worst))
    return AlphaMapResult(iid, e, tuple(rows))


# --- extremal search ---------------------------------------------------------

_ZERO_FREE_IDS = {
    InequalityId.THM2_FIRST,
    InequalityId.THM2_SECOND,
    InequalityId.DEBRUIJN,
    InequalityId.JAIN_SUP_NONVANISHING,
}
_SELF_INVERSIVE_IDS = {InequalityId.THM3_FIRST, InequalityId.THM3_SECOND}


def _ratio_value(
    iid: InequalityId,
    P: Poly,
    e: NormExponent,
    alpha: complex | None,
    gamma: complex | None,
    rel_tol: float,
) -> float:
    """The bare lhs/rhs ratio, bypassing gates (the search parameterizations
    satisfy the hypotheses by construction)."""
    n = P.n
    if iid in (InequalityId.THM1_FIRST, InequalityId.JAIN_SUP):
        lhs_poly, const = d_alpha(P, alpha), abs(n - alpha)
    elif iid is InequalityId.THM1_SECOND:
        lhs_poly = d2_compose(P, alpha, gamma)
        const = abs(n * (n - alpha - gamma) + alpha * gamma)
    elif iid is InequalityId.JAIN_SUP_NONVANISHING:
        lhs_poly, const = d_alpha(P, alpha), (abs(n - alpha) + abs(alpha)) / 2.0
    elif iid in (InequalityId.BERNSTEIN, InequalityId.ZYGMUND):
        lhs_poly, const = poly_derivative(P), float(n)
    elif iid is InequalityId.COR1_FIRST:
        lhs_poly, const = d_alpha(P, n / 2), n / 2
    elif iid is InequalityId.COR1_SECOND:
        lhs_poly, const = d2_compose(P, n / 2, n / 2), n * n / 4
    elif iid is InequalityId.COR2_FIRST:
        lhs_poly, const = d_alpha(P, 1.0), abs(n - 1)
    elif iid is InequalityId.COR2_SECOND:
        a = 1.0 if alpha is None else alpha
        lhs_poly, const = d2_compose(P, a, 0.0), n * abs(n - a)
    elif iid in (InequalityId.THM2_FIRST, InequalityId.THM3_FIRST, InequalityId.DEBRUIJN):
        a = complex(0.0) if iid is InequalityId.DEBRUIJN else alpha
        lhs_poly = d_alpha(P, a)
        factor = _linear_poly(n - a, a)
        if factor is None:
            return -math.inf
        num = norm_info(lhs_poly, e, rel_tol).value
        den = (
            norm_info(factor, e, rel_tol).value
            * norm_info(P, e, rel_tol).value
            / one_plus_z_norm_info(e, rel_tol).value
        )
        return num / den if den > 0 else -math.inf
    elif iid in (InequalityId.THM2_SECOND, InequalityId.THM3_SECOND):
        lhs_poly = d2_compose(P, alpha, gamma)
        factor = _linear_poly(n * (n - alpha - gamma), alpha * gamma)
        if factor is None:
            return -math.inf
        num = norm_info(lhs_poly, e, rel_tol).value
        den = (
            norm_info(factor, e, rel_tol).value
            * norm_info(P, e, rel_tol).value
            / one_plus_z_norm_info(e, rel_tol).value
        )
        return num / den if den > 0 else -math.inf
    else:
        raise ValueError(f"extremal search does not support {iid.value}")
    if const == 0:
        return -math.inf
    lhs = norm_info(lhs_poly, e, rel_tol).value
    rhs = const * norm_info(P, e, rel_tol).value
    return lhs / rhs if rhs > 0 else -math.inf


@dataclass(frozen=True)
class ExtremalResult:
    inequality_id: InequalityId
    p: NormExponent
    alpha: complex | None
    gamma: complex | None
    n: int
    restarts: int
    seed: int
    ratio_best: float
    poly_best: Poly
    best_restart: int  # -1 marks the seeded equality-family start

    def to_json(self) -> dict:
        return {
            "inequality_id": self.inequality_id.value,
            "p": self.p.label(),
            "alpha": None if self.alpha is None else [self.alpha.real, self.alpha.imag],
            "gamma": None if self.gamma is None else [self.gamma.real, self.gamma.imag],
            "n": self.n,
            "restarts": self.restarts,
            "seed": self.seed,
            "ratio_best": self.ratio_best,
            "poly_best": poly_to_json(self.poly_best),
            "best_restart": self.best_restart,
        }


def extremal_search(
    iid: InequalityId,
    n: int,
    e: NormExponent,
    alpha: complex | None = None,
    gamma: complex | None = None,
    restarts: int = 50,
    seed: int = 0,
    rel_tol: float = 1e-10,
) -> ExtremalResult:
    """Maximize the ratio over the hypothesis-respecting parameterization.

    Unconstrained ids search raw coefficient space (dimension 2n + 2,
    normalized to ||P||_2 = 1 inside the objective); zero-free ids search
    log-excess root moduli and arguments so every iterate stays root-free in
    the closed disk; self-inversive ids search the defining upper half of the
    coefficients plus the phase of u.  Nelder-Mead from `restarts` random
    starts plus the known equality family; the result is a certified *lower*
    bound on the extremal ratio, never an upper one.
    """
    if n < 1 or n > 16:
        raise ValueError("extremal search supports 1 <= n <= 16")
    if iid in _NEEDS_ALPHA and alpha is None:
        raise ValueError(f"{iid.value} needs alpha")
    if iid in _NEEDS_GAMMA and gamma is None:
        raise ValueError(f"{iid.value} needs gamma")
    if alpha is not None:
        alpha = complex(alpha)
    if gamma is not None:
        gamma = complex(gamma)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0xE7,)))

    if iid in _ZERO_FREE_IDS:
        build, x0_family, dim = _zero_free_param(n)
    elif iid in _SELF_INVERSIVE_IDS:
        build, x0_family, dim = _self_inversive_param(n)
    else:
        build, x0_family, dim = _coeff_param(n)

    def objective(x: np.ndarray) -> float:
        P = build(x)
        if P is None:
            return 1e6
        try:
            r = _ratio_value(iid, P, e, alpha, gamma, rel_tol)
        except (ValueError, ZeroDivisionError):
            return 1e6
        if not math.isfinite(r):
            return 1e6
        return -r

    starts: list[tuple[int, np.ndarray]] = [(-1, x0_family)]
    for k in range(restarts):
        starts.append((k, rng.standard_normal(dim)))

    best_val = -math.inf
    best_poly: Poly | None = None
    best_k = -1
    for k, x0 in starts:
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxiter": 2000, "xatol": 1e-9, "fatol": 1e-12, "adaptive": True},
        )
        val = -float(res.fun)
        if val > best_val:
            P = build(res.x)
            if P is not None:
                best_val = val
                best_poly = P
                best_k = k
    assert best_poly is not None
    return ExtremalResult(iid, e, alpha, gamma, n, restarts, seed, best_val, best_poly, best_k)


def _coeff_param(n: int):
    dim = 2 * (n + 1)

    def build(x: np.ndarray) -> Poly | None:
        v = np.asarray(x, dtype=float)
        scale = float(np.linalg.norm(v))  # == ||P||_2 by Parseval
        if scale == 0 or not math.isfinite(scale):
            return None
        v = v / scale
        coeffs = v[0::2] + 1j * v[1::2]
        if coeffs[-1] == 0:
            return None
        return Poly(list(coeffs))

    x0 = np.zeros(dim)
    x0[-2] = 1.0  # the monomial z^n — the stated equality family
    return build, x0, dim


def _zero_free_param(n: int):
    # x = [s_1, phi_1, ..., s_n, phi_n]; root k at (1 + e^{s_k}) e^{i phi_k}
    dim = 2 * n

    def build(x: np.ndarray) -> Poly | None:
        s = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(s)):
            return None
        moduli = 1.0 + np.exp(np.clip(s[0::2], -60.0, 10.0))
        args = s[1::2]
        roots = moduli * np.exp(1j * args)
        return from_roots(1.0, list(roots))

    # near the az^n + b family: roots just outside the circle, equally spaced
    x0 = np.empty(dim)
    x0[0::2] = math.log(0.05)
    x0[1::2] = 2.0 * math.pi * np.arange(n) / n + 0.37
    return build, x0, dim


def _self_inversive_param(n: int):
    h = n // 2
    top_count = n - h  # coefficients a_{h+1} .. a_n
    even = n % 2 == 0
    dim = 1 + 2 * top_count + (1 if even else 0)

    def build(x: np.ndarray) -> Poly | None:
        v = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(v)):
            return None
        u = cmath.exp(1j * v[0])
        flat = v[1 : 1 + 2 * top_count]
        top = [complex(flat[2 * i], flat[2 * i + 1]) for i in range(top_count)]
        middle = float(v[-1]) if even else None
        if top[-1] == 0:
            return None
        return self_inversive_from_half(u, top, middle)

    x0 = np.zeros(dim)
    x0[1 + 2 * (top_count - 1)] = 1.0  # a_n = 1 -> the z^n + u family
    return build, x0, dim
