"""The Bohr-type building blocks and the six composite functionals.

Every sum over the series coefficients is truncated adaptively and the
discarded mass is bounded through the weight sequence's geometric
dominator; an :class:`~bohrkit.errors.AccuracyError` is raised whenever
the certified remainder cannot be pushed below 1e-12.

The composite functionals come in two evaluation modes:

* ``envelope``: the modulus terms |f(w(z))|, |f(w(z)) - a_0|, ... are
  replaced by their sharp upper envelopes over the inner-map class; this
  is the quantity the validity statements bound.
* ``pointwise``: the same terms are evaluated on the positive axis at
  z = r with w(z) = z**m; this is what the sharpness arguments need on
  the extremal families.

Envelope mode dominates pointwise mode for every disk self-map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import weights as wt
from .errors import AccuracyError, DomainError
from .series import BoundedFunction, eval_derivative, evaluate

REMAINDER_TOL = 1e-12
_CUT_TOL = 1e-18

_POWER = wt.power()

ENVELOPE = "envelope"
POINTWISE = "pointwise"

PSI_FAMILIES = ("psi1", "psi2", "psi3", "psi4", "psi5_t5", "psi5_t6")
CLASSICAL_FAMILIES = ("classical_alpha", "classical_beta", "classical_zeta",
                      "classical_eta", "classical_c", "classical_d")
ALL_FAMILIES = PSI_FAMILIES + CLASSICAL_FAMILIES

# families whose functional is bounded by phi_0(r); the rest are bounded by 1
_PHI0_BOUNDED = frozenset({"psi1", "psi2", "psi3", "psi4",
                           "classical_alpha", "classical_beta",
                           "classical_zeta", "classical_eta", "classical_c"})

# families requiring a Schwarz function (a_0 = 0)
SCHWARZ_FAMILIES = frozenset({"psi3", "psi4", "classical_c"})


@dataclass(frozen=True)
class FunctionalParams:
    """Parameter bundle; each functional reads only the fields it needs."""

    m: int = 1
    p: float = 1.0
    lam: float = 1.0
    q: int = 2
    n_lacunary: int = 1

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise DomainError("m must be a positive integer")
        if not 0.0 < self.p <= 2.0:
            raise DomainError("p must lie in (0, 2]")
        if self.lam <= 0.0:
            raise DomainError("lambda must be positive")
        if not isinstance(self.q, (int, np.integer)) or self.q < 1:
            raise DomainError("q must be a positive integer")
        if not isinstance(self.n_lacunary, (int, np.integer)) or self.n_lacunary < 1:
            raise DomainError("n must be a positive integer")


def _check_mode(mode: str) -> str:
    if mode not in (ENVELOPE, POINTWISE):
        raise DomainError(f"mode must be {ENVELOPE!r} or {POINTWISE!r}")
    return mode


def _as_grid(r):
    rs = wt._as_r(r)
    return rs, np.ndim(r) == 0


def _unwrap(out: np.ndarray, scalar: bool):
    return float(out[0]) if scalar else out


def _cutoff(x: float) -> int:
    """Smallest useful truncation index for geometric ratio x, padded."""
    if x <= 0.0:
        return 8
    return max(8, math.ceil(math.log(_CUT_TOL * (1.0 - x)) / math.log(x))) + 64


def _trunc(f: BoundedFunction, w: wt.WeightSequence, rmax: float):
    """Truncation index plus the worst coefficient bound beyond it."""
    T = f.truncation_order
    n_hi = min(T, _cutoff(w.ratio(rmax)))
    beyond = np.abs(f.coeffs[n_hi + 1:])
    U = max(f.tail_bound, float(beyond.max()) if beyond.size else 0.0)
    return n_hi, U


def _guard(bound: float, what: str):
    if bound > REMAINDER_TOL:
        raise AccuracyError(f"certified remainder {bound:.3g} of {what} "
                            f"exceeds {REMAINDER_TOL}")


def _bohr_sum_arr(f, w, N, rs):
    rmax = float(rs.max())
    n_hi, U = _trunc(f, w, rmax)
    _guard(U * w.tail(n_hi + 1, rmax), "the weighted coefficient sum")
    ns = np.arange(N, n_hi + 1)
    if ns.size == 0:
        return np.zeros(rs.size)
    return np.abs(f.coeffs[N:n_hi + 1]) @ w._weight2(ns, rs)


def _a_refinement_arr(f, w, rs):
    rmax = float(rs.max())
    n_hi, U = _trunc(f, w, rmax)
    x = w.ratio(rmax)
    with np.errstate(over="ignore"):
        rem = U * U * w.dominator * (x ** (2 * n_hi + 2) / max(1.0 - x * x, 1e-9)
                                     + x ** (2 * n_hi + 3)
                                     / max((1.0 - x) * (1.0 - x * x), 1e-12))
    _guard(float(rem), "the quadratic refinement term")
    n_half = min(f.truncation_order, n_hi // 2 + 1)
    ns = np.arange(1, n_half + 1)
    if ns.size == 0:
        return np.zeros(rs.size)
    a0 = abs(f.coeffs[0])
    blocks = w._weight2(2 * ns, rs) / (1.0 + a0) + w._tail2(2 * ns + 1, rs, weighted=False)
    return (np.abs(f.coeffs[1:n_half + 1]) ** 2) @ blocks


def _weighted_coeff_sum_arr(f, w, rs):
    """sum_{n>=1} (n+1) |a_{n+1}| w_n(r) -- the derivative-type middle sum."""
    rmax = float(rs.max())
    n_hi, U = _trunc(f, w, rmax)
    _guard(U * w.weighted_tail(max(n_hi, 1), rmax), "the derivative coefficient sum")
    top = min(n_hi, f.truncation_order - 1)
    ns = np.arange(1, top + 1)
    if ns.size == 0:
        return np.zeros(rs.size)
    return ((ns + 1.0) * np.abs(f.coeffs[2:top + 2])) @ w._weight2(ns, rs)


def _lacunary_sum_arr(f, idx, rs):
    """sum over the given coefficient indices of |a_idx| r**idx (power weights)."""
    if idx.size == 0:
        return np.zeros(rs.size)
    powers = np.power(rs[None, :], idx[:, None].astype(float))
    return np.abs(f.coeffs[idx]) @ powers


def bohr_sum(f: BoundedFunction, w: wt.WeightSequence, N: int, r):
    """The majorant series sum_{n>=N} |a_n| w_n(r)."""
    if N < 0:
        raise DomainError("start index must be nonnegative")
    rs, scalar = _as_grid(r)
    return _unwrap(_bohr_sum_arr(f, w, N, rs), scalar)


def a_refinement(f: BoundedFunction, w: wt.WeightSequence, r):
    """The quadratic refinement sum_{n>=1} |a_n|^2 [w_2n/(1+|a_0|) + tail(2n+1)]."""
    rs, scalar = _as_grid(r)
    return _unwrap(_a_refinement_arr(f, w, rs), scalar)


def _head_modulus(f, m, rs, mode):
    """|f(w(z))| on |z| = r: sharp envelope or the value at z = r."""
    x = rs ** m
    if mode == ENVELOPE:
        a = abs(f.coeffs[0])
        return (x + a) / (1.0 + a * x)
    return np.abs(evaluate(f, x))


def _require_schwarz(f):
    if abs(f.coeffs[0]) > 1e-12:
        raise DomainError("this functional requires a Schwarz function (a_0 = 0)")


def functional_T1(f, w, params: FunctionalParams, r, mode: str = ENVELOPE):
    """|f(w(z))|**p * phi_0 + majorant + refinement."""
    _check_mode(mode)
    rs, scalar = _as_grid(r)
    phi0 = w._weight2(np.array([0]), rs)[0]
    head = _head_modulus(f, params.m, rs, mode) ** params.p * phi0
    out = head + _bohr_sum_arr(f, w, 1, rs) + _a_refinement_arr(f, w, rs)
    return _unwrap(out, scalar)


def functional_T2(f, w, params: FunctionalParams, r, mode: str = ENVELOPE):
    """|a_0|**p * phi_0 + majorant + refinement + |f(w(z)) - a_0|."""
    _check_mode(mode)
    rs, scalar = _as_grid(r)
    phi0 = w._weight2(np.array([0]), rs)[0]
    a0 = f.coeffs[0]
    a = abs(a0)
    x = rs ** params.m
    if mode == ENVELOPE:
        dev = (1.0 - a * a) * x / (1.0 - a * x)
    else:
        dev = np.abs(evaluate(f, x) - a0)
    out = a ** params.p * phi0 + _bohr_sum_arr(f, w, 1, rs) \
        + _a_refinement_arr(f, w, rs) + dev
    return _unwrap(out, scalar)


def functional_T3(f, w, params: FunctionalParams, r, mode: str = ENVELOPE):
    """|a_1|**p * phi_0 + sum (n+1)|a_{n+1}| w_n(r); needs a_0 = 0."""
    _check_mode(mode)
    _require_schwarz(f)
    rs, scalar = _as_grid(r)
    phi0 = w._weight2(np.array([0]), rs)[0]
    out = abs(f.coeffs[1]) ** params.p * phi0 + _weighted_coeff_sum_arr(f, w, rs)
    return _unwrap(out, scalar)


def functional_T4(f, w, params: FunctionalParams, r, mode: str = ENVELOPE):
    """T3 plus the derivative deviation |f'(w(z)) - a_1|; needs a_0 = 0."""
    _check_mode(mode)
    _require_schwarz(f)
    rs, scalar = _as_grid(r)
    phi0 = w._weight2(np.array([0]), rs)[0]
    a1 = f.coeffs[1]
    x = rs ** params.m
    if mode == ENVELOPE:
        dev = (1.0 - abs(a1) ** 2) * x * (2.0 - x) / (1.0 - x) ** 2
    else:
        dev = np.abs(eval_derivative(f, x) - a1)
    out = abs(a1) ** params.p * phi0 + _weighted_coeff_sum_arr(f, w, rs) + dev
    return _unwrap(out, scalar)


def functional_T5(f, w, params: FunctionalParams, r, mode: str = ENVELOPE):
    """|f(w(z))|**p + lambda * [majorant + refinement], power weights."""
    _check_mode(mode)
    rs, scalar = _as_grid(r)
    head = _head_modulus(f, params.m, rs, mode) ** params.p
    out = head + params.lam * (_bohr_sum_arr(f, _POWER, 1, rs)
                               + _a_refinement_arr(f, _POWER, rs))
    return _unwrap(out, scalar)


def functional_T6(f, w, params: FunctionalParams, r, mode: str = ENVELOPE):
    """|f(w(z))|**p + lambda * lacunary majorant over indices qk + m."""
    _check_mode(mode)
    if params.q < 2 or not 0 < params.m < params.q:
        raise DomainError("theorem-6 functional needs q >= 2 and 0 < m < q")
    rs, scalar = _as_grid(r)
    rmax = float(rs.max())
    n_hi, U = _trunc(f, _POWER, rmax)
    _guard(U * _POWER.tail(n_hi + 1, rmax), "the lacunary sum")
    idx = np.arange(params.q + params.m, min(n_hi, f.truncation_order) + 1, params.q)
    head = _head_modulus(f, params.m, rs, mode) ** params.p
    out = head + params.lam * _lacunary_sum_arr(f, idx, rs)
    return _unwrap(out, scalar)


def functional_TD(f, params: FunctionalParams, r, mode: str = ENVELOPE):
    """|f(z)| + lambda * lacunary majorant over indices nk (classical form)."""
    _check_mode(mode)
    rs, scalar = _as_grid(r)
    rmax = float(rs.max())
    n_hi, U = _trunc(f, _POWER, rmax)
    _guard(U * _POWER.tail(n_hi + 1, rmax), "the lacunary sum")
    n = params.n_lacunary
    idx = np.arange(n, min(n_hi, f.truncation_order) + 1, n)
    head = _head_modulus(f, 1, rs, mode)
    out = head + params.lam * _lacunary_sum_arr(f, idx, rs)
    return _unwrap(out, scalar)


def evaluate_family(family: str, f, w, params: FunctionalParams, r,
                    mode: str = ENVELOPE):
    """Dispatch a radius family name to its composite functional.

    Classical families evaluate the corresponding theorem's functional
    with power weights and the p-case fixed by the theorem.
    """
    if family == "psi1":
        return functional_T1(f, w, params, r, mode)
    if family == "psi2":
        return functional_T2(f, w, params, r, mode)
    if family == "psi3":
        return functional_T3(f, w, params, r, mode)
    if family == "psi4":
        return functional_T4(f, w, params, r, mode)
    if family == "psi5_t5":
        return functional_T5(f, w, params, r, mode)
    if family == "psi5_t6":
        return functional_T6(f, w, params, r, mode)
    if family == "classical_alpha":
        return functional_T1(f, _POWER, replace(params, p=1.0), r, mode)
    if family == "classical_beta":
        return functional_T1(f, _POWER, replace(params, p=2.0), r, mode)
    if family == "classical_zeta":
        return functional_T2(f, _POWER, replace(params, p=1.0), r, mode)
    if family == "classical_eta":
        return functional_T2(f, _POWER, replace(params, p=2.0), r, mode)
    if family == "classical_c":
        return functional_T3(f, _POWER, replace(params, p=1.0), r, mode)
    if family == "classical_d":
        return functional_TD(f, params, r, mode)
    raise DomainError(f"unknown functional family {family!r}")


def bound_for(family: str, w, r):
    """The right-hand side each family's inequality is checked against."""
    if family in _PHI0_BOUNDED:
        use = _POWER if family.startswith("classical") else w
        rs, scalar = _as_grid(r)
        return _unwrap(use._weight2(np.array([0]), rs)[0], scalar)
    if family in ALL_FAMILIES:
        rs, scalar = _as_grid(r)
        return _unwrap(np.ones(rs.size), scalar)
    raise DomainError(f"unknown functional family {family!r}")
