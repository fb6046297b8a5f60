"""Truncated power series for analytic self-maps of the unit disk.

A :class:`BoundedFunction` stores finitely many Taylor coefficients plus a
certified bound on every discarded coefficient, so downstream sums can
account for truncation honestly.  The extremal families used in the
sharpness arguments (disk automorphisms and their Schwarz variant) have
closed-form coefficients; finite Blaschke products provide randomizable
members for property testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

T_MAX = 200_000
EVAL_EDGE = 1.0 - 1e-6
SP_COEFF_SLACK = 1e-12

BLASCHKE_ORDER = 4096
BLASCHKE_ZERO_RADIUS = 0.9
MAX_BLASCHKE_DEGREE = 16

_MOEBIUS_TAIL_TARGET = 1e-15
# series evaluation drops terms once they are below this absolute size
_EVAL_NEGLIGIBLE = 1e-19


@dataclass(frozen=True, eq=False)
class BoundedFunction:
    """A disk self-map given by coefficients a_0..a_T and a tail bound.

    The tail bound M certifies |a_n| <= M for every n > T.
    """

    coeffs: np.ndarray
    tail_bound: float
    family_tag: str = "custom"

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size < 2:
            raise DomainError("coefficients must be a 1-d array a0..aT with T >= 1")
        mags = np.abs(c)
        if mags.max() > 1.0 + SP_COEFF_SLACK:
            raise DomainError("coefficient modulus exceeds 1; not a disk self-map")
        head = mags[0]
        if mags[1:].max(initial=0.0) > 1.0 - head * head + SP_COEFF_SLACK:
            raise DomainError("coefficients violate the |a_n| <= 1 - |a_0|**2 bound")
        if not (0.0 <= self.tail_bound <= 1.0):
            raise DomainError("tail bound must lie in [0, 1]")
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    def __repr__(self):  # keep reprs short; coefficient arrays can be huge
        return (f"BoundedFunction(tag={self.family_tag!r}, "
                f"T={self.truncation_order}, tail_bound={self.tail_bound:.3g})")


@dataclass(frozen=True)
class InnerMap:
    """The monomial inner map z -> z**m."""

    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, (int, np.integer)) or self.exponent < 1:
            raise DomainError("inner-map exponent must be a positive integer")


def _check_a(a: float) -> float:
    a = float(a)
    if not 0.0 <= a < 1.0:
        raise DomainError("family parameter must lie in [0, 1)")
    return a


def _moebius_order(a: float) -> int:
    if a == 0.0:
        return 1
    t = math.log(_MOEBIUS_TAIL_TARGET / (1.0 - a * a)) / math.log(a)
    return int(min(max(64, math.ceil(t)), T_MAX))


def moebius_plus(a: float) -> BoundedFunction:
    """The automorphism (z + a) / (1 + a z)."""
    a = _check_a(a)
    if a == 0.0:
        return BoundedFunction(np.array([0.0, 1.0]), 0.0, "moebius_plus(0)")
    T = _moebius_order(a)
    coeffs = np.empty(T + 1, dtype=complex)
    coeffs[0] = a
    coeffs[1:] = (1.0 - a * a) * np.power(-a, np.arange(T, dtype=float))
    return BoundedFunction(coeffs, (1.0 - a * a) * a ** T, f"moebius_plus({a})")


def moebius_minus(a: float) -> BoundedFunction:
    """The automorphism (a - z) / (1 - a z)."""
    a = _check_a(a)
    if a == 0.0:
        return BoundedFunction(np.array([0.0, -1.0]), 0.0, "moebius_minus(0)")
    T = _moebius_order(a)
    coeffs = np.empty(T + 1, dtype=complex)
    coeffs[0] = a
    coeffs[1:] = -(1.0 - a * a) * np.power(a, np.arange(T, dtype=float))
    return BoundedFunction(coeffs, (1.0 - a * a) * a ** T, f"moebius_minus({a})")


def schwarz_moebius(a: float) -> BoundedFunction:
    """The Schwarz-class extremal z * (a - z) / (1 - a z)."""
    a = _check_a(a)
    if a == 0.0:
        return BoundedFunction(np.array([0.0, 0.0, -1.0]), 0.0, "schwarz_moebius(0)")
    T = _moebius_order(a)
    coeffs = np.zeros(T + 2, dtype=complex)
    coeffs[1] = a
    coeffs[2:] = -(1.0 - a * a) * np.power(a, np.arange(T, dtype=float))
    return BoundedFunction(coeffs, (1.0 - a * a) * a ** T, f"schwarz_moebius({a})")


def _blaschke_factor(zero: complex) -> np.ndarray:
    """Taylor coefficients of (zero - z) / (1 - conj(zero) z), trimmed
    where the geometric decay makes further terms numerically silent."""
    mag = abs(zero)
    if mag == 0.0:
        return np.array([0.0, -1.0], dtype=complex)
    length = min(BLASCHKE_ORDER + 1,
                 max(2, math.ceil(math.log(1e-25) / math.log(mag)) + 2))
    c = np.empty(length, dtype=complex)
    c[0] = zero
    c[1:] = (mag * mag - 1.0) * np.conj(zero) ** np.arange(length - 1, dtype=float)
    return c


def blaschke(zeros, rotation: complex = 1.0) -> BoundedFunction:
    """Finite Blaschke product with the given zeros and unimodular rotation."""
    zeros = np.asarray(zeros, dtype=complex)
    if zeros.ndim != 1 or not 1 <= zeros.size <= MAX_BLASCHKE_DEGREE:
        raise DomainError(f"need between 1 and {MAX_BLASCHKE_DEGREE} zeros")
    if np.any(np.abs(zeros) > BLASCHKE_ZERO_RADIUS + 1e-12):
        raise DomainError(f"Blaschke zeros must satisfy |z| <= {BLASCHKE_ZERO_RADIUS}")
    rot = complex(rotation)
    if abs(rot) == 0.0:
        raise DomainError("rotation must be nonzero")
    rot /= abs(rot)
    prod = np.array([1.0 + 0.0j])
    for zero in zeros:
        prod = np.convolve(prod, _blaschke_factor(zero))[: BLASCHKE_ORDER + 1]
    # pad to the full truncation order: the trimmed entries are certified
    # (numerically) zero, which keeps the generic tail bound of 1 harmless
    coeffs = np.zeros(BLASCHKE_ORDER + 1, dtype=complex)
    coeffs[: prod.size] = rot * prod
    return BoundedFunction(coeffs, 1.0, f"blaschke(deg={zeros.size})")


def random_blaschke(degree: int, seed: int) -> BoundedFunction:
    """Seeded random Blaschke product; zeros uniform in |z| <= 0.9."""
    if not 1 <= degree <= MAX_BLASCHKE_DEGREE:
        raise DomainError(f"degree must lie in 1..{MAX_BLASCHKE_DEGREE}")
    rng = np.random.default_rng(seed)
    radii = BLASCHKE_ZERO_RADIUS * np.sqrt(rng.uniform(size=degree))
    angles = rng.uniform(0.0, 2.0 * math.pi, size=degree)
    rotation = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
    return blaschke(radii * np.exp(1j * angles), rotation)


def multiply_by_z(f: BoundedFunction) -> BoundedFunction:
    """The Schwarz function z * f(z)."""
    coeffs = np.concatenate([[0.0 + 0.0j], f.coeffs])
    return BoundedFunction(coeffs, f.tail_bound, f"z*{f.family_tag}")


def _eval_points(z) -> np.ndarray:
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(zs) > EVAL_EDGE):
        raise DomainError(f"evaluation point outside |z| <= {EVAL_EDGE}")
    return zs


def _eval_cutoff(f: BoundedFunction, amax: float) -> int:
    size = f.coeffs.size
    if amax <= 0.0:
        return 1
    cut = math.ceil(math.log(_EVAL_NEGLIGIBLE * (1.0 - amax)) / math.log(amax)) + 8
    return min(size, max(2, cut))


def evaluate(f: BoundedFunction, z):
    """Series value of f at z (scalar or 1-d array), |z| <= 1 - 1e-6.

    Absolute error is at most tail_bound * |z|**(T+1) / (1 - |z|) plus the
    numerically silent terms dropped below 1e-19.
    """
    zs = _eval_points(z)
    n_eff = _eval_cutoff(f, float(np.abs(zs).max()))
    powers = np.power(zs[None, :], np.arange(n_eff, dtype=float)[:, None])
    vals = f.coeffs[:n_eff] @ powers
    return complex(vals[0]) if np.ndim(z) == 0 else vals


def eval_derivative(f: BoundedFunction, z):
    """Series value of f' at z via coefficient differentiation."""
    zs = _eval_points(z)
    n_eff = max(2, _eval_cutoff(f, float(np.abs(zs).max())))
    ns = np.arange(1, n_eff, dtype=float)
    powers = np.power(zs[None, :], (ns - 1.0)[:, None])
    vals = (ns * f.coeffs[1:n_eff]) @ powers
    return complex(vals[0]) if np.ndim(z) == 0 else vals


def compose_inner(f: BoundedFunction, w: InnerMap) -> BoundedFunction:
    """The series of f(z**m): coefficient m*n carries a_n."""
    m = w.exponent
    if m == 1:
        return f
    out = np.zeros(m * f.truncation_order + 1, dtype=complex)
    out[::m] = f.coeffs
    return BoundedFunction(out, f.tail_bound, f"{f.family_tag}(z^{m})")
