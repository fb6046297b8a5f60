"""Radius-defining functions and certified minimal positive roots.

Each family's Psi function is arranged so that Psi(0) > 0; the reported
radius is the first sign change found by a fixed-step scan, sharpened by
bisection to a bracket of width 1e-13.  The bracket, the signed values at
its ends and the scan step are returned as a certificate.

For the theorem-6 family the sign is flipped relative to the source
convention (which is positive past the radius) so that the positive-at-0
convention is uniform across families.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import weights as wt
from .errors import DomainError, NoRootError
from .functionals import ALL_FAMILIES, FunctionalParams

SCAN_STEP = 1e-3
BRACKET_WIDTH = 1e-13

_NEEDS_WEIGHTS = frozenset({"psi1", "psi2", "psi3", "psi4", "classical_c"})


@dataclass(frozen=True)
class RadiusProblem:
    """One radius family plus its parameters and (where used) weights."""

    family: str
    params: FunctionalParams = FunctionalParams()
    weights: wt.WeightSequence | None = None

    def __post_init__(self):
        if self.family not in ALL_FAMILIES:
            raise DomainError(f"unknown radius family {self.family!r}")
        if self.family in _NEEDS_WEIGHTS and self.weights is None:
            raise DomainError(f"family {self.family} needs a weight sequence")
        if self.family == "psi5_t6":
            if self.params.q < 2 or not 0 < self.params.m < self.params.q:
                raise DomainError("psi5_t6 needs q >= 2 and 0 < m < q")


@dataclass(frozen=True)
class RootCertificate:
    """A bracketed minimal positive root with verified sign change."""

    radius: float
    bracket_lo: float
    bracket_hi: float
    psi_lo: float
    psi_hi: float
    scan_step: float


def psi_eval(prob: RadiusProblem, r):
    """The family's radius function, positive in the validity regime."""
    rs = wt._as_r(r)
    pm, w = prob.params, prob.weights
    m, p, lam, q, n = pm.m, pm.p, pm.lam, pm.q, pm.n_lacunary
    x = rs ** m
    fam = prob.family
    if fam == "psi1":
        out = p * (1.0 - x) / (1.0 + x) * w.weight_at(0, rs) - 2.0 * w.tail(1, rs)
    elif fam == "psi2":
        out = 0.5 * p * w.weight_at(0, rs) - w.tail(1, rs) - x / (1.0 - x)
    elif fam == "psi3":
        out = 0.5 * p * w.weight_at(0, rs) - w.weighted_tail(1, rs)
    elif fam == "psi4":
        out = (0.5 * p * w.weight_at(0, rs) - w.weighted_tail(1, rs)
               - x * (2.0 - x) / (1.0 - x) ** 2)
    elif fam == "psi5_t5":
        out = p * (1.0 - x) / (1.0 + x) - 2.0 * lam * rs / (1.0 - rs)
    elif fam == "psi5_t6":
        # sign flipped relative to the source convention, see module docstring
        out = p * (1.0 - x) / (1.0 + x) - 2.0 * lam * rs ** (q + m) / (1.0 - rs ** q)
    elif fam == "classical_alpha":
        out = (1.0 - rs) * (1.0 - x) - 2.0 * rs * (1.0 + x)
    elif fam == "classical_beta":
        out = 1.0 - 2.0 * rs - x
    elif fam == "classical_zeta":
        out = 1.0 - 3.0 * rs - x * (3.0 - 5.0 * rs)
    elif fam == "classical_eta":
        out = 1.0 - 2.0 * rs - x * (2.0 - 3.0 * rs)
    elif fam == "classical_c":
        out = w.weight_at(0, rs) - 2.0 * w.weighted_tail(1, rs)
    elif fam == "classical_d":
        out = (1.0 - rs - (2.0 * lam + 1.0) * rs ** n
               - (2.0 * lam - 1.0) * rs ** (n + 1))
    else:  # pragma: no cover - guarded by RadiusProblem
        raise DomainError(f"unknown radius family {fam!r}")
    return float(out[0]) if np.ndim(r) == 0 else out


def solve_radius(prob: RadiusProblem, scan_step: float = SCAN_STEP,
                 bracket_width: float = BRACKET_WIDTH) -> RootCertificate:
    """Certified minimal positive root of the family's Psi function.

    Scans upward from 0 with the given step for the first sign change,
    then bisects.  Raises :class:`NoRootError` when Psi keeps its sign on
    the whole evaluation domain.
    """
    grid = np.arange(0.0, wt.R_EDGE, scan_step)
    if grid[-1] < wt.R_EDGE:
        grid = np.concatenate([grid, [wt.R_EDGE]])
    vals = psi_eval(prob, grid)
    flip = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
    flip = flip[np.sign(vals[flip]) != np.sign(vals[flip + 1])]
    if flip.size == 0:
        raise NoRootError(f"no sign change of {prob.family} on (0, {wt.R_EDGE})")
    i = int(flip[0])
    lo, hi = float(grid[i]), float(grid[i + 1])
    flo, fhi = float(vals[i]), float(vals[i + 1])
    while hi - lo > bracket_width:
        mid = 0.5 * (lo + hi)
        fm = float(psi_eval(prob, mid))
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return RootCertificate(0.5 * (lo + hi), lo, hi, flo, fhi, scan_step)


def classical_crosscheck(m: int, p_case: int):
    """Pair each classical polynomial radius with its Psi specialization.

    Returns a list of ``(classical_family, classical_root, psi_root)``
    triples; the contract is agreement to 1e-10.  The theorem-C and
    theorem-D pairs do not depend on m and are attached to the m = 1,
    p_case = 1 call.
    """
    if not 1 <= m <= 8:
        raise DomainError("m must lie in 1..8")
    if p_case not in (1, 2):
        raise DomainError("p_case must be 1 or 2")
    pw = wt.power()
    p = float(p_case)
    pairs = [("classical_alpha" if p_case == 1 else "classical_beta", "psi1"),
             ("classical_zeta" if p_case == 1 else "classical_eta", "psi2")]
    out = []
    for classical, psi in pairs:
        params = FunctionalParams(m=m, p=p)
        rc = solve_radius(RadiusProblem(classical, params)).radius
        rp = solve_radius(RadiusProblem(psi, params, pw)).radius
        out.append((classical, rc, rp))
    if m == 1 and p_case == 1:
        # theorem C's radius equation is the p = 1 specialization (its first
        # functional term carries |a_1| to the first power)
        rc = solve_radius(RadiusProblem("classical_c", FunctionalParams(), pw)).radius
        rp = solve_radius(RadiusProblem("psi3", FunctionalParams(p=1.0), pw)).radius
        out.append(("classical_c", rc, rp))
        params = FunctionalParams(m=1, p=1.0, lam=1.0, n_lacunary=1)
        rc = solve_radius(RadiusProblem("classical_d", params)).radius
        rp = solve_radius(RadiusProblem("psi5_t5", params)).radius
        out.append(("classical_d", rc, rp))
    return out
