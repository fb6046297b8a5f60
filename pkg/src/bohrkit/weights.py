"""Weight sequences with certified (overestimating) tails.

Two kinds are supported:

* ``power``: the classical basis ``w_n(r) = r**n``.  Tails have exact
  closed forms.
* ``scaled_power``: ``w_n(r) = c_n * r**n`` with a declared geometric
  dominator ``c_n <= C * rho**n``.  Beyond the stored coefficient list the
  dominator itself is used, so every tail is a certified overestimate.

Overestimating tails is the conservative direction: the radius equations
consume tails negatively, so reported radii can only shrink.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError

R_EDGE = 1.0 - 1e-6
MAX_COEFFS = 4096

# absolute size below which a dominated term cannot affect 1e-12 contracts
_NEGLIGIBLE = 1e-18

POWER = "power"
SCALED_POWER = "scaled_power"


def _as_r(r) -> np.ndarray:
    rs = np.atleast_1d(np.asarray(r, dtype=float))
    if rs.size == 0:
        raise DomainError("empty radius grid")
    if np.any(rs < 0.0) or np.any(rs > R_EDGE):
        raise DomainError(f"radius outside [0, {R_EDGE}]")
    return rs


def _as_n(n, minimum: int) -> np.ndarray:
    ns = np.atleast_1d(np.asarray(n))
    if not np.issubdtype(ns.dtype, np.integer):
        if not np.all(ns == np.floor(ns)):
            raise DomainError("index must be an integer")
        ns = ns.astype(int)
    if np.any(ns < minimum):
        raise DomainError(f"index must be >= {minimum}")
    return ns


def _is_scalar(x) -> bool:
    return np.ndim(x) == 0


def _squeeze(out: np.ndarray, n_scalar: bool, r_scalar: bool):
    if n_scalar and r_scalar:
        return float(out[0, 0])
    if n_scalar:
        return out[0]
    if r_scalar:
        return out[:, 0]
    return out


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """A sequence of nonnegative weight functions on [0, 1).

    Construct through :func:`power`, :func:`scaled_power` or
    :func:`from_json` rather than directly.
    """

    kind: str
    coeffs: np.ndarray | None = None
    rho: float = 1.0
    C: float = 1.0

    def __post_init__(self):
        if self.kind not in (POWER, SCALED_POWER):
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.kind == SCALED_POWER:
            c = np.asarray(self.coeffs, dtype=float)
            if c.ndim != 1 or c.size < 1:
                raise DomainError("scaled_power needs a 1-d coefficient list")
            if c.size > MAX_COEFFS:
                raise DomainError(f"coefficient list longer than {MAX_COEFFS}")
            if np.any(c < 0.0):
                raise DomainError("weight coefficients must be nonnegative")
            if not (0.0 < self.rho <= 1.0):
                raise DomainError("rho must lie in (0, 1]")
            if self.C < 0.0:
                raise DomainError("dominator constant must be nonnegative")
            bound = self.C * self.rho ** np.arange(c.size)
            if np.any(c > bound + 1e-12):
                raise DomainError("coefficients exceed the declared dominator C*rho**n")
            object.__setattr__(self, "coeffs", c)

    # -- basic descriptors ------------------------------------------------

    def ratio(self, r: float) -> float:
        """Geometric ratio bounding w_{n+1}/w_n from above at radius r."""
        return float(r) if self.kind == POWER else self.rho * float(r)

    @property
    def dominator(self) -> float:
        return 1.0 if self.kind == POWER else self.C

    def phi0(self, r):
        return self.weight_at(0, r)

    # -- public operations ------------------------------------------------

    def weight_at(self, n, r):
        """The n-th weight at radius r.  Broadcasts over 1-d n and r."""
        ns, rs = _as_n(n, 0), _as_r(r)
        out = self._weight2(ns, rs)
        return _squeeze(out, _is_scalar(n), _is_scalar(r))

    def tail(self, N, r):
        """Certified overestimate of the weight mass from index N on."""
        Ns, rs = _as_n(N, 0), _as_r(r)
        out = self._tail2(Ns, rs, weighted=False)
        return _squeeze(out, _is_scalar(N), _is_scalar(r))

    def weighted_tail(self, N, r):
        """Certified overestimate of ``sum_{n>=N} (n+1) w_n(r)``."""
        Ns, rs = _as_n(N, 1), _as_r(r)
        out = self._tail2(Ns, rs, weighted=True)
        return _squeeze(out, _is_scalar(N), _is_scalar(r))

    # -- 2-d internals (shape: len(ns) x len(rs)) -------------------------

    def _coeff_eff(self, ns: np.ndarray) -> np.ndarray:
        """Effective series coefficient: stored value inside the list, the
        dominator bound beyond it."""
        if self.kind == POWER:
            return np.ones(ns.shape)
        L = self.coeffs.size
        inside = ns < L
        out = np.where(inside, self.coeffs[np.minimum(ns, L - 1)], 0.0)
        beyond = ~inside
        if np.any(beyond):
            out = out + np.where(beyond, self.C * self.rho ** ns.astype(float), 0.0)
        return out

    def _weight2(self, ns: np.ndarray, rs: np.ndarray) -> np.ndarray:
        powers = np.power(rs[None, :], ns[:, None].astype(float))
        return self._coeff_eff(ns)[:, None] * powers

    def _geom_tail(self, starts: np.ndarray, x: np.ndarray, weighted: bool) -> np.ndarray:
        """Tail of the dominating geometric series from the given start
        indices; starts broadcasts against x."""
        s = starts.astype(float)
        with np.errstate(divide="ignore"):
            lead = np.where(x > 0.0, self.dominator * x ** s, 0.0)
            lead = np.where((x == 0.0) & (s == 0.0), self.dominator, lead)
        if weighted:
            return lead * ((s + 1.0) - s * x) / (1.0 - x) ** 2
        return lead / (1.0 - x)

    def _tail2(self, Ns: np.ndarray, rs: np.ndarray, weighted: bool) -> np.ndarray:
        if self.kind == POWER:
            return self._geom_tail(Ns[:, None], rs[None, :], weighted)
        x = self.rho * rs
        L = self.coeffs.size
        L_eff = L
        xmax = x.max()
        if self.C == 0.0:
            L_eff = L
        elif 0.0 < xmax < 1.0:
            # beyond this index the dominated terms are numerically silent
            cut = math.log(_NEGLIGIBLE * (1.0 - xmax) / max(self.C, _NEGLIGIBLE))
            L_eff = min(L, max(1, math.ceil(cut / math.log(xmax)) + 8))
        n = np.arange(L_eff)
        M = self.coeffs[:L_eff, None] * np.power(rs[None, :], n[:, None].astype(float))
        if weighted:
            M = M * (n + 1.0)[:, None]
        suffix = np.zeros((L_eff + 1, rs.size))
        suffix[:L_eff] = np.cumsum(M[::-1], axis=0)[::-1]
        clipped = np.minimum(Ns, L_eff)
        exact = suffix[clipped]
        starts = np.maximum(Ns, L_eff)[:, None]
        inside = (Ns < L_eff)[:, None]
        geom_from_cut = self._geom_tail(np.full_like(Ns, L_eff)[:, None], x[None, :], weighted)
        geom_beyond = self._geom_tail(starts, x[None, :], weighted)
        return np.where(inside, exact + geom_from_cut, geom_beyond)


def power() -> WeightSequence:
    """The classical power-weight sequence r**n."""
    return WeightSequence(POWER)


def scaled_power(coeffs, rho: float = 1.0, C: float = 1.0) -> WeightSequence:
    """Weights c_n * r**n with declared dominator c_n <= C * rho**n."""
    return WeightSequence(SCALED_POWER, coeffs=np.asarray(coeffs, dtype=float),
                          rho=float(rho), C=float(C))


def from_json(source) -> WeightSequence:
    """Load a weight sequence from a JSON document or file path.

    Expected schema::

        {"kind": "scaled_power", "coeffs": [...], "rho": 0.9, "C": 2.0}

    ``{"kind": "power"}`` is accepted as well.
    """
    if isinstance(source, (str, Path)):
        obj = json.loads(Path(source).read_text())
    else:
        obj = source
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DomainError("weight JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == POWER:
        return power()
    if kind == SCALED_POWER:
        try:
            return scaled_power(obj["coeffs"], obj.get("rho", 1.0), obj.get("C", 1.0))
        except KeyError as exc:
            raise DomainError(f"weight JSON missing field {exc}") from exc
    raise DomainError(f"unknown weight kind {kind!r}")
