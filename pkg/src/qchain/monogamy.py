"""Monogamy machinery: residuals of the one-against-rest inequality for
powered ratio negativity on multipartite pure states, the auxiliary
function behind the power threshold, a scalar grid checker for the
two-term inequality, and seeded Monte-Carlo scans.

Mixed multipartite inputs are rejected: on mixed states the inequality
involves a convex-roof extension whose evaluation is out of scope, while
on pure states the extension coincides with the plain measure.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .measures import alpha_ratio_negativity, negativity
from .states import DensityMatrix, PureState, random_haar_pure, substream
from .tensor import SubsystemLayout, partial_trace

VIOLATION_TOL = 1e-9
HISTOGRAM_BINS = 64
HISTOGRAM_RANGE = (-0.1, 1.0)

# Families the power threshold is proven for: any number of qubits, or
# three parties with dimensions (2, 2, 3) or (2, 2, 2^m).
def family_supported(dims) -> bool:
    dims = tuple(int(d) for d in dims)
    if len(dims) >= 3 and all(d == 2 for d in dims):
        return True
    if len(dims) == 3 and dims[0] == 2 and dims[1] == 2:
        d = dims[2]
        if d == 3:
            return True
        while d % 2 == 0:
            d //= 2
        return d == 1
    return False


def alpha_threshold() -> float:
    """ln 2 / ln(3(sqrt 2 - 1)), the smallest power at which the
    one-against-rest inequality is guaranteed on the covered families."""
    return math.log(2.0) / math.log(3.0 * (math.sqrt(2.0) - 1.0))


def aux_g(r: float, u: float) -> float:
    """2 * log base ((1+r)u / (1+ru)) of u.

    Governs where [ (1+r)u / (1+ru) ]^alpha <= u^2 starts holding; the
    power threshold equals aux_g(1/sqrt2, 1/sqrt2).
    """
    if not (0.0 < u < 1.0):
        raise ValueError(f"u must lie in (0, 1), got {u}")
    if r <= 0.0:
        raise ValueError(f"r must be > 0, got {r}")
    base = (1.0 + r) * u / (1.0 + r * u)
    if abs(base - 1.0) < 1e-14:
        raise ValueError(f"logarithm base degenerates to 1 at (r={r}, u={u})")
    return 2.0 * math.log(u) / math.log(base)


@dataclass(frozen=True)
class MonogamyReport:
    dims: tuple[int, ...]
    party_a: tuple[int, ...]
    measure: str
    alpha: float
    lhs: float
    rhs_terms: tuple[float, ...]
    residual: float
    satisfied: bool

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "partyA": list(self.party_a),
                "measure": self.measure, "alpha": self.alpha, "lhs": self.lhs,
                "rhs_terms": list(self.rhs_terms), "residual": self.residual,
                "verdict": "satisfied" if self.satisfied else "violated"}


def ckw_residual(psi: PureState, measure: str = "ratio", alpha: float = 1.0,
                 party_a=(0,), violation_tol: float = VIOLATION_TOL) -> MonogamyReport:
    """lhs - sum(rhs) for E^alpha across A|rest versus the pairwise terms.

    psi must be pure with at least 3 parties. The left side uses the
    Schmidt closed form on the A|rest split; each right-side term is the
    plain negativity-based value on the reduced two-party mixed state.
    """
    if isinstance(psi, DensityMatrix):
        raise ValueError("mixed multipartite states are unsupported (convex roof out of scope)")
    dims = psi.layout.dims
    if len(dims) < 3:
        raise ValueError(f"need at least 3 parties, got {len(dims)}")
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if measure not in ("ratio", "negativity"):
        raise ValueError(f"unsupported measure {measure!r}: monogamy residuals are negativity-based")
    party_a = tuple(sorted(set(int(i) for i in party_a)))
    if not party_a or len(party_a) >= len(dims):
        raise ValueError(f"party A {party_a} must be a strict non-empty subset of {len(dims)} parties")

    split = SubsystemLayout(dims, party_a)
    lam = psi.schmidt().coefficients if psi.layout.party_a == party_a else \
        PureState(psi.amplitudes, split, psi.truncation_deficit).schmidt().coefficients
    s = float(np.sum(np.sqrt(lam)) ** 2)
    n_lhs = max(0.0, (s - 1.0) / 2.0)
    lhs_base = n_lhs / (n_lhs + 1.0) if measure == "ratio" else n_lhs
    lhs = lhs_base ** alpha

    rho_full = psi.density_matrix()
    rhs_terms = []
    for b in split.party_b:
        keep = sorted(set(party_a) | {b})
        reduced = partial_trace(rho_full.matrix, psi.layout, keep)
        kept_dims = tuple(dims[i] for i in keep)
        kept_a = tuple(keep.index(i) for i in party_a)
        dm = DensityMatrix(reduced, SubsystemLayout(kept_dims, kept_a), _trusted=True)
        val = alpha_ratio_negativity(dm, alpha) if measure == "ratio" else negativity(dm) ** alpha
        rhs_terms.append(float(val))

    residual = lhs - sum(rhs_terms)
    return MonogamyReport(dims=dims, party_a=party_a, measure=measure, alpha=alpha,
                          lhs=float(lhs), rhs_terms=tuple(rhs_terms),
                          residual=float(residual), satisfied=residual >= -violation_tol)


def ckw_violation_state() -> PureState:
    """(|000> + |011> + sqrt(2)|110>)/2: three qubits whose pairwise ratio
    negativities are both 1/5 while the one-against-rest value is 1/3, so
    the unpowered inequality fails."""
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = 0.5
    amps[0b011] = 0.5
    amps[0b110] = math.sqrt(2) / 2
    return PureState(amps, SubsystemLayout((2, 2, 2), (0,)))


@dataclass(frozen=True)
class GridCheckReport:
    a: float
    b: float
    alpha: float
    grid_n: int
    max_violation: float
    witness: tuple[float, float] | None
    violation_count: int

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "alpha": self.alpha, "grid_n": self.grid_n,
                "max_violation": self.max_violation, "violation_count": self.violation_count,
                "witness": list(self.witness) if self.witness else None}


def check_ineq_xya_grid(a: float, b: float, alpha: float, grid_n: int = 500,
                        tol: float = 1e-12) -> GridCheckReport:
    """Scan [x/(x+1)]^a + [y/(y+1)]^a <= [c/(c+1)]^a, c = sqrt(x^2+y^2),
    on a grid_n x grid_n lattice over [0,a] x [0,b]; report the worst
    violation and a witness point."""
    if not (0.0 < a <= b):
        raise ValueError(f"need 0 < a <= b, got a={a}, b={b}")
    if grid_n < 100:
        raise ValueError(f"grid_n must be >= 100, got {grid_n}")
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    x = np.linspace(0.0, a, grid_n)
    y = np.linspace(0.0, b, grid_n)
    xx, yy = np.meshgrid(x, y, indexing="ij")
    cc = np.sqrt(xx ** 2 + yy ** 2)
    lhs = (xx / (xx + 1.0)) ** alpha + (yy / (yy + 1.0)) ** alpha
    rhs = (cc / (cc + 1.0)) ** alpha
    gap = lhs - rhs
    max_violation = float(np.max(gap))
    witness = None
    count = int(np.count_nonzero(gap > tol))
    if max_violation > tol:
        i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
        witness = (float(x[i]), float(y[j]))
    return GridCheckReport(a=a, b=b, alpha=alpha, grid_n=grid_n,
                           max_violation=max(0.0, max_violation),
                           witness=witness, violation_count=count)


@dataclass(frozen=True)
class ScanReport:
    dims: tuple[int, ...]
    samples: int
    alpha: float
    seed: int
    family_covered: bool
    min_residual: float
    violation_count: int
    histogram: tuple[int, ...]
    histogram_edges: tuple[float, ...]
    warning: str | None = None

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "samples": self.samples, "alpha": self.alpha,
                "seed": self.seed, "family_covered": self.family_covered,
                "min_residual": self.min_residual, "violation_count": self.violation_count,
                "histogram": list(self.histogram), "histogram_edges": list(self.histogram_edges),
                "warning": self.warning}


def _scan_threads() -> int:
    try:
        return max(1, int(os.environ.get("QCHAIN_THREADS", "1")))
    except ValueError:
        return 1


def sample_monogamy_scan(dims, samples: int, alpha: float, seed: int,
                         violation_tol: float = VIOLATION_TOL) -> ScanReport:
    """Residual statistics over Haar-random pure states of the given dims.

    Party A is subsystem 0. Each sample draws from its own (seed, index)
    substream, so results do not depend on execution order; aggregation
    (min / count / histogram) is order-independent. For three-qubit scans
    the known violating state is appended to the sample set. Unsupported
    dims families still run but the report carries a warning.
    """
    dims = tuple(int(d) for d in dims)
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    layout = SubsystemLayout(dims, (0,))
    covered = family_supported(dims)

    def residual_of(index: int) -> float:
        psi = random_haar_pure(layout, substream(seed, index))
        return ckw_residual(psi, "ratio", alpha, (0,), violation_tol).residual

    threads = _scan_threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            residuals = list(pool.map(residual_of, range(samples)))
    else:
        residuals = [residual_of(i) for i in range(samples)]
    if dims == (2, 2, 2):
        residuals.append(ckw_residual(ckw_violation_state(), "ratio", alpha, (0,)).residual)

    arr = np.asarray(residuals)
    hist, edges = np.histogram(np.clip(arr, *HISTOGRAM_RANGE),
                               bins=HISTOGRAM_BINS, range=HISTOGRAM_RANGE)
    return ScanReport(dims=dims, samples=samples, alpha=alpha, seed=seed,
                      family_covered=covered,
                      min_residual=float(arr.min()),
                      violation_count=int(np.count_nonzero(arr < -violation_tol)),
                      histogram=tuple(int(h) for h in hist),
                      histogram_edges=tuple(float(e) for e in edges),
                      warning=None if covered else
                      f"dims {dims} lie outside the families the power threshold is proven for")
