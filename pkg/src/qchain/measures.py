"""Entanglement measures built on the partial-transpose trace norm, plus
the pure-state Schmidt fast paths for concurrence-family quantities.

Mixed states route through a dense partial transpose and Hermitian
eigendecomposition; pure states use closed forms in their Schmidt
coefficients. Convex-roof extensions are evaluated only on pure inputs,
where they coincide with the plain measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .states import PSD_TOL, DensityMatrix, PureState
from .tensor import partial_transpose, trace_norm_hermitian

State = DensityMatrix | PureState

MEASURE_KINDS = ("negativity", "log_negativity", "ratio", "alpha_ratio",
                 "concurrence", "g_concurrence", "scp", "custom_f")

F_GRID_POINTS = 1024
F_GRID_MAX = 100.0


@dataclass(frozen=True)
class MeasureSpec:
    """Selects a measure; alpha applies to alpha_ratio, f to custom_f."""

    kind: str
    alpha: float = 1.0
    f: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}; choose from {MEASURE_KINDS}")
        if self.kind == "alpha_ratio" and not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.kind == "custom_f" and self.f is None:
            raise ValueError("custom_f requires a function handle")


@dataclass(frozen=True)
class MeasureResult:
    measure: str
    value: float
    trace_norm: float
    ppt: bool
    truncation_deficit: float
    alpha: float | None = None

    def to_json(self) -> dict:
        out = {"measure": self.measure, "value": self.value, "trace_norm": self.trace_norm,
               "ppt": self.ppt, "truncation_deficit": self.truncation_deficit}
        if self.alpha is not None:
            out["alpha"] = self.alpha
        return out


def pt_trace_norm(state: State) -> float:
    """Trace norm of the partial transpose across the state's A|B split.

    For a pure state this is (sum_i sqrt(lambda_i))^2 in its Schmidt
    coefficients; for a mixed state the dense spectrum is summed.
    """
    if isinstance(state, PureState):
        lam = state.schmidt().coefficients
        return float(np.sum(np.sqrt(lam)) ** 2)
    pt = partial_transpose(state.matrix, state.layout)
    return trace_norm_hermitian(pt)


def negativity(state: State, psd_tol: float = PSD_TOL) -> float:
    """(|rho^T_A|_1 - 1)/2, clamped to 0 when within psd_tol of zero."""
    n = (pt_trace_norm(state) - 1.0) / 2.0
    return 0.0 if -psd_tol < n < psd_tol else max(n, 0.0)


def log_negativity(state: State, base: float = 2.0) -> float:
    """log of the partial-transpose trace norm; base 2 by default.

    Some conventions use the natural log (under which a two-mode squeezed
    vacuum has value exactly 2r); pass base=math.e for that reading. The
    trace norm itself is convention-free and is the quantity reports carry.
    """
    return math.log(pt_trace_norm(state), base)


def is_ppt(state: State, psd_tol: float = PSD_TOL) -> bool:
    """True when the partial transpose is positive semidefinite."""
    if isinstance(state, PureState):
        # Pure states are PPT exactly when they are product states.
        return negativity(state, psd_tol) == 0.0
    pt = partial_transpose(state.matrix, state.layout)
    w = np.linalg.eigvalsh((pt + pt.conj().T) / 2)
    return bool(w[0] >= -psd_tol)


def ratio_negativity(state: State, psd_tol: float = PSD_TOL) -> float:
    """N/(N+1) = (|rho^T_A|_1 - 1)/(|rho^T_A|_1 + 1), bounded in [0, 1)."""
    n = negativity(state, psd_tol)
    return n / (n + 1.0)


def alpha_ratio_negativity(state: State, alpha: float, psd_tol: float = PSD_TOL) -> float:
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    return ratio_negativity(state, psd_tol) ** alpha


def _check_distribution(lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    if lam.ndim != 1 or lam.size == 0 or np.any(lam < 0):
        raise ValueError("Schmidt coefficients must be a non-negative vector")
    if abs(float(lam.sum()) - 1.0) > 1e-10:
        raise ValueError(f"Schmidt coefficients must sum to 1, got {lam.sum()!r}")
    return lam


def negativity_pure(lam) -> float:
    """((sum sqrt(lambda))^2 - 1)/2 from Schmidt coefficients."""
    lam = _check_distribution(lam)
    return (float(np.sum(np.sqrt(lam)) ** 2) - 1.0) / 2.0


def ratio_negativity_pure(lam) -> float:
    """((sum sqrt(lambda))^2 - 1) / ((sum sqrt(lambda))^2 + 1)."""
    lam = _check_distribution(lam)
    s = float(np.sum(np.sqrt(lam)) ** 2)
    return (s - 1.0) / (s + 1.0)


def concurrence_pure(psi: PureState) -> float:
    """sqrt(2 (1 - tr rho_A^2)) for a bipartite pure state."""
    lam = psi.schmidt().coefficients
    purity = float(np.sum(lam ** 2))
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity)))


def g_concurrence_pure(lam, d: int) -> float:
    """d (lambda_0 ... lambda_{d-1})^(1/d); 0 if any coefficient vanishes.

    Vanishing coefficients are the continuous extension of the geometric
    mean; strictly the formula assumes all lambda_j > 0.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.size != d:
        raise ValueError(f"need exactly d={d} coefficients, got {lam.size}")
    _check_distribution(lam)
    if np.any(lam == 0):
        return 0.0
    return float(d * np.exp(np.mean(np.log(lam))))


def scp_pure_qubit(lam) -> float:
    """Maximum probability of converting a 2-qubit pure state to a singlet
    by local operations: twice the smaller Schmidt coefficient."""
    lam = _check_distribution(lam)
    if lam.size > 2:
        raise ValueError(f"singlet conversion probability needs a 2-qubit Schmidt pair, got {lam.size} coefficients")
    return 2.0 * float(np.min(lam)) if lam.size == 2 else 0.0


@dataclass(frozen=True)
class FValidation:
    ok: bool
    zero_defect: float
    first_violation: tuple[float, float] | None
    message: str


def default_f_grid() -> np.ndarray:
    """0 followed by a log-spaced grid up to F_GRID_MAX."""
    return np.concatenate([[0.0], np.geomspace(1e-9, F_GRID_MAX, F_GRID_POINTS - 1)])


def validate_f(f: Callable[[float], float], samples=None) -> FValidation:
    """Check f(0) = 0 (within 1e-12) and strict increase on a sample grid.

    The monotonicity check is grid-based and therefore advisory; f(0) = 0
    is checked exactly at the point.
    """
    grid = default_f_grid() if samples is None else np.asarray(samples, dtype=float)
    vals = np.array([float(f(x)) for x in grid])
    if not np.all(np.isfinite(vals)):
        bad = float(grid[np.argmax(~np.isfinite(vals))])
        return FValidation(False, math.inf, (bad, bad), f"f({bad}) is not finite")
    zero_defect = abs(float(f(0.0)))
    if zero_defect > 1e-12:
        return FValidation(False, zero_defect, (0.0, 0.0), f"f(0) = {f(0.0)!r} != 0")
    diffs = np.diff(vals)
    if np.any(diffs <= 0):
        i = int(np.argmax(diffs <= 0))
        return FValidation(False, zero_defect, (float(grid[i]), float(grid[i + 1])),
                           f"f is not strictly increasing on ({grid[i]!r}, {grid[i + 1]!r})")
    return FValidation(True, zero_defect, None, "ok")


def f_negativity(f: Callable[[float], float], state: State, psd_tol: float = PSD_TOL) -> float:
    """f(N(rho)) for a validated strictly-increasing f with f(0) = 0."""
    report = validate_f(f)
    if not report.ok:
        raise ValueError(f"invalid f for f-negativity: {report.message}")
    return float(f(negativity(state, psd_tol)))


def compose_ratio_tensor(chis) -> float:
    """Ratio negativity of a tensor product of states with the given ratio
    negativities: the odds (1+chi)/(1-chi) multiply."""
    odds = 1.0
    for c in chis:
        if not (0 <= c < 1):
            raise ValueError(f"ratio negativity values must lie in [0, 1), got {c}")
        odds *= (1.0 + c) / (1.0 - c)
    return (odds - 1.0) / (odds + 1.0)


def evaluate_measure(spec: MeasureSpec, state: State, psd_tol: float = PSD_TOL) -> MeasureResult:
    """Dispatch a measure evaluation and package the standard report fields."""
    t = pt_trace_norm(state)
    n = (t - 1.0) / 2.0
    n = 0.0 if -psd_tol < n < psd_tol else max(n, 0.0)
    ppt = is_ppt(state, psd_tol)
    alpha = None
    if spec.kind == "negativity":
        value = n
    elif spec.kind == "log_negativity":
        value = math.log2(t)
    elif spec.kind == "ratio":
        value = n / (n + 1.0)
    elif spec.kind == "alpha_ratio":
        value = (n / (n + 1.0)) ** spec.alpha
        alpha = spec.alpha
    elif spec.kind == "concurrence":
        if not isinstance(state, PureState):
            raise ValueError("concurrence is only evaluated on pure states (convex roof out of scope)")
        value = concurrence_pure(state)
    elif spec.kind == "g_concurrence":
        if not isinstance(state, PureState):
            raise ValueError("G-concurrence is only evaluated on pure states (convex roof out of scope)")
        lam = state.schmidt().coefficients
        d = min(state.layout.dim_a, state.layout.dim_b)
        value = g_concurrence_pure(np.concatenate([lam, np.zeros(d - lam.size)]) if lam.size < d else lam, d)
    elif spec.kind == "scp":
        if not isinstance(state, PureState):
            raise ValueError("singlet conversion probability is only evaluated on pure states")
        sd = state.schmidt()
        lam = sd.coefficients[:2] if sd.rank <= 2 else None
        if lam is None or state.layout.dim_a != 2 or state.layout.dim_b != 2:
            raise ValueError("singlet conversion probability needs a 2-qubit pure state")
        value = scp_pure_qubit(lam / lam.sum())
    elif spec.kind == "custom_f":
        value = f_negativity(spec.f, state, psd_tol)
    else:  # pragma: no cover - guarded by MeasureSpec
        raise ValueError(spec.kind)
    return MeasureResult(measure=spec.kind, value=float(value), trace_norm=float(t),
                         ppt=ppt, truncation_deficit=state.truncation_deficit, alpha=alpha)
