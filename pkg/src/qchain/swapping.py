"""Swapping rules for 1D chains and the characteristic length.

Three link kinds are supported, each with the measure that multiplies
under its optimal deterministic swapping protocol:

  qubit_pure  -- concurrence (singlet conversion probability also multiplies
                 under the probabilistic conversion scheme),
  qudit_pure  -- G-concurrence,
  tmsvs       -- ratio negativity (tanh of the squeezing parameter).

Chains are homogeneous; the end-to-end value is the product of per-hop
values and the characteristic length is -1/ln of the per-link value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .measures import ratio_negativity
from .states import TmsvsSpec, tmsvs_truncated

LINK_KINDS = ("qubit_pure", "qudit_pure", "tmsvs")

# Multiplicative measures per link kind; the first entry is the native one.
SUPPORTED_MEASURES = {
    "qubit_pure": ("concurrence", "scp"),
    "qudit_pure": ("g_concurrence",),
    "tmsvs": ("ratio", "alpha_ratio"),
}


@dataclass(frozen=True)
class LinkResource:
    """One link of a chain: its kind, Schmidt data or squeezing parameter,
    and the cached value of its kind's native measure."""

    kind: str
    schmidt: tuple[float, ...] | None = None
    d: int | None = None
    r: float | None = None
    native_value: float = field(default=None)

    def __post_init__(self):
        if self.kind not in LINK_KINDS:
            raise ValueError(f"unknown link kind {self.kind!r}")
        if self.native_value is None or not (0.0 <= self.native_value <= 1.0):
            raise ValueError(f"native measure value must lie in [0, 1], got {self.native_value}")

    def measure_value(self, measure: str, alpha: float = 1.0) -> float:
        """Value of a supported multiplicative measure on this link."""
        if measure not in SUPPORTED_MEASURES[self.kind]:
            raise ValueError(
                f"measure {measure!r} is not multiplicative under {self.kind} swapping; "
                f"supported: {SUPPORTED_MEASURES[self.kind]}")
        if measure == "scp":
            lam_min = min(self.schmidt)
            return 2.0 * lam_min
        if measure == "alpha_ratio":
            if not alpha > 0:
                raise ValueError(f"alpha must be > 0, got {alpha}")
            return self.native_value ** alpha
        return self.native_value


def qubit_link(lam=None, concurrence: float | None = None) -> LinkResource:
    """Pure 2-qubit link from a Schmidt pair or a target concurrence."""
    if (lam is None) == (concurrence is None):
        raise ValueError("give exactly one of lam or concurrence")
    if lam is None:
        if not (0.0 <= concurrence <= 1.0):
            raise ValueError(f"concurrence must lie in [0, 1], got {concurrence}")
        lam = canonical_qubit_schmidt(concurrence)
    lam = tuple(float(x) for x in lam)
    if len(lam) != 2 or any(x < 0 for x in lam) or abs(sum(lam) - 1.0) > 1e-10:
        raise ValueError(f"need a probability pair, got {lam}")
    c = 2.0 * math.sqrt(lam[0] * lam[1])
    return LinkResource(kind="qubit_pure", schmidt=lam, d=2, native_value=c)


def qudit_link(lam=None, d: int | None = None, g_concurrence: float | None = None) -> LinkResource:
    """Pure 2-qudit link from a Schmidt vector or a target G-concurrence."""
    if (lam is None) == (g_concurrence is None):
        raise ValueError("give exactly one of lam or g_concurrence")
    if lam is None:
        if d is None or d < 2:
            raise ValueError("qudit links need the local dimension d >= 2")
        lam = canonical_qudit_schmidt(g_concurrence, d)
    lam = tuple(float(x) for x in lam)
    d = len(lam) if d is None else int(d)
    if len(lam) != d or any(x < 0 for x in lam) or abs(sum(lam) - 1.0) > 1e-10:
        raise ValueError(f"need a probability vector of length d={d}, got {lam}")
    arr = np.asarray(lam)
    cg = 0.0 if np.any(arr == 0) else float(d * np.exp(np.mean(np.log(arr))))
    return LinkResource(kind="qudit_pure", schmidt=lam, d=d, native_value=cg)


def tmsvs_link(r: float) -> LinkResource:
    return LinkResource(kind="tmsvs", r=float(r), native_value=math.tanh(r))


def canonical_qubit_schmidt(concurrence: float) -> tuple[float, float]:
    """The Schmidt pair (1 +/- sqrt(1 - C^2))/2 realizing a concurrence."""
    root = math.sqrt(max(0.0, 1.0 - concurrence ** 2))
    return ((1.0 + root) / 2.0, (1.0 - root) / 2.0)


def canonical_qudit_schmidt(g_concurrence: float, d: int) -> tuple[float, ...]:
    """Geometric Schmidt vector lambda_i proportional to q^i matching a
    target G-concurrence.

    The swapping rule fixes only the measure value of the output; this
    one-parameter family supplies a deterministic representative. q is
    solved by bisection (the map q -> G-concurrence is strictly increasing
    from 0 to 1); the target 1 yields the uniform vector, and for d = 2
    the family coincides with the canonical qubit pair.
    """
    if not (0.0 <= g_concurrence <= 1.0):
        raise ValueError(f"G-concurrence must lie in [0, 1], got {g_concurrence}")
    if g_concurrence == 1.0:
        return tuple([1.0 / d] * d)
    if g_concurrence == 0.0:
        return tuple([1.0] + [0.0] * (d - 1))

    def cg_of(q: float) -> float:
        lam = q ** np.arange(d)
        lam = lam / lam.sum()
        return float(d * np.exp(np.mean(np.log(lam))))

    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if cg_of(mid) < g_concurrence:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12 * max(1.0, hi):
            break
    q = (lo + hi) / 2.0
    lam = q ** np.arange(d)
    lam = lam / lam.sum()
    return tuple(float(x) for x in lam)


def swap_tmsvs(r1: float, r2: float) -> TmsvsSpec:
    """Squeezing parameter of the swap output: tanh r_out = tanh r1 tanh r2.

    The output chi is the exact float product of the input chis.
    """
    if r1 <= 0 or r2 <= 0:
        raise ValueError("squeezing parameters must be > 0")
    chi = math.tanh(r1) * math.tanh(r2)
    return TmsvsSpec.from_chi(chi)


def swap_qubit_pure(link1: LinkResource, link2: LinkResource) -> LinkResource:
    """Deterministic qubit swap: concurrences multiply; the output carries
    the canonical Schmidt pair for the product concurrence."""
    if link1.kind != "qubit_pure" or link2.kind != "qubit_pure":
        raise ValueError(f"expected two qubit_pure links, got {link1.kind}, {link2.kind}")
    c = link1.native_value * link2.native_value
    return qubit_link(lam=canonical_qubit_schmidt(c))


def swap_qudit_gc(link1: LinkResource, link2: LinkResource) -> LinkResource:
    """Deterministic qudit swap: G-concurrences multiply."""
    if link1.kind != "qudit_pure" or link2.kind != "qudit_pure":
        raise ValueError(f"expected two qudit_pure links, got {link1.kind}, {link2.kind}")
    if link1.d != link2.d:
        raise ValueError(f"qudit dimensions differ: {link1.d} != {link2.d}")
    if link1.d == 2:
        c = link1.native_value * link2.native_value
        return qudit_link(lam=canonical_qubit_schmidt(c), d=2)
    cg = link1.native_value * link2.native_value
    return qudit_link(lam=canonical_qudit_schmidt(cg, link1.d), d=link1.d)


def characteristic_length(link_measure_value: float) -> float:
    """-1/ln(e) with the link spacing as the length unit; +inf at e = 1."""
    e = float(link_measure_value)
    if e <= 0.0 or e > 1.0:
        raise ValueError(f"measure value must lie in (0, 1], got {e}")
    if e == 1.0:
        return math.inf
    return -1.0 / math.log(e)


@dataclass(frozen=True)
class ChainResult:
    kind: str
    measure: str
    alpha: float
    per_hop: tuple[float, ...]
    end_to_end: float
    characteristic_length: float
    length: int
    composite_r: float | None = None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind, "measure": self.measure, "alpha": self.alpha,
            "per_hop": list(self.per_hop), "end_to_end": self.end_to_end,
            "characteristic_length": ("inf" if math.isinf(self.characteristic_length)
                                      else self.characteristic_length),
            "length": self.length,
        }
        if self.composite_r is not None:
            out["composite_r"] = self.composite_r
        return out


def chain_compose(links, measure: str | None = None, alpha: float = 1.0) -> ChainResult:
    """Compose a homogeneous chain of links under a multiplicative measure.

    end_to_end is the product of per-hop values; for tmsvs chains the
    composite squeezing parameter is also reported. Heterogeneous chains
    and non-multiplicative measure/kind pairings are rejected.
    """
    links = list(links)
    if not links:
        raise ValueError("chain must have at least one link")
    kinds = {lk.kind for lk in links}
    if len(kinds) > 1:
        raise ValueError(f"heterogeneous chains are not supported: {sorted(kinds)}")
    kind = links[0].kind
    if measure is None:
        measure = SUPPORTED_MEASURES[kind][0]
        if kind == "tmsvs" and alpha != 1.0:
            measure = "alpha_ratio"
    per_hop = tuple(lk.measure_value(measure, alpha) for lk in links)
    end = 1.0
    for v in per_hop:
        end *= v
    composite_r = None
    if kind == "tmsvs":
        chi = 1.0
        for lk in links:
            chi *= lk.native_value
        composite_r = math.atanh(chi)
    # -l/ln(end); continuous extension 0 for a dead link, +inf for all-Bell.
    xi = characteristic_length(end ** (1.0 / len(links))) if end > 0 else 0.0
    return ChainResult(kind=kind, measure=measure, alpha=alpha, per_hop=per_hop,
                       end_to_end=end, characteristic_length=xi, length=len(links),
                       composite_r=composite_r)


@dataclass(frozen=True)
class FockCrosscheckReport:
    r: float
    length: int
    cutoff: int
    composite_r: float
    expected: dict[float, float]   # alpha -> tanh(r)^(l*alpha)
    computed: dict[float, float]   # alpha -> dense alpha-ratio negativity
    deviation: dict[float, float]

    def max_deviation(self) -> float:
        return max(self.deviation.values())


def chain_fock_crosscheck(r: float, length: int, cutoff: int,
                          alphas=(1.0, 0.5, 2.0, 3.191)) -> FockCrosscheckReport:
    """Cross-check the measure-level swap rule against a dense computation.

    Iterates the squeezing-parameter rule length-1 times, builds the
    resulting truncated two-mode squeezed state densely, and compares its
    alpha-ratio negativities (via the dense partial-transpose route)
    against tanh(r)^(length*alpha).
    """
    if length < 2:
        raise ValueError(f"need at least 2 links, got {length}")
    if r <= 0:
        raise ValueError(f"squeezing parameter must be > 0, got {r}")
    spec = TmsvsSpec.from_r(r, cutoff=cutoff)
    for _ in range(length - 1):
        out = swap_tmsvs(spec.r, r)
        spec = TmsvsSpec(r=out.r, chi=out.chi, cutoff=cutoff)
    dense = tmsvs_truncated(spec).density_matrix()
    chi_dense = ratio_negativity(dense)
    expected, computed, deviation = {}, {}, {}
    for a in alphas:
        expected[a] = math.tanh(r) ** (length * a)
        computed[a] = chi_dense ** a if a != 1.0 else chi_dense
        deviation[a] = abs(computed[a] - expected[a])
    return FockCrosscheckReport(r=r, length=length, cutoff=cutoff, composite_r=spec.r,
                                expected=expected, computed=computed, deviation=deviation)
