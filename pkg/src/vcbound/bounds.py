"""Component-count and VC-dimension upper bounds.

Component bounds (Milnor-type and the block-simplex volume bound) are exact
Python integers.  VC bounds, entropies and the Stirling-relaxed component
bound live in the log2 domain as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .architecture import DegreeProfile, NetworkArchitecture, effective_degrees, probability_vectors
from .errors import DimensionError, DomainError, GuardViolation, UndefinedEntropyError
from .polytope import simplex_product_volume

LOG2_E = math.log2(math.e)


def log2_rational(x: int | Fraction) -> float:
    """log2 of a positive exact rational without overflowing floats."""
    x = Fraction(x)
    if x <= 0:
        raise DomainError(f"log2 of non-positive value {x}")
    return math.log2(x.numerator) - math.log2(x.denominator)


def milnor_bound(d: int, k: int) -> int:
    """d * (2d)^(k-1) components for k variables of degree <= d."""
    if d < 1 or k < 1:
        raise DomainError("milnor_bound needs d >= 1 and k >= 1")
    return d * (2 * d) ** (k - 1)


def adjusted_milnor_bound(d: int, k: int) -> int:
    if d < 1 or k < 1:
        raise DomainError("adjusted_milnor_bound needs d >= 1 and k >= 1")
    return (2 * d) ** k


def gj_vc_bound(k: int, d: int, s: int) -> float:
    """2k lg(4eds)."""
    if min(k, d, s) < 1:
        raise DomainError("gj_vc_bound needs k, d, s >= 1")
    return 2 * k * (2 + LOG2_E + math.log2(d) + math.log2(s))


def km_vc_bound(B_log2: float, k: int, s: int) -> float:
    """2 lg B + 2k lg(2es), with B supplied as its log2."""
    if B_log2 < 0:
        raise DomainError("B must be >= 1")
    if k < 1 or s < 1:
        raise DomainError("km_vc_bound needs k, s >= 1")
    return 2 * B_log2 + 2 * k * (1 + LOG2_E + math.log2(s))


@dataclass(frozen=True)
class EntropyValue:
    value: float
    exact_flag: bool = True

    def __float__(self) -> float:
        return self.value


def relative_entropy(v: Sequence, u: Sequence) -> EntropyValue:
    """Base-2 relative entropy H(v|u) = sum v_i lg(v_i / u_i), with 0 lg(0/x) = 0.

    Each ratio v_i / u_i is formed exactly before taking the logarithm.
    """
    if len(v) != len(u):
        raise DimensionError("v and u differ in length")
    v = [Fraction(x) for x in v]
    u = [Fraction(x) for x in u]
    for name, vec in (("v", v), ("u", u)):
        if any(x < 0 for x in vec) or sum(vec) != 1:
            raise DomainError(f"{name} is not a probability vector")
    if v == u:
        return EntropyValue(0.0, True)
    total = 0.0
    for vi, ui in zip(v, u):
        if vi == 0:
            continue
        if ui == 0:
            raise UndefinedEntropyError("v_i > 0 where u_i = 0: divergence is infinite")
        total += float(vi) * log2_rational(vi / ui)
    return EntropyValue(max(total, 0.0), True)


def _check_profile(degrees: Sequence[int], block_sizes: Sequence[int]) -> None:
    if len(degrees) != len(block_sizes):
        raise DimensionError("degree profile and block sizes differ in length")
    if any(x < 1 for x in degrees) or any(x < 1 for x in block_sizes):
        raise DomainError("degrees and block sizes must be >= 1")


def _degrees(profile: DegreeProfile | Sequence[int]) -> tuple[int, ...]:
    return profile.per_level if isinstance(profile, DegreeProfile) else tuple(profile)


def eq41_component_bound(degree_profile: DegreeProfile | Sequence[int], block_sizes: Sequence[int]) -> int:
    """2^k k! prod d_i^k_i / k_i!, exactly."""
    degs = _degrees(degree_profile)
    _check_profile(degs, block_sizes)
    return 2 ** sum(block_sizes) * simplex_product_volume(degs, block_sizes)


def _entropy_from_blocks(degs: Sequence[int], block_sizes: Sequence[int]) -> EntropyValue:
    k, d = sum(block_sizes), sum(degs)
    return relative_entropy([Fraction(x, k) for x in block_sizes], [Fraction(x, d) for x in degs])


def eq42_component_bound_log2(degree_profile: DegreeProfile | Sequence[int],
                              block_sizes: Sequence[int]) -> float:
    """log2 of (2d / e^(7/8))^k * 2^(-k H(v|u)); needs every k_i >= 2."""
    degs = _degrees(degree_profile)
    _check_profile(degs, block_sizes)
    if any(x < 2 for x in block_sizes):
        raise GuardViolation("every k_i must be >= 2; fall back to eq41_component_bound")
    k, d = sum(block_sizes), sum(degs)
    h = _entropy_from_blocks(degs, block_sizes).value
    return k * (math.log2(2 * d) - 0.875 * LOG2_E) - k * h


def entropy_component_bound_log2(degree_profile: DegreeProfile | Sequence[int],
                                 block_sizes: Sequence[int]) -> float:
    """log2 of (2d)^k * 2^(-k H(v|u)).

    This is the relaxation of eq41_component_bound that actually dominates
    it (k!/prod k_i! * prod (k_i/k)^k_i is a multinomial probability, so at
    most 1), and it is exactly the B that turns km_vc_bound into eq43_vc_bound.
    No guard is needed.
    """
    degs = _degrees(degree_profile)
    _check_profile(degs, block_sizes)
    k, d = sum(block_sizes), sum(degs)
    return k * math.log2(2 * d) - k * _entropy_from_blocks(degs, block_sizes).value


def eq43_vc_bound(k: int, d: int, entropy: EntropyValue | float, block_sizes: Sequence[int] | None = None,
                  s: int = 1) -> float:
    """2k (lg(4ed) - H(v|u)).

    Pass ``block_sizes`` to have the k_i >= 2 guard enforced.
    """
    if s != 1:
        raise DomainError("eq43_vc_bound is defined only for s = 1")
    if block_sizes is not None and any(x < 2 for x in block_sizes):
        raise GuardViolation("every k_i must be >= 2; use km_vc_bound(log2(eq41_B), k, 1) instead")
    h = float(entropy)
    return 2 * k * (2 + LOG2_E + math.log2(d) - h)


def stirling_bounds(t: int) -> tuple[float, float]:
    """Return (e^(7/8) (t/e)^t sqrt(t), e (t/e)^t sqrt(t)), which bracket t! for t >= 2."""
    if not isinstance(t, int) or t < 2:
        raise DomainError("stirling_bounds needs an integer t >= 2")
    core = math.exp(t * (math.log(t) - 1) + 0.5 * math.log(t))
    return math.exp(0.875) * core, math.e * core


# report


@dataclass
class BoundReport:
    k: int
    d: int
    s: int
    block_sizes: tuple[int, ...]
    degree_profile: tuple[int, ...]
    v: tuple[Fraction, ...]
    u: tuple[Fraction, ...]
    entropy: EntropyValue
    milnor_B: int
    adjusted_milnor_B: int
    eq41_B: int
    milnor_B_log2: float
    adjusted_milnor_B_log2: float
    eq41_B_log2: float
    entropy_B_log2: float
    eq42_B_log2: float | None
    gj_vc: float
    km_vc_from_eq41: float
    eq43_vc: float | None
    gj_minus_eq43: float | None
    guard_satisfied: bool
    absent: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "s": self.s,
            "block_sizes": list(self.block_sizes),
            "degree_profile": list(self.degree_profile),
            "v": [str(x) for x in self.v],
            "u": [str(x) for x in self.u],
            "entropy": {"value": self.entropy.value, "exact_flag": self.entropy.exact_flag},
            "milnor_B": str(self.milnor_B),
            "adjusted_milnor_B": str(self.adjusted_milnor_B),
            "eq41_B": str(self.eq41_B),
            "milnor_B_log2": self.milnor_B_log2,
            "adjusted_milnor_B_log2": self.adjusted_milnor_B_log2,
            "eq41_B_log2": self.eq41_B_log2,
            "entropy_B_log2": self.entropy_B_log2,
            "eq42_B_log2": self.eq42_B_log2,
            "gj_vc": self.gj_vc,
            "km_vc_from_eq41": self.km_vc_from_eq41,
            "eq43_vc": self.eq43_vc,
            "gj_minus_eq43": self.gj_minus_eq43,
            "guard_satisfied": self.guard_satisfied,
            "absent": dict(self.absent),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> BoundReport:
        return cls(
            k=doc["k"],
            d=doc["d"],
            s=doc["s"],
            block_sizes=tuple(doc["block_sizes"]),
            degree_profile=tuple(doc["degree_profile"]),
            v=tuple(Fraction(x) for x in doc["v"]),
            u=tuple(Fraction(x) for x in doc["u"]),
            entropy=EntropyValue(doc["entropy"]["value"], doc["entropy"]["exact_flag"]),
            milnor_B=int(doc["milnor_B"]),
            adjusted_milnor_B=int(doc["adjusted_milnor_B"]),
            eq41_B=int(doc["eq41_B"]),
            milnor_B_log2=doc["milnor_B_log2"],
            adjusted_milnor_B_log2=doc["adjusted_milnor_B_log2"],
            eq41_B_log2=doc["eq41_B_log2"],
            entropy_B_log2=doc["entropy_B_log2"],
            eq42_B_log2=doc["eq42_B_log2"],
            gj_vc=doc["gj_vc"],
            km_vc_from_eq41=doc["km_vc_from_eq41"],
            eq43_vc=doc["eq43_vc"],
            gj_minus_eq43=doc["gj_minus_eq43"],
            guard_satisfied=doc["guard_satisfied"],
            absent=dict(doc.get("absent", {})),
        )

    def vc_upper_bounds(self) -> dict[str, float]:
        """Every VC upper bound that applies to this architecture."""
        out = {"gj_vc": self.gj_vc, "km_vc_from_eq41": self.km_vc_from_eq41}
        if self.eq43_vc is not None:
            out["eq43_vc"] = self.eq43_vc
        return out

    def tightest_vc_bound(self) -> float:
        return min(self.vc_upper_bounds().values())


def build_report(arch: NetworkArchitecture) -> BoundReport:
    """Evaluate every bound for ``arch``; inapplicable ones are None with a reason."""
    prof = effective_degrees(arch)
    blocks = arch.block_sizes
    k, d, s = arch.k, prof.total, arch.s
    v, u = probability_vectors(arch)
    h = relative_entropy(v, u)
    absent: dict[str, str] = {}

    eq41 = eq41_component_bound(prof, blocks)
    eq41_log2 = log2_rational(eq41)
    guard = arch.guard_satisfied

    eq42 = eq43 = gap = None
    if guard:
        eq42 = eq42_component_bound_log2(prof, blocks)
    else:
        absent["eq42_B_log2"] = "some k_i < 2"
    if not guard:
        absent["eq43_vc"] = "some k_i < 2; use km_vc_from_eq41"
    elif s != 1:
        absent["eq43_vc"] = "defined only for s = 1"
    else:
        eq43 = eq43_vc_bound(k, d, h, blocks)

    gj = gj_vc_bound(k, d, s)
    if eq43 is not None:
        gap = gj - eq43
    else:
        absent["gj_minus_eq43"] = "eq43_vc absent"

    milnor = milnor_bound(d, k)
    adjusted = adjusted_milnor_bound(d, k)
    return BoundReport(
        k=k,
        d=d,
        s=s,
        block_sizes=blocks,
        degree_profile=prof.per_level,
        v=v,
        u=u,
        entropy=h,
        milnor_B=milnor,
        adjusted_milnor_B=adjusted,
        eq41_B=eq41,
        milnor_B_log2=log2_rational(milnor),
        adjusted_milnor_B_log2=log2_rational(adjusted),
        eq41_B_log2=eq41_log2,
        entropy_B_log2=entropy_component_bound_log2(prof, blocks),
        eq42_B_log2=eq42,
        gj_vc=gj,
        km_vc_from_eq41=km_vc_bound(eq41_log2, k, s),
        eq43_vc=eq43,
        gj_minus_eq43=gap,
        guard_satisfied=guard,
        absent=absent,
    )
