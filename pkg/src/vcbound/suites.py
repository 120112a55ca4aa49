"""Verification suites pitting empirical counts against the computed bounds.

Each suite yields :class:`Check` records; a check fails only when an observed
quantity exceeds the upper bound it is compared with.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .architecture import (
    DEFAULT_SYMBOLIC_CAP,
    NetworkArchitecture,
    effective_degrees,
    instantiate_symbolic,
)
from .bounds import build_report, eq41_component_bound, km_vc_bound, log2_rational, milnor_bound
from .polynomial import SparsePolynomial, parse_polynomial, support
from .polytope import (
    DEFAULT_HULL_CAP,
    build_polytope_points,
    containment_check,
    normalized_volume,
    rojas_component_bound,
    simplex_product_volume,
)
from .verifier import (
    GRID_METHOD,
    ShatterCertificate,
    empirical_vc_lower_bound,
    fiber_components_1d,
    fiber_components_2d_estimate,
)


@dataclass
class Check:
    suite: str
    name: str
    observed: float
    bound: float
    ok: bool
    reproducer: str = ""
    method: str = "exact"
    extra: dict = field(default_factory=dict)

    def line(self) -> str:
        rel = "<=" if self.ok else ">"
        return f"[{self.suite}] {self.name}: observed={self.observed} {rel} bound={self.bound} ({self.method})"

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "observed": self.observed,
            "bound": self.bound,
            "ok": self.ok,
            "method": self.method,
            "reproducer": self.reproducer,
        }


@dataclass
class VerifyConfig:
    seed: int = 0
    budget: int = 2000
    symbolic_cap: int = DEFAULT_SYMBOLIC_CAP
    hull_cap: int = DEFAULT_HULL_CAP
    sturm_trials: int = 200
    containment_trials: int = 20
    # fault injection: eq41 is divided by this before every comparison
    eq41_divisor: int = 1


def random_univariate(rng: random.Random, max_degree: int = 8) -> SparsePolynomial:
    """Random nonconstant polynomial with small rational coefficients.

    A third of the draws are products of rational linear factors, some
    repeated, so multiple roots are exercised.
    """
    deg = rng.randint(1, max_degree)
    if rng.random() < 1 / 3:
        w = SparsePolynomial.variable(0, 1)
        p = SparsePolynomial.constant(rng.choice([-3, -1, 1, 2]), 1)
        roots = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, deg))]
        for r in roots:
            p = p * (w - r) ** rng.choice([1, 1, 2])
        return p
    coeffs = {(i,): Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for i in range(deg)}
    coeffs[(deg,)] = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
    return SparsePolynomial(coeffs, 1)


def sturm_suite(cfg: VerifyConfig) -> Iterator[Check]:
    rng = random.Random(f"sturm:{cfg.seed}")
    for t in range(cfg.sturm_trials):
        p = random_univariate(rng)
        y = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        deg = p.total_degree()
        count = fiber_components_1d(p, y)
        rojas = rojas_component_bound(build_polytope_points(support(p - y), 1), cfg.hull_cap)
        bound = min(milnor_bound(deg, 1), rojas)
        yield Check("sturm", f"trial {t} (degree {deg})", count, bound, count <= bound,
                    reproducer=f"p = {p}; y = {y}; seed = {cfg.seed}")


CURATED_CURVES = [
    ("circle", "w1^2 + w2^2", Fraction(1), ((-2, 2), (-2, 2))),
    ("two ovals", "w1^4 - 2 w1^2 + w2^2 + 1", Fraction(1, 10), ((-2, 2), (-2, 2))),
    ("hyperbola", "w1 w2", Fraction(1), ((-4, 4), (-4, 4))),
    ("cubic", "w2^2 - w1^3 + w1", Fraction(0), ((-2, 2), (-2, 2))),
    ("four ovals", "w1^4 - 2 w1^2 + w2^4 - 2 w2^2 + 2", Fraction(1, 10), ((-2, 2), (-2, 2))),
]


def grid_suite(cfg: VerifyConfig, resolution: int = 64) -> Iterator[Check]:
    for name, text, y, window in CURATED_CURVES:
        p = parse_polynomial(text, 2)
        est = fiber_components_2d_estimate(p, y, resolution, window)
        bound = rojas_component_bound(build_polytope_points(support(p - y), 2), cfg.hull_cap)
        yield Check("grid", name, est, bound, est <= bound, method=GRID_METHOD,
                    reproducer=f"p = {text}; y = {y}; window = {window}; resolution = {resolution}")


def random_small_architecture(rng: random.Random, max_k: int = 5) -> NetworkArchitecture:
    """Tiny architecture whose Newton polytope stays within the hull cap."""
    while True:
        n = rng.randint(1, 3)
        ks = [rng.randint(1, 2) for _ in range(n)]
        if sum(ks) <= max_k:
            break
    alphas = [rng.randint(1, 2) for _ in range(n)]
    betas = [rng.randint(1, 2) for _ in range(n)]
    neurons = [rng.randint(1, 2) for _ in range(n - 1)] + [1]
    return NetworkArchitecture.from_lists(rng.randint(1, 2), ks, alphas, betas, neurons)


def containment_instance(rng: random.Random, symbolic_cap: int = DEFAULT_SYMBOLIC_CAP):
    arch = random_small_architecture(rng)
    inputs = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(arch.input_dim)]
    coeff_seed = rng.randrange(2**31)
    return arch, inputs, coeff_seed, instantiate_symbolic(arch, inputs, coeff_seed, symbolic_cap)


def containment_suite(cfg: VerifyConfig) -> Iterator[Check]:
    rng = random.Random(f"containment:{cfg.seed}")
    for t in range(cfg.containment_trials):
        arch, inputs, cseed, y = containment_instance(rng, cfg.symbolic_cap)
        prof = effective_degrees(arch)
        blocks = arch.block_sizes
        repro = f"architecture = {arch.to_dict()}; inputs = {[str(x) for x in inputs]}; coeff_seed = {cseed}"
        inside = containment_check(support(y), prof.per_level, blocks)
        yield Check("containment", f"instance {t} support inside block simplices", int(not inside), 0,
                    inside, reproducer=repro)
        pts = build_polytope_points(support(y), arch.k)
        vol = normalized_volume(pts, cfg.hull_cap)
        cap = simplex_product_volume(prof.per_level, blocks)
        yield Check("containment", f"instance {t} newton volume", vol, cap, vol <= cap, reproducer=repro)
        comp = 2**arch.k * vol
        eq41 = eq41_component_bound(prof, blocks) // cfg.eq41_divisor
        yield Check("containment", f"instance {t} newton component bound vs eq41", comp, eq41,
                    comp <= eq41, reproducer=repro)


LINE_NETWORK = NetworkArchitecture.from_lists(1, [2], [1], [1])
PLANE_NETWORK = NetworkArchitecture.from_lists(2, [3], [1], [1])
QUADRATIC_LINE_NETWORK = NetworkArchitecture.from_lists(1, [3], [1], [2])

SHATTER_CASES = [
    ("affine line", LINE_NETWORK, [[0], [1], [2]], 3),
    ("affine plane", PLANE_NETWORK, [[0, 0], [1, 0], [0, 1], [1, 1]], 4),
    ("quadratic line", QUADRATIC_LINE_NETWORK, [[-2], [-1], [0], [1], [2]], 4),
]


def shatter_suite(cfg: VerifyConfig, certificates: list | None = None) -> Iterator[Check]:
    for name, arch, cands, max_n in SHATTER_CASES:
        n, cert = empirical_vc_lower_bound(arch, cands, max_n, cfg.budget, cfg.seed,
                                           symbolic_cap=cfg.symbolic_cap)
        if certificates is not None:
            certificates.append((name, cert))
        report = build_report(arch)
        bounds = report.vc_upper_bounds()
        if cfg.eq41_divisor != 1:
            tampered = report.eq41_B // cfg.eq41_divisor
            bounds["km_vc_from_eq41"] = km_vc_bound(log2_rational(max(tampered, 1)), arch.k, arch.s)
        repro = f"architecture = {arch.to_dict()}; candidates = {cands}; seed = {cfg.seed}"
        yield Check("shatter", f"{name} certificate replays", int(not cert.verify()), 0, cert.verify(),
                    reproducer=repro)
        for bname, b in sorted(bounds.items()):
            yield Check("shatter", f"{name} n={n} vs {bname}", n, round(b, 6), n <= b, reproducer=repro)


def run_all(cfg: VerifyConfig, certificates: list[tuple[str, ShatterCertificate]] | None = None) -> list[Check]:
    checks: list[Check] = []
    checks.extend(sturm_suite(cfg))
    checks.extend(grid_suite(cfg))
    checks.extend(containment_suite(cfg))
    checks.extend(shatter_suite(cfg, certificates))
    return checks
