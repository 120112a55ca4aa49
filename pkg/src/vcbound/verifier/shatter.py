"""Randomised shattering search with exactly replayable certificates."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..architecture import DEFAULT_SYMBOLIC_CAP, NetworkArchitecture, network_polynomial
from ..errors import DomainError, ResourceError
from ..polynomial import SparsePolynomial, parse_polynomial

MAX_SHATTER_N = 12
INITIAL_RADIUS = 4
RADIUS_DOUBLINGS = 4
LATTICE_DENOMINATOR = 8


def _variable_names(k: int, n_inputs: int) -> list[str]:
    return [f"w{i + 1}" for i in range(k)] + [f"x{i + 1}" for i in range(n_inputs)]


def label_of(value: Fraction) -> int:
    # y >= 0 is class 1, ties included.
    return 1 if value >= 0 else 0


@dataclass
class ShatterCertificate:
    """A point set with one exact weight vector per labeling.

    ``polynomial`` is the network output in variables (w_1..w_k, x_1..x_N).
    """

    polynomial: SparsePolynomial
    k: int
    input_dim: int
    points: list[tuple[Fraction, ...]] = field(default_factory=list)
    witnesses: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)
    architecture: dict | None = None
    coeff_seed: int | None = None

    @property
    def n(self) -> int:
        return len(self.points)

    def label(self, weights: Sequence, point: Sequence) -> int:
        return label_of(self.polynomial.evaluate(list(weights) + list(point)))

    def failures(self) -> list[str]:
        """Labelings that are missing or not reproduced by their witness."""
        bad = []
        for bits in _labelings(self.n):
            w = self.witnesses.get(bits)
            if w is None or len(w) != self.k:
                bad.append(bits)
                continue
            got = "".join(str(self.label(w, x)) for x in self.points)
            if got != bits:
                bad.append(bits)
        return bad

    def verify(self) -> bool:
        if self.polynomial.num_vars != self.k + self.input_dim:
            return False
        if any(len(x) != self.input_dim for x in self.points):
            return False
        if self.architecture is not None and self.coeff_seed is not None:
            rebuilt = network_polynomial(NetworkArchitecture.from_dict(self.architecture), self.coeff_seed,
                                         symbolic_cap=max(self.k, DEFAULT_SYMBOLIC_CAP))
            if rebuilt != self.polynomial:
                return False
        return not self.failures()

    def to_dict(self) -> dict:
        names = _variable_names(self.k, self.input_dim)
        return {
            "k": self.k,
            "input_dim": self.input_dim,
            "architecture": self.architecture,
            "coeff_seed": self.coeff_seed,
            "polynomial": self.polynomial.to_text(names),
            "points": [[str(c) for c in x] for x in self.points],
            "witnesses": {bits: [str(c) for c in w] for bits, w in sorted(self.witnesses.items())},
        }

    @classmethod
    def from_dict(cls, doc: dict) -> ShatterCertificate:
        k, n_in = int(doc["k"]), int(doc["input_dim"])
        poly = parse_polynomial(doc["polynomial"], names=_variable_names(k, n_in))
        return cls(
            polynomial=poly,
            k=k,
            input_dim=n_in,
            points=[tuple(Fraction(c) for c in x) for x in doc["points"]],
            witnesses={bits: tuple(Fraction(c) for c in w) for bits, w in doc["witnesses"].items()},
            architecture=doc.get("architecture"),
            coeff_seed=doc.get("coeff_seed"),
        )


def _labelings(n: int) -> list[str]:
    return ["".join(bits) for bits in itertools.product("01", repeat=n)]


def _search_witness(point_polys: Sequence[SparsePolynomial], bits: str, k: int, budget: int,
                    rng: random.Random) -> tuple[Fraction, ...] | None:
    rounds = RADIUS_DOUBLINGS + 1
    per_round = max(budget // rounds, 1)
    radius = INITIAL_RADIUS
    den = LATTICE_DENOMINATOR
    targets = [int(b) for b in bits]
    for _ in range(rounds):
        span = radius * den
        for _ in range(per_round):
            w = tuple(Fraction(rng.randint(-span, span), den) for _ in range(k))
            if all(label_of(p.evaluate(w)) == t for p, t in zip(point_polys, targets)):
                return w
        radius *= 2
    return None


def _try_shatter(point_polys, idxs, k, budget, seed):
    witnesses = {}
    polys = [point_polys[i] for i in idxs]
    for bits in _labelings(len(idxs)):
        # Seed depends only on (seed, subset, labeling): order-independent.
        rng = random.Random(f"{seed}:{','.join(map(str, idxs))}:{bits}")
        w = _search_witness(polys, bits, k, budget, rng)
        if w is None:
            return None
        witnesses[bits] = w
    return witnesses


def empirical_vc_lower_bound(arch: NetworkArchitecture, candidate_points: Sequence[Sequence],
                             max_n: int, budget: int = 2000, seed: int = 0,
                             coeff_seed: int | None = None, max_subsets: int = 64,
                             symbolic_cap: int = DEFAULT_SYMBOLIC_CAP) -> tuple[int, ShatterCertificate]:
    """Largest n <= max_n for which some n-subset of the candidates was shattered.

    The network is the generic instantiation for ``coeff_seed`` (defaults to
    ``seed``).  ``budget`` is the number of sampled weight vectors per
    labeling, spread over five doubling radii.  A failed search proves
    nothing, so the result is only a lower bound on the VC-dimension of that
    instantiation.
    """
    if max_n > MAX_SHATTER_N:
        raise ResourceError(f"max_n = {max_n} exceeds the shattering cap {MAX_SHATTER_N}")
    if max_n < 0 or budget < 1:
        raise DomainError("max_n must be >= 0 and budget >= 1")
    if coeff_seed is None:
        coeff_seed = seed
    full = network_polynomial(arch, coeff_seed, symbolic_cap)
    k = arch.k
    points = [tuple(Fraction(c) for c in x) for x in candidate_points]
    for x in points:
        if len(x) != arch.input_dim:
            raise DomainError(f"candidate point {x} does not have {arch.input_dim} coordinates")
    point_polys = [
        full.partial_substitute({k + i: c for i, c in enumerate(x)}) for x in points
    ]

    best = ShatterCertificate(full, k, arch.input_dim, architecture=arch.to_dict(), coeff_seed=coeff_seed)
    for n in range(1, min(max_n, len(points)) + 1):
        found = None
        for idxs in itertools.islice(itertools.combinations(range(len(points)), n), max_subsets):
            witnesses = _try_shatter(point_polys, idxs, k, budget, seed)
            if witnesses is not None:
                found = (idxs, witnesses)
                break
        if found is None:
            break
        idxs, witnesses = found
        best = ShatterCertificate(full, k, arch.input_dim, [points[i] for i in idxs], witnesses,
                                  arch.to_dict(), coeff_seed)
    return best.n, best
