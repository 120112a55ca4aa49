"""Layered polynomial networks: shape, degree profile, symbolic instantiation.

Level ``i`` has ``q_i`` neurons sharing a weight block of size ``k_i``.  Each
neuron output is a polynomial of degree at most ``alpha_i`` in that block and
at most ``beta_i`` in the previous level's outputs (the raw inputs for the
first level).  The last level is a single neuron whose sign gives the label.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import DimensionError, ResourceError
from .polynomial import SparsePolynomial

DEFAULT_SYMBOLIC_CAP = 8

_LAYER_FIELDS = ("neurons", "weight_count", "alpha", "beta")
_ARCH_FIELDS = ("input_dim", "predicate_count", "layers")


def _positive_int(name: str, value: Any) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be an integer >= 1, got {value!r}")
    return value


@dataclass(frozen=True)
class LayerSpec:
    neurons: int
    weight_count: int
    alpha: int
    beta: int

    def __post_init__(self):
        for name in _LAYER_FIELDS:
            _positive_int(name, getattr(self, name))


@dataclass(frozen=True)
class NetworkArchitecture:
    """Shape of a layered polynomial network.

    ``beta`` of the first layer is kept for completeness but never enters
    any degree or bound.
    """

    input_dim: int
    layers: tuple[LayerSpec, ...]
    predicate_count: int = 1

    def __post_init__(self):
        _positive_int("input_dim", self.input_dim)
        _positive_int("predicate_count", self.predicate_count)
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise ValueError("an architecture needs at least one layer")
        if self.layers[-1].neurons != 1:
            raise ValueError("the output layer must have exactly one neuron")

    @classmethod
    def from_lists(cls, input_dim: int, weight_counts: Sequence[int], alphas: Sequence[int],
                   betas: Sequence[int], neurons: Sequence[int] | None = None,
                   predicate_count: int = 1) -> NetworkArchitecture:
        n = len(weight_counts)
        if not (len(alphas) == len(betas) == n):
            raise DimensionError("weight_counts, alphas and betas must have equal length")
        if neurons is None:
            neurons = [1] * n
        if len(neurons) != n:
            raise DimensionError("neurons must match the number of layers")
        layers = tuple(LayerSpec(q, k, a, b) for q, k, a, b in zip(neurons, weight_counts, alphas, betas))
        return cls(input_dim, layers, predicate_count)

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(layer.weight_count for layer in self.layers)

    @property
    def k(self) -> int:
        return sum(self.block_sizes)

    @property
    def s(self) -> int:
        return self.predicate_count

    @property
    def guard_satisfied(self) -> bool:
        return all(k >= 2 for k in self.block_sizes)

    def to_dict(self) -> dict:
        return {
            "input_dim": self.input_dim,
            "predicate_count": self.predicate_count,
            "layers": [{f: getattr(layer, f) for f in _LAYER_FIELDS} for layer in self.layers],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> NetworkArchitecture:
        if not isinstance(doc, dict):
            raise ValueError("architecture document must be a JSON object")
        unknown = set(doc) - set(_ARCH_FIELDS)
        if unknown:
            raise ValueError(f"unknown architecture fields: {sorted(unknown)}")
        if "input_dim" not in doc or "layers" not in doc:
            raise ValueError("architecture needs 'input_dim' and 'layers'")
        layers_doc = doc["layers"]
        if not isinstance(layers_doc, list):
            raise ValueError("'layers' must be a list")
        layers = []
        for i, ld in enumerate(layers_doc):
            if not isinstance(ld, dict):
                raise ValueError(f"layer {i} must be an object")
            unknown = set(ld) - set(_LAYER_FIELDS)
            missing = set(_LAYER_FIELDS) - set(ld)
            if unknown:
                raise ValueError(f"layer {i}: unknown fields {sorted(unknown)}")
            if missing:
                raise ValueError(f"layer {i}: missing fields {sorted(missing)}")
            layers.append(LayerSpec(**ld))
        return cls(doc["input_dim"], tuple(layers), doc.get("predicate_count", 1))

    @classmethod
    def from_json(cls, text: str) -> NetworkArchitecture:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class DegreeProfile:
    per_level: tuple[int, ...]
    total: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "per_level", tuple(self.per_level))
        object.__setattr__(self, "total", sum(self.per_level))


def effective_degrees(arch: NetworkArchitecture) -> DegreeProfile:
    """d_i = alpha_i * prod_{j > i} beta_j, so d_l = alpha_l."""
    degs = []
    tail = 1
    for layer in reversed(arch.layers):
        degs.append(layer.alpha * tail)
        tail *= layer.beta
    return DegreeProfile(tuple(reversed(degs)))


def probability_vectors(arch: NetworkArchitecture) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Return ``(v, u)`` with v_i = k_i / k and u_i = d_i / d, exactly."""
    prof = effective_degrees(arch)
    k = arch.k
    v = tuple(Fraction(ki, k) for ki in arch.block_sizes)
    u = tuple(Fraction(di, prof.total) for di in prof.per_level)
    return v, u


# symbolic instantiation


def _monomials(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples in ``nvars`` variables of total degree <= max_degree."""
    out = [e for e in itertools.product(range(max_degree + 1), repeat=nvars) if sum(e) <= max_degree]
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return out


_COEFF_CHOICES = (-5, -4, -3, -2, -1, 1, 2, 3, 4, 5)


def _build(arch: NetworkArchitecture, inputs: Sequence[SparsePolynomial], nv: int,
           coeff_seed: int) -> SparsePolynomial:
    rng = random.Random(coeff_seed)
    offset = 0
    prev = list(inputs)
    for layer in arch.layers:
        weights = [SparsePolynomial.variable(offset + j, nv) for j in range(layer.weight_count)]
        w_monos = _monomials(layer.weight_count, layer.alpha)
        y_monos = _monomials(len(prev), layer.beta)
        w_polys = [_power_product(weights, e, nv) for e in w_monos]
        y_polys = [_power_product(prev, e, nv) for e in y_monos]
        outputs = []
        for _ in range(layer.neurons):
            acc = SparsePolynomial.zero(nv)
            for yp in y_polys:
                inner = SparsePolynomial.zero(nv)
                for wp in w_polys:
                    inner = inner + wp * rng.choice(_COEFF_CHOICES)
                acc = acc + inner * yp
            outputs.append(acc)
        prev = outputs
        offset += layer.weight_count
    return prev[0]


def _power_product(base: Sequence[SparsePolynomial], exp: Sequence[int], nv: int) -> SparsePolynomial:
    out = SparsePolynomial.constant(1, nv)
    for b, e in zip(base, exp):
        if e:
            out = out * b**e
    return out


def _check_cap(arch: NetworkArchitecture, cap: int) -> None:
    if arch.k > cap:
        raise ResourceError(f"architecture has k = {arch.k} weights; symbolic cap is {cap}")


def network_polynomial(arch: NetworkArchitecture, coeff_seed: int,
                       symbolic_cap: int = DEFAULT_SYMBOLIC_CAP) -> SparsePolynomial:
    """y_l as a polynomial in (w_1..w_k, x_1..x_N), weights first.

    Uses the same coefficient stream as :func:`instantiate_symbolic`, so
    substituting the inputs here gives exactly that function's result.
    """
    _check_cap(arch, symbolic_cap)
    nv = arch.k + arch.input_dim
    xs = [SparsePolynomial.variable(arch.k + i, nv) for i in range(arch.input_dim)]
    return _build(arch, xs, nv, coeff_seed)


def instantiate_symbolic(arch: NetworkArchitecture, inputs: Sequence, coeff_seed: int,
                         symbolic_cap: int = DEFAULT_SYMBOLIC_CAP) -> SparsePolynomial:
    """Generic network output y_l(w, x) at fixed rational inputs, as a polynomial in w.

    Every neuron is a dense polynomial of the allowed degrees whose
    coefficients are nonzero integers in [-5, 5] drawn from ``coeff_seed``.
    """
    _check_cap(arch, symbolic_cap)
    if len(inputs) != arch.input_dim:
        raise DimensionError(f"{len(inputs)} inputs for input_dim {arch.input_dim}")
    nv = arch.k
    xs = [SparsePolynomial.constant(Fraction(x), nv) for x in inputs]
    return _build(arch, xs, nv, coeff_seed)


def random_architecture(rng: random.Random, max_layers: int = 4, max_k: int = 40,
                        max_alpha: int = 4, max_beta: int = 4, min_k: int = 1,
                        max_neurons: int = 4) -> NetworkArchitecture:
    """Draw an architecture; handy for property runs."""
    n = rng.randint(1, max_layers)
    ks = [rng.randint(min_k, max_k) for _ in range(n)]
    alphas = [rng.randint(1, max_alpha) for _ in range(n)]
    betas = [rng.randint(1, max_beta) for _ in range(n)]
    neurons = [rng.randint(1, max_neurons) for _ in range(n - 1)] + [1]
    return NetworkArchitecture.from_lists(rng.randint(1, 4), ks, alphas, betas, neurons)

