import json
import random
from fractions import Fraction

import pytest

from vcbound.architecture import (
    LayerSpec,
    NetworkArchitecture,
    effective_degrees,
    instantiate_symbolic,
    network_polynomial,
    probability_vectors,
    random_architecture,
)
from vcbound.errors import ResourceError
from vcbound.polynomial import block_degrees
from vcbound.suites import random_small_architecture


def arch(ks, alphas, betas, neurons=None, n=1):
    return NetworkArchitecture.from_lists(n, ks, alphas, betas, neurons)


EXAMPLE = arch([50, 20], [1, 1], [2, 3], [5, 1], n=4)


class TestEffectiveDegrees:
    def test_worked_example(self):
        prof = effective_degrees(EXAMPLE)
        assert prof.per_level == (3, 1)
        assert prof.total == 4

    @pytest.mark.parametrize("beta", [1, 2, 7])
    def test_single_layer(self, beta):
        assert effective_degrees(arch([3], [2], [beta])).per_level == (2,)

    def test_three_layers(self):
        prof = effective_degrees(arch([1, 1, 1], [1, 1, 1], [5, 2, 2]))
        assert prof.per_level == (4, 2, 1)
        assert prof.total == 7

    def test_first_beta_irrelevant(self):
        a = effective_degrees(arch([2, 2], [2, 3], [1, 4]))
        b = effective_degrees(arch([2, 2], [2, 3], [9, 4]))
        assert a == b

    def test_monotone(self):
        rng = random.Random(5)
        for _ in range(200):
            a = random_architecture(rng)
            base = effective_degrees(a).per_level
            i = rng.randrange(a.num_layers)
            layers = list(a.layers)
            old = layers[i]
            bump_alpha = rng.random() < 0.5
            layers[i] = LayerSpec(old.neurons, old.weight_count,
                                  old.alpha + (1 if bump_alpha else 0), old.beta + (0 if bump_alpha else 1))
            bumped = effective_degrees(NetworkArchitecture(a.input_dim, tuple(layers))).per_level
            assert all(y >= x for x, y in zip(base, bumped))


class TestProbabilityVectors:
    def test_v_worked_example(self):
        v, _ = probability_vectors(EXAMPLE)
        assert v == (Fraction(5, 7), Fraction(2, 7))

    def test_u_follows_degree_definition(self):
        _, u = probability_vectors(EXAMPLE)
        assert u == (Fraction(3, 4), Fraction(1, 4))

    def test_single_layer(self):
        assert probability_vectors(arch([4], [3], [2])) == ((1,), (1,))

    def test_exact_probability_vectors(self):
        rng = random.Random(11)
        for _ in range(200):
            v, u = probability_vectors(random_architecture(rng))
            assert sum(v) == 1 and sum(u) == 1
            assert all(x > 0 for x in v + u)


class TestValidation:
    def test_last_layer_single_neuron(self):
        with pytest.raises(ValueError):
            arch([2, 2], [1, 1], [1, 1], neurons=[2, 2])

    @pytest.mark.parametrize("bad", [0, -1, True, 1.5])
    def test_positive_integers(self, bad):
        with pytest.raises(ValueError):
            LayerSpec(1, bad, 1, 1)

    def test_json_round_trip(self):
        doc = EXAMPLE.to_dict()
        assert NetworkArchitecture.from_json(json.dumps(doc)) == EXAMPLE

    def test_unknown_fields_rejected(self):
        doc = EXAMPLE.to_dict()
        doc["extra"] = 1
        with pytest.raises(ValueError):
            NetworkArchitecture.from_dict(doc)
        doc = EXAMPLE.to_dict()
        doc["layers"][0]["bias"] = 1
        with pytest.raises(ValueError):
            NetworkArchitecture.from_dict(doc)

    def test_missing_layer_field(self):
        doc = EXAMPLE.to_dict()
        del doc["layers"][1]["alpha"]
        with pytest.raises(ValueError):
            NetworkArchitecture.from_dict(doc)

    def test_predicate_count_defaults_to_one(self):
        doc = EXAMPLE.to_dict()
        del doc["predicate_count"]
        assert NetworkArchitecture.from_dict(doc).s == 1


class TestInstantiate:
    def test_single_layer_is_affine_in_weights(self):
        p = instantiate_symbolic(arch([2], [1], [1]), [1], coeff_seed=0)
        assert p.num_vars == 2
        assert p.total_degree() <= 1

    def test_two_layer_block_degrees(self):
        a = arch([2, 2], [1, 1], [1, 2], neurons=[2, 1])
        p = instantiate_symbolic(a, [Fraction(1, 2)], coeff_seed=3)
        assert block_degrees(p, a.block_sizes) <= [2, 1]
        assert all(x <= y for x, y in zip(block_degrees(p, a.block_sizes), effective_degrees(a).per_level))

    def test_deterministic(self):
        a = arch([2, 1], [2, 1], [2, 2], neurons=[2, 1], n=2)
        assert instantiate_symbolic(a, [1, -2], 7) == instantiate_symbolic(a, [1, -2], 7)
        assert instantiate_symbolic(a, [1, -2], 7) != instantiate_symbolic(a, [1, -2], 8)

    def test_cap(self):
        with pytest.raises(ResourceError, match="cap is 8"):
            instantiate_symbolic(arch([5, 4], [1, 1], [1, 1]), [0], 0)

    def test_consistent_with_full_network_polynomial(self):
        a = arch([2, 1], [1, 2], [2, 1], neurons=[2, 1], n=2)
        full = network_polynomial(a, 4)
        x = [Fraction(1, 3), -2]
        assert full.partial_substitute({a.k: x[0], a.k + 1: x[1]}) == instantiate_symbolic(a, x, 4)

    def test_block_degrees_within_profile(self):
        rng = random.Random(2024)
        equal = 0
        for _ in range(60):
            a = random_small_architecture(rng)
            x = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(a.input_dim)]
            p = instantiate_symbolic(a, x, rng.randrange(1000))
            got = block_degrees(p, a.block_sizes)
            prof = effective_degrees(a).per_level
            assert all(g <= d for g, d in zip(got, prof))
            equal += got == list(prof)
        # generic coefficients usually attain the profile exactly
        assert equal >= 40
