import json

import numpy as np
import pytest

from xxzsim.experiments import pauli_mean
from xxzsim.gates import GateAngles
from xxzsim.protocols import Circuit, PrepAngles, pauli_measure_circuit, prep_circuit
from xxzsim.sampling import (
    ShotCounts,
    derive_seed,
    mean_pm1,
    parity,
    prob00,
    run_shots,
    sample_distribution,
)


class TestRunShots:
    def test_deterministic_outcome(self):
        assert run_shots(prep_circuit(PrepAngles()), 1024, 1).counts == {"00": 1024}

    def test_born_rule(self):
        c = pauli_measure_circuit(PrepAngles(theta0=np.pi / 2), GateAngles(0, 0, 0), 0, "z")
        counts = run_shots(c, 200_000, 3)
        assert counts.get("0") / counts.shots == pytest.approx(0.5, abs=0.005)

    def test_same_seed_same_counts(self):
        c = pauli_measure_circuit(PrepAngles(1.0, 2.0, 0.3, 0.1), GateAngles(0.2, 0.2, 0.5), 0, "x")
        assert run_shots(c, 1024, 42).to_json() == run_shots(c, 1024, 42).to_json()
        assert run_shots(c, 1024, 42) != run_shots(c, 1024, 43)

    def test_keys_have_measured_width(self):
        c = pauli_measure_circuit(PrepAngles(1.0), GateAngles(0, 0, 0), 1, "y")
        counts = run_shots(c, 100, 0)
        assert all(len(k) == 1 for k in counts.counts)
        assert sum(counts.counts.values()) == 100

    def test_rejects_unmeasured(self):
        with pytest.raises(ValueError):
            run_shots(Circuit(2, (), ()), 10, 0)

    def test_rejects_zero_shots(self):
        with pytest.raises(ValueError):
            run_shots(prep_circuit(PrepAngles()), 0, 0)

    def test_large_seed(self):
        sample_distribution({"0": 0.5, "1": 0.5}, 10, 2**64 - 1)


def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(7, 3) == derive_seed(7, 3)
    assert len({derive_seed(7, i) for i in range(100)}) == 100
    assert derive_seed(7, 3) != derive_seed(8, 3)
    assert 0 <= derive_seed(7, 3) < 2**64


class TestShotCounts:
    def test_json_roundtrip(self):
        c = ShotCounts(10, {"01": 4, "00": 6})
        text = c.to_json()
        assert json.loads(text) == {"shots": 10, "counts": {"00": 6, "01": 4}}
        assert ShotCounts.from_json(text) == c

    @pytest.mark.parametrize("shots, counts", [(10, {"0": 9}), (0, {}), (2, {"0": 3, "1": -1}), (2, {"0": 1, "01": 1})])
    def test_invalid(self, shots, counts):
        with pytest.raises(ValueError):
            ShotCounts(shots, counts)


class TestMeanPm1:
    def test_arithmetic(self):
        assert mean_pm1(ShotCounts(1024, {"0": 768, "1": 256}), 0).value == 0.5

    def test_certain(self):
        e = mean_pm1(ShotCounts(1024, {"0": 1024}), 0)
        assert (e.value, e.std_error) == (1.0, 0.0)

    def test_even_split(self):
        e = mean_pm1(ShotCounts(1024, {"0": 512, "1": 512}), 0)
        assert e.value == 0
        assert e.std_error == pytest.approx(1 / 32)

    def test_position(self):
        counts = ShotCounts(4, {"01": 3, "11": 1})
        assert mean_pm1(counts, 0).value == 0.5
        assert mean_pm1(counts, 1).value == -1.0
        with pytest.raises(ValueError):
            mean_pm1(counts, 2)


class TestParity:
    def test_even(self):
        assert parity(ShotCounts(1024, {"00": 1024})).value == 1

    def test_odd(self):
        assert parity(ShotCounts(1024, {"01": 512, "10": 512})).value == -1

    def test_uniform(self):
        assert parity(ShotCounts(1024, {k: 256 for k in ("00", "01", "10", "11")})).value == 0

    def test_needs_two_bits(self):
        with pytest.raises(ValueError):
            parity(ShotCounts(2, {"0": 2}))


class TestProb00:
    def test_one(self):
        assert prob00(ShotCounts(1024, {"00": 1024})).value == 1.0

    def test_zero(self):
        assert prob00(ShotCounts(1024, {"00": 0, "11": 1024})).value == 0.0

    def test_fraction(self):
        e = prob00(ShotCounts(1024, {"00": 960, "01": 64}))
        assert e.value == 0.9375
        assert e.std_error == pytest.approx(np.sqrt(0.9375 * 0.0625 / 1024))


def test_error_shrinks_with_shots():
    rng = np.random.default_rng(11)
    cases = [
        (PrepAngles(*rng.uniform(0, 2 * np.pi, 4)), GateAngles(*rng.uniform(-np.pi, np.pi, 3)), str(rng.choice(list("xyz"))))
        for _ in range(100)
    ]
    rms = {}
    for shots in (256, 4096):
        err = [
            pauli_mean(a, g, 0, axis, shots, 1000 + i).value - pauli_mean(a, g, 0, axis, None, 0).value
            for i, (a, g, axis) in enumerate(cases)
        ]
        rms[shots] = np.sqrt(np.mean(np.square(err)))
    assert rms[4096] < rms[256]
