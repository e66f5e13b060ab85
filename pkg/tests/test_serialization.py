import numpy as np
import pytest

from sequam.errors import InvariantViolation, PayloadError, PovmValidationError
from sequam.linalg import max_abs
from sequam.qubit_models import cnot_measuring_process, x_povm, z_povm
from sequam.serialization import (
    matrix_from_pairs,
    matrix_to_pairs,
    povm_from_payload,
    povm_to_payload,
    process_from_payload,
    process_to_payload,
    state_from_payload,
    state_to_payload,
    vector_from_pairs,
)


class TestMatrixCodec:
    def test_round_trip(self):
        rng = np.random.default_rng(1)
        m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert np.allclose(matrix_from_pairs(matrix_to_pairs(m), 3), m)

    def test_pair_layout(self):
        pairs = matrix_to_pairs(np.array([[1 + 2j]]))
        assert pairs == [[[1.0, 2.0]]]

    def test_wrong_shape_is_payload_error(self):
        with pytest.raises(PayloadError, match="expected shape"):
            matrix_from_pairs([[[1.0, 0.0]]], 2)

    def test_non_numeric_is_payload_error(self):
        with pytest.raises(PayloadError):
            matrix_from_pairs([[["x", 0.0]]], 1)

    def test_vector_codec(self):
        v = vector_from_pairs([[0.0, 1.0], [1.0, 0.0]], 2)
        assert np.allclose(v, [1j, 1.0])
        with pytest.raises(PayloadError):
            vector_from_pairs([[0.0, 1.0]], 2)


class TestPovmPayload:
    def test_round_trip(self):
        povm = x_povm(0.7, 0.9)
        again = povm_from_payload(povm_to_payload(povm))
        assert again.labels == povm.labels
        for x, y in zip(again.elements, povm.elements):
            assert max_abs(x - y) <= 1e-15

    def test_missing_key(self):
        with pytest.raises(PayloadError, match="missing key"):
            povm_from_payload({"dim": 2})

    def test_invalid_payload_is_validation_error(self):
        payload = povm_to_payload(z_povm(1.0))
        payload["elements"][0][0][0] = [2.0, 0.0]  # breaks completeness
        with pytest.raises(PovmValidationError):
            povm_from_payload(payload)


class TestProcessPayload:
    def test_round_trip(self):
        mp = cnot_measuring_process(0.4)
        again = process_from_payload(process_to_payload(mp))
        assert max_abs(again.unitary - mp.unitary) <= 1e-15
        assert np.allclose(again.probe_state, mp.probe_state)

    def test_non_unitary_rejected(self):
        payload = process_to_payload(cnot_measuring_process(0.4))
        payload["unitary"][0][0] = [3.0, 0.0]
        with pytest.raises(InvariantViolation):
            process_from_payload(payload)


class TestStatePayload:
    def test_round_trip(self):
        rho = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
        assert np.allclose(state_from_payload(state_to_payload(rho)), rho)

    def test_bad_trace_rejected(self):
        with pytest.raises(InvariantViolation, match="trace"):
            state_from_payload({"dim": 2, "matrix": matrix_to_pairs(np.eye(2))})
