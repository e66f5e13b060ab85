import numpy as np
import pytest

from sequam.instruments import from_measuring_process, induced_povm, luders
from sequam.linalg import max_abs
from sequam.quantum import is_sharp
from sequam.qubit_models import (
    IDENTITY2,
    SIGMA_X,
    SIGMA_Z,
    c_closed,
    cnot_measuring_process,
    d1_closed,
    jointly_measurable_unbiased,
    overall_S,
    tradeoff,
    x_povm,
    x_prime,
    z_povm,
)
from sequam.successive import marginals, overall_observable
from sequam.uncertainty import bound_D1, incompatibility_mu

H_BIN_LAM = 0.6008760366928561   # H_bin((1 + 1/sqrt(2)) / 2)
C_PI4 = 0.22844669683638803      # -log2((1 + 1/sqrt(2)) / 2)
TWICE_H_BIN = 1.2017520733857122
# overlap incompatibility of the doubly unsharp orthogonal pair,
# -log2((1 + sqrt(3)/2) / 4)
C_BOTH_UNSHARP = 1.1000313730470083


class TestGenerators:
    def test_sharp_z(self):
        povm = z_povm(1.0)
        assert np.allclose(povm.elements[0], np.diag([1.0, 0.0]))
        assert np.allclose(povm.elements[1], np.diag([0.0, 1.0]))

    def test_sharp_x(self):
        povm = x_povm(np.pi / 2, 1.0)
        assert np.allclose(povm.elements[0], (IDENTITY2 + SIGMA_X) / 2)
        assert np.allclose(povm.elements[1], (IDENTITY2 - SIGMA_X) / 2)

    def test_fully_unsharp_z(self):
        povm = z_povm(0.0)
        for e in povm.elements:
            assert np.allclose(e, IDENTITY2 / 2)

    def test_sharpness_iff_parameter_one(self):
        assert is_sharp(z_povm(1.0))
        assert not is_sharp(z_povm(0.999))
        assert is_sharp(x_povm(0.7, 1.0))
        assert not is_sharp(x_povm(0.7, 0.5))

    @pytest.mark.parametrize("bad", [-0.1, 1.1])
    def test_out_of_range_rejected(self, bad):
        with pytest.raises(ValueError):
            z_povm(bad)
        with pytest.raises(ValueError):
            x_povm(0.5, bad)
        with pytest.raises(ValueError):
            x_povm(4.0, 0.5)  # theta above pi


class TestOverallS:
    def test_repeated_sharp_z(self):
        c = overall_S(1.0, 1.0, 0.0)
        assert np.allclose(c.element(0, 0), np.diag([1.0, 0.0]))
        assert np.allclose(c.element(0, 1), 0.0)
        assert np.allclose(c.element(1, 0), 0.0)
        assert np.allclose(c.element(1, 1), np.diag([0.0, 1.0]))

    def test_orthogonal_sharp_eigenvalues(self):
        c = overall_S(1.0, 1.0, np.pi / 2)
        for e in c.povm.elements:
            values = np.sort(np.linalg.eigvalsh(e))
            assert np.allclose(values, [0.0, 0.5], atol=1e-12)

    def test_unsharp_first_carries_x_component(self):
        s = 2**-0.5
        c = overall_S(s, 1.0, np.pi / 2)
        coefficient = np.sqrt(1 - s * s) / 4
        x_part = np.trace(SIGMA_X @ c.element(0, 0)).real / 2
        assert x_part == pytest.approx(coefficient, abs=1e-12)

    @pytest.mark.parametrize(
        "params",
        [(1.0, 1.0, 0.4), (0.3, 0.9, 1.2), (2**-0.5, 1.0, np.pi / 2), (0.6, 0.6, 0.0)],
    )
    def test_agrees_with_pipeline(self, params):
        s, t, theta = params
        closed = overall_S(s, t, theta)
        generic = overall_observable(luders(z_povm(s)), x_povm(theta, t))
        for x, y in zip(closed.povm.elements, generic.povm.elements):
            assert max_abs(x - y) <= 1e-9


class TestClosedForms:
    def test_d1_endpoints(self):
        assert d1_closed(1.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-12)
        assert d1_closed(1.0, 1.0, np.pi / 2) == pytest.approx(1.0, abs=1e-12)

    def test_d1_intermediate(self):
        assert d1_closed(1.0, 1.0, np.pi / 4) == pytest.approx(H_BIN_LAM, abs=1e-12)

    def test_c_endpoints(self):
        assert c_closed(1.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-12)
        assert c_closed(1.0, 1.0, np.pi / 2) == pytest.approx(1.0, abs=1e-12)

    def test_c_intermediate(self):
        assert c_closed(1.0, 1.0, np.pi / 4) == pytest.approx(C_PI4, abs=1e-12)

    def test_c_both_unsharp(self):
        assert c_closed(2**-0.5, 2**-0.5, np.pi / 2) == pytest.approx(
            C_BOTH_UNSHARP, abs=1e-12
        )

    def test_obtuse_angle_uses_absolute_cosine(self):
        assert c_closed(0.8, 0.9, np.pi - 0.3) == pytest.approx(
            c_closed(0.8, 0.9, 0.3), abs=1e-12
        )

    def test_oracle_equivalence_random_triples(self):
        rng = np.random.default_rng(99)
        for _ in range(200):
            s, t = rng.uniform(0.0, 1.0, size=2)
            theta = rng.uniform(0.0, np.pi)
            ins = luders(z_povm(s))
            xt = x_povm(theta, t)
            assert d1_closed(s, t, theta) == pytest.approx(bound_D1(ins, xt), abs=1e-9)
            assert c_closed(s, t, theta) == pytest.approx(
                incompatibility_mu(z_povm(s), xt), abs=1e-9
            )
            closed = overall_S(s, t, theta)
            generic = overall_observable(ins, xt)
            for x, y in zip(closed.povm.elements, generic.povm.elements):
                assert max_abs(x - y) <= 1e-9

    def test_d1_dominates_c_on_grid(self):
        grid = np.linspace(0.0, 1.0, 50)
        angles = np.linspace(0.0, np.pi / 2, 50)
        worst = np.inf
        for s in grid:
            for t in grid:
                for theta in angles:
                    gap = d1_closed(s, t, theta) - c_closed(s, t, theta)
                    worst = min(worst, gap)
                    assert gap >= -1e-9
        # equality is attained (sharp commuting / orthogonal corners)
        assert worst == pytest.approx(0.0, abs=1e-9)


class TestCnotProcess:
    def test_sharp_probe_starts_at_zero(self):
        mp = cnot_measuring_process(1.0)
        assert np.allclose(mp.probe_state, [1.0, 0.0])
        ins = from_measuring_process(mp)
        assert np.allclose(ins.kraus[0][0], np.diag([1.0, 0.0]))

    def test_fully_unsharp_probe_is_balanced(self):
        mp = cnot_measuring_process(0.0)
        assert np.allclose(mp.probe_state, [2**-0.5, 2**-0.5])
        induced = induced_povm(from_measuring_process(mp))
        for e in induced.elements:
            assert max_abs(e - IDENTITY2 / 2) <= 1e-12

    def test_intermediate_kraus_are_diagonal_roots(self):
        s = 2**-0.5
        ins = from_measuring_process(cnot_measuring_process(s))
        expected = np.diag([np.sqrt((1 + s) / 2), np.sqrt((1 - s) / 2)])
        assert max_abs(ins.kraus[0][0] - expected) <= 1e-12
        assert max_abs(ins.kraus[1][0] - expected[::-1, ::-1]) <= 1e-12

    def test_induces_z_on_grid(self):
        for s in np.linspace(0.0, 1.0, 101):
            induced = induced_povm(from_measuring_process(cnot_measuring_process(s)))
            for x, y in zip(induced.elements, z_povm(s).elements):
                assert max_abs(x - y) <= 1e-10


class TestXPrime:
    def test_undisturbed_when_first_is_trivial(self):
        povm = x_prime(0.0)
        assert np.allclose(povm.elements[0], (IDENTITY2 + SIGMA_X) / 2)

    def test_fully_dephased_when_first_is_sharp(self):
        povm = x_prime(1.0)
        for e in povm.elements:
            assert np.allclose(e, IDENTITY2 / 2)

    def test_saturates_joint_measurability(self):
        s = 2**-0.5
        povm = x_prime(s)
        t = np.trace(SIGMA_X @ povm.elements[0]).real
        assert t == pytest.approx(2**-0.5, abs=1e-12)

    def test_matches_second_marginal(self):
        for s in (0.0, 0.25, 2**-0.5, 0.9, 1.0):
            pair = marginals(overall_observable(luders(z_povm(s)), x_povm(np.pi / 2, 1.0)))
            for x, y in zip(pair.second.elements, x_prime(s).elements):
                assert max_abs(x - y) <= 1e-9


class TestJointMeasurability:
    def test_boundary_cases(self):
        assert jointly_measurable_unbiased(1.0, 0.0)
        assert jointly_measurable_unbiased(2**-0.5, 2**-0.5)

    def test_violating_pair(self):
        assert not jointly_measurable_unbiased(0.9, 0.9)


class TestTradeoff:
    def test_sharp_endpoint(self):
        point = tradeoff(1.0)
        assert point == pytest.approx((0.0, 1.0, 1.0), abs=1e-12)

    def test_trivial_endpoint(self):
        point = tradeoff(0.0)
        assert point == pytest.approx((1.0, 0.0, 1.0), abs=1e-12)

    def test_balanced_maximum(self):
        point = tradeoff(2**-0.5)
        assert point.d_z == pytest.approx(H_BIN_LAM, abs=1e-12)
        assert point.d_x_prime == pytest.approx(H_BIN_LAM, abs=1e-12)
        assert point.total == pytest.approx(TWICE_H_BIN, abs=1e-12)

    def test_symmetric_and_peaked_at_balance(self):
        grid = np.linspace(0.0, 1.0, 1001)
        totals = np.array([tradeoff(s).total for s in grid])
        mirrored = np.array([tradeoff(np.sqrt(1 - s * s)).total for s in grid])
        assert np.max(np.abs(totals - mirrored)) <= 1e-10
        peak = grid[np.argmax(totals)]
        assert abs(peak - 2**-0.5) <= grid[1] - grid[0]

    def test_components_match_device_uncertainty(self):
        from sequam.quantum import random_mixed_state
        from sequam.uncertainty import device_uncertainty

        for s in (0.1, 0.5, 2**-0.5, 0.95):
            point = tradeoff(s)
            rho = random_mixed_state(2, 11)
            assert device_uncertainty(z_povm(s), rho) == pytest.approx(point.d_z, abs=1e-10)
            assert device_uncertainty(x_prime(s), rho) == pytest.approx(
                point.d_x_prime, abs=1e-10
            )

    def test_pauli_matrices_are_involutions(self):
        assert np.allclose(SIGMA_X @ SIGMA_X, IDENTITY2)
        assert np.allclose(SIGMA_Z @ SIGMA_Z, IDENTITY2)
