"""Encoders: transitions, local operators, density powers, k-body elements."""

import itertools

import numpy as np
import pytest

import bosoniq as bq


def labels(s):
    return {string.label(): coeff for coeff, string in s.strings()}


def ps(label, n):
    s = bq.PauliString.from_label(label)
    return bq.PauliString(n, s.x, s.z)


class TestUnaryTransition:
    def test_offdiagonal_four_strings(self):
        lay = bq.EncodingLayout("U1Q", N=1, M=2)
        out = bq.encode_transition_unary(0, 1, 0, lay)
        got = labels(out)
        assert got == {
            "X0 X1": pytest.approx(0.25),
            "Y0 Y1": pytest.approx(0.25),
            "X0 Y1": pytest.approx(0.25j),
            "Y0 X1": pytest.approx(-0.25j),
        }
        # matrix truth: maps the m=1 one-hot state (code 2) to l=0 (code 1)
        mat = bq.pauli_matrix(out)
        assert mat[1, 2] == pytest.approx(1.0)

    def test_projector(self):
        lay = bq.EncodingLayout("U1Q", N=1, M=2)
        out = bq.encode_transition_unary(0, 0, 0, lay)
        assert labels(out) == {"I": pytest.approx(0.5), "Z0": pytest.approx(-0.5)}

    def test_symmetric_folds_to_two_strings(self):
        lay = bq.EncodingLayout("U1Q", N=1, M=2)
        out = bq.encode_rdm_term((0,), (1,), True, lay)
        assert labels(out) == {
            "X0 X1": pytest.approx(0.5),
            "Y0 Y1": pytest.approx(0.5),
        }

    def test_index_range(self):
        lay = bq.EncodingLayout("U1Q", N=1, M=2)
        with pytest.raises(IndexError):
            bq.encode_transition_unary(0, 2, 0, lay)
        with pytest.raises(IndexError):
            bq.encode_transition_unary(0, 1, 1, lay)


class TestBinaryTransition:
    def test_width_one_raising(self):
        lay = bq.EncodingLayout("B1Q", N=1, M=2)
        out = bq.encode_transition_binary(1, 0, 0, lay)
        assert labels(out) == {
            "X0": pytest.approx(0.5),
            "Y0": pytest.approx(-0.5j),
        }
        np.testing.assert_allclose(
            bq.pauli_matrix(out), np.array([[0, 0], [1, 0]]), atol=1e-15
        )

    def test_full_hamming_distance(self):
        lay = bq.EncodingLayout("B1Q", N=1, M=4)
        out = bq.encode_transition_binary(1, 2, 0, lay)
        assert len(out) == 4
        assert set(out.weights().tolist()) == {2}

    def test_hamming_distance_one(self):
        lay = bq.EncodingLayout("B1Q", N=1, M=4)
        out = bq.encode_transition_binary(0, 1, 0, lay)
        assert len(out) == 4
        weights = sorted(out.weights().tolist())
        assert weights == [1, 1, 2, 2]

    def test_collected_count_is_width_power(self):
        for M in (4, 8, 16):
            lay = bq.EncodingLayout("B1Q", N=1, M=M)
            w = lay.register_width
            for l, m in ((0, M - 1), (1, 2), (0, 1)):
                out = bq.encode_transition_binary(l, m, 0, lay)
                assert len(out) == 2**w
                assert out.weights().max() <= w


class TestLocalOperators:
    def test_u2q_create_d2(self):
        lay = bq.EncodingLayout("U2Q", N=1, M=1)
        out = bq.u2q_local(0, "create", lay)
        assert len(out) == 4
        assert set(out.weights().tolist()) == {2}
        mags = sorted(abs(c) for c in out.coeffs)
        assert mags == pytest.approx([0.25] * 4)

    def test_u2q_number_d3(self):
        lay = bq.EncodingLayout("U2Q", N=2, M=1)
        out = bq.u2q_local(0, "number", lay)
        assert labels(out) == {
            "I": pytest.approx(1.5),
            "Z1": pytest.approx(-0.5),
            "Z2": pytest.approx(-1.0),
        }

    def test_b2q_number_d2(self):
        lay = bq.EncodingLayout("B2Q", N=1, M=1)
        out = bq.u2q_local(0, "number", lay)
        assert labels(out) == {"I": pytest.approx(0.5), "Z0": pytest.approx(-0.5)}

    def test_create_count_4_dminus1(self):
        for d in (2, 3, 4, 5):
            lay = bq.EncodingLayout("U2Q", N=d - 1, M=1)
            out = bq.u2q_local(0, "create", lay)
            assert len(out) == 4 * (d - 1)
            assert set(out.weights().tolist()) == {2}


class TestOperatorPowers:
    def test_annihilate_squared_d3(self):
        lay = bq.EncodingLayout("U2Q", N=2, M=1)  # d = 3
        out = bq.u2q_operator_power(0, "annihilate", 2, lay)
        # a^2 = sqrt(2) |0><2|: one transition, four strings
        basis = bq.FockBasis.second_quantized(1, 3)
        emb = bq.EmbeddingMap.build(basis, lay)
        mat, leak = bq.restricted_matrix(out, emb)
        expected = np.zeros((3, 3))
        expected[0, 2] = np.sqrt(2)
        np.testing.assert_allclose(mat, expected, atol=1e-12)
        assert len(out) == 4

    def test_hardcore_truncation_empty(self):
        lay = bq.EncodingLayout("U2Q", N=1, M=1)  # d = 2
        out = bq.u2q_operator_power(0, "annihilate", 2, lay)
        assert len(out) == 0

    def test_annihilate_cubed_d4(self):
        lay = bq.EncodingLayout("U2Q", N=3, M=1)  # d = 4
        out = bq.u2q_operator_power(0, "annihilate", 3, lay)
        basis = bq.FockBasis.second_quantized(1, 4)
        emb = bq.EmbeddingMap.build(basis, lay)
        mat, _ = bq.restricted_matrix(out, emb)
        assert mat[0, 3] == pytest.approx(np.sqrt(6))
        assert np.count_nonzero(np.abs(mat) > 1e-12) == 1

    def test_single_transition_sum_length(self):
        # one sum over d-k transitions, not a k-fold product
        lay = bq.EncodingLayout("U2Q", N=4, M=1)  # d = 5
        out = bq.u2q_operator_power(0, "annihilate", 2, lay)
        assert len(out) == 4 * (5 - 2)


class TestNumberPower:
    def test_u1q_linear(self):
        lay = bq.EncodingLayout("U1Q", N=3, M=2)
        out = bq.number_power(0, 1, lay)
        got = labels(out)
        assert got["I"] == pytest.approx(1.5)
        for alpha in range(3):
            assert got[f"Z{alpha * 2}"] == pytest.approx(-0.5)
        assert len(out) == 4  # N+1 strings of weight <= 1

    def test_u2q_square_d3(self):
        lay = bq.EncodingLayout("U2Q", N=2, M=1)
        out = bq.number_power(0, 2, lay)
        assert labels(out) == {
            "I": pytest.approx(2.5),
            "Z1": pytest.approx(-0.5),
            "Z2": pytest.approx(-2.0),
        }

    def test_u1q_square_two_particles(self):
        lay = bq.EncodingLayout("U1Q", N=2, M=1)
        out = bq.number_power(0, 2, lay)
        assert labels(out) == {
            "I": pytest.approx(0.5),
            "Z0": pytest.approx(-0.5),
            "Z1": pytest.approx(-0.5),
            "Z0 Z1": pytest.approx(0.5),
        }

    def test_exceeding_particles_is_empty(self):
        lay = bq.EncodingLayout("U1Q", N=2, M=2)
        assert len(bq.number_power(0, 3, lay)) == 0

    def test_projector_product_count(self):
        # binomial(N, k) projector products before expansion: all Z strings
        lay = bq.EncodingLayout("U1Q", N=4, M=2)
        out = bq.number_power(0, 2, lay)
        assert np.all(out.xs == 0)


class TestDensityCorrelation:
    def test_u1q_single_particle_vanishes_physically(self):
        lay = bq.EncodingLayout("U1Q", N=1, M=2)
        out = bq.density_correlation((0, 1), lay)
        assert len(out) == 4  # nonzero sum on the full space
        basis = bq.FockBasis.first_quantized(1, 2)
        emb = bq.EmbeddingMap.build(basis, lay)
        mat, leak = bq.restricted_matrix(out, emb)
        np.testing.assert_allclose(mat, 0, atol=1e-12)
        assert leak <= 1e-12

    def test_u2q_hardcore_pattern(self):
        lay = bq.EncodingLayout("U2Q", N=1, M=2)
        out = bq.density_correlation((0, 1), lay)
        assert labels(out) == {
            "I": pytest.approx(0.25),
            "Z1": pytest.approx(-0.25),
            "Z3": pytest.approx(-0.25),
            "Z1 Z3": pytest.approx(0.25),
        }

    def test_all_z(self):
        for kind in ("U1Q", "B1Q", "U2Q", "B2Q"):
            lay = bq.EncodingLayout(kind, N=2, M=4)
            out = bq.density_correlation((0, 2), lay)
            assert np.all(out.xs == 0)

    def test_k1_matches_number_power(self):
        for kind in ("U1Q", "B1Q", "U2Q", "B2Q"):
            lay = bq.EncodingLayout(kind, N=2, M=3)
            a = bq.density_correlation((1,), lay)
            b = bq.number_power(1, 1, lay)
            assert bq.sums_close(a, b)

    def test_duplicate_sites_rejected(self):
        lay = bq.EncodingLayout("U1Q", N=2, M=2)
        with pytest.raises(ValueError):
            bq.density_correlation((0, 0), lay)


class TestRdmTerm:
    def test_u1q_symmetric_count(self):
        lay = bq.EncodingLayout("U1Q", N=3, M=2)
        out = bq.encode_rdm_term((0,), (1,), True, lay)
        assert len(out) == 6
        assert set(out.weights().tolist()) == {2}

    def test_u2q_symmetric_eight_string_signs(self):
        lay = bq.EncodingLayout("U2Q", N=1, M=2)
        out = bq.encode_rdm_term((0,), (1,), True, lay)
        got = labels(out)
        eighth = 0.125
        assert got == {
            "X0 X1 X2 X3": pytest.approx(eighth),
            "X0 X1 Y2 Y3": pytest.approx(eighth),
            "Y0 Y1 X2 X3": pytest.approx(eighth),
            "Y0 Y1 Y2 Y3": pytest.approx(eighth),
            "X0 Y1 X2 Y3": pytest.approx(eighth),
            "Y0 X1 Y2 X3": pytest.approx(eighth),
            "Y0 X1 X2 Y3": pytest.approx(-eighth),
            "X0 Y1 Y2 X3": pytest.approx(-eighth),
        }

    def test_b1q_hamming2_four_strings(self):
        lay = bq.EncodingLayout("B1Q", N=1, M=4)
        out = bq.encode_rdm_term((0,), (3,), False, lay)
        assert len(out) == 4
        assert set(out.weights().tolist()) == {2}

    def test_count_laws_u1q(self):
        for k, N in itertools.product((1, 2), range(1, 7)):
            if k > N:
                continue
            lay = bq.EncodingLayout("U1Q", N=N, M=2 * k)
            creates = tuple(range(0, 2 * k, 2))
            annihilates = tuple(range(1, 2 * k, 2))
            out = bq.encode_rdm_term(creates, annihilates, False, lay)
            assert len(out) == 4**k * N**k
            assert set(out.weights().tolist()) == {2 * k}
            sym = bq.encode_rdm_term(creates, annihilates, True, lay)
            assert len(sym) == 4**k * N**k // 2
            assert np.abs(sym.coeffs.imag).max() <= 1e-12

    def test_count_laws_u2q(self):
        for k, N in itertools.product((1, 2), range(1, 5)):
            lay = bq.EncodingLayout("U2Q", N=N, M=2 * k)
            creates = tuple(range(0, 2 * k, 2))
            annihilates = tuple(range(1, 2 * k, 2))
            out = bq.encode_rdm_term(creates, annihilates, False, lay)
            assert len(out) == (4 * N) ** (2 * k)
            assert set(out.weights().tolist()) == {4 * k}
            sym = bq.encode_rdm_term(creates, annihilates, True, lay)
            assert len(sym) == (4 * N) ** (2 * k) // 2

    def test_binary_bounds(self):
        for N, M in itertools.product((1, 2, 3), (4, 8, 16, 32)):
            w = bq.EncodingLayout("B1Q", N=N, M=M).register_width
            for k, idx in ((1, ((0,), (M - 1,))), (2, ((0, 2), (1, 3)))):
                if k > N:
                    continue
                lay = bq.EncodingLayout("B1Q", N=N, M=M)
                out = bq.encode_rdm_term(*idx, False, lay)
                assert len(out) <= N**k * 2 ** (k * w)
                assert out.weights().max() <= k * w
        for N in (1, 2, 3):
            lay = bq.EncodingLayout("B2Q", N=N, M=4)
            w = lay.register_width
            out = bq.encode_rdm_term((0, 2), (1, 3), False, lay)
            assert len(out) <= N**4 * 2 ** (4 * w)
            assert out.weights().max() <= 4 * w

    def test_register_permutation_invariance(self):
        # first-quantized sums treat every particle register identically
        lay = bq.EncodingLayout("U1Q", N=3, M=3)
        out = bq.encode_rdm_term((0,), (2,), True, lay)
        width = lay.register_width
        perm = [2, 0, 1]
        remapped = []
        for coeff, s in out.strings():
            x = z = 0
            for q in range(lay.n_qubits):
                reg, off = divmod(q, width)
                target = perm[reg] * width + off
                x |= ((s.x >> q) & 1) << target
                z |= ((s.z >> q) & 1) << target
            remapped.append((coeff, bq.PauliString(lay.n_qubits, x, z)))
        assert bq.sums_close(bq.collect(remapped), out)

    def test_k_exceeding_particles_raises(self):
        lay = bq.EncodingLayout("U1Q", N=1, M=4)
        with pytest.raises(ValueError):
            bq.encode_rdm_term((0, 2), (1, 3), False, lay)

    def test_index_out_of_range(self):
        lay = bq.EncodingLayout("U1Q", N=2, M=3)
        with pytest.raises(IndexError):
            bq.encode_rdm_term((0,), (3,), False, lay)


class TestLayout:
    def test_qubit_counts_match_register_tables(self):
        assert bq.qubit_count("U1Q", 3, 8) == 24
        assert bq.qubit_count("B1Q", 3, 8) == 9
        assert bq.qubit_count("U2Q", 3, 8) == 32
        assert bq.qubit_count("B2Q", 3, 8) == 16
        assert bq.qubit_count("B1Q", 6, 128) == 42

    def test_d_defaults_to_n_plus_one(self):
        lay = bq.EncodingLayout("U2Q", N=3, M=2)
        assert lay.d == 4
        assert bq.EncodingLayout("U1Q", N=3, M=2).d is None

    def test_sequential_registers(self):
        lay = bq.EncodingLayout("U2Q", N=2, M=3)
        assert lay.qubit(1, 2) == 1 * 3 + 2

    def test_validation(self):
        with pytest.raises(ValueError):
            bq.EncodingLayout("U3Q", N=1, M=2)
        with pytest.raises(ValueError):
            bq.EncodingLayout("U1Q", N=0, M=2)
