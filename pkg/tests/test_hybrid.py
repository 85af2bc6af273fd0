import numpy as np
import pytest

from src.errors import DomainError
from src.hybrid import (
    DigitalStack, expand_to_phases, factorize, hybrid_precoders, numerical_rank,
    phase_pair_complex, phase_pair_imag, phase_pair_real, reconstruct_from_phases,
)


@pytest.mark.parametrize("x", [2.0, -2.0, 0.0, 1.3, -0.7])
def test_phase_pair_real(x):
    pair = phase_pair_real(x)
    assert pair.value() == pytest.approx(complex(x), abs=1e-12)


def test_phase_pair_real_at_two():
    assert phase_pair_real(2.0) == (0.0, -0.0)


@pytest.mark.parametrize("x", [2.0, -2.0, 0.0, 0.4, -1.9])
def test_phase_pair_imag(x):
    assert phase_pair_imag(x).value() == pytest.approx(1j * x, abs=1e-12)


def test_phase_pair_complex_values(rng):
    for _ in range(200):
        z = rng.uniform(0, 2) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        assert phase_pair_complex(z).value() == pytest.approx(z, abs=1e-12)


def test_phase_pair_of_zero():
    pair = phase_pair_complex(0)
    assert pair == pytest.approx((np.pi / 2, -np.pi / 2))
    assert abs(pair.value()) < 1e-12


def test_phase_pair_rejects_large_modulus():
    with pytest.raises(DomainError):
        phase_pair_complex(2.5)
    with pytest.raises(DomainError):
        phase_pair_real(-2.1)


def test_expand_and_reconstruct(rng):
    A = rng.uniform(-1.4, 1.4, (5, 3)) + 1j * rng.uniform(-1.4, 1.4, (5, 3))
    A[2, 1] = 0
    pairs = expand_to_phases(A)
    assert len(pairs) == 14
    np.testing.assert_allclose(reconstruct_from_phases(pairs, A.shape), A, atol=1e-12)


def test_expand_rejects_large_entries():
    with pytest.raises(DomainError):
        expand_to_phases(np.array([[2.5 + 0j]]))


def _stack(cgauss, N, K, N_f):
    return [cgauss(N, K) for _ in range(N_f)]


@pytest.mark.parametrize("N", [8, 16, 32, 64])
@pytest.mark.parametrize("K,N_f", [(1, 1), (2, 4), (4, 8), (8, 1)])
def test_factorization_is_exact(N, K, N_f, cgauss):
    blocks = _stack(cgauss, N, K, N_f)
    fact = factorize(DigitalStack(blocks))
    r = fact.rank
    assert r == min(N, K * N_f)
    for F, B in zip(hybrid_precoders(fact), blocks):
        assert np.linalg.norm(F - B) / np.linalg.norm(B) < 1e-10
    np.testing.assert_allclose(fact.analog @ fact.mixing, fact.basis, atol=1e-10)


@pytest.mark.parametrize("N,K,N_f", [(16, 2, 4), (32, 8, 2), (8, 4, 4)])
def test_factorization_amplitude_and_sparsity(N, K, N_f, cgauss):
    fact = factorize(DigitalStack(_stack(cgauss, N, K, N_f)))
    r = fact.rank
    assert np.max(np.abs(fact.analog)) <= 2.0 + 1e-12
    assert fact.structural_nonzeros() == r * (N - r + 1)
    assert np.count_nonzero(np.abs(fact.analog) > 0) <= r * (N - r + 1)
    assert fact.phase_shifter_count() == 2 * r * (N - r + 1)
    # diagonal block of A~^H is diag(1/alpha)
    lead = fact.analog[fact.antenna_order[:r], :]
    np.testing.assert_allclose(lead, np.diag(1.0 / fact.alpha), atol=1e-14)
    assert np.all(fact.alpha >= 0.5)


def test_structural_mask_covers_nonzeros(cgauss):
    fact = factorize(DigitalStack(_stack(cgauss, 12, 3, 2)))
    mask = fact.structural_mask()
    assert not np.any((np.abs(fact.analog) > 0) & ~mask)


def test_low_rank_stack(cgauss):
    # N_f sub-carriers sharing a 3-dimensional column space
    N = 16
    U = cgauss(N, 3)
    blocks = [U @ cgauss(3, 2) for _ in range(4)]
    fact = factorize(DigitalStack(blocks))
    assert fact.rank == 3
    for F, B in zip(hybrid_precoders(fact), blocks):
        assert np.linalg.norm(F - B) / np.linalg.norm(B) < 1e-10


def test_pivoted_fallback(cgauss):
    # the stack lives on the last antennas only, so the leading block is singular
    N = 10
    blocks = []
    for _ in range(3):
        B = np.zeros((N, 2), dtype=complex)
        B[6:] = cgauss(4, 2)
        blocks.append(B)
    fact = factorize(DigitalStack(blocks))
    assert fact.rank == 4
    assert not np.array_equal(fact.antenna_order, np.arange(N))
    assert np.max(np.abs(fact.analog)) <= 2.0 + 1e-12
    for F, B in zip(hybrid_precoders(fact), blocks):
        assert np.linalg.norm(F - B) / np.linalg.norm(B) < 1e-10


def test_requested_pivoting_avoids_weak_antenna(cgauss):
    # antenna 0 is nearly silent, which makes the unpivoted leading block ill-conditioned
    blocks = _stack(cgauss, 16, 2, 2)
    for B in blocks:
        B[0] *= 1e-6
    plain = factorize(DigitalStack(blocks))
    pivoted = factorize(DigitalStack(blocks), pivot=True)
    r = pivoted.rank
    assert 0 not in pivoted.antenna_order[:r]
    assert np.max(pivoted.alpha) < np.max(plain.alpha)
    lead = pivoted.analog[pivoted.antenna_order[:r], :]
    np.testing.assert_allclose(lead, np.diag(1.0 / pivoted.alpha), atol=1e-14)
    assert pivoted.structural_nonzeros() == r * (16 - r + 1)
    for F, B in zip(hybrid_precoders(pivoted), blocks):
        assert np.linalg.norm(F - B) / np.linalg.norm(B) < 1e-10


def test_full_rank_square_stack(cgauss):
    blocks = _stack(cgauss, 6, 3, 2)
    fact = factorize(DigitalStack(blocks))
    assert fact.rank == 6
    np.testing.assert_allclose(fact.analog[fact.antenna_order], 2.0 * np.eye(6), atol=1e-14)


def test_zero_stack_rejected():
    with pytest.raises(DomainError):
        factorize(DigitalStack([np.zeros((4, 2))]))


def test_stack_shape_mismatch():
    with pytest.raises(DomainError):
        DigitalStack([np.ones((4, 1)), np.ones((5, 1))])


def test_stack_offsets(cgauss):
    stack = DigitalStack([cgauss(4, 1), cgauss(4, 3), cgauss(4, 2)])
    np.testing.assert_array_equal(stack.offsets(), [0, 1, 4, 6])
    assert numerical_rank(stack.matrix) == 4
