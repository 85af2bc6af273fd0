import numpy as np
import pytest

from src.channel import (
    ArrayGeometry, GeometricParams, Lemma2AodSpec, TimeDomainChannel, draw_channels,
    draw_geometric_taps, draw_rayleigh_taps, draw_ula_uniform_aods, gen_lemma2_aods,
    steering_matrix, to_frequency, ula_steering,
)
from src.errors import DomainError
from src.utils.linalg import numerical_rank


def test_steering_broadside():
    a = ula_steering(0.0, ArrayGeometry(4))
    np.testing.assert_allclose(a, 0.5 * np.ones(4), atol=1e-15)


def test_steering_quarter_turns():
    a = ula_steering(np.pi / 6, ArrayGeometry(4))
    np.testing.assert_allclose(a, 0.5 * np.array([1, 1j, -1, -1j]), atol=1e-12)


def test_steering_fourier_orthogonality():
    N = 16
    g = ArrayGeometry(N)
    a1 = ula_steering(0.0, g)
    a2 = ula_steering(np.arcsin(2.0 / N), g)
    assert abs(np.vdot(a1, a2)) < 1e-12


def test_steering_unit_norm(rng):
    g = ArrayGeometry(37, wavelength=2.0, spacing=0.7)
    for theta in rng.uniform(0, 2 * np.pi, size=50):
        assert np.linalg.norm(ula_steering(theta, g)) == pytest.approx(1.0, abs=1e-12)


def test_steering_matrix_matches_columns(rng):
    g = ArrayGeometry(8)
    aods = rng.uniform(0, 2 * np.pi, size=5)
    tau = steering_matrix(aods, g)
    for m, theta in enumerate(aods):
        np.testing.assert_allclose(tau[:, m], ula_steering(theta, g), atol=1e-14)


def test_geometry_rejects_bad_values():
    with pytest.raises(ValueError):
        ArrayGeometry(0)
    with pytest.raises(ValueError):
        ArrayGeometry(4, spacing=-1.0)


def test_single_path_single_tap_is_steering(rng):
    g = ArrayGeometry(8)
    ch = draw_geometric_taps(g, GeometricParams(aods=[[0.3]], n_taps=1), rng)
    tap = ch.taps[0, :, 0]
    a = ula_steering(0.3, g)
    coef = np.vdot(a, tap)
    np.testing.assert_allclose(tap, coef * a, atol=1e-12)


def test_geometric_gain_moment(rng):
    L_s, trials = 4, 25000
    g = ArrayGeometry(1)
    aods = np.zeros((trials, L_s))
    ch = draw_geometric_taps(g, GeometricParams(aods=aods, n_taps=1), rng)
    # N=1, steering = 1: the tap is sum_m c_m with c_m ~ sqrt(1/L_s) CN(0, 1)
    power = np.mean(np.abs(ch.taps[:, 0, 0]) ** 2)
    assert power == pytest.approx(1.0, rel=0.03)


def test_geometric_params_validation():
    with pytest.raises(DomainError):
        GeometricParams(aods=[[0.1, 0.2]], n_taps=0)
    with pytest.raises(DomainError):
        GeometricParams(aods=[[0.1]], n_taps=1, pathloss=[1.0, 2.0])
    with pytest.raises(DomainError):
        GeometricParams(aods=[[0.1]], n_taps=1, pathloss=[-1.0])


def test_rayleigh_single_tap_is_flat(rng):
    ch = draw_rayleigh_taps(4, 1, rng, n_users=2)
    h = to_frequency(ch, 8).h
    for i in range(8):
        np.testing.assert_allclose(h[i], h[0], atol=1e-14)


def test_rayleigh_unit_variance(rng):
    ch = draw_rayleigh_taps(4, 8, rng, n_users=3000)
    h = to_frequency(ch, 8).h
    assert np.mean(np.abs(h) ** 2) == pytest.approx(1.0, rel=0.02)


def test_rayleigh_subcarriers_uncorrelated(rng):
    ch = draw_rayleigh_taps(1, 8, rng, n_users=20000)
    h = to_frequency(ch, 8).h[:, 0, :]
    corr = np.mean(h[1] * np.conj(h[3]))
    assert abs(corr) < 0.03


def test_to_frequency_single_tap():
    taps = np.array([[[1 + 2j], [3 - 1j]]])
    h = to_frequency(TimeDomainChannel(taps=taps), 4).h
    for i in range(4):
        np.testing.assert_allclose(h[i, :, 0], [1 - 2j, 3 + 1j])


def test_to_frequency_delayed_tap():
    c = 0.5 - 0.25j
    taps = np.zeros((1, 1, 2), dtype=complex)
    taps[0, 0, 1] = c
    N_f = 8
    h = to_frequency(TimeDomainChannel(taps=taps), N_f).h
    for i in range(N_f):
        assert h[i, 0, 0] == pytest.approx(np.conj(c) * np.exp(-2j * np.pi * i / N_f))


def test_to_frequency_matches_direct_sum(cgauss):
    N_f, L_p = 8, 5
    taps = cgauss(3, 4, L_p)
    h = to_frequency(TimeDomainChannel(taps=taps), N_f).h
    for i in range(N_f):
        for k in range(3):
            for n in range(4):
                direct = sum(np.conj(taps[k, n, s]) * np.exp(-2j * np.pi * i * s / N_f)
                             for s in range(L_p))
                assert h[i, n, k] == pytest.approx(direct, abs=1e-12)


def test_to_frequency_superposition(cgauss):
    X, Y = cgauss(2, 3, 4), cgauss(2, 3, 4)
    a, b = 0.7 - 0.2j, -1.1 + 0.4j
    lhs = to_frequency(TimeDomainChannel(taps=a * X + b * Y), 8).h
    rhs = (np.conj(a) * to_frequency(TimeDomainChannel(taps=X), 8).h
           + np.conj(b) * to_frequency(TimeDomainChannel(taps=Y), 8).h)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_parseval(cgauss):
    N_f = 16
    taps = cgauss(2, 5, 6)
    h = to_frequency(TimeDomainChannel(taps=taps), N_f).h
    lhs = np.sum(np.abs(h) ** 2, axis=0)
    rhs = N_f * np.sum(np.abs(taps) ** 2, axis=2).T
    np.testing.assert_allclose(lhs, rhs, rtol=1e-9)


def test_to_frequency_rejects_long_channels(cgauss):
    with pytest.raises(DomainError):
        to_frequency(TimeDomainChannel(taps=cgauss(1, 2, 9)), 8)


def test_frequency_channel_views(small_channels):
    ch = small_channels
    assert (ch.n_subcarriers, ch.n_antennas, ch.n_users) == (4, 8, 6)
    np.testing.assert_array_equal(ch.matrix(2, [4, 1]), ch.h[2][:, [4, 1]])
    assert ch.restrict(3).h.shape == (4, 3, 6)
    Q, _ = np.linalg.qr(ch.h[0])
    proj = ch.project(Q[:, :5])
    np.testing.assert_allclose(proj.matrix(1), Q[:, :5].conj().T @ ch.matrix(1), atol=1e-12)


def test_lemma2_zero_jitter_on_grid(rng):
    N = 64
    spec = Lemma2AodSpec(theta=np.pi / 2, n_bins=16, jitter=0.0)
    sines = np.sin(gen_lemma2_aods(spec, 10, 1, rng, N))
    grid = spec.grid(N)
    dist = np.min(np.abs(sines[..., None] - grid), axis=-1)
    assert np.max(dist) < 1e-12


def test_lemma2_default_jitter_within_half_bin(rng):
    N = 256
    spec = Lemma2AodSpec(theta=np.pi / 2, n_bins=16)
    sines = np.sin(gen_lemma2_aods(spec, 20, 8, rng, N))
    dist = np.min(np.abs(sines[..., None] - spec.grid(N)), axis=-1)
    assert np.max(dist) <= 1.0 / (2 * N) + 1e-12


def test_lemma2_grid_outside_unit_interval(rng):
    with pytest.raises(DomainError):
        gen_lemma2_aods(Lemma2AodSpec(theta=np.pi / 2, n_bins=40), 2, 2, rng, 64)


def test_lemma2_steering_rank_without_jitter(rng):
    N, N_a = 64, 8
    spec = Lemma2AodSpec(theta=np.pi / 2, n_bins=N_a, jitter=0.0)
    aods = gen_lemma2_aods(spec, 16, 4, rng, N)
    tau = steering_matrix(aods.ravel(), ArrayGeometry(N))
    assert numerical_rank(tau, 1e-9) <= N_a


def test_lemma2_steering_energy_concentrated(rng):
    N, N_a = 64, 8
    spec = Lemma2AodSpec(theta=np.pi / 2, n_bins=N_a)
    aods = gen_lemma2_aods(spec, 16, 4, rng, N)
    tau = steering_matrix(aods.ravel(), ArrayGeometry(N))
    s = np.linalg.svd(tau, compute_uv=False)
    captured = np.sum(s[:N_a + 2] ** 2) / np.sum(s ** 2)
    assert captured > 0.8


def test_uniform_aods_range(rng):
    aods = draw_ula_uniform_aods(5, 3, rng)
    assert aods.shape == (5, 3)
    assert np.all((aods >= 0) & (aods <= 2 * np.pi))


@pytest.mark.parametrize("kind", ["rayleigh", "ula-uniform", "ula-lemma2"])
def test_draw_channels_shapes(kind, rng):
    ch = draw_channels(kind, 16, 8, 4, 5, rng, n_scatterers=3,
                       lemma2=Lemma2AodSpec(theta=np.pi / 2, n_bins=4))
    assert ch.h.shape == (8, 16, 5)
    assert np.all(np.isfinite(ch.h))


def test_draw_channels_unknown_kind(rng):
    with pytest.raises(DomainError):
        draw_channels("rician", 4, 4, 1, 2, rng)
