import math

import pytest

import hchain


def test_modes_and_oracle_agree():
    spec = hchain.ChainSpec(5, mass=2.0, stiffness=3.0)
    table = hchain.build_mode_table(spec)
    eig = hchain.symmetric_eigen(hchain.build_dynamical_matrix(spec), 1e-13)
    for m, omega in enumerate(table.frequencies):
        lam = spec.mass * omega**2 / spec.stiffness**2
        assert lam == pytest.approx(eig["eigenvalues"][m], abs=1e-9)
    assert table.parities[:2] == ["even", "odd"]
    assert table.amplitude(0, 3) == pytest.approx(1 / math.sqrt(5))


def test_transform_round_trip():
    table = hchain.build_mode_table(hchain.ChainSpec(7))
    y = [0.1 * i - 0.2 for i in range(7)]
    back = hchain.from_normal(hchain.to_normal(y, table), table)
    assert back == pytest.approx(y, abs=1e-12)


def test_thermo():
    state = hchain.ThermoState.at(1 / math.log(2))
    assert hchain.partition_function(1.0, state) == pytest.approx(2.0)
    assert hchain.mean_occupation(1.0, state) == pytest.approx(1.0)
    assert hchain.mean_u_squared(1.0, 1.0, hchain.ThermoState.zero()) == 0.5
    with pytest.raises(ValueError):
        hchain.partition_function(0.0, state)
    energies = [e for _, e in hchain.enumerate_phonon_energies(hchain.ChainSpec(3), 2.8)]
    assert energies == pytest.approx([0, 1, math.sqrt(3), 2, 1 + math.sqrt(3)])


def test_length_observables():
    spec = hchain.ChainSpec(50)
    state = hchain.ThermoState.at(1000.0)
    assert hchain.mean_length(spec) == 49.0
    assert hchain.length_variance_exact(spec, state) == pytest.approx(49000.0, rel=1e-5)
    stats = hchain.length_statistics(hchain.ChainSpec(100), hchain.ThermoState.at(200.0))
    assert stats["riemann_bound"] >= stats["variance"]
    assert stats["gamma"] == pytest.approx(0.01)


def test_sweep_and_fit():
    ns = [256 * 2**i for i in range(9)]
    result = hchain.run_sweep(ns, [2000.0], hchain.ChainSpec(2))
    assert len(result["rows"]) == 9
    assert result["fits"][0]["slope"] == pytest.approx(-0.5, abs=0.01)
    slope, intercept, residual = hchain.fit_loglog([(n, 7 / math.sqrt(n)) for n in (10, 100, 1000)])
    assert slope == pytest.approx(-0.5) and intercept == pytest.approx(math.log(7))


def test_preset_and_render():
    spec, state, omega_max = hchain.si_preset("sodium-like", 1000)
    assert spec.units.hbar * omega_max == pytest.approx(3.313e-21, rel=1e-3)
    assert state.temperature == 300.0
    text = hchain.render(["modes", "--n", "2"])
    assert text.splitlines()[0] == "m,k_m,omega_m,parity,Y_1,Y_2"
    with pytest.raises(ValueError):
        hchain.render(["length", "--n", "1"])
