import json

import numpy as np
import pytest

import fockq


def test_harmonic_chain_energies_match_dispersion():
    model = fockq.harmonic_chain(sites=3)
    sys = fockq.quantize(model, cutoff=3)
    assert sys.species == "neutral_bosonic"
    assert sys.modes == 3
    disp = np.array(fockq.harmonic_dispersion(sites=3))
    np.testing.assert_allclose(sys.one_particle_energies, disp, atol=1e-10)
    assert sys.h_z_min == pytest.approx(disp[0], abs=1e-10)
    assert sys.r_vacuum < 1e-12
    assert sys.r_positive < 1e-12


def test_charged_pair_spectrum_and_charge():
    form = np.array([[-1j, 0], [0, 1j]])
    gen = np.array([[1.0, 0.0], [0.0, -2.0]])
    model = fockq.Model("charged_bosonic", form, gen)
    sys = fockq.quantize(model, cutoff=2)

    h = sys.hamiltonian
    q = sys.charge
    np.testing.assert_allclose(h @ q - q @ h, 0, atol=1e-12)

    energies = np.sort(np.linalg.eigvalsh(h))
    np.testing.assert_allclose(energies, [0, 1, 2, 2, 3, 4], atol=1e-10)
    charges = np.sort(np.linalg.eigvalsh(q))
    np.testing.assert_allclose(charges, [-2, -1, 0, 0, 1, 2], atol=1e-10)


def test_commutation_relation_on_low_sectors():
    model = fockq.harmonic_chain(sites=2)
    sys = fockq.quantize(model, cutoff=8)
    omega = np.real(np.array(model.form))

    rng = np.random.default_rng(5)
    y1 = rng.normal(size=4)
    y2 = rng.normal(size=4)
    f1 = sys.field(y1.astype(complex))
    f2 = sys.field(y2.astype(complex))
    bracket = f1 @ f2 - f2 @ f1
    want = 1j * float(y1 @ omega @ y2)

    # states with at most cutoff - 2 quanta are untouched by the truncation
    low = 21  # dim of the sectors with N <= 5 for two modes
    block = bracket[:low, :low] - want * np.eye(low)
    assert np.abs(block).max() < 1e-10


def test_fermionic_anticommutation_exact():
    model = fockq.majorana_chain(sites=4, coupling=0.6)
    sys = fockq.quantize(model, cutoff=0)
    assert sys.fock_dim == 4
    rng = np.random.default_rng(7)
    y1 = rng.normal(size=4).astype(complex)
    y2 = rng.normal(size=4).astype(complex)
    f1, f2 = sys.field(y1), sys.field(y2)
    anti = f1 @ f2 + f2 @ f1
    want = 2.0 * np.real(y1 @ y2)  # scalar-product form is the identity here
    np.testing.assert_allclose(anti, want * np.eye(4), atol=1e-12)


def test_subset_sums_reproduce_many_body_spectrum():
    model = fockq.fermion_chain(sites=4)
    sys = fockq.quantize(model, cutoff=0)
    want = fockq.subset_sums(list(sys.one_particle_energies))
    np.testing.assert_allclose(sys.energies, want, atol=1e-10)


def test_run_checks_report():
    doc = fockq.run_checks(["oracle_ladders", "vacuum_state"], seed=3)
    report = json.loads(doc)
    assert report["schema"] == "fockq-report/1"
    assert report["summary"]["total"] == 2
    assert report["summary"]["passed"] == 2
    names = [c["name"] for c in report["checks"]]
    assert names == ["oracle_ladders", "vacuum_state"]
    assert "oracle_ladders" in fockq.check_names()


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        fockq.Model("scalar", np.eye(2), np.eye(2))
    with pytest.raises(fockq.FockError):
        # an antisymmetric real form is degenerate in odd dimension
        fockq.Model("neutral_bosonic", np.zeros((3, 3)), np.zeros((3, 3)))
    with pytest.raises(fockq.FockError):
        # inverted oscillator: not weakly stable, no positive quantization
        fockq.quantize(
            fockq.Model(
                "neutral_bosonic",
                np.array([[0.0, -1.0], [1.0, 0.0]]),
                np.array([[0.0, 1.0], [4.0, 0.0]]),
            ),
            cutoff=4,
        )
