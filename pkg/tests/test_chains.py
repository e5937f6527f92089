import math

import numpy as np
import pytest

from spinchannel import (
    BasisState,
    ChainSpec,
    Model,
    ValidationError,
    eigen_decompose,
    hamiltonian_single_excitation,
    spectrum_is_antisymmetric,
    validate_mirror_symmetry,
)


def mirror_couplings(rng, n_sites):
    half = rng.uniform(0.2, 2.0, (n_sites) // 2)
    if n_sites % 2 == 0:
        full = np.concatenate([half[:-1], half[::-1]])
    else:
        full = np.concatenate([half, half[::-1]])
    return tuple(full[: n_sites - 1])


class TestMirrorSymmetry:
    def test_four_site_with_weak_middle(self):
        spec = ChainSpec(4, Model.XX, (1.0, 2.0 / math.sqrt(3.0), 1.0))
        assert validate_mirror_symmetry(spec, 1e-12)

    def test_uniform_three_site(self):
        assert validate_mirror_symmetry(ChainSpec(3, Model.XX, (1.0, 1.0)), 1e-12)

    def test_asymmetric(self):
        assert not validate_mirror_symmetry(ChainSpec(4, Model.XX, (1.0, 1.0, 2.0)), 1e-6)


class TestSectorHamiltonian:
    @pytest.mark.parametrize("j", [1.0, 2.5, 7.0])
    def test_xxx_four_site_diagonal(self, j):
        m = hamiltonian_single_excitation(ChainSpec(4, Model.XXX, (1.0, j, 1.0)))
        assert np.allclose(m.diag, [j / 2, -j / 2, -j / 2, j / 2], atol=1e-14)
        assert np.allclose(m.offdiag, [1.0, j, 1.0], atol=0)

    def test_xx_has_zero_diagonal(self):
        m = hamiltonian_single_excitation(ChainSpec(4, Model.XX, (1.0, 3.0, 1.0)))
        assert np.allclose(m.diag, 0.0, atol=0)
        assert np.allclose(m.offdiag, [1.0, 3.0, 1.0], atol=0)

    def test_xxx_three_site_diagonal(self):
        # hand expansion of the bond signs: (0, -1, 0)
        m = hamiltonian_single_excitation(ChainSpec(3, Model.XXX, (1.0, 1.0)))
        assert np.allclose(m.diag, [0.0, -1.0, 0.0], atol=1e-15)

    @pytest.mark.parametrize("j", [1.0, 2.0, 5.0])
    def test_xxx_four_site_levels(self, j):
        m = hamiltonian_single_excitation(ChainSpec(4, Model.XXX, (1.0, j, 1.0)))
        u = math.hypot(j, 1.0)
        expected = np.sort([j / 2 + 1, j / 2 - 1, -j / 2 + u, -j / 2 - u])
        assert np.allclose(eigen_decompose(m).eigenvalues, expected, atol=1e-10)


class TestMirrorStructure:
    @pytest.mark.parametrize("model", [Model.XX, Model.XXX])
    def test_persymmetric_and_equal_end_weights(self, model):
        rng = np.random.default_rng(31)
        for n_sites in (2, 5, 6, 9):
            spec = ChainSpec(n_sites, model, mirror_couplings(rng, n_sites))
            dense = hamiltonian_single_excitation(spec).to_dense()
            assert np.max(np.abs(dense - dense[::-1, ::-1])) <= 1e-12
            vecs = eigen_decompose(hamiltonian_single_excitation(spec)).eigenvectors
            assert np.max(np.abs(np.abs(vecs[0, :]) - np.abs(vecs[-1, :]))) <= 1e-10

    def test_xx_spectra_antisymmetric(self):
        rng = np.random.default_rng(32)
        for n_sites in (3, 4, 8):
            spec = ChainSpec(n_sites, Model.XX, mirror_couplings(rng, n_sites))
            decomp = eigen_decompose(hamiltonian_single_excitation(spec))
            assert spectrum_is_antisymmetric(decomp, 1e-10)


class TestValidation:
    def test_rejects_zero_coupling(self):
        with pytest.raises(ValidationError):
            ChainSpec(3, Model.XX, (1.0, 0.0))

    def test_rejects_wrong_count(self):
        with pytest.raises(ValidationError):
            ChainSpec(4, Model.XX, (1.0, 1.0))

    def test_rejects_tiny_chain(self):
        with pytest.raises(ValidationError):
            ChainSpec(1, Model.XX, ())

    def test_model_accepts_string(self):
        assert ChainSpec(2, "xxx", (1.0,)).model is Model.XXX

    def test_basis_state_bounds(self):
        state = BasisState(excited_site=2, n_sites=3)
        assert np.allclose(state.vector(), [0.0, 1.0, 0.0], atol=0)
        with pytest.raises(ValidationError):
            BasisState(excited_site=4, n_sites=3)
