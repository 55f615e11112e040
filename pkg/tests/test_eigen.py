import numpy as np
import pytest

from scfgame.eigen import char_poly_residual, eigenvalues3


def test_identity():
    assert eigenvalues3(np.eye(3).tolist()) == (1, 1, 1)


def test_diagonal_exact():
    assert eigenvalues3([[-1, 0, 0], [0, 2.5, 0], [0, 0, 5.4]]) == (-1, 2.5, 5.4)
    assert eigenvalues3([[5.4, 0, 0], [0, -1, 0], [0, 0, 2.5]]) == (-1, 2.5, 5.4)


def test_rotation_block():
    eigs = eigenvalues3([[0, -1, 0], [1, 0, 0], [0, 0, 2]])
    assert eigs[0] == pytest.approx(-1j, abs=1e-14)
    assert eigs[1] == pytest.approx(1j, abs=1e-14)
    assert eigs[2] == pytest.approx(2, abs=1e-14)


def test_triangular_exact():
    assert eigenvalues3([[1, 5, 7], [0, -2, 3], [0, 0, 4]]) == (-2, 1, 4)


def test_conjugate_pair_symmetric():
    eigs = eigenvalues3([[1, -3, 0.5], [2, 1, 0.2], [0.1, 0.3, -1]])
    assert eigs[0].real == pytest.approx(-1, abs=0.5)
    assert eigs[1] == eigs[2].conjugate()


@pytest.mark.parametrize("bad", [[[1, 2], [3, 4]], [[np.nan, 0, 0], [0, 1, 0], [0, 0, 1]],
                                 [[np.inf, 0, 0], [0, 1, 0], [0, 0, 1]]])
def test_rejects(bad):
    with pytest.raises(ValueError):
        eigenvalues3(bad)


def test_repeated_real_nondiagonal():
    # Jordan-like block with eigenvalues 2, 2, 3
    eigs = eigenvalues3([[2, 1, 0], [0, 2, 0], [1, 0, 3]])
    assert [e.real for e in eigs] == pytest.approx([2, 2, 3], abs=1e-7)


def test_random_matrices_residual_and_numpy():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        a = rng.normal(size=(3, 3)) * rng.choice([1e-3, 1, 10, 100])
        eigs = eigenvalues3(a.tolist())
        norm = np.abs(a).sum(axis=1).max()
        for lam in eigs:
            assert char_poly_residual(a.tolist(), lam) <= 1e-8 * norm ** 3
        ref = sorted(np.linalg.eigvals(a), key=lambda z: (z.real, z.imag))
        assert np.allclose(eigs, ref, atol=1e-7 * norm)


def test_sorted_by_real_then_imag():
    eigs = eigenvalues3([[0, -2, 0], [2, 0, 0], [0, 0, -1]])
    keys = [(e.real, e.imag) for e in eigs]
    assert keys == sorted(keys)
