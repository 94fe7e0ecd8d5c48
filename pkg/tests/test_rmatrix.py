"""R-matrix layer: Weyl pair, builders, and the full property sheet."""

import cmath
import math

import numpy as np
import pytest

from wkit import EllipticParams, RMatrixFactory, TruncationPolicy, ZnMatrices
from wkit.errors import ModulusOutOfRange, PoleHit
from wkit.qseries import U, tau_N
from wkit.rmatrix import (
    check_antisymmetry,
    check_crossing,
    check_kernel,
    check_quasi_periodicity_M,
    check_regularity,
    check_unitarity,
    check_yang_baxter,
    permutation_P,
    swap_21,
    zn_symmetry_residual,
)
from wkit.tensor import antisymmetrizer

POL = TruncationPolicy()


def params(N=2, q=0.5, p=0.3, c=0.0):
    return EllipticParams(N=N, q=q, s=cmath.sqrt(p), c=c)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_weyl_pair(N):
    zn = ZnMatrices(N)
    E = np.eye(N)
    assert np.allclose(np.linalg.matrix_power(zn.h, N), E)
    assert np.allclose(np.linalg.matrix_power(zn.g, N), E)
    # Weyl pair: with g = diag(omega^i) and h_{ij} = delta_{i+1,j} the
    # exchange factor sits as h g = omega g h
    assert np.linalg.norm(zn.h @ zn.g - zn.omega * zn.g @ zn.h) < 1e-14
    assert abs(abs(np.linalg.det(zn.GH)) - 1) < 1e-12
    ghN = np.linalg.matrix_power(zn.GH, N)
    assert np.linalg.norm(ghN - ghN[0, 0] * E) < 1e-12  # GH^N proportional to 1


@pytest.mark.parametrize("N,count", [(2, 8), (3, 27)])
def test_zn_sparsity_pattern(N, count):
    fac = RMatrixFactory(params(N=N), POL)
    M = fac.build_R(1.1 + 0.2j).matrix
    assert zn_symmetry_residual(M, N) < 1e-12
    nonzero = int(np.sum(np.abs(M) > 1e-12 * np.abs(M).max()))
    assert nonzero == count


@pytest.mark.parametrize("N", [2, 3, 4])
def test_regularity(N):
    rep = check_regularity(params(N=N), POL)
    assert rep.passed and rep.residual < 1e-9


@pytest.mark.parametrize("N", [2, 3])
def test_unitarity_and_ybe(N):
    pr = params(N=N)
    assert check_unitarity(1.2 + 0.1j, pr, POL).residual < 1e-9
    assert check_yang_baxter(1.2 + 0.1j, 0.8 - 0.05j, pr, POL).residual < 1e-9
    assert check_yang_baxter(1.2 + 0.1j, 0.8 - 0.05j, pr, POL, hat=True).residual < 1e-9


@pytest.mark.parametrize("N", [2, 3, 4])
def test_crossing_both_forms(N):
    assert check_crossing(1.1 + 0.2j, params(N=N), POL).residual < 1e-9


@pytest.mark.parametrize("N", [2, 3, 4])
def test_antisymmetry_via_continuation(N):
    assert check_antisymmetry(1.1 + 0.2j, params(N=N), POL).residual < 1e-9


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("a", [-3, -2, -1, 0, 1, 2, 3])
def test_quasi_periodicity_all_steps(N, a):
    rep = check_quasi_periodicity_M(1.1 + 0.1j, a, params(N=N), POL)
    assert rep.residual < 1e-9, (N, a, rep.residual)
    if a == 0:
        assert rep.residual < 1e-14


def test_quasi_periodicity_starred():
    pr = params(N=2, c=0.4)
    rep = check_quasi_periodicity_M(1.1 + 0.1j, 1, pr, POL, starred=True)
    assert rep.residual < 1e-9


def test_quasi_periodicity_iterated_oracle():
    # a = -2 must equal two iterations of the single-step relation
    pr = params(N=2)
    fac = RMatrixFactory(pr, POL)
    x = 1.15 + 0.1j
    xi = fac.xi_of(x)
    E = np.eye(2)
    M1 = fac.zn.M_power(1)
    step = fac.s_shift
    one = np.kron(M1, E) @ fac.rhat_matrix_xi(xi)
    from wkit.qseries import F_a
    scal1 = F_a(x, 1, pr.s, pr, POL)
    two_lhs = np.kron(M1, E) @ np.kron(M1, E) @ fac.rhat_matrix_xi(xi)
    scal2 = scal1 * F_a(cmath.exp(1j * cmath.pi * (xi + step)), 1, pr.s, pr, POL)
    two_rhs = scal2 * fac.rhat_matrix_xi(xi + 2 * step) @ np.kron(M1 @ M1, E)
    assert np.linalg.norm(two_lhs - two_rhs) / np.linalg.norm(two_rhs) < 1e-10
    rep = check_quasi_periodicity_M(x, -2, pr, POL)
    assert rep.residual < 1e-9


@pytest.mark.parametrize("N", [2, 3, 4])
def test_kernel_dimension_and_projector(N):
    rep = check_kernel(params(N=N), POL)
    assert rep.inputs["dim"] == N * (N - 1) // 2
    assert rep.residual < 1e-8
    # explicit subspace comparison with A_2
    from wkit.rmatrix import kernel_projector
    dim, proj = kernel_projector(params(N=N), POL)
    A2 = antisymmetrizer(2, N).matrix
    assert np.linalg.norm(proj - A2) < 1e-8


def test_rhat_equals_tau_times_R():
    for N in (2, 3):
        pr = params(N=N)
        fac = RMatrixFactory(pr, POL)
        z = 1.15 + 0.12j
        lhs = fac.build_Rhat(z).matrix
        rhs = tau_N(cmath.sqrt(pr.q) / z, pr, POL) * fac.build_R(z).matrix
        assert np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs) < 1e-12


def test_rhat_unitarity_scalar():
    pr = params(N=3)
    fac = RMatrixFactory(pr, POL)
    z = 1.2 + 0.1j
    Rh = fac.build_Rhat(z).matrix
    Rh21 = swap_21(fac.build_Rhat(1 / z).matrix, 3)
    uval = U(z, pr, POL)
    assert np.linalg.norm(Rh @ Rh21 - uval * np.eye(9)) < 1e-9 * abs(uval)


def test_truncation_refinement():
    pr = params(N=2)
    coarse = RMatrixFactory(pr, TruncationPolicy(tail_eps=1e-16, max_terms=512))
    fine = RMatrixFactory(pr, TruncationPolicy(tail_eps=1e-16, max_terms=2048))
    z = 1.2 + 0.15j
    a = coarse.build_Z(z).matrix
    b = fine.build_Z(z).matrix
    assert np.abs(a - b).max() < 1e-12


def test_pole_and_modulus_errors():
    pr = params(N=2)
    fac = RMatrixFactory(pr, POL)
    with pytest.raises(PoleHit):
        fac.build_Rhat(1.0)  # Theta(z^2) zero at z = 1
    with pytest.raises(ModulusOutOfRange):
        RMatrixFactory(EllipticParams(N=2, q=0.5, s=1.2), POL)  # |p| > 1


def test_degenerate_nome_limit():
    # p = q^N at N = 2 degenerates the characteristics parametrization; the
    # factory must return the analytic limit, consistent with nearby nomes
    q = 0.6
    fac0 = RMatrixFactory(EllipticParams(N=2, q=q, s=q), POL)
    assert fac0._children is not None
    near = RMatrixFactory(EllipticParams(N=2, q=q, s=q * math.sqrt(1 + 1e-7)), POL)
    z = 1.1 + 0.15j
    a = fac0.rhat_matrix_xi(fac0.xi_of(z))
    b = near.rhat_matrix_xi(near.xi_of(z))
    assert np.linalg.norm(a - b) / np.linalg.norm(b) < 1e-5
    # regularity survives the limit
    assert np.linalg.norm(fac0.build_R(1.0).matrix - permutation_P(2)) < 1e-9


def test_provenance_record():
    pr = params(N=2)
    fac = RMatrixFactory(pr, POL)
    val = fac.build_Rhat(1.2 + 0.1j)
    assert val.kind == "Rhat"
    assert val.N == 2 and val.q == pr.q and val.p == pr.p
    assert abs(val.z - (1.2 + 0.1j)) < 1e-12
    assert val.tensor.labels == (1, 2)


@pytest.mark.parametrize("N", [2, 3])
def test_quasi_periodicity_literal_form(N):
    # Rhat(xi + tau + 1) = (GH x 1)^{-1} Rhat_21(1/z)^{-1} (GH x 1):
    # the conjugated-inverse statement, independent of the unitarity route
    pr = params(N=N)
    fac = RMatrixFactory(pr, POL)
    z = 1.15 + 0.12j
    xi = fac.xi_of(z)
    E = np.eye(N)
    lhs = fac.rhat_matrix_xi(xi + fac.s_shift)
    R21inv = np.linalg.inv(swap_21(fac.rhat_matrix_xi(fac.xi_of(1 / z)), N))
    GH = fac.zn.GH
    rhs = np.kron(np.linalg.inv(GH), E) @ R21inv @ np.kron(GH, E)
    assert np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs) < 1e-9
