"""Tensor products: Leibniz rule, axioms and the projected 2d frames."""

import numpy as np
import pytest

from fintriple import (
    AlgebraElement,
    AxiomFailure,
    DegenerateBlock,
    Shape,
    ShapeUnsupported,
    SpectralTriple,
    builtin_function,
    commutator,
    leibniz_residual,
    limit_frame_2d,
    limit_study,
    product_commutator,
    random_elements,
    sample,
    tensor_triple,
)
from fintriple.dirac import DiracOperator, build_dirac
from fintriple.triple_core import rep_diagonal


@pytest.fixture(scope="module")
def product_6():
    t1 = SpectralTriple.standard(Shape.CIRCLE, 6)
    t2 = SpectralTriple.standard(Shape.CIRCLE, 6)
    return tensor_triple(t1, t2)


def test_product_dimension_is_nine_n_squared(product_6):
    assert product_6.total_dim == 9 * 36


def test_product_grading_squares_to_one(product_6):
    assert np.all(product_6.gamma2**2 == 1)


def test_product_axiom_report(product_6):
    assert product_6.report.all_passed
    for check in product_6.report.checks:
        assert check.max_residual < 1e-10


def test_product_structure_relations(product_6):
    d2 = product_6.d2
    g = product_6.gamma2.astype(float)
    assert np.max(np.abs(d2 - d2.conj().T)) == 0.0
    assert np.max(np.abs(d2 * (g[:, None] + g[None, :]))) == 0.0
    p = product_6.j2_pairing
    assert np.max(np.abs(d2.conj()[p, :] - d2[:, p])) == 0.0


def test_zero_second_factor_reduces_to_kron(product_6):
    t1 = product_6.factor1
    t2 = product_6.factor2
    d0 = build_dirac(t2.basis, {}, spacing=t2.dirac.spacing)
    t2zero = SpectralTriple(t2.basis, t2.gamma, t2.real, d0)
    p = tensor_triple(t1, t2zero)
    assert np.max(np.abs(p.d2 - np.kron(t1.dirac.matrix, np.eye(18)))) == 0.0


def test_broken_factor_raises_axiom_failure():
    t1 = SpectralTriple.standard(Shape.CIRCLE, 6)
    t2 = SpectralTriple.standard(Shape.CIRCLE, 6)
    bad = np.array(t2.dirac.matrix)
    bad[0, 0] = 1.0  # diagonal entry breaks the grading anticommutation
    broken = SpectralTriple(
        t2.basis,
        t2.gamma,
        t2.real,
        DiracOperator(t2.basis, bad, {}, t2.dirac.spacing, t2.dirac.normalization),
    )
    with pytest.raises(AxiomFailure):
        tensor_triple(t1, broken)


def test_constant_pair_commutes(product_6):
    ones = AlgebraElement(np.ones(6))
    assert np.max(np.abs(product_commutator(product_6, ones, ones))) == 0.0


def test_constant_second_factor_reduces_to_first_commutator(product_6):
    (a,) = random_elements(6, 1, seed=9)
    ones = AlgebraElement(np.ones(6))
    c = product_commutator(product_6, a, ones)
    c1 = commutator(product_6.factor1.dirac, a)
    assert np.max(np.abs(c - np.kron(c1, np.eye(18)))) == 0.0


def test_product_commutator_matches_dense_oracle(product_6):
    a, b = random_elements(6, 2, seed=15)
    w = np.kron(
        rep_diagonal(a, product_6.factor1.basis),
        rep_diagonal(b, product_6.factor2.basis),
    )
    pm = np.diag(w)
    dense = product_6.d2 @ pm - pm @ product_6.d2
    assert np.max(np.abs(product_commutator(product_6, a, b) - dense)) < 1e-13


def test_leibniz_identity_for_random_pairs(product_6):
    for seed in (1, 2, 3):
        a, b = random_elements(6, 2, seed=seed)
        assert leibniz_residual(product_6, a, b) < 1e-12


def test_projected_frames_match_dense_projection(product_6):
    n = 6
    x = Shape.CIRCLE.points(n)
    a = AlgebraElement(np.exp(1j * x))
    b = AlgebraElement(np.exp(2j * x))
    frames = limit_frame_2d(product_6, a, b)
    assert len(frames) == n * n
    dense = product_commutator(product_6, a, b)
    basis1 = product_6.factor1.basis
    basis2 = product_6.factor2.basis

    # rebuild each 4x4 by projecting the dense 9x9 block with the same frames
    from fintriple.product import _factor_frames

    fr1 = _factor_frames(product_6.factor1, a)
    fr2 = _factor_frames(product_6.factor2, b)
    for pf in frames:
        idx1 = basis1.column_indices(pf.l)
        idx2 = basis2.column_indices(pf.m)
        global_idx = (idx1[:, None] * basis2.total_dim + idx2[None, :]).ravel()
        block9 = dense[np.ix_(global_idx, global_idx)]
        f = np.kron(fr1[pf.l][1], fr2[pf.m][1])
        proj = f.conj().T @ block9 @ f
        assert np.max(np.abs(proj - pf.projected)) < 1e-12
        assert np.max(np.abs(pf.projected - (pf.g1 + pf.g2))) < 1e-14


def test_constant_second_function_reduces_to_rotated_block(product_6):
    n = 6
    x = Shape.CIRCLE.points(n)
    a = AlgebraElement(np.sin(x) + 2)  # keep all derivatives nonzero
    ones = AlgebraElement(np.ones(n))
    frames = limit_frame_2d(product_6, a, ones)
    from fintriple import blocks

    bls = blocks(commutator(product_6.factor1.dirac, a), product_6.factor1.dirac)
    for pf in frames:
        expected = np.kron(bls[pf.l].rotated, np.eye(2))
        assert np.max(np.abs(pf.projected - expected)) < 1e-12
        assert np.max(np.abs(pf.g2)) < 1e-14


def test_all_constant_functions_raise_degenerate_block(product_6):
    ones = AlgebraElement(np.ones(6))
    with pytest.raises(DegenerateBlock):
        limit_frame_2d(product_6, ones, ones)


def test_swap_symmetry_of_singular_values(product_6):
    n = 6
    x = Shape.CIRCLE.points(n)
    a = AlgebraElement(np.exp(1j * x))
    b = AlgebraElement(np.exp(2j * x))
    sv_ab = {
        (pf.l, pf.m): pf.top_singular_value for pf in limit_frame_2d(product_6, a, b)
    }
    sv_ba = {
        (pf.l, pf.m): pf.top_singular_value for pf in limit_frame_2d(product_6, b, a)
    }
    for (l, m), sv in sv_ab.items():
        assert abs(sv - sv_ba[(m, l)]) < 1e-10


def test_limit_frames_need_circles():
    t1 = SpectralTriple.standard(Shape.SEGMENT, 6)
    t2 = SpectralTriple.standard(Shape.SEGMENT, 6)
    from fintriple.product import _point_frames

    a = AlgebraElement(np.linspace(0, 1, 6))
    with pytest.raises(ShapeUnsupported):
        _point_frames(t1, t2, a, a)


def test_limit_study_errors_shrink():
    records = limit_study(
        [8, 16], builtin_function("exp", 1), builtin_function("exp", 2)
    )
    assert records[1].max_anticommutator_norm < records[0].max_anticommutator_norm
    assert records[1].max_singular_value_error < records[0].max_singular_value_error
    assert len(records[0].diagonal) == 8


def test_limit_study_requires_derivatives():
    fn = builtin_function("sin")
    file_like = type(fn)("raw", fn.f, None)
    with pytest.raises(ValueError):
        limit_study([8], file_like, fn)


def test_sigma_coefficients_track_the_two_terms(product_6):
    # with b = 1 only the sigma_x (x) 1 component survives
    n = 6
    x = Shape.CIRCLE.points(n)
    a = AlgebraElement(np.sin(x) + 2)
    ones = AlgebraElement(np.ones(n))
    for pf in limit_frame_2d(product_6, a, ones):
        assert abs(pf.coeff_sigma_y) < 1e-12
        assert abs(pf.coeff_sigma_x) > 1e-3
