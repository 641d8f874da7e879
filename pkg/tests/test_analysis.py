"""Convergence sweeps, spectra, zeta sums and the degeneracy survey."""

import numpy as np
import pytest

from fintriple import (
    AllZeroSpectrum,
    DegenerateSize,
    Normalization,
    Shape,
    SpectralTriple,
    builtin_function,
    converge_1d,
    degeneracy_survey,
    fit_order,
    select_nondegenerate,
    spectrum,
    zeta_action,
)


def test_linear_segment_is_exact():
    study = converge_1d(builtin_function("linear"), Shape.SEGMENT, [4, 7, 10])
    for r in study.records:
        assert r.error < 1e-13
    assert study.fitted_order == float("inf")


def test_constant_gives_zero_metric():
    study = converge_1d(builtin_function("const"), Shape.CIRCLE, [8, 16])
    for r in study.records:
        assert r.value == 0.0 and r.reference == 0.0


def test_sin_circle_first_order():
    study = converge_1d(builtin_function("sin"), Shape.CIRCLE, [8, 16, 32, 64])
    errors = [r.error for r in study.records]
    # monotone decrease, 5% jitter allowance at the largest size
    for prev, cur in zip(errors, errors[1:-1]):
        assert cur < prev
    assert errors[-1] < errors[-2] * 1.05
    assert study.fitted_order >= 0.9


def test_converge_rejects_degenerate_sizes():
    with pytest.raises(DegenerateSize):
        converge_1d(builtin_function("sin"), Shape.CIRCLE, [6, 8])


def test_converge_requires_a_derivative():
    fn = builtin_function("sin")
    with pytest.raises(ValueError):
        converge_1d(type(fn)("samples", fn.f, None), Shape.CIRCLE, [8])


def test_records_are_sorted_by_n():
    study = converge_1d(builtin_function("cos"), Shape.CIRCLE, [32, 8, 16])
    assert [r.n for r in study.records] == [8, 16, 32]


def test_fit_order_recovers_a_power_law():
    dx = [0.4, 0.2, 0.1, 0.05]
    errors = [3.0 * h**1.5 for h in dx]
    assert abs(fit_order(dx, errors) - 1.5) < 1e-12


def test_spectrum_of_zero_operator():
    rec = spectrum(np.zeros((4, 4), dtype=complex))
    assert np.all(rec.eigenvalues == 0)
    assert rec.kernel_dim == 4


def test_spectrum_rejects_non_hermitian():
    with pytest.raises(ValueError):
        spectrum(np.array([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize(
    "shape,n",
    [(Shape.CIRCLE, 3), (Shape.CIRCLE, 13), (Shape.SEGMENT, 9)],
)
def test_spectrum_is_symmetric_about_zero(shape, n):
    rec = spectrum(SpectralTriple.standard(shape, n).dirac)
    ev = rec.eigenvalues
    assert np.max(np.abs(ev + ev[::-1])) < 1e-10


def test_spectrum_kernel_consistency():
    rec = spectrum(SpectralTriple.standard(Shape.CIRCLE, 7).dirac)
    exact_zeros = int(np.sum(np.abs(rec.eigenvalues) <= 1e-10))
    assert rec.kernel_dim >= exact_zeros


def test_zeta_hand_sums():
    assert float(zeta_action(np.diag([1.0, -1.0]), 1.0, 2)) == 2.0
    assert float(zeta_action(np.diag([1.0, -1.0, 2.0, -2.0]), 2.0, 4)) == 2.5


def test_zeta_partial_sums_monotone():
    t = SpectralTriple.standard(Shape.CIRCLE, 13)
    za = zeta_action(t.dirac, 1.0, 30)
    assert za.value > 0
    assert np.all(np.diff(za.partial_sums) >= 0)
    assert len(za.dixmier_proxy) == len(za.partial_sums) - 1


def test_zeta_cutoff_beyond_spectrum_is_clamped():
    za = zeta_action(np.diag([1.0, -1.0]), 1.0, 50)
    assert za.value == 2.0


def test_zeta_input_validation():
    with pytest.raises(ValueError):
        zeta_action(np.diag([1.0, -1.0]), 0.0, 2)
    with pytest.raises(ValueError):
        zeta_action(np.diag([1.0, -1.0]), 1.0, 0)
    with pytest.raises(AllZeroSpectrum):
        zeta_action(np.zeros((3, 3)), 1.0, 2)


def test_survey_kernel_dimensions():
    circle = {r.n: r for r in degeneracy_survey(Shape.CIRCLE, 20)}
    segment = {r.n: r for r in degeneracy_survey(Shape.SEGMENT, 20)}
    for n in (6, 12, 18):
        assert circle[n].det == 0 and circle[n].kernel_dim == 2
    for n in (2, 5, 8):
        assert segment[n].det == 0 and segment[n].kernel_dim == 1
    for n, row in circle.items():
        if n % 6 != 0:
            assert row.kernel_dim == 0
    for n, row in segment.items():
        if n % 3 != 2:
            assert row.kernel_dim == 0


def test_survey_matches_det_patterns():
    rows = degeneracy_survey(Shape.CIRCLE, 26)
    pattern = [4, -3, 1, 0, 1, -3]
    for r in rows:
        assert r.det == pattern[(r.n - 3) % 6]


def test_unit_normalization_changes_nu_but_not_order():
    study = converge_1d(
        builtin_function("sin"), Shape.CIRCLE, [8, 16, 32], Normalization.UNIT
    )
    # raw quotient norm keeps an overall sqrt(2): the error tends to
    # (sqrt(2) - 1) |cos x| and does not vanish
    assert study.records[-1].error > 0.3


def test_every_nondegenerate_size_has_paired_spectrum():
    for n in select_nondegenerate(Shape.CIRCLE, 3, 15):
        ev = spectrum(SpectralTriple.standard(Shape.CIRCLE, n).dirac).eigenvalues
        assert np.max(np.abs(ev + ev[::-1])) < 1e-10
