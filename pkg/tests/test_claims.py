import math

import numpy as np
import pytest
from scipy.integrate import quad

from riskscale import (
    Exponential,
    Hyperexponential,
    MatrixExponential,
    PoleError,
    RiskModel,
    ValidationError,
    oscillating_density,
)


def _h2():
    return Hyperexponential.from_density_coefficients([2 / 3, 2 / 3], [1.0, 2.0])


def _h3():
    return Hyperexponential.from_density_coefficients([12 / 83, 42 / 83, 150 / 83], [1.0, 2.0, 3.0])


LAWS = {
    "exponential": lambda: Exponential(2.0),
    "hyperexp2": _h2,
    "hyperexp3": _h3,
    "oscillating": oscillating_density,
    "matrix-h2": lambda: MatrixExponential(*_h2().to_matrix_form()),
}


class TestMoments:
    def test_examples(self):
        assert Exponential(2.0).moment(1) == 0.5
        assert _h2().moment(1) == pytest.approx(5 / 6, abs=1e-15)
        assert _h3().moment(1) == pytest.approx(235 / 498, abs=1e-15)

    def test_normalized_moments(self):
        e = Exponential(3.0)
        for i in (1, 2, 3, 5):
            assert e.normalized_moment(i) == pytest.approx(1 / 3, rel=1e-14)
        assert _h2().normalized_moment(2) == pytest.approx(9 / 10, abs=1e-14)
        assert _h2().normalized_moment(3) == pytest.approx(17 / 18, abs=1e-14)

    @pytest.mark.parametrize("name", sorted(LAWS))
    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_closed_form_vs_quadrature(self, name, i):
        d = LAWS[name]()
        val, _ = quad(lambda x: x**i * float(d.density(x)), 0, np.inf, limit=500)
        assert d.moment(i) == pytest.approx(val, rel=1e-8)

    def test_matrix_form_agrees_with_mixture(self):
        h, m = _h2(), LAWS["matrix-h2"]()
        for i in (1, 2, 3, 4):
            assert m.moment(i) == pytest.approx(h.moment(i), rel=1e-12)


class TestDensities:
    def test_survival_examples(self):
        assert Exponential(2.0).survival(0.0) == 1.0
        h = _h2()
        x = np.linspace(0, 5, 11)
        np.testing.assert_allclose(h.survival(x), 2 / 3 * np.exp(-x) + 1 / 3 * np.exp(-2 * x), atol=1e-15)
        assert Exponential(2.0).laplace_transform(1.0) == pytest.approx(2 / 3, abs=1e-15)

    @pytest.mark.parametrize("name", sorted(LAWS))
    def test_survival_is_tail_integral(self, name):
        d = LAWS[name]()
        for x in (0.0, 0.3, 1.0, 2.5):
            val, _ = quad(lambda y: float(d.density(y)), 0, x, limit=500)
            assert float(d.cdf(x)) == pytest.approx(val, abs=1e-8)

    @pytest.mark.parametrize("name", sorted(LAWS))
    def test_survival_decreases_to_zero(self, name):
        d = LAWS[name]()
        s = d.survival(np.linspace(0, 40, 2001))
        assert s[0] == pytest.approx(1.0, abs=1e-14)
        assert np.all(np.diff(s) <= 1e-15)
        assert s[-1] < 1e-10

    @pytest.mark.parametrize("name", sorted(LAWS))
    def test_transform_vs_quadrature(self, name):
        d = LAWS[name]()
        for s in (0.0, 0.5, 3.0):
            val, _ = quad(lambda y: math.exp(-s * y) * float(d.density(y)), 0, np.inf, limit=500)
            assert complex(d.laplace_transform(s)).real == pytest.approx(val, abs=1e-8)

    @pytest.mark.parametrize("name", sorted(LAWS))
    def test_transform_polynomials(self, name):
        d = LAWS[name]()
        num, den = d.transform_polynomials()
        assert den[0] == pytest.approx(1.0)
        for s in (0.1, 1.7, 4.0 + 2.0j):
            assert np.polyval(num, s) / np.polyval(den, s) == pytest.approx(complex(d.laplace_transform(s)), abs=1e-12)

    def test_transform_pole(self):
        with pytest.raises(PoleError):
            Exponential(2.0).laplace_transform(-2.0)

    def test_oscillating_is_nonnegative(self):
        d = oscillating_density()
        assert np.all(d.density(np.linspace(0, 10, 20001)) >= -1e-14)


class TestMeanFunction:
    @pytest.mark.parametrize("name", sorted(LAWS))
    def test_vs_quadrature(self, name):
        d = LAWS[name]()
        for a in (0.0, 0.5, 2.0):
            val, _ = quad(lambda y: y * float(d.density(y)), 0, a, limit=500)
            assert float(d.mean_function(a)) == pytest.approx(val, abs=1e-10)

    def test_exponential_closed_form(self):
        mu, a = 2.0, 1.3
        expected = (1 - math.exp(-mu * a)) / mu - a * math.exp(-mu * a)
        assert float(Exponential(mu).mean_function(a)) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("name", sorted(LAWS))
    def test_limits_and_monotone(self, name):
        d = LAWS[name]()
        a = np.linspace(0, 60, 601)
        m = np.array([float(d.mean_function(v)) for v in a])
        assert m[0] == pytest.approx(0.0, abs=1e-14)
        assert np.all(np.diff(m) >= -1e-14)
        assert m[-1] == pytest.approx(d.moment(1), rel=1e-10)

    def test_matrix_mean_matrix_contracts(self):
        d = LAWS["matrix-h2"]()
        beta, _ = d.to_matrix_form()
        for a in (0.4, 1.5):
            val = beta @ d.mean_matrix(a) @ np.ones(d.order)
            assert val == pytest.approx(float(_h2().mean_function(a)), abs=1e-12)


class TestValidation:
    def test_hyperexponential_weights(self):
        with pytest.raises(ValidationError):
            Hyperexponential((0.5, 0.4), (1.0, 2.0))
        with pytest.raises(ValidationError):
            Hyperexponential((0.5, 0.5), (1.0, -2.0))

    def test_matrix_exponential_checks(self):
        with pytest.raises(ValidationError):
            MatrixExponential([0.5, 0.4], [[-1, 0], [0, -2]])
        with pytest.raises(ValidationError):
            MatrixExponential([1.0], [[1.0]])
        # density turns negative in the tail
        with pytest.raises(ValidationError):
            MatrixExponential([-0.5, 1.5], [[-1.0, 0.0], [0.0, -2.0]])

    def test_risk_model_loading(self):
        m = RiskModel.from_loading(_h2(), 1.0, 1.0)
        assert m.c == pytest.approx(5 / 3)
        assert m.loading == pytest.approx(1.0)
        assert m.rho == pytest.approx(0.5)
        with pytest.warns(RuntimeWarning):
            RiskModel(0.4, 1.0, _h2())
