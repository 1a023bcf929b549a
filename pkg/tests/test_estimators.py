import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from riskscale import DividendOptimizer, ScaleFunction, ValidationError, build_scale_basis
from riskscale.policy import PolicyParams, optimize


class TestScaleFunction:
    def test_params_and_clone(self):
        est = ScaleFunction(q=0.2, approximation="renyi")
        assert est.get_params() == {"q": 0.2, "approximation": "renyi", "x_max": None}
        other = clone(est).set_params(q=0.3)
        assert other.q == 0.3 and est.q == 0.2

    def test_fit_transform(self, h2_model):
        est = ScaleFunction(q=0.1).fit(h2_model)
        basis = build_scale_basis(h2_model, 0.1)
        x = np.linspace(0, 5, 11)
        out = est.transform(x)
        assert out.shape == (11, 5)
        np.testing.assert_allclose(out[:, 0], basis.W(x), atol=1e-14)
        np.testing.assert_allclose(out[:, 4], basis.C(x), atol=1e-14)
        assert est.phi_ == pytest.approx(0.110113, abs=1e-5)
        assert est.b_definetti_ == pytest.approx(3.45398, abs=5e-4)
        np.testing.assert_allclose(est.transform(x[:, None]), out)

    def test_approximation(self, h2_model):
        est = ScaleFunction(q=0.1, approximation="naive").fit(h2_model)
        assert est.phi_ == pytest.approx(0.110657, abs=1e-5)

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            ScaleFunction().transform([1.0])

    def test_rejects_bad_input(self, h2_model):
        with pytest.raises(ValidationError):
            ScaleFunction().fit(np.zeros((3, 2)))
        est = ScaleFunction().fit(h2_model)
        with pytest.raises(ValidationError):
            est.transform(np.zeros((3, 2)))
        with pytest.raises(ValidationError):
            est.transform([np.nan])


class TestDividendOptimizer:
    def test_fit_predict(self, exp_model):
        est = DividendOptimizer(q=0.1, k=1.5, P=1.0).fit(exp_model)
        sol = optimize(exp_model, PolicyParams(0.1, 1.5, 1.0))
        assert est.J0_ == pytest.approx(sol.J0, abs=1e-14)
        assert est.b_star_ == pytest.approx(0.469843, abs=1e-4)
        v = est.predict([0.0, -est.a_star_ - 1.0])
        assert v[0] == pytest.approx(est.J0_, abs=1e-10)
        assert v[1] == -1.0

    def test_clone_refit(self, exp_model):
        est = DividendOptimizer(k=1.5, P=1.0)
        a = clone(est).set_params(k=3.0).fit(exp_model)
        b = clone(est).fit(exp_model)
        assert a.J0_ < b.J0_

    def test_bad_method(self, exp_model):
        with pytest.raises(ValueError):
            DividendOptimizer(method="nope").fit(exp_model)

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            DividendOptimizer().predict([0.0])
