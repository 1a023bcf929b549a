import math

import numpy as np
import pytest

from riskscale import (
    ApproxKind,
    Exponential,
    InvalidApproximationError,
    RiskModel,
    UnsupportedError,
    build_scale_basis,
    fit_exponential_model,
    ruin_probability,
)


def _cumulants(model):
    # first three cumulants of the claim-minus-premium increment per unit time
    m = model.claims
    return (model.c - model.lam * m.moment(1), model.lam * m.moment(2), model.lam * m.moment(3))


class TestSurrogates:
    @pytest.mark.parametrize("kind", list(ApproxKind))
    def test_exact_on_exponential(self, exp_model, kind):
        s = fit_exponential_model(exp_model, kind)
        assert abs(s.claims.rate - exp_model.claims.rate) <= 1e-14
        assert abs(s.lam - exp_model.lam) <= 1e-14
        assert abs(s.c - exp_model.c) <= 1e-14

    def test_naive(self, h2_model):
        s = fit_exponential_model(h2_model, "naive")
        assert s.claims.rate == pytest.approx(6 / 5, abs=1e-14)
        assert (s.lam, s.c) == (h2_model.lam, h2_model.c)

    def test_renyi_arithmetic(self, h2_model):
        s = fit_exponential_model(h2_model, ApproxKind.RENYI)
        assert s.claims.rate == pytest.approx(10 / 9, abs=1e-14)
        assert s.lam == pytest.approx(25 / 27, abs=1e-14)
        assert s.c == pytest.approx(5 / 3, abs=1e-14)

    @pytest.mark.parametrize("name", ["h2_model", "h3_model", "osc_model"])
    def test_renyi_keeps_rho_and_loading(self, name, request):
        m = request.getfixturevalue(name)
        s = fit_exponential_model(m, ApproxKind.RENYI)
        assert s.rho == pytest.approx(m.rho, abs=1e-14)
        assert s.loading == pytest.approx(m.loading, abs=1e-13)

    def test_de_vylder_arithmetic(self, h2_model):
        s = fit_exponential_model(h2_model, ApproxKind.DE_VYLDER)
        lam = 9 * 1.5**3 / (2 * 4.25**2)
        assert s.claims.rate == pytest.approx(18 / 17, abs=1e-14)
        assert s.lam == pytest.approx(lam, abs=1e-14)
        assert s.c == pytest.approx(5 / 3 - 5 / 6 + lam * 17 / 18, abs=1e-14)

    @pytest.mark.parametrize("name", ["h2_model", "h3_model", "osc_model"])
    def test_de_vylder_matches_three_cumulants(self, name, request):
        m = request.getfixturevalue(name)
        s = fit_exponential_model(m, ApproxKind.DE_VYLDER)
        for got, want in zip(_cumulants(s), _cumulants(m)):
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want))

    def test_diffusion_unsupported(self, h2_model):
        m = RiskModel(h2_model.c, h2_model.lam, h2_model.claims, diffusion=0.1)
        with pytest.raises(UnsupportedError):
            fit_exponential_model(m, "renyi")

    def test_invalid_surrogate(self, h2_model):
        # c~ = c - lam m1 + 3 lam m2^2 / (2 m3) is negative for a tiny premium
        with pytest.warns(RuntimeWarning):
            m = RiskModel(0.03, 1.0, h2_model.claims)
        with pytest.raises(InvalidApproximationError):
            fit_exponential_model(m, ApproxKind.DE_VYLDER)


class TestRuin:
    def test_at_zero(self, h2_model):
        theta = fit_exponential_model(h2_model, "naive").loading
        assert ruin_probability(h2_model, 0.0, "naive") == pytest.approx(1 / (1 + theta), abs=1e-15)

    @pytest.mark.parametrize("kind", [None] + list(ApproxKind))
    def test_exponential_example(self, kind):
        m = RiskModel.from_loading(Exponential(2.0), 1.0, 1.0)
        x = np.linspace(0, 8, 17)
        np.testing.assert_allclose(ruin_probability(m, x, kind), 0.5 * np.exp(-x), atol=1e-15)

    def test_decays(self, h3_model):
        assert ruin_probability(h3_model, 500.0, "renyi") < 1e-12

    def test_exact_formula_against_scale_limit(self, exp_model):
        # Psi(x) = lim_{q -> 0} Z_q(x) - (q / Phi_q) W_q(x)
        q = 1e-9
        b = build_scale_basis(exp_model, q)
        for x in (0.0, 1.0, 4.0):
            limit = float(b.Z(x)) - q / b.phi * float(b.W(x))
            assert ruin_probability(exp_model, x) == pytest.approx(limit, abs=1e-6)

    def test_exact_needs_exponential(self, h2_model):
        with pytest.raises(UnsupportedError):
            ruin_probability(h2_model, 1.0)

    def test_nonpositive_loading(self):
        with pytest.warns(RuntimeWarning):
            m = RiskModel(0.4, 1.0, Exponential(2.0))
        with pytest.raises(InvalidApproximationError):
            ruin_probability(m, 1.0)
        assert math.isfinite(m.loading)
