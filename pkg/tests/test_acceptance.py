"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import math

import numpy as np
from scipy.integrate import quad

from riskscale import (
    ApproxKind,
    MatrixExponential,
    RiskModel,
    build_scale_basis,
    de_finetti_barrier,
    fit_exponential_model,
    initial_values,
    lambert_w0,
    lambert_wm1,
)
from riskscale.policy import (
    MatrixIngredients,
    PolicyIngredients,
    PolicyParams,
    a_of_b,
    evaluate_policy,
    expo_ci,
    expo_pure,
    hjb_residual,
    j0_matrix,
    j0_value,
    j_at_zero,
    matrix_ingredients,
    optimize_exponential,
    optimize_matrix,
)
from riskscale.repro import hyperexp2, hyperexp3, oscillating_model, reference_exponential
from riskscale.scale import b_bar

Q2 = 0.1
Q3 = 5 / 48
K = 1.5


def _report(criterion: int, checks):
    """``checks``: iterable of ``(label, computed, expected, tol)``."""
    failures = []
    for label, computed, expected, tol in checks:
        err = abs(computed - expected)
        ok = math.isfinite(computed) and err <= tol
        if not ok:
            failures.append(f"{label}: computed {computed!r}, expected {expected!r} +/- {tol:g} (err {err:.3g})")
    status = "PASS" if not failures else "FAIL"
    print(f"\n{status} criterion {criterion}" + "".join(f"\n  {f}" for f in failures))
    assert not failures, "\n".join(failures)


def _phi_and_barrier(model, q):
    basis = build_scale_basis(model, q)
    return basis.phi, de_finetti_barrier(basis)


def test_criterion_1_hyperexp2_barriers():
    model = hyperexp2()
    phi, b = _phi_and_barrier(model, Q2)
    checks = [("c", model.c, 5 / 3, 1e-14), ("Phi exact", phi, 0.110113, 1e-5), ("b_DeF exact", b, 3.45398, 5e-4)]
    for kind, (p_ref, b_ref) in {
        ApproxKind.NAIVE: (0.110657, 3.51173),
        ApproxKind.DE_VYLDER: (0.110115, 3.48756),
        ApproxKind.RENYI: (0.110078, 3.5323),
    }.items():
        p, bb = _phi_and_barrier(fit_exponential_model(model, kind), Q2)
        checks += [(f"Phi {kind.value}", p, p_ref, 1e-5), (f"b_DeF {kind.value}", bb, b_ref, 2e-3)]
    _report(1, checks)


def test_criterion_2_hyperexp2_policy():
    params = PolicyParams(Q2, K, 0.0)
    model = hyperexp2(1.0)
    exact = optimize_matrix(model, params)
    checks = [
        ("J0 exact", exact.J0, 5.95034, 2e-3),
        ("a exact", exact.a_star, 3.9669, 2e-3),
        ("b exact", exact.b_star, 1.41036, 2e-3),
        ("J0 expo-pure", expo_pure(model, params).J0, 5.99151, 2e-3),
        ("J0 expo-ci", expo_ci(model, params).J0, 6.26009, 2e-3),
    ]
    low = hyperexp2(0.1)
    exact_low, ci_low = optimize_matrix(low, params), expo_ci(low, params)
    checks += [
        ("b exact theta=0.1", exact_low.b_star, 0.0, 0.0),
        ("expo-ci error theta=0.1", ci_low.J0 - exact_low.J0, 0.0, 1e-6),
    ]
    _report(2, checks)


def test_criterion_3_hyperexp3_scale():
    model = hyperexp3()
    basis = build_scale_basis(model, Q3)
    order = np.argsort(basis.roots.real)
    roots, coefs = basis.roots[order], basis.coefficients[order]
    checks = [("lam", model.lam, 1.0, 0.0), ("c", model.c, 1.0, 1e-14)]
    for i, (g, a) in enumerate(zip([-2.60997, -1.68854, -0.779311, 0.18198], [-0.0813294, -0.179472, -0.373887, 1.63469])):
        checks += [(f"exponent {i}", roots[i].real, g, 1e-3), (f"coefficient {i}", coefs[i].real, a, 1e-3)]
        checks += [(f"imag {i}", abs(roots[i].imag) + abs(coefs[i].imag), 0.0, 1e-12)]
    b = de_finetti_barrier(basis)
    checks += [
        ("Phi", basis.phi, 0.18198, 1e-5),
        ("b_DeF", b, 1.89732, 5e-4),
        ("J_DeF", float(basis.W(0.0)) / float(basis.W(b, 1)), 1.99847, 1e-3),
    ]
    _report(3, checks)


def test_criterion_4_hyperexp3_policy():
    model = hyperexp3()
    params = PolicyParams(Q3, K, 0.0)
    exact = optimize_matrix(model, params)
    checks = [
        ("J0 exact", exact.J0, 3.7747, 2e-3),
        ("a exact", exact.a_star, 2.51647, 2e-3),
        ("b exact", exact.b_star, 0.709355, 2e-3),
        ("J0 expo-pure", expo_pure(model, params).J0, 3.76883, 2e-3),
        ("J0 expo-ci", expo_ci(model, params).J0, 4.11784, 2e-3),
    ]
    for k, (j_ref, b_ref) in {2.0: (3.31174, 1.08108), 10000.0: (1.99869, 1.89722)}.items():
        sol = optimize_matrix(model, PolicyParams(Q3, k, 0.0))
        checks += [(f"J0 k={k:g}", sol.J0, j_ref, 2e-3), (f"b k={k:g}", sol.b_star, b_ref, 2e-3)]
    _report(4, checks)


def test_criterion_5_oscillating():
    model = oscillating_model()
    phi, b = _phi_and_barrier(model, Q2)
    renyi, _ = _phi_and_barrier(fit_exponential_model(model, ApproxKind.RENYI), Q2)
    dev, _ = _phi_and_barrier(fit_exponential_model(model, ApproxKind.DE_VYLDER), Q2)
    _report(
        5,
        [
            ("Phi exact", phi, 0.0881484, 1e-6),
            ("b_DeF exact", b, 4.38201, 2e-3),
            ("Phi renyi", renyi, 0.0881481, 1e-6),
            ("Phi de-vylder", dev, 0.0881484, 1e-6),
        ],
    )


def test_criterion_6_exponential_reference():
    model = reference_exponential()
    params = PolicyParams(Q2, K, 1.0)
    ing = PolicyIngredients(build_scale_basis(model, Q2))
    basis = ing.basis
    theta_inf = 1.0 / (model.c * basis.phi - Q2)
    sol = optimize_exponential(model, params, ing)
    interior = sorted(c.b for c in sol.candidates if c.b > 0)
    _report(
        6,
        [
            ("theta(0)", ing.theta(0.0), 2.0, 1e-14),
            ("theta(inf)", theta_inf, 22.8743, 1e-3),
            ("theta(40) vs limit", ing.theta(40.0), theta_inf, 1e-9),
            ("b_bar", b_bar(basis), 2.5046, 1e-3),
            ("j(0) closed form", j_at_zero(model, Q2), 4.5, 1e-14),
            ("j(0) from scale functions", ing.j(0.0), 4.5, 1e-12),
            ("first eta root", interior[0] if interior else math.nan, 0.469843, 1e-4),
        ],
    )


def test_criterion_7_eps_families():
    p1, p2 = PolicyParams(Q2, K, 0.0), PolicyParams(Q3, K, 0.0)
    checks, pure_err = [], {}
    for eps, ref in zip((0.001, 1.0, 1000.0), (7.1879, 5.95034, 3.6025)):
        model = hyperexp2(1.0, eps)
        exact = optimize_matrix(model, p1).J0
        pure_err[eps] = abs(expo_pure(model, p1).J0 - exact)
        checks.append((f"family 1 eps={eps:g}", exact, ref, 2e-3))
    peak = max(pure_err, key=pure_err.get)
    checks.append(("family 1 expo-pure error peaks at eps=1", peak, 1.0, 0.0))
    for eps, ref in zip((0.001, 1.0, 1000.0), (7.95508, 3.7747, 3.0508)):
        checks.append((f"family 2 eps={eps:g}", optimize_matrix(hyperexp3(263 / 235, eps), p2).J0, ref, 2e-3))
    _report(7, checks)


def test_criterion_8_property_suites():
    checks = []
    # Lambert round trips
    z0 = np.concatenate([np.linspace(-1 / math.e + 1e-9, 10, 400), np.logspace(1, 100, 50)])
    w0 = lambert_w0(z0)
    checks.append(("Lambert L0 round trip", float(np.max(np.abs(w0 * np.exp(w0) - z0) / np.maximum(1, np.abs(z0)))), 0.0, 1e-12))
    zm = -np.logspace(-200, math.log10(1 / math.e) - 1e-9, 400)
    wm = lambert_wm1(zm)
    checks.append(("Lambert L-1 round trip", float(np.max(np.abs(wm * np.exp(wm) - zm) / np.abs(zm))), 0.0, 1e-12))

    # initial values of W
    for name, model in (("h2", hyperexp2()), ("h3", hyperexp3()), ("osc", oscillating_model())):
        basis = build_scale_basis(model, Q2)
        for nu, ref in enumerate(initial_values(model, Q2)):
            checks.append((f"W^({nu})(0) {name}", float(basis.W(0.0, nu)), ref, 1e-10))

    # exactness of the surrogates and de Vylder cumulants
    ref = reference_exponential()
    for kind in ApproxKind:
        s = fit_exponential_model(ref, kind)
        dev = max(abs(s.claims.rate - ref.claims.rate), abs(s.lam - ref.lam), abs(s.c - ref.c))
        checks.append((f"{kind.value} exact on exponential", dev, 0.0, 1e-14))
    for model in (hyperexp2(), hyperexp3(), oscillating_model()):
        s = fit_exponential_model(model, ApproxKind.DE_VYLDER)
        for i, (a, b) in enumerate(
            zip(
                (s.c - s.lam * s.claims.moment(1), s.lam * s.claims.moment(2), s.lam * s.claims.moment(3)),
                (model.c - model.lam * model.claims.moment(1), model.lam * model.claims.moment(2),
                 model.lam * model.claims.moment(3)),
            )
        ):
            checks.append((f"de Vylder cumulant {i + 1}", a, b, 1e-12))

    # smooth fit at interior optima
    for label, sol in (
        ("h2", optimize_matrix(hyperexp2(), PolicyParams(Q2, K, 0.0))),
        ("h3", optimize_matrix(hyperexp3(), PolicyParams(Q3, K, 0.0))),
        ("exp", optimize_exponential(ref, PolicyParams(Q2, K, 1.0))),
    ):
        assert sol.b_star > 0
        p = sol.params
        checks.append((f"smooth fit {label}", sol.J0, p.k * sol.a_star - p.P, 1e-6))

    # matrix versus scalar J0 for exponential claims in 1x1 matrix form
    params = PolicyParams(Q2, K, 1.0)
    one = RiskModel(ref.c, ref.lam, MatrixExponential([1.0], [[-ref.claims.rate]]))
    mat = MatrixIngredients(build_scale_basis(one, Q2))
    prod = PolicyIngredients(build_scale_basis(ref, Q2))
    worst = max(
        abs(j0_matrix(mat, params, a, b) - j0_value(prod, params, a, b))
        for a in (0.0, 0.5, 1.0, 3.0)
        for b in (0.0, 0.3, 1.0, 2.0)
    )
    checks.append(("matrix vs scalar J0", worst, 0.0, 1e-10))

    # quadrature versus closed-form C_a on hyperexponential claims
    h2 = hyperexp2()
    basis = build_scale_basis(h2, Q2)
    for a in (0.5, 1.0, 2.0):
        for x in (0.5, 1.0, 2.0):
            oracle = h2.lam * quad(lambda y: float(basis.W(x - y)) * float(h2.claims.survival(a + y)), 0, x, epsabs=1e-13)[0]
            checks.append((f"C_a quadrature a={a} x={x}", matrix_ingredients(basis, PolicyParams(Q2, K), a, x)[0], oracle, 1e-7))

    # HJB residual at the exponential optimum and a perturbed negative control
    sol = optimize_exponential(ref, params, prod)
    checks.append(("HJB residual at optimum", hjb_residual(ref, params, sol), 0.0, 1e-5))
    b_bad = sol.b_star + 0.2
    bad = evaluate_policy(prod, params, a_of_b(prod, params, b_bad), b_bad)
    control = hjb_residual(ref, params, bad)
    checks.append(("HJB negative control exceeds 1e-3", float(control > 1e-3), 1.0, 0.0))
    _report(8, checks)
