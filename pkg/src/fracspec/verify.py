"""
Self-check suites.

Each check measures one error against one tolerance and yields a
:class:`CheckResult`. Checks against published table entries that are known
to be inconsistent (see :mod:`fracspec.reference`) are reported with
``known_discrepancy=True`` and do not affect :func:`all_passed`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np
from scipy import integrate

from . import reference as ref
from .jumarie import frac_deriv_power, gl_frac_deriv
from .laplace import (
    QuadratureConfig,
    laplace_numeric,
    ml_transform_pair,
    product_rule_rhs,
    tau_factor,
)
from .specfun import (
    frac_cos,
    frac_sin,
    gamma_real,
    hyp1f1_frac,
    ml_derivative,
    ml_deriv_series,
    mittag_leffler,
)
from .spectrum import (
    ModelParams,
    QuantumNumbers,
    closed_form_kstar_alpha1,
    energy,
    nu_product,
    polynomial_sign_changes,
    potential,
    q1,
    radial_residual_alpha1,
    solve_kstar,
    solve_state,
    transformed_residual,
)

__all__ = ["CheckResult", "SUITES", "run_checks", "all_passed"]

SEED = 20240611


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    error: float
    tolerance: float
    passed: bool
    known_discrepancy: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _check(suite: str, name: str, error: float, tol: float, known: bool = False) -> CheckResult:
    error = float(error)
    return CheckResult(suite, name, error, float(tol), bool(error <= tol), known)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a)


# ---------------------------------------------------------------------------
# specfun


def _specfun() -> Iterator[CheckResult]:
    s = "specfun"
    z = np.linspace(-20.0, 20.0, 401)
    err = max(abs(mittag_leffler(1, 1, zi) - math.exp(zi)) / math.exp(zi) for zi in z)
    yield _check(s, "E_1,1(z) vs exp(z), |z|<=20, relative", err, 1e-12)

    # E_1/2(1) = e * erfc(-1), with erf from quadrature
    erf1 = 2.0 / math.sqrt(math.pi) * integrate.quad(lambda t: math.exp(-t * t), 0.0, 1.0, epsabs=0, epsrel=1e-13)[0]
    oracle = math.e * (1.0 + erf1)
    yield _check(s, "E_1/2(1) vs e*erfc(-1)", _rel(mittag_leffler(0.5, 1, 1.0), oracle), 1e-10)

    err = 0.0
    for m in (0.0, 0.5, 2.5, 7.3, 20.0):
        for zi in np.linspace(-20.0, 20.0, 41):
            err = max(err, abs(ml_deriv_series(1, m, zi) - math.exp(zi)) / math.exp(abs(zi)))
    yield _check(s, "ml_deriv_series(1, m, z) vs exp(z), scaled by e^|z|", err, 1e-10)

    x = np.linspace(-10.0, 10.0, 201)
    err = max(max(abs(frac_cos(1, xi) - math.cos(xi)), abs(frac_sin(1, xi) - math.sin(xi))) for xi in x)
    yield _check(s, "cos_1, sin_1 vs cos, sin on |x|<=10", err, 1e-12)

    err = 0.0
    for a in (0.8, 0.9, 1.0):
        for xi in np.linspace(0.0, 3.0, 13):
            w = complex(0.0, xi**a)
            acc, term = 0j, 1 + 0j
            for k in range(120):
                acc += term / gamma_real(a * k + 1.0)
                term *= w
            err = max(err, abs(acc.real - frac_cos(a, xi)), abs(acc.imag - frac_sin(a, xi)))
    yield _check(s, "E_a(i x^a) = cos_a + i sin_a", err, 1e-12)

    err = 0.0
    for n in range(7):
        for g in (Fraction(1, 3), Fraction(5, 2), Fraction(17, 4)):
            for y in (Fraction(1, 2), Fraction(3), Fraction(-7, 5)):
                exact = Fraction(0)
                poch = Fraction(1)
                for j in range(n + 1):
                    exact += math.comb(n, j) * (-1) ** j * y**j / poch
                    poch *= g + j
                got = hyp1f1_frac(n, float(g), float(y))
                err = max(err, abs(got - float(exact)) / max(abs(float(exact)), 1e-300))
    yield _check(s, "1F1(-n; g; y) vs exact rationals, n<=6", err, 1e-13)


# ---------------------------------------------------------------------------
# jumarie


def _jumarie() -> Iterator[CheckResult]:
    s = "jumarie"
    rng = np.random.default_rng(SEED)
    err = 0.0
    for _ in range(30):
        a = rng.uniform(0.1, 1.0)
        b = rng.uniform(0.1, 3.0)
        x = rng.uniform(0.5, 2.0)
        err = max(err, _rel(gl_frac_deriv(a, lambda t, b=b: np.asarray(t) ** b, x), frac_deriv_power(a, b, x)))
    yield _check(s, "Grunwald vs power rule, 30 random cases", err, 1e-2)

    err = 0.0
    for a in (0.8, 0.9):
        for c in (-1.0, -0.5):
            f = lambda t, a=a, c=c: mittag_leffler(a, 1, c * np.asarray(t) ** a)
            for x in (0.5, 1.0, 2.0):
                target = c * mittag_leffler(a, 1, c * x**a)
                err = max(err, _rel(gl_frac_deriv(a, f, x), target))
    yield _check(s, "D^a E_a(c x^a) = c E_a(c x^a)", err, 2e-2)

    err = 0.0
    for a in (0.7, 0.85, 1.0):
        for c in (0.5, 1.3):
            for k in range(1, 41):
                # cos_a series coefficient times power rule vs -c sin_a coefficient
                lhs = (-1) ** k * c ** (2 * k) / gamma_real(1 + 2 * a * k) * frac_deriv_power(a, 2 * a * k, 1.0)
                rhs = (-1) ** k * c ** (2 * k) / gamma_real(1 + (2 * k - 1) * a)
                err = max(err, _rel(lhs, rhs))
    yield _check(s, "D^a cos_a(c x^a) = -c sin_a(c x^a), coefficients k<=40", err, 1e-12)

    f = lambda t: np.asarray(t) ** 1.5
    g = lambda t: np.sin(np.asarray(t))
    lin = gl_frac_deriv(0.6, lambda t: 2.0 * f(t) - 3.0 * g(t), 1.2)
    sep = 2.0 * gl_frac_deriv(0.6, f, 1.2) - 3.0 * gl_frac_deriv(0.6, g, 1.2)
    yield _check(s, "linearity of the Grunwald quotient", _rel(lin, sep), 1e-10)


# ---------------------------------------------------------------------------
# laplace


def _laplace() -> Iterator[CheckResult]:
    s = "laplace"
    err = max(abs(tau_factor(1.0, d) - 1.0) for d in np.linspace(-0.99, -0.01, 50))
    yield _check(s, "tau(1, delta) = 1 for 50 deltas", err, 1e-14)

    cfg = QuadratureConfig()
    d = -0.5
    err = 0.0
    for a in (0.7, 0.9):
        p = a - d - 1.0
        for sv in (1.0, 2.0, 4.0):
            lhs = laplace_numeric(
                lambda x, a=a: x**a * x ** (-d - 1.0) / gamma_real(-d), sv, cfg, singular_power=p if p < 0 else None
            )
            err = max(err, _rel(lhs, -tau_factor(a, d) * frac_deriv_power(a, d, sv)))
    yield _check(s, "L{x^a f} = -tau D_s^a L{f}, f = x^(-d-1)/G(-d)", err, 3 * cfg.rel_tol)

    qcfg = QuadratureConfig(rel_tol=1e-8)
    err = 0.0
    for a in (0.8, 0.9, 1.0):
        for sv in (1.5, 2.0, 3.0):
            for k in (0, 1):
                for b in (a, 1.0):
                    for c in (-1.0, -0.5, 0.5, 1.0):
                        p = a * k + b - 1.0
                        f = lambda x, a=a, b=b, k=k, c=c, p=p: x**p * ml_derivative(a, b, k, c * x**a)
                        v = laplace_numeric(f, sv, qcfg, singular_power=p if p < 0 else None)
                        err = max(err, _rel(v, ml_transform_pair(a, b, k, c, sv)))
    yield _check(s, "transform pairs vs quadrature", err, 1e-5)

    err = 0.0
    for b in (0.5, 0.8):
        for p in (1.5, 2.0):
            for sv in (1.0, 2.0):
                coef = frac_deriv_power(b, p, 1.0)
                lhs = laplace_numeric(lambda x: x * coef * x ** (p - b), sv)
                err = max(err, _rel(lhs, product_rule_rhs(1.0, b, p, sv)))
    yield _check(s, "product rule L{x D^b x^p} at alpha = 1", err, 1e-4)


# ---------------------------------------------------------------------------
# tables


def _tables() -> Iterator[CheckResult]:
    s = "tables"
    for row in ref.TABLE1:
        P = ModelParams.kratzer_fues(row.alpha)
        yield _check(s, f"table1 alpha={row.alpha:.2f} A", abs(P.coeff_A - row.A), ref.printed_resolution(row.A_text))
        yield _check(s, f"table1 alpha={row.alpha:.2f} B", abs(P.coeff_B - row.B), ref.printed_resolution(row.B_text))
        yield _check(
            s,
            f"table1 alpha={row.alpha:.2f} tau",
            abs(tau_factor(row.alpha, -0.5) - row.tau),
            1e-4,
            known=row.alpha in ref.TAU_KNOWN_DISCREPANCY,
        )
    for row in ref.TABLE2:
        P = ModelParams.kratzer_fues(row.alpha)
        key = f"table2 N={row.dim_N} alpha={row.alpha:.2f}"
        nu = nu_product(row.alpha, QuantumNumbers(1, 1, row.dim_N), P.mass_M, P.coeff_A)
        roots = solve_kstar(row.alpha, row.dim_N, nu)
        yield _check(s, f"{key} k* in root set", min(abs(r.k - row.k_star) for r in roots), 1e-4)
        yield _check(s, f"{key} Q1", abs(q1(row.alpha, row.k_star, row.dim_N) - row.q1), 2e-3)
        sol = solve_state(row.alpha, QuantumNumbers(1, 1, row.dim_N), P, k_star=row.k_star)
        yield _check(
            s,
            f"{key} gamma",
            abs(sol.gamma_alpha - row.gamma_alpha),
            2e-3,
            known=(row.dim_N, row.alpha) in ref.GAMMA_KNOWN_DISCREPANCY,
        )
        for n, printed in ((1, row.energy_n1_ev), (2, row.energy_n2_ev)):
            e = energy(n, row.alpha, QuantumNumbers(n, 1, row.dim_N), P, row.k_star) * 1e9
            yield _check(
                s,
                f"{key} E(n={n}) relative",
                _rel(e, printed),
                5e-2,
                known=(row.dim_N, row.alpha, n) in ref.ENERGY_KNOWN_DISCREPANCY,
            )


# ---------------------------------------------------------------------------
# spectrum


def _spectrum() -> Iterator[CheckResult]:
    s = "spectrum"
    worst = 0.0
    for row in ref.TABLE2:
        P = ModelParams.kratzer_fues(row.alpha)
        nu = nu_product(row.alpha, QuantumNumbers(0, 1, row.dim_N), P.mass_M, P.coeff_A)
        worst = max(worst, max(abs(r.q2_residual) for r in solve_kstar(row.alpha, row.dim_N, nu)))
    yield _check(s, "|q2| at every returned root", worst, 1e-10)

    rng = np.random.default_rng(SEED)
    err = 0.0
    for N in (3, 4, 5):
        for nu in rng.uniform(0.0, 50.0, 20):
            k = closed_form_kstar_alpha1(N, nu)
            err = max(err, min(abs(r.k - k) for r in solve_kstar(1.0, N, nu, k_max=20.0)))
    yield _check(s, "alpha=1 scan contains closed-form k*", err, 1e-9)

    err = 0.0
    for row in ref.TABLE2:
        P = ModelParams.kratzer_fues(row.alpha)
        for n in (1, 2):
            sol = solve_state(row.alpha, QuantumNumbers(n, 1, row.dim_N), P, k_star=row.k_star)
            e2 = P.coeff_C - sol.epsilon_alpha**2 / (2 * P.mass_M * gamma_real(1 + row.alpha) ** 2)
            err = max(err, _rel(e2, sol.energy))
    yield _check(s, "C - eps^2/(2 M a!^2) = energy", err, 1e-12)

    P = ModelParams(coeff_A=0.0, coeff_B=-4e-4)
    e0 = solve_state(1.0, QuantumNumbers(0, 0, 3), P).energy
    e1 = solve_state(1.0, QuantumNumbers(1, 0, 3), P).energy
    yield _check(s, "hydrogen E(n=1)/E(n=0) = 1/4", abs(e1 / e0 - 0.25), 1e-12)

    r = np.linspace(0.3 * P.r0, 3.0 * P.r0, 271)
    res = tres = 0.0
    for n in (1, 2):
        sol = solve_state(1.0, QuantumNumbers(n, 1, 3), P)
        res = max(res, float(np.max(radial_residual_alpha1(sol, P, r))))
        sv = np.linspace(2 * sol.epsilon_alpha, 10 * sol.epsilon_alpha, 201)
        tres = max(tres, float(np.max(transformed_residual(sv, n, sol.gamma_alpha, sol.epsilon_alpha))))
    yield _check(s, "alpha=1 radial equation residual", res, 1e-5)
    yield _check(s, "alpha=1 transformed equation residual", tres, 1e-8)

    K = ModelParams.kratzer_fues(1.0)
    err = 0.0
    for n in range(5):
        sol = solve_state(1.0, QuantumNumbers(n, 1, 3), K)
        err = max(err, abs(polynomial_sign_changes(n, sol.gamma_alpha) - n))
    yield _check(s, "1F1 factor has n sign changes, n<=4", err, 0.0)

    depth = pos = 0.0
    for a in (0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0):
        Pa = ModelParams.kratzer_fues(a)
        rr = np.linspace(0.5 * Pa.r0, 2.0 * Pa.r0, 3001)
        v = potential(Pa, a, rr)
        i = int(np.argmin(v))
        depth = max(depth, abs(v[i] + Pa.D0) / Pa.D0)
        pos = max(pos, abs(rr[i] - Pa.r0) / (rr[1] - rr[0]))
    yield _check(s, "potential minimum equals -D0, relative", depth, 1e-9)
    yield _check(s, "potential minimum at r0, in grid steps", pos, 1.0)


SUITES: dict[str, Callable[[], Iterator[CheckResult]]] = {
    "specfun": _specfun,
    "jumarie": _jumarie,
    "laplace": _laplace,
    "tables": _tables,
    "spectrum": _spectrum,
}


def run_checks(suites=None) -> list[CheckResult]:
    """Run the named suites (all by default) in a fixed order."""
    names = list(SUITES) if suites is None else list(suites)
    out: list[CheckResult] = []
    for name in names:
        out.extend(SUITES[name]())
    return out


def all_passed(results) -> bool:
    return all(r.passed or r.known_discrepancy for r in results)
