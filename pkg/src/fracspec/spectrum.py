"""
Bound states of the fractional Mie-type potential ``A/r^(2a) + B/r^a + C``.

The pipeline for one state is

1. ``nu_product``: effective centrifugal constant ``nu(nu+1)``.
2. ``solve_kstar``: roots ``k*`` of ``q2(alpha, k, N, nu) = 0``.
3. ``select_branch``: pick one root, or take an explicit index.
4. ``q1``, ``gamma_alpha``, ``epsilon_from_quantization``, ``energy``.
5. ``radial_wavefunction``: unnormalized samples of ``R(r)``.

All energies are in GeV and lengths in GeV^-1 (natural units).
``solve_state`` runs steps 1-4 and returns a :class:`SpectralSolution`.
The ``*_alpha1`` functions are closed forms at ``alpha = 1`` used as oracles.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Optional, Sequence

import numpy as np

from scipy.special import gammaln, gammasgn

from .errors import DivisionByZero, DomainError, NoRootError, OverflowGuard, PoleError
from .laplace import DEFAULT_DELTA, tau_factor
from .specfun import POLE_GUARD, factorial_frac, gamma_ratio, hyp1f1_frac, ml_deriv_series

__all__ = [
    "DEFAULT_K_MAX",
    "DEFAULT_GRID_STEP",
    "ModelParams",
    "QuantumNumbers",
    "KRoot",
    "SpectralSolution",
    "RadialSample",
    "potential",
    "potential_curvature",
    "nu_product",
    "q1",
    "q2",
    "solve_kstar",
    "select_branch",
    "closed_form_kstar_alpha1",
    "gamma_alpha",
    "beta_alpha",
    "epsilon_from_quantization",
    "energy",
    "solve_state",
    "radial_values",
    "radial_wavefunction",
    "coulomb_energy_alpha1",
    "mie_energy_alpha1",
    "coulomb_radial_alpha1",
    "mie_radial_alpha1",
    "transformed_solution",
    "transformed_eta",
    "transformed_residual",
    "radial_residual_alpha1",
    "polynomial_sign_changes",
    "GEV_TO_EV",
]

DEFAULT_K_MAX = 12.0
DEFAULT_GRID_STEP = 1e-3
GEV_TO_EV = 1e9
OVERFLOW_LIMIT = 1e300


# ---------------------------------------------------------------------------
# parameter types


@dataclass(frozen=True, kw_only=True)
class ModelParams:
    """Molecular constants and potential coefficients in GeV natural units.

    Use :meth:`kratzer_fues` to build ``A`` and ``B`` from ``D0`` and ``r0``
    for a given ``alpha``.
    """

    mass_M: float = 0.31
    D0: float = 2e-9
    r0: float = 1e5
    coeff_A: float
    coeff_B: float
    coeff_C: float = 0.0
    delta: float = DEFAULT_DELTA

    def __post_init__(self) -> None:
        for name in ("mass_M", "D0", "r0"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)}")
        if self.coeff_B == 0:
            raise DomainError("coeff_B must be nonzero")
        if not -1 < self.delta < 0:
            raise DomainError(f"delta must lie in (-1, 0), got {self.delta}")

    @classmethod
    def kratzer_fues(
        cls,
        alpha: float,
        mass_M: float = 0.31,
        D0: float = 2e-9,
        r0: float = 1e5,
        coeff_C: float = 0.0,
        delta: float = DEFAULT_DELTA,
    ) -> "ModelParams":
        """``A = D0 r0^(2 alpha)``, ``B = -2 D0 r0^alpha``."""
        _check_alpha(alpha)
        return cls(
            mass_M=mass_M,
            D0=D0,
            r0=r0,
            coeff_A=D0 * r0 ** (2 * alpha),
            coeff_B=-2.0 * D0 * r0**alpha,
            coeff_C=coeff_C,
            delta=delta,
        )


@dataclass(frozen=True)
class QuantumNumbers:
    n: int = 0
    ell: int = 1
    dim_N: int = 3

    def __post_init__(self) -> None:
        for name in ("n", "ell"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise DomainError(f"{name} must be a non-negative integer, got {v}")
        if int(self.dim_N) != self.dim_N or self.dim_N < 2:
            raise DomainError(f"dim_N must be an integer >= 2, got {self.dim_N}")


@dataclass(frozen=True)
class KRoot:
    """One root of ``q2`` with the quantities that decide its admissibility.

    ``growth_exponent`` is ``alpha (gamma - k) - 1``, the small-``r`` power
    of the radial function.
    """

    k: float
    q2_residual: float
    q1: float
    gamma_alpha: float
    growth_exponent: float


@dataclass(frozen=True)
class SpectralSolution:
    alpha: float
    dim_N: int
    n: int
    ell: int
    k_star: float
    q1: float
    gamma_alpha: float
    beta_alpha: float
    epsilon_alpha: float
    energy: float
    nu_product: float
    tau: float

    @property
    def growth_exponent(self) -> float:
        return self.alpha * (self.gamma_alpha - self.k_star) - 1.0

    @property
    def energy_ev(self) -> float:
        return self.energy * GEV_TO_EV

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralSolution":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})


@dataclass(frozen=True)
class RadialSample:
    """Unnormalized radial samples. ``dropped`` counts points removed by the overflow guard."""

    r_values: np.ndarray
    R_values: np.ndarray
    normalized: bool = False
    dropped: int = 0

    def __post_init__(self) -> None:
        if len(self.r_values) != len(self.R_values):
            raise DomainError("r_values and R_values differ in length")
        if len(self.r_values) > 1 and not np.all(np.diff(self.r_values) > 0):
            raise DomainError("r_values must be strictly increasing")


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")


# ---------------------------------------------------------------------------
# potential


def potential(params: ModelParams, alpha: float, r):
    """``V(r) = A r^(-2 alpha) + B r^(-alpha) + C``; ``r`` may be an array."""
    _check_alpha(alpha)
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("r must be positive")
    ra = r_arr**-alpha
    v = params.coeff_A * ra * ra + params.coeff_B * ra + params.coeff_C
    return float(v) if np.ndim(v) == 0 else v


def potential_curvature(params: ModelParams, alpha: float, r: float, h: Optional[float] = None) -> float:
    """Central second difference of :func:`potential` at ``r`` (default ``h = 1e-3 r``)."""
    h = 1e-3 * r if h is None else h
    vm, v0, vp = potential(params, alpha, [r - h, r, r + h])
    return float((vp - 2.0 * v0 + vm) / (h * h))


# ---------------------------------------------------------------------------
# Q1 / Q2 and k*


def nu_product(alpha: float, q: QuantumNumbers, mass_M: float, coeff_A: float) -> float:
    """``nu(nu+1) = l(l+N-2) alpha!^2 + 2 M alpha!^2 A``."""
    f2 = factorial_frac(alpha) ** 2
    return q.ell * (q.ell + q.dim_N - 2) * f2 + 2.0 * mass_M * f2 * coeff_A


def _dim_ratio(alpha: float, dim_N: int) -> float:
    return gamma_ratio(1.0 + alpha * (dim_N - 1), 1.0 + alpha * (dim_N - 2))


def q1(alpha: float, k: float, dim_N: int) -> float:
    """``2 G(1-ak)/G(1-ak-a) + G(1+a(N-1))/G(1+a(N-2))``.

    At ``alpha = 1`` this is ``N - 1 - 2k``.

    Raises
    ------
    PoleError
        Where ``1 - alpha k`` sits on a gamma pole and the ratio diverges.
    """
    x = 1.0 - alpha * k
    return 2.0 * gamma_ratio(x, x - alpha) + _dim_ratio(alpha, dim_N)


def _q2_parts(alpha: float, k: float, dim_N: int) -> tuple[float, float]:
    x = 1.0 - alpha * k
    # G(x)/G(x-2a) as one ratio stays finite when x - a is a pole
    a = gamma_ratio(x, x - 2.0 * alpha)
    b = gamma_ratio(x, x - alpha) * _dim_ratio(alpha, dim_N)
    return a, b


def q2(alpha: float, k: float, dim_N: int, nu_prod: float) -> float:
    """``G(1-ak)/G(1-ak-a) [G(1-ak-a)/G(1-ak-2a) + G(1+a(N-1))/G(1+a(N-2))] - nu(nu+1)``.

    At ``alpha = 1`` this is ``k^2 + (2-N) k - nu(nu+1)``.
    """
    a, b = _q2_parts(alpha, k, dim_N)
    return a + b - nu_prod


def closed_form_kstar_alpha1(dim_N: int, nu_prod: float) -> float:
    """Positive root of ``k^2 + (2-N) k - nu(nu+1) = 0``."""
    if nu_prod < 0:
        raise DomainError(f"nu_prod must be >= 0, got {nu_prod}")
    b = dim_N - 2.0
    return 0.5 * (b + math.sqrt(b * b + 4.0 * nu_prod))


def gamma_alpha(alpha: float, q1_val: float, tau: float) -> float:
    """``G(1+2a)/G(1+a) - Q1/tau``."""
    if tau == 0:
        raise DivisionByZero("tau must be nonzero")
    return gamma_ratio(1.0 + 2.0 * alpha, 1.0 + alpha) - q1_val / tau


def _annotate(alpha: float, k: float, dim_N: int, nu_prod: float, tau: float) -> KRoot:
    qv = q1(alpha, k, dim_N)
    g = gamma_alpha(alpha, qv, tau)
    return KRoot(k, q2(alpha, k, dim_N, nu_prod), qv, g, alpha * (g - k) - 1.0)


def _safe_q2(alpha: float, k: float, dim_N: int, nu_prod: float) -> Optional[tuple[float, float]]:
    """``(q2, scale)`` or ``None`` at a pole; ``scale`` bounds the rounding in ``q2``."""
    try:
        a, b = _q2_parts(alpha, k, dim_N)
    except PoleError:
        return None
    v = a + b - nu_prod
    if not math.isfinite(v):
        return None
    return v, abs(a) + abs(b) + abs(nu_prod)


def _ratio_grid(a: np.ndarray, d: float) -> np.ndarray:
    """``Gamma(a) / Gamma(a - d)`` elementwise; NaN where the ratio diverges."""
    di = round(d)
    if abs(d - di) <= 1e-12 and di >= 0:
        out = np.ones_like(a)
        for j in range(1, di + 1):
            out *= a - j
        return out
    b = a - d
    near_a = (np.abs(a - np.round(a)) <= POLE_GUARD) & (np.round(a) <= 0)
    near_b = (np.abs(b - np.round(b)) <= POLE_GUARD) & (np.round(b) <= 0)
    with np.errstate(all="ignore"):
        out = gammasgn(a) * gammasgn(b) * np.exp(gammaln(a) - gammaln(b))
    out[near_b] = 0.0
    out[near_a] = np.nan
    return out


def _q2_grid(alpha: float, ks: np.ndarray, dim_N: int, nu_prod: float) -> np.ndarray:
    """Vectorized :func:`q2` for the scan; rounding differs from the scalar path only in the last bits."""
    x = 1.0 - alpha * ks
    v = _ratio_grid(x, 2.0 * alpha) + _ratio_grid(x, alpha) * _dim_ratio(alpha, dim_N) - nu_prod
    v[~np.isfinite(v)] = np.nan
    return v


def _bisect(alpha, dim_N, nu_prod, lo, flo, hi):
    # shrink to adjacent doubles
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        got = _safe_q2(alpha, mid, dim_N, nu_prod)
        if got is None:
            return None
        fm = got[0]
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    glo = _safe_q2(alpha, lo, dim_N, nu_prod)
    ghi = _safe_q2(alpha, hi, dim_N, nu_prod)
    if glo is None or ghi is None:
        return None
    return lo if abs(glo[0]) <= abs(ghi[0]) else hi


def solve_kstar(
    alpha: float,
    dim_N: int,
    nu_prod: float,
    k_max: float = DEFAULT_K_MAX,
    grid_step: float = DEFAULT_GRID_STEP,
    *,
    delta: float = DEFAULT_DELTA,
    certify_tol: float = 1e-10,
) -> list[KRoot]:
    """All roots of ``q2`` on ``(grid_step, k_max]``, ascending.

    The scan evaluates ``q2`` on the whole grid at once, brackets every sign
    change between consecutive grid points where it is finite, bisects to adjacent doubles and keeps the bracket only if
    the final residual is below ``certify_tol`` relative to the magnitude of
    the terms of ``q2`` (at least 1). Sign flips across gamma poles fail this
    certificate and are dropped.

    Raises
    ------
    NoRootError
        If no certified root exists.
    """
    _check_alpha(alpha)
    if not k_max > 0 or not grid_step > 0:
        raise DomainError("k_max and grid_step must be positive")
    tau = tau_factor(alpha, delta)
    count = int(math.floor(k_max / grid_step + 1e-9))
    ks = grid_step * np.arange(1, count + 1)
    vals = _q2_grid(alpha, ks, dim_N, nu_prod)
    found: list[float] = []
    for i in np.flatnonzero(vals == 0.0):
        if _safe_q2(alpha, ks[i], dim_N, nu_prod) is not None:
            found.append(float(ks[i]))
    sg = np.sign(vals)
    cand = np.flatnonzero(np.isfinite(vals[:-1]) & np.isfinite(vals[1:]) & (sg[:-1] * sg[1:] < 0))
    for i in cand:
        lo, hi = float(ks[i]), float(ks[i + 1])
        glo = _safe_q2(alpha, lo, dim_N, nu_prod)
        ghi = _safe_q2(alpha, hi, dim_N, nu_prod)
        if glo is None or ghi is None:
            continue
        if glo[0] == 0.0 or ghi[0] == 0.0:
            found.append(lo if glo[0] == 0.0 else hi)
            continue
        if (glo[0] > 0) == (ghi[0] > 0):
            continue
        root = _bisect(alpha, dim_N, nu_prod, lo, glo[0], hi)
        if root is None:
            continue
        chk = _safe_q2(alpha, root, dim_N, nu_prod)
        if chk is not None and abs(chk[0]) <= certify_tol * max(1.0, chk[1]):
            found.append(root)
    if not found:
        raise NoRootError(f"no root of q2 on (0, {k_max}] for alpha={alpha}, N={dim_N}")
    return [_annotate(alpha, k, dim_N, nu_prod, tau) for k in sorted(set(found))]


def select_branch(roots: Sequence[KRoot], index: Optional[int] = None) -> KRoot:
    """Choose the working root.

    With ``index`` the root at that position is returned. Otherwise the root
    with the smallest non-negative growth exponent among those with finite
    ``gamma > 0`` wins: the radial function then stays finite at the origin
    and its leading power is as mild as possible.

    Raises
    ------
    NoRootError
        If ``index`` is out of range or no root qualifies.
    """
    if index is not None:
        if not -len(roots) <= index < len(roots):
            raise NoRootError(f"branch index {index} out of range for {len(roots)} roots")
        return roots[index]
    ok = [
        r
        for r in roots
        if math.isfinite(r.gamma_alpha) and r.gamma_alpha > 0 and r.growth_exponent >= -1e-9
    ]
    if not ok:
        raise NoRootError("no root with non-negative growth exponent and gamma > 0")
    return min(ok, key=lambda r: r.growth_exponent)


# ---------------------------------------------------------------------------
# quantization and energy


def beta_alpha(alpha: float, mass_M: float, coeff_B: float) -> float:
    """``beta = -2 M alpha!^2 B``."""
    return -2.0 * mass_M * factorial_frac(alpha) ** 2 * coeff_B


def epsilon_from_quantization(n: int, gamma_a: float, beta_a: float, tau: float) -> float:
    """``eps = beta / (tau (2n + gamma))`` from the integer condition on ``-lambda_2``.

    Raises
    ------
    DomainError
        If ``beta <= 0``, ``tau <= 0`` or ``2n + gamma <= 0``.
    """
    if not beta_a > 0:
        raise DomainError(f"beta_alpha must be positive for a bound state, got {beta_a}")
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau}")
    den = 2 * n + gamma_a
    if not den > 0:
        raise DomainError(f"2n + gamma = {den} <= 0: no bound state on this branch")
    return beta_a / (tau * den)


def energy(n: int, alpha: float, q: QuantumNumbers, params: ModelParams, k_star: float) -> float:
    """``C - M alpha!^2 / (2 tau^2) [B / (n + G(1+2a)/(2 G(1+a)) - Q1/(2 tau))]^2`` in GeV.

    ``q`` supplies the dimension; ``n`` is passed separately so one root can
    serve several radial indices.

    Raises
    ------
    DivisionByZero
        If the bracketed denominator vanishes.
    """
    tau = tau_factor(alpha, params.delta)
    qv = q1(alpha, k_star, q.dim_N)
    den = n + 0.5 * gamma_ratio(1.0 + 2.0 * alpha, 1.0 + alpha) - qv / (2.0 * tau)
    if den == 0.0 or abs(den) < 1e-300:
        raise DivisionByZero("energy denominator vanishes")
    f2 = factorial_frac(alpha) ** 2
    return params.coeff_C - params.mass_M * f2 / (2.0 * tau * tau) * (params.coeff_B / den) ** 2


def solve_state(
    alpha: float,
    q: QuantumNumbers,
    params: ModelParams,
    *,
    k_star: Optional[float] = None,
    branch: Optional[int] = None,
    k_max: float = DEFAULT_K_MAX,
    grid_step: float = DEFAULT_GRID_STEP,
) -> SpectralSolution:
    """Full spectral solution for one ``(alpha, N, n, l)``.

    ``k_star`` pins the root directly; otherwise the roots of ``q2`` are
    scanned and one is chosen by :func:`select_branch` (``branch`` indexes
    the ascending root list).
    """
    _check_alpha(alpha)
    tau = tau_factor(alpha, params.delta)
    nu = nu_product(alpha, q, params.mass_M, params.coeff_A)
    if k_star is None:
        roots = solve_kstar(alpha, q.dim_N, nu, k_max, grid_step, delta=params.delta)
        k_star = select_branch(roots, branch).k
    qv = q1(alpha, k_star, q.dim_N)
    g = gamma_alpha(alpha, qv, tau)
    b = beta_alpha(alpha, params.mass_M, params.coeff_B)
    eps = epsilon_from_quantization(q.n, g, b, tau)
    e = energy(q.n, alpha, q, params, k_star)
    return SpectralSolution(
        alpha=float(alpha),
        dim_N=int(q.dim_N),
        n=int(q.n),
        ell=int(q.ell),
        k_star=float(k_star),
        q1=qv,
        gamma_alpha=g,
        beta_alpha=b,
        epsilon_alpha=eps,
        energy=e,
        nu_product=nu,
        tau=tau,
    )


# ---------------------------------------------------------------------------
# radial function


def _log_abs_R(sol: SpectralSolution, r: float) -> tuple[float, float]:
    """``(log|R|, sign R)`` at one radius."""
    a = sol.alpha
    ra = r**a
    p = a * (sol.gamma_alpha - sol.k_star) - 1.0
    ml = float(ml_deriv_series(a, sol.gamma_alpha - 1.0, -sol.epsilon_alpha * ra))
    hf = float(hyp1f1_frac(sol.n, sol.gamma_alpha, 2.0 * sol.epsilon_alpha * ra))
    prod = ml * hf
    if prod == 0.0:
        return -math.inf, 0.0
    return p * math.log(r) + math.log(abs(prod)), math.copysign(1.0, prod)


def radial_values(sol: SpectralSolution, r) -> np.ndarray:
    """``R(r) = r^(a(gamma-k)-1) E^(gamma-1)(-eps r^a) 1F1(-n, gamma, 2 eps r^a)`` with unit prefactor.

    Raises
    ------
    OverflowGuard
        If any ``|R|`` exceeds 1e300.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr <= 0):
        raise DomainError("r must be positive")
    out = np.empty(r_arr.shape)
    lim = math.log(OVERFLOW_LIMIT)
    for i, ri in enumerate(r_arr):
        lg, sg = _log_abs_R(sol, float(ri))
        if lg > lim:
            raise OverflowGuard(f"|R({ri:g})| = exp({lg:.1f}) exceeds {OVERFLOW_LIMIT:g}")
        out[i] = sg * math.exp(lg)
    return out


def radial_wavefunction(
    n: int,
    alpha: float,
    sol: SpectralSolution,
    r_grid: Sequence[float],
    on_overflow: str = "raise",
) -> RadialSample:
    """Sample the unnormalized radial function on ``r_grid``.

    Parameters
    ----------
    n, alpha : int, float
        Must agree with ``sol``.
    sol : SpectralSolution
    r_grid : sequence of float
        Strictly increasing positive radii.
    on_overflow : {"raise", "drop"}
        ``"drop"`` removes points with ``|R| > 1e300`` and counts them in
        ``RadialSample.dropped``.
    """
    if n != sol.n or alpha != sol.alpha:
        raise DomainError(f"(n, alpha) = ({n}, {alpha}) does not match solution ({sol.n}, {sol.alpha})")
    if on_overflow not in ("raise", "drop"):
        raise DomainError(f"on_overflow must be 'raise' or 'drop', got {on_overflow!r}")
    r_arr = np.asarray(r_grid, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("r must be positive")
    lim = math.log(OVERFLOW_LIMIT)
    keep_r, keep_R = [], []
    dropped = 0
    for ri in r_arr:
        lg, sg = _log_abs_R(sol, float(ri))
        if lg > lim:
            if on_overflow == "raise":
                raise OverflowGuard(f"|R({ri:g})| = exp({lg:.1f}) exceeds {OVERFLOW_LIMIT:g}")
            dropped += 1
            continue
        keep_r.append(float(ri))
        keep_R.append(sg * math.exp(lg))
    return RadialSample(np.array(keep_r), np.array(keep_R), False, dropped)


# ---------------------------------------------------------------------------
# alpha = 1 closed forms


def coulomb_energy_alpha1(n: int, ell: int, dim_N: int, mass_M: float, coeff_B: float) -> float:
    """``-(M/2) [B / (n + l + (N-1)/2)]^2``."""
    return -0.5 * mass_M * (coeff_B / (n + ell + 0.5 * (dim_N - 1))) ** 2


def mie_energy_alpha1(n: int, dim_N: int, nu_prod: float, mass_M: float, coeff_B: float, coeff_C: float) -> float:
    """``C - (M/2) [B / (n + k + (3-N)/2)]^2`` with ``k`` the positive root at ``alpha = 1``."""
    k = closed_form_kstar_alpha1(dim_N, nu_prod)
    return coeff_C - 0.5 * mass_M * (coeff_B / (n + k + 0.5 * (3 - dim_N))) ** 2


def coulomb_radial_alpha1(n: int, ell: int, dim_N: int, eps: float, r):
    """``r^l exp(-eps r) 1F1(-n; 2l+N-1; 2 eps r)``."""
    from scipy.special import hyp1f1

    r = np.asarray(r, dtype=float)
    return r**ell * np.exp(-eps * r) * hyp1f1(-n, 2 * ell + dim_N - 1, 2 * eps * r)


def mie_radial_alpha1(n: int, dim_N: int, k: float, eps: float, r):
    """``r^(k+2-N) exp(-eps r) 1F1(-n; 2k-N+3; 2 eps r)``."""
    from scipy.special import hyp1f1

    r = np.asarray(r, dtype=float)
    return r ** (k + 2 - dim_N) * np.exp(-eps * r) * hyp1f1(-n, 2 * k - dim_N + 3, 2 * eps * r)


# ---------------------------------------------------------------------------
# residual checks


def transformed_solution(s, n: int, gamma_a: float, eps: float):
    """``zeta(s) = (s+eps)^(-gamma) ((s-eps)/(s+eps))^n`` at ``alpha = 1``, unit constant."""
    s = np.asarray(s, dtype=float)
    return (s + eps) ** (-gamma_a) * ((s - eps) / (s + eps)) ** n


def transformed_eta(s, n: int, gamma_a: float, eps: float):
    """``eta(s) = l1/(s+eps) + l2/(s-eps)`` with ``l1 = gamma + n``, ``l2 = -n`` on the quantized branch."""
    s = np.asarray(s, dtype=float)
    return (gamma_a + n) / (s + eps) - n / (s - eps)


def transformed_residual(s, n: int, gamma_a: float, eps: float, h: Optional[float] = None):
    """Relative residual of ``zeta' + eta zeta = 0``.

    ``zeta'`` is a five-point central difference with step ``h`` (default
    ``1e-5 eps``). The residual is divided by ``|zeta'|`` plus the magnitudes
    of the two pole terms of ``eta zeta``, which stays meaningful where
    ``eta`` itself vanishes.
    """
    h = 1e-5 * eps if h is None else h
    s = np.asarray(s, dtype=float)

    def z(x):
        return transformed_solution(x, n, gamma_a, eps)

    dz = (z(s - 2 * h) - 8 * z(s - h) + 8 * z(s + h) - z(s + 2 * h)) / (12 * h)
    z0 = z(s)
    t1 = (gamma_a + n) / (s + eps) * z0
    t2 = -n / (s - eps) * z0
    return np.abs(dz + t1 + t2) / (np.abs(dz) + np.abs(t1) + np.abs(t2))


def polynomial_sign_changes(n: int, gamma_a: float, y_max: Optional[float] = None, points: int = 20001) -> int:
    """Sign changes of ``1F1(-n; gamma; y)`` on ``(0, y_max]``.

    The default ``y_max = 4n + 2 gamma + 10`` lies beyond the largest zero of
    the underlying Laguerre polynomial.
    """
    y_max = 4.0 * n + 2.0 * abs(gamma_a) + 10.0 if y_max is None else y_max
    y = np.linspace(0.0, y_max, points)[1:]
    coef = [1.0]
    for j in range(1, n + 1):
        coef.append(coef[-1] * -(n - j + 1) / (j * (gamma_a + j - 1)))
    v = np.polyval(coef[::-1], y)
    sg = np.sign(v[v != 0.0])
    return int(np.count_nonzero(sg[1:] != sg[:-1]))


def radial_residual_alpha1(
    sol: SpectralSolution,
    params: ModelParams,
    r,
    h: Optional[float] = None,
):
    """Relative residual of the classical radial equation at ``alpha = 1``.

    ``R'' + (N-1)/r R' - l(l+N-2)/r^2 R + 2M (E - V) R`` with central
    differences of step ``h`` (default ``1e-4 r0``), divided by the sum of
    the magnitudes of the four terms.
    """
    if sol.alpha != 1.0:
        raise DomainError("radial residual check is defined at alpha = 1 only")
    h = 1e-4 * params.r0 if h is None else h
    r = np.atleast_1d(np.asarray(r, dtype=float))
    Rm = radial_values(sol, r - h)
    R0 = radial_values(sol, r)
    Rp = radial_values(sol, r + h)
    d2 = (Rp - 2.0 * R0 + Rm) / (h * h)
    d1 = (Rp - Rm) / (2.0 * h)
    N, ell = sol.dim_N, sol.ell
    t1 = d2
    t2 = (N - 1) / r * d1
    t3 = -ell * (ell + N - 2) / r**2 * R0
    t4 = 2.0 * params.mass_M * (sol.energy - potential(params, 1.0, r)) * R0
    scale = np.abs(t1) + np.abs(t2) + np.abs(t3) + np.abs(t4)
    return np.abs(t1 + t2 + t3 + t4) / scale
