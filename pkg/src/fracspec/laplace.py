"""
Laplace-transform layer: the tau correction factor, closed-form transform
pairs, and a quadrature evaluation of the ordinary transform used to check
them.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

from scipy import integrate

from .errors import DomainError, NonConvergence, SingularityError
from .specfun import gamma_ratio, gamma_real

__all__ = [
    "DEFAULT_DELTA",
    "BranchParams",
    "QuadratureConfig",
    "tau_factor",
    "laplace_numeric",
    "laplace_power",
    "laplace_ml",
    "ml_transform_pair",
    "product_rule_rhs",
]

DEFAULT_DELTA = -0.5


def _sinpi(x: float) -> float:
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n % 2 else s


def _cospi(x: float) -> float:
    n = round(x)
    c = math.cos(math.pi * (x - n))
    return -c if n % 2 else c


def tau_factor(alpha: float, delta: float = DEFAULT_DELTA) -> float:
    """Cosecant-ratio factor ``tau = -cosec((alpha - delta) pi) / cosec(-delta pi)``.

    Equals 1 at ``alpha = 1`` for every admissible ``delta``.

    Raises
    ------
    DomainError
        If ``delta`` is outside (-1, 0).
    SingularityError
        If ``sin((alpha - delta) pi)`` vanishes.
    """
    if not -1 < delta < 0:
        raise DomainError(f"delta must lie in (-1, 0), got {delta}")
    # addition formula: alpha - delta is never rounded, so alpha = 1 gives 1 exactly
    den = _sinpi(alpha) * _cospi(delta) - _cospi(alpha) * _sinpi(delta)
    if abs(den) < 1e-12:
        raise SingularityError(f"sin((alpha - delta) pi) vanishes at alpha={alpha}, delta={delta}")
    return -_sinpi(-delta) / den


@dataclass(frozen=True)
class BranchParams:
    delta: float = DEFAULT_DELTA
    alpha: float = 1.0

    def __post_init__(self) -> None:
        if not -1 < self.delta < 0:
            raise DomainError(f"delta must lie in (-1, 0), got {self.delta}")
        if not 0 < self.alpha <= 1:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")

    @property
    def tau(self) -> float:
        return tau_factor(self.alpha, self.delta)


@dataclass(frozen=True)
class QuadratureConfig:
    """Quadrature settings for :func:`laplace_numeric`.

    ``upper_cut=None`` starts from ``30 / s`` and grows by half until the tail
    bound ``|exp(-s cut) f(cut)| / s`` drops below ``rel_tol`` times the
    running estimate.
    """

    upper_cut: Optional[float] = None
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self) -> None:
        if self.upper_cut is not None and not self.upper_cut > 0:
            raise DomainError("upper_cut must be positive")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be positive")


def _quad(func, a: float, b: float, cfg: QuadratureConfig) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            func, a, b, epsabs=0.0, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions, full_output=1
        )
    value, abserr, info = out[:3]
    if len(out) > 3:
        # QUADPACK flagged a problem; a roundoff flag with an acceptable
        # error estimate is still a usable result.
        if info.get("last", 0) >= cfg.max_subdivisions:
            raise NonConvergence(f"subdivision budget {cfg.max_subdivisions} exhausted")
        if abserr > 10 * cfg.rel_tol * abs(value):
            raise NonConvergence(f"quadrature failed: {out[3]}")
    return value


def laplace_numeric(
    f: Callable[[float], float],
    s: float,
    cfg: QuadratureConfig = QuadratureConfig(),
    singular_power: Optional[float] = None,
) -> float:
    """Ordinary Laplace transform ``int_0^inf exp(-s x) f(x) dx`` by adaptive quadrature.

    Parameters
    ----------
    f : callable
        Scalar function on ``(0, inf)``.
    s : float
        Transform variable, larger than the growth rate of ``f``.
    cfg : QuadratureConfig
    singular_power : float, optional
        Declared leading power ``p`` in (-1, 0) of ``f`` at the origin. The
        integral on ``[0, cut]`` is then taken in ``u = x^(1+p)``, which
        removes the endpoint singularity.
    """
    if not s > 0:
        raise DomainError(f"s must be positive, got {s}")
    if singular_power is not None and not -1 < singular_power < 0:
        raise DomainError(f"singular_power must lie in (-1, 0), got {singular_power}")

    def integrand(x: float) -> float:
        return math.exp(-s * x) * f(x)

    if singular_power is None:
        def piece(cut: float) -> float:
            return _quad(integrand, 0.0, cut, cfg)
    else:
        q = 1.0 + singular_power

        def mapped(u: float) -> float:
            if u <= 0.0:
                return 0.0
            x = u ** (1.0 / q)
            # dx = x / (q u) du
            return integrand(x) * x / (q * u)

        def piece(cut: float) -> float:
            return _quad(mapped, 0.0, cut**q, cfg)

    cut = cfg.upper_cut if cfg.upper_cut is not None else 30.0 / s
    for _ in range(20):
        value = piece(cut)
        tail = abs(integrand(cut)) / s
        if tail <= cfg.rel_tol * abs(value) or cfg.upper_cut is not None:
            return value
        cut *= 1.5
    raise NonConvergence(f"integrand tail did not decay by x={cut:g}")


def laplace_power(p: float, s: float) -> float:
    """``L{x^p}(s) = Gamma(1 + p) / s^(1 + p)`` for ``p > -1``."""
    if not p > -1:
        raise DomainError(f"p must exceed -1, got {p}")
    return gamma_real(1.0 + p) / s ** (1.0 + p)


def laplace_ml(alpha: float, a: float, s: float) -> float:
    """``L{E_alpha(a x^alpha)}(s) = s^(alpha-1) / (s^alpha - a)``."""
    return ml_transform_pair(alpha, 1.0, 0, a, s)


def ml_transform_pair(alpha: float, beta: float, k: int, a: float, s: float) -> float:
    """Transform of ``x^(alpha k + beta - 1) E^(k)_{alpha,beta}(a x^alpha)``.

    Returns ``k! s^(alpha - beta) / (s^alpha - a)^(k + 1)``. Pass a negative
    ``a`` for the ``(s^alpha + |a|)`` branch.
    """
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a non-negative integer, got {k}")
    sa = s**alpha
    if not sa > abs(a):
        raise DomainError(f"s^alpha = {sa} must exceed |a| = {abs(a)}")
    return math.factorial(int(k)) * s ** (alpha - beta) / (sa - a) ** (int(k) + 1)


def product_rule_rhs(alpha: float, beta: float, p: float, s: float, delta: float = DEFAULT_DELTA) -> float:
    """Gamma-ratio expression for ``L{x^alpha D^beta x^p}`` built from ``F = L{x^p}``.

    ``-tau [F Gamma(1+beta)/Gamma(1+beta-alpha) s^(beta-alpha) + s^beta D_s^alpha F]``
    with ``D_s^alpha s^(-1-p) = Gamma(-p)/Gamma(-p-alpha) s^(-1-p-alpha)``.
    """
    tau = tau_factor(alpha, delta)
    F = laplace_power(p, s)
    dF = gamma_real(1.0 + p) * gamma_ratio(-p, -p - alpha) * s ** (-1.0 - p - alpha)
    return -tau * (F * gamma_ratio(1.0 + beta, 1.0 + beta - alpha) * s ** (beta - alpha) + s**beta * dF)
