"""
Jumarie-sense fractional differentiation.

``frac_deriv_power`` is the closed-form power rule. ``gl_frac_deriv`` is a
truncated Grunwald-type fractional difference quotient applied to
``f - f(0)``; it is first order in the step and serves as an independent
numerical check of the closed-form rules.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, PoleError, TruncationWarning
from .specfun import POLE_GUARD, gamma_ratio

__all__ = ["GLConfig", "GLResult", "frac_deriv_power", "gl_frac_deriv", "gl_weights"]


@dataclass(frozen=True)
class GLConfig:
    """Step and length of the fractional difference.

    ``n_terms=None`` picks ``ceil(x / step_h)`` so that the stencil reaches
    back to the origin.
    """

    step_h: float = 1e-3
    n_terms: Optional[int] = None

    def __post_init__(self) -> None:
        if not 0 < self.step_h < 1:
            raise DomainError(f"step_h must lie in (0, 1), got {self.step_h}")
        if self.n_terms is not None and (int(self.n_terms) != self.n_terms or self.n_terms < 1):
            raise DomainError(f"n_terms must be a positive integer, got {self.n_terms}")

    def terms_for(self, x: float) -> int:
        return self.n_terms if self.n_terms is not None else math.ceil(x / self.step_h)


@dataclass(frozen=True)
class GLResult:
    value: float
    n_terms: int
    last_term_ratio: float
    truncated: bool


def frac_deriv_power(alpha: float, beta_exp: float, x: float) -> float:
    """Power rule ``D^alpha x^beta = Gamma(1+beta)/Gamma(1+beta-alpha) x^(beta-alpha)``.

    The derivative of a constant (``beta_exp == 0``) is exactly zero.
    """
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not beta_exp > -1:
        raise DomainError(f"power must exceed -1, got {beta_exp}")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    if beta_exp == 0:
        return 0.0
    den = 1.0 + beta_exp - alpha
    k = round(den)
    if k <= 0 and abs(den - k) <= POLE_GUARD:
        raise PoleError(f"Gamma(1 + beta - alpha) pole at {den!r}")
    return gamma_ratio(1.0 + beta_exp, den) * x ** (beta_exp - alpha)


def gl_weights(alpha: float, n: int) -> np.ndarray:
    """``(-1)^i binom(alpha, i)`` for ``i = 0..n`` by the stable recurrence."""
    w = np.empty(n + 1)
    w[0] = 1.0
    for i in range(1, n + 1):
        w[i] = w[i - 1] * (i - 1 - alpha) / i
    return w


def _evaluate(f: Callable, pts: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(pts), dtype=float)
        if vals.shape == pts.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([float(f(float(t))) for t in pts])


def gl_frac_deriv(
    alpha: float,
    f: Callable,
    x: float,
    cfg: GLConfig = GLConfig(),
    full_output: bool = False,
):
    """Fractional difference quotient ``Delta^alpha [f(x) - f(0)] / h^alpha``.

    The stencil points are ``x + (alpha - i) h`` for ``i = 0..n``; ``f - f(0)``
    is taken as zero left of the origin.

    Parameters
    ----------
    alpha : float
        Order in (0, 1].
    f : callable
        Function on ``[0, inf)``. Called once with an array of stencil points
        if it accepts one, otherwise point by point.
    x : float
        Evaluation point, ``x > 0``.
    cfg : GLConfig
        Step and number of terms.
    full_output : bool
        Return a :class:`GLResult` instead of the bare value.

    Warns
    -----
    TruncationWarning
        When the stencil stops short of the origin and the last retained
        term exceeds 1e-10 of the sum.
    """
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    h = cfg.step_h
    n = cfg.terms_for(x)
    w = gl_weights(alpha, n)
    pts = x + (alpha - np.arange(n + 1)) * h
    inside = pts >= 0.0
    f0 = float(f(0.0))
    g = np.zeros(n + 1)
    g[inside] = _evaluate(f, pts[inside]) - f0
    products = w * g
    raw = math.fsum(products)
    value = raw / h**alpha
    ratio = abs(products[-1]) / abs(raw) if raw != 0 else (0.0 if products[-1] == 0 else math.inf)
    # once the stencil passes the origin every omitted term is exactly zero
    truncated = x + (alpha - n - 1) * h > 0.0 and ratio > 1e-10
    if truncated:
        warnings.warn(
            f"fractional difference truncated: last term / sum = {ratio:.3g}",
            TruncationWarning,
            stacklevel=2,
        )
    if full_output:
        return GLResult(value, n, ratio, truncated)
    return value
