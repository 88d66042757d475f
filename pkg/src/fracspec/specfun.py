"""
Real-argument special functions.

Gamma with reflection, the Mittag-Leffler family (plain, two-parameter and
term-wise differentiated), the one-parameter fractional cosine and sine, and
the terminating confluent hypergeometric polynomial.

All infinite sums are truncated power series in the argument. The float pass
uses compensated summation; when the ratio ``sum |term| / |sum term|`` shows
that more than ``SeriesControl.max_cancellation`` is lost to cancellation, the
identical series is re-evaluated with mpmath at a working precision chosen
from that ratio, and the result is rounded back to float.
"""

from __future__ import annotations

import functools
import inspect
import math
from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "POLE_GUARD",
    "Z_MAX",
    "SeriesControl",
    "MLParams",
    "gamma_real",
    "gamma_sign",
    "gamma_ratio",
    "factorial_frac",
    "mittag_leffler",
    "ml_derivative",
    "ml_deriv_series",
    "frac_cos",
    "frac_sin",
    "hyp1f1_frac",
]

POLE_GUARD = 1e-9
Z_MAX = 50.0

# Past this, math.gamma overflows a double.
_GAMMA_DIRECT_MAX = 170.0


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the power series in this module.

    A series stops once three consecutive, non-increasing terms satisfy
    ``|term| < abs_tol + rel_tol * |partial sum|``.
    """

    max_terms: int = 500
    abs_tol: float = 1e-16
    rel_tol: float = 1e-14
    max_cancellation: float = 10.0

    def __post_init__(self) -> None:
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms}")
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise DomainError("tolerances must be non-negative")
        if self.abs_tol == 0 and self.rel_tol == 0:
            raise DomainError("at least one of abs_tol, rel_tol must be positive")
        if not self.max_cancellation >= 1:
            raise DomainError("max_cancellation must be >= 1")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class MLParams:
    """Parameters of a (differentiated) two-parameter Mittag-Leffler function."""

    alpha: float
    beta: float = 1.0
    deriv_order: float = 0.0

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha}")
        if not self.beta > 0:
            raise DomainError(f"beta must be > 0, got {self.beta}")
        if not self.deriv_order >= 0:
            raise DomainError(f"deriv_order must be >= 0, got {self.deriv_order}")


# ---------------------------------------------------------------------------
# gamma


def _near_pole(x: float) -> bool:
    k = round(x)
    return k <= 0 and abs(x - k) <= POLE_GUARD


def _sinpi(x: float) -> float:
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n % 2 else s


def gamma_real(x: float) -> float:
    """Gamma function on the real line.

    Arguments below 1/2 go through the reflection identity
    ``Gamma(x) Gamma(1 - x) = pi / sin(pi x)``.

    Raises
    ------
    PoleError
        If ``x`` is within ``POLE_GUARD`` of a non-positive integer.
    """
    x = float(x)
    if _near_pole(x):
        raise PoleError(f"gamma pole at x={x!r}")
    if x < 0.5:
        return math.pi / (_sinpi(x) * math.gamma(1.0 - x))
    return math.gamma(x)


def gamma_sign(x: float) -> int:
    """Sign of Gamma(x) for ``x`` away from the poles."""
    if x > 0:
        return 1
    return 1 if math.floor(x) % 2 == 0 else -1


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a) / Gamma(b) as a single ratio.

    Integer differences ``a - b`` use the finite Pochhammer product, which
    stays finite when both arguments sit on poles. Otherwise the log-gamma
    difference is exponentiated with explicit sign tracking. A pole of the
    denominator alone gives 0; a pole of the numerator alone raises.
    """
    a = float(a)
    b = float(b)
    d = a - b
    di = round(d)
    if abs(d - di) <= 1e-12 and abs(di) <= 64:
        prod = 1.0
        if di >= 0:
            for j in range(di):
                prod *= b + j
            return prod
        for j in range(-di):
            prod *= a + j
        if abs(prod) <= POLE_GUARD:
            raise PoleError(f"gamma ratio singular at a={a!r}, b={b!r}")
        return 1.0 / prod
    if _near_pole(a):
        raise PoleError(f"gamma ratio singular at a={a!r}")
    if _near_pole(b):
        return 0.0
    sign = gamma_sign(a) * gamma_sign(b)
    return sign * math.exp(math.lgamma(a) - math.lgamma(b))


def factorial_frac(alpha: float) -> float:
    """The fractional factorial ``alpha! = Gamma(1 + alpha)`` for 0 < alpha <= 1."""
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    return gamma_real(1.0 + alpha)


# ---------------------------------------------------------------------------
# series engine


class _Neumaier:
    __slots__ = ("s", "c")

    def __init__(self) -> None:
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


@functools.lru_cache(maxsize=65536)
def _ml_coef(alpha: float, beta: float, order: float, p: int) -> float:
    # Gamma(p+order+1) / (Gamma(p+1) Gamma(alpha (p+order) + beta))
    top = p + order + 1.0
    bot = alpha * (p + order) + beta
    if order == 0.0:
        if bot <= _GAMMA_DIRECT_MAX:
            return 1.0 / gamma_real(bot)
        return math.exp(-math.lgamma(bot))
    if top <= _GAMMA_DIRECT_MAX and bot <= _GAMMA_DIRECT_MAX:
        return math.gamma(top) / (math.gamma(p + 1.0) * math.gamma(bot))
    return math.exp(_ml_log_coef(alpha, beta, order, p))


def _ml_log_coef(alpha: float, beta: float, order: float, p: int) -> float:
    # every coefficient is positive since order >= 0 and alpha, beta > 0
    top = p + order + 1.0
    bot = alpha * (p + order) + beta
    return math.lgamma(top) - math.lgamma(p + 1.0) - math.lgamma(bot)


@functools.lru_cache(maxsize=65536)
def _ml_coef_mp(alpha: float, beta: float, order: float, p: int, dps: int):
    with mpmath.workdps(dps):
        return _ml_coef_mp_raw(alpha, beta, order, p)


def _ml_coef_mp_raw(alpha: float, beta: float, order: float, p: int):
    a = mpmath.mpf(alpha)
    m = mpmath.mpf(order)
    top = p + m + 1
    bot = a * (p + m) + beta
    if order == 0.0:
        return mpmath.rgamma(bot)
    return mpmath.gamma(top) * mpmath.rgamma(p + 1) * mpmath.rgamma(bot)


def _term(coef: Callable[[int], float], log_coef: Callable[[int], float], p: int, z: float) -> float:
    c = coef(p)
    if p == 0:
        return c
    if z == 0.0:
        return 0.0
    try:
        zp = z**p
    except OverflowError:
        zp = math.inf
    if math.isfinite(zp) and zp != 0.0 and c > 1e-290:
        return c * zp
    # one factor left the float range; combine in the log domain
    lt = log_coef(p) + p * math.log(abs(z))
    if lt > 709.0:
        raise ConvergenceError(f"series term overflow at p={p}, z={z!r}")
    mag = math.exp(lt)
    return -mag if z < 0 and p % 2 else mag


def _float_pass(coef: Callable[[int], float], log_coef: Callable[[int], float], z: float, ctrl: SeriesControl):
    acc = _Neumaier()
    abs_sum = 0.0
    small = 0
    prev = math.inf
    for p in range(ctrl.max_terms):
        term = _term(coef, log_coef, p, z)
        if not math.isfinite(term):
            raise ConvergenceError(f"series term overflow at p={p}, z={z!r}")
        acc.add(term)
        mag = abs(term)
        abs_sum += mag
        if mag <= prev and mag < ctrl.abs_tol + ctrl.rel_tol * abs(acc.value):
            small += 1
            if small >= 3:
                return acc.value, abs_sum, p + 1
        else:
            small = 0
        prev = mag
    raise ConvergenceError(f"series did not converge within {ctrl.max_terms} terms (z={z!r})")


def _mp_pass(coef_mp, z: float, ctrl: SeriesControl, dps: int):
    # Relative stopping only: this pass exists to deliver full relative
    # accuracy on results much smaller than the largest term.
    with mpmath.workdps(dps):
        zz = mpmath.mpf(z)
        total = mpmath.mpf(0)
        abs_sum = mpmath.mpf(0)
        small = 0
        prev = mpmath.inf
        zp = mpmath.mpf(1)
        for p in range(ctrl.max_terms):
            term = coef_mp(p, dps) * zp
            total += term
            mag = abs(term)
            abs_sum += mag
            floor = ctrl.rel_tol * abs(total) if total != 0 else ctrl.abs_tol
            if mag <= prev and mag < floor:
                small += 1
                if small >= 3:
                    return total, abs_sum
            else:
                small = 0
            prev = mag
            zp *= zz
    raise ConvergenceError(f"series did not converge within {ctrl.max_terms} terms (z={z!r})")


def _required_dps(abs_sum, total) -> int:
    if total == 0:
        return 60
    lost = float(mpmath.log10(abs_sum / abs(total))) if abs_sum > 0 else 0.0
    # quantized so cached coefficients are shared between nearby arguments
    return 10 * math.ceil((24 + max(0.0, lost)) / 10)


def _sum_series(
    coef: Callable[[int], float],
    log_coef: Callable[[int], float],
    coef_mp: Callable[[int], object],
    z: float,
    ctrl: SeriesControl,
) -> float:
    value, abs_sum, _ = _float_pass(coef, log_coef, z, ctrl)
    if abs_sum == 0.0 or (value != 0.0 and abs_sum / abs(value) <= ctrl.max_cancellation):
        return value
    dps = _required_dps(abs_sum, value)
    for _ in range(4):
        total, mp_abs = _mp_pass(coef_mp, z, ctrl, dps)
        need = _required_dps(mp_abs, total)
        if need <= dps:
            return float(total)
        dps = need
    return float(total)


def _ml_series(alpha: float, beta: float, order: float, z: float, ctrl: SeriesControl) -> float:
    return _sum_series(
        lambda p: _ml_coef(alpha, beta, order, p),
        lambda p: _ml_log_coef(alpha, beta, order, p),
        lambda p, dps: _ml_coef_mp(alpha, beta, order, p, dps),
        z,
        ctrl,
    )


def _vectorized(func):
    """Map a scalar function over its last required argument, which may be an array."""
    required = [
        q.name for q in inspect.signature(func).parameters.values() if q.default is inspect.Parameter.empty
    ]
    pos, name = len(required) - 1, required[-1]

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        args = list(args)
        if len(args) > pos:
            x = args.pop(pos)
        else:
            x = kwargs.pop(name)
        head = args[:pos]
        tail = args[pos:]

        def call(xi: float) -> float:
            return func(*head, xi, *tail, **kwargs)

        if np.ndim(x) == 0:
            return call(float(x))
        xs = np.asarray(x, dtype=float)
        out = np.empty(xs.shape)
        for idx, xi in np.ndenumerate(xs):
            out[idx] = call(float(xi))
        return out

    return wrapper


def _check_z(z: float) -> None:
    if not abs(z) <= Z_MAX:
        raise DomainError(f"|z| = {abs(z)} exceeds Z_MAX = {Z_MAX}")


# ---------------------------------------------------------------------------
# Mittag-Leffler family


@_vectorized
def mittag_leffler(alpha: float, beta: float, z: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Two-parameter Mittag-Leffler function ``sum_k z^k / Gamma(alpha k + beta)``.

    Parameters
    ----------
    alpha, beta : float
        Positive parameters. ``beta = 1`` gives the one-parameter function.
    z : float or array_like
        Real argument with ``|z| <= Z_MAX``.
    ctrl : SeriesControl, optional
        Truncation policy.
    """
    MLParams(alpha, beta)
    _check_z(z)
    return _ml_series(float(alpha), float(beta), 0.0, z, ctrl)


@_vectorized
def ml_derivative(
    alpha: float,
    beta: float,
    order: float,
    z: float,
    ctrl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """Term-wise ``order``-th derivative in ``z`` of ``E_{alpha,beta}(z)``.

    ``sum_p Gamma(p+order+1)/Gamma(p+1) z^p / Gamma(alpha (p+order) + beta)``.
    For integer order this is the ordinary derivative; non-integer orders use
    the same series with generalized factorials.
    """
    MLParams(alpha, beta, order)
    _check_z(z)
    return _ml_series(float(alpha), float(beta), float(order), z, ctrl)


@_vectorized
def ml_deriv_series(alpha: float, m: float, z: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Differentiated one-parameter Mittag-Leffler series of order ``m``.

    ``sum_p (p+m)!/p! z^p / Gamma(alpha p + alpha m + alpha)``, i.e. the
    ``m``-th derivative of ``E_{alpha,alpha}``. At ``alpha = 1`` every
    coefficient reduces to ``1/p!`` and the value is ``exp(z)`` for any ``m``.
    """
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if not m >= 0:
        raise DomainError(f"m must be >= 0, got {m}")
    _check_z(z)
    return _ml_series(float(alpha), float(alpha), float(m), z, ctrl)


def _trig_arg(alpha: float, x: float) -> float:
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if x < 0 and alpha != 1:
        raise DomainError("negative x is only defined for alpha = 1")
    xa = abs(x) ** alpha
    _check_z(xa)
    return xa


@_vectorized
def frac_cos(alpha: float, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Fractional cosine ``cos_alpha(x^alpha) = sum_k (-1)^k x^(2 k alpha) / Gamma(1 + 2 alpha k)``."""
    xa = _trig_arg(alpha, x)
    return _ml_series(2.0 * alpha, 1.0, 0.0, -xa * xa, ctrl)


@_vectorized
def frac_sin(alpha: float, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Fractional sine ``sin_alpha(x^alpha) = sum_k (-1)^k x^((2k+1) alpha) / Gamma(1 + (2k+1) alpha)``."""
    xa = _trig_arg(alpha, x)
    if xa == 0.0:
        return 0.0
    s = _ml_series(2.0 * alpha, 1.0 + alpha, 0.0, -xa * xa, ctrl)
    return math.copysign(xa, x) * s


# ---------------------------------------------------------------------------
# terminating confluent hypergeometric sum


@_vectorized
def hyp1f1_frac(n: int, gamma_a: float, y: float) -> float:
    """Terminating ``1F1(-n; gamma_a; y)`` as an (n+1)-term alternating sum.

    ``sum_j C(n, j) (-1)^j Gamma(gamma_a)/Gamma(gamma_a + j) y^j`` with the
    gamma ratio built as a running product ``1 / (gamma_a)_j``. Sums that
    cancel more than ``max_cancellation`` are redone in mpmath.
    """
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    n = int(n)
    for j in range(n + 1):
        if _near_pole(gamma_a + j):
            raise PoleError(f"gamma pole at gamma_a + {j} = {gamma_a + j!r}")
    acc = _Neumaier()
    term = 1.0
    acc.add(term)
    abs_sum = 1.0
    for j in range(1, n + 1):
        # ratio of consecutive terms: -(n-j+1)/j * y / (gamma_a + j - 1)
        term *= -(n - j + 1) / j * y / (gamma_a + j - 1)
        acc.add(term)
        abs_sum += abs(term)
    value = acc.value
    if abs_sum <= DEFAULT_CONTROL.max_cancellation * abs(value):
        return value
    # the rounding of each term is amplified by the cancellation
    with mpmath.workdps(_required_dps(abs_sum, value)):
        g = mpmath.mpf(gamma_a)
        yy = mpmath.mpf(y)
        t = mpmath.mpf(1)
        total = mpmath.mpf(1)
        for j in range(1, n + 1):
            t *= -(n - j + 1) * yy / (j * (g + j - 1))
            total += t
        return float(total)
