"""Scalar special functions underlying every closed form.

All functions accept arbitrary finite complex numbers and are total except on
genuine singular sets, where :class:`DegenerateInputError` is raised.

The two-exponential kernel ``f`` has removable singularities on the lines
``u = 0``, ``v = 0`` and ``u = v``.  Close to them it is evaluated through the
exact rewrite

    f(u, v) = -a[u, v] / b[u, v],   a(x) = (1 - e^{-x}) / x,  b(x) = 1 - e^{-x}

where ``[u, v]`` denotes a divided difference.  Both divided differences are
entire in ``(u, v)`` and are computed by Taylor expansion about the midpoint,
so the fallback is accurate uniformly along each singular line.
"""

import cmath
import math

from .errors import DegenerateInputError, InvalidArgumentError

# Switch to the series path when min(|u|, |v|, |u - v|) is below this.
FALLBACK_RADIUS = 1e-5
# Relative size of |e^u - e^v| below which u - v is treated as 2*pi*i*k, k != 0.
SINGULAR_TOL = 1e-13

_SERIES_RADIUS = 0.5
_SERIES_TERMS = 26
_DIVDIFF_RADIUS = 1e-2
_DIVDIFF_ORDER = 9  # highest odd derivative kept in the midpoint expansion
_MOMENT_SERIES_RADIUS = 4.0


def as_cscalar(x, name="value"):
    """Coerce ``x`` to a finite Python complex or raise InvalidArgumentError."""
    try:
        z = complex(x)
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"{name} is not a complex number: {x!r}") from exc
    if not cmath.isfinite(z):
        raise InvalidArgumentError(f"{name} is not finite: {x!r}")
    return z


def _finite_or_raise(z, what):
    if not cmath.isfinite(z):
        raise InvalidArgumentError(f"{what} overflowed for the given arguments")
    return z


def exp_ratio(x):
    """Return ``(1 - exp(-x)) / x`` with the removable value 1 at ``x = 0``."""
    x = as_cscalar(x, "x")
    return _exp_ratio(x)


def _exp_ratio(x):
    if abs(x) < _SERIES_RADIUS:
        total = 0j
        term = 1 + 0j
        for k in range(_SERIES_TERMS):
            total += term / math.factorial(k + 1)
            term *= -x
        return total
    return (1 - cmath.exp(-x)) / x


def _moment(j, m):
    """Return J_j(m) = integral_0^1 t^j exp(-m t) dt."""
    if abs(m) < _MOMENT_SERIES_RADIUS:
        total = 0j
        term = 1 + 0j  # (-m)^i / i!
        i = 0
        while True:
            contrib = term / (i + j + 1)
            total += contrib
            if i > 4 and abs(contrib) < 1e-18 * max(abs(total), 1e-300):
                return total
            i += 1
            term *= -m / i
            if i > 200:
                return total
    value = _exp_ratio(m)
    em = cmath.exp(-m)
    for k in range(1, j + 1):
        value = (k * value - em) / m
    return value


def _divdiff_exp_ratio(u, v):
    """Divided difference (a(v) - a(u)) / (v - u) of a(x) = (1 - e^{-x})/x."""
    h = v - u
    if abs(h) >= _DIVDIFF_RADIUS:
        return (_exp_ratio(v) - _exp_ratio(u)) / h
    mid = 0.5 * (u + v)
    delta = 0.5 * h
    total = 0j
    # a^(k)(mid) = (-1)^k J_k(mid); only odd k survive the symmetric difference
    for k in range(1, _DIVDIFF_ORDER + 1, 2):
        total += -_moment(k, mid) * delta ** (k - 1) / math.factorial(k)
    return total


def _sinhc(x):
    """sinh(x) / x with the removable value 1 at the origin."""
    if abs(x) < 1e-2:
        x2 = x * x
        return 1 + x2 / 6 * (1 + x2 / 20 * (1 + x2 / 42 * (1 + x2 / 72)))
    return cmath.sinh(x) / x


def f_kernel(u, v):
    """Evaluate the symmetric two-exponential kernel.

    ``f(u, v) = ((u - v) e^{u+v} - (u e^u - v e^v)) / (u v (e^u - e^v))``

    so that ``exp(X) exp(Y) = exp(X + Y + f(u, v) [X, Y])`` whenever
    ``[X, Y] = u X + v Y + c I``.

    Raises:
        InvalidArgumentError: non-finite input.
        DegenerateInputError: ``e^u = e^v`` with ``u != v`` (a pole).
    """
    u = as_cscalar(u, "u")
    v = as_cscalar(v, "v")
    h = v - u
    # b[u, v] = exp(-(u + v)/2) * sinhc((v - u)/2) vanishes only on the pole set
    if abs(h) > 1.0 and abs(cmath.sinh(0.5 * h)) < SINGULAR_TOL * max(1.0, abs(cmath.cosh(0.5 * h))):
        raise DegenerateInputError(
            f"f(u, v) has a pole: exp(u) == exp(v) with u - v = {-h!r}"
        )
    if min(abs(u), abs(v), abs(h)) < FALLBACK_RADIUS:
        return _finite_or_raise(_f_series(u, v), "f(u, v)")
    eu = cmath.exp(u)
    ev = cmath.exp(v)
    num = (u - v) * cmath.exp(u + v) - (u * eu - v * ev)
    den = u * v * (eu - ev)
    return _finite_or_raise(num / den, "f(u, v)")


def _f_series(u, v):
    a_dd = _divdiff_exp_ratio(u, v)
    b_dd = cmath.exp(-0.5 * (u + v)) * _sinhc(0.5 * (v - u))
    return -a_dd / b_dd


def f_limit(u):
    """Value of ``f`` on the diagonal ``u = v``: ``-a'(u) e^u``."""
    u = as_cscalar(u, "u")
    return _finite_or_raise(_moment(1, u) * cmath.exp(u), "f(u, u)")


def s_kernel(a):
    """Return ``sinh(a/2) / (a/2)``, equal to 1 at ``a = 0``."""
    a = as_cscalar(a, "a")
    return _finite_or_raise(_sinhc(0.5 * a), "s(a)")


def ghl_coeffs(alpha, u, v):
    """Return the splitting coefficients ``(g, h, l)``.

    With ``F = f(alpha*u, v)``::

        g = 1 + alpha*u*F,   h = alpha*(1 + v*F),   l = alpha*F

    so that ``log(e^X e^{alpha Y}) = g X + h Y + l c I`` for
    ``[X, Y] = u X + v Y + c I``.
    """
    alpha = as_cscalar(alpha, "alpha")
    u = as_cscalar(u, "u")
    v = as_cscalar(v, "v")
    if alpha == 0:
        return 1 + 0j, 0j, 0j
    F = f_kernel(alpha * u, v)
    return 1 + alpha * u * F, alpha * (1 + v * F), alpha * F
