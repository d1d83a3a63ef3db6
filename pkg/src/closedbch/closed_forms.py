"""Named closed forms for products of Cartan-Weyl generators.

Notation: ``k(a, b) = (a^v, b)`` is the coroot pairing, ``H^a`` and ``E^b``
are the catalog elements returned by ``algebra.cartan`` and ``algebra.step``.
Every function returns a :class:`BCHResult`; pass ``verify=True`` to attach
the matrix-oracle residual.
"""

import cmath

import numpy as np

from .algebra import Root
from .errors import (
    CoincidentRootError,
    DegenerateInputError,
    InvalidArgumentError,
    NoSplitSolutionError,
    UnsupportedRootStringError,
)
from .kernel import SINGULAR_TOL, as_cscalar, exp_ratio
from .results import BCHResult, with_residual

COINCIDENT_TOL = 1e-12


def _root(r):
    return r if isinstance(r, Root) else Root(r)


def _finish(result, algebra, verify):
    return with_residual(result, algebra) if verify else result


def _inv_exp_ratio(x, what):
    a = exp_ratio(x)
    # 1 - e^{-x} at a nonzero multiple of 2 pi i is pure rounding noise
    if abs(x) > 1 and abs(a * x) < SINGULAR_TOL * max(1.0, abs(cmath.exp(-x))):
        raise DegenerateInputError(f"{what}: 1 - exp(-x) vanishes at x = {x!r}")
    return 1 / a


def he_pair(lam, alpha, mu, beta, algebra, verify=False):
    """``exp(lam H^alpha) exp(mu E^beta)``.

    ``W = lam H^alpha + mu x / (1 - e^{-x}) E^beta`` with ``x = lam k(alpha, beta)``.
    """
    lam, mu = as_cscalar(lam, "lambda"), as_cscalar(mu, "mu")
    alpha, beta = _root(alpha), _root(beta)
    k = algebra.coroot_pairing(alpha, beta)
    coef = mu * _inv_exp_ratio(lam * k, "he_pair")
    w = algebra.cartan(alpha, lam) + algebra.step(beta, coef)
    factors = (algebra.cartan(alpha, lam), algebra.step(beta, mu))
    return _finish(BCHResult(w, factors, method="he_pair", details={"coefficient": coef}), algebra, verify)


def heh_triple(lam_a, alpha, mu, beta, lam_g, gamma, algebra, verify=False):
    """``exp(lam_a H^alpha) exp(mu E^beta) exp(lam_g H^gamma)``.

    The Cartan parts pass through; ``E^beta`` picks up
    ``mu t / (e^{lam_g k_g} - e^{-lam_a k_a})`` with ``t = lam_a k_a + lam_g k_g``.

    Raises:
        DegenerateInputError: the denominator vanishes with ``t != 0``.
    """
    lam_a, mu, lam_g = (as_cscalar(x, n) for x, n in ((lam_a, "lambda_alpha"), (mu, "mu"), (lam_g, "lambda_gamma")))
    alpha, beta, gamma = _root(alpha), _root(beta), _root(gamma)
    ka = algebra.coroot_pairing(alpha, beta)
    kg = algebra.coroot_pairing(gamma, beta)
    t = lam_a * ka + lam_g * kg
    # t / (e^{lam_g kg} - e^{-lam_a ka}) = e^{lam_a ka} / a(-t)
    coef = mu * cmath.exp(lam_a * ka) * _inv_exp_ratio(-t, "heh_triple")
    ha, hg = algebra.cartan(alpha, lam_a), algebra.cartan(gamma, lam_g)
    w = ha + hg + algebra.step(beta, coef)
    factors = (ha, algebra.step(beta, mu), hg)
    return _finish(BCHResult(w, factors, method="heh_triple", details={"coefficient": coef}), algebra, verify)


def _excluded_strings(alpha, beta, algebra):
    bad = []
    for a, b in ((2, 3), (3, 2), (3, 1), (1, 3)):
        r = alpha * a + beta * b
        if algebra.is_root(r):
            bad.append(f"{a}a+{b}b")
    return bad


def ee_pair(mu_a, alpha, mu_b, beta, algebra, verify=False):
    """``exp(mu_a E^alpha) exp(mu_b E^beta)`` for ``alpha + beta`` in the root system.

    The series terminates: besides ``1/2 [X, Y]`` only one of the two
    third-order terms can survive, on ``E^{2a+b}`` or on ``E^{a+2b}``.
    If ``alpha + beta`` is not a root (and not zero) the factors commute.

    Raises:
        InvalidArgumentError: ``beta = -alpha`` (use :func:`epm_sandwich`).
        UnsupportedRootStringError: a root string too long for this formula.
    """
    mu_a, mu_b = as_cscalar(mu_a, "mu_alpha"), as_cscalar(mu_b, "mu_beta")
    alpha, beta = _root(alpha), _root(beta)
    for r in (alpha, beta):
        if not algebra.is_root(r):
            raise InvalidArgumentError(f"{r} is not a root of {algebra.name}")
    s = alpha + beta
    if s.is_zero():
        raise InvalidArgumentError("beta = -alpha; the pair is an E+/E- product, see epm_sandwich")
    xa, xb = algebra.step(alpha, mu_a), algebra.step(beta, mu_b)
    if not algebra.is_root(s):
        return _finish(BCHResult(xa + xb, (xa, xb), method="ee_pair/commuting"), algebra, verify)
    bad = _excluded_strings(alpha, beta, algebra)
    if bad:
        raise UnsupportedRootStringError(f"root strings {bad} are outside the supported lengths")
    e_ab = algebra.structure_constant(alpha, beta)
    w = xa + xb + algebra.step(s, 0.5 * mu_a * mu_b * e_ab)
    details = {"e_ab": e_ab}
    if algebra.is_root(alpha + s):
        c = mu_a**2 * mu_b * algebra.structure_constant(alpha, s) * e_ab / 12
        w = w + algebra.step(alpha + s, c)
        method = "ee_pair/2a+b"
    elif algebra.is_root(beta + s):
        c = mu_a * mu_b**2 * algebra.structure_constant(beta, s) * algebra.structure_constant(beta, alpha) / 12
        w = w + algebra.step(beta + s, c)
        method = "ee_pair/a+2b"
    else:
        method = "ee_pair/a+b"
    return _finish(BCHResult(w, (xa, xb), method=method, details=details), algebra, verify)


def sandwich_roots(mu_a, lam, mu_neg):
    """``(r_plus, r_minus, lam_plus, lam_minus)`` with ``r = e^{-lam}``.

    ``r`` solves ``r^2 - (1 + e^{2 lam} + mu_a mu_neg) r + e^{2 lam} = 0``;
    ``lam_minus = -Log r_minus`` (principal) and ``lam_plus = -2 lam - lam_minus``.
    """
    q = cmath.exp(2 * lam)
    B = 1 + q + mu_a * mu_neg
    root = cmath.sqrt(B * B - 4 * q)
    r_p, r_m = (B + root) / 2, (B - root) / 2
    if abs(r_p - r_m) <= COINCIDENT_TOL * max(1.0, abs(r_p)):
        raise CoincidentRootError(f"the two roots coincide (discriminant {B * B - 4 * q:.3e})")
    lam_m = -cmath.log(r_m)
    lam_p = -2 * lam - lam_m
    return r_p, r_m, lam_p, lam_m


def epm_sandwich(mu_a, lam, mu_neg, alpha, algebra, verify=False):
    """``exp(mu_a E^alpha) exp(lam H^alpha) exp(mu_neg E^-alpha)``.

    ``W = (lam_p - lam_m) / (r_m - r_p) [mu_a E^alpha + (r_p + r_m - 2)/2 H^alpha + mu_neg E^-alpha]``
    with the roots of :func:`sandwich_roots`.  ``lam = 0`` gives the plain
    ``E^alpha E^-alpha`` product.

    Raises:
        CoincidentRootError: degenerate discriminant.
    """
    mu_a, lam, mu_neg = (as_cscalar(x, n) for x, n in ((mu_a, "mu_alpha"), (lam, "lambda"), (mu_neg, "mu_neg")))
    alpha = _root(alpha)
    r_p, r_m, lam_p, lam_m = sandwich_roots(mu_a, lam, mu_neg)
    pre = (lam_p - lam_m) / (r_m - r_p)
    w = (
        algebra.step(alpha, pre * mu_a)
        + algebra.cartan(alpha, pre * 0.5 * (r_p + r_m - 2))
        + algebra.step(-alpha, pre * mu_neg)
    )
    factors = (algebra.step(alpha, mu_a), algebra.cartan(alpha, lam), algebra.step(-alpha, mu_neg))
    details = {"r_plus": r_p, "r_minus": r_m, "lambda_plus": lam_p, "lambda_minus": lam_m, "prefactor": pre}
    return _finish(BCHResult(w, factors, method="epm_sandwich", details=details), algebra, verify)


def sl2_triple(l_m1, l_0, l_1, algebra, verify=False):
    """``exp(l_m1 L_-1) exp(l_0 L_0) exp(l_1 L_1)`` in sl2.

    ``L_-1 = -E+``, ``L_0 = -H/2``, ``L_1 = E-`` satisfy
    ``[L_m, L_n] = (m - n) L_{m+n}``.  The result is expressed in the
    ``H, E+, E-`` basis of the catalog algebra.
    """
    res = epm_sandwich(-as_cscalar(l_m1), -as_cscalar(l_0) / 2, l_1, (1,), algebra, verify=verify)
    return BCHResult(
        res.w,
        res.factors,
        oracle_residual=res.oracle_residual,
        oracle=res.oracle,
        method="sl2_triple",
        details=res.details,
    )


def _check_ehe(alpha, beta, gamma, algebra):
    if (alpha + gamma).is_zero():
        raise InvalidArgumentError("gamma = -alpha is not allowed")
    if algebra.is_root(alpha + gamma):
        raise InvalidArgumentError(f"{alpha} + {gamma} is a root; E^alpha and E^gamma do not commute")
    ka = algebra.coroot_pairing(beta, alpha)
    kg = algebra.coroot_pairing(beta, gamma)
    if ka == 0 or kg == 0:
        raise InvalidArgumentError("(beta^v, alpha) and (beta^v, gamma) must both be non-zero")
    return ka, kg


def ehe_type5(mu_a, alpha, lam, beta, mu_g, gamma, algebra, verify=False):
    """``exp(mu_a E^alpha) exp(lam H^beta) exp(mu_g E^gamma)`` with commuting step factors.

    ``W = lam H^beta - lam mu_a k_a / (1 - e^{lam k_a}) E^alpha
    + lam mu_g k_g / (1 - e^{-lam k_g}) E^gamma`` where ``k = (beta^v, .)``.
    """
    mu_a, lam, mu_g = (as_cscalar(x, n) for x, n in ((mu_a, "mu_alpha"), (lam, "lambda"), (mu_g, "mu_gamma")))
    alpha, beta, gamma = _root(alpha), _root(beta), _root(gamma)
    ka, kg = _check_ehe(alpha, beta, gamma, algebra)
    # -x / (1 - e^{x}) = 1 / a(-x),  x / (1 - e^{-x}) = 1 / a(x)
    ca = mu_a * _inv_exp_ratio(-lam * ka, "ehe_type5")
    cg = mu_g * _inv_exp_ratio(lam * kg, "ehe_type5")
    w = algebra.cartan(beta, lam) + algebra.step(alpha, ca) + algebra.step(gamma, cg)
    factors = (algebra.step(alpha, mu_a), algebra.cartan(beta, lam), algebra.step(gamma, mu_g))
    details = {"coefficient_alpha": ca, "coefficient_gamma": cg}
    return _finish(BCHResult(w, factors, method="ehe_type5", details=details), algebra, verify)


def ehe_split(mu_a, alpha, lam, beta, mu_g, gamma, algebra, verify=False):
    """Split-exponent variant of the E-H-E product.

    Solves ``mu_g k_g (1 - e^{lm k_a}) + mu_a k_a (1 - e^{-lp k_g}) = 0`` with
    ``lm + lp = lam`` and returns
    ``lam H^beta - lm mu_a k_a / (1 - e^{lm k_a}) E^alpha + lp mu_g k_g / (1 - e^{-lp k_g}) E^gamma``.

    This expression reproduces the product only when ``k_a = k_g``; for other
    root pairs the residual in ``details`` shows the mismatch, which is why
    :func:`ehe_type5` is the supported entry point.

    Raises:
        NoSplitSolutionError: the scalar condition has no usable root.
    """
    mu_a, lam, mu_g = (as_cscalar(x, n) for x, n in ((mu_a, "mu_alpha"), (lam, "lambda"), (mu_g, "mu_gamma")))
    alpha, beta, gamma = _root(alpha), _root(beta), _root(gamma)
    ka, kg = _check_ehe(alpha, beta, gamma, algebra)
    # polynomial in t = e^{lm}: A (1 - t^ka) + C (1 - q t^kg) with q = e^{-lam kg}
    A, C, q = mu_g * kg, mu_a * ka, cmath.exp(-lam * kg)
    shift = max(0, -min(ka, kg, 0))
    deg = max(ka, kg, 0) + shift
    coeffs = np.zeros(deg + 1, dtype=complex)
    coeffs[deg - shift] += A + C
    coeffs[deg - (ka + shift)] -= A
    coeffs[deg - (kg + shift)] -= C * q
    roots = np.roots(np.trim_zeros(coeffs, "f")) if np.any(coeffs) else np.array([])
    cands = []
    for t in roots:
        if abs(t) < 1e-300:
            continue
        lm = cmath.log(t)
        lp = lam - lm
        try:
            ca = mu_a * _inv_exp_ratio(-lm * ka, "ehe_split")
            cg = mu_g * _inv_exp_ratio(lp * kg, "ehe_split")
        except DegenerateInputError:
            continue
        cands.append((abs(lm - lam / 2), lm, lp, ca, cg))
    if not cands:
        raise NoSplitSolutionError("the split condition has no usable root on the principal branch")
    _, lm, lp, ca, cg = min(cands, key=lambda c: c[0])
    w = algebra.cartan(beta, lam) + algebra.step(alpha, ca) + algebra.step(gamma, cg)
    factors = (algebra.step(alpha, mu_a), algebra.cartan(beta, lam), algebra.step(gamma, mu_g))
    details = {"lambda_minus": lm, "lambda_plus": lp}
    return _finish(BCHResult(w, factors, method="ehe_split", details=details), algebra, verify)


def _single(elem, algebra):
    """``(generator, coefficient)`` if ``elem`` is a multiple of one generator."""
    if elem.central != 0 or len(elem.coeffs) != 1:
        return None
    (name, coef), = elem.coeffs.items()
    return algebra.generator(name), coef


def cartan_weyl_pair(x, y, algebra, verify=False):
    """Dispatch a product of two single-generator elements to its closed form.

    Returns None when the pair is not a recognised Cartan-Weyl pattern.
    """
    sx, sy = _single(x, algebra), _single(y, algebra)
    if sx is None or sy is None:
        return None
    (gx, cx), (gy, cy) = sx, sy
    if gx.kind == "step" and gy.kind == "step":
        if (gx.root + gy.root).is_zero():
            res = epm_sandwich(cx, 0, cy, gx.root, algebra)
            out = BCHResult(res.w, (x, y), method="epm_sandwich/pair", details=res.details)
            return _finish(out, algebra, verify)
        return ee_pair(cx, gx.root, cy, gy.root, algebra, verify=verify)
    return None
