"""Closed-form BCH for pairs and for triples with a splitting weight.

For a pair with ``[X, Y] = u X + v Y + c I``::

    exp(X) exp(Y) = exp(X + Y + f(u, v) [X, Y])

For a triple the middle factor is split, ``exp(Y) = exp(alpha Y) exp(beta Y)``
with ``alpha + beta = 1``, and the two halves are absorbed into its
neighbours::

    X~ = g_a X + h_a Y + l_a c I        (g, h, l at (alpha; u, v))
    Y~ = h_b Y + g_b Z + l_b d I        (g, h, l at (beta; z, w))

``alpha`` is chosen so that the reassembled pair is again of the two-term
form; then ``W = X~ + Y~ + f(u~, v~) [X~, Y~]``.
"""

import cmath

import numpy as np

from .algebra import CENTRAL, LieElement
from .commutators import DEFAULT_TOL, PairParams, TripleParams, check_jacobi, solve_jacobi
from .errors import (
    BoundaryError,
    DegenerateCaseError,
    DegenerateInputError,
    JacobiError,
    NoBranchError,
    SpanError,
    UnsupportedTypeError,
)
from .kernel import f_kernel, ghl_coeffs, s_kernel
from .results import GENERIC_TOL, AlphaSolution, BCHResult, TildeParams, oracle_residual, with_residual

SPAN_TOL = 1e-10
SPLIT_TOL = 1e-8
REASSEMBLY_TOL = 1e-8


# -- parameter extraction ------------------------------------------------------


def _fit(algebra, target, spanning, what):
    """Least-squares coefficients of ``target`` over ``spanning`` vectors (+I)."""
    n = algebra.dim + 1
    central = np.zeros(n, dtype=complex)
    central[-1] = 1
    B = np.column_stack(list(spanning) + [central])
    x, *_ = np.linalg.lstsq(B, target, rcond=None)
    resid = float(np.linalg.norm(B @ x - target))
    scale = max(1.0, float(np.linalg.norm(target)))
    if resid > SPAN_TOL * scale:
        raise SpanError(
            f"{what} is not in the required span (residual {resid:.2e})",
            component=what,
            residual=resid,
        )
    return x


def extract_pair(x, y, algebra):
    """PairParams with ``[x, y] = u x + v y + c I`` by projection."""
    vx, vy = algebra.to_vector(x), algebra.to_vector(y)
    br = algebra.bracket_vectors(vx, vy)
    u, v, c = _fit(algebra, br, [vx, vy], "[x, y]")
    return PairParams(u, v, c)


def extract_triple(x, y, z, algebra, tol=DEFAULT_TOL):
    """TripleParams for ``x, y, z`` and the Jacobi family they classify into.

    ``[x, z]`` is fitted inside the Jacobi solution family of the first six
    parameters, so the result is consistent by construction when it exists.

    Raises:
        SpanError: a bracket leaves its span.
        JacobiError: no Jacobi-consistent ``(m, n, p, e)`` reproduces ``[x, z]``.
    """
    vx, vy, vz = (algebra.to_vector(t) for t in (x, y, z))
    u, v, c = _fit(algebra, algebra.bracket_vectors(vx, vy), [vx, vy], "[x, y]")
    w, zz, d = _fit(algebra, algebra.bracket_vectors(vy, vz), [vy, vz], "[y, z]")
    bxz = algebra.bracket_vectors(vx, vz)
    # unconstrained span check first, so span failures are reported as such
    _fit(algebra, bxz, [vx, vy, vz], "[x, z]")
    family = solve_jacobi(u, v, c, w, zz, d, tol=tol)
    if family.empty:
        raise JacobiError(
            f"no consistent [x, z] for case {family.tag.subcase}: " + ", ".join(family.tag.constraint_texts)
        )
    origin, dirs = family.affine_basis()
    central = np.zeros(algebra.dim + 1, dtype=complex)
    central[-1] = 1
    B = np.column_stack([vx, vy, vz, central])
    target = bxz - B @ origin
    if dirs.shape[1]:
        t, *_ = np.linalg.lstsq(B @ dirs, target, rcond=None)
        mnpe = origin + dirs @ t
    else:
        mnpe = origin
    resid = float(np.linalg.norm(B @ mnpe - bxz))
    if resid > SPAN_TOL * max(1.0, float(np.linalg.norm(bxz))):
        raise JacobiError(f"[x, z] is not reproduced by any Jacobi-consistent (m, n, p, e) (residual {resid:.2e})")
    params = TripleParams(*family.six, *mnpe)
    ok, res = check_jacobi(params)
    if not ok:
        raise JacobiError(f"extracted parameters violate the Jacobi system (residuals {res})")
    return params, family.tag


# -- pair --------------------------------------------------------------------


def bch_pair(x, y, algebra, verify=False):
    """``W`` with ``exp(x) exp(y) = exp(W)`` when ``[x, y]`` is in span{x, y, I}.

    Raises:
        SpanError: the bracket has a component outside the span.
        DegenerateInputError: ``e^u = e^v`` with ``u != v``.
    """
    params = extract_pair(x, y, algebra)
    br = algebra.commutator(x, y)
    F = f_kernel(params.u, params.v) if not br.is_zero() else 0.5
    w = x + y + F * br
    result = BCHResult(w=w, factors=(x, y), params=params, method="pair", details={"f": F})
    return with_residual(result, algebra) if verify else result


# -- splitting weight --------------------------------------------------------


def split_residual(alpha, params):
    """Absolute residual of the equation fixing the splitting weight."""
    p = params
    ga, ha, _ = ghl_coeffs(alpha, p.u, p.v)
    gb, hb, _ = ghl_coeffs(1 - alpha, p.z, p.w)
    val = ha * (hb * (p.u + p.z) + gb * (p.m - p.w)) + ga * (hb * (p.p - p.v) - gb * p.n)
    return abs(val)


def tilde_params(alpha, params):
    """``(u~, v~, c~)`` and the split coefficients for a given ``alpha``."""
    p = params
    ga, ha, la = ghl_coeffs(alpha, p.u, p.v)
    gb, hb, lb = ghl_coeffs(1 - alpha, p.z, p.w)
    ut = hb * p.u + gb * p.m
    vt = ga * p.p + ha * p.z
    ct = (ga * hb - ut * la) * p.c + (ha * gb - vt * lb) * p.d + ga * gb * p.e
    return TildeParams(ut, vt, ct), (ga, ha, la, gb, hb, lb)


def _alpha_1ci(p):
    if abs(p.m - p.w) == 0 or abs(p.w - p.v) == 0:
        raise DegenerateCaseError("type 1c-i formula divides by m - w or w - v")
    den = (p.m - p.w) * (p.w - p.v) * s_kernel(p.w - p.v)
    if den == 0:
        raise DegenerateCaseError("type 1c-i formula divides by s(w - v) = 0")
    num = p.n * s_kernel(p.v) * p.w * s_kernel(p.w) - cmath.exp(p.w / 2) * p.v * s_kernel(p.v) * (p.m - p.w)
    return [("box", num / den, {})]


def _alpha_type4(p):
    u, v, w = p.u, p.v, p.w
    E = cmath.exp
    b = p.n * u / 2 * s_kernel(v) * s_kernel(w) * E(u + (v - w) / 2) - E(u) - E(v) + E(u + v) - E(u + v - w)
    q = E(u + v - w)
    root = cmath.sqrt(b * b - 4 * q)
    out = []
    for label, x in (("plus", (-b + root) / 2), ("minus", (-b - root) / 2)):
        if x == 0:
            continue
        out.append((label, cmath.log(x) / u, {"quadratic_b": b, "x_u": x}))
    return out


def _alpha_type5(p):
    return [("v/u", p.v / p.u, {}), ("1-w/z", 1 - p.w / p.z, {})]


_SOLVERS = {"1c-i": _alpha_1ci, "4": _alpha_type4, "5": _alpha_type5}


def solve_alpha(params, tag, tol=SPLIT_TOL):
    """All splitting weights for a classified triple that pass the residual gate.

    Raises:
        UnsupportedTypeError: no closed-form solver for ``tag``.
        DegenerateCaseError: the type formula divides by zero.
        NoBranchError: every candidate fails the gate.
    """
    if not tag.consistent or tag.subcase not in _SOLVERS:
        raise UnsupportedTypeError(f"no splitting solver for type {tag.subcase} ({tag.symbol()})")
    sols, rejected = [], []
    for label, alpha, extra in _SOLVERS[tag.subcase](params):
        try:
            res = split_residual(alpha, params)
        except DegenerateInputError:
            rejected.append((label, float("inf")))
            continue
        if res < tol and cmath.isfinite(alpha):
            sols.append(AlphaSolution(alpha, 1 - alpha, label, res, **extra))
        else:
            rejected.append((label, res))
    if not sols:
        raise NoBranchError(f"no splitting weight passes the residual gate: {rejected}")
    return sols


# -- triple ------------------------------------------------------------------


def _assemble(x, y, z, alpha_sol, params, algebra):
    tilde, (ga, ha, la, gb, hb, lb) = tilde_params(alpha_sol.alpha, params)
    I = LieElement.of(CENTRAL)
    xt = ga * x + ha * y + (la * params.c) * I
    yt = hb * y + gb * z + (lb * params.d) * I
    br = algebra.commutator(xt, yt)
    defect = br - (tilde.u_t * xt + tilde.v_t * yt + tilde.c_t * I)
    scale = max(1.0, xt.norm() * yt.norm())
    if defect.norm() > REASSEMBLY_TOL * scale:
        raise SpanError(
            f"reassembled pair violates the two-term condition (defect {defect.norm():.2e})",
            component="[X~, Y~]",
            residual=defect.norm(),
        )
    F = f_kernel(tilde.u_t, tilde.v_t) if not br.is_zero() else 0.5
    return xt + yt + F * br, tilde


def bch_triple(x, y, z, algebra, verify=True, tol=DEFAULT_TOL):
    """``W`` with ``exp(x) exp(y) exp(z) = exp(W)`` for types 1c-i, 4 and 5.

    Every accepted splitting weight is assembled; when several survive, the
    one with the smallest oracle residual is returned (or, with ``verify``
    off, the one with the smallest ``|Im alpha|``), the rest are kept in
    ``alternatives``.
    """
    params, tag = extract_triple(x, y, z, algebra, tol=tol)
    sols = solve_alpha(params, tag)
    built = []
    failures = []
    for sol in sols:
        try:
            w, tilde = _assemble(x, y, z, sol, params, algebra)
        except (SpanError, DegenerateInputError) as exc:
            failures.append((sol.branch, str(exc)))
            continue
        res, kind = oracle_residual((x, y, z), w, algebra) if verify else (None, None)
        built.append((sol, w, tilde, res, kind))
    if not built:
        raise NoBranchError(f"no splitting weight produced a valid reassembly: {failures}")
    if verify:
        built.sort(key=lambda b: b[3])
    else:
        built.sort(key=lambda b: abs(b[0].alpha.imag))
    sol, w, tilde, res, kind = built[0]
    return BCHResult(
        w=w,
        factors=(x, y, z),
        alpha_used=sol,
        tilde=tilde,
        params=params,
        tag=tag,
        oracle_residual=res,
        oracle=kind,
        method=f"triple/{tag.subcase}",
        alternatives=tuple((b[0], b[1], b[3]) for b in built[1:]),
    )


# -- weaker pair condition ---------------------------------------------------


def bch_pair_lemma1(x, z, witness_y, algebra, tol=GENERIC_TOL):
    """Candidate ``W = x + z + f(m, p) [x, z]`` certified only by the oracle.

    The witness must satisfy ``[x, y] in span{x, y, I}``,
    ``[y, z] in span{y, z, I}`` and ``[x, z] in span{x, y, z, I}`` with
    Jacobi-consistent parameters.  The hypotheses alone are not trusted:
    ``details["verified"]`` is True only when the oracle residual is below
    ``tol``.
    """
    params, tag = extract_triple(x, witness_y, z, algebra)
    br = algebra.commutator(x, z)
    F = f_kernel(params.m, params.p) if not br.is_zero() else 0.5
    w = x + z + F * br
    res, kind = oracle_residual((x, z), w, algebra)
    return BCHResult(
        w=w,
        factors=(x, z),
        params=params,
        tag=tag,
        oracle_residual=res,
        oracle=kind,
        method="lemma1",
        details={"f": F, "witness": witness_y, "verified": res < tol},
    )


def find_witness(x, z, algebra):
    """Basis generators (and ``I``) meeting the witness conditions for ``x, z``."""
    found = []
    for name in algebra.basis + (CENTRAL,):
        y = LieElement.of(name)
        try:
            extract_triple(x, y, z, algebra)
        except (SpanError, JacobiError, DegenerateInputError, BoundaryError):
            continue
        found.append(name)
    return found
