"""Result containers shared by the engine and the named closed forms."""

import warnings
from dataclasses import dataclass, field, replace

from .errors import DivergenceWarning
from .oracle import verify_dynkin, verify_product

# Residual thresholds of the two oracles.
GENERIC_TOL = 1e-8
EXACT_TOL = 1e-10


@dataclass(frozen=True)
class AlphaSolution:
    """A splitting weight ``alpha`` with ``beta = 1 - alpha``.

    ``branch`` labels where the value came from (``"v/u"``, ``"1-w/z"``,
    ``"plus"``/``"minus"`` for the two quadratic roots, ``"box"``).  For the
    quadratic case ``quadratic_b`` and ``x_u`` record ``b`` and ``e^{alpha u}``.
    """

    alpha: complex
    beta: complex
    branch: str
    weight_residual: float
    quadratic_b: complex = None
    x_u: complex = None


@dataclass(frozen=True)
class TildeParams:
    """``[X~, Y~] = u_t X~ + v_t Y~ + c_t I`` for the reassembled pair."""

    u_t: complex
    v_t: complex
    c_t: complex


@dataclass(frozen=True)
class BCHResult:
    """A closed-form ``W`` plus everything needed to audit it.

    Attributes:
        w: the exponent, a LieElement.
        factors: the exponentiated inputs, in order.
        alpha_used: AlphaSolution for triples, else None.
        tilde: TildeParams for triples, else None.
        params: extracted PairParams/TripleParams when the generic path ran.
        tag: TypeTag of the triple, when classified.
        oracle_residual: relative residual, or None when not verified.
        oracle: ``"matrix"`` or ``"dynkin"`` (which oracle produced the residual).
        method: short label of the formula that produced ``w``.
        alternatives: other accepted branches as ``(AlphaSolution, w, residual)``.
        details: free-form scalars (coefficients, branch logs) for reports.
    """

    w: object
    factors: tuple
    alpha_used: AlphaSolution = None
    tilde: TildeParams = None
    params: object = None
    tag: object = None
    oracle_residual: float = None
    oracle: str = None
    method: str = ""
    alternatives: tuple = ()
    details: dict = field(default_factory=dict)

    def verified(self, tol=GENERIC_TOL):
        return self.oracle_residual is not None and self.oracle_residual < tol


def oracle_residual(factors, w, algebra):
    """Residual from the matrix oracle if available, else the series oracle."""
    if algebra.has_representation:
        return verify_product(factors, w, algebra), "matrix"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DivergenceWarning)
        return verify_dynkin(factors, w, algebra), "dynkin"


def with_residual(result, algebra):
    res, kind = oracle_residual(result.factors, result.w, algebra)
    return replace(result, oracle_residual=res, oracle=kind)
