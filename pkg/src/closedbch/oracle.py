"""Independent verification of closed forms.

Two oracles that share no code with the closed forms:

* dense matrix exponentials in a faithful representation
  (:func:`verify_product`), and
* the truncated BCH series summed inside a bracket-closed coefficient space
  (:func:`dynkin_bch`), for abstract algebras with no representation.
"""

import math
import warnings
from fractions import Fraction

import numpy as np
import scipy.linalg

from .algebra import Algebra, Generator
from .errors import DimensionError, DivergenceWarning, InvalidArgumentError, MatrixBranchError

MAX_DIM = 16
DEFAULT_ORDER = 16
MAX_ORDER = 20

_TAYLOR_TERMS = 20
_SCALED_NORM = 0.25


def _as_square(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise DimensionError(f"dimension {m.shape[0]} exceeds {MAX_DIM}")
    if not np.all(np.isfinite(m)):
        raise InvalidArgumentError("matrix has non-finite entries")
    return m


def mat_exp(m):
    """Matrix exponential by scaling and squaring around a Taylor core."""
    m = _as_square(m)
    norm = np.linalg.norm(m, 1)
    s = max(0, int(math.ceil(math.log2(norm / _SCALED_NORM)))) if norm > 0 else 0
    a = m / 2.0**s
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, _TAYLOR_TERMS + 1):
        term = term @ a / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def mat_log(m, tol=1e-12):
    """Principal matrix logarithm.

    Raises:
        MatrixBranchError: an eigenvalue lies on the closed negative real axis.
    """
    m = _as_square(m)
    ev = np.linalg.eigvals(m)
    scale = max(1.0, float(np.max(np.abs(ev))))
    for lam in ev:
        if abs(lam) <= tol * scale or (lam.real < 0 and abs(lam.imag) <= tol * scale):
            raise MatrixBranchError(f"eigenvalue {lam:.6g} blocks the principal logarithm")
    return np.asarray(scipy.linalg.logm(m), dtype=complex)


def product_matrix(factors, algebra):
    d = algebra.matrices.shape[1]
    P = np.eye(d, dtype=complex)
    for f in factors:
        P = P @ mat_exp(algebra.represent(f))
    return P


def verify_product(factors, w, algebra):
    """Relative Frobenius residual ``|prod exp(rep f) - exp(rep w)| / |prod|``."""
    if not algebra.has_representation:
        raise InvalidArgumentError(f"algebra {algebra.name} has no representation; use verify_dynkin")
    P = product_matrix(factors, algebra)
    E = mat_exp(algebra.represent(w))
    return float(np.linalg.norm(P - E) / np.linalg.norm(P))


def log_coefficients(factors, algebra):
    """Coefficients of the principal log of the product, projected on the basis."""
    L = mat_log(product_matrix(factors, algebra))
    d = algebra.matrices.shape[1]
    B = np.concatenate([algebra.matrices.reshape(algebra.dim, -1), np.eye(d).reshape(1, -1)]).T
    x, *_ = np.linalg.lstsq(B, L.ravel(), rcond=None)
    return algebra.from_vector(x), float(np.linalg.norm(B @ x - L.ravel()))


# -- abstract closures -------------------------------------------------------


def abstract_closure(params):
    """Bracket-closed algebra spanned by ``X, Y, (Z)`` and the central ``I``.

    ``params`` is a PairParams (basis X, Y) or TripleParams (basis X, Y, Z).
    """
    names = ("X", "Y", "Z") if hasattr(params, "m") else ("X", "Y")
    n = len(names)
    C = np.zeros((n, n, n), dtype=complex)
    Zc = np.zeros((n, n), dtype=complex)

    def put(i, j, coeffs, central):
        C[i, j] = coeffs
        C[j, i] = -np.asarray(coeffs)
        Zc[i, j] = central
        Zc[j, i] = -central

    if n == 2:
        put(0, 1, [params.u, params.v], params.c)
    else:
        put(0, 1, [params.u, params.v, 0], params.c)
        put(1, 2, [0, params.w, params.z], params.d)
        put(0, 2, [params.m, params.n, params.p], params.e)
    gens = [Generator(x, "abstract") for x in names]
    return Algebra("closure", gens, C, central=Zc)


def jacobi_defect(algebra):
    """Max |[a,[b,c]] + [b,[c,a]] + [c,[a,b]]| over basis triples."""
    n = algebra.dim
    eye = np.eye(n + 1, dtype=complex)
    br = algebra.bracket_vectors
    worst = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = eye[i], eye[j], eye[k]
                s = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
                worst = max(worst, float(np.max(np.abs(s))))
    return worst


def _bernoulli(n):
    """Bernoulli numbers B_0..B_n (B_1 = -1/2)."""
    B = [Fraction(0)] * (n + 1)
    B[0] = Fraction(1)
    for m in range(1, n + 1):
        B[m] = -sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1)
    return B


def bch_components(a, b, bracket, order):
    """Homogeneous BCH components ``Z_1 .. Z_order`` of ``log(e^a e^b)``.

    Uses the recursion

        (n+1) Z_{n+1} = 1/2 [a - b, Z_n]
            + sum_{p>=1, 2p<=n} B_{2p}/(2p)! sum_{k_1+..+k_2p = n}
                  [Z_k1, [Z_k2, ..., [Z_k2p, a + b]...]]

    which reproduces the nested-commutator series degree by degree.
    """
    B = _bernoulli(order)
    Z = [None, a + b]
    diff = a - b
    for n in range(1, order):
        nxt = 0.5 * bracket(diff, Z[n])
        # S[j][m]: sum over compositions of m into j parts of nested brackets
        S = {0: {0: a + b}}
        for j in range(1, n + 1):
            S[j] = {}
            for m in range(j, n + 1):
                acc = None
                for k in range(1, m - j + 2):
                    prev = S[j - 1].get(m - k)
                    if prev is None:
                        continue
                    t = bracket(Z[k], prev)
                    acc = t if acc is None else acc + t
                if acc is not None:
                    S[j][m] = acc
        for p in range(1, n // 2 + 1):
            coef = float(B[2 * p] / math.factorial(2 * p))
            term = S[2 * p].get(n)
            if term is not None:
                nxt = nxt + coef * term
        Z.append(nxt / (n + 1))
    return Z[1:]


def dynkin_bch(a, b, closure, order=DEFAULT_ORDER, warn=True):
    """Truncated BCH series ``log(e^a e^b)`` up to total degree ``order``.

    ``a`` and ``b`` are coefficient vectors of length ``closure.dim + 1``
    (last entry: central).  A DivergenceWarning is emitted when, beyond
    degree 6, a term is larger than both of its two predecessors.
    """
    if not 1 <= order <= MAX_ORDER:
        raise InvalidArgumentError(f"order must be in [1, {MAX_ORDER}]")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    comps = bch_components(a, b, closure.bracket_vectors, order)
    if warn:
        norms = [float(np.linalg.norm(c)) for c in comps]
        floor = 1e-14 * max(1.0, norms[0])
        for k in range(6, len(norms)):
            # odd and even degrees decay at different rates; compare to both
            prev = max(norms[k - 1], norms[k - 2])
            if norms[k] > prev and norms[k] > floor:
                warnings.warn(
                    f"BCH term of degree {k + 1} grew ({prev:.2e} -> {norms[k]:.2e})",
                    DivergenceWarning,
                    stacklevel=2,
                )
                break
    return np.sum(comps, axis=0)


def verify_dynkin(factors, w, algebra, order=DEFAULT_ORDER):
    """Coefficient-space residual of ``w`` against the iterated BCH series."""
    vecs = [algebra.to_vector(f) for f in factors]
    acc = vecs[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DivergenceWarning)
        for v in vecs[1:]:
            acc = dynkin_bch(acc, v, algebra, order)
    ref = np.linalg.norm(acc)
    return float(np.linalg.norm(acc - algebra.to_vector(w)) / max(ref, 1e-300))
