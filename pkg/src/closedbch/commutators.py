"""Commutator parameters, the Jacobi linear system and type classification.

A triple ``X, Y, Z`` with

    [X, Y] = u X + v Y + c I
    [Y, Z] = w Y + z Z + d I
    [X, Z] = m X + n Y + p Z + e I

satisfies the Jacobi identity iff ``(m, n, p, e)`` solves

    u w + m z = 0
    v m - w p + n (z - u) = 0
    p u + z v = 0
    c (w + m) + e (z - u) - d (p + v) = 0

The thirteen solution families of this system, indexed by conditions on
``(u, v, c, w, z, d)``, are the commutator-algebra types.
"""

from dataclasses import dataclass, field, fields
from typing import Callable

import numpy as np

from .errors import BoundaryError, InvalidArgumentError
from .kernel import as_cscalar

DEFAULT_TOL = 1e-9
# Values between tol*scale and BAND*tol*scale are too close to call.
BOUNDARY_BAND = 1e3

SIX = ("u", "v", "c", "w", "z", "d")
FOUR = ("m", "n", "p", "e")

# Subcase labels that have a closed-form splitting solver in this package.
SOLVABLE_SUBCASES = ("1c-i", "4", "5")
# Labels taken from the published boxes; every other label is internal naming.
PUBLISHED_SUBCASES = ("1c-i", "4", "5")


@dataclass(frozen=True)
class PairParams:
    """``[X, Y] = u X + v Y + c I``."""

    u: complex = 0j
    v: complex = 0j
    c: complex = 0j

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, as_cscalar(getattr(self, f.name), f.name))

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class TripleParams:
    """The ten commutator parameters of a triple ``X, Y, Z``."""

    u: complex = 0j
    v: complex = 0j
    c: complex = 0j
    w: complex = 0j
    z: complex = 0j
    d: complex = 0j
    m: complex = 0j
    n: complex = 0j
    p: complex = 0j
    e: complex = 0j

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, as_cscalar(getattr(self, f.name), f.name))

    @property
    def six(self):
        return tuple(getattr(self, k) for k in SIX)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def jacobi_consistent(self):
        return check_jacobi(self)[0]


@dataclass(frozen=True)
class Constraint:
    """A relation ``target = expr(six, free)`` fixed by the Jacobi identity.

    ``target`` is one of m, n, p, e for relations fixing a bracket parameter
    of ``[X, Z]``, or one of the six inputs for consistency conditions (such
    as ``v = 0`` in case 2) that the inputs themselves must satisfy.
    """

    target: str
    text: str
    expr: Callable = field(compare=False, repr=False)

    def __call__(self, six, free):
        return complex(self.expr(six, free))


@dataclass(frozen=True)
class TypeTag:
    """Classification of ``(u, v, c, w, z, d)`` by the Jacobi system."""

    case_index: int
    subcase: str
    jacobi_constraints: tuple
    unfixed: tuple
    dimension: int
    consistent: bool = True
    internal_label: bool = False

    @property
    def constraint_texts(self):
        return tuple(c.text for c in self.jacobi_constraints)

    @property
    def solvable(self):
        return self.consistent and self.subcase in SOLVABLE_SUBCASES

    def symbol(self):
        """Compact rendering ``[case | constraints | unfixed]_D``."""
        cons = ", ".join(self.constraint_texts) or "-"
        unf = ", ".join(self.unfixed) or "-"
        return f"[{self.subcase} | {cons} | {unf}]_{self.dimension}"


@dataclass(frozen=True)
class JacobiSolutionFamily:
    """Affine solution set of the Jacobi system in ``(m, n, p, e)``."""

    tag: TypeTag
    six: tuple
    fixed: dict
    free: tuple
    empty: bool = False

    @property
    def dimension(self):
        return None if self.empty else len(self.free)

    def instantiate(self, free_values=None):
        """Return the TripleParams for given values of the free parameters."""
        if self.empty:
            raise InvalidArgumentError(
                f"inputs are Jacobi-inconsistent for case {self.tag.subcase}: "
                + ", ".join(self.tag.constraint_texts)
            )
        free_values = dict(free_values or {})
        unknown = set(free_values) - set(self.free)
        if unknown:
            raise InvalidArgumentError(f"not free in this family: {sorted(unknown)}")
        vals = {k: as_cscalar(free_values.get(k, 0), k) for k in self.free}
        sixd = dict(zip(SIX, self.six))
        for k, cons in self.fixed.items():
            vals[k] = cons(sixd, vals)
        return TripleParams(**sixd, **{k: vals[k] for k in FOUR})

    def affine_basis(self):
        """Return ``(origin, directions)`` with params = origin + directions @ t."""
        base = self.instantiate()
        origin = np.array([getattr(base, k) for k in FOUR])
        dirs = []
        for k in self.free:
            p = self.instantiate({k: 1})
            dirs.append(np.array([getattr(p, q) for q in FOUR]) - origin)
        directions = np.array(dirs, dtype=complex).T.reshape(4, len(dirs))
        return origin, directions


def jacobi_residuals(params):
    """The four left-hand sides of the Jacobi system."""
    u, v, c, w, z, d, m, n, p, e = (getattr(params, k) for k in SIX + FOUR)
    return np.array(
        [
            u * w + m * z,
            v * m - w * p + n * (z - u),
            p * u + z * v,
            c * (w + m) + e * (z - u) - d * (p + v),
        ],
        dtype=complex,
    )


def check_jacobi(params, tol=1e-10):
    """Return ``(passed, residuals)``; residuals are absolute values."""
    res = np.abs(jacobi_residuals(params))
    return bool(np.all(res <= tol)), res


def jacobi_system(u, v, c, w, z, d):
    """Matrix and right-hand side of the Jacobi system in ``(m, n, p, e)``."""
    A = np.array(
        [
            [z, 0, 0, 0],
            [v, z - u, -w, 0],
            [0, 0, u, 0],
            [c, 0, -d, z - u],
        ],
        dtype=complex,
    )
    b = np.array([-u * w, 0, -z * v, d * v - c * w], dtype=complex)
    return A, b


class _Tester:
    """Three-way zero tests with an explicit ambiguity band."""

    def __init__(self, scale, tol):
        self.scale = scale
        self.tol = tol

    def zero(self, x, what, if_zero, if_nonzero):
        a = abs(x)
        lo = self.tol * self.scale
        if a < lo:
            return True
        if a >= BOUNDARY_BAND * lo:
            return False
        raise BoundaryError(
            f"{what} = {a:.3e} is within the ambiguity band [{lo:.1e}, {BOUNDARY_BAND * lo:.1e})",
            candidates=(if_zero, if_nonzero),
        )


def _c(target, text, expr):
    return Constraint(target, text, expr)


def classify(u, v, c, w, z, d, tol=DEFAULT_TOL):
    """Classify ``(u, v, c, w, z, d)`` into one of the thirteen types.

    Equality tests use ``|x| < tol * max(1, max|inputs|)``.  Values that land
    between that threshold and ``BOUNDARY_BAND`` times it raise BoundaryError
    naming both candidate cases.
    """
    return _classify_and_solve(u, v, c, w, z, d, tol)[0]


def solve_jacobi(u, v, c, w, z, d, tol=DEFAULT_TOL):
    """Solve the Jacobi system as an affine family in ``(m, n, p, e)``.

    Inputs that the classifier treats as zero (or as equal to another input)
    are replaced by that exact value in ``family.six``, so every member of
    the family satisfies the system exactly rather than to ``O(tol)``.
    """
    tag, fixed, six = _classify_and_solve(u, v, c, w, z, d, tol)
    return JacobiSolutionFamily(
        tag=tag,
        six=tuple(six[k] for k in SIX),
        fixed=fixed,
        free=tag.unfixed,
        empty=not tag.consistent,
    )


def _classify_and_solve(u, v, c, w, z, d, tol):
    six = {k: as_cscalar(x, k) for x, k in zip((u, v, c, w, z, d), SIX)}
    u, v, c, w, z, d = (six[k] for k in SIX)
    scale = max(1.0, *(abs(x) for x in six.values()))
    t = _Tester(scale, tol)

    def zero(key, what, if_zero, if_nonzero):
        hit = t.zero(six[key], what, if_zero, if_nonzero)
        if hit:
            six[key] = 0j
        return hit

    u0 = zero("u", "|u|", "u=0", "u!=0")
    z0 = zero("z", "|z|", "z=0", "z!=0")

    if u0 and z0:
        tag, fixed = _case1(six, t)
        return tag, fixed, six
    if u0:
        # case 2: u = 0, z != 0; consistency forces v = 0
        v0 = zero("v", "|v| (case 2 consistency)", "2 (consistent)", "2 (inconsistent)")
        w0 = zero("w", "|w|", "2a", "2b")
        fixed = {
            "m": _c("m", "m = 0", lambda s, f: 0),
            "n": _c("n", "n = w p / z", lambda s, f: s["w"] * f["p"] / s["z"]),
            "e": _c("e", "e = (d p - c w) / z", lambda s, f: (s["d"] * f["p"] - s["c"] * s["w"]) / s["z"]),
        }
        cons = [_c("v", "v = 0", lambda s, f: 0)] + list(fixed.values())
        tag = TypeTag(
            case_index=2,
            subcase="2a" if w0 else "2b",
            jacobi_constraints=tuple(cons),
            unfixed=("p",),
            dimension=6 - 2 + 1,
            consistent=v0,
            internal_label=True,
        )
        return tag, fixed, six
    if z0:
        # case 3: u != 0, z = 0; consistency forces w = 0
        w0 = zero("w", "|w| (case 3 consistency)", "3 (consistent)", "3 (inconsistent)")
        v0 = zero("v", "|v|", "3a", "3b")
        fixed = {
            "n": _c("n", "n = v m / u", lambda s, f: s["v"] * f["m"] / s["u"]),
            "p": _c("p", "p = 0", lambda s, f: 0),
            "e": _c("e", "e = (c m - d v) / u", lambda s, f: (s["c"] * f["m"] - s["d"] * s["v"]) / s["u"]),
        }
        cons = [_c("w", "w = 0", lambda s, f: 0)] + list(fixed.values())
        tag = TypeTag(
            case_index=3,
            subcase="3a" if v0 else "3b",
            jacobi_constraints=tuple(cons),
            unfixed=("m",),
            dimension=6 - 2 + 1,
            consistent=w0,
            internal_label=True,
        )
        return tag, fixed, six

    if t.zero(u - z, "|u - z|", "4", "5"):
        six["z"] = six["u"]
        fixed = {
            "m": _c("m", "m = -w", lambda s, f: -s["w"]),
            "p": _c("p", "p = -v", lambda s, f: -s["v"]),
        }
        tag = TypeTag(
            case_index=4,
            subcase="4",
            jacobi_constraints=tuple(fixed.values()),
            unfixed=("e", "n"),
            dimension=8,
        )
        return tag, fixed, six

    fixed = {
        "m": _c("m", "m = -u w / z", lambda s, f: -s["u"] * s["w"] / s["z"]),
        "n": _c("n", "n = -v w (1/u + 1/z)", lambda s, f: -s["v"] * s["w"] * (1 / s["u"] + 1 / s["z"])),
        "p": _c("p", "p = -v z / u", lambda s, f: -s["v"] * s["z"] / s["u"]),
        "e": _c("e", "e = -c w / z - d v / u", lambda s, f: -s["c"] * s["w"] / s["z"] - s["d"] * s["v"] / s["u"]),
    }
    tag = TypeTag(
        case_index=5,
        subcase="5",
        jacobi_constraints=tuple(fixed.values()),
        unfixed=(),
        dimension=6,
    )
    return tag, fixed, six


def _case1(six, t):
    # u = z = 0: remaining equations v m - w p = 0 and c m - d p = d v - c w
    v, c, w, d = six["v"], six["c"], six["w"], six["d"]
    cw, dv = c * w, d * v
    local = _Tester(max(t.scale, abs(cw), abs(dv)), t.tol)
    if not local.zero(cw - dv, "|c w - d v|", "1b/1c", "1a"):
        fixed = {
            "m": _c("m", "m = -w", lambda s, f: -s["w"]),
            "p": _c("p", "p = -v", lambda s, f: -s["v"]),
        }
        tag = TypeTag(1, "1a", tuple(fixed.values()), ("e", "n"), 6 - 2 + 2, internal_label=True)
        return tag, fixed
    if not local.zero(cw, "|c w|", "1c", "1b"):
        # c w = d v != 0, so v != 0
        six["d"] = cw / v
        fixed = {"p": _c("p", "p = m v / w", lambda s, f: f["m"] * s["v"] / s["w"])}
        cons = (_c("d", "c w = d v", lambda s, f: s["c"] * s["w"] / s["v"]),) + tuple(fixed.values())
        tag = TypeTag(1, "1b", cons, ("e", "m", "n"), 6 - 2 + 3, internal_label=True)
        return tag, fixed

    def zero(key, *names):
        hit = t.zero(six[key], *names)
        if hit:
            six[key] = 0j
        return hit

    v0 = zero("v", "|v|", "v=0", "v!=0")
    w0 = zero("w", "|w|", "w=0", "w!=0")
    if v0 and w0:
        c0 = zero("c", "|c|", "c=0", "c!=0")
        d0 = zero("d", "|d|", "d=0", "d!=0")
        if c0 and d0:
            return TypeTag(1, "1c-v", (), ("e", "m", "n", "p"), 6 - 6 + 4, internal_label=True), {}
        if abs(c) >= abs(d):
            fixed = {"m": _c("m", "m = d p / c", lambda s, f: s["d"] * f["p"] / s["c"])}
            unfixed = ("e", "n", "p")
        else:
            fixed = {"p": _c("p", "p = c m / d", lambda s, f: s["c"] * f["m"] / s["d"])}
            unfixed = ("e", "m", "n")
        return TypeTag(1, "1c-iv", tuple(fixed.values()), unfixed, 6 - 4 + 3, internal_label=True), fixed
    if not v0 and not w0:
        # v, w != 0 together with c w = d v = 0 force c = d = 0
        six["c"] = six["d"] = 0j
        fixed = {"p": _c("p", "p = m v / w", lambda s, f: f["m"] * s["v"] / s["w"])}
        return TypeTag(1, "1c-i", tuple(fixed.values()), ("e", "m", "n"), 6 - 4 + 3), fixed
    if v0:
        # w != 0 forces c = 0
        six["c"] = 0j
        fixed = {"p": _c("p", "p = 0", lambda s, f: 0)}
        return TypeTag(1, "1c-ii", tuple(fixed.values()), ("e", "m", "n"), 6 - 4 + 3, internal_label=True), fixed
    # v != 0 forces d = 0
    six["d"] = 0j
    fixed = {"m": _c("m", "m = 0", lambda s, f: 0)}
    return TypeTag(1, "1c-iii", tuple(fixed.values()), ("e", "n", "p"), 6 - 4 + 3, internal_label=True), fixed


# --- JSON shapes -----------------------------------------------------------


def _pair(x):
    return [float(x.real), float(x.imag)]


def params_to_json(params):
    """Serialize Pair/TripleParams as ``{name: [re, im]}``."""
    return {k: _pair(v) for k, v in params.as_dict().items()}


def params_from_json(obj):
    keys = set(obj)
    cls = PairParams if keys <= {"u", "v", "c"} else TripleParams
    return cls(**{k: complex(*v) if isinstance(v, (list, tuple)) else v for k, v in obj.items()})


def tag_to_json(tag):
    return {
        "case": tag.case_index,
        "subcase": tag.subcase,
        "constraints": list(tag.constraint_texts),
        "unfixed": list(tag.unfixed),
        "dimension": tag.dimension,
        "consistent": tag.consistent,
        "internal_label": tag.internal_label,
        "symbol": tag.symbol(),
    }
