"""Lie algebras in a Cartan-Weyl basis, their elements and brackets.

An :class:`Algebra` is a finite basis of named generators with structure
constants, an optional central element ``I`` and an optional faithful matrix
representation.  Catalog algebras (``sl2``, ``sl3``, ``so5``) are shipped as
JSON files holding representation matrices; structure constants are
extracted from the matrices on load and every load is gated by the
homomorphism and Cartan-Weyl normalization checks.

Conventions::

    [H^a, E^b] = (a^v, b) E^b,   [E^a, E^-a] = H^a,   [E^a, E^b] = e_ab E^(a+b)

with ``a^v = 2a/(a, a)``.  Signs of ``e_ab`` are whatever the shipped
matrices produce.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import CatalogError, ForeignGeneratorError, InvalidArgumentError, UnsupportedAlgebraError
from .kernel import as_cscalar

CENTRAL = "I"
CATALOG = ("sl2", "sl3", "so5")
HOMOMORPHISM_TOL = 1e-12
# extracted structure constants within SNAP_TOL of a small-denominator
# rational are replaced by it
SNAP_TOL = 1e-13
_SNAP_DENOMINATORS = (1, 2, 3, 4, 6, 8, 12)


@dataclass(frozen=True, order=True)
class Root:
    """A root (or any lattice vector) in simple-root coordinates."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __add__(self, other):
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Root(tuple(-a for a in self.coords))

    def __mul__(self, k):
        return Root(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Generator:
    """A basis generator: ``kind`` is ``"cartan"`` (H^a) or ``"step"`` (E^b)."""

    name: str
    kind: str
    root: Root = None


@dataclass(frozen=True, eq=False)
class LieElement:
    """Finite linear combination of named generators plus a central part."""

    coeffs: dict = field(default_factory=dict)
    central: complex = 0j

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.coeffs).items():
            v = as_cscalar(v, f"coefficient of {k}")
            if v != 0:
                clean[str(k)] = v
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "central", as_cscalar(self.central, "central"))

    @classmethod
    def of(cls, name, coeff=1.0):
        if name == CENTRAL:
            return cls({}, coeff)
        return cls({name: coeff})

    def coefficient(self, name):
        if name == CENTRAL:
            return self.central
        return self.coeffs.get(name, 0j)

    def names(self):
        return tuple(self.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0j) + v
        return LieElement(out, self.central + other.central)

    def __neg__(self):
        return LieElement({k: -v for k, v in self.coeffs.items()}, -self.central)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = as_cscalar(s, "scalar")
        return LieElement({k: s * v for k, v in self.coeffs.items()}, s * self.central)

    __rmul__ = __mul__

    def is_zero(self):
        return not self.coeffs and self.central == 0

    def norm(self):
        return float(np.sqrt(sum(abs(v) ** 2 for v in self.coeffs.values()) + abs(self.central) ** 2))

    def distance(self, other):
        return (self - other).norm()

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.coeffs == other.coeffs and self.central == other.central

    def __repr__(self):
        terms = [f"{v:.6g}*{k}" for k, v in self.coeffs.items()]
        if self.central:
            terms.append(f"{self.central:.6g}*I")
        return "LieElement(" + (" + ".join(terms) or "0") + ")"


class Algebra:
    """A Lie algebra with a named basis and optional representation.

    Args:
        name: label.
        generators: sequence of :class:`Generator`.
        structure: complex array ``C[i, j, k]`` with ``[b_i, b_j] = C[i,j,k] b_k``.
        central: complex array ``Z[i, j]``, the coefficient of ``I`` in
            ``[b_i, b_j]``; zeros when omitted.
        matrices: optional array ``(n, d, d)``; ``I`` is represented by the
            identity matrix.
    """

    def __init__(self, name, generators, structure, central=None, matrices=None):
        self.name = name
        self.generators = tuple(generators)
        self.basis = tuple(g.name for g in self.generators)
        if len(set(self.basis)) != len(self.basis) or CENTRAL in self.basis:
            raise CatalogError(f"{name}: generator names must be unique and not '{CENTRAL}'")
        self._index = {n: i for i, n in enumerate(self.basis)}
        n = len(self.basis)
        self.structure = np.asarray(structure, dtype=complex).reshape(n, n, n)
        self.central_bracket = (
            np.zeros((n, n), dtype=complex) if central is None else np.asarray(central, dtype=complex).reshape(n, n)
        )
        self.matrices = None if matrices is None else np.asarray(matrices, dtype=complex)
        self._by_root = {}
        self._cartan = {}
        for g in self.generators:
            if g.kind == "step":
                self._by_root[g.root] = g.name
            elif g.kind == "cartan" and g.root is not None:
                self._cartan[g.root] = g.name
        self.rank = len(self._cartan)
        self._gram = self._derive_gram() if self._cartan and self._by_root else None

    # -- basic structure --------------------------------------------------

    @property
    def dim(self):
        return len(self.basis)

    @property
    def has_representation(self):
        return self.matrices is not None

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ForeignGeneratorError(f"generator {name!r} is not in algebra {self.name}") from None

    def generator(self, name):
        return self.generators[self.index(name)]

    def element(self, name, coeff=1.0):
        if name != CENTRAL:
            self.index(name)
        return LieElement.of(name, coeff)

    def to_vector(self, elem):
        vec = np.zeros(self.dim + 1, dtype=complex)
        for k, v in elem.coeffs.items():
            vec[self.index(k)] = v
        vec[-1] = elem.central
        return vec

    def from_vector(self, vec):
        vec = np.asarray(vec, dtype=complex)
        return LieElement({n: vec[i] for i, n in enumerate(self.basis)}, vec[-1])

    def bracket_vectors(self, a, b):
        """Bracket of two coefficient vectors of length ``dim + 1``."""
        x, y = a[: self.dim], b[: self.dim]
        out = np.empty(self.dim + 1, dtype=complex)
        out[:-1] = np.einsum("i,j,ijk->k", x, y, self.structure)
        out[-1] = x @ self.central_bracket @ y
        return out

    def commutator(self, a, b):
        return self.from_vector(self.bracket_vectors(self.to_vector(a), self.to_vector(b)))

    def represent(self, elem):
        if self.matrices is None:
            raise InvalidArgumentError(f"algebra {self.name} has no matrix representation")
        vec = self.to_vector(elem)
        d = self.matrices.shape[1]
        return np.tensordot(vec[:-1], self.matrices, axes=1) + vec[-1] * np.eye(d)

    # -- root data ----------------------------------------------------------

    @property
    def simple_roots(self):
        return tuple(sorted(self._cartan, key=lambda r: r.coords.index(1)))

    @property
    def roots(self):
        return tuple(self._by_root)

    @property
    def positive_roots(self):
        return tuple(r for r in self._by_root if all(c >= 0 for c in r.coords))

    def is_root(self, root):
        return Root(root.coords if isinstance(root, Root) else root) in self._by_root

    def _root(self, root):
        root = root if isinstance(root, Root) else Root(root)
        if root not in self._by_root:
            raise InvalidArgumentError(f"{root} is not a root of {self.name}")
        return root

    def step_name(self, root):
        return self._by_root[self._root(root)]

    def step(self, root, coeff=1.0):
        """The element ``coeff * E^root``."""
        return LieElement.of(self.step_name(root), coeff)

    def cartan_matrix(self):
        simple = self.simple_roots
        A = np.zeros((len(simple), len(simple)), dtype=int)
        for i, a in enumerate(simple):
            h = self.index(self._cartan[a])
            for j, b in enumerate(simple):
                e = self.index(self._by_root[b])
                A[i, j] = int(round(self.structure[h, e, e].real))
        return A

    def _derive_gram(self):
        simple = self.simple_roots
        A = self.cartan_matrix()
        r = len(simple)
        lengths = [None] * r
        for start in range(r):
            if lengths[start] is not None:
                continue
            lengths[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(r):
                    if A[i, j] != 0 and lengths[j] is None:
                        # A_ij |a_i|^2 = A_ji |a_j|^2
                        lengths[j] = lengths[i] * Fraction(int(A[i, j]), int(A[j, i]))
                        stack.append(j)
        top = max(lengths)
        lengths = [2 * x / top for x in lengths]
        return [[Fraction(int(A[i, j])) * lengths[i] / 2 for j in range(r)] for i in range(r)]

    def inner(self, a, b):
        """Invariant inner product ``(a, b)`` (long roots have length^2 2)."""
        a = a.coords if isinstance(a, Root) else tuple(a)
        b = b.coords if isinstance(b, Root) else tuple(b)
        g = self._gram
        return sum((Fraction(a[i]) * g[i][j] * b[j] for i in range(len(a)) for j in range(len(b))), Fraction(0))

    def length2(self, root):
        return self.inner(root, root)

    def coroot_pairing(self, a, b):
        """``(a^v, b) = 2 (a, b) / (a, a)`` as an integer."""
        val = 2 * self.inner(a, b) / self.inner(a, a)
        if val.denominator != 1:
            raise InvalidArgumentError(f"non-integral pairing ({a}^v, {b}) = {val}")
        return int(val)

    def cartan(self, root, coeff=1.0):
        """The element ``coeff * H^root`` (coroot normalization)."""
        root = self._root(root)
        la2 = self.length2(root)
        coeffs = {}
        for i, s in enumerate(self.simple_roots):
            k = root.coords[i]
            if k:
                coeffs[self._cartan[s]] = coeff * float(k * self.length2(s) / la2)
        return LieElement(coeffs)

    def structure_constant(self, a, b):
        """``e_ab`` with ``[E^a, E^b] = e_ab E^(a+b)``; zero if a+b is not a root."""
        a, b = self._root(a), self._root(b)
        s = a + b
        if s.is_zero():
            raise InvalidArgumentError("e_ab is undefined for b = -a")
        if s not in self._by_root:
            return 0j
        i, j, k = self.index(self._by_root[a]), self.index(self._by_root[b]), self.index(self._by_root[s])
        return complex(self.structure[i, j, k])

    def __repr__(self):
        return f"Algebra({self.name!r}, dim={self.dim}, rank={self.rank})"


def commutator(a, b, algebra):
    """``[a, b]`` in ``algebra``."""
    return algebra.commutator(a, b)


# -- construction from matrices / JSON -----------------------------------


def _snap_part(v):
    for den in _SNAP_DENOMINATORS:
        r = round(v * den) / den
        if abs(v - r) < SNAP_TOL:
            return r
    return v


def _snap(x):
    """Remove projection round-off: values this close to k/den are set to it."""
    return np.array([complex(_snap_part(c.real), _snap_part(c.imag)) for c in x])


def structure_from_matrices(matrices, tol=HOMOMORPHISM_TOL):
    """Extract ``C[i,j,k]`` from representation matrices by linear projection."""
    M = np.asarray(matrices, dtype=complex)
    n = M.shape[0]
    B = M.reshape(n, -1).T
    if np.linalg.matrix_rank(B) < n:
        raise CatalogError("representation matrices are linearly dependent (not faithful)")
    C = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            comm = M[i] @ M[j] - M[j] @ M[i]
            x, *_ = np.linalg.lstsq(B, comm.ravel(), rcond=None)
            x = _snap(x)
            resid = np.max(np.abs(B @ x - comm.ravel()), initial=0.0)
            if resid > tol:
                raise CatalogError(f"[b{i}, b{j}] leaves the span of the basis (residual {resid:.2e})")
            C[i, j] = x
            C[j, i] = -x
    return C


def homomorphism_defect(algebra):
    """Max-norm of rep([a,b]) - [rep a, rep b] over basis pairs."""
    M = algebra.matrices
    worst = 0.0
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = np.tensordot(algebra.structure[i, j], M, axes=1) + algebra.central_bracket[i, j] * np.eye(M.shape[1])
            rhs = M[i] @ M[j] - M[j] @ M[i]
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def cartan_weyl_defects(algebra):
    """Largest violation of the Cartan-Weyl relations (0.0 when exact)."""
    worst = 0.0
    vec = algebra.to_vector
    for a in algebra.roots:
        ea = vec(algebra.step(a))
        # [E^a, E^-a] = H^a
        hb = algebra.bracket_vectors(ea, vec(algebra.step(-a)))
        worst = max(worst, float(np.max(np.abs(hb - vec(algebra.cartan(a))))))
        for b in algebra.roots:
            eb = vec(algebra.step(b))
            # [H^a, E^b] = (a^v, b) E^b
            got = algebra.bracket_vectors(vec(algebra.cartan(a)), eb)
            worst = max(worst, float(np.max(np.abs(got - algebra.coroot_pairing(a, b) * eb))))
            if (a + b).is_zero():
                continue
            e_ab = algebra.structure_constant(a, b)
            if algebra.is_root(a + b) == (abs(e_ab) < 1e-12):
                worst = max(worst, 1.0)
    return worst


def _decode_matrix(rows):
    return np.array([[complex(*x) if isinstance(x, (list, tuple)) else complex(x) for x in row] for row in rows])


def _encode_matrix(m):
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(m, dtype=complex)]


def algebra_from_json(obj):
    """Build an algebra from the catalog JSON shape and run the load gates."""
    try:
        name = obj["name"]
        gens = []
        mats = []
        for g in obj["generators"]:
            root = Root(g["root"]) if g.get("root") is not None else None
            gens.append(Generator(g["name"], g.get("kind", "abstract"), root))
            mats.append(_decode_matrix(g["matrix"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"malformed catalog entry: {exc}") from exc
    matrices = np.array(mats)
    if matrices.ndim != 3 or matrices.shape[1] != matrices.shape[2]:
        raise CatalogError("representation matrices must be square and of one size")
    alg = Algebra(name, gens, structure_from_matrices(matrices), matrices=matrices)
    defect = homomorphism_defect(alg)
    if defect > HOMOMORPHISM_TOL:
        raise CatalogError(f"{name}: representation is not a homomorphism (defect {defect:.2e})")
    if alg._gram is not None:
        cw = cartan_weyl_defects(alg)
        if cw > HOMOMORPHISM_TOL:
            raise CatalogError(f"{name}: Cartan-Weyl normalization violated (defect {cw:.2e})")
    return alg


def algebra_to_json(algebra):
    if algebra.matrices is None:
        raise InvalidArgumentError("only represented algebras can be serialized to the catalog format")
    gens = []
    for g, m in zip(algebra.generators, algebra.matrices):
        entry = {"name": g.name, "kind": g.kind, "matrix": _encode_matrix(m)}
        if g.root is not None:
            entry["root"] = list(g.root.coords)
        gens.append(entry)
    return {"name": algebra.name, "generators": gens}


def load_algebra(path):
    """Load a user catalog file (same JSON shape as the shipped catalog)."""
    with open(Path(path)) as fh:
        return algebra_from_json(json.load(fh))


_CACHE = {}


def build_algebra(name):
    """Return a catalog algebra: ``sl2``, ``sl3`` or ``so5``."""
    if name not in CATALOG:
        raise UnsupportedAlgebraError(f"unknown algebra {name!r}; catalog has {', '.join(CATALOG)}")
    if name not in _CACHE:
        text = resources.files("closedbch.catalog").joinpath(f"{name}.json").read_text()
        _CACHE[name] = algebra_from_json(json.loads(text))
    return _CACHE[name]


def commutator_table(algebra, include_zero=False):
    """All brackets ``[b_i, b_j]`` for ``i < j`` as ``(a, b, LieElement)``."""
    rows = []
    for i, a in enumerate(algebra.basis):
        for b in algebra.basis[i + 1 :]:
            c = algebra.commutator(LieElement.of(a), LieElement.of(b))
            if include_zero or not c.is_zero():
                rows.append((a, b, c))
    return rows
