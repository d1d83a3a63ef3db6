"""Exception hierarchy shared by every module of the package."""


class BCHError(Exception):
    """Base class for all errors raised by closedbch."""


class InvalidArgumentError(BCHError, ValueError):
    """Non-finite or malformed input."""


class DegenerateInputError(BCHError, ArithmeticError):
    """Input lies on a genuine (non-removable) singular set."""


class DegenerateCaseError(DegenerateInputError):
    """A closed-form type formula divides by zero for this input."""


class CoincidentRootError(DegenerateInputError):
    """The two roots of a splitting quadratic coincide."""


class BoundaryError(BCHError):
    """Classification is ambiguous at the requested tolerance."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class SpanError(BCHError):
    """A commutator does not lie in the span required by a closed form."""

    def __init__(self, message, component=None, residual=None):
        super().__init__(message)
        self.component = component
        self.residual = residual


class JacobiError(BCHError):
    """Extracted commutator parameters violate the Jacobi system."""


class UnsupportedTypeError(BCHError):
    """The commutator algebra type has no implemented splitting solver."""


class NoBranchError(BCHError):
    """No root of the splitting equation passes the residual gate."""


class NoSplitSolutionError(BCHError):
    """The scalar split condition has no root under the search."""


class UnsupportedRootStringError(BCHError):
    """Root configuration outside the supported root-string lengths."""


class UnsupportedAlgebraError(BCHError, KeyError):
    """Unknown catalog algebra."""

    def __str__(self):
        return Exception.__str__(self)


class ForeignGeneratorError(BCHError, KeyError):
    """An element refers to a generator that is not in the algebra basis."""

    def __str__(self):
        return Exception.__str__(self)


class CatalogError(BCHError):
    """A catalog definition fails its structural checks on load."""


class DimensionError(BCHError, ValueError):
    """Matrix dimension outside the supported range."""


class MatrixBranchError(BCHError, ArithmeticError):
    """The principal matrix logarithm does not exist."""


class DivergenceWarning(RuntimeWarning):
    """Truncated series terms failed to decrease."""
