"""Error types shared across the engine.

Errors that signal an internal inconsistency (a failed cross-check between two
independent computation routes) derive from EngineBug so callers can map them
to a distinct exit code.
"""


class LocalHomError(Exception):
    pass


class NotContained(LocalHomError):
    """Claimed subspace containment does not hold."""


class RingMismatch(LocalHomError):
    """Operands live over different rings."""


class NotChainMap(LocalHomError):
    """Squares of a would-be chain map do not commute."""


class NotHomogeneous(LocalHomError):
    """A polynomial required to be homogeneous is not."""


class NotRegular(LocalHomError):
    """Sequence failed the regularity check (higher Koszul homology found)."""


class CertificateNotFound(LocalHomError):
    """Search exhausted the grid without completing a certificate."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class InputNotComplete(LocalHomError):
    """An operation requiring complete inputs received an incomplete one."""


class EngineBug(LocalHomError):
    """Two routes that must agree did not; indicates a bug, not bad input."""


class MismatchAt(EngineBug):
    def __init__(self, n, d, lhs, rhs):
        super().__init__(f"dimension mismatch at (n={n}, d={d}): {lhs} != {rhs}")
        self.n, self.d, self.lhs, self.rhs = n, d, lhs, rhs


class BiconditionalViolated(EngineBug):
    def __init__(self, n, d, message):
        super().__init__(f"completeness biconditional violated at (n={n}, d={d}): {message}")
        self.n, self.d = n, d


class RowBoundViolated(EngineBug):
    pass


class SkewViolation(LocalHomError):
    """Module action is not compatible with the ring action."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(LocalHomError):
    def __init__(self, message, line=None, col=None):
        loc = f" at line {line}" if line is not None else ""
        loc += f", col {col}" if col is not None else ""
        super().__init__(message + loc)
        self.line, self.col = line, col


class UndeclaredName(ParseError):
    pass


class Malformed(LocalHomError):
    """Certificate or report file is structurally invalid."""


class RankMismatch(LocalHomError):
    """Recomputed rank disagrees with the rank claimed in a certificate."""

    def __init__(self, message, claim=None):
        super().__init__(message)
        self.claim = claim
