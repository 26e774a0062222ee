"""Exception hierarchy shared by the library and the CLI.

The CLI maps these onto exit codes (see constants.EXIT_*):
- InvalidInputError and subclasses -> 2
- ImpossibleError -> 3
- VerificationError -> 1
"""

from __future__ import annotations


class GrasshopperError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(GrasshopperError, ValueError):
    """Malformed input: bad indices, mismatched sizes, unparsable files."""


class MembershipError(InvalidInputError):
    """Matrix is not generated by elementary involutions."""


class InvalidCertificateError(InvalidInputError):
    """Matrix offered as a similarity certificate has |det| != 1."""


class SingularMatrixError(InvalidInputError):
    """Matrix is singular over GF(2) and has no multiplicative order."""


class ImpossibleError(GrasshopperError):
    """No enlarging sequence exists for this regular polygon."""

    def __init__(self, n_pieces: int, reason: str) -> None:
        self.n_pieces = n_pieces
        self.reason = reason
        super().__init__(
            f"A regular {n_pieces}-gon can never be enlarged by legal jumps: {reason}"
        )


class VerificationError(GrasshopperError):
    """A produced certificate or internal invariant failed its own check."""
