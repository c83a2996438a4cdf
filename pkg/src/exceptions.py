"""
Custom exception hierarchy for the Waldschmidt bound engine
"""

from typing import Optional


class WaldschmidtError(Exception):
    """Base exception for all engine errors"""

    pass


class ParseError(WaldschmidtError):
    """Raised when an expression, multiplicity list or certificate cannot be parsed"""

    pass


class PreconditionError(WaldschmidtError):
    """Raised when an operation is called outside its stated preconditions"""

    pass


class ReductionError(WaldschmidtError):
    """Raised when a linear system is malformed"""

    pass


class CertificateError(WaldschmidtError):
    """Raised when a certificate step fails to re-derive"""

    def __init__(
        self, reason: str, step_index: Optional[int] = None, kind: str = "mathematical"
    ) -> None:
        super().__init__(reason)
        self.reason = reason
        self.step_index = step_index
        self.kind = kind


class OracleError(WaldschmidtError):
    """Raised when an interpolation matrix cannot be built or ranked"""

    pass


class ConfigError(WaldschmidtError):
    """Raised when configuration is invalid"""

    pass
