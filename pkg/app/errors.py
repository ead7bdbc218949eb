"""
Error Types
Exceptions raised by the simulation library
"""

from typing import Optional


class DomainError(ValueError):
    """Raised when an input violates an operation's precondition"""
    pass


class RangeError(DomainError):
    """Raised when a frequency falls outside a profile's sampled band"""
    pass


class ProfileParseError(DomainError):
    """Raised when an absorption profile file cannot be parsed"""

    def __init__(self, path: str, message: str, line: Optional[int] = None):
        """
        Initialize parse error

        Args:
            path: Profile file location
            message: What went wrong
            line: 1-based line number, or None for whole-file problems
        """
        self.path = str(path)
        self.line = line
        location = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{location}: {message}")
