"""Error types shared across the package.

InputError covers malformed user input (files, word syntax, unknown builtins);
GuardError covers exceeded resource guards.  The CLI maps them to exit codes
1 and 2 respectively; the HTTP layer maps them to structured 400 responses.
"""


class InputError(ValueError):
    """Malformed input (bad syntax, unknown generator, unknown builtin)."""

    def __init__(self, message, line=None, col=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self):
        if self.line is not None and self.col is not None:
            return f"line {self.line}, col {self.col}: {self.message}"
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


class ParseError(InputError):
    """Syntax error in a presentation file, M-set file, word, or point."""


class GuardError(RuntimeError):
    """A resource guard was exceeded (e.g. too many generators to enumerate)."""
