"""Exception types shared across the package."""


class NetcompError(Exception):
    """Base class for all errors raised by netcomp."""


class InvalidNetwork(NetcompError):
    """A network violates a structural invariant."""


class InvalidInput(NetcompError, ValueError):
    """An argument is out of range or has the wrong shape."""


class BudgetExceeded(NetcompError):
    """An exhaustive computation would exceed its configured budget."""


class ParseError(NetcompError):
    def __init__(self, path, lineno, token, message):
        self.path = path
        self.lineno = lineno
        self.token = token
        self.message = message
        super().__init__(f"{path}:{lineno}: {message} (at {token!r})")
