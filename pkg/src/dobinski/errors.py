"""Exceptions raised when an evaluation is mathematically refused."""


class DobinskiError(Exception):
    """Base class for evaluation failures; `kind` is a stable machine label."""

    kind = "error"


class TermCapError(DobinskiError):
    """Adaptive truncation hit the term budget before meeting its bound."""

    kind = "term-cap"

    def __init__(self, message, terms):
        super().__init__(message)
        self.terms = terms


class DivergenceError(DobinskiError):
    """The requested series provably (or observably) diverges."""

    kind = "divergence"


class PoleError(DobinskiError):
    """A retained term sits on (or too close to) a pole; `k` is the index."""

    kind = "pole"

    def __init__(self, message, k):
        super().__init__(message)
        self.k = k
