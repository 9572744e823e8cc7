class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """A rational function was evaluated or expanded at one of its poles."""


class ParseError(ValueError):
    """Malformed polynomial or rational literal; ``offset`` is 0-based."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
