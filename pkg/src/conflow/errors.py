"""Exception types shared across modules."""


class DomainError(ValueError):
    """A physical parameter lies outside the domain where a formula holds."""
