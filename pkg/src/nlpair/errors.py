class CapExceeded(RuntimeError):
    """A configured resource cap was hit."""


class CosetOverflow(CapExceeded):
    """Coset enumeration needed more live cosets than allowed."""
