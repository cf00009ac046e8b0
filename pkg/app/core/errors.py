class PseudomanifoldInputError(ValueError):
    """Raised when an operation receives input outside its precondition."""
