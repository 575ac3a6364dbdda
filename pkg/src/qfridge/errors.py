"""Exception types shared across the package."""


class QFridgeError(Exception):
    """Base class for all qfridge errors."""


class InvalidParameterError(QFridgeError, ValueError):
    """A scalar, matrix, or option is malformed (non-finite, wrong range, wrong shape)."""


class RegimeError(QFridgeError, ValueError):
    """The parameter set violates an operating-regime inequality.

    The message always names the inequality that failed, e.g.
    ``beta_c*omega_c < beta_h*omega_h``.
    """

    def __init__(self, inequality: str, detail: str = ""):
        self.inequality = inequality
        super().__init__(f"regime violation: {inequality}" + (f" ({detail})" if detail else ""))


class StructureMismatchError(QFridgeError, ValueError):
    """Two ledgers being compared do not share the same stroke structure."""
