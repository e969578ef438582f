"""Exception hierarchy.

Every error raised by the package derives from :class:`CosetalError`, so a
caller (the CLI in particular) can separate bad input from a failed theorem
check, which is reported as :class:`TheoremCheckFailed`.
"""


class CosetalError(Exception):
    pass


class InputError(CosetalError, ValueError):
    """Malformed or out-of-contract input."""


class MalformedTable(InputError):
    pass


class NotAMonoid(InputError):
    pass


class NotAGroup(InputError):
    def __init__(self, msg, element=None):
        super().__init__(msg)
        self.element = element


class NotAbelian(InputError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class KernelNotAbelianGroup(InputError):
    pass


class SizeMismatch(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class DimensionMismatch(ShapeMismatch):
    pass


class ContextMismatch(InputError):
    pass


class NotHomomorphism(InputError):
    pass


class CapExceeded(InputError):
    pass


class NotCompatible(InputError):
    pass


class IncompatiblePair(InputError):
    pass


class InvalidAction(InputError):
    pass


class NotFactorSet(InputError):
    pass


class UnitNotPreserved(InputError):
    pass


class NotExtension(InputError):
    pass


class NotSplitExtension(InputError):
    pass


class NotCosetal(InputError):
    pass


class NotComparable(InputError):
    pass


class InvariantsDiffer(InputError):
    pass


class TheoremCheckFailed(CosetalError, AssertionError):
    """A computed structure contradicted a property that must hold."""
