"""Exception hierarchy.

``InputError`` subclasses signal malformed input (CLI exit code 1);
``SizeLimitExceeded`` signals a resource cap (CLI exit code 2).
"""

from __future__ import annotations


class AplError(Exception):
    """Base class for every error raised by aplkit."""


class InputError(AplError, ValueError):
    pass


class NonAssociative(InputError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"table is not associative at ({a}, {b}, {c})")
        self.triple = (a, b, c)


class BadIdentity(InputError):
    def __init__(self, identity: int, element: int):
        super().__init__(f"identity {identity} fails against element {element}")
        self.element = element


class GeneratorsDoNotGenerate(InputError):
    def __init__(self, element: int):
        super().__init__(f"element {element} is not generated by the generators")
        self.element = element


class OutOfRange(InputError):
    pass


class UnknownLetter(InputError):
    pass


class BaseMismatch(InputError):
    pass


class EmptySet(InputError):
    pass


class NotASubmonoid(InputError):
    pass


class NotAMember(InputError):
    pass


class AlphabetMismatch(InputError):
    pass


class LabelOverWrongMonoid(InputError):
    pass


class OrderTooLarge(InputError):
    pass


class SizeLimitExceeded(AplError):
    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded the cap of {cap}")
        self.cap = cap
