"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ItopsysError(Exception):
    """Base class. ``witness`` carries the offending elements, if any."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = tuple(witness)


class InputError(ItopsysError, ValueError):
    """Malformed input (bad file, bad encoding, dimension mismatch)."""


class UnknownElement(ItopsysError, KeyError):
    def __str__(self) -> str:
        return self.args[0]


class NotAPoset(ItopsysError):
    pass


class NotALattice(ItopsysError):
    pass


class NotBounded(ItopsysError):
    pass


class NotDistributive(ItopsysError):
    pass


class ResiduationFailure(ItopsysError):
    pass


class NotAHom(ItopsysError):
    pass


class NotIsomorphic(ItopsysError):
    pass


class AxiomViolation(ItopsysError):
    """A failed clause of the satisfaction axioms.

    ``axiom`` is the clause number 1..4, ``point`` the point name and
    ``elements`` the element names involved.  ``violations`` lists every
    failure found when raised from :func:`itopsys.topsys.build_system`.
    """

    def __init__(self, axiom: int, point: str, elements: tuple[str, ...], violations=()):
        args = ", ".join(elements)
        super().__init__(f"axiom {axiom} fails at point {point!r} for ({args})",
                         (axiom, point, *elements))
        self.axiom = axiom
        self.point = point
        self.elements = tuple(elements)
        self.violations = list(violations) or [self]

    def __reduce__(self):
        return (type(self), (self.axiom, self.point, self.elements))


class TriangleFailure(ItopsysError):
    pass


class NotAntisymmetric(ItopsysError):
    pass


class NotHereditary(ItopsysError):
    pass


class UnknownWorld(ItopsysError, KeyError):
    def __str__(self) -> str:
        return self.args[0]


class UnknownAtom(ItopsysError, KeyError):
    def __str__(self) -> str:
        return self.args[0]


class FormulaSyntaxError(ItopsysError):
    def __init__(self, position: int, expected: str, text: str = ""):
        super().__init__(f"syntax error at position {position}: expected {expected}",
                         (position, expected))
        self.position = position
        self.expected = expected
        self.text = text
