"""Error taxonomy shared by all weylnet modules."""


class WeylnetError(Exception):
    pass


class EdgeMismatch(WeylnetError):
    """Window-edge samples deviate from the declared limits beyond tol_edge."""


class BadGrid(WeylnetError):
    """Non-positive step, unresolvable width, or incompatible grids."""


class NonDecaying(WeylnetError):
    """Antidifferentiation requires a zero left limit."""


class DivergentTail(WeylnetError):
    """Both pairing factors have nonzero constant tails on the same side."""


class NotInDomain(WeylnetError):
    """Argument lies outside the operation's symplectic subspace."""


class UnknownGenerator(WeylnetError):
    """Symplectic vector references an unregistered generator id."""


class DegenerateRegularizer(WeylnetError):
    """Regularizing element has a vanishing charge."""


class InvalidKey(WeylnetError):
    """Weyl element keyed outside the elementary (c, n) coordinates."""


class MissingCharacterValue(WeylnetError):
    """Gauge character table lacks a value for a charge present in the element."""


class BadIntervals(WeylnetError):
    """Interval arguments violate the required disjointness/ordering."""


class RegularizerNotContained(WeylnetError):
    """diagram_check requires loc T inside the test interval."""


class RegistryParseError(WeylnetError):
    """Generator-registry file failed to parse."""


class ElementParseError(WeylnetError):
    """Textual Weyl-element literal failed to parse."""
