"""Exception types shared across the library."""


class FusionChainError(Exception):
    """Base class for all library errors."""


class DegenerateBicharacter(FusionChainError):
    pass


class InvalidBicharacter(FusionChainError):
    pass


class CapExceeded(FusionChainError):
    pass


class NonAssociative(FusionChainError):
    pass


class DecomposableModule(FusionChainError):
    pass


class FSymbolsMissing(FusionChainError):
    pass


class NotSubgroup(FusionChainError):
    pass


class UnsupportedSystem(FusionChainError):
    pass


class UnknownTable(FusionChainError):
    pass


class RelationViolated(FusionChainError):
    """A duality image table breaks a defining relation.

    Carries the failing relation as a human-readable string.
    """

    def __init__(self, relation: str):
        super().__init__(f"relation violated: {relation}")
        self.relation = relation


class MissingCenterAction(FusionChainError):
    pass


class NotExtensionsOfSameDuality(FusionChainError):
    pass


class UnsupportedExtension(FusionChainError):
    pass


class DisconnectedInclusion(FusionChainError):
    """Inclusion graph is disconnected; per-component data is attached."""

    def __init__(self, components):
        super().__init__(f"inclusion disconnected into {len(components)} components")
        self.components = components


class SchemaError(FusionChainError):
    pass


class InvariantViolation(FusionChainError):
    pass
