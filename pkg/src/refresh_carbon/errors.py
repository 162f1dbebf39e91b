"""Exception types shared across the toolkit."""

from __future__ import annotations


class RefreshError(Exception):
    """Base class for all toolkit-specific errors."""


class DomainError(RefreshError, ValueError):
    """A value violates a domain constraint (range, sign, emptiness)."""


class InfeasibleDutyCycle(RefreshError):
    """Equal-work adjustment would need more active time than exists awake."""

    def __init__(self, required_f_active: float, awake_budget: float) -> None:
        self.required_f_active = required_f_active
        self.awake_budget = awake_budget
        super().__init__(
            f"equal-work adjustment needs f_active={required_f_active:.6g} "
            f"but only {awake_budget:.6g} of time is awake"
        )


class EmptyComposition(DomainError):
    """A composition must contain at least one die."""


class SdllBudgetExceeded(RefreshError):
    """Inter-die link demand exceeds what the interposer provides."""

    def __init__(self, required: int, capacity: int) -> None:
        self.required = required
        self.capacity = capacity
        super().__init__(f"composition needs {required} inter-die links, interposer provides {capacity}")


class UnknownId(RefreshError, KeyError):
    """An option id does not resolve to a catalog device or composition."""

    def __init__(self, kind: str, identifier: str, field: str | None = None) -> None:
        self.kind = kind
        self.identifier = identifier
        self.field = field
        super().__init__(f"unknown {kind} id {identifier!r}")

    def __str__(self) -> str:
        return self.args[0]


class CatalogError(RefreshError):
    """Base class for catalog and grid file problems."""


class ParseError(CatalogError):
    """File is not valid JSON."""

    def __init__(self, location: str, reason: str) -> None:
        self.location = location
        self.reason = reason
        super().__init__(f"{location}: {reason}")


class ValidationError(CatalogError):
    """File parsed but a field violates the schema."""

    def __init__(self, field: str, reason: str) -> None:
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class DanglingReference(CatalogError):
    """A composition references an id that is not defined."""

    def __init__(self, owner: str, missing: str, kind: str = "device") -> None:
        self.owner = owner
        self.missing = missing
        self.kind = kind
        super().__init__(f"composition {owner!r} references unknown {kind} {missing!r}")


class NetworkError(RefreshError):
    """Remote grid endpoint could not be reached and no fallback was given."""

    def __init__(self, endpoint: str, region: str, detail: str) -> None:
        self.endpoint = endpoint
        self.region = region
        self.detail = detail
        super().__init__(f"grid endpoint {endpoint!r} unreachable for region {region!r}: {detail}")


class RemoteSchemaError(RefreshError):
    """Remote grid endpoint answered with a payload the client cannot read."""

    def __init__(self, endpoint: str, region: str, detail: str) -> None:
        self.endpoint = endpoint
        self.region = region
        self.detail = detail
        super().__init__(f"grid endpoint {endpoint!r} returned unusable data for region {region!r}: {detail}")
