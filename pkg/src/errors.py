"""Exception hierarchy shared by every simulator module."""


class SimulationError(Exception):
    """Base class for errors raised by the simulator"""
    pass


class ConfigError(SimulationError):
    """Invalid experiment configuration; `field` names the offending key."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class RankDeficientError(SimulationError):
    """Channel matrix of a user set is not full column rank"""

    def __init__(self, message, subcarrier=None, users=None):
        self.subcarrier = subcarrier
        self.users = tuple(users) if users is not None else None
        where = []
        if subcarrier is not None:
            where.append(f"sub-carrier {subcarrier}")
        if users is not None:
            where.append(f"users {list(self.users)}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class DomainError(SimulationError, ValueError):
    """Argument outside the range an operation accepts"""
    pass


class DropRow(SimulationError):
    """Exception to drop a result row from the pipeline"""
    pass
