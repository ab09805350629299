"""Global numeric settings.

All tolerance-sensitive operations read their defaults from the module-level
``settings`` object so that a command-line flag (or a test fixture) can steer
every check through one knob.  Functions still accept explicit keyword
overrides; ``None`` means "use the global value".
"""

from dataclasses import dataclass


@dataclass
class Settings:
    #: absolute tolerance for modular-equality and membership tests
    eps: float = 1e-9
    #: denominator bound when rationalizing float solution spaces
    denom_bound: int = 10**6
    #: truncation order for the elliptic series (number of q-series terms)
    sigma_n: int = 20


settings = Settings()


def resolve(value, field):
    """Return ``value`` unless it is None, else the global setting ``field``."""
    return getattr(settings, field) if value is None else value
