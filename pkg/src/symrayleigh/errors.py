class SpecError(ValueError):
    """A family descriptor or operation argument violates its constraints."""


class UnknownElementError(SpecError):
    pass


class NotSymmetricError(SpecError):
    pass


class NoCertificateError(SpecError):
    pass


class SizeLimitError(RuntimeError):
    """Refusal to build an object beyond the desk-scale guardrails."""
