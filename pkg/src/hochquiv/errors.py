"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI report.
"""

from __future__ import annotations


class HochError(Exception):
    code = "error"
    exit_code = 1


class ParseError(HochError):
    code = "parse_error"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownArrow(ParseError):
    code = "unknown_arrow"


class NonComposablePath(ParseError):
    code = "non_composable_path"


class NonParallelRelation(ParseError):
    code = "non_parallel_relation"


class NotAdmissible(ParseError):
    code = "not_admissible"


class InfiniteDimensional(HochError):
    code = "infinite_dimensional"


class NilboundViolated(HochError):
    code = "nilbound_violated"


class MissingNilbound(HochError):
    code = "missing_nilbound"


class NotMonomial(HochError):
    code = "not_monomial"


class NotTwoTruncated(HochError):
    code = "not_two_truncated"


class InvalidWitness(HochError):
    code = "invalid_witness"


class EndpointMismatch(HochError):
    code = "endpoint_mismatch"


class RelationViolation(HochError):
    code = "relation_violation"


class GenerationExhausted(HochError):
    code = "generation_exhausted"


class ResourceLimit(HochError):
    """A chain-space cap or time budget was exceeded.

    ``partial`` holds whatever was computed before the limit was hit.
    """

    code = "resource_limit"
    exit_code = 2

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
