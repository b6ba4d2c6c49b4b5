"""Shared exception types.

Every error carries a stable machine code (``code``) so the HTTP layer and
the CLI can map failures without string matching.
"""


class ChorocolorError(Exception):
    code = "INTERNAL"

    def __init__(self, message: str, details=None):
        super().__init__(message)
        self.details = details


# -- dataset ----------------------------------------------------------------

class MalformedInput(ChorocolorError):
    code = "MALFORMED_INPUT"


class MissingField(ChorocolorError):
    code = "MISSING_FIELD"


class InvalidGeoJSON(ChorocolorError):
    code = "INVALID_GEOJSON"


# -- classification ----------------------------------------------------------

class BadK(ChorocolorError):
    code = "BAD_K"


class DegenerateData(ChorocolorError):
    code = "DEGENERATE_DATA"


class TieCollapse(ChorocolorError):
    code = "TIE_COLLAPSE"


class TooFewValues(ChorocolorError):
    code = "TOO_FEW_VALUES"


class AllMethodsFailed(ChorocolorError):
    code = "ALL_METHODS_FAILED"


class ValueOutOfRange(ChorocolorError):
    code = "VALUE_OUT_OF_RANGE"


# -- color / palettes --------------------------------------------------------

class BadHex(ChorocolorError):
    code = "BAD_HEX"


class LengthMismatch(ChorocolorError):
    code = "LENGTH_MISMATCH"


class NoCandidates(ChorocolorError):
    code = "NO_CANDIDATES"


class CorruptPaletteFile(ChorocolorError):
    code = "CORRUPT_PALETTE_FILE"


# -- concepts / LLM output ---------------------------------------------------

class ConceptInvalid(ChorocolorError):
    code = "CONCEPT_INVALID"


class UnparseableResponse(ChorocolorError):
    code = "UNPARSEABLE_RESPONSE"


class BadSchemeType(ChorocolorError):
    code = "BAD_SCHEME_TYPE"


class WrongColorCount(ChorocolorError):
    code = "WRONG_COLOR_COUNT"

    def __init__(self, found: int, expected: int):
        super().__init__(f"expected {expected} colors, found {found}",
                         details={"found": found, "expected": expected})
        self.found = found
        self.expected = expected


class PatchOutOfRange(ChorocolorError):
    code = "PATCH_OUT_OF_RANGE"


# -- provider ----------------------------------------------------------------

class ProviderError(ChorocolorError):
    code = "PROVIDER_ERROR"

    def __init__(self, message: str, status: int | None = None, body: str = ""):
        super().__init__(message, details={"status": status, "body": body[:500]})
        self.status = status


class AuthFailure(ProviderError):
    code = "AUTH_FAILURE"


class RateLimited(ProviderError):
    code = "RATE_LIMITED"

    def __init__(self, message: str, retry_after: float | None = None):
        super().__init__(message, status=429)
        self.retry_after = retry_after


class ProviderTimeout(ProviderError):
    code = "TIMEOUT"

    def __init__(self, message: str):
        super().__init__(message, status=None)


class FixtureMiss(ChorocolorError):
    code = "FIXTURE_MISS"

    def __init__(self, key: str):
        super().__init__(f"no recorded response for prompt hash {key}",
                         details={"key": key})
        self.key = key


# -- session / service ---------------------------------------------------------

class StageIncomplete(ChorocolorError):
    code = "STAGE_INCOMPLETE"


class SessionNotFound(ChorocolorError):
    code = "SESSION_NOT_FOUND"
