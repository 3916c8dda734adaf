"""Exception hierarchy shared by all ontotag modules.

Two branches matter for callers: ParseError covers malformed input files
(CLI exit code 2), DomainError covers violated domain contracts (CLI exit
code 3, HTTP 4xx). Every concrete class carries a stable machine-readable
``code`` used verbatim on the wire by the HTTP service.
"""

from __future__ import annotations


class OntotagError(Exception):
    code = "internal"


class ParseError(OntotagError):
    """Malformed input file or stream."""

    code = "parse_error"


class MalformedLine(ParseError):
    code = "malformed_line"

    def __init__(self, line_no: int, reason: str, source: str = ""):
        self.line_no = line_no
        self.reason = reason
        self.source = source
        where = f"{source}:{line_no}" if source else f"line {line_no}"
        super().__init__(f"{where}: {reason}")


class MalformedRecord(ParseError):
    code = "malformed_record"

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"record at line {line_no}: {reason}")


class DanglingPointer(ParseError):
    code = "dangling_pointer"

    def __init__(self, source_id, target_id):
        self.source_id = source_id
        self.target_id = target_id
        super().__init__(f"relation from {source_id} targets unknown synset {target_id}")


class DuplicateOffset(ParseError):
    code = "duplicate_offset"

    def __init__(self, synset_id):
        self.synset_id = synset_id
        super().__init__(f"synset {synset_id} defined more than once")


class ScoreOutOfRange(ParseError):
    code = "score_out_of_range"

    def __init__(self, score: float):
        self.score = score
        super().__init__(f"similarity score {score!r} outside [0, 1]")


class DomainError(OntotagError):
    """A domain contract was violated by the caller or the stored data."""


class UnknownSynset(DomainError):
    code = "unknown_synset"


class UnknownSense(DomainError):
    code = "unknown_sense"


class UnknownImage(DomainError):
    code = "unknown_image"


class WeightOutOfRange(DomainError):
    code = "weight_out_of_range"

    def __init__(self, weight: float):
        self.weight = weight
        super().__init__(f"tag weight {weight!r} outside [0, 1]")


class EmotionOutOfRange(DomainError):
    code = "emotion_out_of_range"

    def __init__(self, component: str, value: float):
        self.component = component
        self.value = value
        super().__init__(f"emotion {component}={value!r} outside [1, 9]")


class EmptyRatings(DomainError):
    code = "empty_ratings"


class TooFewSenses(DomainError):
    code = "too_few_senses"

    def __init__(self, found: int):
        self.found = found
        super().__init__(f"image needs at least 3 distinct senses, found {found}")


class UncommittedImage(DomainError):
    code = "uncommitted_image"


class InsufficientRaters(DomainError):
    code = "insufficient_raters"

    def __init__(self, found: int):
        self.found = found
        super().__init__(f"agreement needs at least 2 raters, found {found}")


class EmptyQuery(DomainError):
    code = "empty_query"


class InvalidRange(DomainError):
    code = "invalid_range"


class InvalidK(DomainError):
    code = "invalid_k"


class EmptyJudgment(DomainError):
    code = "empty_judgment"


class InvalidSpec(DomainError):
    code = "invalid_spec"
