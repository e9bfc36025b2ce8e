"""Exception hierarchy shared across the package."""

from __future__ import annotations


class SignforgeError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidArgumentError(SignforgeError, ValueError):
    """An argument violated an operation's precondition."""


class GimbalLockError(SignforgeError):
    """Orientation too close to the yaw-pitch-roll singularity to decompose."""


class UnknownHandshapeError(SignforgeError, KeyError):
    """Handshape name not present in the active inventory."""

    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"unknown handshape {self.name!r}"


class LexiconParseError(SignforgeError):
    """Malformed lexicon XML."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        base = super().__str__()
        if self.line is not None:
            return f"{base} (line {self.line}, column {self.column})"
        return base


class LexiconValidationError(SignforgeError):
    """Lexicon structure violates an invariant; carries all diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class CompoundExpansionError(SignforgeError):
    """Compound sign expansion hit a cycle or exceeded the depth limit."""

    def __init__(self, message: str, chain: tuple[str, ...] = ()):
        super().__init__(message)
        self.chain = chain

    def __str__(self) -> str:
        base = super().__str__()
        if self.chain:
            return f"{base} [{' -> '.join(self.chain)}]"
        return base


class MissingLocusError(SignforgeError):
    """A placeholder anchor had no override point to resolve to."""

    def __init__(self, placeholder: str, gloss: str):
        super().__init__(f"sign {gloss!r}: no point supplied for {placeholder}")
        self.placeholder = placeholder
        self.gloss = gloss


class TrackConflictError(SignforgeError):
    """Two documents key the same joint over overlapping time intervals."""

    def __init__(self, joint: str, interval: tuple[float, float]):
        super().__init__(
            f"joint {joint!r} keyed by both documents over "
            f"[{interval[0]:.3f}, {interval[1]:.3f}] s"
        )
        self.joint = joint
        self.interval = interval


class LociCapacityError(SignforgeError):
    """More new discourse referents than free signing-space slots."""


class UnspellableWordError(SignforgeError):
    """A letter of the word has no fingerspelling sign in the alphabet."""

    def __init__(self, letter: str, word: str):
        super().__init__(f"letter {letter!r} of {word!r} is not in the alphabet")
        self.letter = letter
        self.word = word


class PlanningError(SignforgeError):
    """Sentence planning could not produce a complete sign sequence."""


class TranslationStageError(SignforgeError):
    """Wraps a failure inside translate(), tagged with the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause
