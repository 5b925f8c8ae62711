"""Exception types raised across clskit.

Every error derives from :class:`ClsKitError`; most also derive from the
builtin they specialise (``ValueError``, ``KeyError``, ...) so callers that
only know the standard library still catch them sensibly.
"""


class ClsKitError(Exception):
    """Base class for all clskit errors."""


class InvalidEncoding(ClsKitError, ValueError):
    pass


class EmptyInput(ClsKitError, ValueError):
    pass


class UnsupportedScript(ClsKitError, ValueError):
    pass


class OrphanCombiningMark(ClsKitError, ValueError):
    def __init__(self, word, index):
        self.word = word
        self.index = index
        super().__init__(
            f"combining mark U+{ord(word[index]):04X} at position {index} of "
            f"{word!r} has no base character")


class UnmappedCodepoint(ClsKitError, ValueError):
    def __init__(self, codepoint, word=None):
        self.codepoint = codepoint
        self.word = word
        msg = f"no CLS mapping for U+{ord(codepoint):04X}"
        if word is not None:
            msg += f" in {word!r}"
        super().__init__(msg)


class UnknownRuleName(ClsKitError, ValueError):
    pass


class NoNucleus(ClsKitError, ValueError):
    pass


class UnknownLabel(ClsKitError, KeyError):
    pass


class UnknownCompactChar(ClsKitError, KeyError):
    pass


class UnknownCmuPhone(ClsKitError, KeyError):
    pass


class NonLatinInput(ClsKitError, ValueError):
    pass


class EmptyCorpus(ClsKitError, ValueError):
    pass


class DegenerateCorpus(ClsKitError, ValueError):
    pass


class ModelFormatError(ClsKitError, ValueError):
    pass


class ScriptMismatch(ClsKitError, ValueError):
    pass


class VocabTooSmall(ClsKitError, ValueError):
    pass


class UnknownTokenId(ClsKitError, KeyError):
    pass


class TableFormatError(ClsKitError, ValueError):
    """A shipped or user-supplied data table is malformed."""


class FormatError(ClsKitError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)


class DuplicateUttId(FormatError):
    pass


class MissingTranslitModel(ClsKitError, KeyError):
    pass


class EmptyReference(ClsKitError, ValueError):
    pass


class WordError(ClsKitError):
    """Wraps a per-word failure with the index of the offending token."""

    def __init__(self, index, word, cause):
        self.index = index
        self.word = word
        self.cause = cause
        super().__init__(f"word {index} ({word!r}): {cause}")
