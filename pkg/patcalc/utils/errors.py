"""
Exception hierarchy shared by every part of the workbench
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors"""


class ParseError(WorkbenchError):
    """
    Raised when process, term or pattern text cannot be parsed

    Args:
        message (str): Human readable description
        line (int): 1-based line of the offending token
        column (int): 1-based column of the offending token
    """

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        if line:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ReservedNameError(ParseError):
    """A `#` name appeared in user-facing source text"""


class WellFormednessError(ParseError):
    """An input binds the same name more than once"""


class ConformanceError(WorkbenchError):
    """
    A process is not a term of the requested language

    Args:
        language: The LanguageDescriptor that was checked against
        violations (list): Violation records
    """

    def __init__(self, language, violations):
        self.language = language
        self.violations = list(violations)
        details = "; ".join(str(v) for v in self.violations)
        super().__init__(f"process does not conform to {language}: {details}")


class IllFormedPatternError(WorkbenchError):
    """Binding names repeat inside a pattern or across a pattern sequence"""


class CaptureError(WorkbenchError):
    """A substitution would capture or overwrite a binding name"""


class SubstitutionError(WorkbenchError):
    """A substitution is not admissible in the requested language"""


class StaleRedexError(WorkbenchError):
    """A redex was applied to a state it does not belong to"""


class EncodingError(WorkbenchError):
    """An encoding was applied outside its source language"""


class ImpossibleEncodingError(EncodingError):
    """No valid encoding exists between the requested languages"""


class CorpusError(WorkbenchError):
    """
    A corpus file could not be read or contains bad units

    Args:
        path (str): Corpus file path
        failures (list): (unit name, message) pairs
    """

    def __init__(self, path, failures=(), cause=None):
        self.path = str(path)
        self.failures = list(failures)
        self.cause = cause
        if cause is not None:
            message = f"cannot read corpus {self.path}: {cause}"
        else:
            listed = "; ".join(f"unit {name}: {msg}" for name, msg in self.failures)
            message = f"corpus {self.path} has bad units: {listed}"
        super().__init__(message)


class ConfigError(WorkbenchError):
    """Configuration file exists but does not validate"""
