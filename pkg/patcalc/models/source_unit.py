"""
Named process together with the language it is written in
"""

from dataclasses import dataclass

from patcalc.models.language import LanguageDescriptor
from patcalc.models.process import Process


@dataclass(frozen=True)
class SourceUnit:
    """
    One entry of a corpus

    Attributes:
        language (LanguageDescriptor): Language the body is a term of
        name (str): Unique name within its corpus
        body (Process): The process itself
    """

    language: LanguageDescriptor
    name: str
    body: Process

    def __str__(self):
        from patcalc.syntax.printer import pretty

        return f"unit {self.name} @ {self.language.code} := {pretty(self.body)}"

    def with_body(self, body, language=None):
        return SourceUnit(language or self.language, self.name, body)
