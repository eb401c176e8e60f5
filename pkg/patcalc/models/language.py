"""
Language descriptors selecting one of the twenty-four calculi
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import IntEnum
from itertools import product


class Synchronism(IntEnum):
    A = 0  # asynchronous
    S = 1  # synchronous

    @property
    def letter(self):
        return self.name


class Arity(IntEnum):
    M = 0  # monadic
    P = 1  # polyadic

    @property
    def letter(self):
        return self.name


class Medium(IntEnum):
    D = 0  # dataspace
    C = 1  # channels

    @property
    def letter(self):
        return self.name


class Matching(IntEnum):
    NO = 0  # binding names only
    NM = 1  # name-matching
    I = 2  # intensional

    @property
    def letter(self):
        return {Matching.NO: "O", Matching.NM: "N", Matching.I: "I"}[self]


_MATCHING_LETTERS = {"O": Matching.NO, "N": Matching.NM, "I": Matching.I}


@dataclass(frozen=True)
class LanguageDescriptor:
    """
    Coordinates (synchronism, arity, medium, matching) of a language

    Written as a four letter code such as `AMDI` or `SPCN`.
    """

    synchronism: Synchronism
    arity: Arity
    medium: Medium
    matching: Matching

    @classmethod
    def from_code(cls, code):
        """
        Parse a four letter language code

        Args:
            code (str): e.g. "AMDO", "SPCN"

        Returns:
            LanguageDescriptor: The described language

        Raises:
            ValueError: when the code is malformed
        """
        text = str(code).strip().upper()
        if len(text) != 4:
            raise ValueError(f"language code must have four letters: {code!r}")
        try:
            return cls(
                Synchronism[text[0]],
                Arity[text[1]],
                Medium[text[2]],
                _MATCHING_LETTERS[text[3]],
            )
        except KeyError:
            raise ValueError(
                f"bad language code {code!r}: expected [A|S][M|P][D|C][O|N|I]"
            ) from None

    @property
    def code(self):
        return (
            self.synchronism.letter
            + self.arity.letter
            + self.medium.letter
            + self.matching.letter
        )

    def __str__(self):
        return self.code

    @property
    def is_synchronous(self):
        return self.synchronism == Synchronism.S

    @property
    def is_polyadic(self):
        return self.arity == Arity.P

    @property
    def is_channel_based(self):
        return self.medium == Medium.C

    @property
    def is_intensional(self):
        return self.matching == Matching.I

    def leq(self, other):
        """Componentwise order: A<=S, M<=P, D<=C, NO<=NM<=I"""
        return (
            self.synchronism <= other.synchronism
            and self.arity <= other.arity
            and self.medium <= other.medium
            and self.matching <= other.matching
        )

    def with_(self, **changes):
        """Copy with some coordinates replaced"""
        return replace(self, **changes)


def leq(first, second):
    return first.leq(second)


def all_languages():
    """The twenty-four languages in code order"""
    return [
        LanguageDescriptor(s, a, m, p)
        for s, a, m, p in product(Synchronism, Arity, Medium, Matching)
    ]
