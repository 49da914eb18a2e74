"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for malformed input, 3 for an unsuitable quantum state, 4 for size caps.
"""

from __future__ import annotations


class PartLogicError(Exception):
    exit_code = 2


class InputError(PartLogicError, ValueError):
    """Malformed or inconsistent input."""


class OverlapError(InputError):
    pass


class CoverError(InputError):
    pass


class EmptyBlockError(InputError):
    pass


class UniverseMismatch(InputError):
    pass


class AtomNotInUniverse(InputError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class InvalidDistribution(InputError):
    pass


class MissingDistance(InputError):
    pass


class EmptySupport(InputError):
    pass


class ZeroProbability(InputError):
    pass


class NonPositiveProbability(InputError):
    pass


class InvalidDensityMatrix(InputError):
    pass


class RankDeficientBasis(InputError):
    pass


class MissingTheta(InputError):
    pass


class ThetaSumMismatch(InputError):
    pass


class StateError(PartLogicError):
    exit_code = 3


class NotPureState(StateError):
    pass


class ExclusionViolated(StateError):
    """A Fermi-Dirac probability was requested with more balls than boxes."""


class SizeCapExceeded(PartLogicError):
    exit_code = 4
