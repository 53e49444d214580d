"""Exception hierarchy.

Two families: ``ParameterError`` for inputs outside an operation's admissible
range (the CLI maps these to a usage failure) and ``NumericError`` for
operations that cannot produce a meaningful jet.
"""


class HyperbolaError(ValueError):
    pass


class ParameterError(HyperbolaError):
    pass


class NumericError(HyperbolaError):
    pass


# series kernel
class ZeroConstantTerm(NumericError):
    pass


class InnerConstantNonzero(NumericError):
    pass


class NotUnitConstantTerm(NumericError):
    pass


class NotNormalized(NumericError):
    pass


class OutsideDisk(ParameterError):
    pass


class NonFiniteCoefficient(NumericError):
    pass


# classes / geometry
class BadS(ParameterError):
    pass


class BadIndex(ParameterError):
    pass


class BranchCut(NumericError):
    pass


class AngleOutOfRange(ParameterError):
    pass


class OrderExceeded(ParameterError):
    pass


# search
class XOutOfRange(ParameterError):
    pass


class ParamOutOfDisk(ParameterError):
    pass


class ConfigInvalid(ParameterError):
    pass
