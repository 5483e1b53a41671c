"""Exception hierarchy.

Errors split into two families so the command line can map them to exit
codes: ``ConfigError`` subclasses are caller mistakes (bad parameters,
malformed files), ``NumericFailure`` subclasses mean the computation itself
could not produce a meaningful answer.
"""


class TfSynthError(Exception):
    pass


class ConfigError(TfSynthError, ValueError):
    pass


class NumericFailure(TfSynthError, ArithmeticError):
    pass


class NonPowerOfTwo(ConfigError):
    pass


class NonPositiveSpan(ConfigError):
    pass


class WrongDomain(ConfigError):
    pass


class AxisMismatch(ConfigError):
    pass


class ShiftExceedsGrid(ConfigError):
    pass


class BadAxisIndex(ConfigError):
    pass


class NonPositiveInput(ConfigError):
    pass


class NegativeFwhm(ConfigError):
    pass


class DegenerateX(ConfigError):
    pass


class ParseError(ConfigError):
    pass


class ZeroField(NumericFailure):
    pass


class NoPeaks(NumericFailure):
    pass


class EmptyWaveform(NumericFailure):
    pass


class FitDegenerate(NumericFailure):
    pass


class NotConverged(NumericFailure):
    pass
