"""Exception hierarchy.

Every error raised by the library derives from :class:`TwistorError`.
Errors caused by an input sitting on (or too close to) a singular locus
derive from :class:`SingularInputError`; the command line maps those to a
dedicated exit code.
"""


class TwistorError(ValueError):
    pass


class SingularInputError(TwistorError):
    pass


class ContractionError(TwistorError):
    """Spinors of different priming were contracted."""


class ZeroVectorError(SingularInputError):
    pass


class NotNullError(SingularInputError):
    pass


class SingularMatrixError(SingularInputError):
    pass


class DivisionBySingularJetError(SingularInputError):
    pass


class DegenerateCurveError(SingularInputError):
    pass


class GenerationExhaustedError(TwistorError):
    pass


class SingularTangentError(SingularInputError):
    pass


class NotNullTangentError(SingularInputError):
    pass


class SingularCorrespondenceError(SingularInputError):
    """The pairing of pi with its derivative vanishes, so the inverse
    correspondence is undefined."""


class InsufficientJetOrderError(TwistorError):
    pass


class DegenerateImageError(SingularInputError):
    pass


class SingularImageError(SingularInputError):
    pass


class SingularDenominatorError(SingularInputError):
    pass


class SingularPatchError(SingularInputError):
    pass


class SingularBasePointError(SingularInputError):
    pass


class DegenerateTangentError(SingularInputError):
    pass


class UnknownSuiteError(TwistorError):
    pass


class ConfigInvalidError(TwistorError):
    pass
