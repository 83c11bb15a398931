"""Exception hierarchy for hdlearn.

Every error carries a short ``code`` that the CLI prints in its one-line
``error[<code>]: <message>`` format.
"""

from sklearn.exceptions import NotFittedError as _SklearnNotFittedError


class HDLearnError(Exception):
    """Base class for all hdlearn errors."""

    code = "error"


class InvalidDimensionError(HDLearnError, ValueError):
    code = "invalid-dimension"


class DimensionMismatchError(HDLearnError, ValueError):
    code = "dimension-mismatch"


class FormError(HDLearnError, ValueError):
    """Operand is not in the form (bipolar/accumulator) an operation needs."""

    code = "invalid-form"


class InvalidInputError(HDLearnError, ValueError):
    code = "invalid-input"


class ConfigurationError(HDLearnError, ValueError):
    code = "invalid-config"


class NotFittedError(HDLearnError, _SklearnNotFittedError):
    code = "not-fitted"


class StratificationError(HDLearnError, ValueError):
    code = "stratification"


class DegenerateStateError(HDLearnError, ArithmeticError):
    """Quantum bundling cancelled out completely."""

    code = "destructive-interference"


class UnknownNodeError(HDLearnError, KeyError):
    code = "unknown-node"

    def __str__(self):
        # KeyError quotes its argument; keep the message readable
        return str(self.args[0]) if self.args else ""


class SelfLoopError(HDLearnError, ValueError):
    code = "self-loop"


class DatasetError(HDLearnError, ValueError):
    code = "dataset"


class ModelFileError(HDLearnError, OSError):
    code = "model-file"


class ChecksumError(ModelFileError):
    code = "checksum"


class UnsupportedVersionError(ModelFileError):
    code = "unsupported-version"


class UnknownModelKindError(ModelFileError):
    code = "unknown-model-kind"
