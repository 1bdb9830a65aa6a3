from __future__ import annotations

from typing import Optional, Sequence

from click.exceptions import ClickException, UsageError

DATA_ERROR_EXIT_CODE = 3
NUMERICAL_ERROR_EXIT_CODE = 4


class DataError(ClickException):
    """Input data cannot be used as given."""

    exit_code = DATA_ERROR_EXIT_CODE


class NumericalError(ClickException):
    """A numerical routine could not produce a valid result."""

    exit_code = NUMERICAL_ERROR_EXIT_CODE


class InvalidConfigurationError(UsageError):
    def __init__(self, message: str):
        super().__init__(f"Invalid configuration. {message}")


class UnsupportedConfigSectionTypeError(Exception):
    def __init__(self, section_type: type):
        super().__init__(f"Unsupported configuration section type {section_type}")


class DimensionMismatchError(DataError):
    def __init__(self, expected: int, actual: int, what: str = "coefficient vector"):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"Dimension mismatch: {what} has {actual} entries but the data has d={expected}"
        )


class InvalidDatasetError(DataError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Invalid dataset: {reason}")


class EmptyDatasetError(DataError):
    def __init__(self, what: str = "dataset"):
        super().__init__(f"The {what} has no rows")


class MissingLabelColumnError(DataError):
    def __init__(self, path: str, label_column: str):
        self.path = path
        self.label_column = label_column
        super().__init__(f"File {path} has no label column named '{label_column}'")


class NonNumericCellError(DataError):
    def __init__(self, row: int, column: str, value: str):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(
            f"Non-numeric or non-finite value {value!r} at row {row}, column {column}"
        )


class MixedLabelAlphabetError(DataError):
    def __init__(self, values: Sequence[float]):
        self.values = sorted(set(values))
        super().__init__(
            f"Labels must use either {{-1, +1}} or {{0, 1}}, found {self.values}"
        )


class DegenerateSplitError(DataError):
    def __init__(self, n: int, train_size: int):
        self.n = n
        self.train_size = train_size
        super().__init__(
            f"Cannot split {n} rows into non-empty parts (train size would be {train_size})"
        )


class InvalidScenarioError(DataError):
    def __init__(self, reason: str):
        super().__init__(f"Invalid scenario: {reason}")


class OutsideSupportError(NumericalError):
    def __init__(self, l1_norm: float, c1: float):
        self.l1_norm = l1_norm
        self.c1 = c1
        super().__init__(
            f"Point is outside the prior support: ||beta||_1 = {l1_norm:.6g} > C1 = {c1:.6g}"
        )


class RejectionBudgetExceededError(NumericalError):
    def __init__(self, attempts: int, c1: float, tau: float, d: int):
        self.attempts = attempts
        super().__init__(
            f"Prior sampling gave up after {attempts} rejected draws: "
            f"C1={c1:.6g} is too small for tau={tau:.6g} and d={d}"
        )


class NonFiniteGradientError(NumericalError):
    def __init__(self, where: str = "initial point"):
        super().__init__(f"Gradient of the log-density is not finite at the {where}")


class NonFiniteObjectiveError(NumericalError):
    def __init__(self, iteration: int):
        self.iteration = iteration
        super().__init__(
            f"Objective became non-finite at iteration {iteration}; "
            "standardize the features before fitting"
        )


class InvalidSamplerConfigError(UsageError):
    def __init__(self, reason: str):
        super().__init__(f"Invalid sampler configuration: {reason}")


class AllFoldsDegenerateError(NumericalError):
    def __init__(self, folds: int):
        self.folds = folds
        super().__init__(
            f"All {folds} cross-validation folds have a single-class training part"
        )


class EmptyChainError(NumericalError):
    def __init__(self):
        super().__init__("Chain has no draws after burn-in")


class ModelFileError(DataError):
    def __init__(self, path: str, reason: Optional[str] = None):
        message = f"Cannot read model file {path}"
        if reason:
            message += f": {reason}"
        super().__init__(message)


class InvalidDefinitionError(UsageError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"Invalid benchmark definition {path}: {reason}")


class CommandReturnTypeError(ClickException):
    def __init__(self, got_type: type):
        super().__init__(f"Commands have to return a CommandResult, but got {got_type}")
