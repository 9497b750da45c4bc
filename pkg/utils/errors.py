from typing import Optional
from utils.constants import ExitStatus


class TabularSchemaError(Exception):
    """Base class for every failure raised by the pipeline stages"""
    exit_status = ExitStatus.INPUT_ERROR


# ingest
class UnreadableSource(TabularSchemaError):
    pass


class EmptySource(TabularSchemaError):
    pass


class TableIndexOutOfRange(TabularSchemaError):
    def __init__(self, index: int, available: int) -> None:
        super().__init__(f"Table index {index} is out of range: the source holds {available} table(s)")
        self.index = index
        self.available = available


class RaggedRows(TabularSchemaError):
    def __init__(self, row: int, width: int, expected: int) -> None:
        super().__init__(f"Row {row} has {width} fields where the surrounding rows have {expected}")
        self.row = row
        self.width = width
        self.expected = expected


# classify
class AmbiguousStructure(TabularSchemaError):
    exit_status = ExitStatus.NORMALIZATION_FAILED

    def __init__(self, cross_score: float, super_row_score: float) -> None:
        super().__init__(
            f"Both cross (score={cross_score:.2f}) and super-row "
            f"(score={super_row_score:.2f}) structures detected"
        )
        self.cross_score = cross_score
        self.super_row_score = super_row_score


# transform
class NestedTableUnsupported(TabularSchemaError):
    exit_status = ExitStatus.NORMALIZATION_FAILED


class NormalizationFailed(TabularSchemaError):
    exit_status = ExitStatus.NORMALIZATION_FAILED

    def __init__(self, step: str, reason: str) -> None:
        super().__init__(f"Normalization step '{step}' failed: {reason}")
        self.step = step
        self.reason = reason


class NotACrossTable(TabularSchemaError):
    exit_status = ExitStatus.NORMALIZATION_FAILED


class InconsistentCompositeArity(TabularSchemaError):
    exit_status = ExitStatus.NORMALIZATION_FAILED

    def __init__(self, column: str, arities: set) -> None:
        super().__init__(f"Composed cells of column '{column}' split into {sorted(arities)} parts")
        self.column = column
        self.arities = arities


class HeaderRepairFailed(TabularSchemaError):
    exit_status = ExitStatus.NORMALIZATION_FAILED


# profile
class UnknownAttribute(TabularSchemaError):
    def __init__(self, attribute: str) -> None:
        super().__init__(f"Unknown attribute '{attribute}'")
        self.attribute = attribute


class NoCandidateMeasures(TabularSchemaError):
    exit_status = ExitStatus.NO_MEASURES


class InvalidOverrideDocument(TabularSchemaError):
    exit_status = ExitStatus.INVALID_OVERRIDES


class UnknownAttributeInFormula(InvalidOverrideDocument):
    def __init__(self, attribute: str, formula: str) -> None:
        super().__init__(f"Formula '{formula}' references unknown or non-numeric attribute '{attribute}'")
        self.attribute = attribute
        self.formula = formula


class MalformedFormula(InvalidOverrideDocument):
    def __init__(self, formula: str, offset: int, detail: Optional[str] = None) -> None:
        message = f"Malformed formula '{formula}' at offset {offset}"
        if detail:
            message += f": {detail}"
        super().__init__(message)
        self.formula = formula
        self.offset = offset


# fdmine
class TooFewRows(TabularSchemaError):
    def __init__(self, rows: int) -> None:
        super().__init__(f"FD mining needs at least 2 rows, got {rows}")
        self.rows = rows


# schema
class DuplicateDimensionName(InvalidOverrideDocument):
    def __init__(self, name: str) -> None:
        super().__init__(f"Dimension name '{name}' is used twice")
        self.name = name


class InvariantViolation(TabularSchemaError):
    exit_status = ExitStatus.NORMALIZATION_FAILED


class NonNumericMeasureValue(TabularSchemaError):
    def __init__(self, measure: str, value: str, row: int) -> None:
        super().__init__(f"Measure '{measure}' has non-numeric value '{value}' in row {row}")
        self.measure = measure
        self.value = value
        self.row = row
