from enum import Enum


class ExitStatus(Enum):
    SUCCESS = 0
    INPUT_ERROR = 1
    NO_MEASURES = 2
    NORMALIZATION_FAILED = 3
    INVALID_OVERRIDES = 4


class StatusColor(Enum):
    SUCCESS = '#4CAF50'
    INPUT_ERROR = '#f44336'
    NO_MEASURES = '#FF9800'
    NORMALIZATION_FAILED = '#f44336'
    INVALID_OVERRIDES = '#FF9800'

    @staticmethod
    def get_color(status: ExitStatus) -> str:
        """Get color for given status"""
        return StatusColor[status.name].value


class StatusFormatter:
    """Status formatting utilities"""
    STATUS_LABELS = {
        ExitStatus.SUCCESS: "Schema Generated",
        ExitStatus.INPUT_ERROR: "Input Error",
        ExitStatus.NO_MEASURES: "No Measures",
        ExitStatus.NORMALIZATION_FAILED: "Normalization Failed",
        ExitStatus.INVALID_OVERRIDES: "Invalid Override Document",
    }


# table typology
class Structure(Enum):
    LISTING = 'listing'
    HORIZONTAL = 'horizontal'
    VERTICAL = 'vertical'
    SUPER_ROW = 'super_row'
    CROSS = 'cross'


class CellContent(Enum):
    SIMPLE = 'simple'
    MERGED_CATEGORY = 'merged_category'
    MERGED_VALUE = 'merged_value'
    NESTED = 'nested'
    MULTIVALUED_SIMPLE = 'multivalued_simple'
    MULTIVALUED_COMPOSED = 'multivalued_composed'


class HeaderKind(Enum):
    NONE = 'none'
    SIMPLE = 'simple'
    HIERARCHICAL = 'hierarchical'


class HeaderArrangement(Enum):
    SINGLE = 'single'
    DISTRIBUTED = 'distributed'
    DUPLICATED = 'duplicated'


class Orientation(Enum):
    ROWS_ARE_TUPLES = 'rows_are_tuples'
    COLUMNS_ARE_TUPLES = 'columns_are_tuples'


class SourceFormat(Enum):
    CSV = 'csv'
    TSV = 'tsv'
    HTML = 'html'


class ValueType(Enum):
    EMPTY = 'empty'
    INTEGER = 'integer'
    FLOAT = 'float'
    DATE = 'date'
    TEXT = 'text'

    @property
    def is_numeric(self) -> bool:
        return self in (ValueType.INTEGER, ValueType.FLOAT)


# profiling / schema
class ColumnKind(Enum):
    IDENTIFIER = 'identifier'
    BOOLEAN = 'boolean'
    NOMINAL = 'nominal'
    ORDINAL = 'ordinal'
    INTERVAL = 'interval'
    RATIO = 'ratio'
    TEMPORAL_YEAR = 'temporal_year'
    TEMPORAL_DATE = 'temporal_date'
    TEXT = 'text'


class Aggregation(Enum):
    SUM = 'sum'
    AVG = 'avg'
    MIN = 'min'
    MAX = 'max'
    COUNT = 'count'


class MeasureOrigin(Enum):
    AUTO = 'auto'
    USER = 'user'


class OverrideAction(Enum):
    ADD = 'add'
    REMOVE = 'remove'
    REPLACE = 'replace'


class PipelineStage(Enum):
    """Last stage a pipeline run executes; ordered"""
    CLASSIFY = 1
    NORMALIZE = 2
    FDS = 3
    SCHEMA = 4
    POPULATE = 5


# stages
class IngestConstants:
    DELIMITER_PREFERENCE = (',', ';', '\t', '|')
    SNIFF_LINES = 20
    QUOTE_CHARACTER = '"'
    ENCODINGS = ('UTF-8', 'Latin-1')
    RAGGED_BLOCK_MIN_ROWS = 3


class ClassifyConstants:
    MULTIVALUE_DELIMITERS = ',;/|'
    MAX_HEADER_ROWS = 3
    CORNER_SEPARATOR = '/'


class TransformConstants:
    FILL_DOWN_DISTINCT_RATIO = 0.5
    NAME_JOINER = '_'
    SYNTHETIC_COLUMN_PREFIX = 'col_'
    SUPER_ROW_PREFIX = 'super_row_'
    DEFAULT_ROW_DIM = 'row'
    DEFAULT_COL_DIM = 'column'
    DEFAULT_VALUE = 'value'


class ProfileConstants:
    BOOLEAN_TOKENS = frozenset({'0', '1', 'true', 'false', 'yes', 'no'})
    # matched case-insensitively: idCustomer, customer_id, productid, ID
    ID_PATTERN = r'(^|[_ ])id($|[_ ])|^id|id$'
    YEAR_RANGE = (1300, 2100)
    NUMERIC_FRACTION = 0.95
    NOMINAL_DISTINCT_RATIO = 0.5
    ORDINAL_SCALES = (
        ('low', 'medium', 'high'),
        ('very low', 'low', 'medium', 'high', 'very high'),
        ('small', 'medium', 'large'),
        ('poor', 'fair', 'good', 'very good', 'excellent'),
        ('never', 'rarely', 'sometimes', 'often', 'always'),
        ('strongly disagree', 'disagree', 'neutral', 'agree', 'strongly agree'),
        ('bronze', 'silver', 'gold'),
    )
    ROW_COUNT_MEASURE = 'row_count'
    AUTO_AGGREGATIONS = (Aggregation.SUM, Aggregation.AVG, Aggregation.MIN, Aggregation.MAX)


class FDConstants:
    DEFAULT_THRESHOLD = 0.0
    BRUTE_FORCE_MAX_ATTRIBUTES = 10
    BRUTE_FORCE_MAX_ROWS = 1000


class SchemaConstants:
    DEFAULT_SCHEMA_NAME = 'schema'
    DEFAULT_FACT_NAME = 'F1'
    HIERARCHY_PREFIX = 'H'
    DIMENSION_PREFIX = 'D'
    DDL_ATTRIBUTE_TYPE = 'VARCHAR(255)'
    DDL_MEASURE_TYPE = 'DOUBLE PRECISION'
    DDL_COUNT_TYPE = 'BIGINT'
    DDL_FILE = 'star.sql'


# app
class AppConstants:
    WINDOW_TITLE = "Tabular Schema Inspector"
    WINDOW_SIZE = (1000, 760)
    TITLE_FONT_SIZE = 16
    BUTTON_HEIGHT = 40
    BUTTON_FONT_SIZE = 12
    LAYOUT_SPACING = 15
    LAYOUT_MARGINS = 15


# input widget
class InputWidgetConstants:
    MAX_TABLE_INDEX = 99
    SPINBOX_WIDTH = 100
    PATH_INPUT_MIN_WIDTH = 420
    SHORT_INPUT_WIDTH = 120
    LABEL_WIDTH = 140


# result widget
class ResultWidgetConstants:
    MIN_PREVIEW_HEIGHT = 220
    REPORT_HEIGHT = 200
    PREVIEW_ROWS = 50
