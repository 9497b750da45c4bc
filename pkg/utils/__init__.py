from .constants import (
    Aggregation, AppConstants, CellContent, ClassifyConstants, ColumnKind, ExitStatus,
    FDConstants, HeaderArrangement, HeaderKind, IngestConstants, InputWidgetConstants,
    MeasureOrigin, Orientation, OverrideAction, PipelineStage, ProfileConstants, ResultWidgetConstants,
    SchemaConstants, SourceFormat, StatusColor, StatusFormatter, Structure,
    TransformConstants, ValueType
)
from .errors import (
    AmbiguousStructure, DuplicateDimensionName, EmptySource, HeaderRepairFailed,
    InconsistentCompositeArity, InvalidOverrideDocument, InvariantViolation, MalformedFormula,
    NestedTableUnsupported, NoCandidateMeasures, NonNumericMeasureValue, NormalizationFailed,
    NotACrossTable, RaggedRows, TableIndexOutOfRange, TabularSchemaError, TooFewRows, UnknownAttribute,
    UnknownAttributeInFormula, UnreadableSource
)
from .validators import InputValidator
from .containers import (
    CanonicalTable, Cell, ColumnProfile, DependencyGraph, DependencyNode, Dialect, Dimension,
    Fact, FunctionalDependency, Hierarchy, HierarchyHint, Level, MeasureOverride, MeasureSpec,
    MultidimensionalSchema, OverrideDocument, PipelineConfig, PipelineResult, Provenance,
    RawGrid, StarTables, StrippedPartition, TableTypology, TransformStep
)
from .value_parser import ValueParser
from .interfaces import (
    IColumnProfiler, IFDMiner, ISchemaBuilder, ISourceReader, IStarPopulator,
    ITableClassifier, ITableNormalizer
)
from .formatters import ReportFormatter, SqlFormatter
from .serializers import OverrideReader, SchemaSerializer, TableSerializer
