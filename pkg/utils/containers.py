from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from utils.constants import (
    Aggregation, CellContent, ColumnKind, ExitStatus, HeaderArrangement, HeaderKind,
    IngestConstants, MeasureOrigin, OverrideAction, ProfileConstants, SourceFormat, Structure
)
from utils.errors import InvariantViolation
from utils.validators import InputValidator


# ingest
@dataclass(frozen=True)
class Dialect:
    """How a delimited source was read"""
    field_delimiter: str
    quote_character: str = IngestConstants.QUOTE_CHARACTER
    encoding: str = 'UTF-8'
    has_bom: bool = False

    def __post_init__(self) -> None:
        if len(self.field_delimiter) != 1 or len(self.quote_character) != 1:
            raise ValueError("Delimiter and quote character must be single characters")
        if self.field_delimiter == self.quote_character:
            raise ValueError("Delimiter and quote character must differ")
        if self.encoding not in IngestConstants.ENCODINGS:
            raise ValueError(f"Unsupported encoding '{self.encoding}'")


@dataclass(frozen=True)
class Cell:
    """One grid position; merged HTML cells are replicated with their span recorded"""
    text: str = ''
    row_span: int = 1
    col_span: int = 1
    has_nested_table: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, 'text', self.text.strip())
        if self.row_span < 1 or self.col_span < 1:
            raise ValueError("Cell spans must be positive")

    @property
    def is_empty(self) -> bool:
        return self.text == ''

    @property
    def is_spanned(self) -> bool:
        return self.row_span > 1 or self.col_span > 1


EMPTY_CELL = Cell()


@dataclass(frozen=True)
class RawGrid:
    """Rectangular grid of cells before any interpretation"""
    cells: Tuple[Tuple[Cell, ...], ...]
    source_name: str = ''
    origin: Tuple[int, int] = (0, 0)
    dialect: Optional[Dialect] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.cells or not self.cells[0]:
            raise ValueError("A grid needs at least one row and one column")
        width = len(self.cells[0])
        if any(len(row) != width for row in self.cells):
            raise ValueError("Grid rows must all have the same width")

    @classmethod
    def from_texts(cls, rows: Sequence[Sequence[str]], source_name: str = '',
                   origin: Tuple[int, int] = (0, 0), dialect: Optional[Dialect] = None) -> 'RawGrid':
        """Build a grid of 1x1 cells, padding short rows with empty cells"""
        width = max((len(row) for row in rows), default=0)
        cells = tuple(
            tuple(Cell(str(text)) for text in row) + (EMPTY_CELL,) * (width - len(row))
            for row in rows
        )
        return cls(cells=cells, source_name=source_name, origin=origin, dialect=dialect)

    @property
    def n_rows(self) -> int:
        return len(self.cells)

    @property
    def n_cols(self) -> int:
        return len(self.cells[0])

    def texts(self) -> List[List[str]]:
        return [[cell.text for cell in row] for row in self.cells]

    def row_texts(self, i: int) -> List[str]:
        return [cell.text for cell in self.cells[i]]

    def column_texts(self, j: int) -> List[str]:
        return [row[j].text for row in self.cells]

    def nonempty_mask(self) -> np.ndarray:
        return np.array([[not cell.is_empty for cell in row] for row in self.cells], dtype=bool)

    def has_spans(self) -> bool:
        return any(cell.is_spanned for row in self.cells for cell in row)

    def transpose(self) -> 'RawGrid':
        cells = tuple(
            tuple(Cell(c.text, c.col_span, c.row_span, c.has_nested_table) for c in column)
            for column in zip(*self.cells)
        )
        return RawGrid(cells, self.source_name, (self.origin[1], self.origin[0]), self.dialect)

    def sub_grid(self, r0: int, r1: int, c0: int, c1: int) -> 'RawGrid':
        """Half-open window [r0, r1) x [c0, c1), origin shifted accordingly"""
        cells = tuple(row[c0:c1] for row in self.cells[r0:r1])
        origin = (self.origin[0] + r0, self.origin[1] + c0)
        return RawGrid(cells, self.source_name, origin, self.dialect)


@dataclass(frozen=True)
class TableTypology:
    """Position of a table on the structure, cell-content and header axes"""
    structure: Structure
    cell_content: FrozenSet[CellContent]
    header: HeaderKind
    header_arrangement: HeaderArrangement = HeaderArrangement.SINGLE
    header_rows: int = 0            # header depth, counted on the tuple-oriented reading
    block_width: Optional[int] = None  # distributed header block width

    def __post_init__(self) -> None:
        if not self.cell_content:
            raise ValueError("cell_content must not be empty")
        if CellContent.SIMPLE in self.cell_content and len(self.cell_content) > 1:
            raise ValueError("simple cell content excludes every other cell kind")
        if self.header == HeaderKind.NONE and self.header_rows:
            raise ValueError("a headerless table has no header rows")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'structure': self.structure.value,
            'cell_content': sorted(kind.value for kind in self.cell_content),
            'header': self.header.value,
            'header_arrangement': self.header_arrangement.value,
        }


# transform
@dataclass(frozen=True)
class TransformStep:
    """One applied normalization step and the parameters needed to replay it"""
    name: str
    params: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'step': self.name, 'params': self.params}


@dataclass(frozen=True)
class Provenance:
    source_name: str
    steps: Tuple[TransformStep, ...] = ()

    def with_step(self, step: TransformStep) -> 'Provenance':
        return Provenance(self.source_name, self.steps + (step,))


@dataclass(frozen=True)
class CanonicalTable:
    """Normalized one-dimensional horizontal table"""
    attributes: Tuple[str, ...]
    rows: Tuple[Tuple[str, ...], ...]
    provenance: Provenance = field(default_factory=lambda: Provenance(''))

    def __post_init__(self) -> None:
        if not self.attributes:
            raise ValueError("A canonical table needs at least one attribute")
        if any(not name for name in self.attributes):
            raise ValueError("Attribute names must be non-empty")
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError(f"Attribute names must be unique: {list(self.attributes)}")
        width = len(self.attributes)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"Row {i} has {len(row)} values, expected {width}")
            if not any(row):
                raise ValueError(f"Row {i} is fully empty")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def index_of(self, attribute: str) -> int:
        return self.attributes.index(attribute)

    def column(self, attribute: str) -> List[str]:
        j = self.index_of(attribute)
        return [row[j] for row in self.rows]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(list(self.rows), columns=list(self.attributes), dtype=object)


@dataclass(frozen=True)
class HierarchyHint:
    """Attribute names from coarse to fine, harvested from stacked headers"""
    levels: Tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.levels) < 2:
            raise ValueError("A hierarchy hint needs at least two levels")


# profile
@dataclass(frozen=True)
class ColumnProfile:
    attribute: str
    kind: ColumnKind
    distinct_count: int
    null_count: int
    numeric_fraction: float
    row_count: int
    minimum: Optional[float] = None
    maximum: Optional[float] = None

    def __post_init__(self) -> None:
        if self.distinct_count > self.row_count:
            raise ValueError("distinct_count cannot exceed the row count")
        if (self.kind in (ColumnKind.INTERVAL, ColumnKind.RATIO)
                and self.numeric_fraction < ProfileConstants.NUMERIC_FRACTION):
            raise ValueError("interval and ratio columns must be numeric")

    @property
    def is_numeric(self) -> bool:
        return self.numeric_fraction >= ProfileConstants.NUMERIC_FRACTION


@dataclass(frozen=True)
class MeasureSpec:
    """A fact measure: a source attribute, a derived formula or the row count"""
    name: str
    aggregations: Tuple[Aggregation, ...]
    attribute: Optional[str] = None
    formula: Optional[str] = None
    origin: MeasureOrigin = MeasureOrigin.AUTO

    def __post_init__(self) -> None:
        if not self.aggregations:
            raise ValueError(f"Measure '{self.name}' needs at least one aggregation")
        if self.formula is not None and self.origin != MeasureOrigin.USER:
            raise ValueError("Derived measures can only come from the user")
        order = list(Aggregation)
        object.__setattr__(self, 'aggregations',
                           tuple(sorted(set(self.aggregations), key=order.index)))

    def output_columns(self) -> List[Tuple[Aggregation, str]]:
        """Fact table column per aggregation, named <measure>_<aggregation>"""
        return [(agg, f"{self.name}_{agg.value}") for agg in self.aggregations]


@dataclass(frozen=True)
class MeasureOverride:
    action: OverrideAction
    attribute: Optional[str] = None
    name: Optional[str] = None
    formula: Optional[str] = None
    aggregations: Tuple[Aggregation, ...] = ()

    @property
    def target(self) -> str:
        return self.name or self.attribute


@dataclass(frozen=True)
class OverrideDocument:
    measures: Tuple[MeasureOverride, ...] = ()
    dimension_names: Dict[str, str] = field(default_factory=dict)
    schema_name: Optional[str] = None
    fact_name: Optional[str] = None


# fdmine
@dataclass(frozen=True, order=True)
class FunctionalDependency:
    """Unary dependency lhs -> rhs with its g3 error"""
    lhs: str
    rhs: str
    error: float = 0.0

    def __post_init__(self) -> None:
        if self.lhs == self.rhs:
            raise ValueError(f"Trivial dependency {self.lhs} -> {self.rhs}")
        if not 0.0 <= self.error <= 1.0:
            raise ValueError(f"g3 error must lie in [0, 1], got {self.error}")

    @property
    def pair(self) -> Tuple[str, str]:
        return self.lhs, self.rhs

    def __str__(self) -> str:
        return f"{self.lhs} -> {self.rhs} (error={self.error:.4f})"


@dataclass(frozen=True)
class StrippedPartition:
    """Row groups of size >= 2 sharing a value of one attribute"""
    attribute: str
    groups: Tuple[Tuple[int, ...], ...]
    n_rows: int
    labels: np.ndarray = field(compare=False, repr=False, default=None)

    def __post_init__(self) -> None:
        if self.labels is not None:
            if self.labels.shape != (self.n_rows,):
                raise ValueError("Partition labels must cover every row")
            return
        labels = np.full(self.n_rows, -1, dtype=np.int64)
        for g, group in enumerate(self.groups):
            if len(group) < 2:
                raise ValueError("Stripped partitions keep only groups of size >= 2")
            idx = np.asarray(group, dtype=np.int64)
            if idx.max() >= self.n_rows or (labels[idx] != -1).any():
                raise ValueError("Partition groups must be disjoint row indices")
            labels[idx] = g
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def from_codes(cls, attribute: str, codes: np.ndarray) -> 'StrippedPartition':
        """
        Build the partition from per-row value codes.
        Args:
            attribute: Attribute the codes belong to
            codes: Integer code per row, -1 for a missing value
        Returns:
            StrippedPartition with singleton groups and missing rows stripped
        """
        n_rows = len(codes)
        counts = np.bincount(codes[codes >= 0]) if (codes >= 0).any() else np.zeros(0, dtype=np.int64)
        kept = np.flatnonzero(counts >= 2)
        relabel = np.full(len(counts), -1, dtype=np.int64)
        relabel[kept] = np.arange(len(kept))
        labels = np.where(codes >= 0, relabel[np.clip(codes, 0, None)] if len(counts) else -1, -1)
        rows = np.flatnonzero(labels >= 0)
        order = rows[np.argsort(labels[rows], kind='stable')]
        bounds = np.cumsum(counts[kept])[:-1]
        groups = tuple(tuple(int(i) for i in chunk) for chunk in np.split(order, bounds)) if len(kept) else ()
        return cls(attribute, groups, n_rows, labels.astype(np.int64))

    @property
    def stripped_size(self) -> int:
        return sum(len(group) for group in self.groups)


# schema
@dataclass(frozen=True)
class DependencyNode:
    """A class representative and the weak attributes collapsed into it"""
    parameter: str
    weak_attributes: Tuple[str, ...] = ()

    @property
    def attributes(self) -> Tuple[str, ...]:
        return (self.parameter,) + self.weak_attributes


@dataclass(frozen=True)
class DependencyGraph:
    nodes: Tuple[DependencyNode, ...]
    edges: Tuple[Tuple[str, str], ...]

    def __post_init__(self) -> None:
        names = {node.parameter for node in self.nodes}
        for lhs, rhs in self.edges:
            if lhs not in names or rhs not in names:
                raise InvariantViolation(f"Edge {lhs} -> {rhs} has an endpoint outside the graph")
        sorter = TopologicalSorter({name: set() for name in names})
        for lhs, rhs in self.edges:
            sorter.add(rhs, lhs)
        try:
            tuple(sorter.static_order())
        except CycleError as e:
            raise InvariantViolation(f"Dependency graph is cyclic after collapse: {e.args[1]}")

    def node(self, parameter: str) -> DependencyNode:
        return next(node for node in self.nodes if node.parameter == parameter)

    def successors(self, parameter: str) -> List[str]:
        return sorted(rhs for lhs, rhs in self.edges if lhs == parameter)

    def roots(self) -> List[str]:
        targets = {rhs for _, rhs in self.edges}
        return sorted(node.parameter for node in self.nodes if node.parameter not in targets)


@dataclass(frozen=True)
class Level:
    parameter: str
    weak_attributes: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Hierarchy:
    name: str
    levels: Tuple[Level, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError(f"Hierarchy '{self.name}' has no level")
        parameters = [level.parameter for level in self.levels]
        if len(set(parameters)) != len(parameters):
            raise ValueError(f"Hierarchy '{self.name}' repeats a parameter")

    @property
    def root(self) -> str:
        return self.levels[0].parameter

    @property
    def path(self) -> Tuple[str, ...]:
        return tuple(level.parameter for level in self.levels)

    @property
    def attributes(self) -> FrozenSet[str]:
        return frozenset(a for level in self.levels for a in (level.parameter,) + level.weak_attributes)


@dataclass(frozen=True)
class Dimension:
    name: str
    attributes: Tuple[str, ...]
    hierarchies: Tuple[Hierarchy, ...]

    def __post_init__(self) -> None:
        if not self.hierarchies:
            raise InvariantViolation(f"Dimension '{self.name}' has no hierarchy")
        if len({h.root for h in self.hierarchies}) != 1:
            raise InvariantViolation(f"Hierarchies of dimension '{self.name}' do not share a root")
        covered = frozenset().union(*(h.attributes for h in self.hierarchies))
        if covered != frozenset(self.attributes):
            raise InvariantViolation(f"Attributes of dimension '{self.name}' differ from its hierarchies")
        object.__setattr__(self, 'attributes', tuple(sorted(self.attributes)))

    @property
    def root(self) -> str:
        return self.hierarchies[0].root


@dataclass(frozen=True)
class Fact:
    name: str
    measures: Tuple[MeasureSpec, ...]

    def __post_init__(self) -> None:
        if not self.measures:
            raise InvariantViolation(f"Fact '{self.name}' has no measure")
        names = [m.name for m in self.measures]
        if len(set(names)) != len(names):
            raise InvariantViolation(f"Fact '{self.name}' repeats a measure name")


@dataclass(frozen=True)
class MultidimensionalSchema:
    name: str
    fact: Fact
    dimensions: Tuple[Dimension, ...]

    def __post_init__(self) -> None:
        if not self.dimensions:
            raise InvariantViolation("A schema needs at least one dimension")
        seen: Dict[str, str] = {}
        for dimension in self.dimensions:
            for attribute in dimension.attributes:
                if attribute in seen:
                    raise InvariantViolation(
                        f"Attribute '{attribute}' is claimed by dimensions "
                        f"'{seen[attribute]}' and '{dimension.name}'"
                    )
                seen[attribute] = dimension.name
        for measure in self.fact.measures:
            if measure.attribute in seen:
                raise InvariantViolation(f"Measure attribute '{measure.attribute}' appears in a dimension")

    @property
    def hierarchies(self) -> List[Hierarchy]:
        return [h for d in self.dimensions for h in d.hierarchies]


@dataclass
class StarTables:
    """Populated star: one frame per dimension, one fact frame, DDL script"""
    fact_name: str
    fact: pd.DataFrame
    dimensions: Dict[str, pd.DataFrame]
    ddl: str


# cli
@dataclass(frozen=True)
class PipelineConfig:
    input_path: Path
    format_hint: Optional[SourceFormat] = None
    fd_threshold: float = 0.0
    delimiters: str = ',;/|'
    override_path: Optional[Path] = None
    schema_out: Optional[Path] = None
    normalized_out: Optional[Path] = None
    ddl_out: Optional[Path] = None
    populate_dir: Optional[Path] = None
    table_index: int = 0

    def __post_init__(self) -> None:
        InputValidator.validate_threshold(self.fd_threshold, "FD threshold")
        InputValidator.validate_delimiters(self.delimiters)
        InputValidator.validate_non_negative(self.table_index, "Table index")


@dataclass
class PipelineResult:
    """Everything one pipeline run produced, successful or not"""
    status: ExitStatus
    report: List[str] = field(default_factory=list)
    typology: Optional[TableTypology] = None
    table: Optional[CanonicalTable] = None
    hints: List[HierarchyHint] = field(default_factory=list)
    profiles: List[ColumnProfile] = field(default_factory=list)
    measures: List[MeasureSpec] = field(default_factory=list)
    fds: List[FunctionalDependency] = field(default_factory=list)
    cover: List[FunctionalDependency] = field(default_factory=list)
    equivalence_classes: List[FrozenSet[str]] = field(default_factory=list)
    graph: Optional[DependencyGraph] = None
    hierarchies: List[Hierarchy] = field(default_factory=list)
    schema: Optional[MultidimensionalSchema] = None
    star: Optional[StarTables] = None
    error_message: Optional[str] = None

    @property
    def is_success(self) -> bool:
        return self.status == ExitStatus.SUCCESS
