from abc import ABC, abstractmethod
from typing import AbstractSet, Dict, List, Optional, Tuple

from utils.constants import Orientation, SourceFormat
from utils.containers import (
    CanonicalTable, ColumnProfile, DependencyGraph, Dimension, FunctionalDependency,
    Hierarchy, HierarchyHint, MeasureSpec, MultidimensionalSchema, OverrideDocument,
    RawGrid, StarTables, TableTypology
)


class ISourceReader(ABC):
    """Class-interface for reading raw sources into grids."""
    @abstractmethod
    def read_source(self, data: bytes, format_hint: Optional[SourceFormat] = None,
                    source_name: str = '') -> List[RawGrid]:
        """
        Read a byte source into one grid per sheet or HTML table.
        Args:
            data: Raw bytes of the source
            format_hint: csv, tsv or html; inferred from content when absent
            source_name: Name recorded on every grid
        Returns:
            List[RawGrid]: Grids in source order
        """
        pass

    @abstractmethod
    def split_tables(self, grid: RawGrid) -> List[RawGrid]:
        """Split a grid into its blank-separated tables."""
        pass


class ITableClassifier(ABC):
    """Class-interface for placing grids in the table typology."""
    @abstractmethod
    def classify_table(self, grid: RawGrid) -> TableTypology:
        pass

    @abstractmethod
    def detect_orientation(self, grid: RawGrid) -> Orientation:
        pass


class ITableNormalizer(ABC):
    """Class-interface for rewriting classified grids into canonical tables."""
    @abstractmethod
    def normalize(self, grid: RawGrid, typology: TableTypology) -> Tuple[CanonicalTable, List[HierarchyHint]]:
        """
        Args:
            grid: Grid as read from the source
            typology: Classification of that grid
        Returns:
            The canonical table and the hierarchy hints harvested from stacked headers
        """
        pass


class IColumnProfiler(ABC):
    """Class-interface for column profiling and measure selection."""
    @abstractmethod
    def profile_column(self, table: CanonicalTable, attribute: str) -> ColumnProfile:
        pass

    @abstractmethod
    def select_measures(self, profiles: List[ColumnProfile]) -> List[MeasureSpec]:
        pass

    @abstractmethod
    def apply_overrides(self, candidates: List[MeasureSpec], overrides: OverrideDocument,
                        profiles: List[ColumnProfile]) -> List[MeasureSpec]:
        pass


class IFDMiner(ABC):
    """Class-interface for unary functional dependency discovery."""
    @abstractmethod
    def mine_unary_fds(self, table: CanonicalTable, exclude: AbstractSet[str],
                       threshold: float) -> List[FunctionalDependency]:
        """
        Args:
            table: Canonical table to mine
            exclude: Attributes that never take part in a dependency (measures)
            threshold: Maximum g3 error of a reported dependency
        Returns:
            List[FunctionalDependency]: Sorted by (lhs, rhs)
        """
        pass


class ISchemaBuilder(ABC):
    """Class-interface for deriving the multidimensional schema from dependencies."""
    @abstractmethod
    def build_dependency_graph(self, fds: List[FunctionalDependency], measures: AbstractSet[str],
                               profiles: List[ColumnProfile]) -> DependencyGraph:
        pass

    @abstractmethod
    def extract_hierarchies(self, graph: DependencyGraph) -> List[Hierarchy]:
        pass

    @abstractmethod
    def group_dimensions(self, hierarchies: List[Hierarchy],
                         names: Optional[Dict[str, str]] = None) -> List[Dimension]:
        pass

    @abstractmethod
    def assemble_schema(self, fact_name: str, measures: List[MeasureSpec],
                        dimensions: List[Dimension], schema_name: str) -> MultidimensionalSchema:
        pass


class IStarPopulator(ABC):
    """Class-interface for loading a canonical table into a star schema."""
    @abstractmethod
    def populate_star(self, schema: MultidimensionalSchema, table: CanonicalTable) -> StarTables:
        pass
