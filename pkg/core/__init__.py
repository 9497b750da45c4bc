from .source_reader import SourceReader
from .grid_rules import GridRules
from .table_classifier import TableClassifier
from .table_normalizer import TableNormalizer
from .formula import FormulaParser, ParsedFormula
from .column_profiler import ColumnProfiler
from .fd_miner import BruteForceFDMiner, PartitionFDMiner
from .fd_cover import DependencyCover
from .schema_builder import SchemaBuilder
from .star_populator import StarPopulator
from .schema_pipeline import SchemaPipeline
