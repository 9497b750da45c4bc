import logging
from typing import Dict

from core.fd_cover import DependencyCover
from utils.interfaces import (
    IColumnProfiler, IFDMiner, ISchemaBuilder, ISourceReader, IStarPopulator, ITableClassifier,
    ITableNormalizer
)
from utils import (
    CanonicalTable, ExitStatus, InvariantViolation, MultidimensionalSchema, NoCandidateMeasures,
    OverrideDocument, OverrideReader, PipelineConfig, PipelineResult, PipelineStage, RawGrid,
    ReportFormatter, SchemaConstants, SchemaSerializer, SqlFormatter, TableIndexOutOfRange,
    TableSerializer, TabularSchemaError
)

logger = logging.getLogger(__name__)


class SchemaPipeline:
    """Runs a tabular source through every stage up to the multidimensional schema."""
    def __init__(self, reader: ISourceReader, classifier: ITableClassifier, normalizer: ITableNormalizer,
                 profiler: IColumnProfiler, fd_miner: IFDMiner, schema_builder: ISchemaBuilder,
                 populator: IStarPopulator) -> None:
        """
        Args:
            reader: Reads sources into grids and splits them into tables
            classifier: Places a table in the typology
            normalizer: Rewrites a classified table into a canonical table
            profiler: Column kinds and measure selection
            fd_miner: Unary functional dependency discovery
            schema_builder: Graph, hierarchies, dimensions and schema assembly
            populator: Star schema population
        """
        self.reader = reader
        self.classifier = classifier
        self.normalizer = normalizer
        self.profiler = profiler
        self.fd_miner = fd_miner
        self.schema_builder = schema_builder
        self.populator = populator

    def run(self, config: PipelineConfig, until: PipelineStage = PipelineStage.SCHEMA) -> PipelineResult:
        """
        Run the pipeline up to a stage and write the artifacts named in the config.
        A canonical CSV dumped with its sidecar skips classification and normalization.
        Args:
            config (PipelineConfig): Input, thresholds and output paths
            until (PipelineStage): Last stage to execute; populating also happens
                whenever the config names a populate directory
        Returns:
            PipelineResult: Stage outputs, report lines and exit status
        """
        result = PipelineResult(status=ExitStatus.SUCCESS)
        try:
            self._run(config, until, result)
        except TabularSchemaError as e:
            self._fail(result, e.exit_status, str(e))
        except (OSError, ValueError) as e:
            self._fail(result, ExitStatus.INPUT_ERROR, str(e))
        return result

    @staticmethod
    def _fail(result: PipelineResult, status: ExitStatus, message: str) -> None:
        logger.error("Pipeline failed: %s", message)
        result.status = status
        result.error_message = message
        result.report.append(f"error: {message}")

    def _run(self, config: PipelineConfig, until: PipelineStage, result: PipelineResult) -> None:
        if until.value > PipelineStage.NORMALIZE.value and TableSerializer.is_dumped_table(config.input_path):
            result.table, result.hints = TableSerializer.read_canonical_csv(config.input_path)
            result.report.append(f"resume: canonical table '{config.input_path.name}'")
            result.report.extend(ReportFormatter.format_normalized(result.table, result.hints))
        else:
            grid = self._ingest(config, result)
            result.typology = self.classifier.classify_table(grid)
            result.report.append(ReportFormatter.format_typology(result.typology))
            if until == PipelineStage.CLASSIFY:
                return

            result.table, result.hints = self.normalizer.normalize(grid, result.typology)
            result.report.extend(ReportFormatter.format_normalized(result.table, result.hints))
            if config.normalized_out:
                TableSerializer.write_canonical_csv(result.table, config.normalized_out)
                TableSerializer.write_sidecar(result.table, result.hints,
                                              TableSerializer.sidecar_path(config.normalized_out))
            if until == PipelineStage.NORMALIZE:
                return

        overrides = OverrideReader.read(config.override_path) if config.override_path else OverrideDocument()
        table = result.table
        result.profiles = [self.profiler.profile_column(table, a) for a in table.attributes]
        result.report.extend(ReportFormatter.format_profiles(result.profiles))
        candidates = self.profiler.select_measures(result.profiles)
        result.measures = self.profiler.apply_overrides(candidates, overrides, result.profiles)
        if not result.measures:
            raise NoCandidateMeasures("No measure is left after applying the overrides")
        result.report.extend(ReportFormatter.format_measures(result.measures))
        measure_attributes = {m.attribute for m in result.measures if m.attribute is not None}

        result.fds = self.fd_miner.mine_unary_fds(table, measure_attributes, config.fd_threshold)
        result.cover = DependencyCover.minimal_cover(result.fds)
        result.equivalence_classes = DependencyCover.equivalence_classes(result.cover)
        result.report.extend(ReportFormatter.format_fds(
            result.fds, result.cover, result.equivalence_classes,
            _distinct_counts(table, measure_attributes), config.fd_threshold))
        if until == PipelineStage.FDS:
            return

        result.graph = self.schema_builder.build_dependency_graph(result.cover, measure_attributes, result.profiles)
        result.hierarchies = self.schema_builder.extract_hierarchies(result.graph)
        dimensions = self.schema_builder.group_dimensions(result.hierarchies, overrides.dimension_names)
        result.schema = self.schema_builder.assemble_schema(
            overrides.fact_name or SchemaConstants.DEFAULT_FACT_NAME, result.measures, dimensions,
            overrides.schema_name or SchemaConstants.DEFAULT_SCHEMA_NAME)
        _check_placement(table, measure_attributes, result.schema)
        result.report.extend(ReportFormatter.format_schema(result.schema))
        if config.schema_out:
            config.schema_out.write_text(SchemaSerializer.to_json(result.schema), encoding='utf-8')
        if config.ddl_out:
            config.ddl_out.write_text(SqlFormatter.format_ddl(result.schema), encoding='utf-8')

        if until == PipelineStage.POPULATE or config.populate_dir:
            result.star = self.populator.populate_star(result.schema, table)
            result.report.append(f"populate: fact {result.star.fact_name} with {len(result.star.fact)} rows")
            if config.populate_dir:
                TableSerializer.write_star(result.star, config.populate_dir)

    def _ingest(self, config: PipelineConfig, result: PipelineResult) -> RawGrid:
        data = config.input_path.read_bytes()
        grids = self.reader.read_source(data, config.format_hint, config.input_path.name)
        tables = [table for grid in grids for table in self.reader.split_tables(grid)]
        if config.table_index >= len(tables):
            raise TableIndexOutOfRange(config.table_index, len(tables))
        grid = tables[config.table_index]
        result.report.append(ReportFormatter.format_ingest(len(tables), config.table_index, grid))
        return grid


def _distinct_counts(table: CanonicalTable, exclude: set) -> Dict[str, int]:
    return {a: len(set(table.column(a)) - {''}) for a in table.attributes if a not in exclude}


def _check_placement(table: CanonicalTable, measures: set, schema: MultidimensionalSchema) -> None:
    """Every non-measure attribute lives in exactly one dimension"""
    placed = {a for d in schema.dimensions for a in d.attributes}
    expected = set(table.attributes) - measures
    if placed != expected:
        raise InvariantViolation(f"Unplaced attributes: {sorted(expected - placed)}")
