import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from core import (
    ColumnProfiler, FormulaParser, PartitionFDMiner, SchemaBuilder, SchemaPipeline, SourceReader,
    StarPopulator, TableClassifier, TableNormalizer
)
from utils import ClassifyConstants, ExitStatus, PipelineConfig, PipelineStage, ReportFormatter, SourceFormat

logger = logging.getLogger(__name__)

STAGES = {
    'infer': PipelineStage.SCHEMA,
    'classify': PipelineStage.CLASSIFY,
    'normalize': PipelineStage.NORMALIZE,
    'fds': PipelineStage.FDS,
    'populate': PipelineStage.POPULATE,
}


def build_pipeline(delimiters: str = ClassifyConstants.MULTIVALUE_DELIMITERS) -> SchemaPipeline:
    formula_parser = FormulaParser()
    return SchemaPipeline(
        reader=SourceReader(),
        classifier=TableClassifier(delimiters),
        normalizer=TableNormalizer(delimiters),
        profiler=ColumnProfiler(formula_parser),
        fd_miner=PartitionFDMiner(),
        schema_builder=SchemaBuilder(),
        populator=StarPopulator(formula_parser)
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('input', type=Path, help="CSV, TSV or HTML source")
    common.add_argument('--format', choices=[f.value for f in SourceFormat], default=None,
                        help="Source format; inferred from content when omitted")
    common.add_argument('--fd-threshold', type=float, default=0.0, help="Maximum g3 error of a dependency")
    common.add_argument('--override', type=Path, default=None, help="JSON override document")
    common.add_argument('--table', type=int, default=0, help="Index of the table when the source holds several")
    common.add_argument('--delimiters', default=ClassifyConstants.MULTIVALUE_DELIMITERS,
                        help="Characters separating values inside a multivalued cell")
    common.add_argument('--verbose', '-v', action='store_true', help="Log at DEBUG level")

    parser = argparse.ArgumentParser(prog='tabular-schema',
                                     description="Derive a multidimensional schema from a tabular source")
    commands = parser.add_subparsers(dest='command', required=True)

    infer = commands.add_parser('infer', parents=[common], help="Run the whole pipeline")
    infer.add_argument('--out', type=Path, default=None, help="Schema JSON output")
    infer.add_argument('--normalized', type=Path, default=None, help="Canonical CSV output")
    infer.add_argument('--ddl', type=Path, default=None, help="SQL DDL output")
    infer.add_argument('--populate', type=Path, default=None, help="Directory for the populated star")

    commands.add_parser('classify', parents=[common], help="Print the table typology as JSON")

    normalize = commands.add_parser('normalize', parents=[common], help="Write the canonical table")
    normalize.add_argument('--out', type=Path, required=True, help="Canonical CSV output")

    commands.add_parser('fds', parents=[common], help="Print the minimal cover of the unary FDs")

    populate = commands.add_parser('populate', parents=[common], help="Populate the star schema")
    populate.add_argument('--populate', type=Path, required=True, help="Output directory")
    populate.add_argument('--out', type=Path, default=None, help="Schema JSON output")
    populate.add_argument('--ddl', type=Path, default=None, help="SQL DDL output")

    commands.add_parser('gui', help="Open the inspection window")
    return parser


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    """
    Raises:
        ValueError: If a threshold, delimiter set or table index is invalid
    """
    normalized = getattr(args, 'normalized', None)
    schema_out = getattr(args, 'out', None)
    if args.command == 'normalize':
        normalized, schema_out = args.out, None
    return PipelineConfig(
        input_path=args.input,
        format_hint=SourceFormat(args.format) if args.format else None,
        fd_threshold=args.fd_threshold,
        delimiters=args.delimiters,
        override_path=args.override,
        schema_out=schema_out,
        normalized_out=normalized,
        ddl_out=getattr(args, 'ddl', None),
        populate_dir=getattr(args, 'populate', None),
        table_index=args.table
    )


def run_gui() -> int:
    from PyQt6.QtWidgets import QApplication

    from view import InputSection, ResultSection, SchemaInspectorApp

    app = QApplication(sys.argv)
    window = SchemaInspectorApp(
        input_section=InputSection(),
        results_section=ResultSection(),
        pipeline_factory=build_pipeline
    )
    window.show()
    return app.exec()


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if getattr(args, 'verbose', False) else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
    if args.command == 'gui':
        return run_gui()

    try:
        config = config_from_args(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitStatus.INPUT_ERROR.value

    result = build_pipeline(config.delimiters).run(config, until=STAGES[args.command])
    for line in result.report:
        print(line, file=sys.stderr)
    if result.is_success:
        if args.command == 'classify':
            print(ReportFormatter.typology_json(result.typology))
        elif args.command == 'fds':
            text = ReportFormatter.format_fd_lines(result.cover)
            if text:
                print(text)
    return result.status.value


if __name__ == "__main__":
    sys.exit(main())
