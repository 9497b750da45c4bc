import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import pandas as pd

from utils.constants import Aggregation, MeasureOrigin, OverrideAction, SchemaConstants
from utils.containers import (
    CanonicalTable, Dimension, Fact, Hierarchy, HierarchyHint, Level, MeasureOverride,
    MeasureSpec, MultidimensionalSchema, OverrideDocument, Provenance, StarTables, TransformStep
)
from utils.errors import InvalidOverrideDocument, UnreadableSource
from utils.formatters import SqlFormatter
from utils.validators import InputValidator

logger = logging.getLogger(__name__)


class SchemaSerializer:
    """Canonical JSON form of a multidimensional schema"""

    @staticmethod
    def to_dict(schema: MultidimensionalSchema) -> Dict[str, Any]:
        measures = []
        for m in schema.fact.measures:
            item = {
                'name': m.name,
                'source': m.attribute,
                'aggregations': [agg.value for agg in m.aggregations],
                'origin': m.origin.value,
            }
            if m.formula is not None:
                item['formula'] = m.formula
            measures.append(item)
        dimensions = [
            {
                'name': d.name,
                'root': d.root,
                'attributes': list(d.attributes),
                'hierarchies': [
                    {
                        'name': h.name,
                        'levels': [{'parameter': level.parameter,
                                    'weak_attributes': list(level.weak_attributes)} for level in h.levels],
                    }
                    for h in d.hierarchies
                ],
            }
            for d in schema.dimensions
        ]
        return {'name': schema.name, 'fact': {'name': schema.fact.name, 'measures': measures},
                'dimensions': dimensions}

    @staticmethod
    def to_json(schema: MultidimensionalSchema) -> str:
        """Stable key order, two-space indent, trailing newline"""
        return json.dumps(SchemaSerializer.to_dict(schema), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_dict(document: Dict[str, Any]) -> MultidimensionalSchema:
        measures = tuple(
            MeasureSpec(
                name=item['name'],
                aggregations=tuple(Aggregation(a) for a in item['aggregations']),
                attribute=item.get('source'),
                formula=item.get('formula'),
                origin=MeasureOrigin(item.get('origin', MeasureOrigin.AUTO.value)),
            )
            for item in document['fact']['measures']
        )
        dimensions = []
        for d in document['dimensions']:
            hierarchies = tuple(
                Hierarchy(h['name'], tuple(Level(level['parameter'], tuple(level['weak_attributes']))
                                           for level in h['levels']))
                for h in d['hierarchies']
            )
            dimensions.append(Dimension(d['name'], tuple(d['attributes']), hierarchies))
        return MultidimensionalSchema(document['name'], Fact(document['fact']['name'], measures),
                                      tuple(dimensions))

    @staticmethod
    def from_json(text: str) -> MultidimensionalSchema:
        return SchemaSerializer.from_dict(json.loads(text))


class TableSerializer:
    """Canonical table CSV, its sidecar and the populated star on disk"""

    @staticmethod
    def write_canonical_csv(table: CanonicalTable, path: Path) -> None:
        """RFC-4180 CSV, UTF-8, LF line endings"""
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(table.attributes)
            writer.writerows(table.rows)

    @staticmethod
    def sidecar_path(path: Path) -> Path:
        return path.with_suffix('.json')

    @staticmethod
    def write_sidecar(table: CanonicalTable, hints: Sequence[HierarchyHint], path: Path) -> None:
        document = {
            'source': table.provenance.source_name,
            'attributes': list(table.attributes),
            'hints': [list(hint.levels) for hint in hints],
            'transforms': [step.to_dict() for step in table.provenance.steps],
        }
        path.write_text(json.dumps(document, sort_keys=True, indent=2) + "\n", encoding='utf-8')

    @staticmethod
    def is_dumped_table(path: Path) -> bool:
        """A CSV written by write_canonical_csv, recognised by its sidecar"""
        path = Path(path)
        sidecar = TableSerializer.sidecar_path(path)
        if path.suffix.lower() != '.csv' or not sidecar.is_file():
            return False
        try:
            document = json.loads(sidecar.read_text(encoding='utf-8'))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError):
            return False
        return isinstance(document, dict) and {'attributes', 'transforms'} <= set(document)

    @staticmethod
    def read_canonical_csv(path: Path) -> Tuple[CanonicalTable, List[HierarchyHint]]:
        """
        Load a dumped canonical table, with hints and provenance from its sidecar when present.
        Raises:
            UnreadableSource: If the file is not a canonical CSV
        """
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False, na_filter=False, encoding='utf-8')
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise UnreadableSource(f"Cannot read canonical table '{path}': {e}")
        rows = tuple(row for row in frame.itertuples(index=False, name=None) if any(row))
        provenance, hints = Provenance(str(path)), []
        sidecar = TableSerializer.sidecar_path(Path(path))
        if sidecar.is_file():
            try:
                document = json.loads(sidecar.read_text(encoding='utf-8'))
                steps = tuple(TransformStep(s['step'], s['params']) for s in document.get('transforms', []))
                provenance = Provenance(document.get('source', str(path)), steps)
                hints = [HierarchyHint(tuple(levels)) for levels in document.get('hints', [])]
            except (json.JSONDecodeError, UnicodeDecodeError, AttributeError, KeyError, TypeError, ValueError) as e:
                raise UnreadableSource(f"Bad sidecar '{sidecar}': {e}")
        try:
            table = CanonicalTable(tuple(frame.columns), rows, provenance)
        except ValueError as e:
            raise UnreadableSource(f"'{path}' is not a canonical table: {e}")
        return table, hints

    @staticmethod
    def write_star(star: StarTables, directory: Path) -> List[Path]:
        """
        Write one CSV per dimension, the fact CSV and the DDL script.
        Returns:
            Written paths in write order
        """
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for name, frame in star.dimensions.items():
            path = directory / f"{SqlFormatter.table_name('dim', name)}.csv"
            frame.to_csv(path, index=False, lineterminator='\n')
            written.append(path)
        path = directory / f"{SqlFormatter.table_name('fact', star.fact_name)}.csv"
        star.fact.to_csv(path, index=False, lineterminator='\n')
        written.append(path)
        path = directory / SchemaConstants.DDL_FILE
        path.write_text(star.ddl, encoding='utf-8')
        written.append(path)
        logger.info("Wrote star schema to %s", directory)
        return written


class OverrideReader:
    """Parses the user override document; every defect is an InvalidOverrideDocument"""
    DOCUMENT_KEYS = ['measures', 'dimension_names', 'schema_name', 'fact_name']
    MEASURE_KEYS = ['action', 'attribute', 'name', 'formula', 'aggregations']

    @staticmethod
    def read(path: Path) -> OverrideDocument:
        try:
            document = json.loads(Path(path).read_text(encoding='utf-8'))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise InvalidOverrideDocument(f"Cannot read override document '{path}': {e}")
        return OverrideReader.from_dict(document)

    @staticmethod
    def from_dict(document: Any) -> OverrideDocument:
        try:
            InputValidator.require_type(document, dict, "Override document")
            InputValidator.require_keys(document, OverrideReader.DOCUMENT_KEYS, "Override document")
            items = InputValidator.require_type(document.get('measures', []), list, "measures")
            measures = tuple(OverrideReader._measure(item, i) for i, item in enumerate(items))
            names = InputValidator.require_type(document.get('dimension_names', {}), dict, "dimension_names")
            for key, value in names.items():
                InputValidator.require_type(value, str, f"dimension_names[{key}]")
                if not value.strip():
                    raise ValueError(f"dimension_names[{key}]: Name cannot be empty")
            schema_name = document.get('schema_name')
            fact_name = document.get('fact_name')
            for value, var_name in ((schema_name, 'schema_name'), (fact_name, 'fact_name')):
                if value is not None and not InputValidator.require_type(value, str, var_name).strip():
                    raise ValueError(f"{var_name}: Name cannot be empty")
        except ValueError as e:
            raise InvalidOverrideDocument(str(e))
        return OverrideDocument(measures, dict(names), schema_name, fact_name)

    @staticmethod
    def _measure(item: Any, index: int) -> MeasureOverride:
        var_name = f"measures[{index}]"
        InputValidator.require_type(item, dict, var_name)
        InputValidator.require_keys(item, OverrideReader.MEASURE_KEYS, var_name)
        try:
            action = OverrideAction(item.get('action', OverrideAction.ADD.value))
        except ValueError:
            raise ValueError(f"{var_name}: Unknown action '{item.get('action')}'")
        for key in ('attribute', 'name', 'formula'):
            if item.get(key) is not None:
                InputValidator.require_type(item[key], str, f"{var_name}.{key}")
        raw = InputValidator.require_type(item.get('aggregations', []), list, f"{var_name}.aggregations")
        try:
            aggregations = tuple(Aggregation(a) for a in raw)
        except ValueError:
            raise ValueError(f"{var_name}: Unknown aggregation in {raw}")

        attribute, name, formula = item.get('attribute'), item.get('name'), item.get('formula')
        if formula is not None and (attribute is not None or not name or action != OverrideAction.ADD):
            raise ValueError(f"{var_name}: A formula needs a name, no attribute and action 'add'")
        if not (attribute or name):
            raise ValueError(f"{var_name}: An attribute or a name is required")
        if action == OverrideAction.ADD and not (attribute or formula):
            raise ValueError(f"{var_name}: 'add' needs an attribute or a formula")
        if action == OverrideAction.REPLACE and not aggregations:
            raise ValueError(f"{var_name}: 'replace' needs aggregations")
        return MeasureOverride(action, attribute, name, formula, aggregations)
