import logging
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from core.formula import FormulaParser
from utils.interfaces import IStarPopulator
from utils import (
    Aggregation, CanonicalTable, MeasureSpec, MultidimensionalSchema, NonNumericMeasureValue,
    SqlFormatter, StarTables, UnknownAttribute, ValueParser
)

logger = logging.getLogger(__name__)

_PANDAS_AGGREGATIONS = {
    Aggregation.SUM: 'sum',
    Aggregation.AVG: 'mean',
    Aggregation.MIN: 'min',
    Aggregation.MAX: 'max',
    Aggregation.COUNT: 'count',
}


class StarPopulator(IStarPopulator):
    """
    Loads a canonical table into a star: one table per dimension keyed by its root,
    and a fact table aggregated over the tuple of all roots.
    """

    def __init__(self, formula_parser: Optional[FormulaParser] = None):
        self.formula_parser = formula_parser or FormulaParser()

    def populate_star(self, schema: MultidimensionalSchema, table: CanonicalTable) -> StarTables:
        """
        Args:
            schema: Schema derived from this table
            table: Canonical table
        Returns:
            StarTables with dimension and fact frames plus the DDL script
        Raises:
            UnknownAttribute: If a schema attribute is missing from the table
            NonNumericMeasureValue: If a numerically aggregated measure holds a non-number
        """
        for dimension in schema.dimensions:
            for attribute in dimension.attributes:
                if attribute not in table.attributes:
                    raise UnknownAttribute(attribute)
        frame = table.to_frame()

        dimensions: Dict[str, pd.DataFrame] = {}
        for dimension in schema.dimensions:
            columns = [dimension.root] + [a for a in dimension.attributes if a != dimension.root]
            projected = (frame[columns].drop_duplicates(subset=[dimension.root], keep='first')
                         .sort_values(dimension.root, kind='stable').reset_index(drop=True))
            dimensions[dimension.name] = projected
            logger.debug("Dimension '%s': %d members", dimension.name, len(projected))

        keys = [d.root for d in schema.dimensions]
        work = frame[keys].copy()
        named = {}
        for i, measure in enumerate(schema.fact.measures):
            values, present = self._measure_values(measure, table)
            work[f"__value_{i}"] = values
            work[f"__present_{i}"] = np.where(present, 1.0, np.nan)
            for agg, column in measure.output_columns():
                source = f"__present_{i}" if agg == Aggregation.COUNT else f"__value_{i}"
                named[column] = (source, _PANDAS_AGGREGATIONS[agg])

        fact = work.groupby(keys, sort=True, dropna=False).agg(**named).reset_index()
        for measure in schema.fact.measures:
            for agg, column in measure.output_columns():
                if agg == Aggregation.COUNT:
                    fact[column] = fact[column].astype(np.int64)
        logger.info("Fact '%s': %d rows over %d dimension(s)", schema.fact.name, len(fact), len(keys))
        return StarTables(schema.fact.name, fact, dimensions, SqlFormatter.format_ddl(schema))

    def _measure_values(self, measure: MeasureSpec, table: CanonicalTable) -> Tuple[np.ndarray, np.ndarray]:
        """Per-row numbers (NaN when missing) and the mask of rows holding a value"""
        if measure.formula is not None:
            values = self.formula_parser.evaluate_formula(measure.formula, table)
            return values, ~np.isnan(values)
        if measure.attribute is None:
            return np.ones(table.n_rows), np.ones(table.n_rows, dtype=bool)
        if measure.attribute not in table.attributes:
            raise UnknownAttribute(measure.attribute)
        raw = table.column(measure.attribute)
        values = ValueParser.to_numbers(raw)
        present = np.array([v != '' for v in raw], dtype=bool)
        if any(agg != Aggregation.COUNT for agg in measure.aggregations):
            bad = np.flatnonzero(present & np.isnan(values))
            if bad.size:
                row = int(bad[0])
                raise NonNumericMeasureValue(measure.name, raw[row], row)
        return values, present
