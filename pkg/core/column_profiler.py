import logging
import re
from typing import List, Optional

import numpy as np

from core.formula import FormulaParser
from core.grid_rules import GridRules
from utils.interfaces import IColumnProfiler
from utils import (
    Aggregation, CanonicalTable, ColumnKind, ColumnProfile, InvalidOverrideDocument, MeasureOrigin,
    MeasureSpec, OverrideAction, OverrideDocument, ProfileConstants, UnknownAttribute,
    UnknownAttributeInFormula, ValueParser
)

logger = logging.getLogger(__name__)

_ID_RE = re.compile(ProfileConstants.ID_PATTERN, re.IGNORECASE)
_MEASURE_KINDS = (ColumnKind.INTERVAL, ColumnKind.RATIO)


class ColumnProfiler(IColumnProfiler):
    """Semantic kind per attribute and the candidate measures derived from it"""

    def __init__(self, formula_parser: Optional[FormulaParser] = None):
        self.formula_parser = formula_parser or FormulaParser()

    def profile_column(self, table: CanonicalTable, attribute: str) -> ColumnProfile:
        """
        Profile one attribute of a canonical table.
        Args:
            table: Canonical table
            attribute: Attribute name
        Returns:
            ColumnProfile with the first matching kind of the rule order
        Raises:
            UnknownAttribute: If the table has no such attribute
        """
        if attribute not in table.attributes:
            raise UnknownAttribute(attribute)
        values = table.column(attribute)
        present = [v for v in values if v]
        distinct = set(present)
        numbers = ValueParser.to_numbers(present)
        numeric = ~np.isnan(numbers)
        numeric_fraction = float(numeric.mean()) if present else 0.0
        minimum = maximum = None
        if numeric.any():
            minimum, maximum = float(numbers[numeric].min()), float(numbers[numeric].max())

        kind = self._decide_kind(attribute, present, distinct, numbers, numeric_fraction, len(values))
        logger.debug("Profiled '%s' as %s", attribute, kind.value)
        return ColumnProfile(attribute, kind, len(distinct), len(values) - len(present),
                             numeric_fraction, len(values), minimum, maximum)

    def profile_table(self, table: CanonicalTable) -> List[ColumnProfile]:
        return [self.profile_column(table, attribute) for attribute in table.attributes]

    @staticmethod
    def _decide_kind(attribute: str, present: List[str], distinct: set, numbers: np.ndarray,
                     numeric_fraction: float, n_rows: int) -> ColumnKind:
        if not present:
            return ColumnKind.TEXT
        lowered = {v.lower() for v in distinct}
        if lowered <= ProfileConstants.BOOLEAN_TOKENS:
            return ColumnKind.BOOLEAN

        integral = numeric_fraction == 1.0 and all(ValueParser.is_integer_text(v) for v in distinct)
        year_like = integral and all(GridRules.is_year_like(v) for v in distinct)
        if integral:
            unique = len(distinct) == len(present)
            dense = unique and numbers.max() - numbers.min() + 1 == len(distinct)
            ordered = unique and bool(np.all(np.diff(numbers) > 0))
            if _ID_RE.search(attribute) or (unique and (dense or ordered) and not year_like):
                return ColumnKind.IDENTIFIER
        if year_like:
            return ColumnKind.TEMPORAL_YEAR
        if all(ValueParser.parse_date(v) is not None for v in distinct):
            return ColumnKind.TEMPORAL_DATE
        if numeric_fraction >= ProfileConstants.NUMERIC_FRACTION:
            return ColumnKind.RATIO if np.nanmin(numbers) >= 0 else ColumnKind.INTERVAL
        if len(lowered) >= 2 and any(lowered <= set(scale) for scale in ProfileConstants.ORDINAL_SCALES):
            return ColumnKind.ORDINAL
        if len(distinct) <= ProfileConstants.NOMINAL_DISTINCT_RATIO * n_rows:
            return ColumnKind.NOMINAL
        return ColumnKind.TEXT

    def select_measures(self, profiles: List[ColumnProfile]) -> List[MeasureSpec]:
        """Interval and ratio attributes with sum, avg, min and max; row_count always offered"""
        measures = [
            MeasureSpec(p.attribute, ProfileConstants.AUTO_AGGREGATIONS, attribute=p.attribute)
            for p in profiles if p.kind in _MEASURE_KINDS
        ]
        if not measures:
            logger.warning("No interval or ratio attribute found; only %s is offered",
                           ProfileConstants.ROW_COUNT_MEASURE)
        measures.append(MeasureSpec(ProfileConstants.ROW_COUNT_MEASURE, (Aggregation.COUNT,)))
        return measures

    def apply_overrides(self, candidates: List[MeasureSpec], overrides: OverrideDocument,
                        profiles: List[ColumnProfile]) -> List[MeasureSpec]:
        """
        Apply add, remove and replace edits in document order.
        Returns:
            Surviving automatic measures followed by user measures
        Raises:
            InvalidOverrideDocument: For edits naming unknown measures or attributes
            MalformedFormula: If a derived formula does not parse
            UnknownAttributeInFormula: If a formula names an unknown or non-numeric attribute
        """
        by_attribute = {p.attribute: p for p in profiles}
        auto, user = list(candidates), []

        for item in overrides.measures:
            target = item.target
            if item.action == OverrideAction.REMOVE:
                if not (_named(auto, target) or _named(user, target)):
                    raise InvalidOverrideDocument(f"Cannot remove unknown measure '{target}'")
                auto, user = _without(auto, target), _without(user, target)
                continue

            if item.action == OverrideAction.REPLACE:
                pool = auto if _named(auto, target) else user
                if not _named(pool, target):
                    raise InvalidOverrideDocument(f"Cannot replace unknown measure '{target}'")
                pool[:] = [_replaced(m, item.aggregations) if m.name == target else m for m in pool]
                continue

            if _named(auto, target) or _named(user, target):
                raise InvalidOverrideDocument(f"Measure '{target}' already exists")
            if item.formula is not None:
                parsed = self.formula_parser.parse(item.formula)
                for attribute in sorted(parsed.references):
                    profile = by_attribute.get(attribute)
                    if profile is None or not profile.is_numeric:
                        raise UnknownAttributeInFormula(attribute, item.formula)
                aggregations = item.aggregations or ProfileConstants.AUTO_AGGREGATIONS
                user.append(MeasureSpec(item.name, aggregations, formula=item.formula,
                                        origin=MeasureOrigin.USER))
            else:
                profile = by_attribute.get(item.attribute)
                if profile is None:
                    raise InvalidOverrideDocument(f"Cannot add unknown attribute '{item.attribute}'")
                default = ProfileConstants.AUTO_AGGREGATIONS if profile.is_numeric else (Aggregation.COUNT,)
                user.append(MeasureSpec(target, item.aggregations or default, attribute=item.attribute,
                                        origin=MeasureOrigin.USER))
            logger.info("Added user measure '%s'", target)
        return auto + user


def _named(measures: List[MeasureSpec], name: str) -> bool:
    return any(m.name == name for m in measures)


def _without(measures: List[MeasureSpec], name: str) -> List[MeasureSpec]:
    return [m for m in measures if m.name != name]


def _replaced(measure: MeasureSpec, aggregations) -> MeasureSpec:
    return MeasureSpec(measure.name, tuple(aggregations), measure.attribute, measure.formula, measure.origin)
