import random

import pandas as pd
import pytest
from utils import (
    Aggregation, CanonicalTable, Dimension, Fact, Hierarchy, Level, MeasureOrigin, MeasureSpec,
    MultidimensionalSchema, NonNumericMeasureValue, TableSerializer, UnknownAttribute
)
from core import StarPopulator
from tests.generators import random_sales_rows

AMOUNT = MeasureSpec('amount', (Aggregation.SUM, Aggregation.AVG, Aggregation.MIN, Aggregation.MAX),
                     attribute='amount')
ROW_COUNT = MeasureSpec('row_count', (Aggregation.COUNT,))
SALES_ATTRIBUTES = ('store', 'region', 'product', 'category', 'amount')


def sales_schema(*measures: MeasureSpec) -> MultidimensionalSchema:
    stores = Hierarchy('H1', (Level('store'), Level('region')))
    products = Hierarchy('H2', (Level('product'), Level('category')))
    return MultidimensionalSchema('sales', Fact('F1', measures or (AMOUNT, ROW_COUNT)), (
        Dimension('D1', ('store', 'region'), (stores,)),
        Dimension('D2', ('product', 'category'), (products,)),
    ))


def sales_table(rows) -> CanonicalTable:
    return CanonicalTable(SALES_ATTRIBUTES, tuple(tuple(r) for r in rows))


# fixtures
@pytest.fixture
def populator():
    return StarPopulator()


@pytest.fixture
def small_sales():
    return sales_table([
        ('s2', 'south', 'p1', 'food', '7'),
        ('s1', 'north', 'p1', 'food', '5'),
        ('s1', 'north', 'p1', 'food', '10'),
        ('s1', 'north', 'p2', 'tools', '3,5'),
    ])


class TestPopulateStar:

    def test_fact_aggregates_over_all_roots(self, populator, small_sales):
        star = populator.populate_star(sales_schema(), small_sales)
        fact = star.fact

        assert list(fact.columns) == ['store', 'product', 'amount_sum', 'amount_avg', 'amount_min',
                                      'amount_max', 'row_count_count']
        assert fact[['store', 'product']].values.tolist() == [['s1', 'p1'], ['s1', 'p2'], ['s2', 'p1']]
        s1 = fact.iloc[0]
        assert (s1.amount_sum, s1.amount_avg, s1.amount_min, s1.amount_max) == (15.0, 7.5, 5.0, 10.0)
        assert s1.row_count_count == 2
        assert fact.iloc[1].amount_sum == pytest.approx(3.5)

    def test_dimension_tables_are_keyed_by_their_root(self, populator, small_sales):
        star = populator.populate_star(sales_schema(), small_sales)

        assert list(star.dimensions) == ['D1', 'D2']
        assert star.dimensions['D1'].values.tolist() == [['s1', 'north'], ['s2', 'south']]
        assert star.dimensions['D2'].values.tolist() == [['p1', 'food'], ['p2', 'tools']]

    def test_derived_measure(self, populator, small_sales):
        double = MeasureSpec('double', (Aggregation.SUM,), formula='amount * 2', origin=MeasureOrigin.USER)
        star = populator.populate_star(sales_schema(double), small_sales)
        assert star.fact['double_sum'].tolist() == pytest.approx([30.0, 7.0, 14.0])

    def test_count_skips_missing_values(self, populator):
        counted = MeasureSpec('amount', (Aggregation.COUNT,), attribute='amount')
        table = sales_table([('s1', 'north', 'p1', 'food', ''), ('s1', 'north', 'p1', 'food', 'n/a'),
                             ('s1', 'north', 'p1', 'food', '4')])
        star = populator.populate_star(sales_schema(counted), table)
        assert star.fact['amount_count'].tolist() == [2]

    def test_non_numeric_measure_value(self, populator, small_sales):
        table = sales_table(list(small_sales.rows) + [('s3', 'east', 'p1', 'food', 'lots')])
        with pytest.raises(NonNumericMeasureValue) as info:
            populator.populate_star(sales_schema(), table)
        assert (info.value.measure, info.value.value, info.value.row) == ('amount', 'lots', 4)

    def test_missing_schema_attribute(self, populator):
        table = CanonicalTable(('store', 'product', 'amount'), (('s1', 'p1', '5'),))
        with pytest.raises(UnknownAttribute):
            populator.populate_star(sales_schema(), table)

    def test_random_sales_are_conserved(self, populator):
        rng = random.Random(9)
        for _ in range(20):
            _, rows = random_sales_rows(rng)
            star = populator.populate_star(sales_schema(), sales_table(rows))
            amounts = [float(r[4]) for r in rows]

            assert star.fact['amount_sum'].sum() == pytest.approx(sum(amounts), abs=1e-6)
            assert star.fact['row_count_count'].sum() == len(rows)
            assert star.fact['amount_max'].max() == pytest.approx(max(amounts))
            assert len(star.fact) == len({(r[0], r[2]) for r in rows})
            assert len(star.dimensions['D1']) == len({r[0] for r in rows})


class TestStarOutput:

    def test_ddl(self, populator, small_sales):
        ddl = populator.populate_star(sales_schema(), small_sales).ddl

        assert ddl.count('CREATE TABLE') == 3
        assert 'CREATE TABLE dim_d1 (' in ddl
        assert 'PRIMARY KEY ("store", "product")' in ddl
        assert 'FOREIGN KEY ("product") REFERENCES dim_d2 ("product")' in ddl
        assert '"amount_avg" DOUBLE PRECISION' in ddl
        assert '"row_count_count" BIGINT' in ddl

    def test_write_star(self, populator, small_sales, tmp_path):
        star = populator.populate_star(sales_schema(), small_sales)
        written = TableSerializer.write_star(star, tmp_path / 'star')

        assert [p.name for p in written] == ['dim_d1.csv', 'dim_d2.csv', 'fact_f1.csv', 'star.sql']
        fact = pd.read_csv(written[2], dtype=str)
        assert list(fact.columns) == list(star.fact.columns)
        assert len(fact) == 3
        assert written[3].read_text(encoding='utf-8') == star.ddl
