import pytest
from utils import (
    Aggregation, CanonicalTable, ColumnKind, InvalidOverrideDocument, MalformedFormula, MeasureOrigin,
    MeasureOverride, OverrideAction, OverrideDocument, UnknownAttribute, UnknownAttributeInFormula
)
from core import ColumnProfiler
from tests.generators import product_order_table, speaking_time_table

AUTO = (Aggregation.SUM, Aggregation.AVG, Aggregation.MIN, Aggregation.MAX)


# fixtures
@pytest.fixture
def profiler():
    return ColumnProfiler()


@pytest.fixture
def mixed_table():
    return CanonicalTable(
        ('customer_id', 'amount', 'active', 'year', 'day', 'balance', 'level', 'city', 'note', 'blank'),
        (
            ('1', '5', 'yes', '2019', '2020-01-01', '-5', 'low', 'Lyon', 'first visit', ''),
            ('2', '5', 'no', '2020', '2020-01-02', '3', 'high', 'Lyon', 'asked for a refund', ''),
            ('3', '7', 'yes', '2020', '2020-02-01', '3', 'medium', 'Nice', 'no comment', ''),
            ('4', '', 'no', '2021', '2020-03-01', '12', 'low', 'Lyon', 'late delivery', ''),
        ),
    )


@pytest.fixture
def order_profiles(profiler):
    return profiler.profile_table(product_order_table())


class TestProfileColumn:

    @pytest.mark.parametrize('attribute, kind', [
        ('customer_id', ColumnKind.IDENTIFIER),
        ('amount', ColumnKind.RATIO),
        ('active', ColumnKind.BOOLEAN),
        ('year', ColumnKind.TEMPORAL_YEAR),
        ('day', ColumnKind.TEMPORAL_DATE),
        ('balance', ColumnKind.INTERVAL),
        ('level', ColumnKind.ORDINAL),
        ('city', ColumnKind.NOMINAL),
        ('note', ColumnKind.TEXT),
        ('blank', ColumnKind.TEXT),
    ])
    def test_kinds(self, profiler, mixed_table, attribute, kind):
        assert profiler.profile_column(mixed_table, attribute).kind == kind

    def test_counts_and_range(self, profiler, mixed_table):
        profile = profiler.profile_column(mixed_table, 'amount')
        assert profile.row_count == 4
        assert profile.null_count == 1
        assert profile.distinct_count == 2
        assert profile.numeric_fraction == 1.0
        assert (profile.minimum, profile.maximum) == (5.0, 7.0)

    def test_dense_unique_integers_are_identifiers(self, profiler):
        table = CanonicalTable(('n', 'x'), (('3', 'a'), ('1', 'a'), ('2', 'b')))
        assert profiler.profile_column(table, 'n').kind == ColumnKind.IDENTIFIER

    @pytest.mark.parametrize('attribute', ['productid', 'idproduct', 'Idproduct', 'customerID', 'ID', 'order id'])
    @pytest.mark.parametrize('values', [('907', '13', '452', '88'), ('5', '9', '5', '12')])
    def test_id_names_are_identifiers(self, profiler, attribute, values):
        table = CanonicalTable((attribute, 'x'), tuple((v, 'a') for v in values))
        assert profiler.profile_column(table, attribute).kind == ColumnKind.IDENTIFIER

    @pytest.mark.parametrize('attribute', ['width', 'quantity', 'score'])
    def test_other_names_stay_ratio(self, profiler, attribute):
        table = CanonicalTable((attribute, 'x'), (('907', 'a'), ('13', 'a'), ('452', 'b'), ('88', 'b')))
        assert profiler.profile_column(table, attribute).kind == ColumnKind.RATIO

    def test_unknown_attribute(self, profiler, mixed_table):
        with pytest.raises(UnknownAttribute):
            profiler.profile_column(mixed_table, 'price')

    def test_product_orders(self, order_profiles):
        kinds = {p.attribute: p.kind for p in order_profiles}
        assert kinds['idCustomer'] == ColumnKind.IDENTIFIER
        assert kinds['idProduct'] == ColumnKind.IDENTIFIER
        assert kinds['quantity'] == ColumnKind.RATIO
        assert {kinds[a] for a in ('nameCustomer', 'cityCustomer', 'countryCustomer', 'classCustomer',
                                   'nameProduct', 'categoryProduct')} == {ColumnKind.NOMINAL}

    def test_speaking_time(self, profiler):
        kinds = {p.attribute: p.kind for p in profiler.profile_table(speaking_time_table())}
        assert kinds['is_public_channel'] == ColumnKind.BOOLEAN
        assert kinds['year'] == ColumnKind.TEMPORAL_YEAR
        assert kinds['channel_name'] == ColumnKind.NOMINAL
        assert [a for a, k in kinds.items() if k == ColumnKind.RATIO] == [
            'women_expression_rate', 'speech_rate', 'nb_hours_analyzed']


class TestSelectMeasures:

    def test_numeric_attributes_and_row_count(self, profiler, order_profiles):
        measures = profiler.select_measures(order_profiles)

        assert [m.name for m in measures] == ['quantity', 'row_count']
        assert measures[0].aggregations == AUTO
        assert measures[0].attribute == 'quantity'
        assert measures[1].aggregations == (Aggregation.COUNT,)
        assert measures[1].attribute is None
        assert all(m.origin == MeasureOrigin.AUTO for m in measures)

    def test_text_only_table_offers_row_count(self, profiler):
        table = CanonicalTable(('a', 'b'), (('x', 'y'), ('z', 'y')))
        measures = profiler.select_measures(profiler.profile_table(table))
        assert [m.name for m in measures] == ['row_count']


class TestApplyOverrides:

    @pytest.fixture
    def candidates(self, profiler, order_profiles):
        return profiler.select_measures(order_profiles)

    def test_no_overrides_keeps_candidates(self, profiler, candidates, order_profiles):
        assert profiler.apply_overrides(candidates, OverrideDocument(), order_profiles) == candidates

    def test_remove_and_replace(self, profiler, candidates, order_profiles):
        overrides = OverrideDocument((
            MeasureOverride(OverrideAction.REMOVE, name='row_count'),
            MeasureOverride(OverrideAction.REPLACE, name='quantity', aggregations=(Aggregation.SUM,)),
        ))
        measures = profiler.apply_overrides(candidates, overrides, order_profiles)
        assert [(m.name, m.aggregations) for m in measures] == [('quantity', (Aggregation.SUM,))]

    def test_derived_measure_is_appended(self, profiler, candidates, order_profiles):
        overrides = OverrideDocument((MeasureOverride(OverrideAction.ADD, name='double', formula='quantity * 2'),))
        measures = profiler.apply_overrides(candidates, overrides, order_profiles)

        added = measures[-1]
        assert added.name == 'double'
        assert added.formula == 'quantity * 2'
        assert added.origin == MeasureOrigin.USER
        assert added.aggregations == AUTO

    def test_text_attribute_defaults_to_count(self, profiler, candidates, order_profiles):
        overrides = OverrideDocument((MeasureOverride(OverrideAction.ADD, attribute='cityCustomer'),))
        added = profiler.apply_overrides(candidates, overrides, order_profiles)[-1]
        assert (added.name, added.attribute, added.aggregations) == (
            'cityCustomer', 'cityCustomer', (Aggregation.COUNT,))

    @pytest.mark.parametrize('override, error', [
        (MeasureOverride(OverrideAction.REMOVE, name='revenue'), InvalidOverrideDocument),
        (MeasureOverride(OverrideAction.REPLACE, name='revenue', aggregations=(Aggregation.SUM,)),
         InvalidOverrideDocument),
        (MeasureOverride(OverrideAction.ADD, name='quantity', formula='quantity + 1'), InvalidOverrideDocument),
        (MeasureOverride(OverrideAction.ADD, attribute='price'), InvalidOverrideDocument),
        (MeasureOverride(OverrideAction.ADD, name='x', formula='price * 2'), UnknownAttributeInFormula),
        (MeasureOverride(OverrideAction.ADD, name='x', formula='cityCustomer * 2'), UnknownAttributeInFormula),
        (MeasureOverride(OverrideAction.ADD, name='x', formula='quantity *'), MalformedFormula),
    ])
    def test_invalid_edits(self, profiler, candidates, order_profiles, override, error):
        with pytest.raises(error):
            profiler.apply_overrides(candidates, OverrideDocument((override,)), order_profiles)

    def test_removed_row_count_leaves_no_measure(self, profiler):
        table = CanonicalTable(('a', 'b'), (('x', 'y'), ('z', 'y')))
        profiles = profiler.profile_table(table)
        overrides = OverrideDocument((MeasureOverride(OverrideAction.REMOVE, name='row_count'),))
        assert profiler.apply_overrides(profiler.select_measures(profiles), overrides, profiles) == []
