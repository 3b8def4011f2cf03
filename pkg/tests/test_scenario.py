import pytest

from ppir import (
    ClassMap,
    Scenario,
    SideInformation,
    random_store,
    random_symbol,
    sequential_class_map,
    validate_scenario,
)
from ppir.errors import MalformedScenario, OutOfRange, UnidentifiableAccess
from ppir.field import PrimeField

# The worked nine-message index mapping: three classes listed out of global order.
MAPPING = ClassMap([(1, 8, 7), (2, 3, 5), (4, 6, 9)])


class TestClassMap:
    def test_pair_to_global_goldens(self):
        assert MAPPING.pair_to_global(2, 3) == 5
        assert MAPPING.pair_to_global(1, 1) == 1
        assert MAPPING.pair_to_global(3, 3) == 9

    def test_global_to_pair_goldens(self):
        assert MAPPING.global_to_pair(5) == (2, 3)
        assert MAPPING.global_to_pair(8) == (1, 2)

    def test_bijection(self):
        for f in range(1, 10):
            i, beta = MAPPING.global_to_pair(f)
            assert MAPPING.pair_to_global(i, beta) == f

    def test_sizes(self):
        assert MAPPING.sizes == (3, 3, 3)
        assert sum(MAPPING.sizes) == MAPPING.total_messages == 9

    @pytest.mark.parametrize("i,beta", [(0, 1), (4, 1), (1, 0), (1, 4)])
    def test_pair_out_of_range(self, i, beta):
        with pytest.raises(OutOfRange):
            MAPPING.pair_to_global(i, beta)

    @pytest.mark.parametrize("f", [0, 10])
    def test_global_out_of_range(self, f):
        with pytest.raises(OutOfRange):
            MAPPING.global_to_pair(f)

    def test_overlapping_classes_rejected(self):
        with pytest.raises(MalformedScenario):
            ClassMap([(1, 2), (2, 3)])

    def test_gap_rejected(self):
        with pytest.raises(MalformedScenario):
            ClassMap([(1, 2), (4, 5)])

    def test_empty_class_rejected(self):
        with pytest.raises(MalformedScenario):
            ClassMap([(1, 2), ()])


class TestSideInformationView:
    def test_identifiable_indices_visible(self, five_class):
        si = five_class.scenario.users[0]
        assert si.known_indices(1) == frozenset({3, 4, 7})
        assert si.known_indices(3) == frozenset({1, 2, 3, 4, 6})

    def test_unidentifiable_indices_hidden(self, five_class):
        si = five_class.scenario.users[0]
        with pytest.raises(UnidentifiableAccess):
            si.known_indices(4)
        with pytest.raises(UnidentifiableAccess):
            si.known_indices(5)

    def test_counts_always_visible(self, five_class):
        si = five_class.scenario.users[0]
        assert si.counts == (3, 4, 5, 2, 3)
        assert si.total == 17

    def test_oracle_sees_everything(self, five_class):
        si = five_class.scenario.users[0]
        assert si.oracle_indices(4) == frozenset({2, 3})
        assert si.oracle_indices(5) == frozenset({1, 2, 8})


def _five_class_with_counts(base: Scenario, class1_indices) -> Scenario:
    si = base.users[0]
    indices = list(si.indices)
    indices[0] = frozenset(class1_indices)
    return Scenario(
        base.store, base.class_map, (SideInformation(si.identifiable_count, tuple(indices)),),
        base.identifiable_count, base.seed,
    )


class TestValidation:
    def test_five_class_passes_single(self, five_class):
        report = validate_scenario(five_class.scenario, "single")
        assert report.ok, report.failed()

    def test_six_class_passes_single(self, six_class):
        assert validate_scenario(six_class.scenario, "single").ok

    def test_two_user_passes_multi(self, two_user):
        report = validate_scenario(two_user.scenario, "multi")
        assert report.ok, report.failed()

    def test_tiny_passes_single(self, tiny):
        assert validate_scenario(tiny.scenario, "single").ok

    def test_fsi_passes_both_modes(self, fsi):
        assert validate_scenario(fsi.scenario, "single").ok
        assert validate_scenario(fsi.scenario, "multi").ok

    def test_shallow_identifiable_class_fails(self, five_class):
        # Dropping class 1's depth below the largest unidentifiable count (3)
        # must trip the depth rule.
        weakened = _five_class_with_counts(five_class.scenario, {3, 4})
        report = validate_scenario(weakened, "single")
        failed = {r.name for r in report.failed()}
        assert "identifiable_depth" in failed

    def test_boundary_depth_passes(self, five_class):
        # Depth exactly equal to the largest unidentifiable count is allowed.
        assert five_class.scenario.users[0].count(1) == five_class.scenario.max_unidentified_count()
        assert validate_scenario(five_class.scenario, "single").ok

    def test_multi_mode_needs_strict_depth(self, five_class):
        report = validate_scenario(five_class.scenario, "multi")
        assert "identifiable_depth" in {r.name for r in report.failed()}

    def test_single_mode_requires_one_user(self, two_user):
        report = validate_scenario(two_user.scenario, "single")
        assert "single_user_count" in {r.name for r in report.failed()}

    def test_two_user_small_fails_query_budget(self, two_user_small):
        report = validate_scenario(two_user_small.scenario, "multi")
        assert "query_budget" in {r.name for r in report.failed()}

    def test_small_class_fails_pool_rule(self):
        field = PrimeField(23)
        sizes = (5, 5, 4, 1)
        store = random_store(field, sizes, 1, 0)
        si = SideInformation(2, (frozenset({1, 2, 3}), frozenset({1, 2, 3}), frozenset({1, 2}), frozenset()))
        s = Scenario(store, sequential_class_map(sizes), (si,), 2, 0)
        report = validate_scenario(s, "single")
        assert "subclass_pool" in {r.name for r in report.failed()}

    def test_small_field_fails_code_rule(self):
        field = PrimeField(5)
        sizes = (4, 4, 4, 4)
        store = random_store(field, sizes, 1, 0)
        si = SideInformation(2, (frozenset({1, 2}), frozenset({1, 2}), frozenset({1}), frozenset()))
        s = Scenario(store, sequential_class_map(sizes), (si,), 2, 0)
        report = validate_scenario(s, "single")
        assert "field_supports_code" in {r.name for r in report.failed()}

    def test_out_of_rotation_class_needs_strict_depth(self):
        # Four identifiable classes but only two queries: the rotation never
        # reaches classes 3 and 4, so depth exactly equal to the largest
        # unidentifiable count is no longer enough there.
        field = PrimeField(23)
        sizes = (6, 6, 6, 6, 4)
        store = random_store(field, sizes, 1, 0)
        base = [frozenset({1}), frozenset({1}), frozenset({1}), frozenset({1}), frozenset({1})]
        s = Scenario(store, sequential_class_map(sizes), (SideInformation(4, tuple(base)),), 4, 0)
        report = validate_scenario(s, "single")
        assert "identifiable_depth" in {r.name for r in report.failed()}
        deeper = [frozenset({1}), frozenset({1}), frozenset({1, 2}), frozenset({1, 2}), frozenset({1})]
        s2 = Scenario(store, sequential_class_map(sizes), (SideInformation(4, tuple(deeper)),), 4, 0)
        assert validate_scenario(s2, "single").ok

    def test_validation_is_pure(self, five_class):
        a = validate_scenario(five_class.scenario, "single")
        b = validate_scenario(five_class.scenario, "single")
        assert a == b


class TestRandomSymbols:
    def test_deterministic(self):
        assert random_symbol(7, 3, 1, 11) == random_symbol(7, 3, 1, 11)

    def test_varies_with_inputs(self):
        values = {random_symbol(7, f, ell, 101) for f in range(1, 20) for ell in (1, 2)}
        assert len(values) > 10

    def test_in_range(self):
        for f in range(1, 50):
            assert 0 <= random_symbol(1, f, 1, 13) < 13
