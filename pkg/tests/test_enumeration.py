from functools import lru_cache

import pytest

from oracles import integer_matrix_masks, random_integer_space_masks, small_matrix_table
from qlines.betweenness import Betweenness, has_universal_line, lines_of
from qlines.constructions import expected_betweenness_C, expected_betweenness_D
from qlines.enumeration import (
    BudgetExhausted, SearchConfig, classify_constructions, enumerate_betweennesses,
    realizable_masks, triple_order,
)
from qlines.isomorphism import canonical_form
from qlines.partitions import end_swap_classes, p3, rotation_classes
from qlines.realizability import verify_witness


@lru_cache(maxsize=None)
def search(n, lines, mode="quasimetric", forbid_universal=True, canonical_only=True):
    return enumerate_betweennesses(SearchConfig(n, lines, forbid_universal, mode, None, canonical_only))


def forms(report):
    return {cf for cf, _ in report.classes}


def decode(n, mask):
    return Betweenness(n, [t for i, t in enumerate(triple_order(n)) if mask >> i & 1])


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(2)
    with pytest.raises(ValueError):
        SearchConfig(4, target_lines=2)
    with pytest.raises(ValueError):
        SearchConfig(4, mode="euclidean")
    assert SearchConfig(4, target_lines=1, forbid_universal=False).target_lines == 1


def test_subrelation_tables():
    assert len(realizable_masks(3, "quasimetric")) == 18
    assert len(realizable_masks(3, "metric")) == 4
    assert len(realizable_masks(4, "quasimetric")) == 6008
    assert len(realizable_masks(4, "metric")) == 74


def test_four_points_three_lines():
    r = search(4, 3)
    assert r.complete and len(r.classes) == 1
    assert r.classes[0][0] == canonical_form(expected_betweenness_C((2, 1, 1)))
    assert search(4, 3, "metric").classes == []


def test_four_points_four_lines():
    r = search(4, 4)
    assert r.complete
    assert forms(r) == {canonical_form(expected_betweenness_D(v, (1, 1, 1))) for v in (1, 2)}


def test_four_points_four_lines_metric_is_the_second_family():
    r = search(4, 4, "metric")
    assert forms(r) == {canonical_form(expected_betweenness_D(2, (1, 1, 1)))}


@pytest.mark.parametrize("n,lines,family", [(4, 3, "C"), (4, 4, "D"), (5, 3, "C"), (5, 4, "D")])
def test_search_agrees_with_constructions(n, lines, family):
    r = search(n, lines)
    assert r.complete
    assert forms(r) == forms(classify_constructions(n, family))


@pytest.mark.parametrize("n,lines,mode", [(4, 3, "quasimetric"), (4, 4, "quasimetric"),
                                          (5, 3, "quasimetric"), (5, 5, "metric")])
def test_reported_witnesses(n, lines, mode):
    for cf, witness in search(n, lines, mode).classes:
        b = cf.betweenness()
        ls = lines_of(b)
        assert len(ls) == lines and not any(ls.universal_flags)
        assert verify_witness(b, witness)
        if mode == "metric":
            assert witness.is_metric()


def test_classes_pairwise_non_isomorphic():
    r = search(5, 5)
    assert len(forms(r)) == len(r.classes) == 27


def test_no_class_below_three_lines():
    for cf, _ in search(4, None).classes:
        assert len(lines_of(cf.betweenness())) >= 3


def test_determinism():
    cfg = SearchConfig(4, None, True, "quasimetric")
    a, b = enumerate_betweennesses(cfg), enumerate_betweennesses(cfg)

    def strip(r):
        return {k: v for k, v in r.to_json_obj().items() if k != "elapsed"}

    assert strip(a) == strip(b)


def test_orderly_pruning_loses_nothing_at_four_points():
    assert forms(search(4, None)) == forms(search(4, None, canonical_only=False))


def test_all_four_point_classes_match_oracle():
    expected = {canonical_form(decode(4, m)) for m in small_matrix_table(4, False)}
    assert forms(search(4, None, forbid_universal=False)) == expected


def test_five_point_metric_search_covers_small_integer_metrics():
    found = forms(search(5, None, "metric"))
    for m in integer_matrix_masks(5, range(1, 4), symmetric=True):
        b = decode(5, m)
        if not has_universal_line(b):
            assert canonical_form(b) in found


def test_five_point_search_covers_random_integer_quasimetrics():
    targets = {k: forms(search(5, k)) for k in (3, 4, 5)}
    seen = 0
    for m in random_integer_space_masks(5, 100_000, seed=1):
        b = decode(5, m)
        k = len(lines_of(b))
        if k in targets and not has_universal_line(b):
            assert canonical_form(b) in targets[k]
            seen += 1
    assert seen > 0


def test_budget_exhausted_carries_partial_report():
    with pytest.raises(BudgetExhausted) as info:
        enumerate_betweennesses(SearchConfig(6, 4, True, "quasimetric", time_budget=0.2))
    rep = info.value.report
    assert not rep.complete and rep.to_json_obj()["complete"] is False
    rep = enumerate_betweennesses(SearchConfig(6, 4, True, "quasimetric", time_budget=0.2),
                                  raise_on_budget=False)
    assert not rep.complete


def test_classify_constructions_counts():
    assert len(classify_constructions(4, "C").classes) == p3(4) == 1
    assert len(classify_constructions(7, "C").classes) == p3(7) == 4
    six = classify_constructions(6, "D")
    assert len(six.classes) == rotation_classes(5) + end_swap_classes(5) == 6
    with pytest.raises(ValueError):
        classify_constructions(6, "E")


def test_report_json():
    obj = search(4, 3).to_json_obj()
    assert obj["complete"] and obj["n"] == 4 and obj["target_lines"] == 3
    (cls,) = obj["classes"]
    assert cls["line_sizes"] == [2, 3, 3]
    assert len(cls["witness"]) == 4
