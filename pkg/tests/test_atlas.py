from pathlib import Path

import pytest

from vortexdiagrams.atlas import (
    CatalogEntry,
    diff_report,
    enumerate_diagrams,
    load_catalog,
    render,
    set_partitions,
)
from vortexdiagrams.diagram import Diagram, canonical_key, validate
from vortexdiagrams.lemmas import analyze
from vortexdiagrams.vorticity import decide

GOLDEN = Path(__file__).parent / "golden"

ROBERTS = Diagram(5, [(1, 2), (3, 4)], [(2, 3), (1, 4)], [1, 2, 3, 4], [1, 2, 3, 4])


class TestBudget:
    def test_refuses_rather_than_truncates(self):
        from vortexdiagrams.atlas import EnumerationBudgetError

        with pytest.raises(EnumerationBudgetError):
            enumerate_diagrams(5, max_raw_candidates=1000)

    def test_budget_large_enough_passes(self):
        report = enumerate_diagrams(3, with_catalog_diff=False, max_raw_candidates=10_000)
        assert report.candidates_raw == 25 * 64


class TestPartitions:
    def test_bell_numbers(self):
        assert len(set_partitions(3)) == 5
        assert len(set_partitions(4)) == 15
        assert len(set_partitions(5)) == 52

    def test_partitions_cover_and_disjoint(self):
        for parts in set_partitions(4):
            union = 0
            for p in parts:
                assert union & p == 0
                union |= p
            assert union == 0b1111


from oracle3 import oracle_enumerate3


class TestSmallN:
    def test_enumerate3_matches_oracle(self):
        report = enumerate_diagrams(3, with_catalog_diff=False)
        assert set(report.survivor_keys()) == oracle_enumerate3()

    def test_enumerate4_is_deterministic(self):
        a = enumerate_diagrams(4, with_catalog_diff=False)
        b = enumerate_diagrams(4, with_catalog_diff=False)
        assert a.survivor_keys() == b.survivor_keys()
        assert a.histogram == b.histogram

    def test_pipeline_partitions_classes(self):
        report = enumerate_diagrams(4, with_catalog_diff=False)
        assert len(report.survivors) + len(report.rejected) == report.unique_classes
        keys = set(report.survivor_keys())
        assert not keys & {r["key"] for r in report.rejected}


class TestCatalog:
    def test_counts(self):
        entries = load_catalog()
        assert len(entries) == 39
        assert sum(e.status == "possible" for e in entries) == 31
        assert sum(e.status == "excluded" for e in entries) == 8

    def test_all_39_entries_are_rule_consistent(self):
        # the excluded eight are rule-consistent too: they fall to the
        # lemma or ledger stages, never to validation
        for e in load_catalog():
            assert validate(e.diagram).valid, e.figure_ref

    def test_alternating_cycle_is_the_lone_plain_class(self):
        entries = [e for e in load_catalog() if e.c_class == 2 and e.status == "possible"]
        assert len(entries) == 1
        assert canonical_key(entries[0].diagram) == canonical_key(ROBERTS)

    def test_every_possible_entry_revalidates(self):
        for e in load_catalog():
            if e.status != "possible":
                continue
            assert validate(e.diagram).valid, e.figure_ref
            an = analyze(e.diagram)
            assert an.exclusion is None, e.figure_ref
            assert not decide(an.base_ledger, seed=11).infeasible, e.figure_ref
            if an.branch_ledgers:  # at least one multiplier class survives
                verdicts = [decide(led, seed=11) for led in an.branch_ledgers.values()]
                assert any(not v.infeasible for v in verdicts), e.figure_ref

    def test_keys_are_distinct(self):
        keys = [e.key for e in load_catalog()]
        assert len(set(keys)) == 39

    def test_excluded_entries_have_lemmas(self):
        for e in load_catalog():
            if e.status == "excluded":
                assert e.excluding_lemma in {
                    "Dumbbell",
                    "Triangle",
                    "Quadrilateral",
                    "constraint-infeasibility",
                }

    def test_entries_expose_ledgers_and_branches(self):
        by_ref = {e.figure_ref: e for e in load_catalog()}
        plain = by_ref["C4a #1"]
        assert [p.to_text() for p in plain.ledger.equalities] == ["G1*G2 + G1*G3 + G2*G3"]
        paired = by_ref["C0 #1"]
        assert set(paired.branches) == {"+-1", "+-i"}
        assert decide(paired.branches["+-1"]).feasible


@pytest.fixture(scope="module")
def report5():
    return enumerate_diagrams(5, with_catalog_diff=False)


class TestDiff:
    def test_reproduction_diff_is_empty(self, report5):
        diff = diff_report(report5, load_catalog())
        assert diff == {"missing": [], "extra": []}

    def test_missing_entry_is_reported(self, report5):
        catalog = load_catalog()
        trimmed = [e for e in catalog if e.figure_ref != "C2 #2"]
        diff = diff_report(report5, trimmed)
        assert diff["missing"] == []
        assert len(diff["extra"]) == 1

    def test_relabeled_duplicate_is_not_spurious(self, report5):
        catalog = load_catalog()
        mapping = {1: 3, 2: 4, 3: 5, 4: 1, 5: 2}
        duplicate = CatalogEntry(
            ROBERTS.relabeled(mapping), 2, "possible", None, "C2 dup", "", "unknown"
        )
        diff = diff_report(report5, catalog + [duplicate])
        assert diff == {"missing": [], "extra": []}


class TestRender:
    @pytest.mark.parametrize("fmt", ["dot", "svg", "tikz"])
    def test_golden_alternating_cycle(self, fmt):
        assert render(ROBERTS, fmt) == (GOLDEN / f"roberts.{fmt}").read_text()

    @pytest.mark.parametrize("fmt", ["dot", "svg", "tikz"])
    def test_golden_bare_triangle(self, fmt):
        d = Diagram(5, [(1, 2), (1, 3), (2, 3)], [(1, 2), (1, 3), (2, 3)], [], [])
        assert render(d, fmt) == (GOLDEN / f"bare_triangle.{fmt}").read_text()

    def test_uncircled_diagram_has_no_rings(self):
        d = Diagram(5, [(1, 2), (1, 3), (2, 3)], [(1, 2), (1, 3), (2, 3)], [], [])
        svg = render(d, "svg")
        assert 'fill="none"' not in svg  # rings are the only unfilled circles
        dot = render(d, "dot")
        assert "ring" not in dot

    def test_color_conventions(self):
        svg = render(ROBERTS, "svg")
        assert svg.count("#cc0000") == 2 + 4  # two z-strokes, four z-rings
        assert svg.count("#0000cc") == 2 + 4
        assert "stroke-dasharray" in svg
        tikz = render(ROBERTS, "tikz")
        assert "red" in tikz and "blue" in tikz and "dashed" in tikz

    def test_unsupported_format(self):
        with pytest.raises(ValueError):
            render(ROBERTS, "png")

    def test_mutual_edges_draw_offset_strokes(self):
        d = Diagram(5, [(1, 2)], [(1, 2)], [1, 2], [1, 2])
        svg = render(d, "svg")
        assert svg.count("<line") == 2


class TestStageMonotonicity:
    def test_survivors_shrink_through_stages(self, report5):
        # every survivor passed validation and the lemma stage: rejected
        # classes at later stages never reappear among survivors
        lemma_rejected = {r["key"] for r in report5.rejected if r["stage"] == "lemma"}
        ledger_rejected = {r["key"] for r in report5.rejected if r["stage"] == "ledger"}
        keys = set(report5.survivor_keys())
        assert not keys & lemma_rejected
        assert not keys & ledger_rejected
        for s in report5.survivors:
            assert validate(s.diagram).valid
