import csv
import io
import json

import pytest

from dehnroots.pairing import max_degree_for_genus, max_root_degree
from dehnroots.reports import (BoundRow, classification_report, printed_classification,
                               printed_tables, ratio_string, rows_to_csv, rows_to_json,
                               rows_to_markdown, table1, table2, table_discrepancies)


@pytest.mark.parametrize("m,U,s", [(210, 210, "1.00"), (12, 20, "0.60"), (90, 110, "0.82"),
                                   (1, 8, "0.13"), (5, 8, "0.63"), (570, 702, "0.81")])
def test_ratio_round_half_up(m, U, s):
    assert ratio_string(m, U) == s


def test_table1_rows():
    rows = {r.g: r for r in table1(2, 13)}
    assert (rows[2].m, rows[2].U, rows[2].ratio) == (12, 20, "0.60")
    assert (rows[13].m, rows[13].U, rows[13].ratio) == (570, 702, "0.81")
    assert rows[7].ratio == "1.00"
    for r in rows.values():
        assert r.m <= r.U
        assert r.m == max_degree_for_genus(r.g, with_root=False).m
        assert r.m_spherical == r.m


def test_table1_precondition():
    with pytest.raises(ValueError):
        table1(1, 3)


def test_table1_against_printed_only_g5_ratio_differs():
    # printed 0.81 for 90/110 = 0.8181...; half-up rounding gives 0.82
    diffs = table_discrepancies(table1(2, 20))
    assert diffs == [{"g": 5, "split": None, "field": "ratio", "printed": "0.81", "computed": "0.82"}]


def test_table2_first_rows():
    rows = table2(11, 30, 31)
    assert [(r.g, r.split, r.m, r.U_stable, r.U) for r in rows] == [
        (30, (15, 15), 2790, 3038, 3658),
        (31, (16, 15), 3162, 3286, 3906),
    ]
    assert table_discrepancies(rows) == []


def test_table2_later_rows():
    rows = {r.split: r for r in table2(11, 33, 35)}
    r = rows[(18, 15)]
    assert (r.g, r.m, r.U_stable, r.U) == (33, 3534, 3782, 4402)
    r = rows[(20, 15)]
    assert (r.g, r.m, r.U_stable, r.U) == (35, 3690, 4278, 4898)
    for r in rows.values():
        assert r.m == max_root_degree(*r.split)
        assert r.m <= r.U_stable < r.U


def test_table2_matches_printed_in_full():
    rows = table2(11, 30, 35)
    printed = printed_tables()["table2"]["rows"]
    assert [(r.g, *r.split) for r in rows] == [(p["g"], p["g1"], p["g2"]) for p in printed]
    assert table_discrepancies(rows) == []


def test_table2_sorted_and_filtered():
    rows = table2(3, 14, 16)
    assert rows == sorted(rows, key=lambda r: (r.g, r.split[0]))
    assert all(min(r.split) > 6 for r in rows)
    with pytest.raises(ValueError):
        table2(2, 30, 30)


def test_formats():
    rows = table2(11, 30, 30)
    parsed = list(csv.DictReader(io.StringIO(rows_to_csv(rows))))
    assert list(parsed[0]) == ["g", "g1", "g2", "m", "U_stable", "U", "ratio"]
    assert parsed[0]["m"] == "2790"
    assert json.loads(rows_to_json(rows))[0]["U_stable"] == 3038
    md = rows_to_markdown(rows)
    assert "U(g1,g2,11)" in md and "| 30 | (15, 15) | 2790 | 3038 | 3658 |" in md
    md1 = rows_to_markdown(table1(7, 7))
    assert "| 7 | 210 | 210 | 1.00 |" in md1
    t1 = list(csv.DictReader(io.StringIO(rows_to_csv(table1(2, 2)))))
    assert t1[0]["g1"] == "" and t1[0]["ratio"] == "0.60"


def test_boundrow_dict():
    r = BoundRow(2, 12, 20, "0.60")
    assert r.to_dict()["g1"] is None


def test_printed_data_loads():
    data = printed_classification()["splits"]
    assert len(data["1,1"]) == 10
    assert len(printed_tables()["table1"]) == 34


class TestClassification:
    def test_genus2(self):
        rep = classification_report(1, 1)
        assert {n: len(v) for n, v in rep.groups.items()} == {2: 1, 3: 2, 4: 2, 6: 3, 12: 2}
        assert rep.count("confirmed") == 10
        assert rep.count("typo-suspected") == 0 and rep.count("missing") == 0
        assert json.loads(rep.errata_json()) == []

    def test_genus3(self):
        rep = classification_report(2, 1)
        assert len(rep.groups[8]) == 4
        assert max(rep.groups) == 30
        flagged = {e.location: e for e in rep.errata if e.status == "typo-suspected"}
        assert {"genus 3, n=10 (ii)", "genus 3, n=10 (iii)", "genus 3, n=30 (i)"} <= set(flagged)
        for e in flagged.values():
            assert e.corrected and e.reason

    def test_genus3_corrections(self):
        rep = classification_report(2, 1)
        fix = {e.location: e.corrected for e in rep.errata if e.status == "typo-suspected"}
        assert fix["genus 3, n=30 (i)"] == "((10, 0, 3; (1,2), (1,5)), (3, 0, 1; (1,3), (1,3)))"
        assert fix["genus 3, n=10 (ii)"] == "((5, 0, 2; (1,5), (2,5)), (2, 0, 1; (1,2), (1,2), (1,2)))"

    def test_genus3_every_printed_class_accounted_for(self):
        rep = classification_report(2, 1)
        total = sum(len(v) for v in rep.groups.values())
        corrected = {e.corrected for e in rep.errata if e.status != "confirmed"}
        assert rep.count("confirmed") + len(corrected) == total
        assert rep.count("missing") == 2

    def test_notes_flag_label_collisions(self):
        rep = classification_report(2, 1)
        labels = {n["label"] for n in rep.notes if n["kind"] == "label-collision"}
        assert {"D_{5,2,5}", "D_{5,2,6}"} <= labels

    def test_no_printed_list(self):
        rep = classification_report(2, 2)
        assert rep.errata == [] and rep.groups

    def test_text_and_json(self):
        rep = classification_report(1, 1)
        txt = rep.to_text()
        assert "For n = 12:" in txt and "(ii)" in txt
        data = json.loads(rep.to_json())
        assert set(data["degrees"]) == {"2", "3", "4", "6", "12"}
        err = json.loads(classification_report(2, 1).errata_json())
        assert {"location", "printed", "status", "corrected"} <= set(err[0])
