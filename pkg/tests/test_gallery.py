import json

from clusterdeep.errors import CoverInvariantError
from clusterdeep.gallery import (
    GalleryEntry,
    build_entries,
    run_gallery,
)
from clusterdeep.quiver import path_quiver


def test_all_entries_pass():
    report = run_gallery()
    failing = [r for r in report.results if not r.ok]
    assert report.ok, [(r.entry_id, r.error, r.actual) for r in failing]
    assert len(report.results) == 13


def test_entry_ids_unique_and_known():
    ids = [e.entry_id for e in build_entries()]
    assert len(ids) == len(set(ids))
    assert "a2-five-tori" in ids
    assert "star-2-3-mysterious" in ids


def test_filter_narrows():
    report = run_gallery("star-2-3")
    ids = {r.entry_id for r in report.results}
    assert ids == {
        "star-2-3-dilation",
        "star-2-3-gcd-cert",
        "star-2-3-mysterious",
        "star-2-3-freeze-flip",
    }
    assert report.ok


def test_a2_membership_matrix_pinned():
    (result,) = run_gallery("a2-five-tori").results
    assert result.actual["membership"] == [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
    ]
    assert result.actual["seed_count"] == 5


def test_report_json_serializable():
    report = run_gallery("dilation")
    doc = report.to_json_dict()
    text = json.dumps(doc)
    back = json.loads(text)
    assert back["ok"] is True
    assert all(set(r) >= {"id", "anchor", "ok"} for r in back["results"])


def test_failing_check_is_reported_not_raised():
    def boom(entry):
        raise CoverInvariantError("synthetic breakage")

    entry = GalleryEntry(
        entry_id="synthetic",
        anchor="always fails",
        quiver=path_quiver(2),
        points=(),
        expected={"ok": True},
        check=boom,
    )
    result = entry.run()
    assert not result.ok
    assert "synthetic breakage" in result.error


def test_expected_subset_semantics():
    def extra(entry):
        return {"a": 1, "informational": "noise"}

    entry = GalleryEntry(
        entry_id="subset",
        anchor="extras ignored",
        quiver=path_quiver(2),
        points=(),
        expected={"a": 1},
        check=extra,
    )
    assert entry.run().ok


def test_format_lines_mentions_every_entry():
    report = run_gallery()
    lines = report.format_lines()
    assert sum(1 for ln in lines if ln.startswith("PASS")) == 13
    assert lines[-1] == "13/13 entries passed"
