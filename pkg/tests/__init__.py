import json
import os
from fractions import Fraction

testdata_path = os.path.join(os.path.dirname(__file__), 'data')


def fractions(*values):
    return [Fraction(v) for v in values]


def check_records(report):
    """Invariants every scan report keeps whatever it found."""
    ps = [r.p for r in report.records]
    assert ps == sorted(ps)
    assert len(report.records) <= report.record_cap
    assert report.count >= len(report.records)
    for r in report.records:
        assert len(r.values) == report.k
        assert report.box.contains(r.values) == r.in_box


def load_report(path):
    with open(path, 'r', encoding='utf-8') as fp:
        return json.load(fp)
