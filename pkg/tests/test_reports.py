import pytest
from hypothesis import given
from hypothesis import strategies as st

from squarecode.reports import (
    CSV_HEADER,
    DistinguisherReport,
    csv_header_line,
    read_csv,
    read_jsonl,
    to_csv_row,
)

reports = st.builds(
    DistinguisherReport,
    family=st.sampled_from(["grs", "alternant", "goppa"]),
    q=st.integers(2, 100),
    m=st.integers(1, 20),
    n=st.integers(1, 10**5),
    r=st.integers(1, 100),
    predicted_dim=st.integers(0, 10**5),
    random_expected_dim=st.integers(0, 10**5),
    e_used=st.integers(0, 10),
    saturated=st.booleans(),
    verdict=st.sampled_from(["distinguishable", "not-distinguishable"]),
    seed=st.none() | st.integers(0, 2**64 - 1),
    measured_dim=st.none() | st.integers(0, 10**5),
    deficiency_D=st.none() | st.integers(0, 10**6),
    dual_dim=st.none() | st.integers(0, 10**5),
)


@given(reports)
def test_json_round_trip(rep):
    assert DistinguisherReport.from_json(rep.to_json()) == rep


@given(st.lists(reports, max_size=5))
def test_csv_round_trip(reps):
    text = csv_header_line() + "".join(to_csv_row(r) for r in reps)
    assert read_csv(text) == reps


@given(st.lists(reports, max_size=5))
def test_jsonl_round_trip(reps):
    assert read_jsonl("".join(r.to_json() + "\n" for r in reps)) == reps


def test_header_is_versioned():
    assert CSV_HEADER[0] == "schema"
    assert csv_header_line().startswith("schema,family,q,m,n,r,")


def test_unknown_schema_rejected():
    rep = DistinguisherReport("goppa", 2, 4, 16, 2, 10, 16, 1, False, "distinguishable")
    row = to_csv_row(rep).replace("1,", "2,", 1)
    with pytest.raises(ValueError):
        read_csv(csv_header_line() + row)


def test_distinguishable_flag():
    rep = DistinguisherReport("goppa", 2, 4, 16, 2, 10, 16, 1, False, "distinguishable")
    assert rep.distinguishable
