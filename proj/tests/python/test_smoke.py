import os

import pytest

try:
    import hncomb as m
except ImportError:
    import _hncomb as m


def test_counts_on_the_symplectic_example():
    inst = m.Instance("C", 2, ["0", "1"], K=[1])
    d = inst.describe()
    assert d["adm"] == 13
    assert d["adm_min_coset"] == 9
    assert d["spade"] == 4


def test_rank_one_classes_and_decision():
    inst = m.Instance("A", 1, ["1"])
    classes = inst.bgmu()
    assert len(classes) == 2
    assert sorted(c["basic"] for c in classes) == [False, True]
    decision = inst.decide()
    assert decision["agree"]
    assert decision["minute"]

    bad = m.Instance("A", 2, ["2", "0"])
    assert not bad.minute()["minute"]
    assert not bad.fully_hn()


def test_decomposition_blocks():
    inst = m.Instance("A", 1, ["1"])
    nonbasic = [i for i, c in enumerate(inst.bgmu()) if not c["basic"]]
    rep = inst.hn_decompose(nonbasic[0])
    assert rep["verified"]
    members = [b["members"] for b in rep["blocks"] if b["members"]]
    assert len(members) == 2
    assert all(len(block) == 1 for block in members)


def test_config_errors():
    with pytest.raises(Exception):
        m.Instance("E", 6, ["1"] * 6)
    with pytest.raises(Exception):
        m.Instance("A", 1, ["1/2"])


def test_scan_small():
    res = m.scan(types="A1,C2", mu_bound="3", jobs=2)
    assert res["all_agree"]
    rows = {(r["group"], r["mu"], r["sigma"]): r["in_table"] for r in res["rows"]}
    assert rows[("A1", "1", "t0;1")]
    assert rows[("C2", "0,1", "t1;12")]


def test_verify_single_criterion():
    data_dir = os.environ.get("HNCOMB_DATA_DIR", "data")
    results = m.verify(criterion="figure2", data_dir=data_dir)
    assert len(results) == 1
    assert results[0]["pass"], results[0]["detail"]
