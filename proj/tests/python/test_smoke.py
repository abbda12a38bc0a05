import math

import pytest

import pairheap


def test_heap_basics():
    h = pairheap.PairingHeap()
    assert len(h) == 0
    with pytest.raises(pairheap.EmptyHeap):
        h.get_min()
    handles = [h.insert(k) for k in (5, 3, 7)]
    assert h.get_min() == 3
    h.decrease_key(handles[2], 1)
    assert [h.delete_min() for _ in range(3)] == [1, 3, 5]
    assert not h


def test_errors_share_a_base():
    h = pairheap.PairingHeap()
    a = h.insert(4)
    with pytest.raises(pairheap.NotADecrease):
        h.decrease_key(a, 4)
    h.delete_min()
    with pytest.raises(pairheap.InvalidHandle):
        h.decrease_key(a, 1)
    assert issubclass(pairheap.EmptyHeap, pairheap.HeapError)


def test_merge_translates_handles():
    a, b = pairheap.PairingHeap(), pairheap.PairingHeap()
    a.insert(1)
    a.insert(4)
    two = b.insert(2)
    b.insert(3)
    offset = a.merge(b)
    assert len(a) == 4 and len(b) == 0
    assert a.key(two + offset) == 2


def test_potential_values():
    assert pairheap.node_potential(3, 2, 16) == 0
    assert pairheap.node_potential(7, 7, 16) == pytest.approx(400 + 100 * math.log2(15))
    assert pairheap.node_potential(2, 9, 16) == pytest.approx(579.248, abs=1e-3)
    assert pairheap.classify(5, 5, 16) == "L"
    assert pairheap.size_potential(8, 5) == 2700


def test_analyzed_heap_ledger():
    h = pairheap.AnalyzedHeap(verify_every_op=True)
    assert h.potential()["total"] == 900
    for k in range(1, 10):
        h.insert(k)
    assert h.delete_min() == 1
    op = h.last_op()
    assert op["kind"] == "deletemin"
    assert op["actual"] == 8
    assert op["first_pass_pairings"] == 4
    assert op["amortized"] == op["actual"] + op["phi_after"]["total"] - op["phi_before"]["total"]
    assert h.verify() is None
    assert len(h.ledger()) == 10


def test_generators_and_oracle():
    text = pairheap.gen_random(200, 1000, 7)
    assert text == pairheap.gen_random(200, 1000, 7)
    assert pairheap.compare_with_oracle(text)["matched"]
    assert pairheap.replay_outputs(pairheap.gen_sorted(50, False)) == list(range(1, 51))
    assert pairheap.compare_with_oracle(pairheap.gen_dijkstra(100, 400, 1))["matched"]


def test_validate_sorted_trace():
    reports = pairheap.validate(pairheap.gen_sorted(1024, True))
    assert set(reports) >= {"structure", "pairing-lemmas", "telescoping", "linear-range"}
    assert all(r["ok"] for r in reports.values())


def test_bad_traces():
    with pytest.raises(pairheap.TraceParseError):
        pairheap.replay_outputs("insert 1\npop\n")
    with pytest.raises(pairheap.TraceError):
        pairheap.replay_outputs("deletemin\n")


def test_ledger_csv_header():
    csv = pairheap.ledger_csv(pairheap.gen_sorted(8, True))
    header = csv.splitlines()[0].split(",")
    assert header[:10] == ["op", "kind", "n", "N", "actual", "phi_node", "phi_edge",
                           "phi_size", "phi_total", "amortized"]
    assert len(csv.splitlines()) == 17
