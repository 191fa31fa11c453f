import json
from fractions import Fraction

import pytest

import condtree


def test_sample_tree_positive():
    counts, labels = condtree.sample_tree("PBarNx", n=12, x=1, seed=3)
    assert len(counts) == 13 == len(labels)
    assert sum(counts) == 12
    assert all(u > 0 for u in labels)


def test_same_seed_same_tree():
    a = condtree.sample_tree("PNx", n=30, seed=9, stream=2)
    b = condtree.sample_tree("PNx", n=30, seed=9, stream=2)
    assert a == b


def test_reroot_label_shift():
    counts, labels = condtree.reroot([2, 0, 0], [0.0, 1.0, -1.0], 2)
    assert labels[0] == 0.0
    assert sorted(labels) == [0.0, 1.0, 2.0]


def test_identity_report():
    report = condtree.verify_identity("reroot", 3)
    assert report["equal"] is True
    assert report["terms"] == 54
    closed = condtree.verify_identity("reroot-closed", 2, gamma="pm1")
    assert closed["equal"] is True


def test_counts():
    c = condtree.count_well_labelled(3)
    assert c["well_labelled"] == 54
    assert c["all"] == 27 * 5
    assert Fraction(c["ratio"]) == Fraction(2, 5)


def test_bijection_round_trip():
    counts, labels = [1, 2, 0, 0], [1, 2, 1, 2]
    quad = condtree.quad_from_tree(counts, labels)
    assert quad["n"] == 3
    back = condtree.tree_from_quad(quad)
    assert list(back[0]) == counts and list(back[1]) == labels
    dist = condtree.quad_distances(quad)
    assert dist[:4] == labels and dist[4] == 0


def test_uniform_maps_at_n2():
    codes = {condtree.quad_code(condtree.sample_quad(2, seed=1, stream=i)) for i in range(400)}
    assert len(codes) == 9


def test_snake_and_ks():
    e, z = condtree.sample_snake(128, seed=4, conditioned=True)
    assert e[0] == 0 and e[-1] == 0
    assert min(z) == 0 and z[0] == 0
    assert condtree.ks_two_sample([0.0], [1.0]) == 1.0


def test_cli_and_errors():
    status, out, _ = condtree.run_cli(["verify", "--identity", "counts", "--n", "2"])
    assert status == 0
    assert json.loads(out)["equal"] is True
    with pytest.raises(condtree.Error):
        condtree.quad_from_tree([1, 0], [2, 3])
    with pytest.raises(condtree.Error):
        condtree.sample_tree("PBarNx", seed=1)
