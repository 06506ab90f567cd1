from collections import Counter

import pytest

from klmu.cells import (
    LEFT_CELLS,
    c0_certificate,
    c2_parametrize,
    cell_label,
    left_cell,
    pattern_a,
    two_sided_cell,
)


def test_examples(W):
    assert two_sided_cell(W.identity) == "c_e"
    assert two_sided_cell(W("rtstr")) == "c_2"
    assert two_sided_cell(W("stst")) == "c_0"
    assert left_cell(W.identity) == "D_empty"
    assert left_cell(W("stst")) == "A_st"
    assert left_cell(W("r")) == "C_r"
    assert [pattern_a(W(x)) for x in ("s", "srts", "stst")] == [1, 2, 4]


def test_c2_coordinates(W):
    c = c2_parametrize(W("rsrtsr"))
    assert (str(c.u), c.m, str(c.v)) == ("rs", 0, "sr")
    c = c2_parametrize(W("srts"))
    assert (str(c.u), c.m, str(c.v)) == ("s", 0, "s")
    assert c2_parametrize(W.identity) is None
    assert c.element() == W("srts")


def test_c0_certificate_is_length_additive(W):
    for w in W.ball(10):
        cert = c0_certificate(w)
        if cert is not None:
            u, w0, u2 = cert
            assert u * w0 * u2 == w
            assert u.length + w0.length + u2.length == w.length


def test_partition_counts(W):
    counts = Counter(two_sided_cell(w) for w in W.ball(14))
    assert counts == {"c_0": 162, "c_2": 61, "c_1": 57, "c_e": 1}
    assert {left_cell(w) for w in W.ball(14)} == set(LEFT_CELLS)


def test_left_cells_are_stable_under_inverse_descents(W):
    # the two-sided cell is inverse-invariant
    for w in W.ball(12):
        assert two_sided_cell(w) == two_sided_cell(w.inverse())


def test_label(W):
    lab = cell_label(W("rtstr"))
    assert (lab.two_sided, lab.left, lab.a) == ("c_2", "B_rt", 2)


def test_rejects_other_systems(A):
    with pytest.raises(ValueError):
        two_sided_cell(A("01"))
