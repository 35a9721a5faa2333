import pytest

import tropmarg


def test_residual_of_worked_example():
    a = [[0, 85, -6], [-72, 53, -97], [-72, 52, -69]]
    assert tropmarg.residual_right(a) == [[0, 125, 3], [-85, 0, -91], [25, 150, 0]]


def test_residual_is_a_solution():
    a = [[3, 2], [1, 5]]
    for semiring in ("min-plus", "max-plus"):
        x = tropmarg.residual_right(a, semiring)
        assert tropmarg.mat_mul(a, x, semiring) == a
        y = tropmarg.residual_left(a, semiring)
        assert tropmarg.mat_mul(y, a, semiring) == a


def test_exact_entries():
    assert tropmarg.mat_mul([["1/2", "inf"]] * 2, [[0, "inf"], ["inf", 0]]) == [["1/2", "inf"]] * 2
    big = "123456789012345678901234567890"
    assert tropmarg.mat_mul([[big]], [[0]]) == [[big]]


@pytest.mark.parametrize("encoding", ["raw", "interval", "delta"])
@pytest.mark.parametrize(
    "word,matrices",
    [
        ("right", [[[4, 1], [0, 3]]]),
        ("sandwich", [[[4, 1], [0, 3]]]),
        ("additive", [[[4, 1], [0, 3]]]),
        ("five-factor", [[[4, 1], [0, 3]], [[2, 2], [5, 0]], [[1, 7], [3, 3]]]),
        ("chain", [[[4, 1], [0, 3]], [[2, 2], [5, 0]], [[1, 7], [3, 3]]]),
    ],
)
def test_sampled_sets_verify(word, matrices, encoding):
    word_doc, set_doc = tropmarg.sample_marginal(word, matrices, count=3, seed=7, encoding=encoding)
    assert tropmarg.verify_marginal(set_doc, word_doc) == [True, True, True]


def test_tampered_tuple_fails():
    word_doc, set_doc = tropmarg.sample_marginal("sandwich", [[[4, 1], [0, 3]]], count=2, seed=1)
    set_doc["tuples"][0][0][0][1] = -1000
    assert tropmarg.verify_marginal(set_doc, word_doc) == [False, True]


def test_exhaustion_and_malformed_input():
    with pytest.raises(tropmarg.SamplerExhausted):
        tropmarg.sample_marginal("right", [[[0]]], count=2)
    with pytest.raises(ValueError):
        tropmarg.mat_mul([[1, 2], [3]], [[0]])


def test_worked_protocols_agree():
    assert set(tropmarg.fixture_names()) == {"one-sided-3x3", "sandwich-4x4", "multiblock-3x3"}
    t = tropmarg.run_fixture("sandwich-4x4")
    assert t["agreement"]
    assert t["secrets"]["alice"]["key"] == [
        [202, 208, 164, 183],
        [217, 223, 179, 198],
        [203, 209, 165, 184],
        [200, 206, 162, 181],
    ]


def test_protocol_replay_is_deterministic():
    params = tropmarg.run_fixture("multiblock-3x3")["params"]
    a = tropmarg.run_protocol("multiblock", params, seed=11)
    b = tropmarg.run_protocol("multiblock", params, seed=11)
    assert a == b and a["agreement"]


def test_attack_report_shape():
    report = tropmarg.attack(tropmarg.run_fixture("one-sided-3x3"), degree=2)
    assert report["verdict"] in {"recovered", "wrong-key", "no-decomposition", "no-basis"}


def test_tampered_transcript_is_rejected():
    t = tropmarg.run_fixture("sandwich-4x4")
    t["secrets"]["bob"]["key"][0][0] += 1
    with pytest.raises(tropmarg.MalformedInput):
        tropmarg.attack(t)


def test_golden_checks_pass():
    checks = tropmarg.golden_checks()
    assert checks and all(c["passed"] for c in checks)
