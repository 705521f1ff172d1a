import numpy as np
import pytest

from fockladder import (BinaryPattern, FockDiagonalState, Relation, abgx,
                        conjecture_scan, counterexample_search, fock_compare,
                        grid_recurrence, ladder_verify, make_channel,
                        make_counterexample_corpus, mixture_shift_check,
                        mixture_vs_lowest_fock, passive_path, standard_grid)
from fockladder.experiments import CorpusPair, _output_of_weights


def test_standard_grid_covers_all_families():
    specs = standard_grid()
    assert len(specs) == 36
    assert len({s.label() for s in specs}) == 36


def test_ladder_identity_channel():
    report = ladder_verify(make_channel("noise", added_n=0.0), i_max=10)
    assert report.passed
    # each step compares a point mass against a shifted point mass
    assert all(v.relation is Relation.EQUIVALENT for v in report.verdicts)


def test_ladder_pure_loss():
    report = ladder_verify(make_channel("lossy", eta=0.5, thermal_N=0.0), i_max=30)
    assert report.passed
    assert all(v.relation is Relation.LEFT_MAJORIZES for v in report.verdicts)
    assert report.worst_slack >= -1e-12
    assert report.witness_max_err <= 1e-12


def test_ladder_conjugate_amplifier():
    report = ladder_verify(make_channel("conj", g=2.0, thermal_N=1.0), i_max=30)
    assert report.passed
    assert report.worst_slack >= -1e-12


def test_mixture_shift_no_shift_is_equivalent():
    v = mixture_shift_check(make_channel("amp", g=2.0, thermal_N=0.5),
                            [0.3, 0.7], 0)
    assert v.relation is Relation.EQUIVALENT


def test_mixture_shift_pure_loss_hand_case():
    v = mixture_shift_check(make_channel("lossy", eta=0.5, thermal_N=0.0),
                            [0.5, 0.5], 2)
    assert v.relation is Relation.LEFT_MAJORIZES


def test_mixture_shift_point_mass_reduces_to_ladder():
    spec = make_channel("conj", g=1.2, thermal_N=0.5)
    v = mixture_shift_check(spec, [1.0], 3)
    grid = grid_recurrence(abgx(spec), 3)
    direct = fock_compare(FockDiagonalState.from_grid_row(grid, 0),
                          FockDiagonalState.from_grid_row(grid, 3))
    assert v.holds_left and direct.holds_left


def test_mixture_lowest_fock_point_mass_is_equivalent():
    v = mixture_vs_lowest_fock(make_channel("amp", g=2.0, thermal_N=0.0),
                               [1.0], 4)
    assert v.relation is Relation.EQUIVALENT


def test_mixture_lowest_fock_example():
    v = mixture_vs_lowest_fock(make_channel("amp", g=2.0, thermal_N=0.0),
                               [0.3, 0.7], 1)
    assert v.relation is Relation.LEFT_MAJORIZES


def test_mixture_rejects_foreign_grid_cache():
    # handing the op a grid from a different channel must be rejected,
    # not silently produce a verdict for the wrong channel
    spec = make_channel("amp", g=2.0, thermal_N=0.5)
    wrong = grid_recurrence(abgx(make_channel("lossy", eta=0.5, thermal_N=0.0)), 8)
    with pytest.raises(ValueError):
        mixture_shift_check(spec, [0.5, 0.5], 2, grid=wrong)


def test_passive_path_reference_chain():
    path = passive_path(BinaryPattern.from_string("101001"))
    assert [str(p) for p in path] == ["101001", "101010", "101100", "111000"]
    energies = [p.energy for p in path]
    assert energies == sorted(energies, reverse=True)


def test_passive_pattern_has_trivial_path():
    path = passive_path(BinaryPattern.from_string("111000"))
    assert len(path) == 1


def test_pattern_validation():
    with pytest.raises(ValueError):
        BinaryPattern((0, 0, 0))
    with pytest.raises(ValueError):
        BinaryPattern((0, 2, 1))


def test_conjecture_scan_counts_and_pass():
    rep = conjecture_scan(make_channel("lossy", eta=0.5, thermal_N=1.0), 6)
    assert rep.passed
    assert rep.n_swap_checks == 8           # cores of length 3
    assert rep.n_patterns == 2 ** 6 - 1 - 6  # >= 2 ones
    assert not rep.exploratory


def test_conjecture_scan_rejects_long_patterns():
    with pytest.raises(ValueError):
        conjecture_scan(make_channel("noise", added_n=1.0), 17)


def test_conjecture_scan_deterministic():
    spec = make_channel("amp", g=2.0, thermal_N=0.5)
    a = conjecture_scan(spec, 5, nonbinary_samples=6, seed=11)
    b = conjecture_scan(spec, 5, nonbinary_samples=6, seed=11)
    assert a.worst_slack == b.worst_slack
    assert a.exploratory == b.exploratory
    assert a.n_chain_steps == b.n_chain_steps


def test_conjecture_exploratory_is_reported_not_asserted():
    rep = conjecture_scan(make_channel("lossy", eta=0.3, thermal_N=0.5), 6,
                          nonbinary_samples=12, seed=3)
    assert rep.passed  # binary checks only
    assert rep.exploratory  # sampled non-binary outcomes are recorded


def test_corpus_is_seeded_and_reproducible():
    a = make_counterexample_corpus(seed=5)
    b = make_counterexample_corpus(seed=5)
    assert [p.label for p in a] == [p.label for p in b]
    for pa, pb in zip(a, b):
        np.testing.assert_array_equal(pa.rho.weights, pb.rho.weights)
    assert any(p.kind == "energy" for p in a)
    assert any(p.kind == "fock" for p in a)


def test_corpus_respects_orderings():
    for pair in make_counterexample_corpus(seed=9):
        if pair.kind == "energy":
            assert pair.rho.energy <= pair.sigma.energy
        else:
            assert fock_compare(pair.rho, pair.sigma).holds_left


def test_search_finds_energy_witness_on_pure_loss():
    # fock-1 against an even 0/3 mixture: prefix sums cross at eta = 0.5
    corpus = [CorpusPair(FockDiagonalState.point_mass(1, 2),
                         FockDiagonalState.from_weights([0.5, 0, 0, 0.5]),
                         "energy", "hand")]
    findings = counterexample_search(make_channel("lossy", eta=0.5, thermal_N=0.0),
                                     corpus)
    assert len(findings.energy_witnesses) == 1
    assert findings.energy_witnesses[0]["relation"] == "incomparable"


def test_search_never_reports_identical_pair():
    s = FockDiagonalState.from_weights([0.5, 0.3, 0.2])
    corpus = [CorpusPair(s, s, "energy", "same")]
    findings = counterexample_search(make_channel("amp", g=2.0, thermal_N=1.0),
                                     corpus)
    assert not findings.energy_witnesses


def test_search_skips_tail_ambiguous_energy_pairs():
    rho = FockDiagonalState.from_weights([0.6, 0.3], tail=0.1)
    sigma = FockDiagonalState.from_weights([0.5, 0.4], tail=0.1)
    corpus = [CorpusPair(rho, sigma, "energy", "ambiguous")]
    findings = counterexample_search(make_channel("lossy", eta=0.5, thermal_N=0.0),
                                     corpus)
    assert findings.n_skipped == 1
    assert findings.n_energy_pairs == 0


def test_fock_order_preserved_across_channels():
    corpus = make_counterexample_corpus(seed=2)
    for spec in (make_channel("conj", g=5.0, thermal_N=2.0),
                 make_channel("noise", added_n=2.0)):
        findings = counterexample_search(spec, corpus)
        assert findings.fock_ok
        assert findings.fock_worst_slack >= -1e-12


def test_output_of_weights_matches_manual_mixture():
    grid = grid_recurrence(abgx(make_channel("amp", g=2.0, thermal_N=0.5)), 4)
    out = _output_of_weights(grid, [0.25, 0.0, 0.75])
    manual = 0.25 * grid.rows[0] + 0.75 * grid.rows[2]
    np.testing.assert_allclose(out.weights, manual, rtol=0, atol=1e-16)
