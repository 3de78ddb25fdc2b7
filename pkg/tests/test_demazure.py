"""Demazure and generalized Demazure crystals, string parametrizations."""

import pytest

from crystalcubes.crystal import TensorElement, epsilon, highest_path, path_f, wt
from crystalcubes.demazure import (
    demazure_crystal,
    gen_demazure_crystal,
    gen_demazure_crystal_weights,
    omega,
    omega_blocked,
    rebuild_from_omega,
)
from crystalcubes.rootsys import BudgetExceededError, RootSystem, SubsetSequence, WordSequence

A2 = RootSystem.preset("A2")
A3 = RootSystem.preset("A3")

SL3_SUBSETS = SubsetSequence([(1, 2), (1, 2)])
SL3_WORDS = WordSequence([(1, 2, 1), (1, 2, 1)])
SL3_WORD = (1, 2, 1, 1, 2, 1)
SL3_A = (0, 1, 1, 0, 1, 1)  # pullback vector of λ = μ = ϖ1 + ϖ2


def all_reduced_words(rs, word):
    """All reduced words of the element s_{word}, by peeling left descents."""
    out = set()
    n = rs.n
    length = rs.word_length(word)
    if length == 0:
        return {()}
    for i in range(1, n + 1):
        shorter = (i,) + tuple(word)
        if rs.word_length(shorter) == length - 1:
            for rest in all_reduced_words(rs, shorter):
                out.add((i,) + rest)
    return out


class TestDemazureCrystal:
    def test_figure_count(self):
        assert len(demazure_crystal(A2, A2.weight(1, 1), (2, 1))) == 5

    def test_empty_word(self):
        assert demazure_crystal(A2, A2.weight(1, 1), ()) == frozenset({highest_path(A2, A2.weight(1, 1))})

    def test_longest_gives_full_crystal(self):
        full = demazure_crystal(A2, A2.weight(1, 1), A2.longest_word([1, 2]))
        assert len(full) == 8

    def test_non_reduced_rejected(self):
        with pytest.raises(ValueError):
            demazure_crystal(A2, A2.weight(1, 1), (1, 1))

    def test_word_independence_rank2(self):
        lam = A2.weight(2, 1)
        words = all_reduced_words(A2, (1, 2, 1))
        assert words == {(1, 2, 1), (2, 1, 2)}
        sets = {frozenset(demazure_crystal(A2, lam, w)) for w in words}
        assert len(sets) == 1

    def test_word_independence_rank3(self):
        lam = A3.weight(1, 0, 1)
        for seed_word in [(1, 3), (1, 2, 1, 3), (2, 1, 3, 2)]:
            words = all_reduced_words(A3, seed_word)
            assert len(words) > 1
            sets = {frozenset(demazure_crystal(A3, lam, w)) for w in words}
            assert len(sets) == 1


class TestGenDemazure:
    def test_single_letter_string(self):
        for a in range(4):
            crystal = gen_demazure_crystal(A2, (1,), (a,))
            assert crystal.element_count == a + 1

    def test_zero_vector(self):
        crystal = gen_demazure_crystal(A2, (1, 2, 1), (0, 0, 0))
        assert crystal.element_count == 1

    def test_sl3_pullback_count(self):
        # identical crystal graph to B_{I,λ,μ}, hence 64 = dim V(λ)⊗V(μ) elements
        crystal = gen_demazure_crystal(A2, SL3_WORD, SL3_A)
        assert crystal.element_count == 64

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            gen_demazure_crystal(A2, (1,), (-1,))

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            gen_demazure_crystal(A2, (1, 2), (1,))

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            gen_demazure_crystal(A2, SL3_WORD, SL3_A, budget=10)


class TestGenDemazureWeights:
    def test_r1_full_crystal(self):
        crystal = gen_demazure_crystal_weights(A2, SubsetSequence([(1, 2)]), [A2.weight(1, 1)])
        assert crystal.element_count == 8

    def test_all_zero_weights(self):
        crystal = gen_demazure_crystal_weights(A2, SL3_SUBSETS, [A2.zero_weight(), A2.zero_weight()])
        assert crystal.element_count == 1

    def test_sl3_count_64(self):
        lam = A2.weight(1, 1)
        crystal = gen_demazure_crystal_weights(A2, SL3_SUBSETS, [lam, lam], SL3_WORDS)
        assert crystal.element_count == 64
        assert crystal.element_count == A2.weyl_dimension(lam) ** 2

    def test_components_are_full_crystals(self):
        # I1 = [n]: every connected component is a full B(ν)
        lam = A2.weight(1, 1)
        crystal = gen_demazure_crystal_weights(A2, SL3_SUBSETS, [lam, lam], SL3_WORDS)
        comps = crystal.components()
        assert [c["size"] for c in comps] == [27, 10, 10, 8, 8, 1]
        for c in comps:
            assert len(c["highest_weights"]) == 1
            nu = A2.weight(c["highest_weights"][0])
            assert A2.weyl_dimension(nu) == c["size"]

    def test_singleton_blocks_degenerate_to_word_shape(self):
        subsets = SubsetSequence([(1,), (2,), (1,)])
        lams = [A2.weight(2, 0), A2.weight(0, 1), A2.weight(1, 0)]
        via_weights = gen_demazure_crystal_weights(A2, subsets, lams)
        via_word = gen_demazure_crystal(A2, (1, 2, 1), (2, 1, 1))
        assert via_weights.elements == via_word.elements
        assert via_weights.omega_vectors() == via_word.omega_vectors()

    def test_zero_weight_factor_kept(self):
        # prepending ([n], 0) keeps b_0 as an honest factor and fixes the graph
        lam = A2.weight(1, 0)
        plain = gen_demazure_crystal_weights(A2, SubsetSequence([(1, 2)]), [lam])
        padded = gen_demazure_crystal_weights(
            A2, SubsetSequence([(1, 2), (1, 2)]), [A2.zero_weight(), lam]
        )
        assert padded.element_count == plain.element_count
        for b in padded.elements:
            assert len(b.factors) == 2
            assert b.factors[0] == highest_path(A2, A2.zero_weight())

    def test_non_dominant_rejected(self):
        with pytest.raises(ValueError):
            gen_demazure_crystal_weights(A2, SL3_SUBSETS, [A2.weight(-1, 0), A2.weight(1, 1)])


class TestOmega:
    def test_top_element_zero(self):
        crystal = gen_demazure_crystal(A2, SL3_WORD, SL3_A)
        tops = [b for b in crystal.elements if all(epsilon(A2, b, i) == 0 for i in (1, 2))]
        zero = (0,) * 6
        omegas = crystal.omega_map()
        assert any(omegas[b].entries == zero for b in tops)

    def test_single_string(self):
        crystal = gen_demazure_crystal(A2, (1,), (3,))
        for b, sv in crystal.omega_map().items():
            rebuilt = rebuild_from_omega(A2, (1,), (3,), sv)
            assert rebuilt == b

    def test_round_trip_sl3(self):
        crystal = gen_demazure_crystal(A2, SL3_WORD, SL3_A)
        for b, sv in crystal.omega_map().items():
            assert rebuild_from_omega(A2, SL3_WORD, SL3_A, sv) == b

    def test_injective_and_nonnegative(self):
        crystal = gen_demazure_crystal(A2, SL3_WORD, SL3_A)
        omegas = list(crystal.omega_map().values())
        assert len({sv.entries for sv in omegas}) == len(omegas)
        assert all(x >= 0 for sv in omegas for x in sv.entries)

    def test_outside_element_rejected(self):
        small = gen_demazure_crystal(A2, (1, 2), (1, 1))
        big = gen_demazure_crystal(A2, (1, 2), (2, 2))
        outside = next(iter(big.elements - small.elements))
        with pytest.raises(ValueError):
            omega(A2, (1, 2), (1, 1), outside)

    def test_blocked_matches_flat_on_sl3(self):
        lam = A2.weight(1, 1)
        flat = gen_demazure_crystal(A2, SL3_WORD, SL3_A)
        blocked = gen_demazure_crystal_weights(A2, SL3_SUBSETS, [lam, lam], SL3_WORDS)
        assert set(flat.omega_vectors()) == set(blocked.omega_vectors())

    def test_blocked_matches_flat_on_a3_mixed(self):
        from crystalcubes.bundles import pullback_vector

        subsets = SubsetSequence([(1, 2, 3), (2,)])
        words = WordSequence.for_subsets(A3, subsets)
        lams = [A3.weight(1, 0, 0), A3.weight(0, 1, 0)]
        a = pullback_vector(A3, subsets, words, lams).flat
        flat = gen_demazure_crystal(A3, words.flat, a)
        blocked = gen_demazure_crystal_weights(A3, subsets, lams, words)
        assert set(flat.omega_vectors()) == set(blocked.omega_vectors())
        assert flat.element_count == blocked.element_count

    def test_monotone_growth(self):
        word = (1, 2, 1)
        small = set(gen_demazure_crystal(A2, word, (1, 0, 1)).omega_vectors())
        for bigger in [(1, 1, 1), (2, 0, 1), (2, 1, 2)]:
            big = set(gen_demazure_crystal(A2, word, bigger).omega_vectors())
            assert small <= big

    def test_blocked_peeling_rejects_foreign_element(self):
        lam = A2.weight(1, 1)
        crystal = gen_demazure_crystal_weights(A2, SL3_SUBSETS, [lam, lam], SL3_WORDS)
        foreign = TensorElement((highest_path(A2, A2.weight(2, 2)), highest_path(A2, lam)))
        assert foreign not in crystal.elements
        with pytest.raises(ValueError):
            omega_blocked(A2, SL3_SUBSETS, SL3_WORDS, [lam, lam], foreign)


class TestExport:
    def test_json_dict(self):
        crystal = gen_demazure_crystal(A2, (1, 2), (1, 1))
        doc = crystal.to_json_dict()
        assert doc["element_count"] == 5
        assert doc["omega_vectors"] == sorted(doc["omega_vectors"])
        assert doc["shape"] == {"kind": "word", "a": [1, 1]}

    def test_weights_json_shape(self):
        lam = A2.weight(1, 1)
        doc = gen_demazure_crystal_weights(A2, SL3_SUBSETS, [lam, lam], SL3_WORDS).to_json_dict()
        assert doc["shape"]["kind"] == "weights"
        assert doc["block_sizes"] == [3, 3]
