import json
import math

import numpy as np
import pytest

from levelspectra import (
    build_level_matrix,
    characteristic_polynomial,
    charpoly_roots,
    clustered_multiplicity,
    delete_leaf,
    enumerate_rooted_trees,
    exact_zero_multiplicity,
    level_energy,
    levels,
    perron_vector,
    rooted_path,
    rooted_star,
    star_rooted_at_leaf,
    symmetric_eigenvalues,
)
from levelspectra.errors import AmbiguousCluster, LevelSpectraError, ResourceLimit, TooSmall
from levelspectra.spectra import (
    CharPoly,
    eigenvalues_interlace,
    positive_eigenvalue_count,
)

from conftest import SAMPLE9_CHARPOLY, SAMPLE9_RHO, SAMPLE9_SPECTRUM


class TestSpectrum:
    def test_sample9_eigenvalues(self, sample9):
        sp = symmetric_eigenvalues(build_level_matrix(sample9))
        assert np.allclose(sp.values, SAMPLE9_SPECTRUM, atol=1e-6)
        assert abs(sp.rho - SAMPLE9_RHO) < 1e-6

    def test_sample9_clusters(self, sample9):
        sp = symmetric_eigenvalues(build_level_matrix(sample9))
        assert [m for _, m in sp.clusters] == [1, 5, 1, 1, 1]

    def test_star_closed_form(self):
        for n in (2, 5, 12):
            sp = symmetric_eigenvalues(build_level_matrix(rooted_star(n)))
            expected = [math.sqrt(n - 1)] + [0.0] * (n - 2) + [-math.sqrt(n - 1)]
            assert np.allclose(sp.values, expected, atol=1e-10)

    def test_single_vertex(self):
        sp = symmetric_eigenvalues(build_level_matrix(rooted_path(1)))
        assert sp.values.tolist() == [0.0]
        assert sp.rho == 0.0
        assert sp.energy == 0.0
        assert sp.perron is None

    def test_trace_invariants(self):
        for n in range(1, 8):
            for tree in enumerate_rooted_trees(n):
                m = build_level_matrix(tree)
                sp = symmetric_eigenvalues(m)
                assert abs(sp.values.sum()) <= n * 1e-10 * max(1.0, sp.rho)
                assert abs((sp.values**2).sum() - m.h_value) <= 1e-8 * max(1, m.h_value)
                if n >= 2:
                    assert sp.rho == pytest.approx(sp.values[0])

    def test_bad_tol(self, sample9):
        with pytest.raises(ValueError):
            symmetric_eigenvalues(build_level_matrix(sample9), tol=0.0)

    def test_json_payload(self, sample9):
        payload = symmetric_eigenvalues(build_level_matrix(sample9)).to_dict()
        parsed = json.loads(json.dumps(payload))
        assert len(parsed["values"]) == 9
        assert parsed["clusters"][1]["multiplicity"] == 5


class TestPerron:
    def test_star3_hand_computed(self):
        rho, v = perron_vector(build_level_matrix(rooted_star(3)))
        assert rho == pytest.approx(math.sqrt(2), abs=1e-12)
        expected = np.array([math.sqrt(2), 1.0, 1.0]) / 2.0
        assert np.allclose(v, expected, atol=1e-10)

    def test_p2(self):
        rho, v = perron_vector(build_level_matrix(rooted_path(2)))
        assert rho == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(v, [1 / math.sqrt(2)] * 2, atol=1e-12)

    def test_sample9_residual(self, sample9):
        m = build_level_matrix(sample9)
        rho, v = perron_vector(m)
        assert rho == pytest.approx(SAMPLE9_RHO, abs=1e-6)
        assert np.linalg.norm(m.entries @ v - rho * v) < 1e-8

    def test_strictly_positive_everywhere(self):
        for n in range(2, 8):
            for tree in enumerate_rooted_trees(n):
                m = build_level_matrix(tree)
                rho, v = perron_vector(m)
                assert np.all(v > 0)
                assert abs(np.linalg.norm(v) - 1.0) < 1e-12
                assert np.linalg.norm(m.entries @ v - rho * v) <= 1e-10 * max(1.0, rho)

    def test_too_small(self):
        with pytest.raises(TooSmall):
            perron_vector(build_level_matrix(rooted_path(1)))

    def test_rejects_sign_indefinite_top_vector(self):
        # top eigenvector of this matrix has a zero entry: not Perron
        with pytest.raises(LevelSpectraError):
            perron_vector(np.diag([2.0, 1.0, 0.5]))


class TestEnergy:
    def test_sample9(self, sample9):
        sp = symmetric_eigenvalues(build_level_matrix(sample9))
        assert level_energy(sp) == pytest.approx(20.831625448, abs=1e-5)

    def test_star(self):
        for n in (2, 7, 20):
            sp = symmetric_eigenvalues(build_level_matrix(rooted_star(n)))
            assert level_energy(sp) == pytest.approx(2 * math.sqrt(n - 1), abs=1e-10)

    def test_single_vertex(self):
        sp = symmetric_eigenvalues(build_level_matrix(rooted_path(1)))
        assert level_energy(sp) == 0.0

    def test_twice_rho_for_all_trees(self):
        for n in range(2, 8):
            for tree in enumerate_rooted_trees(n):
                sp = symmetric_eigenvalues(build_level_matrix(tree))
                assert level_energy(sp) == pytest.approx(2 * sp.rho, rel=1e-8)


class TestCharPoly:
    def test_sample9_exact(self, sample9):
        cp = characteristic_polynomial(build_level_matrix(sample9))
        assert cp.coeffs == SAMPLE9_CHARPOLY

    def test_star_closed_form(self):
        for n in (2, 3, 6, 10):
            cp = characteristic_polynomial(build_level_matrix(rooted_star(n)))
            expected = [0] * (n + 1)
            expected[0] = 1
            expected[2] = -(n - 1)
            assert list(cp.coeffs) == expected

    def test_p2(self):
        assert characteristic_polynomial(build_level_matrix(rooted_path(2))).coeffs == (1, 0, -1)

    def test_structure_invariants(self):
        for n in range(1, 8):
            for tree in enumerate_rooted_trees(n):
                m = build_level_matrix(tree)
                cp = characteristic_polynomial(m)
                assert cp.coeffs[0] == 1
                assert cp.degree == n
                if n >= 2:
                    assert cp.coeffs[1] == 0
                    assert cp.coeffs[2] == -m.h_value // 2
                    # constant term vanishes exactly off the path family
                    lmax = int(levels(tree).max())
                    assert (cp.coeffs[-1] == 0) == (lmax != n - 1)

    def test_cap(self, sample9):
        with pytest.raises(ResourceLimit):
            characteristic_polynomial(build_level_matrix(sample9), cap=8)

    def test_evaluation_and_json(self):
        cp = CharPoly((1, 0, -1))
        assert cp(3) == 8
        assert json.loads(cp.to_json()) == ["1", "0", "-1"]

    def test_roots_match_solver(self, sample9):
        m = build_level_matrix(sample9)
        roots = charpoly_roots(characteristic_polynomial(m))
        sp = symmetric_eigenvalues(m)
        assert np.allclose(roots, sp.values, atol=1e-7 * max(1.0, sp.rho))

    def test_roots_reject_complex(self):
        with pytest.raises(LevelSpectraError):
            charpoly_roots(CharPoly((1, 0, 1)))  # x^2 + 1

    @pytest.mark.parametrize("n", range(1, 11))
    def test_pipelines_agree_up_to_order_10(self, n):
        for tree in enumerate_rooted_trees(n):
            m = build_level_matrix(tree)
            roots = charpoly_roots(characteristic_polynomial(m))
            sp = symmetric_eigenvalues(m)
            assert np.abs(roots - sp.values).max() <= 1e-7


class TestZeroMultiplicity:
    def test_sample9(self, sample9):
        assert exact_zero_multiplicity(build_level_matrix(sample9)) == 5

    def test_star(self):
        for n in (3, 4, 10, 25):
            assert exact_zero_multiplicity(build_level_matrix(rooted_star(n))) == n - 2

    def test_path(self):
        for n in (2, 5, 12):
            assert exact_zero_multiplicity(build_level_matrix(rooted_path(n))) == 0

    def test_leafstar(self):
        for n in (3, 6, 11):
            m = build_level_matrix(star_rooted_at_leaf(n))
            assert exact_zero_multiplicity(m) == n - 3

    def test_formula_exhaustive(self):
        for n in range(3, 8):
            for tree in enumerate_rooted_trees(n):
                m = build_level_matrix(tree)
                lmax = int(levels(tree).max())
                assert exact_zero_multiplicity(m) == n - 1 - lmax

    def test_single_vertex(self):
        assert exact_zero_multiplicity(build_level_matrix(rooted_path(1))) == 1


class TestClusteredMultiplicity:
    def test_sample9_zero(self, sample9):
        sp = symmetric_eigenvalues(build_level_matrix(sample9))
        assert clustered_multiplicity(sp, 0.0) == 5

    def test_star6_top(self):
        sp = symmetric_eigenvalues(build_level_matrix(rooted_star(6)))
        assert clustered_multiplicity(sp, math.sqrt(5)) == 1

    def test_far_value(self, sample9):
        sp = symmetric_eigenvalues(build_level_matrix(sample9))
        assert clustered_multiplicity(sp, 123.456) == 0

    def test_matches_exact_nullity(self):
        for n in range(1, 8):
            for tree in enumerate_rooted_trees(n):
                m = build_level_matrix(tree)
                sp = symmetric_eigenvalues(m)
                assert clustered_multiplicity(sp, 0.0) == exact_zero_multiplicity(m)

    def test_ambiguous_cluster(self):
        sp = symmetric_eigenvalues(np.diag([0.0, 5e-9, 1.4e-8]))
        with pytest.raises(AmbiguousCluster):
            clustered_multiplicity(sp, -6e-9, tol=1e-8)

    def test_bad_tol(self, sample9):
        sp = symmetric_eigenvalues(build_level_matrix(sample9))
        with pytest.raises(ValueError):
            clustered_multiplicity(sp, 0.0, tol=-1.0)


class TestPositiveCount:
    def test_exactly_one_for_trees(self):
        for n in range(2, 8):
            for tree in enumerate_rooted_trees(n):
                sp = symmetric_eigenvalues(build_level_matrix(tree))
                assert positive_eigenvalue_count(sp) == 1

    def test_single_vertex_has_none(self):
        sp = symmetric_eigenvalues(build_level_matrix(rooted_path(1)))
        assert positive_eigenvalue_count(sp) == 0


class TestInterlacing:
    def test_p3_to_p2(self):
        outer = symmetric_eigenvalues(build_level_matrix(rooted_path(3))).values
        inner = symmetric_eigenvalues(build_level_matrix(rooted_path(2))).values
        assert eigenvalues_interlace(outer, inner, slack=1e-8)

    def test_s4_to_s3(self):
        outer = symmetric_eigenvalues(build_level_matrix(rooted_star(4))).values
        inner = symmetric_eigenvalues(build_level_matrix(rooted_star(3))).values
        assert eigenvalues_interlace(outer, inner, slack=1e-8)

    def test_violation_detected(self):
        assert not eigenvalues_interlace([2.0, 1.0, 0.0], [3.0, 0.5], slack=1e-8)

    def test_shape_check(self):
        with pytest.raises(ValueError):
            eigenvalues_interlace([1.0, 0.0], [0.5, 0.2], slack=1e-8)

    def test_every_leaf_deletion(self):
        for n in range(2, 7):
            for tree in enumerate_rooted_trees(n):
                sp = symmetric_eigenvalues(build_level_matrix(tree))
                eps = 1e-8 * max(1.0, sp.rho)
                for leaf in tree.leaves():
                    sub = symmetric_eigenvalues(build_level_matrix(delete_leaf(tree, leaf)))
                    assert eigenvalues_interlace(sp.values, sub.values, slack=eps)
