"""Unit tests for rotations and common lines."""

import math

import numpy as np
import pytest

from heterocut.errors import DegeneratePair
from heterocut.geometry import (
    CommonLine,
    CommonLineTable,
    Rotation,
    angular_distance,
    common_line_pair,
    common_lines_from_rotations,
    is_rotation_matrix,
    lift,
    perturb_rotation,
    perturb_rotations,
    relative_angle,
    rotation_distance,
    sample_uniform_rotation,
    sample_uniform_rotations,
)


class TestRotation:
    """Test the Rotation value type."""

    def test_identity(self):
        """Identity rotation has the identity matrix."""
        np.testing.assert_array_equal(Rotation.identity().matrix, np.eye(3))

    def test_rejects_non_orthogonal(self):
        """A scaled matrix is not a rotation."""
        with pytest.raises(ValueError):
            Rotation(2.0 * np.eye(3))

    def test_rejects_reflection(self):
        """Determinant -1 is rejected."""
        with pytest.raises(ValueError):
            Rotation(np.diag([1.0, 1.0, -1.0]))

    def test_rejects_wrong_shape(self):
        """Only 3x3 matrices are accepted."""
        with pytest.raises(ValueError):
            Rotation(np.eye(2))

    def test_about_axis_quarter_turn(self):
        """90° about z maps x to y."""
        R = Rotation.about_axis([0, 0, 1], math.pi / 2)
        np.testing.assert_allclose(R.apply([1, 0, 0]), [0, 1, 0], atol=1e-15)

    def test_compose_order(self):
        """a @ b applies b first."""
        a = Rotation.about_axis([0, 0, 1], math.pi / 2)
        b = Rotation.about_axis([1, 0, 0], math.pi / 2)
        v = np.array([0.0, 1.0, 0.0])
        np.testing.assert_allclose((a @ b).apply(v), a.apply(b.apply(v)), atol=1e-15)

    def test_inverse(self):
        """R⁻¹R is the identity."""
        R = Rotation.about_axis([1, 2, 3], 0.7)
        assert R.inverse() @ R == Rotation.identity()

    def test_angle(self):
        """Angle of an axis rotation is the rotation angle."""
        assert Rotation.about_axis([0, 1, 0], 0.3).angle == pytest.approx(0.3)

    def test_matrix_is_a_copy(self):
        """Mutating the returned matrix leaves the rotation unchanged."""
        R = Rotation.identity()
        m = R.matrix
        m[0, 0] = 5.0
        assert R == Rotation.identity()


class TestSampling:
    """Test Haar sampling."""

    def test_deterministic(self):
        """Same seed gives the same rotation."""
        a = sample_uniform_rotation(np.random.default_rng(1))
        b = sample_uniform_rotation(np.random.default_rng(1))
        np.testing.assert_array_equal(a.matrix, b.matrix)

    def test_samples_are_rotations(self, rng):
        """Every sample satisfies the SO(3) invariants."""
        for R in sample_uniform_rotations(200, rng):
            assert is_rotation_matrix(R, tol=1e-12)

    def test_mean_trace_is_zero(self, rng):
        """The Haar mean of tr(R) is 0."""
        stack = sample_uniform_rotations(100_000, rng)
        assert abs(np.trace(stack, axis1=1, axis2=2).mean()) < 0.02

    def test_empty(self, rng):
        """Zero samples give an empty stack."""
        assert sample_uniform_rotations(0, rng).shape == (0, 3, 3)


class TestDistances:
    """Test rotation and line distances."""

    def test_rotation_distance_zero(self):
        """Distance to itself is 0."""
        R = Rotation.about_axis([1, 1, 0], 1.0)
        assert rotation_distance(R, R) == 0.0

    def test_rotation_distance_about_z(self):
        """‖R − R·rot_z(θ)‖₂ = 2|sin(θ/2)|."""
        R = Rotation.about_axis([1, 2, 3], 0.4)
        theta = 0.1
        R2 = R @ Rotation.about_axis([0, 0, 1], theta)
        assert rotation_distance(R, R2) == pytest.approx(2 * abs(math.sin(theta / 2)), abs=1e-10)

    def test_product_triangle_inequality(self, rng):
        """‖R̃₁R̃₂ − R₁R₂‖ ≤ ‖R̃₁ − R₁‖ + ‖R̃₂ − R₂‖."""
        for _ in range(100):
            R1, R2 = sample_uniform_rotation(rng), sample_uniform_rotation(rng)
            P1, P2 = sample_uniform_rotation(rng), sample_uniform_rotation(rng)
            lhs = rotation_distance(P1 @ P2, R1 @ R2)
            assert lhs <= rotation_distance(P1, R1) + rotation_distance(P2, R2) + 1e-12

    def test_product_bound_under_eps(self, rng):
        """Both factors within ε ⇒ product within 2ε."""
        eps = 0.05
        for _ in range(200):
            R1, R2 = sample_uniform_rotation(rng), sample_uniform_rotation(rng)
            P1, P2 = perturb_rotation(R1, eps, rng), perturb_rotation(R2, eps, rng)
            assert rotation_distance(P1 @ P2, R1 @ R2) <= 2 * eps + 1e-12

    def test_relative_angle(self):
        """Relative angle of R and R·rot(θ) is θ."""
        R = Rotation.about_axis([0, 1, 1], 1.2)
        assert relative_angle(R, R @ Rotation.about_axis([1, 0, 0], 0.25)) == pytest.approx(0.25)

    def test_angular_distance_cases(self):
        """Equal, orthogonal and small-angle lines."""
        assert angular_distance(CommonLine(1, 0), CommonLine(1, 0)) == 0.0
        assert angular_distance(CommonLine(1, 0), CommonLine(0, 1)) == pytest.approx(math.pi / 2)
        eps = 0.05
        d = angular_distance(CommonLine(1, 0), CommonLine.from_angle(eps))
        assert d == pytest.approx(eps, abs=1e-12)

    def test_angular_distance_symmetric(self, rng):
        """Distance is symmetric."""
        for _ in range(20):
            a = CommonLine.from_angle(rng.uniform(0, 2 * math.pi))
            b = CommonLine.from_angle(rng.uniform(0, 2 * math.pi))
            assert angular_distance(a, b) == pytest.approx(angular_distance(b, a))


class TestPerturbation:
    """Test bounded rotation perturbations."""

    def test_zero_eps_is_identity(self, rng):
        """ε = 0 returns R itself."""
        R = sample_uniform_rotation(rng)
        assert perturb_rotation(R, 0.0, rng) == R

    def test_bound(self, rng):
        """‖R̃ − R‖₂ ≤ ε."""
        R = sample_uniform_rotation(rng)
        for _ in range(100):
            assert rotation_distance(R, perturb_rotation(R, 0.1, rng)) <= 0.1 + 1e-12

    def test_monte_carlo_range(self, rng):
        """10⁴ draws stay within ε and never coincide with R."""
        stack = sample_uniform_rotations(10_000, rng)
        out = perturb_rotations(stack, 0.2, rng)
        d = np.linalg.norm(out - stack, ord=2, axis=(1, 2))
        assert d.max() <= 0.2 + 1e-12
        assert d.min() > 0

    def test_negative_eps(self, rng):
        """Negative ε is rejected."""
        with pytest.raises(ValueError):
            perturb_rotation(Rotation.identity(), -0.1, rng)


class TestCommonLine:
    """Test the CommonLine value type."""

    def test_unit_norm_enforced(self):
        """Non-unit vectors are rejected."""
        with pytest.raises(ValueError):
            CommonLine(1.0, 1.0)

    def test_from_vector_normalizes(self):
        """from_vector scales to unit length."""
        c = CommonLine.from_vector([3.0, 4.0])
        assert (c.x, c.y) == pytest.approx((0.6, 0.8))

    def test_rotated_and_flipped(self):
        """In-plane rotation and antipode."""
        c = CommonLine(1.0, 0.0).rotated(math.pi / 2)
        assert (c.x, c.y) == pytest.approx((0.0, 1.0), abs=1e-15)
        assert CommonLine(1.0, 0.0).flipped() == CommonLine(-1.0, 0.0)

    def test_list_conversion(self):
        """to_list/from_list agree."""
        c = CommonLine.from_angle(0.3)
        assert CommonLine.from_list(c.to_list()) == c

    @pytest.mark.parametrize(
        "c, expected",
        [
            ((1.0, 0.0), (1.0, 0.0, 0.0)),
            ((0.0, 1.0), (0.0, 1.0, 0.0)),
            ((math.sqrt(2) / 2, math.sqrt(2) / 2), (math.sqrt(2) / 2, math.sqrt(2) / 2, 0.0)),
        ],
    )
    def test_lift(self, c, expected):
        """lift zero-pads and keeps the norm."""
        v = lift(CommonLine(*c))
        np.testing.assert_allclose(v, expected)
        assert np.linalg.norm(v) == pytest.approx(1.0)


class TestCommonLinePair:
    """Test exact common lines."""

    def test_degenerate(self):
        """Identical viewing directions have no common line."""
        with pytest.raises(DegeneratePair):
            common_line_pair(Rotation.identity(), Rotation.identity())

    def test_quarter_turn_about_x(self):
        """I and rot_x(90°) share the line (1, 0) in both images."""
        c_ij, c_ji = common_line_pair(Rotation.identity(), Rotation.about_axis([1, 0, 0], math.pi / 2))
        assert (c_ij.x, c_ij.y) == pytest.approx((1.0, 0.0), abs=1e-12)
        assert (c_ji.x, c_ji.y) == pytest.approx((1.0, 0.0), abs=1e-12)

    def test_identity_holds(self, rng):
        """R_i·lift(c_ij) = R_j·lift(c_ji)."""
        for _ in range(200):
            R_i, R_j = sample_uniform_rotation(rng), sample_uniform_rotation(rng)
            c_ij, c_ji = common_line_pair(R_i, R_j)
            np.testing.assert_allclose(R_i.apply(lift(c_ij)), R_j.apply(lift(c_ji)), atol=1e-10)

    def test_global_rotation_equivariance(self, rng):
        """Left-multiplying both rotations by Q leaves the lines unchanged."""
        for _ in range(100):
            R_i, R_j, Q = (sample_uniform_rotation(rng) for _ in range(3))
            a_ij, a_ji = common_line_pair(R_i, R_j)
            b_ij, b_ji = common_line_pair(Q @ R_i, Q @ R_j)
            np.testing.assert_allclose(a_ij.as_array(), b_ij.as_array(), atol=1e-9)
            np.testing.assert_allclose(a_ji.as_array(), b_ji.as_array(), atol=1e-9)

    def test_sign_convention(self, rng):
        """c_ij has a non-negative second component."""
        for _ in range(100):
            c_ij, _ = common_line_pair(sample_uniform_rotation(rng), sample_uniform_rotation(rng))
            assert c_ij.y >= -1e-12


class TestCommonLineTable:
    """Test the pairwise table."""

    def test_matches_pairwise(self, rotations20, exact_table):
        """Table entries equal common_line_pair for i < j."""
        for i in range(5):
            for j in range(i + 1, 8):
                c_ij, c_ji = common_line_pair(rotations20[i], rotations20[j])
                np.testing.assert_allclose(exact_table.lines[i, j], c_ij.as_array(), atol=1e-12)
                np.testing.assert_allclose(exact_table.lines[j, i], c_ji.as_array(), atol=1e-12)

    def test_mask(self, exact_table):
        """All off-diagonal pairs valid, symmetric, diagonal invalid."""
        assert exact_table.valid_pair_count == 20 * 19 // 2
        assert not np.any(np.diag(exact_table.mask))

    def test_degenerate_pairs_invalid(self):
        """Equal rotations produce invalid pairs."""
        table = common_lines_from_rotations(np.tile(np.eye(3), (3, 1, 1)))
        assert table.valid_pair_count == 0
        assert table.pair(0, 1) is None

    def test_asymmetric_mask_rejected(self):
        """Mask must be symmetric."""
        mask = np.zeros((3, 3), dtype=bool)
        mask[0, 1] = True
        with pytest.raises(ValueError):
            CommonLineTable(lines=np.zeros((3, 3, 2)), mask=mask)

    def test_diagonal_rejected(self):
        """Diagonal pairs cannot be valid."""
        with pytest.raises(ValueError):
            CommonLineTable(lines=np.zeros((2, 2, 2)), mask=np.ones((2, 2), dtype=bool))

    def test_subset(self, rotations20, exact_table):
        """Subset equals the table of the selected rotations."""
        idx = [3, 7, 11, 2]
        sub = exact_table.subset(idx)
        assert sub.n == 4
        np.testing.assert_allclose(sub.lines[0, 1], exact_table.lines[3, 7])
        np.testing.assert_allclose(sub.lines[1, 0], exact_table.lines[7, 3])

    def test_pair(self, exact_table):
        """pair() returns both lines for a valid pair."""
        c_ij, c_ji = exact_table.pair(0, 1)
        np.testing.assert_allclose(c_ij.as_array(), exact_table.lines[0, 1])
        np.testing.assert_allclose(c_ji.as_array(), exact_table.lines[1, 0])
