import numpy as np
import pytest

from lieforge.catalog import make_group
from lieforge.charts import ChartPoint, FrameEvaluation, euler_chart, exp_chart
from lieforge.errors import SingularityError
from lieforge.kernel import PAULI, expm
from lieforge.metric import (
    MetricConfig,
    closed_form_metric_su2_euler,
    closed_form_metric_su2_exp,
    euler_metric_field,
    exp_metric_field,
    isometry_residual,
    maurer_cartan,
    metric,
    metric_from_frame,
)

CATALOG = [("su", 2), ("su", 3), ("so", 3), ("so", 4), ("so", 5), ("sp", 1), ("sp", 2)]


def cfg_exp(su2):
    return MetricConfig(group=su2, chart="exp", k="auto")


def cfg_euler(su2):
    return MetricConfig(group=su2, chart="euler", k="auto")


class TestMaurerCartan:
    def test_small_theta_limit(self, su2):
        frame = exp_chart(su2, [1e-5, 0, 0])
        omega = maurer_cartan(frame)
        for a in range(3):
            assert np.abs(omega[a] - 0.5j * PAULI[a]).max() < 1e-4

    def test_printed_three_term_form(self, su2):
        # the three-term expansion of U^{-1} dU, coefficients at |theta| = 1
        theta = np.array([1.0, 0.0, 0.0])
        t = np.linalg.norm(theta)
        s, c = np.sin(t / 2), np.cos(t / 2)
        eps = np.zeros((3, 3, 3))
        for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
            eps[i, j, k], eps[j, i, k] = 1.0, -1.0
        sig_theta = sum(th * sig for th, sig in zip(theta, PAULI))
        omega = maurer_cartan(exp_chart(su2, theta))
        for b in range(3):
            dt = theta[b] / t  # d|theta| along direction b
            expected = 1j * sig_theta * (1 / (2 * t) - s * c / t ** 2) * dt \
                + 1j * (s * c / t) * PAULI[b] \
                + 1j * (s * s / t ** 2) * sum(
                    eps[a, b, cc] * theta[a] * PAULI[cc]
                    for a in range(3) for cc in range(3)
                )
            assert np.abs(omega[b] - expected).max() < 1e-10

    def test_antihermitian(self, su2):
        omega = maurer_cartan(exp_chart(su2, [0.7, -0.4, 1.1]))
        assert np.abs(omega + np.swapaxes(omega.conj(), -1, -2)).max() < 1e-9

    @pytest.mark.parametrize("family,n", CATALOG)
    def test_left_invariance(self, family, n):
        spec = make_group(family, n)
        rng = np.random.default_rng(10)
        theta = rng.uniform(-0.4, 0.4, spec.dim)
        frame = exp_chart(spec, theta)
        omega = maurer_cartan(frame)
        v = expm(np.einsum("a,aij->ij", rng.uniform(-1, 1, spec.dim), spec.generators))
        translated = FrameEvaluation(U=v @ frame.U, dU=v[None] @ frame.dU)
        assert np.abs(maurer_cartan(translated) - omega).max() < 1e-10


class TestPipelineMetric:
    def test_axis_point_value(self, su2):
        mt = metric(cfg_exp(su2), ChartPoint("exp", [1.2, 0, 0], su2))
        expected = 4 * np.sin(0.6) ** 2 / 1.44
        assert mt.g[0, 0] == pytest.approx(1.0, abs=1e-12)
        assert mt.g[1, 1] == pytest.approx(expected, abs=1e-12)
        assert mt.g[2, 2] == pytest.approx(expected, abs=1e-12)

    def test_small_theta_is_identity(self, su2):
        mt = metric(cfg_exp(su2), ChartPoint("exp", [1e-5, 2e-5, -1e-5], su2))
        assert np.abs(mt.g - np.eye(3)).max() < 1e-8

    def test_euler_metric_values(self, su2):
        mt = metric(cfg_euler(su2), ChartPoint("euler", [np.pi / 3, 0.4, -0.9], su2))
        expected = np.array([[1, 0, 0], [0, 1, 0.5], [0, 0.5, 1]])
        assert np.abs(mt.g - expected).max() < 1e-12

    def test_degenerate_exp_point_raises(self, su2):
        with pytest.raises(SingularityError):
            metric(cfg_exp(su2), ChartPoint("exp", [2 * np.pi, 0, 0], su2))

    def test_degenerate_euler_point_raises(self, su2):
        with pytest.raises(SingularityError):
            metric(cfg_euler(su2), ChartPoint("euler", [0.0, 0.3, 0.3], su2))

    @pytest.mark.parametrize("family,n", CATALOG)
    def test_positive_definite_and_identity_at_origin(self, family, n):
        spec = make_group(family, n)
        field = exp_metric_field(spec, 2.0)
        rng = np.random.default_rng(12)
        r = 0.9 * (np.pi / 2) / np.sqrt(spec.dim)
        g = field(rng.uniform(-r, r, (200, spec.dim)))
        assert np.min(np.linalg.eigvalsh(g)) > 0
        g0 = field(np.full((1, spec.dim), 1e-5))[0]
        assert np.abs(g0 - np.eye(spec.dim)).max() < 1e-6

    def test_k_auto_resolves_to_two(self, su2):
        assert cfg_exp(su2).resolve_k() == 2.0
        for family, n in CATALOG:
            assert MetricConfig(group=make_group(family, n)).resolve_k() == 2.0

    def test_reality(self, su2):
        # imaginary parts are asserted small inside the pipeline; a clean run
        # over random points is the observable contract
        field = exp_metric_field(su2, 2.0)
        pts = np.random.default_rng(3).uniform(-1.5, 1.5, (100, 3))
        g = field(pts)
        assert np.isrealobj(g)


class TestClosedFormOracles:
    def test_inverse_axis_formula(self):
        t = 1.7
        mt = closed_form_metric_su2_exp(np.array([t, 0, 0]))
        val = t * t / (4 * np.sin(t / 2) ** 2)
        assert np.allclose(np.diag(mt.g_inv), [1.0, val, val], atol=1e-12)

    def test_inverse_consistency(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            theta = rng.uniform(-1.8, 1.8, 3)
            mt = closed_form_metric_su2_exp(theta)
            assert np.abs(mt.g @ mt.g_inv - np.eye(3)).max() < 1e-12

    def test_pipeline_matches_closed_form_exp(self, su2):
        field = exp_metric_field(su2, 2.0)
        rng = np.random.default_rng(15)
        for _ in range(100):
            theta = rng.uniform(-1.8, 1.8, 3)
            if not 1e-3 < np.linalg.norm(theta) < 2 * np.pi - 0.1:
                continue
            g = field(theta[None])[0]
            assert np.abs(g - closed_form_metric_su2_exp(theta).g).max() < 1e-9

    def test_pipeline_matches_closed_form_euler(self):
        field = euler_metric_field(2.0)
        rng = np.random.default_rng(16)
        for _ in range(100):
            th = rng.uniform(0.2, np.pi - 0.2)
            ph, ps = rng.uniform(-np.pi, np.pi, 2)
            g = field(np.array([[th, ph, ps]]))[0]
            assert np.abs(g - closed_form_metric_su2_euler(th, ph, ps).g).max() < 1e-9

    def test_euler_theta_half_pi_is_identity(self):
        assert np.allclose(closed_form_metric_su2_euler(np.pi / 2, 0.1, 0.2).g,
                           np.eye(3), atol=1e-12)

    def test_euler_inverse_values(self):
        mt = closed_form_metric_su2_euler(np.pi / 3, 0.0, 0.0)
        assert mt.g_inv[1, 1] == pytest.approx(4.0 / 3.0, abs=1e-12)
        assert mt.g_inv[2, 2] == pytest.approx(4.0 / 3.0, abs=1e-12)
        assert mt.g_inv[1, 2] == pytest.approx(-2.0 / 3.0, abs=1e-12)

    def test_line_element_identity(self):
        # grouped and expanded forms of the printed line element agree
        rng = np.random.default_rng(17)
        for _ in range(30):
            th = rng.uniform(0.1, np.pi - 0.1)
            d_th, d_ph, d_ps = rng.normal(size=3)
            grouped = (np.cos(th) * d_ph + d_ps) ** 2 + d_th ** 2 \
                + np.sin(th) ** 2 * d_ph ** 2
            expanded = d_th ** 2 + d_ps ** 2 + d_ph ** 2 \
                + 2 * np.cos(th) * d_ps * d_ph
            g = closed_form_metric_su2_euler(th, 0.3, -0.2).g
            v = np.array([d_th, d_ph, d_ps])
            assert grouped == pytest.approx(expanded, rel=1e-12, abs=1e-12)
            assert v @ g @ v == pytest.approx(grouped, rel=1e-12, abs=1e-12)

    def test_closed_form_rejects_degenerate(self):
        with pytest.raises(SingularityError):
            closed_form_metric_su2_exp(np.array([2 * np.pi, 0, 0]))
        with pytest.raises(SingularityError):
            closed_form_metric_su2_euler(np.pi, 0.1, 0.1)


class TestIsometries:
    @pytest.mark.parametrize("which", ["phi_shift", "psi_shift"])
    def test_shift_invariance(self, su2, which):
        point = ChartPoint("euler", [1.0, 0.3, -0.7], su2)
        for xi in (0.0, 0.5, -2.3, np.pi):
            assert isometry_residual(cfg_euler(su2), point, which, xi) < 1e-10

    def test_zero_shift_exact(self, su2):
        point = ChartPoint("euler", [1.2, 0.0, 0.4], su2)
        assert isometry_residual(cfg_euler(su2), point, "phi_shift", 0.0) == 0.0
