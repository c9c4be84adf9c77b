#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "biphoton/analysis.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/measurement.hpp"
#include "biphoton/noise.hpp"
#include "biphoton/units.hpp"
#include "test_helpers.hpp"

using namespace biphoton;
using testutil::config_with;

namespace {

struct Pipeline {
    GridPair grids;
    JointDensity jtd;
    GateProfile gate;
};

Pipeline run_pipeline(const ExperimentConfig& c) {
    Pipeline p{make_grids(c), {}, {}};
    p.jtd = density(to_temporal(build_jsa(c, p.grids)));
    p.gate = gate_profile(c, p.grids.temporal);
    return p;
}

}  // namespace

TEST_CASE("gate profile width and normalization") {
    const ExperimentConfig c;
    const GateProfile g = gate_profile(c);
    CHECK(g.fwhm_fs == doctest::Approx(153.1).epsilon(0.005));
    CHECK(g.intensity.sum() * g.grid.step == doctest::Approx(1.0).epsilon(1e-9));
    // sampled half-max width matches the analytic FWHM
    std::vector<double> t = g.grid.values();
    std::vector<double> v(g.intensity.data(), g.intensity.data() + g.grid.n);
    CHECK(testutil::half_max_width(t, v) == doctest::Approx(g.fwhm_fs).epsilon(0.01));

    // halving the gate bandwidth doubles the duration
    ExperimentConfig half = c;
    half.gate_fwhm_nm = 3.0;
    CHECK(gate_profile(half).fwhm_fs == doctest::Approx(2.0 * g.fwhm_fs).epsilon(1e-9));

    // symmetric about zero: with the half-sample offset, t(n-i) = -t(i)
    for (int i = 1; i < g.grid.n; ++i) {
        CHECK(g.intensity(i) ==
              doctest::Approx(g.intensity(g.grid.n - i)).epsilon(1e-12));
    }
}

TEST_CASE("coincidence response: symmetry, normalization, delta-gate limit") {
    const auto c = config_with(6.0, PmKind::sinc);
    const Pipeline p = run_pipeline(c);

    // symmetry under exchange of the two delays
    for (double tau : {150.0, 420.0, 910.0}) {
        const double a = coincidence_response(p.jtd, p.gate, tau, -tau);
        const double b = coincidence_response(p.jtd, p.gate, -tau, tau);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }

    // convolution preserves the total integral: summing the response over the
    // full temporal grid reproduces unity
    double total = 0.0;
    for (int i = 0; i < p.jtd.grid_s.n; i += 4) {
        for (int j = 0; j < p.jtd.grid_i.n; j += 4) {
            total += coincidence_response(p.jtd, p.gate, p.jtd.grid_s.value(i),
                                          p.jtd.grid_i.value(j));
        }
    }
    total *= 16.0 * p.jtd.grid_s.step * p.jtd.grid_i.step;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-3));  // stride-4 Riemann sum

    // a gate narrowed to one grid step recovers the density pointwise
    GateProfile narrow = p.gate;
    narrow.fwhm_fs = p.jtd.grid_s.step;
    const int mid = p.jtd.grid_s.n / 2;
    for (int off : {-40, -7, 0, 13, 52}) {
        const double ts = p.jtd.grid_s.value(mid + off);
        const double ti = p.jtd.grid_i.value(mid - off);
        const double resp = coincidence_response(p.jtd, narrow, ts, ti);
        const double ref = p.jtd.values(mid + off, mid - off);
        if (ref > 1e-8) {
            CHECK(resp == doctest::Approx(ref).epsilon(0.05));
        }
    }
}

TEST_CASE("common-delay scan reproduces the narrow coincidence peak") {
    const auto c = config_with(6.0, PmKind::sinc);
    const Pipeline p = run_pipeline(c);
    const CommonDelayScan scan = common_delay_scan(p.jtd, p.gate, default_scan_delays(c));

    const GaussianFit fs = fit_gaussian_1d(scan.singles_signal);
    const GaussianFit fc = fit_gaussian_1d(scan.coincidence);
    // frozen from the validated model: singles ~1.34 ps, coincidence ~188 fs
    CHECK(fs.fwhm_fs == doctest::Approx(1343.0).epsilon(0.02));
    CHECK(fc.fwhm_fs == doctest::Approx(187.5).epsilon(0.02));
    CHECK(fs.fwhm_fs / fc.fwhm_fs > 5.0);

    // peak-normalized histograms; the coincidence peak sits at zero delay
    // (the singles top is flat, so only its value and symmetry are pinned)
    for (const Histogram1D* h :
         {&scan.singles_signal, &scan.singles_idler, &scan.coincidence}) {
        CHECK(*std::max_element(h->values.begin(), h->values.end()) == doctest::Approx(1.0));
        const std::size_t m = h->values.size();
        for (std::size_t k = 0; k < m / 4; ++k) {
            CHECK(h->values[k] == doctest::Approx(h->values[m - 1 - k]).epsilon(1e-6));
        }
    }
    double cmax = 0.0, cat = 0.0;
    for (std::size_t k = 0; k < scan.coincidence.values.size(); ++k) {
        if (scan.coincidence.values[k] > cmax) {
            cmax = scan.coincidence.values[k];
            cat = scan.coincidence.delays_fs[k];
        }
    }
    CHECK(std::abs(cat) <= 25.0);
}

TEST_CASE("factorable state shows no narrow coincidence feature") {
    // matched gaussian widths: coincidence width = singles width / sqrt(2)
    ExperimentConfig c = config_with(6.0, PmKind::gaussian);
    const DerivedScales pre = derive_scales(c);
    c.spdc_pump_fwhm_nm = pre.pm_sigma * kFwhmPerSigma * c.pump_center_wavelength_nm *
                          c.pump_center_wavelength_nm /
                          (2.0 * M_PI * kSpeedOfLightNmPerFs);
    const DerivedScales s = derive_scales(c);  // now pump_sigma == pm_sigma
    const Pipeline p = run_pipeline(c);
    const CommonDelayScan scan = common_delay_scan(p.jtd, p.gate, default_scan_delays(c));
    const double singles = fit_gaussian_1d(scan.singles_signal).fwhm_fs;
    const double coinc = fit_gaussian_1d(scan.coincidence).fwhm_fs;
    // analytic: var_coinc = (var_marginal + gate^2) / 2 with variance split
    // evenly between the sum and difference directions
    const double gate_sigma = p.gate.fwhm_fs / kFwhmPerSigma;
    const double var_marg = 0.5 / (s.pump_sigma * s.pump_sigma);  // = V_w + V_v, matched
    const double expect_singles = kFwhmPerSigma * std::sqrt(var_marg + gate_sigma * gate_sigma);
    const double expect_coinc =
        kFwhmPerSigma * std::sqrt(0.5 * var_marg + 0.5 * gate_sigma * gate_sigma);
    CHECK(singles == doctest::Approx(expect_singles).epsilon(1e-3));
    CHECK(coinc == doctest::Approx(expect_coinc).epsilon(1e-3));
    CHECK(singles / coinc == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("theoretical profiles widen monotonically as the pump narrows") {
    std::vector<ExperimentConfig> configs;
    for (double bw : {6.0, 3.6, 2.2, 1.1}) configs.push_back(config_with(bw, PmKind::sinc));
    const auto profiles = theoretical_profiles(configs);
    REQUIRE(profiles.size() == 4);

    double prev = 0.0;
    for (const auto& h : profiles) {
        const double w = fit_gaussian_1d(h).fwhm_fs;
        CHECK(w > prev);
        prev = w;
        // peaks at zero delay
        double vmax = 0.0, at = 0.0;
        for (std::size_t k = 0; k < h.values.size(); ++k) {
            if (h.values[k] > vmax) {
                vmax = h.values[k];
                at = h.delays_fs[k];
            }
        }
        CHECK(std::abs(at) <= 25.0);
    }

    // the first profile is exactly the common-delay coincidence output
    const Pipeline p = run_pipeline(configs[0]);
    const auto scan = common_delay_scan(p.jtd, p.gate, default_scan_delays(configs[0]));
    REQUIRE(profiles[0].values.size() == scan.coincidence.values.size());
    for (std::size_t k = 0; k < scan.coincidence.values.size(); ++k) {
        CHECK(profiles[0].values[k] == scan.coincidence.values[k]);
    }
}

TEST_CASE("jtd scan geometry follows the bandwidth rule") {
    double span = 0.0, step = 0.0;
    default_scan_geometry(config_with(6.0, PmKind::gaussian), span, step);
    CHECK(step == 133.0);
    CHECK(span == 15 * 133.0);
    default_scan_geometry(config_with(1.1, PmKind::gaussian), span, step);
    CHECK(step == 266.0);
    CHECK(span == 15 * 266.0);

    const auto c = config_with(6.0, PmKind::gaussian);
    const Pipeline p = run_pipeline(c);
    const ScanSurface surface = jtd_scan(p.jtd, p.gate, c);
    CHECK(surface.delays_s_fs.size() == 16);
    CHECK(surface.delays_i_fs.size() == 16);
    CHECK(surface.delays_s_fs[1] - surface.delays_s_fs[0] == doctest::Approx(133.0));
    CHECK(surface.delays_s_fs.front() == doctest::Approx(-997.5));
    CHECK(surface.delays_s_fs.back() == doctest::Approx(997.5));
    CHECK(surface.values.maxCoeff() == doctest::Approx(1.0));
    CHECK(surface.norm == SurfaceNorm::peak);
}

TEST_CASE("jtd scan correlations across bandwidths") {
    // anti-diagonal ridge at 6 nm, near-symmetric blob at 1.1 nm
    const auto strong = run_pipeline(config_with(6.0, PmKind::gaussian));
    const ScanSurface s6 =
        jtd_scan(strong.jtd, strong.gate, config_with(6.0, PmKind::gaussian));
    const double rho6 = correlation_coefficient(s6.values, s6.delays_s_fs, s6.delays_i_fs);
    CHECK(rho6 < -0.5);
    CHECK(rho6 == doctest::Approx(-0.889).epsilon(0.02));

    const auto weak = run_pipeline(config_with(1.1, PmKind::gaussian));
    const ScanSurface s11 = jtd_scan(weak.jtd, weak.gate, config_with(1.1, PmKind::gaussian));
    const double rho11 = correlation_coefficient(s11.values, s11.delays_s_fs, s11.delays_i_fs);
    CHECK(std::abs(rho11) < 0.15);
    CHECK(rho11 == doctest::Approx(0.083).epsilon(0.25));
}

TEST_CASE("jtd scan rejects delays beyond the simulated window") {
    const auto c = config_with(6.0, PmKind::gaussian);
    const Pipeline p = run_pipeline(c);
    CHECK_THROWS_AS(jtd_scan(p.jtd, p.gate, c, 60000.0, 4000.0), InvalidInput);
}

TEST_CASE("delta-like gate turns the scan into density samples") {
    const auto c = config_with(2.2, PmKind::gaussian);
    const Pipeline p = run_pipeline(c);
    GateProfile narrow = p.gate;
    narrow.fwhm_fs = p.jtd.grid_s.step;
    const ScanSurface s = jtd_scan(p.jtd, narrow, c);
    // all-gaussian state: the density at the exact delay coordinates is the
    // closed-form rotated gaussian
    const DerivedScales sc = derive_scales(c);
    Eigen::MatrixXd expect(16, 16);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            const double a = s.delays_s_fs[static_cast<std::size_t>(i)];
            const double b = s.delays_i_fs[static_cast<std::size_t>(j)];
            expect(i, j) = std::exp(-0.5 * sc.pump_sigma * sc.pump_sigma * (a + b) * (a + b) -
                                    0.5 * sc.pm_sigma * sc.pm_sigma * (a - b) * (a - b));
        }
    }
    expect /= expect.maxCoeff();
    // a one-step gate aliases (sparse sampling of a sub-step gaussian); the
    // error bound is the Poisson-summation correction, ~6% per axis here
    CHECK((s.values - expect).cwiseAbs().maxCoeff() < 0.15);

    // a four-step gate samples cleanly, and gaussian (x) gaussian convolution
    // is exact: each axis gains the gate variance
    GateProfile four = p.gate;
    four.fwhm_fs = 4.0 * p.jtd.grid_s.step;
    const ScanSurface s4 = jtd_scan(p.jtd, four, c);
    const double gv = four.fwhm_fs / kFwhmPerSigma * four.fwhm_fs / kFwhmPerSigma;
    const double vsum = 1.0 / (sc.pump_sigma * sc.pump_sigma) + 2.0 * gv;
    const double vdiff = 1.0 / (sc.pm_sigma * sc.pm_sigma) + 2.0 * gv;
    Eigen::MatrixXd gated(16, 16);
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            const double a = s4.delays_s_fs[static_cast<std::size_t>(i)];
            const double b = s4.delays_i_fs[static_cast<std::size_t>(j)];
            gated(i, j) =
                std::exp(-(a + b) * (a + b) / (2.0 * vsum) - (a - b) * (a - b) / (2.0 * vdiff));
        }
    }
    gated /= gated.maxCoeff();
    CHECK((s4.values - gated).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("counter rng is stateless in the point index") {
    CounterRng a(42, 3, 5);
    CounterRng b(42, 3, 5);
    for (int k = 0; k < 100; ++k) CHECK(a.next() == b.next());
    CounterRng c1(42, 5, 3);
    CounterRng c2(43, 3, 5);
    CHECK(CounterRng(42, 3, 5).next() != c1.next());
    CHECK(CounterRng(42, 3, 5).next() != c2.next());
}

TEST_CASE("poisson draws have the right mean") {
    // analytic-mean oracle, 3 sigma / sqrt(N) band
    for (double mean : {0.5, 4.0, 87.0, 1020.0}) {
        const int trials = 1000;
        double sum = 0.0;
        for (int k = 0; k < trials; ++k) {
            CounterRng rng(static_cast<std::uint64_t>(k), 0, 0);
            sum += static_cast<double>(poisson_draw(rng, mean));
        }
        const double band = 3.0 * std::sqrt(mean / trials);
        CHECK(std::abs(sum / trials - mean) < band);
    }
    CounterRng rng(1, 0, 0);
    CHECK(poisson_draw(rng, 0.0) == 0);
}

TEST_CASE("synthesized counts: determinism, rates and the zero-dwell edge") {
    ExperimentConfig c = config_with(1.1, PmKind::gaussian);
    const Pipeline p = run_pipeline(c);
    const ScanSurface surface = jtd_scan(p.jtd, p.gate, c);

    const CountsSurface a = synthesize_counts(surface, c, 7);
    const CountsSurface b = synthesize_counts(surface, c, 7);
    CHECK((a.counts.array() == b.counts.array()).all());
    const CountsSurface other = synthesize_counts(surface, c, 8);
    CHECK((a.counts.array() != other.counts.array()).any());

    // peak mean ~ 17/s * 60 s = 1020; check the sampled peak within 5 sigma
    const long peak = a.counts.maxCoeff();
    CHECK(peak > 1020 - 5 * 32);
    CHECK(peak < 1020 + 5 * 32);

    // analytic per-point mean (the documented counting model), as an oracle
    // for the sample mean over many seeds
    Eigen::VectorXd ms = surface.values.rowwise().sum();
    Eigen::VectorXd mi = surface.values.colwise().sum().transpose();
    ms /= ms.maxCoeff();
    mi /= mi.maxCoeff();
    const double surface_peak = surface.values.maxCoeff();
    auto analytic_mean = [&](Eigen::Index i, Eigen::Index j) {
        const double rs = c.background_rate_hz +
                          (c.peak_singles_rate_hz - c.background_rate_hz) * ms(i);
        const double ri = c.background_rate_hz +
                          (c.peak_singles_rate_hz - c.background_rate_hz) * mi(j);
        return c.dwell_s * (c.peak_coincidence_rate_hz * surface.values(i, j) / surface_peak +
                            rs * ri * c.coincidence_window_ns * 1e-9);
    };
    const int trials = 1000;
    for (Eigen::Index pt : {static_cast<Eigen::Index>(8), static_cast<Eigen::Index>(2)}) {
        double sum = 0.0;
        for (int seed = 0; seed < trials; ++seed) {
            sum += static_cast<double>(
                synthesize_counts(surface, c, static_cast<std::uint64_t>(seed)).counts(pt, pt));
        }
        const double mean = analytic_mean(pt, pt);
        CHECK(std::abs(sum / trials - mean) < 3.0 * std::sqrt(mean / trials) + 1e-9);
    }

    ExperimentConfig idle = c;
    idle.dwell_s = 0.0;
    const CountsSurface none = synthesize_counts(surface, idle, 7);
    CHECK(none.counts.cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("accidental rate stays negligible at the configured rates") {
    const ExperimentConfig c;
    const double acc = accidental_rate_hz(c);
    CHECK(acc == doctest::Approx(5300.0 * 5300.0 * 1.8e-9));
    CHECK(acc == doctest::Approx(0.0506).epsilon(0.01));
    CHECK(acc < 0.01 * c.peak_coincidence_rate_hz);
}
