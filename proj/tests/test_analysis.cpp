#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biphoton/analysis.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/io.hpp"
#include "biphoton/schmidt.hpp"
#include "test_helpers.hpp"

using namespace biphoton;
using testutil::config_with;

namespace {

ScanSurface noiseless_scan(const ExperimentConfig& c) {
    const GridPair grids = make_grids(c);
    const JointDensity d = density(to_temporal(build_jsa(c, grids)));
    return jtd_scan(d, gate_profile(c, grids.temporal), c);
}

CountsSurface counts_from_grid(int n, double step, const Eigen::MatrixXd& values) {
    CountsSurface c;
    for (int k = 0; k < n; ++k) {
        c.delays_s_fs.push_back((k - 0.5 * (n - 1)) * step);
        c.delays_i_fs.push_back((k - 0.5 * (n - 1)) * step);
    }
    c.counts = values.cast<long>();
    c.dwell_s = 60.0;
    return c;
}

}  // namespace

TEST_CASE("gaussian fit recovers noiseless parameters") {
    std::vector<double> t, y;
    const double A = 3.2, c0 = 41.0, F = 187.0, off = 0.37;
    for (int k = -40; k <= 40; ++k) {
        const double x = k * 25.0;
        t.push_back(x);
        y.push_back(A * std::exp(-4.0 * std::log(2.0) * (x - c0) * (x - c0) / (F * F)) + off);
    }
    const GaussianFit fit = fit_gaussian_1d(t, y);
    CHECK(fit.amplitude == doctest::Approx(A).epsilon(1e-8));
    CHECK(fit.center_fs == doctest::Approx(c0).epsilon(1e-8));
    CHECK(fit.fwhm_fs == doctest::Approx(F).epsilon(1e-8));
    CHECK(fit.offset == doctest::Approx(off).epsilon(1e-8));
    CHECK(fit.rms_residual < 1e-10);
}

TEST_CASE("gaussian fit under Poisson noise stays within 10 fs") {
    // Monte-Carlo oracle at the published rates: peak 1020 counts, ~3/point
    // accidentals; 95% of seeds within +-10 fs of the 187.5 fs truth
    const double truth = 187.5;
    std::vector<double> t;
    std::vector<double> mean;
    for (int k = -24; k <= 24; ++k) {
        const double x = k * 25.0;
        t.push_back(x);
        mean.push_back(1020.0 * std::exp(-4.0 * std::log(2.0) * x * x / (truth * truth)) + 3.0);
    }
    int within = 0;
    for (int seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(900 + seed);
        std::vector<double> y;
        for (double m : mean) y.push_back(std::poisson_distribution<long>(m)(rng));
        const GaussianFit fit = fit_gaussian_1d(t, y);
        if (std::abs(fit.fwhm_fs - truth) <= 10.0) ++within;
    }
    CHECK(within >= 95);
}

TEST_CASE("gaussian fit error paths") {
    std::vector<double> t{0, 25, 50, 75, 100}, flat{2, 2, 2, 2, 2};
    CHECK_THROWS_AS(fit_gaussian_1d(t, flat), FitError);
    std::vector<double> t4{0, 25, 50, 75}, y4{0, 1, 1, 0};
    CHECK_THROWS_AS(fit_gaussian_1d(t4, y4), InvalidInput);
    // width below one step: a single spike on a coarse grid
    std::vector<double> ts, ys;
    for (int k = -10; k <= 10; ++k) {
        ts.push_back(k * 100.0);
        ys.push_back(k == 0 ? 1.0 : 0.0);
    }
    CHECK_THROWS_AS(fit_gaussian_1d(ts, ys), FitError);
}

TEST_CASE("fitted width agrees with the raw half-max of a simulated histogram") {
    const auto c = config_with(6.0, PmKind::sinc);
    const GridPair grids = make_grids(c);
    const JointDensity d = density(to_temporal(build_jsa(c, grids)));
    const auto scan = common_delay_scan(d, gate_profile(c, grids.temporal),
                                        default_scan_delays(c));
    const double fitted = fit_gaussian_1d(scan.coincidence).fwhm_fs;
    const double raw = testutil::half_max_width(scan.coincidence.delays_fs,
                                                scan.coincidence.values);
    CHECK(std::abs(fitted - raw) <= 25.0);  // one delay step
}

TEST_CASE("background subtraction recovers an offset-free surface") {
    // known signal + uniform offset, Poisson noise; mirrors the synth model
    const int n = 16;
    const double step = 133.0;
    Eigen::MatrixXd signal(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = (i - 7.5) * step, y = (j - 7.5) * step;
            signal(i, j) = 900.0 * std::exp(-(x * x + y * y) / (2.0 * 250.0 * 250.0));
        }
    }
    const double offset = 40.0;
    std::mt19937_64 rng(5);
    Eigen::MatrixXd noisy(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            noisy(i, j) = static_cast<double>(
                std::poisson_distribution<long>(signal(i, j) + offset)(rng));
        }
    }
    double bg = 0.0;
    const ScanSurface sub = subtract_background(counts_from_grid(n, step, noisy), bg);
    CHECK(bg == doctest::Approx(offset).epsilon(0.2));
    CHECK(sub.norm == SurfaceNorm::unit_integral);
    CHECK(sub.values.sum() * step * step == doctest::Approx(1.0).epsilon(1e-9));
    // compare shapes: normalized signal vs recovered, within the noise floor
    Eigen::MatrixXd ref = signal / (signal.sum() * step * step);
    CHECK((sub.values - ref).cwiseAbs().maxCoeff() < 0.15 * ref.maxCoeff());

    // estimator bias < 2% of peak when the signal stays 2 FWHM inside the frame
    CHECK(std::abs(bg - offset) < 0.02 * (signal.maxCoeff() + offset));
}

TEST_CASE("background subtraction degeneracy") {
    const int n = 8;
    CHECK_THROWS_AS(
        subtract_background(counts_from_grid(n, 100.0, Eigen::MatrixXd::Constant(n, n, 5.0))),
        DegenerateDataError);
    CHECK_THROWS_AS(
        subtract_background(counts_from_grid(n, 100.0, Eigen::MatrixXd::Zero(n, n))),
        DegenerateDataError);
}

TEST_CASE("zero-background counts pass through nearly unchanged") {
    const auto c = config_with(1.1, PmKind::gaussian);
    const ScanSurface surface = noiseless_scan(c);
    // scale to counts with no offset; boundary of the 4 ps scan is ~0
    Eigen::MatrixXd scaled = surface.values * 1020.0;
    const CountsSurface counts =
        counts_from_grid(static_cast<int>(surface.delays_s_fs.size()),
                         surface.delays_s_fs[1] - surface.delays_s_fs[0],
                         scaled.array().round().matrix());
    double bg = 0.0;
    const ScanSurface sub = subtract_background(counts, bg);
    CHECK(bg < 2.0);
}

TEST_CASE("analyze_jtd on a noiseless surface equals the direct pipeline") {
    const auto c = config_with(1.1, PmKind::gaussian);
    const ScanSurface surface = noiseless_scan(c);
    const AnalysisReport report = analyze_jtd(surface);

    const double step = surface.delays_s_fs[1] - surface.delays_s_fs[0];
    Eigen::MatrixXd normalized = surface.values / (surface.values.sum() * step * step);
    const EntanglementReport direct = entropy_from_density(normalized, step, step);
    CHECK(report.entanglement.entropy_bits ==
          doctest::Approx(direct.entropy_bits).epsilon(1e-9));
    CHECK(report.entanglement.purity == doctest::Approx(direct.purity).epsilon(1e-9));
    CHECK(report.fits.size() == 2);
    CHECK(report.background_per_point == 0.0);
}

TEST_CASE("closed loop: synthesized counts recover the noiseless entanglement") {
    const auto c = config_with(1.1, PmKind::gaussian);
    const ScanSurface surface = noiseless_scan(c);
    const AnalysisReport noiseless = analyze_jtd(surface);
    CHECK(noiseless.entanglement.purity == doctest::Approx(0.9964).epsilon(0.001));

    for (std::uint64_t seed : {1ull, 7ull, 13ull}) {
        const AnalysisReport rec = analyze_jtd(synthesize_counts(surface, c, seed));
        CHECK(std::abs(rec.entanglement.purity - noiseless.entanglement.purity) < 0.05);
    }

    // 6 nm: the recovered correlation stays strongly negative
    const auto c6 = config_with(6.0, PmKind::gaussian);
    const ScanSurface s6 = noiseless_scan(c6);
    const AnalysisReport rec6 = analyze_jtd(synthesize_counts(s6, c6, 3));
    CHECK(rec6.correlation < -0.5);
}

TEST_CASE("pipeline closure tightens with dwell") {
    // recovery error shrinks from 60 s to 600 s dwell, averaged over seeds
    for (double bw : {6.0, 2.2}) {
        const auto base = config_with(bw, PmKind::gaussian);
        const ScanSurface surface = noiseless_scan(base);
        const double truth = analyze_jtd(surface).entanglement.entropy_bits;
        double err_short = 0.0, err_long = 0.0;
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            ExperimentConfig cshort = base;
            cshort.dwell_s = 60.0;
            ExperimentConfig clong = base;
            clong.dwell_s = 600.0;
            err_short += std::abs(
                analyze_jtd(synthesize_counts(surface, cshort, seed)).entanglement.entropy_bits -
                truth);
            err_long += std::abs(
                analyze_jtd(synthesize_counts(surface, clong, seed)).entanglement.entropy_bits -
                truth);
        }
        CHECK(err_long < err_short);
    }
}
