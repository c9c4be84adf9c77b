#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "biphoton/config.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

using namespace biphoton;

TEST_CASE("wavelength bandwidth to angular frequency") {
    // independent oracle in SI: 2 pi c dl / l^2
    const double c_si = 299792458.0;
    const double expected_si = 2.0 * M_PI * c_si * 6e-9 / (790e-9 * 790e-9);  // rad/s
    const double got = bandwidth_to_angular_frequency({6.0, 790.0});          // rad/fs
    CHECK(got * 1e15 == doctest::Approx(expected_si).epsilon(1e-12));
    CHECK(got * 1e15 == doctest::Approx(1.81e13).epsilon(0.01));
    // 2 pi x 2.88 THz
    CHECK(got / (2.0 * M_PI) * 1e3 == doctest::Approx(2.88).epsilon(0.01));

    CHECK(bandwidth_to_angular_frequency({0.0, 790.0}) == 0.0);

    const double narrow = bandwidth_to_angular_frequency({1.1, 790.0});
    CHECK(narrow * 1e15 == doctest::Approx(2.0 * M_PI * c_si * 1.1e-9 / (790e-9 * 790e-9)));
    CHECK(narrow * 1e15 == doctest::Approx(3.32e12).epsilon(0.01));

    CHECK_THROWS_AS(bandwidth_to_angular_frequency({6.0, 0.0}), InvalidInput);
    CHECK_THROWS_AS(bandwidth_to_angular_frequency({6.0, -790.0}), InvalidInput);
    CHECK_THROWS_AS(bandwidth_to_angular_frequency({-1.0, 790.0}), InvalidInput);
}

TEST_CASE("bandwidth conversion is linear in the bandwidth") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> bw(0.01, 20.0), scale(0.1, 10.0);
    for (int k = 0; k < 200; ++k) {
        const double dl = bw(rng), s = scale(rng);
        const double f1 = bandwidth_to_angular_frequency({dl, 790.0});
        const double fs = bandwidth_to_angular_frequency({s * dl, 790.0});
        CHECK(fs == doctest::Approx(s * f1).epsilon(1e-12));
    }
}

TEST_CASE("transform-limited duration") {
    const double nu_6nm = bandwidth_to_angular_frequency({6.0, 790.0}) / (2.0 * M_PI);
    CHECK(transform_limited_duration(nu_6nm) == doctest::Approx(153.1).epsilon(0.005));

    const double nu_11 = bandwidth_to_angular_frequency({1.1, 790.0}) / (2.0 * M_PI);
    CHECK(transform_limited_duration(nu_11) == doctest::Approx(835.0).epsilon(0.005));

    CHECK_THROWS_AS(transform_limited_duration(0.0), InvalidInput);
    CHECK_THROWS_AS(transform_limited_duration(-1.0), InvalidInput);
}

TEST_CASE("duration/bandwidth round trip and monotonicity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> nu(1e-5, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double v = nu(rng);
        const double back = transform_limited_bandwidth(transform_limited_duration(v));
        CHECK(std::abs(back - v) / v < 1e-12);
    }
    double prev = transform_limited_duration(bandwidth_to_angular_frequency({0.5, 790.0}) / (2 * M_PI));
    for (double dl = 1.0; dl <= 10.0; dl += 0.5) {
        const double cur =
            transform_limited_duration(bandwidth_to_angular_frequency({dl, 790.0}) / (2 * M_PI));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("sigma conventions") {
    CHECK(intensity_sigma(kFwhmPerSigma) == doctest::Approx(1.0));
    CHECK(amplitude_sigma(1.0) == doctest::Approx(std::sqrt(2.0) * intensity_sigma(1.0)));
    // half-max of the intensity profile falls at FWHM/2
    const double sig = intensity_sigma(2.0);
    CHECK(std::exp(-1.0 * 1.0 / (2.0 * sig * sig)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("config defaults and parsing") {
    const ExperimentConfig def = load_config("");
    CHECK(def.spdc_pump_fwhm_nm == 6.0);
    CHECK(def.pump_center_wavelength_nm == 790.0);
    CHECK(def.pm_kind == PmKind::gaussian);
    CHECK(def.two_photon_window_ps == 1.4);
    CHECK(def.rep_rate_mhz == 80.0);
    CHECK(def.grid_points == 256);
    CHECK(def == ExperimentConfig{});

    const ExperimentConfig fig4d = load_config(R"({"spdc_pump_fwhm_nm": 1.1})");
    CHECK(fig4d.spdc_pump_fwhm_nm == 1.1);
    CHECK(fig4d.gate_fwhm_nm == 6.0);

    const ExperimentConfig sinc = load_config(R"({"pm_kind": "sinc", "grid_points": 512})");
    CHECK(sinc.pm_kind == PmKind::sinc);
    CHECK(sinc.grid_points == 512);
}

TEST_CASE("config rejection paths name the offending key") {
    CHECK_THROWS_WITH_AS(load_config(R"({"grid_points": 100})"),
                         doctest::Contains("grid_points"), ParseError);
    CHECK_THROWS_WITH_AS(load_config(R"({"grid_points": 32})"),
                         doctest::Contains("grid_points"), ParseError);
    CHECK_THROWS_WITH_AS(load_config(R"({"unknown_knob": 3})"),
                         doctest::Contains("unknown_knob"), ParseError);
    CHECK_THROWS_WITH_AS(load_config(R"({"spdc_pump_fwhm_nm": "wide"})"),
                         doctest::Contains("spdc_pump_fwhm_nm"), ParseError);
    CHECK_THROWS_WITH_AS(load_config(R"({"spdc_pump_fwhm_nm": -2})"),
                         doctest::Contains("spdc_pump_fwhm_nm"), ParseError);
    CHECK_THROWS_WITH_AS(load_config(R"({"pm_kind": "boxcar"})"), doctest::Contains("pm_kind"),
                         ParseError);
    CHECK_THROWS_AS(load_config("not json"), ParseError);
    CHECK_THROWS_AS(load_config("[1,2]"), ParseError);
}

TEST_CASE("config serialization round trip") {
    ExperimentConfig c;
    c.spdc_pump_fwhm_nm = 2.2;
    c.pm_kind = PmKind::sinc;
    c.dwell_s = 600.0;
    c.grid_points = 128;
    c.grid_span_sigmas = 10.5;
    const ExperimentConfig back = load_config(serialize_config(c));
    CHECK(back == c);
    CHECK(config_hash(back) == config_hash(c));
    CHECK(config_hash(back) != config_hash(ExperimentConfig{}));
}

TEST_CASE("derived scales") {
    const DerivedScales s = derive_scales(ExperimentConfig{});
    CHECK(s.window_fs == doctest::Approx(1400.0));
    CHECK(s.boxcar_width_fs == doctest::Approx(2.2 * 1400.0));
    CHECK(s.gate_tl_fwhm_fs == doctest::Approx(153.1).epsilon(0.005));
    CHECK(s.pump_tl_fwhm_fs == doctest::Approx(s.gate_tl_fwhm_fs));
    // gaussian PM matches the sinc main lobe's intensity FWHM
    const double fwhm = 8.0 * kSincHalfPowerArg / s.boxcar_width_fs;
    CHECK(s.pm_sigma == doctest::Approx(fwhm / kFwhmPerSigma));
    // the sinc half-power constant solves sin(x)/x = 1/sqrt(2)
    CHECK(std::sin(kSincHalfPowerArg) / kSincHalfPowerArg ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}
