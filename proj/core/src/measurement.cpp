#include "biphoton/measurement.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"
#include "biphoton/noise.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

constexpr double kFourLn2 = 2.772588722239781;  // 4 ln 2

double gate_norm(double fwhm_fs) {
    // integral of exp(-4 ln2 t^2 / F^2) dt = F sqrt(pi / (4 ln 2))
    return 1.0 / (fwhm_fs * std::sqrt(std::numbers::pi / kFourLn2));
}

Eigen::VectorXd shifted_gate(const GateProfile& gate, const AxisGrid& axis, double tau) {
    Eigen::VectorXd g(axis.n);
    for (int i = 0; i < axis.n; ++i) g(i) = gate.value_at(axis.value(i) - tau);
    return g;
}

void require_inside(const AxisGrid& axis, double tau, const char* what) {
    if (std::abs(tau) > axis.half_span()) {
        throw InvalidInput(std::string(what) + ": delay " + std::to_string(tau) +
                           " fs lies outside the simulated time window (+-" +
                           std::to_string(axis.half_span()) + " fs)");
    }
}

void require_temporal(const JointDensity& d, const char* what) {
    if (d.domain != Domain::temporal) {
        throw InvalidInput(std::string(what) + ": temporal-domain density required");
    }
}

}  // namespace

double GateProfile::value_at(double t_fs) const {
    const double x = t_fs / fwhm_fs;
    return gate_norm(fwhm_fs) * std::exp(-kFourLn2 * x * x);
}

GateProfile gate_profile(const ExperimentConfig& config) {
    return gate_profile(config, make_grids(config).temporal);
}

GateProfile gate_profile(const ExperimentConfig& config, const AxisGrid& temporal) {
    const DerivedScales s = derive_scales(config);
    if (s.gate_tl_fwhm_fs / temporal.step < 4.0) {
        throw GridResolutionError("gate_profile: grid under-samples the gate (" +
                                  std::to_string(s.gate_tl_fwhm_fs / temporal.step) +
                                  " samples per FWHM)");
    }
    GateProfile g;
    g.grid = temporal;
    g.fwhm_fs = s.gate_tl_fwhm_fs;
    g.intensity.resize(temporal.n);
    for (int i = 0; i < temporal.n; ++i) g.intensity(i) = g.value_at(temporal.value(i));
    g.intensity /= g.intensity.sum() * temporal.step;  // exact unit integral on the grid
    return g;
}

double coincidence_response(const JointDensity& d, const GateProfile& gate, double tau_s,
                            double tau_i) {
    require_temporal(d, "coincidence_response");
    const Eigen::VectorXd gs = shifted_gate(gate, d.grid_s, tau_s);
    const Eigen::VectorXd gi = shifted_gate(gate, d.grid_i, tau_i);
    return gs.dot(d.values * gi) * d.grid_s.step * d.grid_i.step;
}

std::vector<double> default_scan_delays(const ExperimentConfig& config) {
    const DerivedScales s = derive_scales(config);
    const double span = 0.75 * s.boxcar_width_fs + 4.0 * s.gate_tl_fwhm_fs;
    const double step = 25.0;
    const int m = static_cast<int>(std::floor(span / step));
    std::vector<double> delays;
    delays.reserve(static_cast<std::size_t>(2 * m + 1));
    for (int k = -m; k <= m; ++k) delays.push_back(k * step);
    return delays;
}

CommonDelayScan common_delay_scan(const JointDensity& d, const GateProfile& gate,
                                  const std::vector<double>& delays_fs) {
    require_temporal(d, "common_delay_scan");
    if (delays_fs.empty()) throw InvalidInput("common_delay_scan: empty delay list");
    for (double tau : delays_fs) require_inside(d.grid_s, tau, "common_delay_scan");

    const auto [ms, mi] = marginals(d);
    CommonDelayScan scan;
    scan.singles_signal = {Histogram1D::Kind::singles_signal, delays_fs, {}};
    scan.singles_idler = {Histogram1D::Kind::singles_idler, delays_fs, {}};
    scan.coincidence = {Histogram1D::Kind::coincidence, delays_fs, {}};

    for (double tau : delays_fs) {
        const Eigen::VectorXd gs = shifted_gate(gate, d.grid_s, tau);
        const Eigen::VectorXd gi = shifted_gate(gate, d.grid_i, tau);
        scan.singles_signal.values.push_back(ms.values.dot(gs) * d.grid_s.step);
        scan.singles_idler.values.push_back(mi.values.dot(gi) * d.grid_i.step);
        scan.coincidence.values.push_back(gs.dot(d.values * gi) * d.grid_s.step * d.grid_i.step);
    }

    for (Histogram1D* h : {&scan.singles_signal, &scan.singles_idler, &scan.coincidence}) {
        double peak = 0.0;
        for (double v : h->values) peak = std::max(peak, v);
        if (peak > 0.0) {
            for (double& v : h->values) v /= peak;
        }
    }
    return scan;
}

std::vector<Histogram1D> theoretical_profiles(const std::vector<ExperimentConfig>& configs) {
    std::vector<Histogram1D> out;
    out.reserve(configs.size());
    for (const auto& config : configs) {
        const auto grids = make_grids(config);
        const JointDensity d = density(to_temporal(build_jsa(config, grids)));
        const GateProfile gate = gate_profile(config, grids.temporal);
        out.push_back(common_delay_scan(d, gate, default_scan_delays(config)).coincidence);
    }
    return out;
}

void default_scan_geometry(const ExperimentConfig& config, double& span_fs, double& step_fs) {
    if (config.spdc_pump_fwhm_nm < 1.5) {
        step_fs = 266.0;
    } else {
        step_fs = 133.0;
    }
    span_fs = 15.0 * step_fs;  // 16 points
}

ScanSurface jtd_scan(const JointDensity& d, const GateProfile& gate,
                     const ExperimentConfig& config) {
    double span = 0.0, step = 0.0;
    default_scan_geometry(config, span, step);
    return jtd_scan(d, gate, config, span, step);
}

ScanSurface jtd_scan(const JointDensity& d, const GateProfile& gate,
                     const ExperimentConfig& config, double span_fs, double step_fs) {
    require_temporal(d, "jtd_scan");
    validate(config);
    if (!(step_fs > 0.0) || !(span_fs >= step_fs)) {
        throw InvalidInput("jtd_scan: need span >= step > 0");
    }
    const int m = static_cast<int>(std::llround(span_fs / step_fs)) + 1;
    std::vector<double> delays(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        delays[static_cast<std::size_t>(k)] = (k - 0.5 * (m - 1)) * step_fs;
    }
    for (double tau : delays) require_inside(d.grid_s, tau, "jtd_scan");

    std::vector<Eigen::VectorXd> gs;
    gs.reserve(delays.size());
    for (double tau : delays) gs.push_back(shifted_gate(gate, d.grid_s, tau));

    ScanSurface surface;
    surface.delays_s_fs = delays;
    surface.delays_i_fs = delays;
    surface.values.resize(m, m);
    const double measure = d.grid_s.step * d.grid_i.step;
    for (int i = 0; i < m; ++i) {
        const Eigen::VectorXd row = d.values * gs[static_cast<std::size_t>(i)];
        for (int j = 0; j < m; ++j) {
            // symmetric axes: gate vectors are shared between rows and columns
            surface.values(j, i) = gs[static_cast<std::size_t>(j)].dot(row) * measure;
        }
    }
    const double peak = surface.values.maxCoeff();
    if (peak > 0.0) surface.values /= peak;
    surface.norm = SurfaceNorm::peak;
    return surface;
}

double accidental_rate_hz(const ExperimentConfig& config) {
    validate(config);
    return config.peak_singles_rate_hz * config.peak_singles_rate_hz *
           config.coincidence_window_ns * 1e-9;
}

CountsSurface synthesize_counts(const ScanSurface& surface, const ExperimentConfig& config,
                                std::uint64_t seed) {
    validate(config);
    const Eigen::Index rows = surface.values.rows();
    const Eigen::Index cols = surface.values.cols();
    if (rows == 0 || cols == 0) throw InvalidInput("synthesize_counts: empty surface");
    if (surface.values.minCoeff() < 0.0) {
        throw InvalidInput("synthesize_counts: surface must be non-negative");
    }
    const double peak = surface.values.maxCoeff();
    if (!(peak > 0.0)) throw DegenerateDataError("synthesize_counts: all-zero surface");

    // Singles rates along each axis follow the surface marginals, scaled
    // between the background floor and the peak singles rate.
    Eigen::VectorXd ms = surface.values.rowwise().sum();
    Eigen::VectorXd mi = surface.values.colwise().sum().transpose();
    ms /= ms.maxCoeff();
    mi /= mi.maxCoeff();
    const double bg = config.background_rate_hz;
    const double span_rate = config.peak_singles_rate_hz - bg;
    const double window_s = config.coincidence_window_ns * 1e-9;

    CountsSurface counts;
    counts.delays_s_fs = surface.delays_s_fs;
    counts.delays_i_fs = surface.delays_i_fs;
    counts.dwell_s = config.dwell_s;
    counts.seed = seed;
    counts.background_rate_hz = config.background_rate_hz;
    counts.peak_singles_rate_hz = config.peak_singles_rate_hz;
    counts.peak_coincidence_rate_hz = config.peak_coincidence_rate_hz;
    counts.coincidence_window_ns = config.coincidence_window_ns;
    counts.counts.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double rate_s = bg + span_rate * ms(i);
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double rate_i = bg + span_rate * mi(j);
            const double mean =
                config.dwell_s * (config.peak_coincidence_rate_hz * surface.values(i, j) / peak +
                                  rate_s * rate_i * window_s);
            CounterRng rng(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
            counts.counts(i, j) = poisson_draw(rng, mean);
        }
    }
    return counts;
}

}  // namespace biphoton
