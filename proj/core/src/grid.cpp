#include "biphoton/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "biphoton/errors.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

constexpr double kMinSamplesPerFwhm = 4.0;

struct Feature {
    const char* name;
    double fwhm;
};

void check_resolution(const char* axis, double step, const std::vector<Feature>& features) {
    for (const auto& f : features) {
        const double samples = f.fwhm / step;
        if (samples < kMinSamplesPerFwhm) {
            std::ostringstream msg;
            msg << "grid under-resolves the " << f.name << " on the " << axis
                << " axis: " << samples << " samples per FWHM (need >= " << kMinSamplesPerFwhm
                << "); increase grid_points or adjust grid_span_sigmas";
            throw GridResolutionError(msg.str());
        }
    }
}

GridPair build(const ExperimentConfig& c, bool with_timing) {
    const DerivedScales s = derive_scales(c);
    const int n = c.grid_points;
    const double span = c.grid_span_sigmas;

    // Amplitude-level sigmas set the coverage; the sinc needs explicit room for
    // its side lobes (five zeros), which decay too slowly for a sigma rule.
    const double sigma_amp = std::numbers::sqrt2 * std::max(s.pump_sigma, s.pm_sigma);
    double half = 0.5 * span * sigma_amp;
    if (c.pm_kind == PmKind::sinc) {
        half = std::max(half, 5.0 * 4.0 * std::numbers::pi / s.boxcar_width_fs);
    }
    if (with_timing) {
        // Conjugate time step is pi/half; stretch the span until the shortest
        // temporal feature keeps (span_sigmas/2) samples per FWHM, with a small
        // headroom factor so the default configuration sits above the check.
        const double t_min = std::min(s.gate_tl_fwhm_fs, s.pump_tl_fwhm_fs);
        half = std::max(half, 0.5 * span * 1.05 * std::numbers::pi / t_min);
    }

    GridPair g;
    g.spectral = AxisGrid{n, 2.0 * half / n};
    g.temporal = AxisGrid{n, 2.0 * std::numbers::pi / (n * g.spectral.step)};

    const double pump_fwhm_w = kFwhmPerSigma * s.pump_sigma;
    const double pm_fwhm_w = c.pm_kind == PmKind::sinc
                                 ? 8.0 * kSincHalfPowerArg / s.boxcar_width_fs
                                 : kFwhmPerSigma * s.pm_sigma;
    check_resolution("spectral", g.spectral.step,
                     {{"pump spectrum", pump_fwhm_w}, {"phase-matching lobe", pm_fwhm_w}});
    if (with_timing) {
        check_resolution("temporal", g.temporal.step,
                         {{"gate pulse", s.gate_tl_fwhm_fs},
                          {"pump pulse", s.pump_tl_fwhm_fs},
                          {"arrival window", 0.5 * s.boxcar_width_fs}});
        const double t_extent = 0.5 * s.boxcar_width_fs + 2.0 * s.pump_tl_fwhm_fs;
        if (g.temporal.half_span() < t_extent) {
            std::ostringstream msg;
            msg << "temporal grid span " << g.temporal.half_span()
                << " fs does not contain the two-photon window (needs " << t_extent << " fs)";
            throw GridResolutionError(msg.str());
        }
    }
    return g;
}

}  // namespace

std::vector<double> AxisGrid::values() const {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = value(i);
    return v;
}

GridPair make_grids(const ExperimentConfig& config) { return build(config, true); }

GridPair make_state_grids(const ExperimentConfig& config) { return build(config, false); }

}  // namespace biphoton
