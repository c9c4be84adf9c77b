#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "biphoton/config.hpp"
#include "biphoton/grid.hpp"
#include "biphoton/joint_state.hpp"

namespace biphoton {

/// Transform-limited Gaussian upconversion gate, unit-integral intensity.
struct GateProfile {
    AxisGrid grid;
    Eigen::VectorXd intensity;
    double fwhm_fs = 0.0;

    /// Analytic unit-integral intensity at time t (fs).
    double value_at(double t_fs) const;
};

struct Histogram1D {
    enum class Kind { singles_signal, singles_idler, coincidence };
    Kind kind = Kind::coincidence;
    std::vector<double> delays_fs;
    std::vector<double> values;
};

enum class SurfaceNorm { none, peak, unit_integral };

struct ScanSurface {
    std::vector<double> delays_s_fs, delays_i_fs;
    Eigen::MatrixXd values;
    SurfaceNorm norm = SurfaceNorm::none;
};

struct CountsSurface {
    std::vector<double> delays_s_fs, delays_i_fs;
    Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> counts;
    double dwell_s = 0.0;
    std::uint64_t seed = 0;
    double background_rate_hz = 0.0;
    double peak_singles_rate_hz = 0.0;
    double peak_coincidence_rate_hz = 0.0;
    double coincidence_window_ns = 0.0;
};

GateProfile gate_profile(const ExperimentConfig& config);
GateProfile gate_profile(const ExperimentConfig& config, const AxisGrid& temporal);

/// Joint temporal density convolved with the gate intensity on both axes,
/// evaluated at delays (tau_s, tau_i).
double coincidence_response(const JointDensity& d, const GateProfile& gate, double tau_s,
                            double tau_i);

struct CommonDelayScan {
    Histogram1D singles_signal;
    Histogram1D singles_idler;
    Histogram1D coincidence;
};

/// One shared delay swept through both channels: singles are marginals
/// convolved with the gate, coincidences the diagonal of the gated density.
/// Histograms are peak-normalized.
CommonDelayScan common_delay_scan(const JointDensity& d, const GateProfile& gate,
                                  const std::vector<double>& delays_fs);

/// Default symmetric delay axis covering the two-photon structure.
std::vector<double> default_scan_delays(const ExperimentConfig& config);

/// Peak-normalized coincidence profile of a full simulation run for each
/// config, in input order.
std::vector<Histogram1D> theoretical_profiles(const std::vector<ExperimentConfig>& configs);

/// Gated density on a 2D delay grid. The default geometry is 16 x 16 points
/// with a 133 fs step (266 fs below 1.5 nm pump bandwidth). Throws when the
/// requested delays leave the simulation window.
ScanSurface jtd_scan(const JointDensity& d, const GateProfile& gate,
                     const ExperimentConfig& config);
ScanSurface jtd_scan(const JointDensity& d, const GateProfile& gate,
                     const ExperimentConfig& config, double span_fs, double step_fs);

/// Scan geometry rule used by jtd_scan.
void default_scan_geometry(const ExperimentConfig& config, double& span_fs, double& step_fs);

/// Poisson counts at the configured rates: per-point mean is the peak
/// coincidence rate scaled by the surface plus accidentals derived from the
/// marginal singles rates; deterministic in (seed, point index).
CountsSurface synthesize_counts(const ScanSurface& surface, const ExperimentConfig& config,
                                std::uint64_t seed);

/// Peak accidental-coincidence rate R_s * R_i * window.
double accidental_rate_hz(const ExperimentConfig& config);

}  // namespace biphoton
