#pragma once

#include <Eigen/Dense>

#include "biphoton/config.hpp"
#include "biphoton/grid.hpp"

namespace biphoton {

enum class Domain { spectral, temporal };

/// Complex two-photon amplitude over a signal x idler grid, unit norm:
/// sum |values|^2 * step_s * step_i = 1. Row index is signal, column is idler.
struct JointAmplitude {
    Domain domain = Domain::spectral;
    AxisGrid grid_s, grid_i;
    Eigen::MatrixXcd values;

    double norm_squared() const;
};

/// |amplitude|^2: real, non-negative, unit integral.
struct JointDensity {
    Domain domain = Domain::spectral;
    AxisGrid grid_s, grid_i;
    Eigen::MatrixXd values;

    double integral() const;
};

struct MarginalDensity {
    AxisGrid grid;
    Eigen::VectorXd values;  // unit integral
};

/// Pump spectral amplitude exp(-x^2 / (4 sigma^2)) evaluated at the sum
/// detuning; sigma is the intensity-spectrum standard deviation.
double pump_amplitude(double omega_sum, double sigma);

/// Phase-matching amplitude at the difference detuning. The sinc kind has its
/// time-domain dual equal to a boxcar of full width `boxcar_fs` in t_s - t_i;
/// the gaussian kind matches the sinc main lobe's intensity FWHM.
double pm_amplitude(double omega_diff, PmKind kind, double boxcar_fs);

/// Samples of the pump amplitude over a sum-coordinate axis.
Eigen::VectorXd pump_envelope(const AxisGrid& grid, double sigma_sum);

/// Samples of the phase-matching amplitude over a difference-coordinate axis.
Eigen::VectorXd phase_matching(const AxisGrid& grid, PmKind kind, double window_fs);

/// Joint spectral amplitude alpha(w_s + w_i) * phi(w_s - w_i), normalized on
/// the grid after discretization. Grids default to make_grids(config).
JointAmplitude build_jsa(const ExperimentConfig& config);
JointAmplitude build_jsa(const ExperimentConfig& config, const GridPair& grids);

/// Centered unitary Fourier transform onto the conjugate grids. Norm is
/// preserved to machine precision; flat spectral phase is assumed throughout.
JointAmplitude to_temporal(const JointAmplitude& spectral);
JointAmplitude to_spectral(const JointAmplitude& temporal);

JointDensity density(const JointAmplitude& amplitude);

/// Row/column reductions of a density, each renormalized to unit integral.
/// Returns (signal, idler).
std::pair<MarginalDensity, MarginalDensity> marginals(const JointDensity& d);

/// Pearson correlation of the two coordinates under a 2D density. Throws
/// DegenerateDataError when either axis has vanishing variance.
double correlation_coefficient(const JointDensity& d);
double correlation_coefficient(const Eigen::MatrixXd& weights,
                               const std::vector<double>& coords_s,
                               const std::vector<double>& coords_i);

}  // namespace biphoton
