#include "biphoton/joint_state.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"
#include "biphoton/fourier.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

double JointAmplitude::norm_squared() const {
    return values.squaredNorm() * grid_s.step * grid_i.step;
}

double JointDensity::integral() const {
    return values.sum() * grid_s.step * grid_i.step;
}

double pump_amplitude(double omega_sum, double sigma) {
    if (!(sigma > 0.0)) throw InvalidInput("pump_amplitude: sigma must be positive");
    const double x = omega_sum / sigma;
    return std::exp(-0.25 * x * x);
}

double pm_amplitude(double omega_diff, PmKind kind, double boxcar_fs) {
    if (!(boxcar_fs > 0.0)) throw InvalidInput("pm_amplitude: window must be positive");
    if (kind == PmKind::sinc) {
        const double x = omega_diff * boxcar_fs / 4.0;
        if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
        return std::sin(x) / x;
    }
    const double sigma = intensity_sigma(8.0 * kSincHalfPowerArg / boxcar_fs);
    const double x = omega_diff / sigma;
    return std::exp(-0.25 * x * x);
}

Eigen::VectorXd pump_envelope(const AxisGrid& grid, double sigma_sum) {
    Eigen::VectorXd v(grid.n);
    for (int i = 0; i < grid.n; ++i) v(i) = pump_amplitude(grid.value(i), sigma_sum);
    return v;
}

Eigen::VectorXd phase_matching(const AxisGrid& grid, PmKind kind, double window_fs) {
    const double boxcar = diff_time_support(window_fs);
    Eigen::VectorXd v(grid.n);
    for (int i = 0; i < grid.n; ++i) v(i) = pm_amplitude(grid.value(i), kind, boxcar);
    return v;
}

JointAmplitude build_jsa(const ExperimentConfig& config) {
    return build_jsa(config, make_grids(config));
}

JointAmplitude build_jsa(const ExperimentConfig& config, const GridPair& grids) {
    const DerivedScales s = derive_scales(config);
    const AxisGrid& g = grids.spectral;

    JointAmplitude a;
    a.domain = Domain::spectral;
    a.grid_s = g;
    a.grid_i = g;
    a.values.resize(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
        const double ws = g.value(i);
        for (int j = 0; j < g.n; ++j) {
            const double wi = g.value(j);
            a.values(i, j) = pump_amplitude(ws + wi, s.pump_sigma) *
                             pm_amplitude(ws - wi, config.pm_kind, s.boxcar_width_fs);
        }
    }
    // Normalize on the grid, not analytically, so discrete invariants are exact.
    const double norm = std::sqrt(a.norm_squared());
    if (!(norm > 0.0)) throw NumericError("build_jsa: amplitude vanished on the grid");
    a.values /= norm;
    return a;
}

namespace {

AxisGrid conjugate_grid(const AxisGrid& g) {
    return AxisGrid{g.n, 2.0 * std::numbers::pi / (g.n * g.step)};
}

}  // namespace

JointAmplitude to_temporal(const JointAmplitude& spectral) {
    if (spectral.domain != Domain::spectral) {
        throw InvalidInput("to_temporal: input must be a spectral-domain amplitude");
    }
    JointAmplitude out;
    out.domain = Domain::temporal;
    out.grid_s = conjugate_grid(spectral.grid_s);
    out.grid_i = conjugate_grid(spectral.grid_i);
    out.values = centered_transform_2d(spectral.values, spectral.grid_s.step, true);
    return out;
}

JointAmplitude to_spectral(const JointAmplitude& temporal) {
    if (temporal.domain != Domain::temporal) {
        throw InvalidInput("to_spectral: input must be a temporal-domain amplitude");
    }
    JointAmplitude out;
    out.domain = Domain::spectral;
    out.grid_s = conjugate_grid(temporal.grid_s);
    out.grid_i = conjugate_grid(temporal.grid_i);
    out.values = centered_transform_2d(temporal.values, temporal.grid_s.step, false);
    return out;
}

JointDensity density(const JointAmplitude& amplitude) {
    JointDensity d;
    d.domain = amplitude.domain;
    d.grid_s = amplitude.grid_s;
    d.grid_i = amplitude.grid_i;
    d.values = amplitude.values.cwiseAbs2();
    return d;
}

std::pair<MarginalDensity, MarginalDensity> marginals(const JointDensity& d) {
    MarginalDensity ms{d.grid_s, d.values.rowwise().sum() * d.grid_i.step};
    MarginalDensity mi{d.grid_i, d.values.colwise().sum().transpose() * d.grid_s.step};
    const double is = ms.values.sum() * ms.grid.step;
    const double ii = mi.values.sum() * mi.grid.step;
    if (!(is > 0.0) || !(ii > 0.0)) throw DegenerateDataError("marginals: zero-mass density");
    ms.values /= is;
    mi.values /= ii;
    return {std::move(ms), std::move(mi)};
}

double correlation_coefficient(const Eigen::MatrixXd& weights,
                               const std::vector<double>& coords_s,
                               const std::vector<double>& coords_i) {
    if (weights.rows() != static_cast<Eigen::Index>(coords_s.size()) ||
        weights.cols() != static_cast<Eigen::Index>(coords_i.size())) {
        throw InvalidInput("correlation_coefficient: axis/matrix shape mismatch");
    }
    const double total = weights.sum();
    if (!(total > 0.0)) throw DegenerateDataError("correlation_coefficient: zero-mass density");

    double mean_s = 0.0, mean_i = 0.0;
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        for (Eigen::Index j = 0; j < weights.cols(); ++j) {
            const double w = weights(i, j);
            mean_s += w * coords_s[static_cast<std::size_t>(i)];
            mean_i += w * coords_i[static_cast<std::size_t>(j)];
        }
    }
    mean_s /= total;
    mean_i /= total;

    double var_s = 0.0, var_i = 0.0, cov = 0.0;
    for (Eigen::Index i = 0; i < weights.rows(); ++i) {
        const double ds = coords_s[static_cast<std::size_t>(i)] - mean_s;
        for (Eigen::Index j = 0; j < weights.cols(); ++j) {
            const double di = coords_i[static_cast<std::size_t>(j)] - mean_i;
            const double w = weights(i, j);
            var_s += w * ds * ds;
            var_i += w * di * di;
            cov += w * ds * di;
        }
    }
    if (!(var_s > 0.0) || !(var_i > 0.0)) {
        throw DegenerateDataError("correlation_coefficient: zero variance along an axis");
    }
    return cov / std::sqrt(var_s * var_i);
}

double correlation_coefficient(const JointDensity& d) {
    return correlation_coefficient(d.values, d.grid_s.values(), d.grid_i.values());
}

}  // namespace biphoton
