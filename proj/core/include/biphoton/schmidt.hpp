#pragma once

#include <vector>

#include <Eigen/Dense>

#include "biphoton/joint_state.hpp"

namespace biphoton {

/// Descending Schmidt eigenvalues, sum normalized to 1, entries below 1e-12
/// truncated after normalization.
struct SchmidtSpectrum {
    std::vector<double> eigenvalues;
    int mode_count_kept = 0;
};

struct EntanglementReport {
    double entropy_bits = 0.0;
    double purity = 1.0;
    double schmidt_number = 1.0;  // 1 / purity
};

/// Singular-value decomposition of the amplitude matrix scaled by
/// sqrt(step_s * step_i), so the spectrum is discretization-independent and
/// identical between the spectral and temporal domains.
SchmidtSpectrum schmidt_decompose(const JointAmplitude& amplitude);
SchmidtSpectrum schmidt_decompose(const Eigen::MatrixXcd& values, double step_s, double step_i);
SchmidtSpectrum schmidt_decompose(const Eigen::MatrixXd& values, double step_s, double step_i);

/// Shannon entropy base 2 with 0 log 0 := 0, clamped at >= 0.
double entropy_bits(const SchmidtSpectrum& spectrum);

/// Sum of squared eigenvalues (heralded single-photon purity).
double purity(const SchmidtSpectrum& spectrum);

EntanglementReport report_from(const SchmidtSpectrum& spectrum);

/// Analytic spectrum of a rotated two-variable Gaussian amplitude with
/// principal widths a (sum) and b (difference): lambda_n = (1-mu^2) mu^(2n),
/// mu = |a-b|/(a+b). Independent oracle for the numeric decomposition.
SchmidtSpectrum gaussian_oracle(double sum_width, double diff_width);

/// Flat-phase entanglement extraction: amplitude taken as the pointwise
/// non-negative square root of the density. Negative entries are rejected;
/// callers must background-subtract and clip first.
EntanglementReport entropy_from_density(const JointDensity& d);
EntanglementReport entropy_from_density(const Eigen::MatrixXd& density, double step_s,
                                        double step_i);

}  // namespace biphoton
