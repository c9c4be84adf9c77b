#include "biphoton/schmidt.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

constexpr double kTruncation = 1e-12;

// Eigenvalues of the Gram matrix M M^dagger are the squared singular values;
// forming the Gram matrix is accurate enough here because only lambda down to
// the 1e-12 truncation level matters.
SchmidtSpectrum from_gram_eigenvalues(Eigen::VectorXd ev) {
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
    double total = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) total += std::max(ev(i), 0.0);
    if (!(total > 0.0)) throw DegenerateDataError("schmidt_decompose: zero amplitude");

    SchmidtSpectrum s;
    s.eigenvalues.reserve(static_cast<std::size_t>(ev.size()));
    double kept = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double lam = std::max(ev(i), 0.0) / total;
        if (lam < kTruncation) break;  // sorted descending
        s.eigenvalues.push_back(lam);
        kept += lam;
    }
    for (double& lam : s.eigenvalues) lam /= kept;
    s.mode_count_kept = static_cast<int>(s.eigenvalues.size());
    return s;
}

template <typename Matrix>
SchmidtSpectrum decompose_weighted(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m * m.adjoint(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("schmidt_decompose: eigensolver failed to converge (matrix size " +
                           std::to_string(m.rows()) + ")");
    }
    return from_gram_eigenvalues(solver.eigenvalues());
}

}  // namespace

SchmidtSpectrum schmidt_decompose(const Eigen::MatrixXcd& values, double step_s, double step_i) {
    const double w = std::sqrt(step_s * step_i);
    // Real amplitudes (flat phase) take the cheaper symmetric path.
    if (values.imag().cwiseAbs().maxCoeff() <= 1e-14 * values.cwiseAbs().maxCoeff()) {
        return decompose_weighted(Eigen::MatrixXd(values.real() * w));
    }
    return decompose_weighted(Eigen::MatrixXcd(values * w));
}

SchmidtSpectrum schmidt_decompose(const Eigen::MatrixXd& values, double step_s, double step_i) {
    return decompose_weighted(Eigen::MatrixXd(values * std::sqrt(step_s * step_i)));
}

SchmidtSpectrum schmidt_decompose(const JointAmplitude& amplitude) {
    return schmidt_decompose(amplitude.values, amplitude.grid_s.step, amplitude.grid_i.step);
}

double entropy_bits(const SchmidtSpectrum& spectrum) {
    double s = 0.0;
    for (double lam : spectrum.eigenvalues) {
        if (lam > 0.0) s -= lam * std::log2(lam);
    }
    return std::max(s, 0.0);
}

double purity(const SchmidtSpectrum& spectrum) {
    double p = 0.0;
    for (double lam : spectrum.eigenvalues) p += lam * lam;
    return p;
}

EntanglementReport report_from(const SchmidtSpectrum& spectrum) {
    EntanglementReport r;
    r.entropy_bits = entropy_bits(spectrum);
    r.purity = purity(spectrum);
    r.schmidt_number = 1.0 / r.purity;
    return r;
}

SchmidtSpectrum gaussian_oracle(double sum_width, double diff_width) {
    if (!(sum_width > 0.0) || !(diff_width > 0.0)) {
        throw InvalidInput("gaussian_oracle: widths must be positive");
    }
    const double mu = std::abs(sum_width - diff_width) / (sum_width + diff_width);
    SchmidtSpectrum s;
    if (mu == 0.0) {
        s.eigenvalues = {1.0};
        s.mode_count_kept = 1;
        return s;
    }
    const double r = mu * mu;
    double lam = 1.0 - r;
    double kept = 0.0;
    while (lam >= kTruncation) {
        s.eigenvalues.push_back(lam);
        kept += lam;
        lam *= r;
    }
    for (double& v : s.eigenvalues) v /= kept;
    s.mode_count_kept = static_cast<int>(s.eigenvalues.size());
    return s;
}

EntanglementReport entropy_from_density(const Eigen::MatrixXd& density, double step_s,
                                        double step_i) {
    if (density.minCoeff() < 0.0) {
        throw InvalidInput(
            "entropy_from_density: density has negative entries; subtract and clip first");
    }
    return report_from(schmidt_decompose(Eigen::MatrixXd(density.cwiseSqrt()), step_s, step_i));
}

EntanglementReport entropy_from_density(const JointDensity& d) {
    return entropy_from_density(d.values, d.grid_s.step, d.grid_i.step);
}

}  // namespace biphoton
