#include "biphoton/fourier.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// The centered transform F_q = sum_j f_j exp(-i w_q t_j) with
// w_q = (q - n/2) dw, t_j = (j - n/2) dt and dw dt = 2 pi / n factors as
//   F = c * P . DFT . P f,  P_k = (-1)^k,  c = (-1)^(n/2),
// so an ordinary DFT plus sign modulation realizes it exactly.
void modulate_signs(Eigen::MatrixXcd& m) {
    const Eigen::Index n = m.rows();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = (j % 2 == 0) ? 1 : 0; i < n; i += 2) {
            m(i, j) = -m(i, j);
        }
    }
}

void modulate_signs(Eigen::VectorXcd& v) {
    for (Eigen::Index i = 1; i < v.size(); i += 2) v(i) = -v(i);
}

double axis_phase(Eigen::Index n) { return (n / 2) % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

Eigen::MatrixXcd centered_transform_2d(const Eigen::MatrixXcd& in, double in_step, bool forward) {
    const Eigen::Index n = in.rows();
    if (n == 0 || in.cols() != n) {
        throw InvalidInput("centered_transform_2d: matrix must be square and non-empty");
    }
    Eigen::MatrixXcd work = in;
    modulate_signs(work);

    auto* ptr = reinterpret_cast<fftw_complex*>(work.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        // Square matrix with the same kernel on both axes: the 2D DFT commutes
        // with transposition, so column-major data can be handed over as-is.
        plan = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), ptr, ptr,
                                forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw NumericError("fftw_plan_dft_2d failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    modulate_signs(work);
    const double scale = axis_phase(n) * axis_phase(n) * in_step * in_step / (2.0 * std::numbers::pi);
    work *= scale;
    return work;
}

Eigen::VectorXcd centered_transform_1d(const Eigen::VectorXcd& in, double in_step, bool forward) {
    const Eigen::Index n = in.size();
    if (n == 0) throw InvalidInput("centered_transform_1d: empty input");
    Eigen::VectorXcd work = in;
    modulate_signs(work);

    auto* ptr = reinterpret_cast<fftw_complex*>(work.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr,
                                forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw NumericError("fftw_plan_dft_1d failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    modulate_signs(work);
    work *= axis_phase(n) * in_step / std::sqrt(2.0 * std::numbers::pi);
    return work;
}

}  // namespace biphoton
