#include "biphoton/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

constexpr double kFourLn2 = 2.772588722239781;

double axis_step(const std::vector<double>& axis, const char* what) {
    if (axis.size() < 2) throw InvalidInput(std::string(what) + ": axis needs >= 2 points");
    const double step = axis[1] - axis[0];
    if (!(step > 0.0)) throw InvalidInput(std::string(what) + ": axis must be increasing");
    for (std::size_t k = 1; k < axis.size(); ++k) {
        const double d = axis[k] - axis[k - 1];
        if (!(d > 0.0) || std::abs(d - step) > 1e-6 * step) {
            throw InvalidInput(std::string(what) + ": axis must be uniformly increasing");
        }
    }
    return step;
}

struct FitParams {
    double a, c, f, o;
};

double fit_cost(const std::vector<double>& t, const std::vector<double>& y, const FitParams& p) {
    double cost = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double x = (t[k] - p.c) / p.f;
        const double r = p.a * std::exp(-kFourLn2 * x * x) + p.o - y[k];
        cost += r * r;
    }
    return cost;
}

}  // namespace

GaussianFit fit_gaussian_1d(const Histogram1D& histogram) {
    return fit_gaussian_1d(histogram.delays_fs, histogram.values);
}

GaussianFit fit_gaussian_1d(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t n = t.size();
    if (n < 5 || y.size() != n) {
        throw InvalidInput("fit_gaussian_1d: need at least 5 points with matching axes");
    }
    const double ymin = *std::min_element(y.begin(), y.end());
    const double ymax = *std::max_element(y.begin(), y.end());
    if (!(ymax > ymin)) throw FitError("fit_gaussian_1d: constant histogram");
    const double step = axis_step(t, "fit_gaussian_1d");

    // moment initialization on the offset-free excess
    double mass = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = y[k] - ymin;
        mass += w;
        mean += w * t[k];
    }
    mean /= mass;
    double var = 0.0;
    for (std::size_t k = 0; k < n; ++k) var += (y[k] - ymin) * (t[k] - mean) * (t[k] - mean);
    var /= mass;
    FitParams p{ymax - ymin, mean, std::max(2.354820045 * std::sqrt(var), 2.0 * step), ymin};

    double lambda = 1e-3;
    double cost = fit_cost(t, y, p);
    int iter = 0;
    bool converged = false;
    for (; iter < 200 && !converged; ++iter) {
        // normal equations J^T J (4x4) and J^T r for the damped step
        double jtj[4][4] = {};
        double jtr[4] = {};
        for (std::size_t k = 0; k < n; ++k) {
            const double u = t[k] - p.c;
            const double x = u / p.f;
            const double e = std::exp(-kFourLn2 * x * x);
            const double r = p.a * e + p.o - y[k];
            const double j[4] = {e, p.a * e * 2.0 * kFourLn2 * u / (p.f * p.f),
                                 p.a * e * 2.0 * kFourLn2 * u * u / (p.f * p.f * p.f), 1.0};
            for (int a = 0; a < 4; ++a) {
                jtr[a] += j[a] * r;
                for (int b = 0; b < 4; ++b) jtj[a][b] += j[a] * j[b];
            }
        }

        bool step_taken = false;
        for (int attempt = 0; attempt < 12 && !step_taken; ++attempt) {
            double m[4][5];
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) m[a][b] = jtj[a][b];
                m[a][a] *= 1.0 + lambda;
                m[a][4] = -jtr[a];
            }
            // Gaussian elimination with partial pivoting
            bool singular = false;
            for (int col = 0; col < 4 && !singular; ++col) {
                int pivot = col;
                for (int row = col + 1; row < 4; ++row) {
                    if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
                }
                if (std::abs(m[pivot][col]) < 1e-300) {
                    singular = true;
                    break;
                }
                std::swap_ranges(m[col], m[col] + 5, m[pivot]);
                for (int row = col + 1; row < 4; ++row) {
                    const double f = m[row][col] / m[col][col];
                    for (int b = col; b < 5; ++b) m[row][b] -= f * m[col][b];
                }
            }
            if (singular) {
                lambda *= 10.0;
                continue;
            }
            double delta[4];
            for (int a = 3; a >= 0; --a) {
                double s = m[a][4];
                for (int b = a + 1; b < 4; ++b) s -= m[a][b] * delta[b];
                delta[a] = s / m[a][a];
            }

            FitParams trial{p.a + delta[0], p.c + delta[1], p.f + delta[2], p.o + delta[3]};
            trial.f = std::abs(trial.f);
            if (!(trial.f > 0.0) || !std::isfinite(trial.f)) {
                lambda *= 10.0;
                continue;
            }
            const double trial_cost = fit_cost(t, y, trial);
            if (trial_cost <= cost) {
                double rel = 0.0;
                rel = std::max(rel, std::abs(delta[0]) / std::max(std::abs(p.a), 1e-30));
                rel = std::max(rel, std::abs(delta[1]) / std::max(std::abs(p.f), 1e-30));
                rel = std::max(rel, std::abs(delta[2]) / std::max(std::abs(p.f), 1e-30));
                rel = std::max(rel, std::abs(delta[3]) / std::max(std::abs(p.a), 1e-30));
                p = trial;
                cost = trial_cost;
                lambda = std::max(lambda * 0.1, 1e-12);
                step_taken = true;
                if (rel < 1e-8) converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!step_taken) break;  // damping exhausted; treat current point as stationary
    }

    if (!converged && iter >= 200) {
        throw FitError("fit_gaussian_1d: no convergence after 200 iterations (last cost " +
                       std::to_string(cost) + ")");
    }
    if (p.f < step) {
        throw FitError("fit_gaussian_1d: fitted width " + std::to_string(p.f) +
                       " fs collapsed below one delay step (" + std::to_string(step) + " fs)");
    }

    GaussianFit fit;
    fit.amplitude = p.a;
    fit.center_fs = p.c;
    fit.fwhm_fs = p.f;
    fit.offset = p.o;
    fit.rms_residual = std::sqrt(cost / static_cast<double>(n));
    fit.iterations = iter;
    return fit;
}

ScanSurface subtract_background(const CountsSurface& counts) {
    double bg = 0.0;
    return subtract_background(counts, bg);
}

ScanSurface subtract_background(const CountsSurface& counts, double& background_out) {
    const Eigen::Index rows = counts.counts.rows();
    const Eigen::Index cols = counts.counts.cols();
    if (rows < 3 || cols < 3) {
        throw InvalidInput("subtract_background: surface too small for a boundary frame");
    }
    const double step_s = axis_step(counts.delays_s_fs, "subtract_background");
    const double step_i = axis_step(counts.delays_i_fs, "subtract_background");

    double frame_sum = 0.0;
    long frame_points = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (i == 0 || j == 0 || i == rows - 1 || j == cols - 1) {
                frame_sum += static_cast<double>(counts.counts(i, j));
                ++frame_points;
            }
        }
    }
    const double background = frame_sum / static_cast<double>(frame_points);
    background_out = background;

    ScanSurface out;
    out.delays_s_fs = counts.delays_s_fs;
    out.delays_i_fs = counts.delays_i_fs;
    out.values = (counts.counts.cast<double>().array() - background).cwiseMax(0.0);
    const double total = out.values.sum();
    if (!(total > 0.0)) {
        throw DegenerateDataError("subtract_background: surface vanished after subtraction");
    }
    out.values /= total * step_s * step_i;
    out.norm = SurfaceNorm::unit_integral;
    return out;
}

namespace {

AnalysisReport analyze_surface(const ScanSurface& s, double background, long points_used) {
    const double step_s = axis_step(s.delays_s_fs, "analyze_jtd");
    const double step_i = axis_step(s.delays_i_fs, "analyze_jtd");
    Eigen::MatrixXd values = s.values;
    const double total = values.sum() * step_s * step_i;
    if (!(total > 0.0)) throw DegenerateDataError("analyze_jtd: zero-mass surface");
    values /= total;

    AnalysisReport report;
    report.entanglement = entropy_from_density(values, step_s, step_i);
    report.correlation = correlation_coefficient(values, s.delays_s_fs, s.delays_i_fs);
    report.background_per_point = background;
    report.points_used = points_used;

    // Marginal fits are best-effort: a scan window sitting inside a flat-top
    // marginal has nothing Gaussian to fit and must not sink the report.
    const Eigen::VectorXd ms = values.rowwise().sum() * step_i;
    const Eigen::VectorXd mi = values.colwise().sum().transpose() * step_s;
    for (const auto& [axis, marg] : {std::pair{&s.delays_s_fs, &ms}, {&s.delays_i_fs, &mi}}) {
        try {
            report.fits.push_back(fit_gaussian_1d(
                *axis, std::vector<double>(marg->data(), marg->data() + marg->size())));
        } catch (const FitError&) {
        }
    }
    return report;
}

}  // namespace

AnalysisReport analyze_jtd(const CountsSurface& counts, bool background_subtraction) {
    if (background_subtraction) {
        double bg = 0.0;
        ScanSurface s = subtract_background(counts, bg);
        long used = (s.values.array() > 0.0).count();
        return analyze_surface(s, bg, used);
    }
    ScanSurface s;
    s.delays_s_fs = counts.delays_s_fs;
    s.delays_i_fs = counts.delays_i_fs;
    s.values = counts.counts.cast<double>();
    s.norm = SurfaceNorm::none;
    return analyze_surface(s, 0.0, (s.values.array() > 0.0).count());
}

AnalysisReport analyze_jtd(const ScanSurface& surface) {
    if (surface.values.minCoeff() < 0.0) {
        throw InvalidInput("analyze_jtd: surface has negative entries");
    }
    return analyze_surface(surface, 0.0, (surface.values.array() > 0.0).count());
}

}  // namespace biphoton
