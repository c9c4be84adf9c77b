#include "biphoton/sweep.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "biphoton/errors.hpp"
#include "biphoton/joint_state.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

namespace {

void check_range(double min_nm, double max_nm) {
    if (!(min_nm > 0.2) || !(max_nm < 12.0) || !(min_nm < max_nm)) {
        throw InvalidInput("bandwidth range must satisfy 0.2 < min < max < 12 nm");
    }
}

std::pair<double, double> entropy_purity_at(double bandwidth_nm, PmKind pm_kind,
                                            ExperimentConfig config) {
    config.spdc_pump_fwhm_nm = bandwidth_nm;
    config.pm_kind = pm_kind;
    const auto spectrum = schmidt_decompose(build_jsa(config, make_state_grids(config)));
    return {entropy_bits(spectrum), purity(spectrum)};
}

}  // namespace

double entropy_at_bandwidth(double bandwidth_nm, PmKind pm_kind, const ExperimentConfig& config) {
    return entropy_purity_at(bandwidth_nm, pm_kind, config).first;
}

EntropyCurve entropy_vs_bandwidth(double min_nm, double max_nm, int steps, PmKind pm_kind,
                                  const ExperimentConfig& config, bool parallel) {
    check_range(min_nm, max_nm);
    if (steps < 8) throw InvalidInput("entropy_vs_bandwidth: need at least 8 steps");

    EntropyCurve curve;
    curve.pm_kind = pm_kind;
    curve.bandwidths_nm.resize(static_cast<std::size_t>(steps));
    curve.entropy_bits.resize(static_cast<std::size_t>(steps));
    curve.purity.resize(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        curve.bandwidths_nm[static_cast<std::size_t>(k)] =
            min_nm + (max_nm - min_nm) * k / (steps - 1);
    }

    auto eval_range = [&](int lo, int hi) {
        for (int k = lo; k < hi; ++k) {
            const auto [s, p] =
                entropy_purity_at(curve.bandwidths_nm[static_cast<std::size_t>(k)], pm_kind, config);
            curve.entropy_bits[static_cast<std::size_t>(k)] = s;
            curve.purity[static_cast<std::size_t>(k)] = p;
        }
    };

    if (!parallel) {
        eval_range(0, steps);
        return curve;
    }
    const int workers =
        std::max(1, std::min<int>(static_cast<int>(std::thread::hardware_concurrency()), steps));
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(workers));
    const int chunk = (steps + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(steps, lo + chunk);
        if (lo >= hi) break;
        futures.push_back(std::async(std::launch::async, eval_range, lo, hi));
    }
    for (auto& f : futures) f.get();
    return curve;
}

FactorablePoint find_factorable_bandwidth(PmKind pm_kind, const ExperimentConfig& config,
                                          double min_nm, double max_nm) {
    check_range(min_nm, max_nm);
    constexpr int kCoarse = 16;
    double bw[kCoarse], s[kCoarse];
    for (int k = 0; k < kCoarse; ++k) {
        bw[k] = min_nm + (max_nm - min_nm) * k / (kCoarse - 1);
        s[k] = entropy_at_bandwidth(bw[k], pm_kind, config);
    }

    int argmin = 0;
    for (int k = 1; k < kCoarse; ++k) {
        if (s[k] < s[argmin]) argmin = k;
    }
    if (argmin == 0 || argmin == kCoarse - 1) {
        std::ostringstream msg;
        msg << "find_factorable_bandwidth: no interior bracket; coarse scan:";
        for (int k = 0; k < kCoarse; ++k) msg << " (" << bw[k] << " nm, " << s[k] << " b)";
        throw SearchError(msg.str());
    }
    int interior_minima = 0;
    for (int k = 1; k + 1 < kCoarse; ++k) {
        if (s[k] < s[k - 1] && s[k] <= s[k + 1]) ++interior_minima;
    }

    // golden-section on [bw[argmin-1], bw[argmin+1]]
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = bw[argmin - 1], b = bw[argmin + 1];
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = entropy_at_bandwidth(x1, pm_kind, config);
    double f2 = entropy_at_bandwidth(x2, pm_kind, config);
    while (b - a > 0.01) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = entropy_at_bandwidth(x1, pm_kind, config);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = entropy_at_bandwidth(x2, pm_kind, config);
        }
    }

    FactorablePoint result;
    result.bandwidth_nm = f1 <= f2 ? x1 : x2;
    result.entropy_bits = std::min(f1, f2);
    result.refined = interior_minima <= 1;
    if (s[argmin] < result.entropy_bits) {
        result.bandwidth_nm = bw[argmin];
        result.entropy_bits = s[argmin];
    }
    return result;
}

}  // namespace biphoton
