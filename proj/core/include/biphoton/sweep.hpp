#pragma once

#include <vector>

#include "biphoton/config.hpp"

namespace biphoton {

struct EntropyCurve {
    PmKind pm_kind = PmKind::gaussian;
    std::vector<double> bandwidths_nm;  // increasing
    std::vector<double> entropy_bits;
    std::vector<double> purity;
};

struct FactorablePoint {
    double bandwidth_nm = 0.0;
    double entropy_bits = 0.0;
    bool refined = true;  // false when the coarse scan was not unimodal
};

struct SweepResult {
    std::vector<EntropyCurve> curves;
    std::vector<FactorablePoint> minima;  // aligned with curves
};

/// Entropy and purity of the joint state versus pump bandwidth. Each point
/// builds the spectral amplitude on a state grid and decomposes it; points are
/// independent and may be evaluated concurrently, results are assembled in
/// input order either way.
EntropyCurve entropy_vs_bandwidth(double min_nm, double max_nm, int steps, PmKind pm_kind,
                                  const ExperimentConfig& config, bool parallel = false);

/// Entropy at a single pump bandwidth (the sweep integrand).
double entropy_at_bandwidth(double bandwidth_nm, PmKind pm_kind, const ExperimentConfig& config);

/// Golden-section search for the entropy minimum, bracketed by a 16-point
/// coarse scan; terminates when the bandwidth interval shrinks below 0.01 nm.
/// A coarse minimum on the range boundary raises SearchError; a non-unimodal
/// coarse scan degrades to the refined global argmin with refined = false.
FactorablePoint find_factorable_bandwidth(PmKind pm_kind, const ExperimentConfig& config,
                                          double min_nm = 0.4, double max_nm = 8.0);

}  // namespace biphoton
