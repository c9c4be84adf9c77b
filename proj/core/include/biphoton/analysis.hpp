#pragma once

#include <vector>

#include "biphoton/measurement.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

struct GaussianFit {
    double amplitude = 0.0;
    double center_fs = 0.0;
    double fwhm_fs = 0.0;
    double offset = 0.0;
    double rms_residual = 0.0;
    int iterations = 0;
};

struct AnalysisReport {
    EntanglementReport entanglement;
    double correlation = 0.0;
    double background_per_point = 0.0;
    long points_used = 0;
    std::vector<GaussianFit> fits;  // signal marginal, idler marginal
};

/// Least-squares fit of amplitude * exp(-4 ln2 (t-center)^2 / fwhm^2) + offset
/// by Gauss-Newton with Levenberg damping; moment initialization, relative
/// step < 1e-8 or 200 iterations. Throws FitError on non-convergence, a
/// degenerate (constant) histogram, or a width collapsing below one step.
GaussianFit fit_gaussian_1d(const Histogram1D& histogram);
GaussianFit fit_gaussian_1d(const std::vector<double>& t_fs, const std::vector<double>& values);

/// Background as the mean of the boundary frame, subtracted, clipped at zero
/// and renormalized to unit integral over the delay measure.
ScanSurface subtract_background(const CountsSurface& counts);
ScanSurface subtract_background(const CountsSurface& counts, double& background_out);

/// Full recovery pipeline for a measured or synthesized count surface:
/// background subtraction (optional), flat-phase entropy extraction,
/// correlation, and Gaussian fits of the two marginals.
AnalysisReport analyze_jtd(const CountsSurface& counts, bool background_subtraction = true);

/// No-noise pipeline: the surface is renormalized and analyzed directly, with
/// no background estimate.
AnalysisReport analyze_jtd(const ScanSurface& surface);

}  // namespace biphoton
